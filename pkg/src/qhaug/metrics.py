"""Smoothness functionals built on the lattice STFT.

The guiding quantity is the weighted l1 norm of the STFT, the discrete
stand-in for membership in the Feichtinger algebra: smooth,
well-concentrated signals have small m1 relative to their energy. The
mixed (p, q) norms interpolate toward the pure energy norm at
(p, q) = (2, 2), and tail_energy measures how much spectrogram mass
escapes a disc around the spectrogram peak.

One-dimensional sums over a lattice axis carry the cell measure
N^{-1/2} (the side length of a phase-space cell of weight 1/N), so the
mixed norms collapse to m1 at (1, 1) and to sqrt((1/N) sum |V|^2) at
(2, 2) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .augment import within_radius, wrap_norm_sq_grid
from .tfcore import as_signal, spectrogram, stft

__all__ = [
    "MPQ_GRID",
    "m1_norm",
    "mpq_norm",
    "tail_energy",
    "SmoothnessReport",
    "SmoothnessComparison",
    "signal_report",
    "compare_smoothness",
]

#: The (p, q) pairs reported by signal_report and compare_smoothness.
MPQ_GRID: tuple[tuple[int, int], ...] = ((1, 1), (1, 2), (2, 1), (2, 2))


def _checked_window(g) -> np.ndarray:
    g = as_signal(g, name="window")
    norm = np.linalg.norm(g)
    if norm == 0.0:
        raise ValueError("window must be nonzero")
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"window must be unit norm, got |g| = {norm:.6f}")
    return g


def m1_norm(f, g) -> float:
    """Weighted l1 norm of the STFT: (1/N) * sum |stft(f, g)|.

    For the unit Gaussian against itself this approximates the integral
    of exp(-pi |z|^2 / 2) over the plane, which is 2 in natural units.
    Homogeneous in f and invariant under tf_shift of f.
    """
    g = _checked_window(g)
    v = stft(f, g)
    return float(np.sum(np.abs(v))) / v.shape[0]


def mpq_norm(f, g, p: float, q: float) -> float:
    """Mixed-norm of the STFT: lp over time lag, then lq over frequency.

    Each axis sum carries the one-dimensional cell measure N^{-1/2}, so
    (1, 1) reproduces m1_norm and (2, 2) reproduces the weighted energy
    sqrt((1/N) * sum |V|^2), which is |f| for a unit window.
    """
    if p < 1 or q < 1:
        raise ValueError(f"exponents must be at least 1, got p={p}, q={q}")
    g = _checked_window(g)
    v = np.abs(stft(f, g))
    cell = 1.0 / np.sqrt(v.shape[0])
    inner = (cell * np.sum(v**p, axis=0)) ** (1.0 / p)  # one value per l
    return float((cell * np.sum(inner**q)) ** (1.0 / q))


def tail_energy(f, g, radius: float) -> float:
    """Spectrogram mass fraction beyond a wrap-norm disc about the peak.

    The disc is centred on the spectrogram argmax (ties resolved by
    row-major order), which makes the value invariant under
    time-frequency shifts of f. Nonincreasing in the radius; 0 once the
    disc covers the lattice. Distances are compared as exact integer
    squares, so a radius that just reaches a lattice ring includes it.
    """
    g = _checked_window(g)
    spec = spectrogram(f, g)
    total = float(spec.sum())
    if total == 0.0:
        raise ValueError("signal must be nonzero")
    n = spec.shape[0]
    peak = np.unravel_index(int(np.argmax(spec)), spec.shape)
    dist_sq = np.roll(wrap_norm_sq_grid(n), peak, axis=(0, 1))
    return float(spec[~within_radius(dist_sq, radius)].sum()) / total


@dataclass(frozen=True)
class SmoothnessReport:
    """Smoothness functionals of one signal (or averages over a list).

    concentration is m1 per unit l2 norm, the scale-free quantity; the
    Gaussian window minimizes it over the lattice. tail_fractions maps
    each requested radius to the spectrogram mass fraction outside the
    disc of that radius around the peak, nonincreasing in the radius.
    """

    m1: float
    mpq: dict[tuple[int, int], float]
    concentration: float
    tail_fractions: dict[float, float]

    def metric_items(self) -> list[tuple[str, float]]:
        """Flat (name, value) view in a fixed order, for tables."""
        items = [("m1", self.m1)]
        items += [(f"mpq_{p}_{q}", self.mpq[(p, q)]) for p, q in sorted(self.mpq)]
        items.append(("concentration", self.concentration))
        items += [
            (f"tail_{_radius_label(r)}", self.tail_fractions[r])
            for r in sorted(self.tail_fractions)
        ]
        return items


def _radius_label(radius: float) -> str:
    return format(float(radius), "g")


def signal_report(f, g, radii) -> SmoothnessReport:
    """SmoothnessReport of a single signal against a unit window."""
    f = as_signal(f, name="f")
    energy = float(np.linalg.norm(f))
    if energy == 0.0:
        raise ValueError("signal must be nonzero")
    m1 = m1_norm(f, g)
    mpq = {(p, q): mpq_norm(f, g, p, q) for p, q in MPQ_GRID}
    tails = {float(r): tail_energy(f, g, r) for r in radii}
    return SmoothnessReport(
        m1=m1, mpq=mpq, concentration=m1 / energy, tail_fractions=tails
    )


def _combine(reports: list[SmoothnessReport], weights) -> SmoothnessReport:
    m1 = sum(w * r.m1 for w, r in zip(weights, reports))
    mpq = {
        key: sum(w * r.mpq[key] for w, r in zip(weights, reports))
        for key in reports[0].mpq
    }
    conc = sum(w * r.concentration for w, r in zip(weights, reports))
    tails = {
        rad: sum(w * r.tail_fractions[rad] for w, r in zip(weights, reports))
        for rad in reports[0].tail_fractions
    }
    return SmoothnessReport(m1=m1, mpq=mpq, concentration=conc, tail_fractions=tails)


def _mean(reports: list[SmoothnessReport]) -> SmoothnessReport:
    return _combine(reports, [1.0 / len(reports)] * len(reports))


def _difference(after: SmoothnessReport, before: SmoothnessReport) -> SmoothnessReport:
    return _combine([after, before], [1.0, -1.0])


@dataclass(frozen=True)
class SmoothnessComparison:
    """Before/after smoothness reports for two signal lists.

    mean_difference holds mean_after minus mean_before per metric, so a
    negative entry means the second list is smoother or more
    concentrated under that metric. Identical input lists produce exact
    zeros here: the per-signal computations are deterministic and the
    subtraction cancels equal floats.
    """

    before: list[SmoothnessReport]
    after: list[SmoothnessReport]
    mean_before: SmoothnessReport
    mean_after: SmoothnessReport
    mean_difference: SmoothnessReport


def compare_smoothness(before, after, g, radii) -> SmoothnessComparison:
    """Per-signal and mean SmoothnessReports for two lists of signals."""
    before = list(before)
    after = list(after)
    if not before or not after:
        raise ValueError("both signal lists must be nonempty")
    radii = [float(r) for r in radii]
    rep_before = [signal_report(f, g, radii) for f in before]
    rep_after = [signal_report(f, g, radii) for f in after]
    mean_before = _mean(rep_before)
    mean_after = _mean(rep_after)
    return SmoothnessComparison(
        before=rep_before,
        after=rep_after,
        mean_before=mean_before,
        mean_after=mean_after,
        mean_difference=_difference(mean_after, mean_before),
    )

"""Numerical verification suite for the operator calculus.

Every structural identity the library leans on is checked here on
seeded random inputs: the convolution theorems, the rank-one/ambiguity
correspondence, the Weyl round trip and its translation covariance, the
resolution of the identity, commutativity and mass of the operator
convolution, and the factorization of the data operator through an
orthonormal tagging. Experiment results are only trustworthy on top of
this gate, so the CLI exposes it as its own subcommand.

The suite accepts an override for the ambiguity phase array. That hook
exists for negative-control tests: feeding a wrong phase must break the
identities, demonstrating that the checks are sensitive to the one
convention everything hinges on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .augment import augment_dataset, augmented_operator, rectangle_mask
from .operators import (
    basis_data_operator,
    data_operator,
    fn_op_convolve,
    fourier_wigner,
    op_op_convolve,
    op_translate,
    rank_one,
    trace,
    weyl_quantize,
    weyl_symbol,
)
from .tfcore import ambiguity_phase, stft, symplectic_dft, tf_shift

__all__ = ["GATE_TOLERANCE", "IdentityReport", "identity_suite", "worst_error"]

#: Largest error any identity may show before the gate fails.
GATE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class IdentityReport:
    """Max error per identity for one lattice size and seed."""

    n: int
    seed: int
    errors: dict[str, float]

    @property
    def worst(self) -> tuple[str, float]:
        name = max(self.errors, key=self.errors.__getitem__)
        return name, self.errors[name]

    def passed(self, tolerance: float = GATE_TOLERANCE) -> bool:
        return self.worst[1] <= tolerance


def _max_abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _max_rel(a, b) -> float:
    scale = float(np.max(np.abs(b)))
    return _max_abs(a, b) / max(scale, 1e-300)


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def identity_suite(n: int, seed: int, phase=None) -> IdentityReport:
    """Run every structural identity at lattice size n with one seed.

    Returns max errors keyed by identity name. The two convolution
    theorems report relative error (their values grow with N); the
    rest report absolute error on unit-scale inputs. A phase override
    replaces the ambiguity phase inside the transforms under test and is
    expected to break the suite.
    """
    if n < 2:
        raise ValueError(f"lattice size must be at least 2, got {n}")
    rng = np.random.default_rng(seed)

    def rand_signal() -> np.ndarray:
        return _unit(rng.standard_normal(n) + 1j * rng.standard_normal(n))

    def rand_operator() -> np.ndarray:
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return m / np.linalg.norm(m)

    c = ambiguity_phase(n)
    if phase is None:
        fw = fourier_wigner
        amb = lambda f, g: c * stft(f, g)
    else:
        phase = np.asarray(phase, dtype=np.complex128)
        if phase.shape != (n, n):
            raise ValueError(
                f"phase override shape {phase.shape} does not match lattice {n}"
            )
        twist = phase * c.conj()
        fw = lambda s: twist * fourier_wigner(s)
        amb = lambda f, g: phase * stft(f, g)

    f = rand_signal()
    g = rand_signal()
    s = rand_operator()
    t = rand_operator()
    errors: dict[str, float] = {}

    # F_W(f (x) g) is the cross-ambiguity of (f, g)
    errors["rank_one_ambiguity"] = _max_abs(fw(rank_one(f, g)), amb(f, g))

    # convolution theorem, operator-operator side
    st = op_op_convolve(s, t)
    errors["op_convolution_theorem"] = _max_rel(symplectic_dft(st), fw(s) * fw(t))

    # convolution theorem, function-operator side
    big_f = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    errors["fn_convolution_theorem"] = _max_rel(
        fw(fn_op_convolve(big_f, s)), symplectic_dft(big_f) * fw(s)
    )

    # Weyl calculus: symbol and quantization invert each other, and
    # lattice translation of the symbol conjugates the operator
    errors["weyl_round_trip"] = _max_abs(weyl_quantize(weyl_symbol(s)), s)
    sigma = rng.standard_normal((n, n))
    z = (int(rng.integers(n)), int(rng.integers(n)))
    errors["weyl_translation_covariance"] = _max_abs(
        weyl_quantize(np.roll(sigma, z, axis=(0, 1))),
        op_translate(weyl_quantize(sigma), z),
    )

    # averaging the projections onto all shifts of a unit window
    # resolves the identity matrix
    errors["resolution_of_identity"] = _max_abs(
        fn_op_convolve(np.ones((n, n)), rank_one(g, g)), np.eye(n)
    )

    # operator convolution is symmetric and its lattice mass factors
    errors["convolve_commutativity"] = _max_abs(st, op_op_convolve(t, s))
    errors["mass_identity"] = abs(st.sum() / n - trace(s) * trace(t))

    # localization operators are covariant: shifting the mask indicator
    # conjugates the operator
    mask = rectangle_mask(n, 0, 0, max(1, n // 4), max(1, n // 3)).astype(complex)
    loc = fn_op_convolve(mask, rank_one(g, g))
    errors["localization_covariance"] = _max_abs(
        op_translate(loc, z),
        fn_op_convolve(np.roll(mask, z, axis=(0, 1)), rank_one(g, g)),
    )

    # augmenting data then building its operator matches smoothing the
    # operator, and the data operator factors as C C* through any
    # orthonormal tagging
    dataset = [rand_signal() for _ in range(min(3, n))]
    omega = rectangle_mask(n, n - 1, n - 1, 2, 2)
    s_d = data_operator(dataset)
    errors["augment_commutation"] = _max_abs(
        data_operator(augment_dataset(dataset, omega)),
        augmented_operator(s_d, omega),
    )
    tags = np.eye(n)[:, : len(dataset)].T
    c_d = basis_data_operator(dataset, tags)
    errors["data_factorization"] = _max_abs(c_d @ c_d.conj().T, s_d)

    # unitarity of the shifts: moduli of the STFT are preserved when the
    # analyzed signal is shifted on the lattice
    shifted = np.abs(stft(tf_shift(f, z), g))
    errors["stft_shift_covariance"] = _max_abs(
        shifted, np.roll(np.abs(stft(f, g)), z, axis=(0, 1))
    )

    return IdentityReport(n=n, seed=seed, errors=errors)


def worst_error(reports) -> float:
    """Largest error over a batch of IdentityReports."""
    return max(report.worst[1] for report in reports)

"""Phase-space masks, dataset augmentation, and localization operators.

A mask is a boolean N x N array over the lattice, True on the region
Omega. Augmenting a dataset spreads every signal over Omega with
time-frequency shifts; the matching operation on operators averages the
conjugated copies alpha_mu(S) over Omega. The two commute with taking
the data operator, which is the point: smoothing learned second-order
statistics equals augmenting the raw data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import as_operator, fn_op_convolve, op_translate, rank_one
from .tfcore import as_signal, spectrogram, stft, tf_shift

__all__ = [
    "rectangle_mask",
    "disc_mask",
    "make_omega",
    "mask_points",
    "wrap_norm_grid",
    "wrap_norm_sq_grid",
    "within_radius",
    "augment_dataset",
    "augmented_operator",
    "localization_operator",
    "JitterConfig",
    "jitter_dataset",
    "cnn_first_layer",
    "total_correlation",
]


def wrap_norm_sq_grid(n: int) -> np.ndarray:
    """Integer squared wrap-norm of each lattice point.

    Entry (k, l) is d(k)^2 + d(l)^2 with d(i) = min(i, N - i), the
    distance from the origin on the torus. Kept in exact integers so
    radius comparisons never wobble by a float ulp.
    """
    axis = np.minimum(np.arange(n), n - np.arange(n))
    return axis[:, None] ** 2 + axis[None, :] ** 2


def wrap_norm_grid(n: int) -> np.ndarray:
    """Euclidean wrap-norm of each lattice point, as floats."""
    return np.sqrt(wrap_norm_sq_grid(n).astype(float))


def within_radius(dist_sq, radius: float) -> np.ndarray:
    """Which integer squared distances lie inside a disc of this radius.

    A ring at exactly the radius counts as inside even when the radius
    arrives with float rounding error (N / sqrt(2) and friends): the
    squared radius is padded by one part in 1e9, far below the unit gap
    between integer squared distances on any realistic lattice.
    """
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    return np.asarray(dist_sq) <= float(radius) ** 2 * (1.0 + 1e-9)


def rectangle_mask(n: int, k0: int, l0: int, width: int, height: int) -> np.ndarray:
    """Axis-aligned rectangle of lattice points, anchored at (k0, l0).

    Covers offsets 0 <= i < width along k and 0 <= j < height along l,
    wrapping mod N. Anchors may be negative (wrapped). Width and height
    must lie in [1, N] so no cell is covered twice.
    """
    if not (1 <= width <= n and 1 <= height <= n):
        raise ValueError(
            f"rectangle {width}x{height} does not fit a {n}x{n} lattice"
        )
    mask = np.zeros((n, n), dtype=bool)
    rows = (int(k0) + np.arange(width)) % n
    cols = (int(l0) + np.arange(height)) % n
    mask[np.ix_(rows, cols)] = True
    return mask


def disc_mask(n: int, k0: int, l0: int, radius: float) -> np.ndarray:
    """Disc of lattice points within wrap-around distance radius of
    (k0, l0). Radius 0 gives the singleton mask."""
    if radius < 0:
        raise ValueError(f"disc radius must be nonnegative, got {radius}")
    centred = np.roll(wrap_norm_sq_grid(n), (int(k0) % n, int(l0) % n), axis=(0, 1))
    return within_radius(centred, radius)


def make_omega(spec: str, n: int) -> np.ndarray:
    """Parse a textual mask description into a boolean mask.

    Formats: ``rect:k,l,w,h`` (anchor, width, height, integers) and
    ``disc:k,l,r`` (centre integers, radius float). Raises ValueError on
    malformed input or an empty region.
    """
    if not isinstance(spec, str) or ":" not in spec:
        raise ValueError(
            f"mask spec must look like 'rect:k,l,w,h' or 'disc:k,l,r', got {spec!r}"
        )
    kind, _, body = spec.partition(":")
    parts = [p.strip() for p in body.split(",")]
    try:
        if kind == "rect":
            if len(parts) != 4:
                raise ValueError
            k0, l0, w, h = (int(p) for p in parts)
            mask = rectangle_mask(n, k0, l0, w, h)
        elif kind == "disc":
            if len(parts) != 3:
                raise ValueError
            k0, l0 = int(parts[0]), int(parts[1])
            mask = disc_mask(n, k0, l0, float(parts[2]))
        else:
            raise ValueError
    except ValueError as exc:
        if exc.args and isinstance(exc.args[0], str) and "lattice" in exc.args[0]:
            raise
        raise ValueError(f"malformed mask spec {spec!r}") from None
    if not mask.any():
        raise ValueError(f"mask spec {spec!r} selects no lattice points")
    return mask


def mask_points(omega) -> list[tuple[int, int]]:
    """Lattice points of a mask in row-major order."""
    omega = _as_mask(omega)
    ks, ls = np.nonzero(omega)
    return [(int(k), int(l)) for k, l in zip(ks, ls)]


def _as_mask(omega) -> np.ndarray:
    arr = np.asarray(omega)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"mask must be a square array, got shape {arr.shape}")
    if arr.dtype != bool:
        arr = arr.astype(bool)
    if not arr.any():
        raise ValueError("mask selects no lattice points")
    return arr


def augment_dataset(signals, omega) -> list[np.ndarray]:
    """Spread every signal over a mask by time-frequency shifts.

    Returns |Omega| * len(signals) signals, each scaled by
    |Omega|^{-1/2} so the total energy and the data operator's trace are
    preserved. Ordered with the mask point as the primary key (row-major)
    and the dataset index as the secondary key.
    """
    omega = _as_mask(omega)
    sigs = [as_signal(f, name=f"signals[{i}]") for i, f in enumerate(signals)]
    if not sigs:
        raise ValueError("dataset must contain at least one signal")
    n = omega.shape[0]
    for i, f in enumerate(sigs):
        if f.size != n:
            raise ValueError(
                f"signals[{i}] has length {f.size}, mask lattice is {n}x{n}"
            )
    points = mask_points(omega)
    scale = 1.0 / np.sqrt(len(points))
    return [scale * tf_shift(f, mu) for mu in points for f in sigs]


def augmented_operator(s, omega) -> np.ndarray:
    """Average of alpha_mu(S) over the mask points.

    Equals data_operator(augment_dataset(D, omega)) whenever
    S = data_operator(D), and coincides with
    (N / |Omega|) * fn_op_convolve(indicator, S). Preserves the trace,
    Hermitianity, and positivity.
    """
    s = as_operator(s)
    omega = _as_mask(omega)
    if omega.shape[0] != s.shape[0]:
        raise ValueError(
            f"mask lattice {omega.shape[0]} does not match operator size {s.shape[0]}"
        )
    points = mask_points(omega)
    out = np.zeros_like(s)
    for mu in points:
        out += op_translate(s, mu)
    return out / len(points)


def localization_operator(omega, g) -> np.ndarray:
    """Time-frequency localization operator of a mask and unit window.

    fn_op_convolve applied to the mask indicator and rank_one(g, g):
    a Hermitian operator with eigenvalues in [0, 1] and trace
    |Omega| / N, concentrating signals on Omega. The full-lattice mask
    yields the identity operator (resolution of the identity).
    """
    omega = _as_mask(omega)
    g = as_signal(g, name="window")
    if g.size != omega.shape[0]:
        raise ValueError(
            f"window length {g.size} does not match mask lattice {omega.shape[0]}"
        )
    norm = np.linalg.norm(g)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"window must be unit norm, got |g| = {norm:.6f}")
    loc = fn_op_convolve(omega.astype(np.complex128), rank_one(g, g))
    # Hermitian in exact arithmetic; strip float asymmetry for eigensolvers
    return (loc + loc.conj().T) / 2.0


@dataclass(frozen=True)
class JitterConfig:
    """Randomized time-frequency jitter.

    radius: largest wrap-norm of a jitter offset, in lattice bins.
    count: independent draws per input signal.
    seed: root seed; per-signal substreams are spawned from it, so the
    jitter applied to signal i does not depend on the rest of the batch.
    """

    radius: float
    count: int = 1
    seed: int = 0

    def offsets(self, n: int) -> list[tuple[int, int]]:
        """Candidate offsets, row-major over the lattice."""
        if not (0 <= self.radius < n / 2):
            raise ValueError(
                f"jitter radius must lie in [0, N/2) = [0, {n / 2}), got {self.radius}"
            )
        return mask_points(within_radius(wrap_norm_sq_grid(n), self.radius))


def jitter_dataset(signals, config: JitterConfig) -> list[np.ndarray]:
    """Randomly tf_shift each signal by offsets of bounded wrap-norm.

    Each signal yields config.count jittered copies (unscaled; jitter
    models measurement uncertainty, not mask averaging). Draws are
    uniform over the admissible offsets and reproducible from
    config.seed.
    """
    sigs = [as_signal(f, name=f"signals[{i}]") for i, f in enumerate(signals)]
    if not sigs:
        raise ValueError("dataset must contain at least one signal")
    if config.count < 1:
        raise ValueError(f"jitter count must be positive, got {config.count}")
    n = sigs[0].size
    for i, f in enumerate(sigs):
        if f.size != n:
            raise ValueError(f"signals[{i}] has length {f.size}, expected {n}")
    offsets = config.offsets(n)
    streams = np.random.SeedSequence(config.seed).spawn(len(sigs))
    out: list[np.ndarray] = []
    for f, stream in zip(sigs, streams):
        rng = np.random.default_rng(stream)
        picks = rng.integers(0, len(offsets), size=config.count)
        out.extend(tf_shift(f, offsets[int(p)]) for p in picks)
    return out


def cnn_first_layer(f, g, m) -> np.ndarray:
    """Spectrogram followed by a cyclic 2-d convolution with a real mask.

    output(z) = (1/N) * sum_u spectrogram(f, g)(u) * m(z - u), the
    weighted lattice convolution. Equals the quadratic form
    <fn_op_convolve(T_z reflect(m), rank_one(g, g)) f, f> at every z, so
    the first layer of a spectrogram CNN is a field of localization-type
    operators applied to the input.
    """
    m = np.asarray(m, dtype=float)
    f = as_signal(f, name="f")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"mask must be square, got shape {m.shape}")
    if m.shape[0] != f.size:
        raise ValueError(
            f"mask lattice {m.shape[0]} does not match signal length {f.size}"
        )
    n = f.size
    spec = spectrogram(f, g)
    conv = np.fft.ifft2(np.fft.fft2(spec) * np.fft.fft2(m))
    return conv.real / n


def total_correlation(signals) -> np.ndarray:
    """Pairwise time-frequency correlation of a dataset, per lattice point.

    Entry z is sum_{i,j} |stft(f_j, f_i)(z)|^2 over all ordered pairs,
    a real nonnegative lattice function measuring how much the dataset
    overlaps itself under the shift by z. Coincides with
    tr(S_D alpha_z(S_D)), i.e. op_op_convolve(S_D, op_parity_conj(S_D)),
    which tests cross-check against this double sum.
    """
    sigs = [as_signal(f, name=f"signals[{i}]") for i, f in enumerate(signals)]
    if not sigs:
        raise ValueError("dataset must contain at least one signal")
    n = sigs[0].size
    for i, f in enumerate(sigs):
        if f.size != n:
            raise ValueError(f"signals[{i}] has length {f.size}, expected {n}")
    total = np.zeros((n, n))
    for fi in sigs:
        for fj in sigs:
            v = stft(fj, fi)
            total += v.real**2 + v.imag**2
    return total

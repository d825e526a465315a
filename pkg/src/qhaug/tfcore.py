"""Time-frequency analysis on the cyclic group of order N.

Signals are complex vectors of length N. The phase-space lattice is
Z_N x Z_N, a point z = (k, l) pairing a cyclic time shift of k bins with
a frequency modulation of l bins. Phase-space sums carry the cell weight
1/N, the discrete surrogate of the plane's Lebesgue measure under the
self-dual scaling in which one continuous unit spans sqrt(N) bins.

Conventions fixed here and relied on by every other module:

* tf_shift(f, (k, l))[n] = exp(2 pi i l n / N) * f[(n - k) mod N],
  i.e. modulation after shift.
* stft(f, g)[k, l] = <f, tf_shift(g, (k, l))> with the inner product
  conjugate-linear in its second argument.
* symplectic_dft uses the bilinear form k*n - l*m and weight 1/N; it is
  involutive and unitary for the weighted norm.
* ambiguity_phase(N) is the unique even square root of
  exp(2 pi i k l / N) used to pass between the STFT and the
  cross-ambiguity function. See its docstring.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_signal",
    "tf_shift",
    "shift_matrix",
    "parity",
    "gaussian_window",
    "stft",
    "spectrogram",
    "ambiguity_phase",
    "cross_ambiguity",
    "cross_wigner",
    "symplectic_dft",
    "lattice_weight",
]

# Periodization of the continuous Gaussian: terms beyond |j| = 3 are below
# exp(-pi * 9 * 16) even at N = 16 and vanish in float64.
_PERIODIZATION_RANGE = 3


def as_signal(f, *, name: str = "signal") -> np.ndarray:
    """Coerce to a complex 1-d vector, copying only when needed."""
    arr = np.asarray(f)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be nonempty")
    return np.ascontiguousarray(arr, dtype=np.complex128)


def _reduce_point(z, n: int) -> tuple[int, int]:
    try:
        k, l = z
    except (TypeError, ValueError):
        raise ValueError(f"lattice point must be a pair, got {z!r}") from None
    return int(k) % n, int(l) % n


def lattice_weight(n: int) -> float:
    """Weight of one phase-space cell, 1/N."""
    return 1.0 / n


def tf_shift(f, z) -> np.ndarray:
    """Apply the time-frequency shift by z = (k, l).

    Output sample n is exp(2 pi i l n / N) * f[(n - k) mod N]: the signal
    is cyclically delayed by k bins, then modulated by the l-th character.
    The operation is unitary, and shifts compose up to a global phase.
    """
    f = as_signal(f)
    n = f.size
    k, l = _reduce_point(z, n)
    out = np.roll(f, k)
    if l:
        out = out * np.exp(2j * np.pi * l * np.arange(n) / n)
    return out


def shift_matrix(n: int, z) -> np.ndarray:
    """Dense N x N unitary matrix of tf_shift at z, for operator work."""
    k, l = _reduce_point(z, n)
    mat = np.zeros((n, n), dtype=np.complex128)
    rows = np.arange(n)
    mat[rows, (rows - k) % n] = np.exp(2j * np.pi * l * rows / n)
    return mat


def parity(f) -> np.ndarray:
    """Reflect a signal through the origin: output[n] = f[(-n) mod N]."""
    f = as_signal(f)
    n = f.size
    return f[(-np.arange(n)) % n]


def gaussian_window(n: int) -> np.ndarray:
    """Periodized, unit-norm Gaussian centred at bin N/2.

    Samples the standard Gaussian exp(-pi t^2) on the grid
    t = (i - N/2)/sqrt(N), wraps it over the cycle, and normalizes to
    unit l2 norm. The result is real, strictly positive, unimodal with
    its peak at bin N // 2, and parity-even about the origin for even N.
    """
    if n < 2:
        raise ValueError(f"window length must be at least 2, got {n}")
    root = np.sqrt(float(n))
    t = (np.arange(n) - n / 2.0) / root
    g = np.zeros(n)
    for j in range(-_PERIODIZATION_RANGE, _PERIODIZATION_RANGE + 1):
        g += np.exp(-np.pi * (t + j * root) ** 2)
    return g / np.linalg.norm(g)


def stft(f, g) -> np.ndarray:
    """Short-time Fourier transform of f against window g.

    Returns the N x N array V[k, l] = <f, tf_shift(g, (k, l))>, computed
    as one length-N DFT per time lag. Satisfies the discrete Moyal
    identity sum |V|^2 = N * |f|^2 * |g|^2, so the weighted energy
    (1/N) * sum |V|^2 factors as |f|^2 * |g|^2.
    """
    f = as_signal(f, name="f")
    g = as_signal(g, name="g")
    if f.size != g.size:
        raise ValueError(
            f"signal and window lengths differ: {f.size} != {g.size}"
        )
    n = f.size
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    # row k holds f * conj(g shifted by k); the DFT over n yields the l axis
    return np.fft.fft(f[None, :] * np.conj(g[idx]), axis=1)


def spectrogram(f, g) -> np.ndarray:
    """Squared modulus of the STFT, a real nonnegative N x N array."""
    v = stft(f, g)
    return (v.real**2 + v.imag**2)


def ambiguity_phase(n: int) -> np.ndarray:
    """Even square root of the composition phase, as an N x N array.

    Entry (k, l) is exp(i pi k~ l~ / N) where k~, l~ are the centred
    representatives in [-N/2, N/2). For even N the row k = N/2 and the
    column l = N/2 are replaced by i**(l mod 2) and i**(k mod 2), the
    only values that keep the array even under (k, l) -> (-k, -l) while
    still squaring to exp(2 pi i k l / N). Both constraints together pin
    the array uniquely up to a global sign; ambiguity_phase(n)[0, 0] = 1
    fixes the sign.
    """
    if n < 1:
        raise ValueError(f"lattice size must be positive, got {n}")
    half = n // 2
    centred = (np.arange(n) + half) % n - half
    phase = np.exp(
        1j * np.pi * np.outer(centred, centred) / n
    )
    if n % 2 == 0:
        k = np.arange(n)
        phase[half, :] = 1j ** (k % 2)
        phase[:, half] = 1j ** (k % 2)
    return phase


def cross_ambiguity(f, g) -> np.ndarray:
    """Cross-ambiguity function of f and g.

    The STFT multiplied entrywise by ambiguity_phase(N). With this phase
    the transform agrees with the operator Fourier transform of the
    rank-one operator f (x) g, and cross_ambiguity(f, f) is even under
    lattice reflection for parity-even f.
    """
    v = stft(f, g)
    return ambiguity_phase(v.shape[0]) * v


def symplectic_dft(big_f) -> np.ndarray:
    """Symplectic discrete Fourier transform on phase space.

    Maps F to (1/N) * sum_{k,l} F[k, l] exp(-2 pi i (k n - l m) / N),
    indexed by (m, n). The transform is involutive (applying it twice
    returns the input) and unitary for the weighted l2 norm with cell
    weight 1/N.
    """
    big_f = np.asarray(big_f, dtype=np.complex128)
    if big_f.ndim != 2 or big_f.shape[0] != big_f.shape[1]:
        raise ValueError(
            f"phase-space array must be square, got shape {big_f.shape}"
        )
    # 1/N from the inverse DFT along l supplies the lattice weight; the
    # forward DFT along k contributes the exp(-2 pi i k n / N) factor.
    return np.fft.fft(np.fft.ifft(big_f, axis=1), axis=0).T


def cross_wigner(psi, phi) -> np.ndarray:
    """Cross-Wigner distribution, the symplectic DFT of the ambiguity.

    cross_wigner(psi, psi) is real entrywise and sums (with weight 1/N)
    to the energy of psi; swapping the arguments conjugates the output.
    """
    return symplectic_dft(cross_ambiguity(psi, phi))

"""Operators on C^N as phase-space objects.

An operator is a dense N x N complex matrix. The time-frequency shifts
act on operators by conjugation, alpha_z(S) = pi(z) S pi(z)*, and the
lattice-normalized shifts pi(z)/sqrt(N) form an orthonormal basis of the
Hilbert-Schmidt space. That basis underlies everything here: the operator
Fourier transform (fourier_wigner), the two convolutions mixing operators
with operators and functions with operators, and the Weyl calculus
obtained by composing with the symplectic DFT.

All phase-space sums use the cell weight 1/N from tfcore.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tfcore import (
    ambiguity_phase,
    as_signal,
    shift_matrix,
    symplectic_dft,
)

__all__ = [
    "as_operator",
    "rank_one",
    "data_operator",
    "basis_data_operator",
    "op_translate",
    "trace",
    "op_parity_conj",
    "op_op_convolve",
    "fn_op_convolve",
    "fourier_wigner",
    "weyl_symbol",
    "weyl_quantize",
    "EigenDecomposition",
    "eigendecomposition",
    "hermitian_defect",
]

#: Absolute entrywise tolerance for treating a matrix as Hermitian.
HERMITIAN_ATOL = 1e-12


def as_operator(s, *, name: str = "operator") -> np.ndarray:
    arr = np.asarray(s)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError(f"{name} must be nonempty")
    return np.ascontiguousarray(arr, dtype=np.complex128)


def hermitian_defect(s) -> float:
    """Largest entrywise deviation of a matrix from its adjoint."""
    s = as_operator(s)
    return float(np.max(np.abs(s - s.conj().T)))


def rank_one(f, g) -> np.ndarray:
    """Rank-one operator f (x) g, mapping h to <h, g> f.

    Matrix entries are f[m] * conj(g[n]). Its trace is <f, g> and its
    operator Fourier transform is cross_ambiguity(f, g).
    """
    f = as_signal(f, name="f")
    g = as_signal(g, name="g")
    if f.size != g.size:
        raise ValueError(f"signal lengths differ: {f.size} != {g.size}")
    return np.outer(f, g.conj())


def data_operator(signals) -> np.ndarray:
    """Sum of rank_one(f, f) over a dataset of equal-length signals.

    The result is Hermitian positive semidefinite with trace equal to the
    total energy of the dataset; it is symmetrized after accumulation to
    remove float asymmetry from the matrix product.
    """
    cols = [as_signal(f, name=f"signals[{i}]") for i, f in enumerate(signals)]
    if not cols:
        raise ValueError("dataset must contain at least one signal")
    n = cols[0].size
    for i, f in enumerate(cols):
        if f.size != n:
            raise ValueError(
                f"signals[{i}] has length {f.size}, expected {n}"
            )
    mat = np.column_stack(cols)
    s = mat @ mat.conj().T
    return (s + s.conj().T) / 2.0


def basis_data_operator(signals, basis) -> np.ndarray:
    """Sum of rank_one(f_i, e_i) against an orthonormal basis slice.

    With C = sum_i f_i (x) e_i one has C C* = data_operator(signals):
    the data operator factors through any orthonormal tagging of the
    dataset. Requires len(signals) <= N and pairwise orthonormal basis
    vectors (checked to 1e-10).
    """
    cols = [as_signal(f, name=f"signals[{i}]") for i, f in enumerate(signals)]
    tags = [as_signal(e, name=f"basis[{i}]") for i, e in enumerate(basis)]
    if not cols:
        raise ValueError("dataset must contain at least one signal")
    if len(cols) != len(tags):
        raise ValueError(
            f"dataset and basis sizes differ: {len(cols)} != {len(tags)}"
        )
    n = cols[0].size
    if len(cols) > n:
        raise ValueError(
            f"dataset size {len(cols)} exceeds dimension {n}, basis cannot be orthonormal"
        )
    for vecs, label in ((cols, "signals"), (tags, "basis")):
        for i, v in enumerate(vecs):
            if v.size != n:
                raise ValueError(f"{label}[{i}] has length {v.size}, expected {n}")
    e = np.column_stack(tags)
    gram = e.conj().T @ e
    if np.max(np.abs(gram - np.eye(len(tags)))) > 1e-10:
        raise ValueError("basis vectors are not orthonormal to 1e-10")
    return np.column_stack(cols) @ e.conj().T


def op_translate(s, z) -> np.ndarray:
    """Conjugate an operator by the time-frequency shift at z.

    alpha_z(S) = pi(z) S pi(z)* works out entrywise to
    exp(2 pi i l (m - n) / N) * S[(m - k) mod N, (n - k) mod N], so no
    matrix product is needed. alpha is a lattice action: alpha_0 is the
    identity and alpha_u alpha_v = alpha_{u+v} exactly.
    """
    s = as_operator(s)
    n = s.shape[0]
    k = int(z[0]) % n
    l = int(z[1]) % n
    out = np.roll(s, (k, k), axis=(0, 1))
    if l:
        ph = np.exp(2j * np.pi * l * np.arange(n) / n)
        out = ph[:, None] * out * ph.conj()[None, :]
    return out


def trace(s) -> complex:
    """Trace of an operator, the discrete integral of its diagonal."""
    return complex(np.trace(as_operator(s)))


def op_parity_conj(t) -> np.ndarray:
    """Conjugate by the parity operator: entry (m, n) of P T P is
    T[(-m) mod N, (-n) mod N]."""
    t = as_operator(t)
    n = t.shape[0]
    idx = (-np.arange(n)) % n
    return np.ascontiguousarray(t[np.ix_(idx, idx)])


def op_op_convolve(s, t) -> np.ndarray:
    """Convolution of two operators, a function on the lattice.

    (S * T)(z) = tr(S alpha_z(P T P)). The result is computed one time
    lag k at a time: conjugating P T P by pi((k, 0)) and collecting the
    wrapped diagonals of the product against S turns the l axis into a
    single DFT. Commutative in (S, T); maps pairs of positive operators
    to nonnegative functions.
    """
    s = as_operator(s, name="s")
    t = as_operator(t, name="t")
    n = s.shape[0]
    if t.shape[0] != n:
        raise ValueError(f"operator sizes differ: {n} != {t.shape[0]}")
    r = op_parity_conj(t)
    rows = np.arange(n)
    diag_rows = (rows[:, None] + rows[None, :]) % n  # entry (d, j) = (j + d) % N
    out = np.empty((n, n), dtype=np.complex128)
    for k in range(n):
        rk = np.roll(r, (k, k), axis=(0, 1))
        # q[m, j] = S[m, j] * (alpha_{(k,0)} R)[j, m]; its wrapped diagonal
        # sums h[d] = sum_j q[(j+d)%N, j] carry the modulation axis
        q = s * rk.T
        h = q[diag_rows, rows[None, :]].sum(axis=1)
        out[k, :] = np.fft.fft(h)
    return out


def fn_op_convolve(big_f, s) -> np.ndarray:
    """Convolution of a lattice function with an operator.

    (F * S) = (1/N) * sum_z F(z) alpha_z(S), an operator again. For F
    identically 1 and S = rank_one(g, g) with unit g this resolves the
    identity matrix; translating F translates the output through alpha.
    """
    big_f = np.asarray(big_f, dtype=np.complex128)
    s = as_operator(s)
    n = s.shape[0]
    if big_f.shape != (n, n):
        raise ValueError(
            f"lattice function shape {big_f.shape} does not match operator size {n}"
        )
    # sum over l first: h[k, d] = (1/N) sum_l F[k, l] exp(2 pi i l d / N)
    h = np.fft.ifft(big_f, axis=1)
    diff = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    out = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        out += np.roll(s, (k, k), axis=(0, 1)) * h[k, diff]
    return out


def fourier_wigner(s) -> np.ndarray:
    """Operator Fourier transform, a function on the lattice.

    Entry z of the output is c(z) * tr(pi(z)* S) with c = ambiguity_phase.
    The lag-k diagonal of S collapses tr(pi(z)* S) to one DFT per k, so
    the transform runs in O(N^2 log N). It intertwines the operator
    convolutions with pointwise products of lattice functions:
    symplectic_dft(op_op_convolve(S, T)) = fourier_wigner(S) * fourier_wigner(T)
    and fourier_wigner(fn_op_convolve(F, S)) = symplectic_dft(F) * fourier_wigner(S).
    """
    s = as_operator(s)
    n = s.shape[0]
    rows = np.arange(n)
    # d[k, j] = S[(j + k) % N, j]; tr(pi(k,l)* S) = e^{-2 pi i k l/N} DFT_j(d[k])(l)
    diag = s[(rows[:, None] + rows[None, :]) % n, rows[None, :]]
    coeff = np.fft.fft(diag, axis=1)
    lag_phase = np.exp(-2j * np.pi * np.outer(rows, rows) / n)
    return ambiguity_phase(n) * lag_phase * coeff


def _synthesize(coeff: np.ndarray) -> np.ndarray:
    """Rebuild the operator whose shift coefficients tr(pi(z)* S) are given.

    S = (1/N) sum_z coeff(z) pi(z). Entry (m, n) only meets the shifts
    with lag k = (m - n) mod N, so one inverse DFT per lag row of the
    coefficient array recovers the matrix.
    """
    n = coeff.shape[0]
    rows = np.arange(n)
    # b[k, m] = (1/N) sum_l coeff[k, l] exp(2 pi i l m / N)
    b = np.fft.ifft(coeff, axis=1)
    return np.ascontiguousarray(b[(rows[:, None] - rows[None, :]) % n, rows[:, None]])


def weyl_symbol(s) -> np.ndarray:
    """Weyl symbol of an operator: the symplectic DFT of its operator
    Fourier transform. Real entrywise exactly when S is Hermitian."""
    return symplectic_dft(fourier_wigner(s))


def weyl_quantize(sigma) -> np.ndarray:
    """Operator with the given Weyl symbol; exact inverse of weyl_symbol.

    Undoes the symplectic DFT (its own inverse), strips the ambiguity
    phase, and resynthesizes from shift coefficients. Quantization is
    covariant: translating the symbol on the lattice conjugates the
    operator by the corresponding time-frequency shift.
    """
    sigma = np.asarray(sigma, dtype=np.complex128)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise ValueError(f"symbol must be square, got shape {sigma.shape}")
    n = sigma.shape[0]
    coeff = symplectic_dft(sigma) * ambiguity_phase(n).conj()
    return _synthesize(coeff)


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a Hermitian operator.

    eigenvalues: real, sorted descending.
    eigenvectors: unit-norm columns, eigenvectors[:, j] belongs to
    eigenvalues[j]. Each column's largest-modulus entry is made real
    positive so the decomposition is reproducible run to run.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def vector(self, j: int) -> np.ndarray:
        return self.eigenvectors[:, j]


def eigendecomposition(s, *, atol: float = HERMITIAN_ATOL) -> EigenDecomposition:
    """Full spectral decomposition of a Hermitian matrix.

    Raises ValueError when the input departs from its adjoint by more
    than atol in any entry. Eigenvalues come back descending; the
    reconstruction sum_j w_j v_j (x) v_j reproduces the input to solver
    precision.
    """
    s = as_operator(s)
    defect = hermitian_defect(s)
    if defect > atol:
        raise ValueError(
            f"matrix is not Hermitian: max |S - S*| = {defect:.3e} exceeds {atol:.1e}"
        )
    vals, vecs = np.linalg.eigh(s)
    order = np.argsort(vals)[::-1]
    vals = np.ascontiguousarray(vals[order])
    vecs = np.ascontiguousarray(vecs[:, order])
    # pin each column's free phase: largest-modulus entry made real positive
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        i = int(np.argmax(np.abs(col)))
        piv = col[i]
        mag = abs(piv)
        if mag > 0.0:
            vecs[:, j] = col * (piv.conj() / mag)
    return EigenDecomposition(eigenvalues=vals, eigenvectors=vecs)

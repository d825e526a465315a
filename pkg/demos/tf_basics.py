"""
Time-frequency shifts, the STFT, and spectrograms on the cyclic lattice
=======================================================================

A guided tour of the core transforms. Everything lives on Z_N: signals
are length-N complex vectors, phase space is the N x N lattice of
(time shift, frequency shift) pairs, and all integrals are weighted
sums. Run it from anywhere; it only prints (and optionally writes one
small PGM image next to itself).
"""

import numpy as np

from qhaug import (
    ambiguity_phase,
    cross_ambiguity,
    gaussian_window,
    lattice_weight,
    spectrogram,
    stft,
    symplectic_dft,
    tf_shift,
)
from qhaug.artifacts import spectrogram_to_pgm

n = 64
rng = np.random.default_rng(7)

# ---------------------------------------------------------------------
# 1. A time-frequency shift moves a signal in both coordinates at once:
#    cyclic translation by k samples, then modulation by l cycles.
# ---------------------------------------------------------------------
f = np.zeros(n, dtype=complex)
f[0] = 1.0
g = tf_shift(f, (5, 12))
print("impulse shifted by (5, 12): support now at sample", int(np.argmax(np.abs(g))))

# Two shifts compose up to a global phase, never more: the lattice of
# shifts is a projective group representation.
a = tf_shift(tf_shift(f, (3, 4)), (2, 9))
b = tf_shift(f, (5, 13))
ratio = a[np.abs(b) > 0.5][0] / b[np.abs(b) > 0.5][0]
print(f"composition differs from the direct shift by the phase {ratio:.3f}")

# ---------------------------------------------------------------------
# 2. The STFT correlates a signal against every shifted window. With the
#    canonical Gaussian window the energy of any signal is conserved:
#    sum |V_g f|^2 weighted by 1/N equals ||f||^2 exactly.
# ---------------------------------------------------------------------
window = gaussian_window(n)
signal = rng.standard_normal(n) + 1j * rng.standard_normal(n)
coeffs = stft(signal, window)
energy = lattice_weight(n) * float(np.sum(np.abs(coeffs) ** 2))
print(f"lattice energy {energy:.12f} vs signal energy {np.linalg.norm(signal)**2:.12f}")

# ---------------------------------------------------------------------
# 3. A spectrogram is the squared modulus of the STFT. Build a signal
#    with two well-separated components and look at where the mass sits.
# ---------------------------------------------------------------------
two_tone = tf_shift(window, (12, 8)) + tf_shift(window, (44, 40))
spec = spectrogram(two_tone, window)
peaks = np.argsort(spec, axis=None)[-2:]
for flat in peaks:
    k, l = np.unravel_index(flat, spec.shape)
    print(f"spectrogram peak near time {k}, frequency {l}")

with open(__file__.replace("tf_basics.py", "two_tone.pgm"), "wb") as fh:
    fh.write(spectrogram_to_pgm(spec))
print("wrote two_tone.pgm (any image viewer opens it; origin sits mid-image)")

# ---------------------------------------------------------------------
# 4. The ambiguity function is the STFT with a quadratic phase
#    correction, and the symplectic Fourier transform sends it to the
#    Wigner distribution. Applied twice, the symplectic transform gives
#    back the original array: it is an involution.
# ---------------------------------------------------------------------
amb = cross_ambiguity(two_tone, window)
same_modulus = np.allclose(np.abs(amb), np.abs(stft(two_tone, window)))
print("ambiguity and STFT share their modulus:", bool(same_modulus),
      "(the correction factor is unimodular:",
      str(bool(np.allclose(np.abs(ambiguity_phase(n)), 1.0))) + ")")

arr = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
round_trip = symplectic_dft(symplectic_dft(arr))
print(f"symplectic transform applied twice: max deviation {np.max(np.abs(round_trip - arr)):.2e}")

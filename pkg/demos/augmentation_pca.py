"""
Does averaging over time-frequency shifts smooth principal components?
======================================================================

The experiment behind the library, at desk scale. Take a dataset of
clean Gaussian bumps, roughen it by jittering every signal with a
random time-frequency shift, and compare two PCAs:

  raw:       eigenvectors of the empirical data operator of the
             jittered signals;
  augmented: eigenvectors of that operator averaged over all shifts in
             a small mask (equivalently, PCA of the dataset augmented
             by every masked shift of every signal).

Augmentation is free to apply and the smoothness metrics quantify what
it buys: lower concentration numbers and lighter spectrogram tails for
the leading components.
"""

import numpy as np

from qhaug import (
    JitterConfig,
    augmented_operator,
    compare_smoothness,
    data_operator,
    eigendecomposition,
    gaussian_window,
    jitter_dataset,
    make_omega,
    total_correlation,
)

n = 64
rng = np.random.default_rng(1)
window = gaussian_window(n)

# ---------------------------------------------------------------------
# 1. Dataset: 40 amplitude-scaled copies of the window, each kicked by
#    a random lattice shift of wrap-norm at most 6.
# ---------------------------------------------------------------------
clean = [float(a) * window for a in rng.uniform(0.5, 1.5, size=40)]
jittered = jitter_dataset(clean, JitterConfig(radius=6.0, seed=99))
print(f"dataset: {len(jittered)} signals of length {n}, jitter radius 6")

# ---------------------------------------------------------------------
# 2. Operators: the raw data operator, and its average over the 5 x 5
#    rectangle of shifts centred at the origin.
# ---------------------------------------------------------------------
omega = make_omega("rect:-2,-2,5,5", n)
s_raw = data_operator(jittered)
s_aug = augmented_operator(s_raw, omega)
eig_raw = eigendecomposition(s_raw)
eig_aug = eigendecomposition(s_aug)
print(f"top eigenvalue: raw {eig_raw.eigenvalues[0]:.4f}, "
      f"augmented {eig_aug.eigenvalues[0]:.4f}")

# ---------------------------------------------------------------------
# 3. Metrics for the top 4 components of each: smaller concentration
#    and smaller tail fractions mean smoother, better-localized
#    components. The gain concentrates where it matters: the top
#    component, which carries the dataset's common structure,
#    improves on every metric, while the deepest components absorb the
#    variance that averaging pushed out of the leaders and may spread.
# ---------------------------------------------------------------------
m = 4
radii = (4.0, 8.0, 16.0)
comparison = compare_smoothness(
    [eig_raw.vector(j) for j in range(m)],
    [eig_aug.vector(j) for j in range(m)],
    window,
    radii,
)

header = f"{'component':>9}  {'conc raw':>9}  {'conc aug':>9}  " + "  ".join(
    f"tail{int(r)} raw/aug" for r in radii
)
print("\n" + header)
for j, (before, after) in enumerate(zip(comparison.before, comparison.after)):
    tails = "  ".join(
        f"{before.tail_fractions[r]:.4f}/{after.tail_fractions[r]:.4f}"
        for r in radii
    )
    print(f"{j:>9}  {before.concentration:9.4f}  {after.concentration:9.4f}  {tails}")

top_raw, top_aug = comparison.before[0], comparison.after[0]
print(f"\ntop component, concentration: {top_raw.concentration:.4f} -> "
      f"{top_aug.concentration:.4f}")
for r in radii:
    print(f"top component, tail({int(r):2d}):     "
          f"{top_raw.tail_fractions[r]:.4f} -> {top_aug.tail_fractions[r]:.4f}")
print("(the CLI experiment 'qhaug synthetic-gaussian' runs this comparison "
      "at full scale)")

# ---------------------------------------------------------------------
# 4. A phase-space summary of the whole dataset: the total correlation
#    collects every pairwise cross-spectrogram; its spread mirrors how
#    scattered the dataset is before and after augmentation smoothing.
# ---------------------------------------------------------------------
corr = total_correlation(jittered)
peak = np.unravel_index(np.argmax(corr), corr.shape)
print(f"\ntotal correlation peaks at shift {tuple(int(v) for v in peak)} "
      f"with value {corr[peak]:.3f} (self-correlations at the origin)")

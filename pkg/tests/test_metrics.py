"""Smoothness functionals: closed forms, invariances, extremality."""

import numpy as np
import pytest

from qhaug.metrics import (
    MPQ_GRID,
    compare_smoothness,
    m1_norm,
    mpq_norm,
    signal_report,
    tail_energy,
)
from qhaug.tfcore import gaussian_window, stft, tf_shift


def random_signal(n, seed, unit=False):
    rng = np.random.default_rng(seed)
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return f / np.linalg.norm(f) if unit else f


def random_phase_signal(n, seed):
    rng = np.random.default_rng(seed)
    return np.exp(2j * np.pi * rng.random(n)) / np.sqrt(n)


class TestM1Norm:
    def test_gaussian_approximates_plane_integral(self):
        # continuous limit: integral of exp(-pi |z|^2 / 2) over the
        # plane equals 2 in natural units
        g = gaussian_window(128)
        assert m1_norm(g, g) == pytest.approx(2.0, abs=2e-2)

    def test_homogeneous(self):
        n = 32
        f = random_signal(n, 1)
        g = gaussian_window(n)
        assert m1_norm(3.5 * f, g) == pytest.approx(3.5 * m1_norm(f, g))
        assert m1_norm(-1j * f, g) == pytest.approx(m1_norm(f, g))

    def test_shift_invariant(self):
        n = 32
        f = random_signal(n, 2)
        g = gaussian_window(n)
        base = m1_norm(f, g)
        for z in [(1, 0), (0, 1), (7, 21), (31, 31)]:
            assert abs(m1_norm(tf_shift(f, z), g) - base) <= 1e-10

    def test_random_phase_spreads(self):
        n = 128
        g = gaussian_window(n)
        noisy = random_phase_signal(n, 3)
        conc_noise = m1_norm(noisy, g) / np.linalg.norm(noisy)
        conc_gauss = m1_norm(g, g) / np.linalg.norm(g)
        assert conc_noise >= 3 * conc_gauss

    def test_matches_definition(self):
        n = 16
        f = random_signal(n, 4)
        g = random_signal(n, 5, unit=True)
        assert m1_norm(f, g) == pytest.approx(np.abs(stft(f, g)).sum() / n)

    def test_window_must_be_unit(self):
        with pytest.raises(ValueError, match="unit norm"):
            m1_norm(np.ones(8), np.ones(8))
        with pytest.raises(ValueError, match="nonzero"):
            m1_norm(np.ones(8), np.zeros(8))


class TestMpqNorm:
    def test_1_1_equals_m1(self):
        n = 32
        f = random_signal(n, 6)
        g = gaussian_window(n)
        assert mpq_norm(f, g, 1, 1) == pytest.approx(m1_norm(f, g))

    def test_2_2_equals_weighted_energy(self):
        n = 32
        f = random_signal(n, 7)
        g = gaussian_window(n)
        expected = np.sqrt(np.sum(np.abs(stft(f, g)) ** 2) / n)
        assert mpq_norm(f, g, 2, 2) == pytest.approx(expected)
        # for a unit window that is exactly the signal's l2 norm
        assert mpq_norm(f, g, 2, 2) == pytest.approx(np.linalg.norm(f))

    def test_1_1_dominates_2_2(self):
        n = 64
        g = gaussian_window(n)
        for seed in range(8, 12):
            f = random_signal(n, seed)
            assert mpq_norm(f, g, 1, 1) >= mpq_norm(f, g, 2, 2)

    def test_homogeneous_and_shift_invariant(self):
        n = 32
        f = random_signal(n, 12)
        g = gaussian_window(n)
        for p, q in MPQ_GRID:
            base = mpq_norm(f, g, p, q)
            assert mpq_norm(2.0 * f, g, p, q) == pytest.approx(2 * base)
            moved = mpq_norm(tf_shift(f, (5, 9)), g, p, q)
            assert abs(moved - base) <= 1e-10

    def test_exponent_validation(self):
        g = gaussian_window(8)
        with pytest.raises(ValueError, match="at least 1"):
            mpq_norm(np.ones(8), g, 0.5, 2)
        with pytest.raises(ValueError, match="at least 1"):
            mpq_norm(np.ones(8), g, 1, 0)


class TestTailEnergy:
    def test_radius_zero_excludes_only_peak(self):
        n = 32
        f = random_signal(n, 13)
        g = gaussian_window(n)
        from qhaug.tfcore import spectrogram

        spec = spectrogram(f, g)
        expected = 1 - spec.max() / spec.sum()
        assert tail_energy(f, g, 0.0) == pytest.approx(expected)
        assert 0 < tail_energy(f, g, 0.0) < 1

    def test_covering_radius_gives_zero(self):
        n = 16
        f = random_signal(n, 14)
        g = gaussian_window(n)
        assert tail_energy(f, g, n / np.sqrt(2)) == 0.0

    def test_gaussian_tail_matches_continuous_integral(self):
        # beyond one natural unit the Gaussian spectrogram keeps
        # exp(-pi) of its mass
        n = 128
        g = gaussian_window(n)
        assert tail_energy(g, g, np.sqrt(n)) == pytest.approx(
            np.exp(-np.pi), abs=5e-3
        )

    def test_nonincreasing_in_radius(self):
        n = 32
        f = random_signal(n, 15)
        g = gaussian_window(n)
        radii = [0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 23.0]
        values = [tail_energy(f, g, r) for r in radii]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_shift_invariant(self):
        n = 32
        f = random_signal(n, 16)
        g = gaussian_window(n)
        base = tail_energy(f, g, 3.0)
        moved = tail_energy(tf_shift(f, (11, 29)), g, 3.0)
        assert abs(moved - base) <= 1e-12

    def test_negative_radius_rejected(self):
        g = gaussian_window(8)
        with pytest.raises(ValueError, match="nonnegative"):
            tail_energy(np.ones(8), g, -1.0)


class TestGaussianExtremality:
    def test_gaussian_minimizes_concentration_over_corpus(self):
        n = 64
        g = gaussian_window(n)
        floor = m1_norm(g, g) / np.linalg.norm(g)
        corpus = [
            random_signal(n, 17),
            random_phase_signal(n, 18),
            np.eye(n)[5].astype(complex),  # impulse
            np.exp(2j * np.pi * 7 * np.arange(n) / n),  # pure tone
            tf_shift(g, (9, 13)),  # shifted Gaussian: equality case
            g + 0.3 * random_signal(n, 19, unit=True),
            np.exp(2j * np.pi * (np.arange(n) ** 2) / (2 * n)),  # chirp
        ]
        for f in corpus:
            conc = m1_norm(f, g) / np.linalg.norm(f)
            assert conc >= floor - 1e-6


class TestReports:
    def test_report_fields(self):
        n = 32
        g = gaussian_window(n)
        f = random_signal(n, 20)
        rep = signal_report(f, g, [2.0, 4.0])
        assert rep.m1 == pytest.approx(m1_norm(f, g))
        assert set(rep.mpq) == set(MPQ_GRID)
        assert rep.concentration == pytest.approx(rep.m1 / np.linalg.norm(f))
        assert rep.tail_fractions[2.0] >= rep.tail_fractions[4.0]

    def test_metric_items_order(self):
        g = gaussian_window(16)
        rep = signal_report(g, g, [1.0, 3.0])
        names = [name for name, _ in rep.metric_items()]
        assert names == [
            "m1",
            "mpq_1_1",
            "mpq_1_2",
            "mpq_2_1",
            "mpq_2_2",
            "concentration",
            "tail_1",
            "tail_3",
        ]

    def test_identical_lists_give_exact_zero_differences(self):
        n = 32
        g = gaussian_window(n)
        sigs = [random_signal(n, s) for s in (21, 22, 23)]
        cmp = compare_smoothness(sigs, list(sigs), g, [1.0, 5.0])
        diff = cmp.mean_difference
        assert diff.m1 == 0.0
        assert diff.concentration == 0.0
        assert all(v == 0.0 for v in diff.mpq.values())
        assert all(v == 0.0 for v in diff.tail_fractions.values())

    def test_gaussian_after_random_improves(self):
        n = 64
        g = gaussian_window(n)
        cmp = compare_smoothness(
            [random_phase_signal(n, 24)], [g], g, [np.sqrt(n)]
        )
        assert cmp.mean_difference.concentration < 0
        assert cmp.mean_difference.tail_fractions[float(np.sqrt(n))] < 0

    def test_mean_is_componentwise_average(self):
        n = 16
        g = gaussian_window(n)
        sigs = [random_signal(n, s) for s in (25, 26)]
        cmp = compare_smoothness(sigs, sigs, g, [2.0])
        manual = (cmp.before[0].m1 + cmp.before[1].m1) / 2
        assert cmp.mean_before.m1 == pytest.approx(manual)

    def test_empty_lists_rejected(self):
        g = gaussian_window(8)
        with pytest.raises(ValueError, match="nonempty"):
            compare_smoothness([], [np.ones(8)], g, [1.0])

"""End-to-end experiment pipelines.

Two experiments mirror the library's central claim at desk scale. The
synthetic one builds a dataset of scaled Gaussian windows, roughens it
with random time-frequency jitter, and compares the principal
components of the raw data operator against those of its mask-averaged
(augmented) counterpart: augmentation should buy back smoothness. The
audio one does the same on unit-norm frames cut from a WAV file.

Both produce a RunSummary and, through emit_artifacts, a deterministic
file set. All randomness is derived from the single config seed through
named substreams, so a config fixes every byte of the output.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, fields
from typing import Any

import numpy as np

from . import __version__
from .artifacts import emit_artifacts
from .augment import JitterConfig, augmented_operator, jitter_dataset, make_omega
from .checks import IdentityReport, identity_suite
from .audio import ingest_wav, segment_frames
from .fixtures import fixture_wav_path
from .metrics import SmoothnessReport, compare_smoothness
from .operators import data_operator, eigendecomposition
from .tfcore import gaussian_window, spectrogram

__all__ = [
    "ExperimentConfig",
    "RunSummary",
    "run_synthetic_gaussian",
    "run_audio_pca",
    "run_qha_check",
    "SCALE_RANGE",
]

#: Scaling law of the synthetic dataset: amplitudes drawn uniformly here.
SCALE_RANGE = (0.5, 1.5)

_POWERS_OF_TWO = {16, 32, 64, 128, 256, 512}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything an experiment run depends on.

    metric_radii defaults (when None) to sqrt(N)/2, sqrt(N), 2*sqrt(N):
    one natural phase-space unit is sqrt(N) bins, so the trio brackets
    the Gaussian's natural support. frame_hop defaults to N/2.
    """

    n: int = 128
    seed: int = 42
    omega: str = "rect:-4,-4,9,9"
    jitter_radius: float = 8.0
    jitter_count: int = 1
    num_components: int = 10
    num_signals: int = 64
    wav: str | None = None
    frame_hop: int | None = None
    silence_floor: float = 1e-6
    metric_radii: tuple[float, ...] | None = None
    db_floor: float = -80.0
    output_dir: str = "qhaug-out"

    def validated(self) -> "ExperimentConfig":
        if self.n not in _POWERS_OF_TWO:
            raise ValueError(
                f"lattice size must be a power of two in [16, 512], got {self.n}"
            )
        if not (0 <= self.num_components <= self.n):
            raise ValueError(
                f"component count must lie in [0, {self.n}], got {self.num_components}"
            )
        if not (0 <= self.jitter_radius < self.n / 2):
            raise ValueError(
                f"jitter radius must lie in [0, {self.n / 2}), got {self.jitter_radius}"
            )
        if self.jitter_count < 1:
            raise ValueError(f"jitter count must be positive, got {self.jitter_count}")
        if self.num_signals < 1:
            raise ValueError(
                f"synthetic dataset size must be positive, got {self.num_signals}"
            )
        if self.frame_hop is not None and self.frame_hop < 1:
            raise ValueError(f"frame hop must be positive, got {self.frame_hop}")
        if self.db_floor >= 0:
            raise ValueError(f"dB display floor must be negative, got {self.db_floor}")
        if self.metric_radii is not None:
            if not self.metric_radii:
                raise ValueError("metric radius list must not be empty")
            if any(r < 0 for r in self.metric_radii):
                raise ValueError("metric radii must be nonnegative")
        return self

    def resolved_radii(self) -> tuple[float, ...]:
        if self.metric_radii is not None:
            return tuple(float(r) for r in self.metric_radii)
        unit = float(np.sqrt(self.n))
        return (unit / 2.0, unit, 2.0 * unit)

    def resolved_hop(self) -> int:
        return self.n // 2 if self.frame_hop is None else int(self.frame_hop)

    def echo(self, experiment: str) -> dict[str, Any]:
        """Config as stored in summary.json, with derived fields resolved."""
        out: dict[str, Any] = {
            "n": self.n,
            "seed": self.seed,
            "omega": self.omega,
            "num_components": self.num_components,
            "metric_radii": list(self.resolved_radii()),
            "db_floor": self.db_floor,
            "output_dir": self.output_dir,
        }
        if experiment == "synthetic-gaussian":
            out["jitter_radius"] = self.jitter_radius
            out["jitter_count"] = self.jitter_count
            out["num_signals"] = self.num_signals
            out["scale_range"] = list(SCALE_RANGE)
        else:
            out["wav"] = self.wav
            out["frame_hop"] = self.resolved_hop()
            out["silence_floor"] = self.silence_floor
        return out

    @classmethod
    def from_mapping(cls, mapping: dict[str, Any]) -> "ExperimentConfig":
        """Build from a config-file dictionary; unknown keys are errors."""
        alias = {"components": "num_components", "out": "output_dir"}
        known = {f.name for f in fields(cls)}
        kwargs: dict[str, Any] = {}
        for key, value in mapping.items():
            name = alias.get(key, key)
            if name not in known:
                raise ValueError(f"unknown config key {key!r}")
            if name == "metric_radii" and value is not None:
                value = tuple(float(r) for r in value)
            kwargs[name] = value
        return cls(**kwargs)


@dataclass(frozen=True)
class RunSummary:
    """Outcome of one experiment run.

    The serialized form (summary.json) carries everything except
    wall_time_seconds and the spectrogram arrays: timing varies run to
    run and would break byte-level determinism, and the spectrograms
    already land in the PGM files.
    """

    experiment: str
    config: dict[str, Any]
    eigenvalues_raw: list[float]
    eigenvalues_augmented: list[float]
    reports_raw: list[SmoothnessReport]
    reports_augmented: list[SmoothnessReport]
    mean_raw: SmoothnessReport | None
    mean_augmented: SmoothnessReport | None
    mean_difference: SmoothnessReport | None
    library_version: str
    wall_time_seconds: float = field(compare=False)
    spectrograms_raw: list[np.ndarray] = field(compare=False)
    spectrograms_augmented: list[np.ndarray] = field(compare=False)


def _scale_stream(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))


def _jitter_seed(seed: int) -> int:
    state = np.random.SeedSequence(entropy=seed, spawn_key=(1,)).generate_state(
        1, np.uint64
    )
    return int(state[0])


def _pipeline(experiment: str, cfg: ExperimentConfig, dataset) -> RunSummary:
    """Shared back half: operators, spectra, metrics, summary."""
    start = time.monotonic()
    n = cfg.n
    omega = make_omega(cfg.omega, n)
    window = gaussian_window(n)
    radii = cfg.resolved_radii()
    m = cfg.num_components

    s_raw = data_operator(dataset)
    s_aug = augmented_operator(s_raw, omega)
    eig_raw = eigendecomposition(s_raw)
    eig_aug = eigendecomposition(s_aug)

    vecs_raw = [eig_raw.vector(j) for j in range(m)]
    vecs_aug = [eig_aug.vector(j) for j in range(m)]
    if m > 0:
        comparison = compare_smoothness(vecs_raw, vecs_aug, window, radii)
        reports_raw = comparison.before
        reports_aug = comparison.after
        means = (
            comparison.mean_before,
            comparison.mean_after,
            comparison.mean_difference,
        )
    else:
        reports_raw, reports_aug = [], []
        means = (None, None, None)

    summary = RunSummary(
        experiment=experiment,
        config=cfg.echo(experiment),
        eigenvalues_raw=[float(v) for v in eig_raw.eigenvalues[:m]],
        eigenvalues_augmented=[float(v) for v in eig_aug.eigenvalues[:m]],
        reports_raw=reports_raw,
        reports_augmented=reports_aug,
        mean_raw=means[0],
        mean_augmented=means[1],
        mean_difference=means[2],
        library_version=__version__,
        wall_time_seconds=time.monotonic() - start,
        spectrograms_raw=[spectrogram(v, window) for v in vecs_raw],
        spectrograms_augmented=[spectrogram(v, window) for v in vecs_aug],
    )
    return summary


def run_synthetic_gaussian(cfg: ExperimentConfig, *, emit: bool = True) -> RunSummary:
    """Scaled-Gaussian experiment: jittered dataset vs mask-augmented operator.

    Builds num_signals copies of the canonical window with amplitudes
    drawn uniformly from SCALE_RANGE, jitters each by a random
    time-frequency shift of wrap-norm at most jitter_radius, then runs
    the shared PCA-and-metrics pipeline. With emit, writes the artifact
    files into cfg.output_dir.
    """
    cfg = cfg.validated()
    window = gaussian_window(cfg.n)
    scales = _scale_stream(cfg.seed).uniform(*SCALE_RANGE, size=cfg.num_signals)
    base = [c * window for c in scales]
    jitter = JitterConfig(
        radius=cfg.jitter_radius, count=cfg.jitter_count, seed=_jitter_seed(cfg.seed)
    )
    dataset = jitter_dataset(base, jitter)
    summary = _pipeline("synthetic-gaussian", cfg, dataset)
    if emit:
        emit_artifacts(summary, cfg.output_dir)
    return summary


def run_audio_pca(cfg: ExperimentConfig, *, emit: bool = True) -> RunSummary:
    """Audio experiment: frame PCA of a WAV file, raw vs augmented.

    Ingests cfg.wav (the bundled tone fixture when unset), downmixes to
    mono, cuts unit-norm frames of length N with the configured hop, and
    runs the shared pipeline on the frames.
    """
    cfg = cfg.validated()
    path = cfg.wav if cfg.wav else fixture_wav_path()
    samples, _rate = ingest_wav(path)
    frames = segment_frames(
        samples, cfg.n, cfg.resolved_hop(), silence_floor=cfg.silence_floor
    )
    if cfg.num_components > len(frames):
        raise ValueError(
            f"requested {cfg.num_components} components from {len(frames)} frames"
        )
    summary = _pipeline("audio-pca", cfg, frames)
    if emit:
        emit_artifacts(summary, cfg.output_dir)
    return summary


def run_qha_check(n_values, seed: int) -> list[IdentityReport]:
    """Identity suite over several lattice sizes with one seed.

    Sizes must lie in [4, 32]; use the reports' passed() or worst to
    decide the gate. The CLI turns a failure into exit code 2.
    """
    sizes = [int(n) for n in n_values]
    if not sizes:
        raise ValueError("need at least one lattice size")
    for n in sizes:
        if not (4 <= n <= 32):
            raise ValueError(f"check lattice sizes must lie in [4, 32], got {n}")
    return [identity_suite(n, seed) for n in sizes]

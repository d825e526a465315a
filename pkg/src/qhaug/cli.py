"""Command-line surface.

Three subcommands: the two experiments and the identity gate.

    qhaug synthetic-gaussian [--out DIR] [--seed S] [--n N] ...
    qhaug audio-pca [--wav FILE] [--n N] ...
    qhaug qha-check [--n N ...] [--seed S]

Options may come from a JSON config file (--config); an explicit flag
always wins over the file. Exit codes: 0 success, 1 validation or I/O
error, 2 numerical-gate failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .audio import WavFormatError
from .checks import GATE_TOLERANCE
from .experiments import (
    ExperimentConfig,
    run_audio_pca,
    run_qha_check,
    run_synthetic_gaussian,
)

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GATE = 2


def _add_common(sub: argparse.ArgumentParser, *, default_n: int) -> None:
    sub.add_argument("--config", metavar="FILE", help="JSON config file")
    sub.add_argument("--out", metavar="DIR", help="output directory for artifacts")
    sub.add_argument("--seed", type=int, help="root random seed (default 42)")
    sub.add_argument(
        "--n",
        type=int,
        help=f"lattice size, a power of two in [16, 512] (default {default_n})",
    )
    sub.add_argument(
        "--omega",
        metavar="SPEC",
        help="mask spec rect:k,l,w,h or disc:k,l,r (default rect:-4,-4,9,9)",
    )
    sub.add_argument(
        "--jitter-radius", type=float, help="jitter wrap-norm bound in bins"
    )
    sub.add_argument(
        "--jitter-count", type=int, help="jitter draws per signal (default 1)"
    )
    sub.add_argument(
        "--components", type=int, help="principal components to report (default 10)"
    )
    sub.add_argument(
        "--metric-radii",
        metavar="R1,R2,...",
        help="tail radii in bins (default sqrt(N)/2, sqrt(N), 2*sqrt(N))",
    )
    sub.add_argument(
        "--db-floor", type=float, help="spectrogram display floor in dB (default -80)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhaug",
        description="Time-frequency data augmentation experiments on the cyclic group",
    )
    parser.add_argument("--version", action="version", version=f"qhaug {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    synth = subs.add_parser(
        "synthetic-gaussian",
        help="jittered scaled-Gaussian dataset, raw vs augmented PCA",
    )
    _add_common(synth, default_n=128)
    synth.add_argument(
        "--num-signals", type=int, help="dataset size before jitter (default 64)"
    )

    audio = subs.add_parser(
        "audio-pca", help="frame PCA of a WAV file, raw vs augmented"
    )
    _add_common(audio, default_n=256)
    audio.add_argument(
        "--wav", metavar="FILE", help="input WAV (default: bundled tone fixture)"
    )
    audio.add_argument(
        "--frame-hop", type=int, help="samples between frame starts (default N/2)"
    )

    check = subs.add_parser("qha-check", help="run the numerical identity gate")
    check.add_argument(
        "--n",
        type=int,
        action="append",
        help="lattice size in [4, 32]; repeat for several (default 4 8 16)",
    )
    check.add_argument("--seed", type=int, default=1, help="random seed (default 1)")
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError(f"config {path} must hold a JSON object")
    return data


def _parse_radii(text: str) -> tuple[float, ...]:
    try:
        radii = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"malformed radius list {text!r}") from None
    if not radii:
        raise ValueError(f"malformed radius list {text!r}")
    return radii


def _experiment_config(args: argparse.Namespace, *, default_n: int) -> ExperimentConfig:
    mapping = _load_config(args.config)
    mapping.setdefault("n", default_n)
    overrides = {
        "n": args.n,
        "seed": args.seed,
        "omega": args.omega,
        "jitter_radius": args.jitter_radius,
        "jitter_count": args.jitter_count,
        "components": args.components,
        "out": args.out,
        "db_floor": args.db_floor,
        "num_signals": getattr(args, "num_signals", None),
        "wav": getattr(args, "wav", None),
        "frame_hop": getattr(args, "frame_hop", None),
    }
    if args.metric_radii is not None:
        overrides["metric_radii"] = _parse_radii(args.metric_radii)
    for key, value in overrides.items():
        if value is not None:
            mapping[key] = value
    return ExperimentConfig.from_mapping(mapping)


def _print_summary(summary) -> None:
    print(f"experiment: {summary.experiment}")
    print(f"lattice size: {summary.config['n']}")
    m = len(summary.eigenvalues_raw)
    if m:
        print(f"top eigenvalue raw: {summary.eigenvalues_raw[0]:.6g}")
        print(f"top eigenvalue augmented: {summary.eigenvalues_augmented[0]:.6g}")
    if summary.mean_difference is not None:
        print(
            "mean concentration: raw "
            f"{summary.mean_raw.concentration:.6g}, augmented "
            f"{summary.mean_augmented.concentration:.6g}"
        )
        for radius in sorted(summary.mean_raw.tail_fractions):
            raw = summary.mean_raw.tail_fractions[radius]
            aug = summary.mean_augmented.tail_fractions[radius]
            print(f"mean tail fraction beyond {radius:g} bins: raw {raw:.6g}, augmented {aug:.6g}")
    print(f"wall time: {summary.wall_time_seconds:.3f} s")
    print(f"artifacts in: {summary.config['output_dir']}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "qha-check":
            sizes = args.n if args.n else [4, 8, 16]
            reports = run_qha_check(sizes, args.seed)
            failed = False
            for report in reports:
                print(f"lattice size {report.n}, seed {report.seed}:")
                for name in sorted(report.errors):
                    print(f"  {name}: {report.errors[name]:.3e}")
                ok = report.passed()
                failed = failed or not ok
                print(f"  -> {'PASS' if ok else 'FAIL'} (gate {GATE_TOLERANCE:.0e})")
            return EXIT_GATE if failed else EXIT_OK
        if args.command == "synthetic-gaussian":
            cfg = _experiment_config(args, default_n=128)
            summary = run_synthetic_gaussian(cfg)
        else:
            cfg = _experiment_config(args, default_n=256)
            summary = run_audio_pca(cfg)
        _print_summary(summary)
        return EXIT_OK
    except (ValueError, WavFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

"""File emission for experiment runs: CSV, JSON, and PGM images.

Every writer is deterministic byte for byte given the same RunSummary:
floats are printed with 17 significant digits (enough to round-trip
float64), line endings are LF regardless of platform, JSON keys are
sorted, and the PGM quantization uses fixed rounding. Wall-clock time is
deliberately left out of summary.json so repeated runs of the same
configuration produce identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .metrics import SmoothnessReport, _radius_label

__all__ = [
    "format_float",
    "report_to_dict",
    "spectrogram_to_pgm",
    "emit_artifacts",
]

DB_FLOOR = -80.0


def format_float(x: float) -> str:
    """17 significant digits, enough to reconstruct the exact float64."""
    return format(float(x), ".17g")


def report_to_dict(report: SmoothnessReport) -> dict:
    """JSON-ready view of a SmoothnessReport (tuple keys to 'p,q')."""
    return {
        "m1": report.m1,
        "mpq": {f"{p},{q}": v for (p, q), v in sorted(report.mpq.items())},
        "concentration": report.concentration,
        "tail_fractions": {
            _radius_label(r): v for r, v in sorted(report.tail_fractions.items())
        },
    }


def _write_bytes(path: Path, blob: bytes) -> None:
    try:
        path.write_bytes(blob)
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc.strerror or exc}") from exc


def _csv_line(fields) -> str:
    return ",".join(fields) + "\n"


def _eigenvalue_csv(summary) -> bytes:
    lines = [_csv_line(["raw", "augmented"])]
    for raw, aug in zip(summary.eigenvalues_raw, summary.eigenvalues_augmented):
        lines.append(_csv_line([format_float(raw), format_float(aug)]))
    return "".join(lines).encode("ascii")


def _metric_csv(summary) -> bytes:
    header: list[str] | None = None
    rows: list[str] = []
    for index, (raw_rep, aug_rep) in enumerate(
        zip(summary.reports_raw, summary.reports_augmented), start=1
    ):
        for variant, rep in (("raw", raw_rep), ("augmented", aug_rep)):
            items = rep.metric_items()
            if header is None:
                header = ["component", "variant"] + [name for name, _ in items]
            rows.append(
                _csv_line(
                    [str(index), variant] + [format_float(v) for _, v in items]
                )
            )
    if header is None:
        header = ["component", "variant"]
    return (_csv_line(header) + "".join(rows)).encode("ascii")


def _summary_payload(summary) -> dict:
    payload = {
        "experiment": summary.experiment,
        "config": summary.config,
        "eigenvalues_raw": [float(v) for v in summary.eigenvalues_raw],
        "eigenvalues_augmented": [float(v) for v in summary.eigenvalues_augmented],
        "reports_raw": [report_to_dict(r) for r in summary.reports_raw],
        "reports_augmented": [report_to_dict(r) for r in summary.reports_augmented],
        "library_version": summary.library_version,
    }
    for name in ("mean_raw", "mean_augmented", "mean_difference"):
        rep = getattr(summary, name)
        payload[name] = report_to_dict(rep) if rep is not None else None
    return payload


def spectrogram_to_pgm(spec: np.ndarray, *, db_floor: float = DB_FLOOR) -> bytes:
    """Render a spectrogram as a binary PGM (P5) image.

    The lattice is re-centred so the origin sits mid-image, time runs
    left to right and frequency bottom to top. Values are displayed on a
    dB scale relative to the maximum with the given floor:
    pixel = clamp(255 * (dB - floor) / (-floor)); the peak maps to 255.
    """
    spec = np.asarray(spec, dtype=float)
    if spec.ndim != 2:
        raise ValueError(f"spectrogram must be 2-d, got shape {spec.shape}")
    if db_floor >= 0:
        raise ValueError(f"dB floor must be negative, got {db_floor}")
    top = float(spec.max())
    if top <= 0:
        raise ValueError("spectrogram has no positive values to display")
    with np.errstate(divide="ignore"):
        db = 10.0 * np.log10(np.maximum(spec, 0.0) / top)
    db = np.maximum(db, db_floor)
    pixels = np.clip(np.rint(255.0 * (db - db_floor) / (-db_floor)), 0, 255)
    image = np.flipud(np.fft.fftshift(pixels).T).astype(np.uint8)
    h, w = image.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + image.tobytes()


def emit_artifacts(summary, out_dir) -> list[str]:
    """Write eigenvalues.csv, metrics.csv, summary.json, and one PGM per
    reported component and variant. Returns the written paths."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    written: list[str] = []

    def emit(name: str, blob: bytes) -> None:
        path = out / name
        _write_bytes(path, blob)
        written.append(str(path))

    emit("eigenvalues.csv", _eigenvalue_csv(summary))
    emit("metrics.csv", _metric_csv(summary))
    payload = json.dumps(_summary_payload(summary), indent=2, sort_keys=True) + "\n"
    emit("summary.json", payload.encode("ascii"))
    for variant, specs in (
        ("raw", summary.spectrograms_raw),
        ("augmented", summary.spectrograms_augmented),
    ):
        for index, spec in enumerate(specs, start=1):
            emit(
                f"pc_{variant}_{index}.pgm",
                spectrogram_to_pgm(spec, db_floor=summary.config["db_floor"]),
            )
    return written

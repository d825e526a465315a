"""Minimal WAV ingestion with chunk-level diagnostics.

Only the two encodings the experiments accept are supported: PCM 16-bit
and IEEE float 32-bit, one or two channels. The parser walks the RIFF
chunk list explicitly so malformed files fail with the name of the
offending chunk rather than a generic unpack error, and 16-bit samples
are scaled by exactly 1/32768 so the integer range maps into [-1, 1).
"""

from __future__ import annotations

import struct

import numpy as np

__all__ = [
    "WavFormatError",
    "ingest_wav",
    "write_wav",
    "segment_frames",
]

_PCM = 1
_IEEE_FLOAT = 3
_EXTENSIBLE = 0xFFFE


class WavFormatError(ValueError):
    """Raised when a file is not a WAV this library can read."""


def ingest_wav(path) -> tuple[np.ndarray, int]:
    """Read a WAV file into a mono float vector in [-1, 1].

    Returns (samples, sample_rate). Stereo content is downmixed by
    averaging the channels; 16-bit integers are scaled by 1/32768.
    Raises WavFormatError naming the missing or malformed chunk.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 12:
        raise WavFormatError("file too short for a RIFF header")
    if data[0:4] != b"RIFF":
        raise WavFormatError("missing RIFF magic, not a WAV file")
    if data[8:12] != b"WAVE":
        raise WavFormatError("RIFF form type is not WAVE")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        cid = data[pos : pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + size]
        if cid == b"fmt ":
            if size < 16:
                raise WavFormatError(f"fmt chunk too short ({size} bytes)")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data":
            if len(body) < size:
                raise WavFormatError(
                    f"truncated data chunk: header promises {size} bytes, "
                    f"file holds {len(body)}"
                )
            payload = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned

    if fmt is None:
        raise WavFormatError("missing fmt chunk")
    if payload is None:
        raise WavFormatError("missing data chunk")

    tag, channels, rate, _, _, bits = fmt
    if tag == _EXTENSIBLE:
        raise WavFormatError("extensible WAV encoding is not supported")
    if tag not in (_PCM, _IEEE_FLOAT):
        raise WavFormatError(f"unsupported encoding: format tag {tag}")
    if channels not in (1, 2):
        raise WavFormatError(f"unsupported channel count {channels}, need 1 or 2")
    if tag == _PCM and bits != 16:
        raise WavFormatError(f"unsupported bit depth {bits} for PCM, need 16")
    if tag == _IEEE_FLOAT and bits != 32:
        raise WavFormatError(f"unsupported bit depth {bits} for float, need 32")

    width = bits // 8
    frame = width * channels
    usable = (len(payload) // frame) * frame
    if usable == 0:
        raise WavFormatError("data chunk holds no complete sample frame")
    if tag == _PCM:
        raw = np.frombuffer(payload[:usable], dtype="<i2").astype(np.float64)
        raw /= 32768.0
    else:
        raw = np.frombuffer(payload[:usable], dtype="<f4").astype(np.float64)
    if channels == 2:
        raw = raw.reshape(-1, 2).mean(axis=1)
    return raw, int(rate)


def write_wav(path, samples, rate: int, *, encoding: str = "pcm16") -> None:
    """Write a mono or stereo WAV file.

    samples: 1-d (mono) or (frames, channels) float array in [-1, 1].
    encoding: 'pcm16' (values scaled by 32768 and clipped to the int16
    range) or 'float32'.
    """
    arr = np.asarray(samples, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[1] not in (1, 2):
        raise ValueError(f"samples must be mono or stereo, got shape {arr.shape}")
    channels = arr.shape[1]
    if encoding == "pcm16":
        tag, bits = _PCM, 16
        ints = np.clip(np.round(arr * 32768.0), -32768, 32767).astype("<i2")
        payload = ints.tobytes()
    elif encoding == "float32":
        tag, bits = _IEEE_FLOAT, 32
        payload = arr.astype("<f4").tobytes()
    else:
        raise ValueError(f"unknown encoding {encoding!r}")
    block = channels * bits // 8
    fmt = struct.pack(
        "<HHIIHH", tag, channels, int(rate), int(rate) * block, block, bits
    )
    chunks = b"".join(
        [
            b"fmt ",
            struct.pack("<I", len(fmt)),
            fmt,
            b"data",
            struct.pack("<I", len(payload)),
            payload,
            b"\x00" if len(payload) & 1 else b"",
        ]
    )
    with open(path, "wb") as fh:
        fh.write(b"RIFF" + struct.pack("<I", 4 + len(chunks)) + b"WAVE" + chunks)


def segment_frames(
    samples, n: int, hop: int, *, silence_floor: float = 1e-6
) -> list[np.ndarray]:
    """Cut a sample stream into unit-norm frames of length n.

    Frames start every hop samples; a trailing partial frame is
    discarded. Each frame is l2-normalized, and frames whose norm falls
    below silence_floor times the loudest frame are dropped. Raises
    ValueError when nothing usable remains.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 1:
        raise ValueError(f"sample stream must be 1-d, got shape {samples.shape}")
    if n < 1 or hop < 1:
        raise ValueError(f"frame length and hop must be positive, got {n}, {hop}")
    count = (samples.size - n) // hop + 1 if samples.size >= n else 0
    if count <= 0:
        raise ValueError(
            f"stream of {samples.size} samples is shorter than one frame of {n}"
        )
    frames = [samples[i * hop : i * hop + n] for i in range(count)]
    norms = np.array([np.linalg.norm(f) for f in frames])
    cut = silence_floor * norms.max()
    kept = [f / nrm for f, nrm in zip(frames, norms) if nrm > cut and nrm > 0.0]
    if not kept:
        raise ValueError("zero usable frames: every frame is silent")
    return kept

"""Deterministic audio fixture bundled with the package.

A five-second, 8 kHz tone mixture stands in for real music in the audio
experiment: overlapping harmonic voices with distinct onsets, a vibrato
voice, a rising chirp, short repeated blips, and a whisper of seeded
noise so the frame covariance has rich spectrum. The waveform is a pure
function of the constants below; the checked-in WAV under data/ must
equal generate_tone() byte for byte, and a test asserts that.
"""

from __future__ import annotations

from importlib import resources

import numpy as np

from .audio import write_wav

__all__ = ["FIXTURE_RATE", "FIXTURE_SECONDS", "generate_tone", "fixture_wav_path"]

FIXTURE_RATE = 8000
FIXTURE_SECONDS = 5.0
_NOISE_SEED = 20260818
_FIXTURE_NAME = "fixture_tone.wav"

# (start s, stop s, frequency Hz, amplitude); frequencies stay far below
# the 4 kHz Nyquist so PCM quantization is the only distortion
_VOICES = (
    (0.0, 2.0, 330.0, 0.50),
    (0.0, 2.0, 495.0, 0.35),
    (1.4, 3.2, 660.0, 0.25),
    (2.8, 5.0, 550.0, 0.30),
)
_BLIP_TIMES = (0.5, 1.5, 2.5, 3.5, 4.5)
_BLIP_LEN = 0.12
_BLIP_FREQ = 880.0
_BLIP_AMP = 0.30


def _envelope(t: np.ndarray, start: float, stop: float, ramp: float = 0.05):
    """Unit plateau on [start, stop] with raised-cosine edges."""
    up = np.clip((t - start) / ramp, 0.0, 1.0)
    down = np.clip((stop - t) / ramp, 0.0, 1.0)
    smooth = lambda x: 0.5 - 0.5 * np.cos(np.pi * x)
    return smooth(up) * smooth(down)


def generate_tone() -> np.ndarray:
    """The fixture waveform: mono float64, peak 0.9, 40000 samples."""
    t = np.arange(int(FIXTURE_RATE * FIXTURE_SECONDS)) / FIXTURE_RATE
    x = np.zeros_like(t)
    for start, stop, freq, amp in _VOICES:
        x += amp * _envelope(t, start, stop) * np.sin(2 * np.pi * freq * t)
    # vibrato voice: 220 Hz carrier, 5 Hz wobble of depth 6 Hz
    vib_phase = 2 * np.pi * (220.0 * t - (6.0 / 5.0) / (2 * np.pi) * np.cos(2 * np.pi * 5.0 * t))
    x += 0.45 * _envelope(t, 1.4, 3.2) * np.sin(vib_phase)
    # rising chirp, 300 Hz to 1200 Hz across its window
    c0, c1 = 2.8, 5.0
    inst = 300.0 + (1200.0 - 300.0) * np.clip((t - c0) / (c1 - c0), 0.0, 1.0) / 2.0
    x += 0.40 * _envelope(t, c0, c1) * np.sin(2 * np.pi * inst * (t - c0))
    for blip in _BLIP_TIMES:
        x += (
            _BLIP_AMP
            * _envelope(t, blip, blip + _BLIP_LEN, 0.02)
            * np.sin(2 * np.pi * _BLIP_FREQ * t)
        )
    x += 0.01 * np.random.default_rng(_NOISE_SEED).standard_normal(t.size)
    return 0.9 * x / np.max(np.abs(x))


def fixture_wav_path() -> str:
    """Filesystem path of the bundled WAV, writing it next to the
    package data if an installed copy is missing (source checkouts)."""
    ref = resources.files("qhaug").joinpath(f"data/{_FIXTURE_NAME}")
    try:
        if ref.is_file():
            return str(ref)
    except (OSError, AttributeError):
        pass
    raise FileNotFoundError(
        f"bundled fixture {_FIXTURE_NAME} missing from package data; "
        "regenerate it with python -m qhaug.fixtures <path>"
    )


def _main(argv=None) -> int:
    import sys

    args = sys.argv[1:] if argv is None else argv
    out = args[0] if args else _FIXTURE_NAME
    write_wav(out, generate_tone(), FIXTURE_RATE, encoding="pcm16")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(_main())

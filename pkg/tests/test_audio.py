"""WAV ingestion, writing, frame segmentation, and the bundled fixture."""

import struct

import numpy as np
import pytest

from qhaug.audio import WavFormatError, ingest_wav, segment_frames, write_wav
from qhaug.fixtures import (
    FIXTURE_RATE,
    FIXTURE_SECONDS,
    fixture_wav_path,
    generate_tone,
)


def raw_wav(chunks: list[bytes]) -> bytes:
    """Assemble RIFF bytes from already-encoded chunks."""
    body = b"WAVE" + b"".join(chunks)
    return b"RIFF" + struct.pack("<I", len(body)) + body


def chunk(cid: bytes, payload: bytes) -> bytes:
    padded = payload + (b"\x00" if len(payload) & 1 else b"")
    return cid + struct.pack("<I", len(payload)) + padded


def fmt_chunk(tag=1, channels=1, rate=8000, bits=16) -> bytes:
    block = channels * bits // 8
    return chunk(
        b"fmt ",
        struct.pack("<HHIIHH", tag, channels, rate, rate * block, block, bits),
    )


def pcm_payload(values) -> bytes:
    return np.asarray(values, dtype="<i2").tobytes()


class TestIngest:
    def test_pcm16_scaling(self, tmp_path):
        # the integer range maps into [-1, 1) by exact division by 32768
        path = tmp_path / "scale.wav"
        payload = pcm_payload([0, 16384, -32768, 32767])
        path.write_bytes(raw_wav([fmt_chunk(), chunk(b"data", payload)]))
        samples, rate = ingest_wav(path)
        assert rate == 8000
        assert samples.tolist() == [0.0, 0.5, -1.0, 32767.0 / 32768.0]

    def test_stereo_downmix_averages(self, tmp_path):
        path = tmp_path / "stereo.wav"
        payload = pcm_payload([32767, -32768, 16384, 16384, 0, -16384])
        path.write_bytes(
            raw_wav([fmt_chunk(channels=2), chunk(b"data", payload)])
        )
        samples, _ = ingest_wav(path)
        expected = [
            (32767.0 - 32768.0) / 2 / 32768.0,
            0.5,
            -0.25,
        ]
        assert np.allclose(samples, expected, atol=0)

    def test_float32_passthrough(self, tmp_path):
        path = tmp_path / "f32.wav"
        values = np.array([0.25, -0.75, 1.0], dtype="<f4")
        path.write_bytes(
            raw_wav(
                [fmt_chunk(tag=3, bits=32), chunk(b"data", values.tobytes())]
            )
        )
        samples, _ = ingest_wav(path)
        assert samples.tolist() == values.astype(np.float64).tolist()

    def test_unknown_chunks_are_skipped(self, tmp_path):
        path = tmp_path / "extra.wav"
        parts = [
            chunk(b"LIST", b"INFOsomething irrelevant"),
            fmt_chunk(),
            chunk(b"junk", b"\x01\x02\x03"),  # odd size, forces pad byte
            chunk(b"data", pcm_payload([100, -100])),
        ]
        path.write_bytes(raw_wav(parts))
        samples, _ = ingest_wav(path)
        assert samples.tolist() == [100.0 / 32768.0, -100.0 / 32768.0]

    def test_trailing_partial_frame_is_dropped(self, tmp_path):
        path = tmp_path / "ragged.wav"
        # three bytes cannot hold two complete 16-bit samples
        payload = pcm_payload([1200]) + b"\x7f"
        path.write_bytes(raw_wav([fmt_chunk(), chunk(b"data", payload)]))
        samples, _ = ingest_wav(path)
        assert samples.size == 1


class TestIngestErrors:
    def test_too_short(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(b"RIFF")
        with pytest.raises(WavFormatError, match="too short for a RIFF header"):
            ingest_wav(path)

    def test_not_riff(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(b"OggS" + b"\x00" * 20)
        with pytest.raises(WavFormatError, match="missing RIFF magic"):
            ingest_wav(path)

    def test_not_wave(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(b"RIFF" + struct.pack("<I", 4) + b"AVI " + b"\x00" * 8)
        with pytest.raises(WavFormatError, match="form type is not WAVE"):
            ingest_wav(path)

    def test_missing_fmt(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(raw_wav([chunk(b"data", pcm_payload([1, 2]))]))
        with pytest.raises(WavFormatError, match="missing fmt chunk"):
            ingest_wav(path)

    def test_missing_data(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(raw_wav([fmt_chunk()]))
        with pytest.raises(WavFormatError, match="missing data chunk"):
            ingest_wav(path)

    def test_short_fmt(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(raw_wav([chunk(b"fmt ", b"\x01\x00\x01\x00")]))
        with pytest.raises(WavFormatError, match="fmt chunk too short"):
            ingest_wav(path)

    def test_truncated_data(self, tmp_path):
        path = tmp_path / "t.wav"
        bad = chunk(b"data", pcm_payload([1, 2, 3]))[:-4]
        # rewrite the size field to promise more than the file holds
        bad = b"data" + struct.pack("<I", 6) + bad[8:]
        path.write_bytes(raw_wav([fmt_chunk(), bad]))
        with pytest.raises(WavFormatError, match="promises 6 bytes"):
            ingest_wav(path)

    def test_extensible_rejected(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(
            raw_wav(
                [fmt_chunk(tag=0xFFFE), chunk(b"data", pcm_payload([0, 0]))]
            )
        )
        with pytest.raises(WavFormatError, match="extensible WAV encoding"):
            ingest_wav(path)

    def test_exotic_encoding_rejected(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(
            raw_wav([fmt_chunk(tag=7), chunk(b"data", pcm_payload([0]))])
        )
        with pytest.raises(WavFormatError, match="format tag 7"):
            ingest_wav(path)

    def test_too_many_channels(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(
            raw_wav([fmt_chunk(channels=6), chunk(b"data", pcm_payload([0]))])
        )
        with pytest.raises(WavFormatError, match="channel count 6"):
            ingest_wav(path)

    @pytest.mark.parametrize(
        "tag,bits", [(1, 24), (1, 8), (3, 64)], ids=["pcm24", "pcm8", "f64"]
    )
    def test_wrong_bit_depth(self, tmp_path, tag, bits):
        path = tmp_path / "t.wav"
        path.write_bytes(
            raw_wav(
                [fmt_chunk(tag=tag, bits=bits), chunk(b"data", b"\x00" * 16)]
            )
        )
        with pytest.raises(WavFormatError, match=f"bit depth {bits}"):
            ingest_wav(path)

    def test_empty_data(self, tmp_path):
        path = tmp_path / "t.wav"
        path.write_bytes(raw_wav([fmt_chunk(), chunk(b"data", b"\x00")]))
        with pytest.raises(WavFormatError, match="no complete sample frame"):
            ingest_wav(path)


class TestWrite:
    def test_pcm16_round_trip(self, tmp_path):
        rng = np.random.default_rng(5)
        original = np.clip(rng.standard_normal(500) * 0.3, -1.0, 1.0)
        path = tmp_path / "rt.wav"
        write_wav(path, original, 44100)
        back, rate = ingest_wav(path)
        assert rate == 44100
        assert back.size == original.size
        # quantization moves each sample by at most half a step
        assert np.max(np.abs(back - original)) <= 0.5 / 32768.0

    def test_float32_round_trip(self, tmp_path):
        rng = np.random.default_rng(6)
        original = rng.standard_normal(301) * 0.4
        path = tmp_path / "rt32.wav"
        write_wav(path, original, 16000, encoding="float32")
        back, rate = ingest_wav(path)
        assert rate == 16000
        assert np.max(np.abs(back - original)) <= 1e-6

    def test_stereo_round_trip(self, tmp_path):
        frames = np.array([[0.5, -0.5], [0.25, 0.75]])
        path = tmp_path / "st.wav"
        write_wav(path, frames, 8000, encoding="float32")
        back, _ = ingest_wav(path)
        assert np.allclose(back, frames.mean(axis=1), atol=1e-7)

    def test_full_scale_clips_to_int16_range(self, tmp_path):
        path = tmp_path / "clip.wav"
        write_wav(path, [1.0, -1.0, 2.0], 8000)
        back, _ = ingest_wav(path)
        assert back.tolist() == [
            32767.0 / 32768.0,
            -1.0,
            32767.0 / 32768.0,
        ]

    def test_odd_payload_gets_pad_byte(self, tmp_path):
        path = tmp_path / "odd.wav"
        write_wav(path, np.zeros(3, dtype=np.float64), 8000)
        data = path.read_bytes()
        # 6 payload bytes is even; force odd via float32 on 1 sample? no:
        # both encodings give even payloads, so check total RIFF size
        # bookkeeping instead: declared size matches actual remainder
        (declared,) = struct.unpack_from("<I", data, 4)
        assert declared == len(data) - 8

    def test_rejects_three_channels(self, tmp_path):
        with pytest.raises(ValueError, match="mono or stereo"):
            write_wav(tmp_path / "x.wav", np.zeros((4, 3)), 8000)

    def test_rejects_unknown_encoding(self, tmp_path):
        with pytest.raises(ValueError, match="unknown encoding"):
            write_wav(tmp_path / "x.wav", np.zeros(4), 8000, encoding="alaw")


class TestSegmentFrames:
    def test_count_and_unit_norm(self):
        rng = np.random.default_rng(7)
        stream = rng.standard_normal(1000)
        frames = segment_frames(stream, 128, 64)
        assert len(frames) == (1000 - 128) // 64 + 1
        for f in frames:
            assert np.linalg.norm(f) == pytest.approx(1.0, abs=1e-12)

    def test_frames_overlap_correctly(self):
        stream = np.arange(20, dtype=np.float64) + 1.0
        frames = segment_frames(stream, 8, 4)
        assert len(frames) == 4
        first = frames[0] * np.linalg.norm(stream[0:8])
        assert np.allclose(first, stream[0:8], atol=1e-12)

    def test_silent_frames_dropped(self):
        stream = np.concatenate(
            [np.ones(64), np.zeros(64), np.full(64, 2.0)]
        )
        frames = segment_frames(stream, 64, 64, silence_floor=1e-3)
        assert len(frames) == 2

    def test_all_silent_raises(self):
        with pytest.raises(ValueError, match="every frame is silent"):
            segment_frames(np.zeros(256), 64, 64)

    def test_short_stream_raises(self):
        with pytest.raises(ValueError, match="shorter than one frame"):
            segment_frames(np.ones(10), 64, 32)

    def test_matrix_input_raises(self):
        with pytest.raises(ValueError, match="must be 1-d"):
            segment_frames(np.ones((4, 4)), 2, 1)

    def test_nonpositive_hop_raises(self):
        with pytest.raises(ValueError, match="must be positive"):
            segment_frames(np.ones(64), 16, 0)


class TestFixture:
    def test_bundled_file_matches_generator(self, tmp_path):
        # the committed WAV must be the deterministic render, byte for byte
        regenerated = tmp_path / "regen.wav"
        write_wav(regenerated, generate_tone(), FIXTURE_RATE)
        bundled = fixture_wav_path()
        with open(bundled, "rb") as fh:
            assert fh.read() == regenerated.read_bytes()

    def test_properties(self):
        tone = generate_tone()
        assert tone.size == int(FIXTURE_RATE * FIXTURE_SECONDS)
        assert np.max(np.abs(tone)) == pytest.approx(0.9, abs=1e-12)

    def test_ingests_cleanly(self):
        samples, rate = ingest_wav(fixture_wav_path())
        assert rate == FIXTURE_RATE
        assert samples.size == 40000
        # frames for the default audio experiment are plentiful
        frames = segment_frames(samples, 256, 128)
        assert len(frames) > 300

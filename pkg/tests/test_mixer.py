import wave
from dataclasses import dataclass, field

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from soundscape.adapters import AudioClip
from soundscape.mixer import (
    MixSettings,
    MuxerMissingError,
    StereoBuffer,
    apply_pan,
    db_to_amplitude,
    export,
    mixdown,
    read_wav_stereo,
    render_track,
    write_wav,
)
from soundscape.soundgen import AudioTrack


def make_track(samples, sr=48000, track_id="t1", gain=((0.0, 0.0),), pan=((0.0, 0.0),),
               offset=0.0, duration=None):
    clip = AudioClip(samples=np.asarray(samples, dtype=np.float64), sample_rate=sr)
    return AudioTrack(id=track_id, suggestion_id="s1", clip=clip,
                      duration_target=duration or clip.duration,
                      gain_automation=gain, pan_automation=pan,
                      user_gain_offset_db=offset)


SETTINGS = MixSettings()


class TestDbToAmplitude:
    def test_identity(self):
        assert db_to_amplitude(0.0) == 1.0

    def test_half(self):
        assert db_to_amplitude(-6.0206) == pytest.approx(0.5, abs=1e-5)

    def test_minus_seven(self):
        assert db_to_amplitude(-7.0) == pytest.approx(0.44668, abs=1e-5)

    @given(st.floats(-60, 20), st.floats(-60, 20))
    def test_additivity(self, a, b):
        assert db_to_amplitude(a + b) == pytest.approx(
            db_to_amplitude(a) * db_to_amplitude(b), rel=1e-9)


class TestApplyPan:
    def test_center(self):
        left, right = apply_pan(1.0, 0.0)
        assert left == pytest.approx(0.70711, abs=1e-5)
        assert right == pytest.approx(0.70711, abs=1e-5)

    def test_hard_left(self):
        assert apply_pan(0.8, -1.0) == pytest.approx((0.8, 0.0), abs=1e-12)

    def test_hard_right(self):
        assert apply_pan(0.8, 1.0) == pytest.approx((0.0, 0.8), abs=1e-12)

    @given(st.floats(-1, 1), st.floats(-1, 1))
    def test_power_preserved(self, sample, pan):
        left, right = apply_pan(sample, pan)
        assert left**2 + right**2 == pytest.approx(sample**2, abs=1e-9)


class TestRenderTrack:
    def test_single_keyframe_center_pan(self):
        track = make_track(np.full(4800, 0.5))
        buf = render_track(track, SETTINGS)
        assert np.allclose(buf.left, 0.5 * np.cos(np.pi / 4), atol=1e-9)
        assert np.allclose(buf.right, 0.5 * np.sin(np.pi / 4), atol=1e-9)

    def test_user_offset_halves(self):
        base = render_track(make_track(np.full(4800, 0.5)), SETTINGS)
        halved = render_track(make_track(np.full(4800, 0.5), offset=-6.0206), SETTINGS)
        assert np.allclose(halved.left, base.left * 0.5, atol=1e-5)

    def test_gain_interpolation_midpoint(self):
        track = make_track(np.full(48000, 0.5), gain=((0.0, 0.0), (1.0, -12.0)))
        buf = render_track(track, SETTINGS)
        expected = 0.5 * db_to_amplitude(-6.0) * np.cos(np.pi / 4)
        assert buf.left[24000] == pytest.approx(expected, rel=1e-6)

    def test_resampling_duration(self):
        track = make_track(np.zeros(32000), sr=32000)
        buf = render_track(track, SETTINGS)
        assert buf.left.size == 48000

    def test_identity_automation_reproduces_clip(self):
        rng = np.random.default_rng(3)
        samples = rng.uniform(-0.9, 0.9, 4800)
        buf = render_track(make_track(samples), SETTINGS)
        assert np.allclose(buf.left, samples * np.cos(np.pi / 4), atol=1e-9)

    def test_empty_clip_rejected(self):
        with pytest.raises(ValueError):
            render_track(make_track(np.empty(0), duration=1.0), SETTINGS)


class TestMixdown:
    def test_single_track_identity(self):
        track = make_track(np.full(4800, 0.5))
        mix, factor = mixdown([track], SETTINGS)
        solo = render_track(track, SETTINGS)
        assert factor == 1.0
        assert np.array_equal(mix.left, solo.left)

    def test_two_halves_equal_one_full(self):
        samples = np.sin(np.linspace(0, 20, 4800)) * 0.8
        half = [make_track(samples, track_id=f"t{i}", offset=-6.0206) for i in range(2)]
        full, _ = mixdown([make_track(samples)], SETTINGS)
        summed, _ = mixdown(half, SETTINGS)
        assert np.allclose(summed.left, full.left, atol=1e-6)
        assert np.allclose(summed.right, full.right, atol=1e-6)

    def test_normalization_factor(self):
        # two full-scale tracks at hard left sum to ~2.0 peak on the left channel
        tracks = [make_track(np.full(4800, 0.75), track_id=f"t{i}",
                             pan=((0.0, -1.0),)) for i in range(2)]
        mix, factor = mixdown(tracks, SETTINGS)
        assert np.abs(mix.left).max() == pytest.approx(0.99, abs=1e-9)
        assert factor == pytest.approx(0.99 / 1.5, rel=1e-9)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(11)
        tracks = [make_track(rng.uniform(-0.5, 0.5, 4800), track_id=f"t{i}",
                             pan=((0.0, rng.uniform(-1, 1)),)) for i in range(4)]
        forward, _ = mixdown(tracks, SETTINGS)
        backward, _ = mixdown(tracks[::-1], SETTINGS)
        assert np.allclose(forward.left, backward.left, atol=1e-9)
        assert np.allclose(forward.right, backward.right, atol=1e-9)

    def test_zero_padding_to_longest(self):
        tracks = [make_track(np.full(4800, 0.2)), make_track(np.full(9600, 0.2), track_id="t2")]
        mix, _ = mixdown(tracks, SETTINGS)
        assert mix.left.size == 9600

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mixdown([], SETTINGS)

    def test_normalization_is_one_global_factor(self):
        # scaling by one scalar is what preserves pairwise RMS ratios
        rng = np.random.default_rng(5)
        tracks = [make_track(rng.uniform(-0.9, 0.9, 4800), track_id=f"t{i}")
                  for i in range(3)]
        rendered = [render_track(t, SETTINGS) for t in tracks]
        raw_left = np.sum([b.left for b in rendered], axis=0)
        raw_right = np.sum([b.right for b in rendered], axis=0)
        mix, factor = mixdown(tracks, SETTINGS)
        assert factor < 1.0
        assert np.allclose(mix.left, raw_left * factor, atol=1e-12)
        assert np.allclose(mix.right, raw_right * factor, atol=1e-12)

    def test_normalization_preserves_rms_ratio(self):
        rng = np.random.default_rng(6)
        loud = make_track(rng.uniform(-0.9, 0.9, 4800), track_id="loud")
        quiet = make_track(rng.uniform(-0.2, 0.2, 4800), track_id="quiet")
        rendered = {t.id: render_track(t, SETTINGS) for t in (loud, quiet)}
        rms = {k: np.sqrt((b.left**2).mean()) for k, b in rendered.items()}
        _, factor = mixdown([loud, loud, quiet], SETTINGS)
        scaled = {k: np.sqrt(((b.left * factor) ** 2).mean()) for k, b in rendered.items()}
        assert scaled["loud"] / scaled["quiet"] == pytest.approx(
            rms["loud"] / rms["quiet"], rel=1e-6)


@dataclass
class FakeProject:
    tracks: list
    source_media: str = "video.mp4"
    id: str = "p1"


class TestWavRoundtrip:
    def test_decode_matches_16bit(self, tmp_path):
        rng = np.random.default_rng(9)
        buf = StereoBuffer(left=rng.uniform(-0.9, 0.9, 4800),
                           right=rng.uniform(-0.9, 0.9, 4800), sample_rate=48000)
        path = write_wav(buf, tmp_path / "x.wav")
        back = read_wav_stereo(path)
        assert back.sample_rate == 48000
        assert np.allclose(back.left, buf.left, atol=1.0 / 32767)

    def test_wav_format(self, tmp_path):
        buf = StereoBuffer(left=np.zeros(100), right=np.zeros(100), sample_rate=48000)
        path = write_wav(buf, tmp_path / "x.wav")
        with wave.open(str(path), "rb") as wf:
            assert wf.getnchannels() == 2
            assert wf.getsampwidth() == 2
            assert wf.getframerate() == 48000


class TestExport:
    def test_individual_files(self, tmp_path):
        tracks = [make_track(np.full(4800, 0.2), track_id=f"t{i}") for i in range(3)]
        paths = export(FakeProject(tracks), "individual", SETTINGS, tmp_path)
        assert len(paths) == 3
        sizes = {read_wav_stereo(p).left.size for p in paths}
        assert len(sizes) == 1

    def test_combined_matches_mixdown(self, tmp_path):
        tracks = [make_track(np.full(4800, 0.3), track_id=f"t{i}") for i in range(2)]
        paths = export(FakeProject(tracks), "combined", SETTINGS, tmp_path)
        assert len(paths) == 1
        decoded = read_wav_stereo(paths[0])
        mix, _ = mixdown(tracks, SETTINGS)
        quantized = np.clip(np.round(mix.left * 32767), -32768, 32767) / 32767
        assert np.array_equal(decoded.left, quantized)

    def test_final_without_muxer(self, tmp_path):
        tracks = [make_track(np.full(480, 0.2))]
        with pytest.raises(MuxerMissingError):
            export(FakeProject(tracks), "final", SETTINGS, tmp_path,
                   muxer_command=("definitely-not-a-binary", "{video}", "{audio}", "{output}"))
        # combined still exportable afterwards
        assert export(FakeProject(tracks), "combined", SETTINGS, tmp_path)

    def test_unknown_mode(self, tmp_path):
        with pytest.raises(ValueError):
            export(FakeProject([make_track(np.full(480, 0.2))]), "nope", SETTINGS, tmp_path)

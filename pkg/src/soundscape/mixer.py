"""Deterministic numeric mixing core: dB/pan math, automation rendering,
multitrack summation with global peak normalization, and WAV/file export."""

from __future__ import annotations

import shutil
import subprocess
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .adapters.types import AudioClip
from .soundgen import AudioTrack


class ExportError(Exception):
    pass


class MuxerMissingError(ExportError):
    """The external muxer binary for `final` export is not installed."""


@dataclass(frozen=True)
class MixSettings:
    output_sample_rate: int = 48000
    normalization_ceiling: float = 0.99

    def __post_init__(self):
        if self.output_sample_rate <= 0:
            raise ValueError("output_sample_rate must be positive")
        if not 0.0 < self.normalization_ceiling <= 1.0:
            raise ValueError("normalization_ceiling must be in (0, 1]")


@dataclass(frozen=True)
class StereoBuffer:
    left: np.ndarray
    right: np.ndarray
    sample_rate: int

    def __post_init__(self):
        object.__setattr__(self, "left", np.asarray(self.left, dtype=np.float64))
        object.__setattr__(self, "right", np.asarray(self.right, dtype=np.float64))
        if self.left.size != self.right.size:
            raise ValueError("left and right channels must be equal length")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")

    @property
    def duration(self) -> float:
        return self.left.size / self.sample_rate


def db_to_amplitude(gain_db: float) -> float:
    return float(10.0 ** (gain_db / 20.0))


def apply_pan(sample, pan):
    """Constant-power pan: theta = (pan+1)*pi/4; left = cos, right = sin."""
    theta = (np.asarray(pan, dtype=np.float64) + 1.0) * np.pi / 4.0
    return sample * np.cos(theta), sample * np.sin(theta)


def _resample_linear(samples: np.ndarray, src_rate: int, dst_rate: int) -> np.ndarray:
    if src_rate == dst_rate or samples.size == 0:
        return samples.copy()
    n_out = round(samples.size * dst_rate / src_rate)
    src_t = np.arange(samples.size) / src_rate
    dst_t = np.arange(n_out) / dst_rate
    return np.interp(dst_t, src_t, samples)


def _interp_keyframes(keyframes, times: np.ndarray) -> np.ndarray:
    kf_t = np.asarray([t for t, _ in keyframes], dtype=np.float64)
    kf_v = np.asarray([v for _, v in keyframes], dtype=np.float64)
    return np.interp(times, kf_t, kf_v)  # constant extrapolation outside


def render_track(track: AudioTrack, settings: MixSettings) -> StereoBuffer:
    """Resample the mono clip, apply interpolated gain/pan automation, pan to stereo."""
    if track.clip.samples.size == 0:
        raise ValueError("track clip is empty")
    if not track.gain_automation or not track.pan_automation:
        raise ValueError("track needs at least one gain and one pan keyframe")
    mono = _resample_linear(track.clip.samples, track.clip.sample_rate, settings.output_sample_rate)
    times = np.arange(mono.size) / settings.output_sample_rate
    gain_db = _interp_keyframes(track.gain_automation, times) + track.user_gain_offset_db
    pan = _interp_keyframes(track.pan_automation, times)
    shaped = mono * 10.0 ** (gain_db / 20.0)
    left, right = apply_pan(shaped, pan)
    return StereoBuffer(left=left, right=right, sample_rate=settings.output_sample_rate)


def mixdown(tracks: list[AudioTrack], settings: MixSettings) -> tuple[StereoBuffer, float]:
    """Sum rendered tracks (zero-padded to the longest) and peak-normalize globally.

    Returns the stereo mix and the normalization factor applied (1.0 when the
    sum already fits under the ceiling).
    """
    if not tracks:
        raise ValueError("mixdown requires at least one track")
    rendered = [render_track(t, settings) for t in tracks]
    n = max(b.left.size for b in rendered)
    left = np.zeros(n)
    right = np.zeros(n)
    for buf in rendered:
        left[: buf.left.size] += buf.left
        right[: buf.right.size] += buf.right
    peak = max(np.abs(left).max(initial=0.0), np.abs(right).max(initial=0.0))
    factor = 1.0
    if peak > settings.normalization_ceiling:
        factor = settings.normalization_ceiling / peak
        left *= factor
        right *= factor
    return StereoBuffer(left=left, right=right, sample_rate=settings.output_sample_rate), factor


def write_wav(buffer: StereoBuffer, path: str | Path) -> Path:
    """16-bit PCM little-endian stereo WAV."""
    path = Path(path)
    interleaved = np.empty(buffer.left.size * 2, dtype="<i2")
    interleaved[0::2] = _quantize16(buffer.left)
    interleaved[1::2] = _quantize16(buffer.right)
    with wave.open(str(path), "wb") as wf:
        wf.setnchannels(2)
        wf.setsampwidth(2)
        wf.setframerate(buffer.sample_rate)
        wf.writeframes(interleaved.tobytes())
    return path


def _quantize16(samples: np.ndarray) -> np.ndarray:
    return np.clip(np.round(samples * 32767.0), -32768, 32767).astype("<i2")


def read_wav_stereo(path: str | Path) -> StereoBuffer:
    with wave.open(str(path), "rb") as wf:
        rate = wf.getframerate()
        channels = wf.getnchannels()
        raw = wf.readframes(wf.getnframes())
    pcm = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32767.0
    if channels == 2:
        return StereoBuffer(left=pcm[0::2], right=pcm[1::2], sample_rate=rate)
    return StereoBuffer(left=pcm, right=pcm.copy(), sample_rate=rate)


def export(
    project,
    which: str,
    settings: MixSettings,
    out_dir: str | Path,
    muxer_command: tuple[str, ...] = (),
) -> list[Path]:
    """Write export artifacts: per-track stems, the combined mix, or the muxed video."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if which == "individual":
        paths = []
        for track in project.tracks:
            buf = render_track(track, settings)
            paths.append(write_wav(buf, out_dir / f"track_{track.id}.wav"))
        return paths
    if which == "combined":
        mix, _ = mixdown(project.tracks, settings)
        return [write_wav(mix, out_dir / "combined.wav")]
    if which == "final":
        mix, _ = mixdown(project.tracks, settings)
        audio_path = write_wav(mix, out_dir / "combined.wav")
        output_path = out_dir / "final.mp4"
        if not muxer_command:
            raise MuxerMissingError("no muxer command configured")
        binary = muxer_command[0]
        if shutil.which(binary) is None:
            raise MuxerMissingError(f"muxer binary {binary!r} not found on PATH")
        args = [
            part.format(video=str(project.source_media), audio=str(audio_path), output=str(output_path))
            for part in muxer_command
        ]
        result = subprocess.run(args, capture_output=True, text=True)
        if result.returncode != 0:
            raise ExportError(f"muxer failed ({result.returncode}): {result.stderr[-500:]}")
        return [output_path]
    raise ValueError(f"unknown export mode {which!r}")

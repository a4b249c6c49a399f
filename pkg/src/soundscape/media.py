"""Source-media loading: video, still images, audio files, and JSON scene descriptors.

A scene descriptor is a small JSON file standing in for real footage during
offline runs: it pins the media fingerprint (the key stub manifests are keyed
by), the duration, and optionally a sidecar WAV for the audio layers.
"""

from __future__ import annotations

import hashlib
import json
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .adapters.types import AudioClip, Frame


class MediaError(Exception):
    """Media file missing, undecodable, or malformed."""


@dataclass
class Media:
    key: str
    duration: float
    path: Path
    audio: AudioClip | None = None
    _frame_source: object = None  # cv2.VideoCapture for video, ndarray for stills

    def frame_at(self, t: float) -> Frame:
        if isinstance(self._frame_source, np.ndarray):
            return Frame(image=self._frame_source, time=t, media_key=self.key)
        if self._frame_source is not None:
            return self._read_video_frame(t)
        # descriptor media: deterministic non-uniform pattern seeded by key
        return Frame(image=_pattern_image(self.key), time=t, media_key=self.key)

    def _read_video_frame(self, t: float) -> Frame:
        import cv2

        cap = self._frame_source
        cap.set(cv2.CAP_PROP_POS_MSEC, t * 1000.0)
        ok, bgr = cap.read()
        if not ok:
            raise MediaError(f"cannot decode frame at {t:.2f}s from {self.path}")
        return Frame(image=cv2.cvtColor(bgr, cv2.COLOR_BGR2RGB), time=t, media_key=self.key)


def _pattern_image(key: str, size: tuple[int, int] = (72, 128)) -> np.ndarray:
    seed = int.from_bytes(hashlib.sha256(key.encode("utf-8")).digest()[:4], "big")
    rng = np.random.default_rng(seed)
    h, w = size
    gradient = np.linspace(0, 255, w, dtype=np.uint8)[None, :].repeat(h, axis=0)
    noise = rng.integers(0, 32, size=(h, w), dtype=np.uint8)
    channel = np.clip(gradient.astype(np.int32) + noise, 0, 255).astype(np.uint8)
    return np.stack([channel] * 3, axis=-1)


def read_wav(path: str | Path) -> AudioClip:
    with wave.open(str(path), "rb") as wf:
        rate = wf.getframerate()
        n_channels = wf.getnchannels()
        width = wf.getsampwidth()
        raw = wf.readframes(wf.getnframes())
    if width != 2:
        raise MediaError(f"only 16-bit PCM WAV supported, got {8 * width}-bit: {path}")
    pcm = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    if n_channels > 1:
        pcm = pcm.reshape(-1, n_channels).mean(axis=1)
    return AudioClip(samples=np.clip(pcm, -1.0, 1.0), sample_rate=rate)


def load_media(path: str | Path, still_image_duration: float = 5.0) -> Media:
    path = Path(path)
    if not path.exists():
        raise MediaError(f"media file not found: {path}")
    suffix = path.suffix.lower()
    key = path.stem

    if suffix == ".json":
        return _load_descriptor(path)
    if suffix == ".wav":
        clip = read_wav(path)
        return Media(key=key, duration=clip.duration, path=path, audio=clip,
                     _frame_source=np.zeros((72, 128, 3), dtype=np.uint8))
    if suffix in (".png", ".jpg", ".jpeg", ".bmp"):
        import cv2

        bgr = cv2.imread(str(path))
        if bgr is None:
            raise MediaError(f"cannot decode image: {path}")
        rgb = cv2.cvtColor(bgr, cv2.COLOR_BGR2RGB)
        return Media(key=key, duration=still_image_duration, path=path, _frame_source=rgb)
    if suffix in (".mp4", ".mov", ".avi", ".mkv", ".webm"):
        import cv2

        cap = cv2.VideoCapture(str(path))
        if not cap.isOpened():
            raise MediaError(f"cannot open video: {path}")
        fps = cap.get(cv2.CAP_PROP_FPS) or 30.0
        frames = cap.get(cv2.CAP_PROP_FRAME_COUNT)
        duration = frames / fps if fps > 0 else 0.0
        if duration <= 0:
            raise MediaError(f"video has no decodable duration: {path}")
        return Media(key=key, duration=duration, path=path, _frame_source=cap)
    raise MediaError(f"unsupported media type: {path}")


def _load_descriptor(path: Path) -> Media:
    try:
        spec = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MediaError(f"malformed scene descriptor {path}: {exc}") from exc
    if not isinstance(spec, dict) or "duration" not in spec:
        raise MediaError(f"scene descriptor {path} must be an object with a 'duration' field")
    duration = float(spec["duration"])
    if duration <= 0:
        raise MediaError(f"scene descriptor {path} has non-positive duration")
    key = spec.get("key", path.stem.removesuffix(".scene"))
    audio = None
    if spec.get("audio"):
        audio = read_wav(path.parent / spec["audio"])
    return Media(key=key, duration=duration, path=path, audio=audio)

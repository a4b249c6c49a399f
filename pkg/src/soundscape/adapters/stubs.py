"""Deterministic manifest-driven stand-ins for every external model.

A manifest is a JSON document mapping media fingerprints (the media key a
Frame carries) to canned outputs, plus canned LLM completions matched by
substring. Stubs are stateless pure functions of (inputs, manifest), so the
whole pipeline is desk-testable offline and bit-reproducible.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .base import AdapterSet
from .errors import AdapterUnavailableError, RateLimitError
from .types import ActivationMap, AudioClip, DetectedObject, Frame, OcrResult, SoundTag, Transcript

STUB_SAMPLE_RATE = 32000

FALLBACK_SOUNDS = (
    "Distant hum of activity",
    "Soft ambient noise",
    "Faint rustling",
    "Low murmur in the background",
    "Air moving gently",
)

PRESENCE_POSITIVE_PREFIX = "a photo containing "
PRESENCE_NEGATIVE_PREFIX = "a photo without "


def load_manifest(path: str | Path) -> dict:
    manifest = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(manifest, dict):
        raise ValueError(f"stub manifest {path} must be a JSON object")
    return manifest


def _seed_from(text: str) -> int:
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "big")


class StubAdapterSet(AdapterSet):
    """Manifest-driven adapter set; see module docstring for the schema."""

    def __init__(self, manifest: dict | None = None, confidence_threshold: float = 0.5):
        self.manifest = manifest or {}
        self.confidence_threshold = confidence_threshold

    # manifest access

    def _media_entry(self, key: str) -> dict:
        return self.manifest.get("media", {}).get(key, {})

    def _check_available(self, op: str) -> None:
        if op in self.manifest.get("unavailable", []):
            raise AdapterUnavailableError(op, "forced unavailable by manifest")

    # vision

    def detect_objects(self, frame: Frame) -> list[DetectedObject]:
        self._check_available("detect_objects")
        if frame.blank_image:
            return []
        entry = self._media_entry(frame.media_key)
        objects = [
            DetectedObject(label=o["label"], confidence=float(o["confidence"]))
            for o in entry.get("objects", [])
        ]
        objects = [o for o in objects if o.confidence >= self.confidence_threshold]
        return sorted(objects, key=lambda o: (-o.confidence, o.label))

    def classify(self, frame: Frame, categories: list[str]) -> tuple[str, float]:
        self._check_available("classify")
        self._require_categories(categories)
        entry = self._media_entry(frame.media_key)

        presence = self._match_presence(entry, categories)
        if presence is not None:
            return presence

        classes = entry.get("classes", {})
        scores = entry.get("class_scores", {})
        known = {str(v) for v in classes.values()}
        for category in categories:
            if category in known:
                return category, float(scores.get(category, 0.9))
        return categories[0], 1.0 / len(categories)

    def _match_presence(self, entry: dict, categories: list[str]) -> tuple[str, float] | None:
        # binary "is the subject visible" query from the localization layer
        positive = next((c for c in categories if c.startswith(PRESENCE_POSITIVE_PREFIX)), None)
        negative = next((c for c in categories if c.startswith(PRESENCE_NEGATIVE_PREFIX)), None)
        if positive is None or negative is None:
            return None
        subject = positive[len(PRESENCE_POSITIVE_PREFIX):]
        score = float(entry.get("present_subjects", {}).get(subject.lower(), 0.0))
        if score >= 0.5:
            return positive, score
        return negative, 1.0 - score

    def extract_text(self, frame: Frame) -> OcrResult:
        self._check_available("extract_text")
        if frame.blank_image:
            return OcrResult(text="", confidence=1.0)
        entry = self._media_entry(frame.media_key)
        text = entry.get("ocr_text", "")
        return OcrResult(text=text, confidence=float(entry.get("ocr_confidence", 1.0 if text else 1.0)))

    def caption(self, frame: Frame) -> str:
        self._check_available("caption")
        if frame.blank_image:
            return ""
        return self._media_entry(frame.media_key).get("caption", "")

    # audio analysis

    def transcribe(self, audio: AudioClip) -> Transcript:
        self._check_available("transcribe")
        entry = self._audio_entry(audio)
        return Transcript(text=entry.get("transcript", ""))

    def tag_sounds(self, audio: AudioClip) -> list[SoundTag]:
        self._check_available("tag_sounds")
        entry = self._audio_entry(audio)
        tags = [SoundTag(label=t["label"], confidence=float(t["confidence"])) for t in entry.get("sound_tags", [])]
        return sorted(tags, key=lambda t: (-t.confidence, t.label))

    def _audio_entry(self, audio: AudioClip) -> dict:
        if audio.samples.size == 0 or np.abs(audio.samples).max() == 0:
            return {}  # silence: nothing to hear
        key = getattr(audio, "media_key", "") or self.manifest.get("audio_key", "")
        if not key:
            # single-media manifests: fall back to the sole media entry
            media = self.manifest.get("media", {})
            if len(media) == 1:
                return next(iter(media.values()))
        return self._media_entry(key)

    # language model

    def complete(self, prompt: str) -> str:
        self._check_available("complete")
        self._require_prompt(prompt)
        if self.manifest.get("rate_limited"):
            raise RateLimitError("complete", "forced by manifest")
        for rule in self.manifest.get("completions", []):
            needles = rule.get("contains", [])
            if isinstance(needles, str):
                needles = [needles]
            if all(n in prompt for n in needles):
                return rule["response"]
        # deterministic fallback: a numbered list seeded by the prompt hash
        rng = np.random.default_rng(_seed_from(prompt))
        picks = rng.permutation(len(FALLBACK_SOUNDS))[:5]
        return "\n".join(f"{i + 1}. {FALLBACK_SOUNDS[p]}" for i, p in enumerate(picks))

    # text-to-audio

    def generate_audio(self, description: str, duration: float) -> AudioClip:
        self._check_available("generate_audio")
        self._require_generation_args(description, duration)
        rng = np.random.default_rng(_seed_from(description))
        n = round(duration * STUB_SAMPLE_RATE)
        t = np.arange(n) / STUB_SAMPLE_RATE
        freq = 110.0 * (1 + rng.integers(0, 16))
        tone = 0.3 * np.sin(2 * np.pi * freq * t)
        noise = rng.uniform(-1, 1, n)
        # crude band-limit: short moving average keeps the noise smooth
        kernel = np.ones(9) / 9.0
        noise = np.convolve(noise, kernel, mode="same")
        samples = np.clip(tone + 0.3 * noise, -1.0, 1.0)
        return AudioClip(samples=samples, sample_rate=STUB_SAMPLE_RATE)

    # localization

    def localize(self, frame: Frame, subject: str) -> ActivationMap:
        self._check_available("localize")
        entry = self._media_entry(frame.media_key)
        spec = entry.get("activations", {}).get(subject.lower())
        if spec is None:
            return ActivationMap(width=16, height=9, values=(0.0,) * 144, frame_time=frame.time)
        w, h = spec.get("grid", [16, 9])
        grid = np.zeros((h, w))
        x0, y0, x1, y1 = spec["rect"]  # fractional [left, top, right, bottom]
        c0, r0 = int(round(x0 * w)), int(round(y0 * h))
        c1, r1 = max(c0 + 1, int(round(x1 * w))), max(r0 + 1, int(round(y1 * h)))
        grid[r0:r1, c0:c1] = 1.0
        return ActivationMap.from_array(grid, frame_time=frame.time)


class UnavailableAdapterSet(AdapterSet):
    """Every operation raises AdapterUnavailableError; used to exercise error paths."""

    def __getattribute__(self, name):
        if name in (
            "detect_objects",
            "classify",
            "extract_text",
            "transcribe",
            "tag_sounds",
            "caption",
            "complete",
            "generate_audio",
            "localize",
        ):
            def _fail(*args, **kwargs):
                raise AdapterUnavailableError(name, "backend unreachable")

            return _fail
        return super().__getattribute__(name)

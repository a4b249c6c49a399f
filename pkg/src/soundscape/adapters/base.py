"""Adapter contract: the nine external-model operations the pipeline consumes.

Implementations must be safe to call concurrently from independent pipeline
layers. Both the manifest-driven stubs and the HTTP-backed adapters satisfy
the same postconditions; the shared contract tests run against both.
"""

from __future__ import annotations

import time

from .errors import ContractViolationError, RateLimitError
from .types import ActivationMap, AudioClip, DetectedObject, Frame, OcrResult, SoundTag, Transcript


class AdapterSet:
    """Interface for every external model the pipeline touches."""

    def detect_objects(self, frame: Frame) -> list[DetectedObject]:
        """Objects above the confidence threshold, sorted descending by confidence."""
        raise NotImplementedError

    def classify(self, frame: Frame, categories: list[str]) -> tuple[str, float]:
        """Zero-shot classification; returns the winning category and its normalized score."""
        raise NotImplementedError

    def extract_text(self, frame: Frame) -> OcrResult:
        """OCR over visible signs; empty text means no signs."""
        raise NotImplementedError

    def transcribe(self, audio: AudioClip) -> Transcript:
        """Speech-to-text; empty text for silence."""
        raise NotImplementedError

    def tag_sounds(self, audio: AudioClip) -> list[SoundTag]:
        """Audio event tags, sorted descending by confidence."""
        raise NotImplementedError

    def caption(self, frame: Frame) -> str:
        """Sentence-long descriptive caption of the frame."""
        raise NotImplementedError

    def complete(self, prompt: str) -> str:
        """LLM completion of a text prompt."""
        raise NotImplementedError

    def generate_audio(self, description: str, duration: float) -> AudioClip:
        """Text-to-audio clip of the requested duration (within one sample)."""
        raise NotImplementedError

    def localize(self, frame: Frame, subject: str) -> ActivationMap:
        """Spatial activation map for the subject; all-zero when absent."""
        raise NotImplementedError

    # shared precondition checks

    @staticmethod
    def _require_categories(categories: list[str]) -> None:
        if len(categories) < 2:
            raise ContractViolationError("classify requires at least two categories")

    @staticmethod
    def _require_prompt(prompt: str) -> None:
        if not prompt:
            raise ContractViolationError("prompt must be non-empty")

    def complete_with_retry(self, prompt: str, retries: int = 3, backoff: float = 0.0) -> str:
        """Retry complete() on rate limits; other adapter errors fail fast."""
        attempt = 0
        while True:
            try:
                return self.complete(prompt)
            except RateLimitError:
                attempt += 1
                if attempt > retries:
                    raise
                if backoff:
                    time.sleep(backoff * attempt)

    @staticmethod
    def _require_generation_args(description: str, duration: float) -> None:
        if not description:
            raise ContractViolationError("description must be non-empty")
        if duration <= 0:
            raise ContractViolationError("duration must be positive")

"""Domain types shared by every adapter implementation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _check_fraction(value: float, name: str) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class DetectedObject:
    label: str
    confidence: float

    def __post_init__(self):
        if not self.label:
            raise ValueError("label must be non-empty")
        _check_fraction(self.confidence, "confidence")


@dataclass(frozen=True)
class OcrResult:
    text: str
    confidence: float

    def __post_init__(self):
        _check_fraction(self.confidence, "confidence")


@dataclass(frozen=True)
class Transcript:
    text: str


@dataclass(frozen=True)
class SoundTag:
    label: str
    confidence: float

    def __post_init__(self):
        if not self.label:
            raise ValueError("label must be non-empty")
        _check_fraction(self.confidence, "confidence")


@dataclass(frozen=True)
class ActivationMap:
    """Spatial activation grid over one frame, row-major, normalized to max 1.0."""

    width: int
    height: int
    values: tuple[float, ...]
    frame_time: float = 0.0

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("grid dimensions must be positive")
        if self.width * self.height != len(self.values):
            raise ValueError("values length must equal width*height")
        if any(v < 0 for v in self.values):
            raise ValueError("activations must be non-negative")
        if self.frame_time < 0:
            raise ValueError("frame_time must be >= 0")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64).reshape(self.height, self.width)

    @classmethod
    def from_array(cls, grid: np.ndarray, frame_time: float = 0.0) -> "ActivationMap":
        grid = np.asarray(grid, dtype=np.float64)
        peak = grid.max() if grid.size else 0.0
        if peak > 0:
            grid = grid / peak
        h, w = grid.shape
        return cls(width=w, height=h, values=tuple(grid.reshape(-1).tolist()), frame_time=frame_time)


@dataclass(frozen=True)
class AudioClip:
    """Mono audio, float samples in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=np.float64))
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")
        if self.samples.ndim != 1:
            raise ValueError("samples must be mono (1-D)")
        if self.samples.size and (np.abs(self.samples) > 1.0 + 1e-12).any():
            raise ValueError("samples must lie in [-1, 1]")

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate

    def __eq__(self, other):
        if not isinstance(other, AudioClip):
            return NotImplemented
        return self.sample_rate == other.sample_rate and np.array_equal(self.samples, other.samples)


@dataclass(frozen=True)
class Frame:
    """One sampled video frame plus the media fingerprint stubs key on."""

    image: np.ndarray
    time: float
    media_key: str = ""

    blank_image: bool = field(init=False, default=False)

    def __post_init__(self):
        img = np.asarray(self.image)
        object.__setattr__(self, "image", img)
        object.__setattr__(self, "blank_image", bool(img.size == 0 or img.std() == 0))

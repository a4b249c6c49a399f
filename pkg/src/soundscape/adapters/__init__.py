from .errors import (
    AdapterError,
    AdapterUnavailableError,
    ContractViolationError,
    RateLimitError,
)
from .types import (
    ActivationMap,
    AudioClip,
    DetectedObject,
    Frame,
    OcrResult,
    SoundTag,
    Transcript,
)
from .base import AdapterSet
from .stubs import StubAdapterSet, UnavailableAdapterSet, load_manifest
from .remote import RemoteAdapterSet

__all__ = [
    "ActivationMap",
    "AdapterError",
    "AdapterSet",
    "AdapterUnavailableError",
    "AudioClip",
    "ContractViolationError",
    "DetectedObject",
    "Frame",
    "OcrResult",
    "RateLimitError",
    "RemoteAdapterSet",
    "SoundTag",
    "StubAdapterSet",
    "Transcript",
    "UnavailableAdapterSet",
    "load_manifest",
]

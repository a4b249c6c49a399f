import json
import shutil
import wave
from pathlib import Path

import numpy as np
import pytest

from soundscape.adapters import StubAdapterSet, load_manifest
from soundscape.config import PipelineConfig
from soundscape.media import load_media

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def config():
    return PipelineConfig()


@pytest.fixture
def cafe_manifest():
    return load_manifest(FIXTURES / "cafe_manifest.json")


@pytest.fixture
def park_manifest():
    return load_manifest(FIXTURES / "park_manifest.json")


@pytest.fixture
def cafe_stub(cafe_manifest):
    return StubAdapterSet(cafe_manifest)


@pytest.fixture
def park_stub(park_manifest):
    return StubAdapterSet(park_manifest)


@pytest.fixture
def cafe_media():
    return load_media(FIXTURES / "cafe.scene.json")


@pytest.fixture
def park_media():
    return load_media(FIXTURES / "park.scene.json")


@pytest.fixture
def cafe_media_with_audio(tmp_path):
    """Cafe fixture plus a non-silent sidecar WAV so the audio layers run."""
    wav_path = tmp_path / "cafe_audio.wav"
    sr = 16000
    t = np.arange(sr * 2) / sr
    samples = (0.3 * np.sin(2 * np.pi * 440 * t) * 32767).astype("<i2")
    with wave.open(str(wav_path), "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(sr)
        wf.writeframes(samples.tobytes())
    descriptor = tmp_path / "cafe.scene.json"
    descriptor.write_text(json.dumps({"key": "cafe", "duration": 10.0, "audio": "cafe_audio.wav"}))
    return load_media(descriptor)


@pytest.fixture
def scene_sound_lists():
    return json.loads((FIXTURES / "scene_sound_lists.json").read_text(encoding="utf-8"))


@pytest.fixture
def fixtures_dir():
    return FIXTURES

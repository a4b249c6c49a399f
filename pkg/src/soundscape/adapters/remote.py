"""HTTP-backed adapters for real model backends.

The vision/audio models sit behind a simple JSON inference service; the LLM
speaks an OpenAI-style chat-completions endpoint. All endpoints and the model
name come from PipelineConfig; the API key comes from the environment only.
"""

from __future__ import annotations

import base64

import httpx
import numpy as np

from ..config import PipelineConfig
from .base import AdapterSet
from .errors import AdapterUnavailableError, RateLimitError
from .types import ActivationMap, AudioClip, DetectedObject, Frame, OcrResult, SoundTag, Transcript


def _encode_image(frame: Frame) -> dict:
    img = np.ascontiguousarray(frame.image, dtype=np.uint8)
    return {
        "shape": list(img.shape),
        "data": base64.b64encode(img.tobytes()).decode("ascii"),
        "time": frame.time,
    }


def _encode_audio(audio: AudioClip) -> dict:
    pcm = np.clip(audio.samples * 32767.0, -32768, 32767).astype("<i2")
    return {
        "sample_rate": audio.sample_rate,
        "pcm16": base64.b64encode(pcm.tobytes()).decode("ascii"),
    }


class RemoteAdapterSet(AdapterSet):
    def __init__(self, config: PipelineConfig, client: httpx.Client | None = None):
        self.config = config
        self.client = client or httpx.Client(timeout=120.0)

    def _post(self, base_url: str, path: str, payload: dict, adapter: str) -> dict:
        if not base_url:
            raise AdapterUnavailableError(adapter, "no backend URL configured")
        try:
            response = self.client.post(base_url.rstrip("/") + path, json=payload)
        except httpx.HTTPError as exc:
            raise AdapterUnavailableError(adapter, str(exc)) from exc
        if response.status_code == 429:
            raise RateLimitError(adapter, response.text)
        if response.status_code >= 400:
            raise AdapterUnavailableError(adapter, f"HTTP {response.status_code}: {response.text}")
        return response.json()

    # vision backend

    def detect_objects(self, frame: Frame) -> list[DetectedObject]:
        data = self._post(
            self.config.vision_backend_url, "/detect", {"image": _encode_image(frame)}, "detect_objects"
        )
        objects = [DetectedObject(o["label"], float(o["confidence"])) for o in data["objects"]]
        objects = [o for o in objects if o.confidence >= self.config.object_confidence_threshold]
        return sorted(objects, key=lambda o: (-o.confidence, o.label))

    def classify(self, frame: Frame, categories: list[str]) -> tuple[str, float]:
        self._require_categories(categories)
        data = self._post(
            self.config.vision_backend_url,
            "/classify",
            {"image": _encode_image(frame), "categories": categories},
            "classify",
        )
        best, score = data["category"], float(data["score"])
        if best not in categories:
            raise AdapterUnavailableError("classify", f"backend returned unknown category {best!r}")
        return best, min(max(score, 0.0), 1.0)

    def extract_text(self, frame: Frame) -> OcrResult:
        data = self._post(self.config.vision_backend_url, "/ocr", {"image": _encode_image(frame)}, "extract_text")
        return OcrResult(text=data.get("text", ""), confidence=float(data.get("confidence", 1.0)))

    def caption(self, frame: Frame) -> str:
        data = self._post(self.config.vision_backend_url, "/caption", {"image": _encode_image(frame)}, "caption")
        return data.get("caption", "")

    def localize(self, frame: Frame, subject: str) -> ActivationMap:
        data = self._post(
            self.config.vision_backend_url,
            "/localize",
            {"image": _encode_image(frame), "subject": subject},
            "localize",
        )
        grid = np.asarray(data["values"], dtype=np.float64).reshape(data["height"], data["width"])
        return ActivationMap.from_array(grid, frame_time=frame.time)

    # audio backend

    def transcribe(self, audio: AudioClip) -> Transcript:
        data = self._post(self.config.audio_backend_url, "/transcribe", {"audio": _encode_audio(audio)}, "transcribe")
        return Transcript(text=data.get("text", ""))

    def tag_sounds(self, audio: AudioClip) -> list[SoundTag]:
        data = self._post(self.config.audio_backend_url, "/tag", {"audio": _encode_audio(audio)}, "tag_sounds")
        tags = [SoundTag(t["label"], float(t["confidence"])) for t in data["tags"]]
        tags = [t for t in tags if t.confidence >= self.config.sound_tag_threshold]
        return sorted(tags, key=lambda t: (-t.confidence, t.label))

    def generate_audio(self, description: str, duration: float) -> AudioClip:
        self._require_generation_args(description, duration)
        data = self._post(
            self.config.audio_backend_url,
            "/generate",
            {"description": description, "duration": duration},
            "generate_audio",
        )
        pcm = np.frombuffer(base64.b64decode(data["pcm16"]), dtype="<i2")
        return AudioClip(samples=pcm.astype(np.float64) / 32768.0, sample_rate=int(data["sample_rate"]))

    # language model (OpenAI-style chat completions)

    def complete(self, prompt: str) -> str:
        self._require_prompt(prompt)
        if not self.config.llm_backend_url:
            raise AdapterUnavailableError("complete", "no LLM backend URL configured")
        headers = {}
        if self.config.llm_api_key:
            headers["Authorization"] = f"Bearer {self.config.llm_api_key}"
        try:
            response = self.client.post(
                self.config.llm_backend_url.rstrip("/") + "/chat/completions",
                json={
                    "model": self.config.llm_model,
                    "messages": [{"role": "user", "content": prompt}],
                },
                headers=headers,
            )
        except httpx.HTTPError as exc:
            raise AdapterUnavailableError("complete", str(exc)) from exc
        if response.status_code == 429:
            raise RateLimitError("complete", response.text)
        if response.status_code >= 400:
            raise AdapterUnavailableError("complete", f"HTTP {response.status_code}: {response.text}")
        return response.json()["choices"][0]["message"]["content"]

"""Pipeline configuration: defaults, config-file loading, environment overrides.

API keys are only ever read from the environment, never from project files.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

TIME_CATEGORIES = ("morning", "afternoon", "evening", "night")

WEATHER_CATEGORIES = (
    "sunny",
    "foggy",
    "windy",
    "cloudy",
    "thunderstorm",
    "rainy",
    "drizzle",
    "snowy",
    "blizzard",
)

DEFAULT_INDOOR_LOCATIONS = (
    "cafe",
    "library",
    "kitchen",
    "living room",
    "office",
    "train station",
    "airport terminal",
    "concert hall",
    "classroom",
    "supermarket",
)

DEFAULT_OUTDOOR_LOCATIONS = (
    "park",
    "street",
    "beach",
    "forest",
    "mountain",
    "playground",
    "parking lot",
    "field",
    "city square",
    "rainforest",
)

# Wordings for the LLM prompts that the pipeline sends beyond the scene
# context itself.  Kept in config so deployments can tune them.
BRAINSTORM_QUESTION = "What do I hear?"
BRAINSTORM_INSTRUCTION = (
    "List exactly {count} distinct sounds I would hear in this scene. "
    "Answer with a plain numbered list, one short sound description per line, "
    "with no extra commentary."
)
EMOJI_INSTRUCTION = (
    "Respond with the single emoji that is semantically closest to this sound: {text}"
)
SIMILAR_INSTRUCTION = (
    "Suggest two additional sounds that are similar to: {text}. "
    "Answer with a plain numbered list of exactly two short sound descriptions."
)

ENV_LLM_API_KEY = "SOUNDSCAPE_LLM_API_KEY"


@dataclass
class PipelineConfig:
    """Tunable knobs for the whole pipeline."""

    # scene understanding
    frame_sample_fps: float = 1.0
    object_confidence_threshold: float = 0.5
    sound_tag_threshold: float = 0.5
    layer3_frames: str = "first"  # "first" or "majority"
    indoor_locations: tuple[str, ...] = DEFAULT_INDOOR_LOCATIONS
    outdoor_locations: tuple[str, ...] = DEFAULT_OUTDOOR_LOCATIONS
    still_image_duration: float = 5.0

    # ideation
    suggestion_count: int = 5
    fallback_emoji: str = "\U0001f50a"  # 🔊

    # generation / localization
    generator_clip_seconds: float = 5.0
    crossfade_seconds: float = 0.05
    presence_threshold: float = 0.5
    foreground_baseline_db: float = 0.0
    background_attenuation_db: float = 7.0
    activation_binarize_fraction: float = 0.5
    area_reference_fraction: float = 0.25
    area_gain_db_per_doubling: float = 6.0
    area_gain_min_db: float = -12.0
    area_gain_max_db: float = 3.0

    # mixing / export
    output_sample_rate: int = 48000
    normalization_ceiling: float = 0.99
    muxer_command: tuple[str, ...] = (
        "ffmpeg",
        "-y",
        "-i",
        "{video}",
        "-i",
        "{audio}",
        "-c:v",
        "copy",
        "-map",
        "0:v:0",
        "-map",
        "1:a:0",
        "{output}",
    )

    # adapter backends (non-stub mode)
    vision_backend_url: str = ""
    audio_backend_url: str = ""
    llm_backend_url: str = ""
    llm_model: str = ""
    llm_api_key: str = field(default="", repr=False)
    llm_max_retries: int = 3

    @classmethod
    def load(cls, path: str | Path | None = None) -> "PipelineConfig":
        """Build a config from defaults, an optional JSON file, and env overrides."""
        data: dict = {}
        if path is not None:
            raw = json.loads(Path(path).read_text())
            if not isinstance(raw, dict):
                raise ValueError(f"config file {path} must contain a JSON object")
            known = {f.name for f in fields(cls)}
            unknown = set(raw) - known
            if unknown:
                raise ValueError(f"unknown config keys: {sorted(unknown)}")
            data.update(raw)
        cfg = cls(**data)
        key = os.environ.get(ENV_LLM_API_KEY)
        if key:
            cfg.llm_api_key = key
        return cfg

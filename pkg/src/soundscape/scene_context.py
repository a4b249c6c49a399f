"""Three-layer scene understanding and prompt assembly.

Layer 1 collects visible objects across sampled frames. Layer 2 gathers
environment cues (sign text, speech, ambient sounds). Layer 3 classifies the
general context: indoor/outdoor, location, and (outdoors only) time of day and
weather, plus a descriptive caption. The result is rendered into a fixed
sentence template that seeds the sound-ideation prompt.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .adapters.base import AdapterSet
from .adapters.errors import AdapterError
from .adapters.types import AudioClip
from .config import PipelineConfig, TIME_CATEGORIES, WEATHER_CATEGORIES
from .media import Media


class SceneAnalysisError(Exception):
    """An adapter failed during scene understanding; carries the failing layer."""

    def __init__(self, layer: str, cause: AdapterError):
        self.layer = layer
        self.cause = cause
        super().__init__(f"scene understanding failed in layer '{layer}': {cause}")


@dataclass(frozen=True)
class FramePlan:
    sample_rate_fps: float
    frame_times: tuple[float, ...]


@dataclass(frozen=True)
class SceneContext:
    objects: tuple[str, ...]
    setting: str  # "indoors" | "outdoors"
    location: str
    time_of_day: str | None = None
    weather: str | None = None
    ambient_sounds: tuple[str, ...] = ()
    sign_text: str = ""
    speech_transcript: str = ""
    caption: str = ""

    def __post_init__(self):
        if self.setting not in ("indoors", "outdoors"):
            raise ValueError(f"setting must be 'indoors' or 'outdoors', got {self.setting!r}")
        outdoors = self.setting == "outdoors"
        if outdoors != (self.time_of_day is not None) or outdoors != (self.weather is not None):
            raise ValueError("time_of_day and weather must be present iff setting is outdoors")
        if self.time_of_day is not None and self.time_of_day not in TIME_CATEGORIES:
            raise ValueError(f"unknown time_of_day {self.time_of_day!r}")
        if self.weather is not None and self.weather not in WEATHER_CATEGORIES:
            raise ValueError(f"unknown weather {self.weather!r}")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("objects list contains duplicates")

    def to_dict(self) -> dict:
        return {
            "objects": list(self.objects),
            "setting": self.setting,
            "location": self.location,
            "time_of_day": self.time_of_day,
            "weather": self.weather,
            "ambient_sounds": list(self.ambient_sounds),
            "sign_text": self.sign_text,
            "speech_transcript": self.speech_transcript,
            "caption": self.caption,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SceneContext":
        return cls(
            objects=tuple(data["objects"]),
            setting=data["setting"],
            location=data["location"],
            time_of_day=data.get("time_of_day"),
            weather=data.get("weather"),
            ambient_sounds=tuple(data.get("ambient_sounds", ())),
            sign_text=data.get("sign_text", ""),
            speech_transcript=data.get("speech_transcript", ""),
            caption=data.get("caption", ""),
        )


def plan_frames(media_duration: float, fps: float) -> FramePlan:
    """Frame times at 1/fps spacing from 0, always at least one frame."""
    if media_duration <= 0:
        raise ValueError("media_duration must be positive")
    if fps <= 0:
        raise ValueError("fps must be positive")
    step = 1.0 / fps
    times = []
    t = 0.0
    while t < media_duration:
        times.append(round(t, 9))
        t += step
    if not times:
        times = [0.0]
    return FramePlan(sample_rate_fps=fps, frame_times=tuple(times))


def build_context(media: Media, adapters: AdapterSet, config: PipelineConfig) -> SceneContext:
    plan = plan_frames(media.duration, config.frame_sample_fps)
    frames = [media.frame_at(t) for t in plan.frame_times]

    # layer 1: visible objects, max confidence per label across frames
    best: dict[str, float] = {}
    try:
        for frame in frames:
            for obj in adapters.detect_objects(frame):
                if obj.confidence >= config.object_confidence_threshold:
                    best[obj.label] = max(best.get(obj.label, 0.0), obj.confidence)
    except AdapterError as exc:
        raise SceneAnalysisError("objects", exc) from exc
    objects = tuple(label for label, _ in sorted(best.items(), key=lambda kv: (-kv[1], kv[0])))

    # layer 2: environment cues
    try:
        seen: list[str] = []
        for frame in frames:
            text = adapters.extract_text(frame).text.strip()
            if text and text not in seen:
                seen.append(text)
        sign_text = ", ".join(seen)
        if media.audio is not None:
            speech = adapters.transcribe(media.audio).text.strip()
            tags = adapters.tag_sounds(media.audio)
            sounds = tuple(dict.fromkeys(t.label for t in tags if t.confidence >= config.sound_tag_threshold))
        else:
            speech, sounds = "", ()
    except AdapterError as exc:
        raise SceneAnalysisError("environment", exc) from exc

    # layer 3: general context from the first frame (or per-frame majority)
    try:
        layer3_frames = frames if config.layer3_frames == "majority" else frames[:1]
        setting = _vote(adapters, layer3_frames, ["indoors", "outdoors"])
        locations = config.indoor_locations if setting == "indoors" else config.outdoor_locations
        location = _vote(adapters, layer3_frames, list(locations))
        time_of_day = weather = None
        if setting == "outdoors":
            time_of_day = _vote(adapters, layer3_frames, list(TIME_CATEGORIES))
            weather = _vote(adapters, layer3_frames, list(WEATHER_CATEGORIES))
        caption = adapters.caption(frames[0]).strip()
    except AdapterError as exc:
        raise SceneAnalysisError("context", exc) from exc

    return SceneContext(
        objects=objects,
        setting=setting,
        location=location,
        time_of_day=time_of_day,
        weather=weather,
        ambient_sounds=sounds,
        sign_text=sign_text,
        speech_transcript=speech,
        caption=caption,
    )


def _vote(adapters: AdapterSet, frames, categories: list[str]) -> str:
    votes: dict[str, int] = {}
    for frame in frames:
        winner, _ = adapters.classify(frame, categories)
        votes[winner] = votes.get(winner, 0) + 1
    return max(votes.items(), key=lambda kv: (kv[1], -categories.index(kv[0])))[0]


def assemble_prompt(ctx: SceneContext) -> str:
    """Render the fixed sentence template; sentences with empty slots are omitted whole."""
    sentences = []
    if ctx.objects:
        sentences.append(f"I see {', '.join(ctx.objects)}.")
    if ctx.location:
        sentences.append(f"I am at {ctx.location}.")
    if ctx.time_of_day:
        sentences.append(f"The time is {ctx.time_of_day}.")
    if ctx.weather:
        sentences.append(f"The weather is {ctx.weather}.")
    if ctx.ambient_sounds:
        sentences.append(f"There are sounds of {', '.join(ctx.ambient_sounds)}.")
    if ctx.sign_text:
        sentences.append(f"There are signs writing {ctx.sign_text}.")
    if ctx.speech_transcript:
        sentences.append(f"There are people saying {ctx.speech_transcript}.")
    if ctx.caption:
        sentences.append(f"Overall, I see {ctx.caption}.")
    return " ".join(sentences)

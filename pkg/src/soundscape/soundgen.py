"""Turn selected suggestions into audio tracks sized to the source media."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from .adapters.base import AdapterSet
from .adapters.types import AudioClip
from .config import PipelineConfig
from .ideation import SoundSuggestion

logger = logging.getLogger(__name__)

CATEGORY_FOREGROUND = "foreground"
CATEGORY_BACKGROUND = "background"
CATEGORY_UNKNOWN = "unknown"


@dataclass(frozen=True)
class AudioTrack:
    id: str
    suggestion_id: str
    clip: AudioClip
    duration_target: float
    category: str = CATEGORY_UNKNOWN
    gain_automation: tuple[tuple[float, float], ...] = ((0.0, 0.0),)  # (time s, gain dB)
    pan_automation: tuple[tuple[float, float], ...] = ((0.0, 0.0),)  # (time s, pan [-1,1])
    user_gain_offset_db: float = 0.0

    def __post_init__(self):
        for name, keyframes in (("gain", self.gain_automation), ("pan", self.pan_automation)):
            times = [t for t, _ in keyframes]
            if times != sorted(times):
                raise ValueError(f"{name} keyframe times must be non-decreasing")
            if times and (times[0] < 0 or times[-1] > self.duration_target + 1e-9):
                raise ValueError(f"{name} keyframes must lie within [0, duration_target]")
        if any(not -1.0 <= p <= 1.0 for _, p in self.pan_automation):
            raise ValueError("pan values must lie in [-1, 1]")


def tile_clip(clip: AudioClip, target: float, crossfade: float) -> AudioClip:
    """Cover `target` seconds by repeating the clip with equal-power crossfades.

    Crossfade gains are cos^2/sin^2 so identical overlapped material sums to
    the original amplitude; output is clamped (with a warning) if arbitrary
    material still exceeds full scale.
    """
    if clip.samples.size == 0:
        raise ValueError("clip must be non-empty")
    if crossfade < 0 or crossfade >= clip.duration:
        raise ValueError("crossfade must satisfy 0 <= crossfade < clip duration")
    sr = clip.sample_rate
    n_target = round(target * sr)
    source = clip.samples
    if source.size >= n_target:
        return AudioClip(samples=source[:n_target].copy(), sample_rate=sr)

    n_fade = round(crossfade * sr)
    theta = np.linspace(0.0, np.pi / 2, n_fade, endpoint=False) if n_fade else np.empty(0)
    fade_out = np.cos(theta) ** 2
    fade_in = np.sin(theta) ** 2

    out = source.copy()
    while out.size < n_target:
        joined = np.empty(out.size + source.size - n_fade)
        joined[: out.size - n_fade] = out[: out.size - n_fade]
        joined[out.size - n_fade : out.size] = (
            out[out.size - n_fade :] * fade_out + source[:n_fade] * fade_in
        )
        joined[out.size :] = source[n_fade:]
        out = joined
    out = out[:n_target]
    peak = np.abs(out).max() if out.size else 0.0
    if peak > 1.0:
        logger.warning("tiled clip peaked at %.3f; clamping to full scale", peak)
        out = np.clip(out, -1.0, 1.0)
    return AudioClip(samples=out, sample_rate=sr)


def generate_track(
    suggestion: SoundSuggestion,
    target_duration: float,
    gen_adapter: AdapterSet,
    config: PipelineConfig,
    track_id: str | None = None,
) -> AudioTrack:
    """Generate audio for one selected suggestion and size it to the media."""
    if not suggestion.selected:
        raise ValueError(f"suggestion {suggestion.id} is not selected")
    if target_duration <= 0:
        raise ValueError("target_duration must be positive")
    clip = gen_adapter.generate_audio(suggestion.text, config.generator_clip_seconds)
    clip = tile_clip(clip, target_duration, config.crossfade_seconds)
    return AudioTrack(
        id=track_id or f"t-{suggestion.id}",
        suggestion_id=suggestion.id,
        clip=clip,
        duration_target=target_duration,
        category=CATEGORY_UNKNOWN,
        gain_automation=((0.0, 0.0),),
        pan_automation=((0.0, 0.0),),
        user_gain_offset_db=0.0,
    )


def with_localization(track: AudioTrack, category: str,
                      gain_keyframes, pan_keyframes) -> AudioTrack:
    return replace(
        track,
        category=category,
        gain_automation=tuple((float(t), float(g)) for t, g in gain_keyframes),
        pan_automation=tuple((float(t), float(p)) for t, p in pan_keyframes),
    )

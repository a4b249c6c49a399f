"""Visually informed level and pan prediction.

Each track's sound subject is checked for on-screen presence. Absent subjects
become background sounds, attenuated by a fixed amount below the foreground
baseline. Present subjects get per-frame gain from the activation-map area
(larger apparent size reads as closer, hence louder) and pan from the
activation-weighted horizontal centroid.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass

import numpy as np

from .adapters.base import AdapterSet
from .adapters.errors import AdapterError
from .adapters.types import ActivationMap, Frame
from .config import PipelineConfig
from .soundgen import CATEGORY_BACKGROUND, CATEGORY_FOREGROUND

logger = logging.getLogger(__name__)

PRESENCE_POSITIVE = "a photo containing {subject}"
PRESENCE_NEGATIVE = "a photo without {subject}"


@dataclass(frozen=True)
class SubjectPresence:
    subject: str
    present: bool
    score: float


@dataclass(frozen=True)
class LocalizationResult:
    category: str
    gain_keyframes: tuple[tuple[float, float], ...]
    pan_keyframes: tuple[tuple[float, float], ...]
    area_fractions: tuple[float, ...] = ()


_ARTICLES = {"a", "an", "the"}
_PREPOSITIONS = {
    "over", "on", "in", "at", "through", "under", "by", "near",
    "from", "with", "into", "onto", "underfoot", "nearby", "around",
}
_CONJUNCTIONS = {"and", "or"}


def extract_subject(description: str, nlp_adapter=None) -> str:
    """Head noun phrase of a sound description, with graceful fallbacks."""
    if not description.strip():
        raise ValueError("description must be non-empty")
    if nlp_adapter is not None:
        subject = nlp_adapter(description)
        if subject:
            return subject
    return _heuristic_subject(description)


def _heuristic_subject(description: str) -> str:
    text = description.strip().rstrip(".!?")
    words = re.findall(r"[\w'-]+", text)
    if not words:
        return description.strip()

    lowered = [w.lower() for w in words]

    # "X of Y ..." names its source Y; keep Y up to the next preposition
    if "of" in lowered:
        tail = words[lowered.index("of") + 1 :]
        tail = _strip_leading_articles(tail)
        tail = _cut_at(tail, _PREPOSITIONS | _CONJUNCTIONS)
        tail = _trim_gerunds(tail)
        if tail:
            return " ".join(tail)

    head = _cut_at(words, _PREPOSITIONS | _CONJUNCTIONS)
    head = _strip_leading_articles(head)
    head = _trim_gerunds(head)
    return " ".join(head) if head else description.strip()


def _trim_gerunds(words: list[str]) -> list[str]:
    # "Birds chirping" keeps the noun; "Rustling leaves" keeps what rustles
    if not words:
        return words
    if len(words) > 1 and words[0].lower().endswith("ing"):
        return words[1:]
    for i, word in enumerate(words[1:], start=1):
        if word.lower().endswith("ing"):
            return words[:i]
    return words


def _strip_leading_articles(words: list[str]) -> list[str]:
    while words and words[0].lower() in _ARTICLES:
        words = words[1:]
    return words


def _cut_at(words: list[str], stops: set[str]) -> list[str]:
    for i, word in enumerate(words):
        if i > 0 and word.lower() in stops:
            return words[:i]
    return list(words)


def check_presence(
    subject: str, frames: list[Frame], matcher_adapter: AdapterSet,
    threshold: float = 0.5,
) -> SubjectPresence:
    """Max over frames of the binary visual-match score for the subject."""
    if not frames:
        raise ValueError("at least one frame required")
    positive = PRESENCE_POSITIVE.format(subject=subject.lower())
    negative = PRESENCE_NEGATIVE.format(subject=subject.lower())
    score = 0.0
    for frame in frames:
        winner, s = matcher_adapter.classify(frame, [positive, negative])
        match_score = s if winner == positive else 1.0 - s
        score = max(score, match_score)
    return SubjectPresence(subject=subject, present=score >= threshold, score=score)


def classify_category(presence: SubjectPresence) -> str:
    return CATEGORY_FOREGROUND if presence.present else CATEGORY_BACKGROUND


def background_gain(foreground_baseline_db: float = 0.0, attenuation_db: float = 7.0) -> float:
    """Default level for sounds whose subject is not on screen."""
    return foreground_baseline_db - attenuation_db


def area_to_gain(area_fraction: float, config: PipelineConfig | None = None) -> float:
    """Gain offset from apparent subject size: dB per area doubling, clamped."""
    cfg = config or PipelineConfig()
    if not 0.0 <= area_fraction <= 1.0:
        raise ValueError(f"area_fraction must be in [0, 1], got {area_fraction}")
    if area_fraction == 0.0:
        return cfg.area_gain_min_db
    offset = cfg.area_gain_db_per_doubling * math.log2(area_fraction / cfg.area_reference_fraction)
    return min(max(offset, cfg.area_gain_min_db), cfg.area_gain_max_db)


def activation_area_fraction(amap: ActivationMap, binarize_fraction: float = 0.5) -> float:
    """Fraction of cells at or above `binarize_fraction` of the map's peak."""
    grid = amap.as_array()
    peak = grid.max()
    if peak <= 0:
        return 0.0
    return float((grid >= binarize_fraction * peak).sum() / grid.size)


def centroid_to_pan(amap: ActivationMap) -> float:
    """Stereo pan from the activation-weighted horizontal centroid."""
    grid = amap.as_array()
    total = grid.sum()
    if total <= 0:
        return 0.0
    x_centers = (np.arange(amap.width) + 0.5) / amap.width
    centroid = float((grid.sum(axis=0) * x_centers).sum() / total)
    return 2.0 * centroid - 1.0


def _moving_average_3(values: list[float]) -> list[float]:
    if len(values) < 3:
        return list(values)
    arr = np.asarray(values, dtype=np.float64)
    out = arr.copy()
    out[1:-1] = (arr[:-2] + arr[1:-1] + arr[2:]) / 3.0
    out[0] = (arr[0] + arr[1]) / 2.0
    out[-1] = (arr[-2] + arr[-1]) / 2.0
    return out.tolist()


def localize_track(
    description: str,
    frames: list[Frame],
    adapters: AdapterSet,
    config: PipelineConfig,
    nlp_adapter=None,
) -> LocalizationResult:
    """Full localization pass for one track's sound description."""
    subject = extract_subject(description, nlp_adapter)
    try:
        presence = check_presence(subject, frames, adapters, config.presence_threshold)
        category = classify_category(presence)
        if category == CATEGORY_BACKGROUND:
            return _background_result(config)
        gains, pans, areas = [], [], []
        for frame in frames:
            amap = adapters.localize(frame, subject)
            area = activation_area_fraction(amap, config.activation_binarize_fraction)
            areas.append(area)
            gains.append(config.foreground_baseline_db + area_to_gain(area, config))
            pans.append(centroid_to_pan(amap))
    except AdapterError as exc:
        logger.warning("localization failed for %r; falling back to background: %s", description, exc)
        return _background_result(config)
    times = [f.time for f in frames]
    gains = _moving_average_3(gains)
    pans = _moving_average_3(pans)
    return LocalizationResult(
        category=CATEGORY_FOREGROUND,
        gain_keyframes=tuple(zip(times, gains)),
        pan_keyframes=tuple(zip(times, pans)),
        area_fractions=tuple(areas),
    )


def _background_result(config: PipelineConfig) -> LocalizationResult:
    level = background_gain(config.foreground_baseline_db, config.background_attenuation_db)
    return LocalizationResult(
        category=CATEGORY_BACKGROUND,
        gain_keyframes=((0.0, level),),
        pan_keyframes=((0.0, 0.0),),
        area_fractions=(),
    )

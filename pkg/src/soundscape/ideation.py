"""Sound ideation: brainstorm suggestions from the scene prompt, assign emoji,
expand with similar sounds, and accept custom descriptions."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, replace

from .adapters.base import AdapterSet
from .adapters.errors import AdapterError
from .config import (
    BRAINSTORM_INSTRUCTION,
    BRAINSTORM_QUESTION,
    EMOJI_INSTRUCTION,
    PipelineConfig,
    SIMILAR_INSTRUCTION,
)

logger = logging.getLogger(__name__)


class SuggestionParseError(Exception):
    """LLM completion could not be parsed into a sound list; carries the raw text."""

    def __init__(self, raw: str):
        self.raw = raw
        super().__init__(f"no sound suggestions found in completion: {raw!r}")


class SimilarExpansionError(Exception):
    """The similar-sounds expansion produced fewer than two usable suggestions."""


@dataclass(frozen=True)
class SoundSuggestion:
    id: str
    text: str
    emoji: str
    origin: str  # "llm", "custom", or "similar-of:<id>"
    selected: bool = False
    duplicate: bool = False

    def __post_init__(self):
        if not self.text:
            raise ValueError("suggestion text must be non-empty")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "emoji": self.emoji,
            "origin": self.origin,
            "selected": self.selected,
            "duplicate": self.duplicate,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SoundSuggestion":
        return cls(
            id=data["id"],
            text=data["text"],
            emoji=data["emoji"],
            origin=data["origin"],
            selected=bool(data.get("selected", False)),
            duplicate=bool(data.get("duplicate", False)),
        )


_NUMBERED = re.compile(r"^\s*\d+[\.\)]\s*(.+)$")
_BULLETED = re.compile(r"^\s*[-*•]\s*(.+)$")

# an emoji grapheme: emoji codepoint plus any modifiers / ZWJ continuations
_EMOJI = re.compile(
    "["
    "\U0001f300-\U0001faff"
    "\U00002600-\U000027bf"
    "\U0001f1e6-\U0001f1ff"
    "\U00002b00-\U00002bff"
    "\U0001f000-\U0001f2ff"
    "]"
    "(?:[\U0001f3fb-\U0001f3ff️]|‍[\U0001f300-\U0001faff\U00002600-\U000027bf])*"
)


def parse_sound_list(completion: str) -> list[str]:
    """Extract sound descriptions from numbered, bulleted, or comma-separated lists."""
    items: list[str] = []
    for line in completion.splitlines():
        match = _NUMBERED.match(line) or _BULLETED.match(line)
        if match:
            items.append(match.group(1))
    if not items:
        stripped = completion.strip()
        if "," in stripped and "\n" not in stripped:
            items = stripped.split(",")
    cleaned: list[str] = []
    seen: set[str] = set()
    for item in items:
        text = item.strip().rstrip(".").strip()
        if text and text.lower() not in seen:
            seen.add(text.lower())
            cleaned.append(text)
    return cleaned


def extract_emoji(text: str) -> str | None:
    match = _EMOJI.search(text)
    return match.group(0) if match else None


def assign_emoji(suggestion_text: str, llm: AdapterSet, config: PipelineConfig) -> str:
    """Ask the LLM for the closest emoji; degrade to the fallback, never fail."""
    if not suggestion_text:
        raise ValueError("suggestion text must be non-empty")
    try:
        completion = llm.complete_with_retry(
            EMOJI_INSTRUCTION.format(text=suggestion_text), retries=config.llm_max_retries
        )
    except AdapterError as exc:
        logger.warning("emoji assignment failed for %r: %s", suggestion_text, exc)
        return config.fallback_emoji
    return extract_emoji(completion) or config.fallback_emoji


def brainstorm(
    scene_prompt: str,
    llm: AdapterSet,
    config: PipelineConfig,
    id_factory=None,
) -> list[SoundSuggestion]:
    """Ask 'What do I hear?' over the scene prompt and parse the suggestion list."""
    if not scene_prompt:
        raise ValueError("scene prompt must be non-empty")
    prompt = (
        f"{scene_prompt}\n\n{BRAINSTORM_QUESTION} "
        + BRAINSTORM_INSTRUCTION.format(count=config.suggestion_count)
    )
    completion = llm.complete_with_retry(prompt, retries=config.llm_max_retries)
    texts = parse_sound_list(completion)
    if not texts:
        raise SuggestionParseError(completion)
    new_id = id_factory or _sequential_ids()
    return [
        SoundSuggestion(
            id=new_id(),
            text=text,
            emoji=assign_emoji(text, llm, config),
            origin="llm",
            selected=False,
        )
        for text in texts
    ]


def expand_similar(
    base: SoundSuggestion,
    llm: AdapterSet,
    config: PipelineConfig,
    id_factory=None,
) -> list[SoundSuggestion]:
    """Exactly two new suggestions similar to the base, or a typed error."""
    completion = llm.complete_with_retry(
        SIMILAR_INSTRUCTION.format(text=base.text), retries=config.llm_max_retries
    )
    texts = parse_sound_list(completion)
    texts = [t for t in texts if t.lower() != base.text.lower()]
    if len(texts) < 2:
        raise SimilarExpansionError(
            f"expected 2 similar sounds for {base.text!r}, got {len(texts)}: {texts}"
        )
    new_id = id_factory or _sequential_ids()
    return [
        SoundSuggestion(
            id=new_id(),
            text=text,
            emoji=assign_emoji(text, llm, config),
            origin=f"similar-of:{base.id}",
            selected=False,
        )
        for text in texts[:2]
    ]


def add_custom(
    text: str,
    llm: AdapterSet,
    config: PipelineConfig,
    existing: list[SoundSuggestion] | None = None,
    id_factory=None,
) -> SoundSuggestion:
    """Designer-typed suggestion; selected immediately, duplicates allowed but flagged."""
    text = text.strip()
    if not text:
        raise ValueError("custom suggestion text must be non-empty")
    duplicate = any(s.text.lower() == text.lower() for s in existing or [])
    new_id = id_factory or _sequential_ids()
    return SoundSuggestion(
        id=new_id(),
        text=text,
        emoji=assign_emoji(text, llm, config),
        origin="custom",
        selected=True,
        duplicate=duplicate,
    )


def _sequential_ids(prefix: str = "s"):
    counter = iter(range(1, 10**9))

    def next_id() -> str:
        return f"{prefix}{next(counter)}"

    return next_id


def set_selected(suggestion: SoundSuggestion, selected: bool) -> SoundSuggestion:
    return replace(suggestion, selected=selected)

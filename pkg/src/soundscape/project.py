"""Mix-session state: the MixProject document, its invariants, pipeline
orchestration over one project, and JSON + sidecar persistence.

A project saves as one JSON document with byte-stable field ordering; raw
audio lives next to it as content-addressed .npy sidecars referenced by
sha256, so regenerated identical clips deduplicate for free.
"""

from __future__ import annotations

import hashlib
import json
import logging
import uuid
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .adapters.base import AdapterSet
from .adapters.errors import AdapterError
from .adapters.types import AudioClip
from .config import PipelineConfig
from .ideation import SoundSuggestion, add_custom, brainstorm, expand_similar
from .localization import localize_track
from .media import Media, MediaError, load_media
from .mixer import MixSettings
from .scene_context import SceneContext, assemble_prompt, build_context, plan_frames
from .soundgen import AudioTrack, generate_track, with_localization

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class ProjectError(Exception):
    pass


class NotFoundError(ProjectError):
    pass


class SchemaError(ProjectError):
    """Project file malformed or violating the document schema."""


class IntegrityError(ProjectError):
    """A referenced audio sidecar is missing or corrupt."""


@dataclass
class TrackError:
    suggestion_id: str
    message: str


@dataclass
class MixProject:
    id: str
    source_media: str
    media_duration: float
    media_key: str = ""
    context: SceneContext | None = None
    prompt: str = ""
    suggestions: list[SoundSuggestion] = field(default_factory=list)
    tracks: list[AudioTrack] = field(default_factory=list)
    track_errors: list[TrackError] = field(default_factory=list)
    settings: MixSettings = field(default_factory=MixSettings)
    revision: int = 1
    _id_counter: int = 0

    def bump(self) -> None:
        self.revision += 1

    def next_suggestion_id(self) -> str:
        self._id_counter += 1
        return f"s{self._id_counter}"

    def suggestion(self, suggestion_id: str) -> SoundSuggestion:
        for s in self.suggestions:
            if s.id == suggestion_id:
                return s
        raise NotFoundError(f"no suggestion {suggestion_id!r}")

    def track(self, track_id: str) -> AudioTrack:
        for t in self.tracks:
            if t.id == track_id:
                return t
        raise NotFoundError(f"no track {track_id!r}")

    def check_invariants(self) -> None:
        ids = [s.id for s in self.suggestions]
        if len(set(ids)) != len(ids):
            raise ProjectError("duplicate suggestion ids")
        selected = {s.id for s in self.suggestions if s.selected}
        for t in self.tracks:
            if t.suggestion_id not in selected:
                raise ProjectError(f"track {t.id} references non-selected suggestion {t.suggestion_id}")


# pipeline orchestration

def create_project(media_path: str | Path, config: PipelineConfig,
                   project_id: str | None = None) -> MixProject:
    media = load_media(media_path, config.still_image_duration)
    return MixProject(
        id=project_id or uuid.uuid4().hex[:12],
        source_media=str(media_path),
        media_duration=media.duration,
        media_key=media.key,
    )


def analyze(project: MixProject, adapters: AdapterSet, config: PipelineConfig,
            media: Media | None = None) -> MixProject:
    """Scene understanding + brainstorming. Replaces prior suggestions that have no tracks."""
    media = media or load_media(project.source_media, config.still_image_duration)
    context = build_context(media, adapters, config)
    prompt = assemble_prompt(context)
    suggestions = brainstorm(prompt, adapters, config, id_factory=project.next_suggestion_id)
    tracked = {t.suggestion_id for t in project.tracks}
    kept = [s for s in project.suggestions if s.id in tracked]
    project.context = context
    project.prompt = prompt
    project.suggestions = kept + suggestions
    project.bump()
    project.check_invariants()
    return project


def select_suggestion(project: MixProject, suggestion_id: str, selected: bool) -> MixProject:
    suggestion = project.suggestion(suggestion_id)
    if not selected and any(t.suggestion_id == suggestion_id for t in project.tracks):
        raise ProjectError(f"suggestion {suggestion_id} has a generated track; remove the track first")
    project.suggestions = [
        replace(s, selected=selected) if s.id == suggestion_id else s for s in project.suggestions
    ]
    project.bump()
    return project


def add_custom_suggestion(project: MixProject, text: str, adapters: AdapterSet,
                          config: PipelineConfig) -> SoundSuggestion:
    suggestion = add_custom(text, adapters, config, existing=project.suggestions,
                            id_factory=project.next_suggestion_id)
    project.suggestions.append(suggestion)
    project.bump()
    return suggestion


def expand_suggestion(project: MixProject, suggestion_id: str, adapters: AdapterSet,
                      config: PipelineConfig) -> list[SoundSuggestion]:
    base = project.suggestion(suggestion_id)
    new = expand_similar(base, adapters, config, id_factory=project.next_suggestion_id)
    project.suggestions.extend(new)
    project.bump()
    return new


def generate_selected(project: MixProject, adapters: AdapterSet, config: PipelineConfig,
                      media: Media | None = None) -> MixProject:
    """Generate and localize a track for every selected suggestion lacking one.

    Per-track failures are recorded and do not abort the rest of the batch.
    """
    media = media or load_media(project.source_media, config.still_image_duration)
    plan = plan_frames(media.duration, config.frame_sample_fps)
    frames = [media.frame_at(t) for t in plan.frame_times]
    have = {t.suggestion_id for t in project.tracks}
    project.track_errors = [e for e in project.track_errors if e.suggestion_id in have]
    for suggestion in project.suggestions:
        if not suggestion.selected or suggestion.id in have:
            continue
        try:
            track = generate_track(suggestion, media.duration, adapters, config,
                                   track_id=f"t-{suggestion.id}")
        except AdapterError as exc:
            logger.warning("track generation failed for %r: %s", suggestion.text, exc)
            project.track_errors.append(TrackError(suggestion_id=suggestion.id, message=str(exc)))
            continue
        result = localize_track(suggestion.text, frames, adapters, config)
        track = with_localization(track, result.category, result.gain_keyframes, result.pan_keyframes)
        project.tracks.append(track)
    project.bump()
    project.check_invariants()
    return project


def set_track_gain(project: MixProject, track_id: str, offset_db: float) -> MixProject:
    track = project.track(track_id)
    project.tracks = [
        replace(t, user_gain_offset_db=float(offset_db)) if t.id == track_id else t
        for t in project.tracks
    ]
    project.bump()
    return project


# persistence

def _clip_bytes(clip: AudioClip) -> bytes:
    return np.asarray(clip.samples, dtype="<f8").tobytes()


def _clip_hash(clip: AudioClip) -> str:
    return hashlib.sha256(_clip_bytes(clip)).hexdigest()


def _sidecar_dir(path: Path) -> Path:
    return path.parent / (path.stem + "_audio")


def save(project: MixProject, path: str | Path) -> Path:
    path = Path(path)
    sidecars = _sidecar_dir(path)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "id": project.id,
        "source_media": project.source_media,
        "media_duration": project.media_duration,
        "media_key": project.media_key,
        "context": project.context.to_dict() if project.context else None,
        "prompt": project.prompt,
        "suggestions": [s.to_dict() for s in project.suggestions],
        "tracks": [_track_to_dict(t, sidecars) for t in project.tracks],
        "track_errors": [{"suggestion_id": e.suggestion_id, "message": e.message}
                         for e in project.track_errors],
        "settings": {
            "output_sample_rate": project.settings.output_sample_rate,
            "normalization_ceiling": project.settings.normalization_ceiling,
        },
        "revision": project.revision,
        "id_counter": project._id_counter,
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                    encoding="utf-8")
    return path


def _track_to_dict(track: AudioTrack, sidecars: Path) -> dict:
    digest = _clip_hash(track.clip)
    sidecars.mkdir(parents=True, exist_ok=True)
    sidecar = sidecars / f"{digest}.f64"
    if not sidecar.exists():
        sidecar.write_bytes(_clip_bytes(track.clip))
    return {
        "id": track.id,
        "suggestion_id": track.suggestion_id,
        "clip": {"hash": digest, "sample_rate": track.clip.sample_rate,
                 "samples": track.clip.samples.size},
        "duration_target": track.duration_target,
        "category": track.category,
        "gain_automation": [[t, g] for t, g in track.gain_automation],
        "pan_automation": [[t, p] for t, p in track.pan_automation],
        "user_gain_offset_db": track.user_gain_offset_db,
    }


def load(path: str | Path) -> MixProject:
    path = Path(path)
    if not path.exists():
        raise NotFoundError(f"project file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"project file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("project document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {doc.get('schema_version')!r}")
    try:
        context = SceneContext.from_dict(doc["context"]) if doc.get("context") else None
        settings = MixSettings(**doc["settings"])
        suggestions = [SoundSuggestion.from_dict(s) for s in doc["suggestions"]]
        tracks = [_track_from_dict(t, _sidecar_dir(path)) for t in doc["tracks"]]
        project = MixProject(
            id=doc["id"],
            source_media=doc["source_media"],
            media_duration=float(doc["media_duration"]),
            media_key=doc.get("media_key", ""),
            context=context,
            prompt=doc.get("prompt", ""),
            suggestions=suggestions,
            tracks=tracks,
            track_errors=[TrackError(**e) for e in doc.get("track_errors", [])],
            settings=settings,
            revision=int(doc["revision"]),
            _id_counter=int(doc.get("id_counter", 0)),
        )
    except IntegrityError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed project document: {exc}") from exc
    project.check_invariants()
    return project


def _track_from_dict(data: dict, sidecars: Path) -> AudioTrack:
    ref = data["clip"]
    sidecar = sidecars / f"{ref['hash']}.f64"
    if not sidecar.exists():
        raise IntegrityError(f"missing audio sidecar {ref['hash']}")
    samples = np.frombuffer(sidecar.read_bytes(), dtype="<f8")
    if hashlib.sha256(sidecar.read_bytes()).hexdigest() != ref["hash"]:
        raise IntegrityError(f"audio sidecar {ref['hash']} content mismatch")
    clip = AudioClip(samples=samples, sample_rate=int(ref["sample_rate"]))
    return AudioTrack(
        id=data["id"],
        suggestion_id=data["suggestion_id"],
        clip=clip,
        duration_target=float(data["duration_target"]),
        category=data["category"],
        gain_automation=tuple((float(t), float(g)) for t, g in data["gain_automation"]),
        pan_automation=tuple((float(t), float(p)) for t, p in data["pan_automation"]),
        user_gain_offset_db=float(data["user_gain_offset_db"]),
    )

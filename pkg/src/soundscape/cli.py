"""Headless front door: analyze media, render exports, or run the whole pipeline.

Exit codes: 0 success, 1 pipeline error, 2 usage/input error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import project as proj
from .adapters import AdapterError, RemoteAdapterSet, StubAdapterSet, load_manifest
from .config import PipelineConfig
from .ideation import SimilarExpansionError, SuggestionParseError
from .media import MediaError, load_media
from .mixer import ExportError, MixSettings, export, mixdown, write_wav
from .scene_context import SceneAnalysisError

PIPELINE_ERRORS = (
    AdapterError,
    SceneAnalysisError,
    SuggestionParseError,
    SimilarExpansionError,
    ExportError,
    proj.ProjectError,
)


def _make_adapters(config: PipelineConfig, stub_manifest: str | None):
    if stub_manifest:
        return StubAdapterSet(load_manifest(stub_manifest), config.object_confidence_threshold)
    return RemoteAdapterSet(config)


def _load_config(config_path: str | None) -> PipelineConfig:
    try:
        return PipelineConfig.load(config_path)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"bad config file: {exc}")


@click.group()
def main():
    """Soundscape generation pipeline."""


@main.command()
@click.argument("media_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--stub-manifest", type=click.Path(exists=True, dir_okay=False),
              help="Run every adapter from this fixture manifest (offline mode).")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def analyze(media_path, stub_manifest, config_path, as_json):
    """Scene understanding + sound ideation for MEDIA_PATH."""
    config = _load_config(config_path)
    adapters = _make_adapters(config, stub_manifest)
    try:
        media = load_media(media_path, config.still_image_duration)
        project = proj.create_project(media_path, config, project_id=_stable_id(media_path))
        proj.analyze(project, adapters, config, media=media)
    except MediaError as exc:
        raise click.UsageError(str(exc))
    except PIPELINE_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if as_json:
        click.echo(json.dumps({
            "context": project.context.to_dict(),
            "prompt": project.prompt,
            "suggestions": [s.to_dict() for s in project.suggestions],
        }, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        click.echo(json.dumps(project.context.to_dict(), indent=2, sort_keys=True, ensure_ascii=False))
        click.echo(f"\nPrompt: {project.prompt}\n")
        for s in project.suggestions:
            click.echo(f"  {s.emoji}  {s.text}")


@main.command()
@click.argument("project_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--which", type=click.Choice(["final", "combined", "individual"]), default="combined")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
def render(project_path, which, out_dir, config_path):
    """Export WAVs (or the muxed final video) from a saved project."""
    config = _load_config(config_path)
    try:
        project = proj.load(project_path)
    except proj.SchemaError as exc:
        raise click.UsageError(f"bad project file: {exc}")
    except proj.ProjectError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    try:
        paths = export(project, which, project.settings, out_dir,
                       muxer_command=config.muxer_command)
    except PIPELINE_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    for p in paths:
        click.echo(str(p))


@main.command()
@click.argument("media_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--stub-manifest", type=click.Path(exists=True, dir_okay=False))
@click.option("--select", "select_filter",
              help="Comma-separated keywords; only matching suggestions are generated.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
def pipeline(media_path, stub_manifest, select_filter, out_dir, config_path):
    """Non-interactive full run: analyze, select, generate, mix, export."""
    config = _load_config(config_path)
    adapters = _make_adapters(config, stub_manifest)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    created: list[Path] = []
    try:
        media = load_media(media_path, config.still_image_duration)
        project = proj.create_project(media_path, config, project_id=_stable_id(media_path))
        proj.analyze(project, adapters, config, media=media)
        keywords = [k.strip().lower() for k in select_filter.split(",")] if select_filter else None
        for s in list(project.suggestions):
            wanted = keywords is None or any(k in s.text.lower() for k in keywords)
            proj.select_suggestion(project, s.id, wanted)
        proj.generate_selected(project, adapters, config, media=media)
        if project.track_errors and not project.tracks:
            raise proj.ProjectError(
                "all track generations failed: "
                + "; ".join(e.message for e in project.track_errors)
            )
        project_file = out_dir / "project.json"
        proj.save(project, project_file)
        created.append(project_file)
        mix, _ = mixdown(project.tracks, project.settings)
        wav_path = write_wav(mix, out_dir / "combined.wav")
        created.append(wav_path)
    except MediaError as exc:
        raise click.UsageError(str(exc))
    except PIPELINE_ERRORS as exc:
        for p in created:
            p.unlink(missing_ok=True)
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    for p in created:
        click.echo(str(p))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8765, type=int)
@click.option("--stub-manifest", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
def serve(host, port, stub_manifest, config_path):
    """Run the HTTP API the studio UI talks to."""
    import uvicorn

    from .service import create_app

    config = _load_config(config_path)
    app = create_app(config, adapters=_make_adapters(config, stub_manifest))
    uvicorn.run(app, host=host, port=port)


def _stable_id(media_path: str) -> str:
    import hashlib

    return hashlib.sha256(Path(media_path).read_bytes()).hexdigest()[:12]


if __name__ == "__main__":
    main()

"""Shared test helpers: randomized valid projects for persistence tests."""

import numpy as np

import soundscape.project as proj
from soundscape.adapters import AudioClip
from soundscape.ideation import SoundSuggestion
from soundscape.soundgen import AudioTrack


def random_project(rng, idx):
    suggestions = []
    tracks = []
    for i in range(rng.integers(0, 5)):
        selected = bool(rng.integers(0, 2))
        suggestion = SoundSuggestion(
            id=f"s{i}", text=f"sound {i}", emoji="🔊",
            origin=str(rng.choice(["llm", "custom"])), selected=selected)
        suggestions.append(suggestion)
        if selected and rng.integers(0, 2):
            n = int(rng.integers(100, 1000))
            clip = AudioClip(samples=rng.uniform(-1, 1, n), sample_rate=8000)
            tracks.append(AudioTrack(
                id=f"t{i}", suggestion_id=suggestion.id, clip=clip,
                duration_target=n / 8000,
                category=str(rng.choice(["foreground", "background"])),
                gain_automation=((0.0, float(rng.uniform(-12, 3))),),
                pan_automation=((0.0, float(rng.uniform(-1, 1))),),
                user_gain_offset_db=float(rng.uniform(-12, 12)),
            ))
    return proj.MixProject(
        id=f"proj{idx}", source_media=f"media{idx}.mp4",
        media_duration=float(rng.uniform(1, 30)), media_key=f"key{idx}",
        suggestions=suggestions, tracks=tracks,
        revision=int(rng.integers(1, 50)), _id_counter=10,
    )

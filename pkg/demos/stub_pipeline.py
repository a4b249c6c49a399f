"""Run the full offline pipeline on the bundled cafe fixture.

Uses the deterministic stub adapters, so no models, network, or API keys are
involved. Writes project.json and WAV exports to demos/out/.
"""

import pathlib

import soundscape.project as proj
from soundscape.adapters import StubAdapterSet, load_manifest
from soundscape.config import PipelineConfig
from soundscape.mixer import MixSettings, export

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"
OUT = pathlib.Path(__file__).resolve().parent / "out"

config = PipelineConfig()
adapters = StubAdapterSet(load_manifest(FIXTURES / "cafe_manifest.json"))

project = proj.create_project(FIXTURES / "cafe.scene.json", config)
proj.analyze(project, adapters, config)

print(f"scene prompt:\n  {project.prompt}\n")
print("suggestions:")
for suggestion in project.suggestions:
    print(f"  {suggestion.emoji}  {suggestion.text}")

for suggestion in project.suggestions:
    proj.select_suggestion(project, suggestion.id, True)
proj.generate_selected(project, adapters, config)

print("\ntracks:")
for track in project.tracks:
    gains = ", ".join(f"{t:.1f}s→{g:+.1f}dB" for t, g in track.gain_automation[:3])
    print(f"  {track.id} [{track.category}] gain: {gains}")

OUT.mkdir(exist_ok=True)
proj.save(project, OUT / "project.json")
files = export(project, "combined", MixSettings(), OUT)
files += export(project, "individual", MixSettings(), OUT)
print("\nwrote:")
for path in [OUT / "project.json", *files]:
    print(f"  {path.relative_to(ROOT)}")

import type { ApiClient } from "./api";
import type { ProjectSession } from "./session";
import type { ExportMode, ProjectView, Track } from "./types";

export interface MixingConsoleOptions {
  /** Debounce for gain PATCHes while a slider moves. */
  debounceMs?: number;
  sliderMinDb?: number;
  sliderMaxDb?: number;
}

export interface ExportRecord {
  which: ExportMode;
  files: string[];
}

/** A track's predicted default level: its first gain automation keyframe. */
export function predictedGainDb(track: Track): number {
  return track.gain_automation.length > 0 ? track.gain_automation[0][1] : 0;
}

/**
 * Per-track volume sliders plus transport and export controls.
 *
 * Each slider is positioned at the track's predicted gain plus the user's
 * offset, so background tracks sit visibly 7 dB below the foreground
 * baseline. Moving a slider updates optimistically and PATCHes the offset
 * after a debounce; the play button streams the server's combined mixdown;
 * three export buttons cover individual stems, the combined mix, and the
 * final mux.
 */
export class MixingConsole {
  el: HTMLElement;
  audio: HTMLAudioElement;
  readonly exports: ExportRecord[] = [];

  private panel: HTMLElement;
  private exportList: HTMLElement;
  private readonly debounceMs: number;
  private readonly sliderMinDb: number;
  private readonly sliderMaxDb: number;
  private timers = new Map<string, ReturnType<typeof setTimeout>>();
  private pendingOffsets = new Map<string, number>();

  constructor(
    private readonly session: ProjectSession,
    private readonly api: ApiClient,
    options: MixingConsoleOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? 150;
    this.sliderMinDb = options.sliderMinDb ?? -24;
    this.sliderMaxDb = options.sliderMaxDb ?? 12;

    this.el = document.createElement("section");
    this.el.className = "mixing-console";

    this.panel = document.createElement("div");
    this.panel.className = "track-panel";
    this.el.appendChild(this.panel);

    const transport = document.createElement("div");
    transport.className = "transport";
    const play = document.createElement("button");
    play.type = "button";
    play.className = "play-mix";
    play.textContent = "Play mix";
    play.addEventListener("click", () => void this.playMixdown());
    transport.appendChild(play);
    for (const which of ["individual", "combined", "final"] as ExportMode[]) {
      const button = document.createElement("button");
      button.type = "button";
      button.className = `export-${which}`;
      button.textContent = `Export ${which}`;
      button.addEventListener("click", () => void this.export(which));
      transport.appendChild(button);
    }
    this.el.appendChild(transport);

    this.exportList = document.createElement("ul");
    this.exportList.className = "export-artifacts";
    this.el.appendChild(this.exportList);

    this.audio = document.createElement("audio");
    this.el.appendChild(this.audio);

    session.subscribe((project) => this.render(project));
  }

  get sliders(): HTMLInputElement[] {
    return Array.from(
      this.panel.querySelectorAll<HTMLInputElement>("input[type=range]"),
    );
  }

  sliderFor(trackId: string): HTMLInputElement | null {
    return this.panel.querySelector<HTMLInputElement>(
      `input[type=range][data-track-id="${trackId}"]`,
    );
  }

  private render(project: ProjectView): void {
    this.panel.replaceChildren(
      ...project.tracks.map((track) => this.buildRow(project, track)),
    );
  }

  private buildRow(project: ProjectView, track: Track): HTMLElement {
    const row = document.createElement("div");
    row.className = `track-row ${track.category}`;
    row.dataset.trackId = track.id;

    const suggestion = project.suggestions.find(
      (s) => s.id === track.suggestion_id,
    );
    const label = document.createElement("span");
    label.className = "track-label";
    label.textContent = suggestion
      ? `${suggestion.emoji} ${suggestion.text}`
      : track.id;

    const base = predictedGainDb(track);
    const offset = this.pendingOffsets.get(track.id) ?? track.user_gain_offset_db;
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = String(this.sliderMinDb);
    slider.max = String(this.sliderMaxDb);
    slider.step = "0.1";
    slider.value = String(base + offset);
    slider.dataset.trackId = track.id;
    slider.dataset.baseGainDb = String(base);

    const readout = document.createElement("span");
    readout.className = "track-gain-db";
    readout.textContent = `${(base + offset).toFixed(1)} dB`;

    slider.addEventListener("input", () => {
      const position = Number(slider.value);
      readout.textContent = `${position.toFixed(1)} dB`;
      this.scheduleGainPatch(track.id, position - base);
    });

    row.append(label, slider, readout);
    return row;
  }

  /** Optimistic update: remember the offset, PATCH after the debounce. */
  private scheduleGainPatch(trackId: string, offsetDb: number): void {
    this.pendingOffsets.set(trackId, offsetDb);
    const existing = this.timers.get(trackId);
    if (existing !== undefined) clearTimeout(existing);
    this.timers.set(
      trackId,
      setTimeout(() => {
        this.timers.delete(trackId);
        void this.commitGain(trackId);
      }, this.debounceMs),
    );
  }

  private async commitGain(trackId: string): Promise<void> {
    const offsetDb = this.pendingOffsets.get(trackId);
    if (offsetDb === undefined) return;
    const updated = await this.api.setTrackGain(trackId, offsetDb);
    this.pendingOffsets.delete(trackId);
    await this.session.applyOrRefetch(updated);
  }

  /** Streams the server-side mixdown; the server owns all audio math. */
  async playMixdown(): Promise<void> {
    const project = this.session.project;
    if (!project) return;
    const blob = await this.api.fetchMixdown(project.id);
    this.audio.src = URL.createObjectURL(blob);
    try {
      await this.audio.play();
    } catch {
      // autoplay restrictions or headless environment; the src is set either way
    }
  }

  async export(which: ExportMode): Promise<ExportRecord | null> {
    const project = this.session.project;
    if (!project) return null;
    const result = await this.api.exportProject(project.id, which);
    const record: ExportRecord = { which, files: result.files };
    this.exports.push(record);
    const item = document.createElement("li");
    item.className = `export-artifact ${which}`;
    for (const file of record.files) {
      const link = document.createElement("a");
      link.href = file;
      link.download = "";
      link.textContent = file.split("/").pop() ?? file;
      item.appendChild(link);
    }
    this.exportList.appendChild(item);
    return record;
  }
}

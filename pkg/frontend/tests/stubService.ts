/**
 * In-memory stand-in for the soundscape project service.
 *
 * Implements the exact HTTP contract the client consumes (paths, methods,
 * status codes, error envelope, job polling) so the UI components can be
 * exercised end-to-end without a network.
 */

import type { FetchLike } from "../src/api";
import type {
  ExportMode,
  Job,
  ProjectView,
  Suggestion,
  Track,
} from "../src/types";

const CAFE_SOUNDS: Array<[string, string]> = [
  ["Clinking of silverware", "🍴"],
  ["Murmuring of conversations", "🔊"],
  ["Hum of espresso machine", "☕"],
  ["Clack of cash register", "🔊"],
  ["Jingle of doorbell", "🔊"],
];

const SIMILAR: Record<string, Array<[string, string]>> = {
  "Clinking of silverware": [
    ["Clatter of plates being stacked", "🍽️"],
    ["Scrape of a chair on tile", "🪑"],
  ],
};

const DEFAULT_SIMILAR: Array<[string, string]> = [
  ["Soft rustling nearby", "🔊"],
  ["Distant low hum", "🔊"],
];

// Subjects visible in the fixture frames become foreground tracks.
const FOREGROUND_SUBJECTS = ["espresso machine"];

function errorBody(code: string, message: string): string {
  return JSON.stringify({ code, message, detail: null });
}

function json(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function error(status: number, code: string, message: string): Response {
  return new Response(errorBody(code, message), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** Minimal valid stereo 16-bit WAV: header plus a handful of zero frames. */
function tinyWav(): Uint8Array {
  const frames = 48;
  const dataSize = frames * 4;
  const buffer = new ArrayBuffer(44 + dataSize);
  const view = new DataView(buffer);
  const ascii = (offset: number, text: string) => {
    for (let i = 0; i < text.length; i++) {
      view.setUint8(offset + i, text.charCodeAt(i));
    }
  };
  ascii(0, "RIFF");
  view.setUint32(4, 36 + dataSize, true);
  ascii(8, "WAVE");
  ascii(12, "fmt ");
  view.setUint32(16, 16, true);
  view.setUint16(20, 1, true); // PCM
  view.setUint16(22, 2, true); // stereo
  view.setUint32(24, 48000, true);
  view.setUint32(28, 48000 * 4, true);
  view.setUint16(32, 4, true);
  view.setUint16(34, 16, true);
  ascii(36, "data");
  view.setUint32(40, dataSize, true);
  return new Uint8Array(buffer);
}

export class StubService {
  project: ProjectView | null = null;
  jobs = new Map<string, { job: Job; pollsLeft: number }>();
  requestLog: Array<{ method: string; path: string }> = [];

  private suggestionCounter = 0;
  private jobCounter = 0;

  readonly fetch: FetchLike = (input, init) => this.handle(input, init);

  private nextSuggestionId(): string {
    this.suggestionCounter += 1;
    return `s${this.suggestionCounter}`;
  }

  private bump(): ProjectView {
    if (!this.project) throw new Error("no project");
    this.project = { ...this.project, revision: this.project.revision + 1 };
    return this.project;
  }

  private startJob(kind: string): Job {
    this.jobCounter += 1;
    const job: Job = {
      job_id: `job${this.jobCounter}`,
      kind,
      project_id: this.project?.id,
      status: "running",
      error: null,
    };
    // Jobs report "running" for one poll before finishing, so clients must
    // actually poll rather than assume instant completion.
    this.jobs.set(job.job_id, { job, pollsLeft: 1 });
    return job;
  }

  private finishJob(entry: { job: Job; pollsLeft: number }): void {
    if (entry.job.kind === "analyze") this.completeAnalyze();
    if (entry.job.kind === "generate") this.completeGenerate();
    entry.job.status = "done";
  }

  private completeAnalyze(): void {
    if (!this.project) return;
    const suggestions: Suggestion[] = CAFE_SOUNDS.map(([text, emoji]) => ({
      id: this.nextSuggestionId(),
      text,
      emoji,
      origin: "llm",
      selected: false,
      duplicate: false,
    }));
    this.project = {
      ...this.project,
      prompt:
        "I see tables, cups, chairs. I am at cafe. There are signs writing " +
        "OPEN 24 HOURS. Overall, I see a cozy cafe with people sitting at " +
        "wooden tables.",
      suggestions,
    };
    this.bump();
  }

  private completeGenerate(): void {
    if (!this.project) return;
    const existing = new Set(this.project.tracks.map((t) => t.suggestion_id));
    const created: Track[] = this.project.suggestions
      .filter((s) => s.selected && !existing.has(s.id))
      .map((s) => {
        const foreground = FOREGROUND_SUBJECTS.some((subject) =>
          s.text.toLowerCase().includes(subject),
        );
        return {
          id: `t-${s.id}`,
          suggestion_id: s.id,
          category: foreground ? "foreground" : "background",
          duration_target: this.project!.media_duration,
          gain_automation: foreground
            ? [
                [0.0, -5.1],
                [1.0, -5.1],
              ]
            : [[0.0, -7.0]],
          pan_automation: foreground ? [[0.0, -0.6]] : [[0.0, 0.0]],
          user_gain_offset_db: 0.0,
        } as Track;
      });
    this.project = {
      ...this.project,
      tracks: [...this.project.tracks, ...created],
    };
    this.bump();
  }

  private handle(input: string, init?: RequestInit): Promise<Response> {
    const method = (init?.method ?? "GET").toUpperCase();
    const url = new URL(input, "http://stub.local");
    const path = url.pathname;
    this.requestLog.push({ method, path });
    const body =
      typeof init?.body === "string"
        ? (JSON.parse(init.body) as Record<string, unknown>)
        : null;

    const respond = (response: Response) => Promise.resolve(response);
    let match: RegExpMatchArray | null;

    if (method === "POST" && path === "/projects") {
      if (!(init?.body instanceof FormData) || !init.body.get("file")) {
        return respond(error(400, "invalid_request", "file field required"));
      }
      this.project = {
        id: "p1",
        source_media: "cafe.scene.json",
        media_duration: 10.0,
        context: null,
        prompt: "",
        suggestions: [],
        tracks: [],
        track_errors: [],
        revision: 1,
      };
      return respond(json(this.project, 201));
    }

    if (method === "GET" && (match = path.match(/^\/projects\/([^/]+)$/))) {
      if (!this.project || this.project.id !== match[1]) {
        return respond(error(404, "not_found", "unknown project"));
      }
      return respond(json(this.project));
    }

    if (
      method === "POST" &&
      (match = path.match(/^\/projects\/([^/]+)\/(analyze|generate)$/))
    ) {
      if (!this.project || this.project.id !== match[1]) {
        return respond(error(404, "not_found", "unknown project"));
      }
      const job = this.startJob(match[2]);
      return respond(json({ job_id: job.job_id, status: job.status }, 202));
    }

    if (method === "GET" && (match = path.match(/^\/jobs\/([^/]+)$/))) {
      const entry = this.jobs.get(match[1]);
      if (!entry) return respond(error(404, "not_found", "unknown job"));
      if (entry.job.status === "running") {
        if (entry.pollsLeft > 0) {
          entry.pollsLeft -= 1;
        } else {
          this.finishJob(entry);
        }
      }
      return respond(json(entry.job));
    }

    if (
      method === "POST" &&
      (match = path.match(/^\/projects\/([^/]+)\/suggestions$/))
    ) {
      if (!this.project || this.project.id !== match[1]) {
        return respond(error(404, "not_found", "unknown project"));
      }
      const text = typeof body?.text === "string" ? body.text.trim() : "";
      if (!text) {
        return respond(error(400, "invalid_request", "text must be non-empty"));
      }
      const duplicate = this.project.suggestions.some(
        (s) => s.text.toLowerCase() === text.toLowerCase(),
      );
      const suggestion: Suggestion = {
        id: this.nextSuggestionId(),
        text,
        emoji: "🔊",
        origin: "custom",
        selected: true,
        duplicate,
      };
      this.project = {
        ...this.project,
        suggestions: [...this.project.suggestions, suggestion],
      };
      this.bump();
      return respond(json(suggestion, 201));
    }

    if (
      method === "POST" &&
      (match = path.match(/^\/suggestions\/([^/]+)\/similar$/))
    ) {
      const base = this.project?.suggestions.find((s) => s.id === match![1]);
      if (!this.project || !base) {
        return respond(error(404, "not_found", "unknown suggestion"));
      }
      const pair = SIMILAR[base.text] ?? DEFAULT_SIMILAR;
      const created: Suggestion[] = pair.map(([text, emoji]) => ({
        id: this.nextSuggestionId(),
        text,
        emoji,
        origin: `similar-of:${base.id}`,
        selected: false,
        duplicate: false,
      }));
      this.project = {
        ...this.project,
        suggestions: [...this.project.suggestions, ...created],
      };
      this.bump();
      return respond(json(created, 201));
    }

    if (
      method === "POST" &&
      (match = path.match(/^\/suggestions\/([^/]+)\/select$/))
    ) {
      const id = match[1];
      if (!this.project?.suggestions.some((s) => s.id === id)) {
        return respond(error(404, "not_found", "unknown suggestion"));
      }
      if (typeof body?.selected !== "boolean") {
        return respond(error(400, "invalid_request", "selected required"));
      }
      const selected = body.selected;
      this.project = {
        ...this.project!,
        suggestions: this.project!.suggestions.map((s) =>
          s.id === id ? { ...s, selected } : s,
        ),
      };
      return respond(json(this.bump()));
    }

    if (method === "PATCH" && (match = path.match(/^\/tracks\/([^/]+)$/))) {
      const id = match[1];
      if (!this.project?.tracks.some((t) => t.id === id)) {
        return respond(error(404, "not_found", "unknown track"));
      }
      if (typeof body?.gain_offset_db !== "number") {
        return respond(
          error(400, "invalid_request", "gain_offset_db required"),
        );
      }
      const offset = body.gain_offset_db;
      this.project = {
        ...this.project!,
        tracks: this.project!.tracks.map((t) =>
          t.id === id ? { ...t, user_gain_offset_db: offset } : t,
        ),
      };
      return respond(json(this.bump()));
    }

    if (
      method === "GET" &&
      (match = path.match(/^\/projects\/([^/]+)\/mixdown$/))
    ) {
      if (!this.project || this.project.id !== match[1]) {
        return respond(error(404, "not_found", "unknown project"));
      }
      return respond(
        new Response(tinyWav(), {
          status: 200,
          headers: { "content-type": "audio/wav" },
        }),
      );
    }

    if (
      method === "POST" &&
      (match = path.match(/^\/projects\/([^/]+)\/export$/))
    ) {
      if (!this.project || this.project.id !== match[1]) {
        return respond(error(404, "not_found", "unknown project"));
      }
      const which = url.searchParams.get("which") as ExportMode | null;
      if (which === "individual") {
        return respond(
          json({
            files: this.project.tracks.map((t) => `/exports/track_${t.id}.wav`),
          }),
        );
      }
      if (which === "combined") {
        return respond(json({ files: ["/exports/combined.wav"] }));
      }
      if (which === "final") {
        return respond(json({ files: ["/exports/final.mp4"] }));
      }
      return respond(error(400, "invalid_request", "unknown export mode"));
    }

    return respond(error(404, "not_found", `no route ${method} ${path}`));
  }
}

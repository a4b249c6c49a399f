/** JSON shapes served by the soundscape HTTP API. */

export interface SceneContext {
  objects: string[];
  setting: string;
  location: string;
  time_of_day: string | null;
  weather: string | null;
  ambient_sounds: string[];
  sign_text: string;
  speech_transcript: string;
  caption: string;
}

export interface Suggestion {
  id: string;
  text: string;
  emoji: string;
  origin: string;
  selected: boolean;
  duplicate: boolean;
}

/** An automation keyframe: [time in seconds, value]. */
export type Keyframe = [number, number];

export interface Track {
  id: string;
  suggestion_id: string;
  category: "foreground" | "background" | "unknown";
  duration_target: number;
  gain_automation: Keyframe[];
  pan_automation: Keyframe[];
  user_gain_offset_db: number;
}

export interface TrackError {
  suggestion_id: string;
  message: string;
}

export interface ProjectView {
  id: string;
  source_media: string;
  media_duration: number;
  context: SceneContext | null;
  prompt: string;
  suggestions: Suggestion[];
  tracks: Track[];
  track_errors: TrackError[];
  revision: number;
}

export interface Job {
  job_id: string;
  kind?: string;
  project_id?: string;
  status: "pending" | "running" | "done" | "failed";
  error?: string | null;
}

export interface ExportResult {
  files: string[];
}

export type ExportMode = "individual" | "combined" | "final";

export interface ApiErrorBody {
  code: string;
  message: string;
  detail?: unknown;
}

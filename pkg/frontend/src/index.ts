export { ApiClient, ApiError } from "./api";
export type { FetchLike, WaitOptions } from "./api";
export { mountStudio } from "./app";
export type { Studio } from "./app";
export { MixingConsole, predictedGainDb } from "./mixingConsole";
export type { ExportRecord, MixingConsoleOptions } from "./mixingConsole";
export { ProjectSession } from "./session";
export type { SessionListener } from "./session";
export { SuggestionBoard } from "./suggestionBoard";
export type {
  ApiErrorBody,
  ExportMode,
  ExportResult,
  Job,
  Keyframe,
  ProjectView,
  SceneContext,
  Suggestion,
  Track,
  TrackError,
} from "./types";

import { ApiClient } from "./api";
import { MixingConsole } from "./mixingConsole";
import { ProjectSession } from "./session";
import { SuggestionBoard } from "./suggestionBoard";

export interface Studio {
  session: ProjectSession;
  board: SuggestionBoard;
  console: MixingConsole;
  /** Uploads media, runs analysis, and populates the board. */
  openMedia(file: Blob, filename: string): Promise<void>;
  /** Generates tracks for the currently selected suggestions. */
  generateSelected(): Promise<void>;
}

/** Wires the suggestion board and mixing console into `root`. */
export function mountStudio(
  root: HTMLElement,
  api: ApiClient = new ApiClient(),
): Studio {
  const session = new ProjectSession(api);
  const board = new SuggestionBoard(session, api);
  const console_ = new MixingConsole(session, api);
  root.append(board.el, console_.el);

  return {
    session,
    board,
    console: console_,
    async openMedia(file: Blob, filename: string): Promise<void> {
      const project = await api.createProject(file, filename);
      session.apply(project);
      const job = await api.startAnalyze(project.id);
      await api.waitForJob(job.job_id);
      await session.refresh();
    },
    async generateSelected(): Promise<void> {
      const project = session.project;
      if (!project) throw new Error("no project loaded");
      const job = await api.startGenerate(project.id);
      await api.waitForJob(job.job_id);
      await session.refresh();
    },
  };
}

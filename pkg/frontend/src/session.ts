import type { ApiClient } from "./api";
import type { ProjectView } from "./types";

export type SessionListener = (project: ProjectView) => void;

/**
 * Holds the last server snapshot of one project.
 *
 * UI state is a pure function of this snapshot plus in-flight edits kept by
 * the components. Snapshots with a stale revision are rejected so a slow
 * response can never overwrite a newer one; `applyOrRefetch` falls back to a
 * fresh GET in that case.
 */
export class ProjectSession {
  private snapshot: ProjectView | null = null;
  private listeners: SessionListener[] = [];

  constructor(private readonly api: ApiClient) {}

  get project(): ProjectView | null {
    return this.snapshot;
  }

  get revision(): number {
    return this.snapshot?.revision ?? 0;
  }

  subscribe(listener: SessionListener): () => void {
    this.listeners.push(listener);
    if (this.snapshot) listener(this.snapshot);
    return () => {
      this.listeners = this.listeners.filter((fn) => fn !== listener);
    };
  }

  /** Accepts a snapshot unless it is older than the current one. */
  apply(project: ProjectView): boolean {
    if (this.snapshot && project.revision < this.snapshot.revision) {
      return false;
    }
    this.snapshot = project;
    for (const listener of this.listeners) listener(project);
    return true;
  }

  /** Applies the snapshot, or refetches the project if it was stale. */
  async applyOrRefetch(project: ProjectView): Promise<ProjectView> {
    if (!this.apply(project)) {
      return this.refresh();
    }
    return project;
  }

  /** Fetches the latest server state and applies it. */
  async refresh(): Promise<ProjectView> {
    if (!this.snapshot) {
      throw new Error("no project loaded");
    }
    const latest = await this.api.getProject(this.snapshot.id);
    this.apply(latest);
    return latest;
  }
}

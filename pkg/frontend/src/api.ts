import type {
  ApiErrorBody,
  ExportMode,
  ExportResult,
  Job,
  ProjectView,
  Suggestion,
} from "./types";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly detail?: unknown,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface WaitOptions {
  intervalMs?: number;
  timeoutMs?: number;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) =>
  new Promise<void>((resolve) => setTimeout(resolve, ms));

/** Typed client for the soundscape project service. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) =>
      globalThis.fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let body: Partial<ApiErrorBody> = {};
      try {
        body = (await response.json()) as Partial<ApiErrorBody>;
      } catch {
        // non-JSON error body; fall through to the generic message
      }
      throw new ApiError(
        response.status,
        body.code ?? "http_error",
        body.message ?? `request failed with status ${response.status}`,
        body.detail,
      );
    }
    return (await response.json()) as T;
  }

  private jsonInit(method: string, payload: unknown): RequestInit {
    return {
      method,
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    };
  }

  createProject(file: Blob, filename: string): Promise<ProjectView> {
    const form = new FormData();
    form.append("file", file, filename);
    return this.request<ProjectView>("/projects", {
      method: "POST",
      body: form,
    });
  }

  getProject(projectId: string): Promise<ProjectView> {
    return this.request<ProjectView>(`/projects/${projectId}`);
  }

  startAnalyze(projectId: string): Promise<Job> {
    return this.request<Job>(`/projects/${projectId}/analyze`, {
      method: "POST",
    });
  }

  startGenerate(projectId: string): Promise<Job> {
    return this.request<Job>(`/projects/${projectId}/generate`, {
      method: "POST",
    });
  }

  getJob(jobId: string): Promise<Job> {
    return this.request<Job>(`/jobs/${jobId}`);
  }

  /** Polls a job until it is done; throws ApiError if it failed or timed out. */
  async waitForJob(jobId: string, options: WaitOptions = {}): Promise<Job> {
    const intervalMs = options.intervalMs ?? 50;
    const timeoutMs = options.timeoutMs ?? 30_000;
    const sleep = options.sleep ?? defaultSleep;
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const job = await this.getJob(jobId);
      if (job.status === "done") return job;
      if (job.status === "failed") {
        throw new ApiError(502, "job_failed", job.error ?? "job failed");
      }
      if (Date.now() >= deadline) {
        throw new ApiError(504, "job_timeout", `job ${jobId} did not finish`);
      }
      await sleep(intervalMs);
    }
  }

  addCustomSuggestion(projectId: string, text: string): Promise<Suggestion> {
    return this.request<Suggestion>(
      `/projects/${projectId}/suggestions`,
      this.jsonInit("POST", { text }),
    );
  }

  /** Expands one suggestion into exactly two similar ones. */
  expandSimilar(suggestionId: string): Promise<Suggestion[]> {
    return this.request<Suggestion[]>(`/suggestions/${suggestionId}/similar`, {
      method: "POST",
    });
  }

  setSelected(suggestionId: string, selected: boolean): Promise<ProjectView> {
    return this.request<ProjectView>(
      `/suggestions/${suggestionId}/select`,
      this.jsonInit("POST", { selected }),
    );
  }

  setTrackGain(trackId: string, gainOffsetDb: number): Promise<ProjectView> {
    return this.request<ProjectView>(
      `/tracks/${trackId}`,
      this.jsonInit("PATCH", { gain_offset_db: gainOffsetDb }),
    );
  }

  async fetchMixdown(projectId: string): Promise<Blob> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/projects/${projectId}/mixdown`,
    );
    if (!response.ok) {
      throw new ApiError(response.status, "mixdown_failed", "mixdown failed");
    }
    return response.blob();
  }

  exportProject(projectId: string, which: ExportMode): Promise<ExportResult> {
    return this.request<ExportResult>(
      `/projects/${projectId}/export?which=${which}`,
      { method: "POST" },
    );
  }
}

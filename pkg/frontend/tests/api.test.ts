import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";
import { ProjectSession } from "../src/session";
import { StubService } from "./stubService";

let stub: StubService;
let api: ApiClient;

beforeEach(() => {
  stub = new StubService();
  api = new ApiClient("", stub.fetch);
});

async function createProject() {
  const media = new Blob(["{}"], { type: "application/json" });
  return api.createProject(media, "cafe.scene.json");
}

describe("ApiClient", () => {
  it("creates and fetches a project", async () => {
    const project = await createProject();
    expect(project.revision).toBe(1);
    const fetched = await api.getProject(project.id);
    expect(fetched).toEqual(project);
  });

  it("maps the error envelope to ApiError", async () => {
    await expect(api.getProject("nope")).rejects.toMatchObject({
      name: "ApiError",
      status: 404,
      code: "not_found",
    });
  });

  it("polls a job until done", async () => {
    const project = await createProject();
    const job = await api.startAnalyze(project.id);
    expect(job.status).not.toBe("done");
    const finished = await api.waitForJob(job.job_id, { intervalMs: 1 });
    expect(finished.status).toBe("done");
    expect((await api.getProject(project.id)).suggestions).toHaveLength(5);
  });

  it("waitForJob throws a typed error for unknown jobs", async () => {
    await expect(api.waitForJob("nope")).rejects.toBeInstanceOf(ApiError);
  });

  it("expandSimilar returns exactly two suggestions", async () => {
    const project = await createProject();
    const job = await api.startAnalyze(project.id);
    await api.waitForJob(job.job_id, { intervalMs: 1 });
    const { suggestions } = await api.getProject(project.id);
    const created = await api.expandSimilar(suggestions[0].id);
    expect(created).toHaveLength(2);
    const updated = await api.getProject(project.id);
    expect(updated.suggestions).toHaveLength(7);
  });

  it("rejects empty custom suggestions server-side", async () => {
    const project = await createProject();
    await expect(
      api.addCustomSuggestion(project.id, "   "),
    ).rejects.toMatchObject({ status: 400, code: "invalid_request" });
  });

  it("fetches the mixdown as a WAV blob", async () => {
    const project = await createProject();
    const blob = await api.fetchMixdown(project.id);
    const bytes = new Uint8Array(await blob.arrayBuffer());
    expect(String.fromCharCode(...bytes.slice(0, 4))).toBe("RIFF");
    expect(String.fromCharCode(...bytes.slice(8, 12))).toBe("WAVE");
  });
});

describe("ProjectSession", () => {
  it("rejects stale revisions and refetches", async () => {
    const project = await createProject();
    const session = new ProjectSession(api);
    session.apply(project);
    const newer = { ...project, revision: project.revision + 5 };
    expect(session.apply(newer)).toBe(true);
    const stale = { ...project, revision: project.revision + 2 };
    expect(session.apply(stale)).toBe(false);
    // applyOrRefetch falls back to a GET; the server copy is itself older
    // here, so the session keeps the newest snapshot it has seen.
    const reconciled = await session.applyOrRefetch(stale);
    expect(reconciled.revision).toBe(project.revision);
    expect(session.project!.revision).toBe(newer.revision);
  });

  it("notifies subscribers on every applied snapshot", async () => {
    const project = await createProject();
    const session = new ProjectSession(api);
    const seen: number[] = [];
    session.subscribe((p) => seen.push(p.revision));
    session.apply(project);
    session.apply({ ...project, revision: 2 });
    expect(seen).toEqual([1, 2]);
  });
});

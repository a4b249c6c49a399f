import { ApiClient } from "../src/api";
import { mountStudio, type Studio } from "../src/app";
import { StubService } from "./stubService";

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

export interface Harness {
  stub: StubService;
  api: ApiClient;
  studio: Studio;
  root: HTMLElement;
}

/** Mounts the studio against the in-memory service and loads the fixture. */
export async function openStudio(): Promise<Harness> {
  const stub = new StubService();
  const api = new ApiClient("", stub.fetch);
  const root = document.createElement("div");
  document.body.appendChild(root);
  const studio = mountStudio(root, api);
  const media = new Blob([JSON.stringify({ key: "cafe", duration: 10.0 })], {
    type: "application/json",
  });
  await studio.openMedia(media, "cafe.scene.json");
  return { stub, api, studio, root };
}

export async function selectAndGenerate(
  harness: Harness,
  count = 2,
): Promise<void> {
  const project = harness.studio.session.project!;
  for (const suggestion of project.suggestions.slice(0, count)) {
    const updated = await harness.api.setSelected(suggestion.id, true);
    await harness.studio.session.applyOrRefetch(updated);
  }
  await harness.studio.generateSelected();
}

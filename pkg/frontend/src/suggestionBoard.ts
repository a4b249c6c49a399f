import type { ApiClient } from "./api";
import type { ProjectSession } from "./session";
import type { ProjectView, Suggestion } from "./types";

/**
 * Tile grid of sound suggestions.
 *
 * Each tile shows the suggestion's emoji and text; clicking it toggles
 * selection. Every tile carries a "+ similar" button that asks the server for
 * exactly two related suggestions and appends them. A free-text input posts
 * custom descriptions; empty input is rejected client-side without a request.
 */
export class SuggestionBoard {
  el: HTMLElement;
  private grid: HTMLElement;
  private input: HTMLInputElement;
  private busy = false;

  constructor(
    private readonly session: ProjectSession,
    private readonly api: ApiClient,
  ) {
    this.el = document.createElement("section");
    this.el.className = "suggestion-board";

    this.grid = document.createElement("div");
    this.grid.className = "suggestion-grid";
    this.el.appendChild(this.grid);

    const form = document.createElement("form");
    form.className = "custom-suggestion-form";
    this.input = document.createElement("input");
    this.input.type = "text";
    this.input.className = "custom-suggestion-input";
    this.input.placeholder = "Describe a sound…";
    const add = document.createElement("button");
    add.type = "submit";
    add.className = "custom-suggestion-add";
    add.textContent = "Add sound";
    form.append(this.input, add);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitCustom();
    });
    this.el.appendChild(form);

    session.subscribe((project) => this.render(project));
  }

  get tiles(): HTMLElement[] {
    return Array.from(this.grid.querySelectorAll<HTMLElement>(".suggestion-tile"));
  }

  private render(project: ProjectView): void {
    this.grid.replaceChildren(
      ...project.suggestions.map((suggestion) => this.buildTile(suggestion)),
    );
  }

  private buildTile(suggestion: Suggestion): HTMLElement {
    const tile = document.createElement("div");
    tile.className = "suggestion-tile";
    tile.dataset.suggestionId = suggestion.id;
    tile.classList.toggle("selected", suggestion.selected);
    if (suggestion.duplicate) tile.classList.add("duplicate");

    const emoji = document.createElement("span");
    emoji.className = "tile-emoji";
    emoji.textContent = suggestion.emoji;
    const text = document.createElement("span");
    text.className = "tile-text";
    text.textContent = suggestion.text;

    const similar = document.createElement("button");
    similar.type = "button";
    similar.className = "tile-similar";
    similar.textContent = "+ similar";
    similar.addEventListener("click", (event) => {
      event.stopPropagation();
      void this.expandSimilar(suggestion);
    });

    tile.append(emoji, text, similar);
    tile.addEventListener("click", () => {
      void this.toggle(suggestion);
    });
    return tile;
  }

  private async toggle(suggestion: Suggestion): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    try {
      const updated = await this.api.setSelected(
        suggestion.id,
        !suggestion.selected,
      );
      await this.session.applyOrRefetch(updated);
    } finally {
      this.busy = false;
    }
  }

  private async expandSimilar(suggestion: Suggestion): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    try {
      await this.api.expandSimilar(suggestion.id);
      await this.session.refresh();
    } finally {
      this.busy = false;
    }
  }

  private async submitCustom(): Promise<void> {
    const text = this.input.value.trim();
    if (!text) {
      this.input.classList.add("invalid");
      return;
    }
    this.input.classList.remove("invalid");
    const project = this.session.project;
    if (!project || this.busy) return;
    this.busy = true;
    try {
      await this.api.addCustomSuggestion(project.id, text);
      this.input.value = "";
      await this.session.refresh();
    } finally {
      this.busy = false;
    }
  }
}

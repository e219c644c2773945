import { ApiClient, ApiError, isAborted } from "./api.js";
import { addStrip, displayedSvg, replaceLatestStrip, stripCount } from "./comic_view.js";
import { hashText, initialState, pruneFills, type LayoutMode, type SessionState } from "./state.js";
import { renderStoryEditor } from "./story_view.js";
import type { Placement } from "./types.js";

interface Dom {
  code: HTMLTextAreaElement;
  examplePicker: HTMLSelectElement;
  generateStory: HTMLButtonElement;
  storyEditor: HTMLElement;
  comicRight: HTMLButtonElement;
  comicBelow: HTMLButtonElement;
  updateComic: HTMLButtonElement;
  comicPane: HTMLElement;
  banner: HTMLElement;
  layoutButtons: Record<LayoutMode, HTMLButtonElement>;
  codePane: HTMLElement;
  storyPane: HTMLElement;
  comicPaneWrap: HTMLElement;
}

function el<T extends HTMLElement>(root: Document, id: string): T {
  const found = root.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

export class App {
  state: SessionState = initialState();
  dom: Dom;

  constructor(private root: Document, private api: ApiClient) {
    this.dom = {
      code: el(root, "code"),
      examplePicker: el(root, "example-picker"),
      generateStory: el(root, "generate-story"),
      storyEditor: el(root, "story-editor"),
      comicRight: el(root, "generate-comic-right"),
      comicBelow: el(root, "generate-comic-below"),
      updateComic: el(root, "update-comic"),
      comicPane: el(root, "comic-pane"),
      banner: el(root, "banner"),
      layoutButtons: {
        both: el(root, "layout-both"),
        story: el(root, "layout-story"),
        comic: el(root, "layout-comic"),
      },
      codePane: el(root, "code-pane"),
      storyPane: el(root, "story-pane"),
      comicPaneWrap: el(root, "comic-pane-wrap"),
    };
    this.wire();
    this.refreshButtons();
  }

  private wire(): void {
    this.dom.code.addEventListener("input", () => {
      this.state.code = this.dom.code.value;
      this.refreshButtons();
    });
    this.dom.generateStory.addEventListener("click", () => void this.generateStory());
    this.dom.comicRight.addEventListener("click", () => void this.generateComic("right"));
    this.dom.comicBelow.addEventListener("click", () => void this.generateComic("below"));
    this.dom.updateComic.addEventListener("click", () => void this.updateComic());
    for (const mode of ["both", "story", "comic"] as const) {
      this.dom.layoutButtons[mode].addEventListener("click", () => this.setLayout(mode));
    }
    this.dom.examplePicker.addEventListener("change", () => {
      const code = this.dom.examplePicker.value;
      if (code) {
        this.dom.code.value = code;
        this.state.code = code;
        this.refreshButtons();
      }
    });
  }

  async loadExamples(): Promise<void> {
    try {
      const examples = await this.api.examples();
      for (const example of examples) {
        const option = this.root.createElement("option");
        option.value = example.code;
        option.textContent = `${example.concept}: ${example.name}`;
        this.dom.examplePicker.appendChild(option);
      }
    } catch {
      // picker stays empty; typing code works regardless
    }
  }

  refreshButtons(): void {
    this.dom.generateStory.disabled = this.state.code.trim() === "";
    const comicReady = this.state.template !== null && !this.state.staleStory;
    this.dom.comicRight.disabled = !comicReady;
    this.dom.comicBelow.disabled = !comicReady;
    this.dom.updateComic.disabled = !comicReady || this.state.comic === null;
  }

  setLayout(mode: LayoutMode): void {
    this.state.layout = mode;
    this.dom.codePane.classList.toggle("hidden", mode === "comic");
    this.dom.storyPane.classList.toggle("hidden", mode === "comic");
    this.dom.comicPaneWrap.classList.toggle("hidden", mode === "story");
    for (const [name, button] of Object.entries(this.dom.layoutButtons)) {
      button.classList.toggle("active", name === mode);
    }
  }

  async generateStory(): Promise<void> {
    try {
      const template = await this.api.storyTemplate(this.state.code);
      this.state.template = template;
      this.state.fills = pruneFills(this.state.fills, template);
      this.state.staleStory = false;
      this.clearBanner();
      renderStoryEditor(this.dom.storyEditor, template, this.api, {
        onFillChange: (slotId, text) => {
          if (text.trim() === "") {
            delete this.state.fills[slotId];
          } else {
            this.state.fills[slotId] = text;
          }
        },
      });
    } catch (err) {
      if (!isAborted(err)) this.showError(err);
    }
    this.refreshButtons();
  }

  async generateComic(placement: Placement): Promise<void> {
    const response = await this.fetchComic();
    if (response === null) return;
    addStrip(this.dom.comicPane, response.svg, placement);
    this.markLatestStrip();
  }

  async updateComic(): Promise<void> {
    const response = await this.fetchComic();
    if (response === null) return;
    replaceLatestStrip(this.dom.comicPane, response.svg);
    this.markLatestStrip();
  }

  private async fetchComic() {
    try {
      const response = await this.api.comic(this.state.code, this.state.fills, {});
      this.state.comic = response;
      this.state.comicHash = hashText(response.svg);
      this.clearBanner();
      this.refreshButtons();
      return response;
    } catch (err) {
      if (!isAborted(err)) this.showError(err);
      this.refreshButtons();
      return null;
    }
  }

  // The displayed strip carries the hash of exactly what the server sent,
  // so "UI shows the last response" is checkable from the DOM.
  private markLatestStrip(): void {
    const strips = this.dom.comicPane.querySelectorAll<HTMLElement>(".strip");
    const last = strips[strips.length - 1];
    if (last && this.state.comicHash) {
      last.dataset.svgHash = this.state.comicHash;
    }
  }

  showError(err: unknown): void {
    if (err instanceof ApiError) {
      const line = err.body.line;
      const where = line ? ` (line ${line})` : "";
      this.dom.banner.textContent = `${err.body.error}${where}: ${err.body.detail}`;
      if (err.body.error === "structure-changed") {
        this.state.staleStory = true;
        this.dom.banner.textContent += " — regenerate the story template";
      }
      if (line) this.highlightCodeLine(line);
    } else {
      this.dom.banner.textContent = String(err);
    }
    this.dom.banner.classList.add("visible");
  }

  clearBanner(): void {
    this.dom.banner.textContent = "";
    this.dom.banner.classList.remove("visible");
  }

  highlightCodeLine(line: number): void {
    const lines = this.dom.code.value.split("\n");
    let start = 0;
    for (let i = 0; i < line - 1 && i < lines.length; i++) {
      start += (lines[i]?.length ?? 0) + 1;
    }
    const end = start + (lines[line - 1]?.length ?? 0);
    this.dom.code.focus();
    this.dom.code.setSelectionRange(start, end);
  }

  displayedComicSvg(): string | null {
    return displayedSvg(this.dom.comicPane);
  }

  comicStripCount(): number {
    return stripCount(this.dom.comicPane);
  }
}

export function startApp(root: Document, baseUrl = ""): App {
  const app = new App(root, new ApiClient(baseUrl));
  void app.loadExamples();
  return app;
}

if (typeof window !== "undefined") {
  window.addEventListener("DOMContentLoaded", () => {
    if (document.getElementById("code")) startApp(document);
  });
}

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { hashText } from "../src/state.js";
import {
  FakeServer,
  appMarkup,
  json,
  loadFixture,
  serverFromFixture,
  settle,
  type FlowFixture,
} from "./helpers.js";

let fixture: FlowFixture;
let server: FakeServer;
let app: App;

function setInput(input: HTMLInputElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
}

function setCode(code: string): void {
  const textarea = document.getElementById("code") as HTMLTextAreaElement;
  textarea.value = code;
  textarea.dispatchEvent(new Event("input", { bubbles: true }));
}

function click(id: string): void {
  (document.getElementById(id) as HTMLButtonElement).click();
}

function slotInput(slotId: string): HTMLInputElement {
  const found = document.querySelector<HTMLInputElement>(`input[data-slot-id="${slotId}"]`);
  if (!found) throw new Error(`no slot input ${slotId}`);
  return found;
}

beforeEach(() => {
  fixture = loadFixture();
  server = serverFromFixture(fixture);
  server.install();
  document.body.innerHTML = appMarkup();
  app = new App(document, new ApiClient());
});

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("story generation", () => {
  it("disables the story button until code is entered", () => {
    const button = document.getElementById("generate-story") as HTMLButtonElement;
    expect(button.disabled).toBe(true);
    setCode(fixture.code);
    expect(button.disabled).toBe(false);
  });

  it("renders one editable line per code line", async () => {
    setCode(fixture.code);
    click("generate-story");
    await settle();
    const lines = document.querySelectorAll(".story-line");
    expect(lines.length).toBe(3);
    expect([...lines].map((l) => (l as HTMLElement).dataset.codeLine)).toEqual(["1", "2", "3"]);
    expect(lines[0]!.querySelectorAll("input").length).toBe(3);
  });

  it("puts suggestion dropdowns on object and verb slots only", async () => {
    setCode(fixture.code);
    click("generate-story");
    await settle();
    expect(slotInput("L1.object").getAttribute("list")).toBeTruthy();
    expect(slotInput("L1.verb").getAttribute("list")).toBeTruthy();
    expect(slotInput("L1.value").getAttribute("list")).toBeNull();
    expect(slotInput("L3.value").getAttribute("list")).toBeNull();
  });

  it("fills the dropdown from the suggestion endpoint on focus", async () => {
    setCode(fixture.code);
    click("generate-story");
    await settle();
    const object = slotInput("L1.object");
    object.dispatchEvent(new Event("focus"));
    await settle();
    const calls = server.callsTo("/api/suggest");
    expect(calls.length).toBeGreaterThan(0);
    expect(calls[0]!.query.get("kind")).toBe("object");
    const datalist = document.getElementById(object.getAttribute("list")!)!;
    const options = [...datalist.querySelectorAll("option")].map((o) => o.value);
    expect(options).toContain("apple");
  });
});

describe("comic generation flow", () => {
  async function runFlow(): Promise<void> {
    setCode(fixture.code);
    click("generate-story");
    await settle();
    for (const [slotId, text] of Object.entries(fixture.fills)) {
      const input = slotInput(slotId);
      if (input.dataset.kind === "object") {
        // pick the fill from the suggestion dropdown, not by typing blind
        input.dispatchEvent(new Event("focus"));
        await settle();
        const datalist = document.getElementById(input.getAttribute("list")!)!;
        const options = [...datalist.querySelectorAll("option")].map((o) => o.value);
        expect(options).toContain(text);
      }
      setInput(input, text);
    }
    click("generate-comic-below");
    await settle();
  }

  it("reproduces the condition-program flow and displays the exact server SVG", async () => {
    await runFlow();

    const comicCalls = server.callsTo("/api/comic");
    expect(comicCalls.length).toBe(1);
    expect(comicCalls[0]!.body).toEqual({ code: fixture.code, fills: fixture.fills, options: {} });

    // the displayed strip advertises the hash of exactly what the server sent
    const strip = document.querySelector<HTMLElement>("#comic-pane .strip");
    expect(strip).not.toBeNull();
    expect(strip!.querySelector("svg")).not.toBeNull();
    expect(strip!.dataset.svgHash).toBe(hashText(fixture.comic.svg));
    expect(app.state.comic?.svg).toBe(fixture.comic.svg);
    expect(app.state.comicHash).toBe(hashText(fixture.comic.svg));
  });

  it("update replaces the latest strip without adding one", async () => {
    await runFlow();
    const updated = { ...fixture.comic, svg: fixture.comic.svg.replace(">apple<", ">banana<") };
    server.route("POST", "/api/comic", () => json(updated));

    setInput(slotInput("L1.object"), "banana");
    click("update-comic");
    await settle();

    expect(app.comicStripCount()).toBe(1);
    expect(app.state.comic?.svg).toBe(updated.svg);
    const strip = document.querySelector<HTMLElement>("#comic-pane .strip");
    expect(strip!.dataset.svgHash).toBe(hashText(updated.svg));
  });

  it("placement right vs below switches the pane flow", async () => {
    await runFlow();
    const pane = document.getElementById("comic-pane")!;
    expect(pane.classList.contains("flow-below")).toBe(true);
    click("generate-comic-right");
    await settle();
    expect(pane.classList.contains("flow-right")).toBe(true);
    expect(app.comicStripCount()).toBe(2);
  });
});

describe("diagnostics", () => {
  it("shows a banner with the offending line and highlights it", async () => {
    server.route("POST", "/api/story-template", () =>
      json({ error: "unsupported-construct", line: 2, detail: "import" }, 400),
    );
    setCode("x = 1\nimport os\n");
    click("generate-story");
    await settle();
    const banner = document.getElementById("banner")!;
    expect(banner.classList.contains("visible")).toBe(true);
    expect(banner.textContent).toContain("line 2");
    const textarea = document.getElementById("code") as HTMLTextAreaElement;
    expect(textarea.selectionStart).toBe(6); // start of line 2
    expect(textarea.selectionEnd).toBe(15);
  });

  it("stale fills prompt regeneration and disable comic buttons", async () => {
    setCode(fixture.code);
    click("generate-story");
    await settle();
    server.route("POST", "/api/comic", () =>
      json({ error: "structure-changed", line: null, detail: "stale fills" }, 400),
    );
    click("generate-comic-below");
    await settle();
    const banner = document.getElementById("banner")!;
    expect(banner.textContent).toContain("regenerate");
    expect((document.getElementById("generate-comic-below") as HTMLButtonElement).disabled).toBe(true);
    // regenerating the story clears the stale flag
    server.route("POST", "/api/story-template", () => json(fixture.story_template));
    click("generate-story");
    await settle();
    expect((document.getElementById("generate-comic-below") as HTMLButtonElement).disabled).toBe(false);
  });
});

describe("session behavior", () => {
  it("layout buttons switch pane visibility", () => {
    click("layout-comic");
    expect(document.getElementById("code-pane")!.classList.contains("hidden")).toBe(true);
    expect(document.getElementById("comic-pane-wrap")!.classList.contains("hidden")).toBe(false);
    click("layout-story");
    expect(document.getElementById("code-pane")!.classList.contains("hidden")).toBe(false);
    expect(document.getElementById("comic-pane-wrap")!.classList.contains("hidden")).toBe(true);
    click("layout-both");
    expect(document.getElementById("comic-pane-wrap")!.classList.contains("hidden")).toBe(false);
  });

  it("a newer pipeline request cancels the one in flight", async () => {
    const seen: AbortSignal[] = [];
    server.route("POST", "/api/comic", (_call, init) => {
      seen.push(init!.signal!);
      if (seen.length === 1) {
        return new Promise<Response>((_resolve, reject) => {
          init!.signal!.addEventListener("abort", () =>
            reject(new DOMException("aborted", "AbortError")),
          );
        });
      }
      return json(fixture.comic);
    });
    setCode(fixture.code);
    click("generate-story");
    await settle();
    click("generate-comic-below");
    click("generate-comic-below");
    await settle();
    expect(seen.length).toBe(2);
    expect(seen[0]!.aborted).toBe(true);
    expect(app.state.comic?.svg).toBe(fixture.comic.svg);
    expect(app.comicStripCount()).toBe(1); // the cancelled request never lands
  });

  it("example picker fills the code pane", async () => {
    await app.loadExamples();
    await settle();
    const picker = document.getElementById("example-picker") as HTMLSelectElement;
    expect(picker.options.length).toBeGreaterThan(1);
    picker.value = picker.options[1]!.value;
    picker.dispatchEvent(new Event("change"));
    expect((document.getElementById("code") as HTMLTextAreaElement).value).toBe(picker.value);
    expect((document.getElementById("generate-story") as HTMLButtonElement).disabled).toBe(false);
  });
});

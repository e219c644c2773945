// Full-stack variant of the flow test: boots the real HTTP service and
// asserts the UI displays byte-exactly what the live service returned.
import { type ChildProcess, spawn, spawnSync } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { hashText } from "../src/state.js";
import { appMarkup, loadFixture } from "./helpers.js";

const PORT = 8311;
const BASE = `http://127.0.0.1:${PORT}`;

const havePython = spawnSync("python3", ["-c", "import codestrip"]).status === 0;

let service: ChildProcess | null = null;

async function serviceReady(): Promise<boolean> {
  for (let attempt = 0; attempt < 50; attempt++) {
    try {
      const resp = await fetch(`${BASE}/api/examples`);
      if (resp.ok) return true;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  return false;
}

describe.runIf(havePython)("against the live service", () => {
  beforeAll(async () => {
    const projects = mkdtempSync(path.join(tmpdir(), "codestrip-projects-"));
    service = spawn(
      "python3",
      ["-m", "codestrip.cli", "serve", "--port", String(PORT), "--projects", projects],
      { stdio: "ignore" },
    );
    expect(await serviceReady()).toBe(true);
  }, 20_000);

  afterAll(() => {
    service?.kill();
  });

  it("flow ends with the displayed SVG hash equal to the service's direct response hash", async () => {
    const fixture = loadFixture();
    document.body.innerHTML = appMarkup();
    const app = new App(document, new ApiClient(BASE));

    const code = document.getElementById("code") as HTMLTextAreaElement;
    code.value = fixture.code;
    code.dispatchEvent(new Event("input"));
    await app.generateStory();

    for (const [slotId, text] of Object.entries(fixture.fills)) {
      const input = document.querySelector<HTMLInputElement>(`input[data-slot-id="${slotId}"]`)!;
      input.value = text;
      input.dispatchEvent(new Event("input", { bubbles: true }));
    }
    await app.generateComic("below");

    const direct = await fetch(`${BASE}/api/comic`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ code: fixture.code, fills: fixture.fills, options: {} }),
    });
    const directBody = (await direct.json()) as { svg: string };

    const strip = document.querySelector<HTMLElement>("#comic-pane .strip");
    expect(strip).not.toBeNull();
    expect(strip!.dataset.svgHash).toBe(hashText(directBody.svg));
    expect(app.state.comic?.svg).toBe(directBody.svg);
  }, 20_000);
});

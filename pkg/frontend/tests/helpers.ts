import fs from "node:fs";
import path from "node:path";
import { vi } from "vitest";

export interface RecordedCall {
  method: string;
  path: string;
  query: URLSearchParams;
  body: unknown;
}

export interface FlowFixture {
  code: string;
  fills: Record<string, string>;
  story_template: unknown;
  comic: { comic_doc: unknown; svg: string };
  suggest_object_ap: { suggestions: string[] };
  suggest_verb: { suggestions: string[] };
  examples: { examples: unknown[] };
}

export function loadFixture(): FlowFixture {
  const file = path.join(__dirname, "fixtures", "fig1_flow.json");
  return JSON.parse(fs.readFileSync(file, "utf-8")) as FlowFixture;
}

type Handler = (call: RecordedCall, init: RequestInit | undefined) => Response | Promise<Response>;

export function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** A scripted stand-in for the HTTP service: route handlers plus a call log. */
export class FakeServer {
  calls: RecordedCall[] = [];
  private handlers = new Map<string, Handler>();

  route(method: string, pathName: string, handler: Handler): void {
    this.handlers.set(`${method} ${pathName}`, handler);
  }

  install(): void {
    vi.stubGlobal("fetch", (input: RequestInfo | URL, init?: RequestInit) => {
      const url = new URL(String(input), "http://service.test");
      const method = init?.method ?? "GET";
      const call: RecordedCall = {
        method,
        path: url.pathname,
        query: url.searchParams,
        body: typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
      };
      this.calls.push(call);
      const handler = this.handlers.get(`${method} ${url.pathname}`);
      if (!handler) {
        return Promise.resolve(json({ error: "not-found", line: null, detail: url.pathname }, 404));
      }
      return Promise.resolve(handler(call, init));
    });
  }

  callsTo(pathName: string): RecordedCall[] {
    return this.calls.filter((c) => c.path === pathName);
  }
}

export function serverFromFixture(fixture: FlowFixture): FakeServer {
  const server = new FakeServer();
  server.route("POST", "/api/story-template", () => json(fixture.story_template));
  server.route("POST", "/api/comic", () => json(fixture.comic));
  server.route("GET", "/api/suggest", (call) => {
    if (call.query.get("kind") === "verb") return json(fixture.suggest_verb);
    return json(fixture.suggest_object_ap);
  });
  server.route("GET", "/api/examples", () => json(fixture.examples));
  return server;
}

export function appMarkup(): string {
  const html = fs.readFileSync(path.join(__dirname, "..", "index.html"), "utf-8");
  const body = html.slice(html.indexOf("<body>") + "<body>".length, html.indexOf("</body>"));
  return body;
}

export async function settle(): Promise<void> {
  // Let queued promise callbacks (fetch handlers, re-renders) run.
  for (let i = 0; i < 10; i++) {
    await Promise.resolve();
  }
}

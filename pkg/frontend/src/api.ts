import type {
  ApiErrorBody,
  CodeExample,
  ComicResponse,
  ComposeOptions,
  StoryTemplate,
} from "./types.js";

export class ApiError extends Error {
  constructor(public body: ApiErrorBody, public status: number) {
    super(body.detail ?? body.error);
  }
}

/** True when a later click cancelled this request; callers ignore it. */
export function isAborted(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}

export class ApiClient {
  private inflight: AbortController | null = null;

  constructor(private base: string = "") {}

  // Pipeline requests are single-flight: a new one cancels the previous,
  // so the pane always shows the response to the latest click.
  private async pipelineFetch(path: string, body: unknown): Promise<unknown> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const resp = await fetch(this.base + path, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
        signal: controller.signal,
      });
      if (!resp.ok) {
        throw new ApiError((await resp.json()) as ApiErrorBody, resp.status);
      }
      return await resp.json();
    } finally {
      if (this.inflight === controller) {
        this.inflight = null;
      }
    }
  }

  private async plainFetch(path: string): Promise<unknown> {
    const resp = await fetch(this.base + path);
    if (!resp.ok) {
      throw new ApiError((await resp.json()) as ApiErrorBody, resp.status);
    }
    return await resp.json();
  }

  async storyTemplate(code: string): Promise<StoryTemplate> {
    return (await this.pipelineFetch("/api/story-template", { code })) as StoryTemplate;
  }

  async comic(
    code: string,
    fills: Record<string, string>,
    options: ComposeOptions = {},
  ): Promise<ComicResponse> {
    return (await this.pipelineFetch("/api/comic", { code, fills, options })) as ComicResponse;
  }

  async suggest(kind: string, prefix: string, limit = 8, key?: string): Promise<string[]> {
    const params = new URLSearchParams({ kind, prefix, limit: String(limit) });
    if (key) params.set("key", key);
    const body = (await this.plainFetch(`/api/suggest?${params}`)) as { suggestions: string[] };
    return body.suggestions;
  }

  async examples(): Promise<CodeExample[]> {
    const body = (await this.plainFetch("/api/examples")) as { examples: CodeExample[] };
    return body.examples;
  }

  async saveProject(code: string, fills: Record<string, string>, options: ComposeOptions): Promise<string> {
    const resp = await fetch(this.base + "/api/project", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ code, fills, options }),
    });
    if (!resp.ok) throw new ApiError((await resp.json()) as ApiErrorBody, resp.status);
    return ((await resp.json()) as { id: string }).id;
  }
}

// Wire types for the HTTP API. These mirror the service's JSON schemas;
// the UI never derives comic structure itself, it only displays them.

export interface TextSegment {
  type: "text";
  text: string;
}

export interface SlotSegment {
  type: "slot";
  id: string;
  kind: "object" | "verb" | "value" | "action" | "condition-phrase" | "function-name";
  default: string;
  fill: string | null;
}

export type Segment = TextSegment | SlotSegment;

export interface StoryLine {
  code_line: number;
  depth: number;
  construct: string;
  segments: Segment[];
}

export interface StoryTemplate {
  version: number;
  source_fingerprint: string;
  lines: StoryLine[];
}

export interface ComicDoc {
  version: number;
  source_fingerprint: string;
  template_skeleton: string;
  dim_unexecuted: boolean;
  rows: unknown[];
}

export interface ComicResponse {
  comic_doc: ComicDoc;
  svg: string;
}

export interface ComposeOptions {
  show_unexecuted?: "full" | "dimmed" | "hidden";
  iterations_shown?: number;
  ellipsis_on_truncation?: boolean;
}

export interface CodeExample {
  name: string;
  concept: string;
  code: string;
}

export interface ApiErrorBody {
  error: string;
  line: number | null;
  detail: string;
}

export type Placement = "right" | "below";

import type { ComicResponse, StoryTemplate } from "./types.js";

export type LayoutMode = "both" | "story" | "comic";

// Everything the panes display. The comic fields always hold the *last
// server response* verbatim; nothing client-side ever rewrites them.
export interface SessionState {
  code: string;
  template: StoryTemplate | null;
  fills: Record<string, string>;
  comic: ComicResponse | null;
  comicHash: string | null;
  layout: LayoutMode;
  staleStory: boolean; // fills rejected by the server; regenerate the template
}

export function initialState(): SessionState {
  return {
    code: "",
    template: null,
    fills: {},
    comic: null,
    comicHash: null,
    layout: "both",
    staleStory: false,
  };
}

/** FNV-1a 32-bit, hex. Enough to assert "displayed == server response". */
export function hashText(text: string): string {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return (hash >>> 0).toString(16).padStart(8, "0");
}

/** Slot ids of a template, used to drop fills that no longer apply. */
export function slotIds(template: StoryTemplate): Set<string> {
  const ids = new Set<string>();
  for (const line of template.lines) {
    for (const seg of line.segments) {
      if (seg.type === "slot") ids.add(seg.id);
    }
  }
  return ids;
}

export function pruneFills(fills: Record<string, string>, template: StoryTemplate): Record<string, string> {
  const keep = slotIds(template);
  const out: Record<string, string> = {};
  for (const [id, text] of Object.entries(fills)) {
    if (keep.has(id) && text.trim() !== "") out[id] = text;
  }
  return out;
}

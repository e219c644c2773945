import type { ApiClient } from "./api.js";
import type { StoryTemplate } from "./types.js";

export interface StoryViewCallbacks {
  onFillChange(slotId: string, text: string): void;
}

// Suggestion dropdowns appear on object and verb slots only; every slot
// still accepts free text.
const DROPDOWN_KINDS = new Set(["object", "verb"]);

const VERB_KEY_BY_CONSTRUCT: Record<string, string> = {
  assign: "=",
  call: "print",
};

export function renderStoryEditor(
  container: HTMLElement,
  template: StoryTemplate,
  api: ApiClient,
  callbacks: StoryViewCallbacks,
): void {
  container.textContent = "";
  const list = document.createElement("ol");
  list.className = "story-lines";
  for (const line of template.lines) {
    const item = document.createElement("li");
    item.className = "story-line";
    item.dataset.codeLine = String(line.code_line);
    item.style.paddingLeft = `${line.depth * 1.5}em`;

    const lineNo = document.createElement("span");
    lineNo.className = "line-no";
    lineNo.textContent = String(line.code_line);
    item.appendChild(lineNo);

    for (const seg of line.segments) {
      if (seg.type === "text") {
        const fixed = document.createElement("span");
        fixed.className = "fixed-text";
        fixed.textContent = seg.text;
        item.appendChild(fixed);
        continue;
      }
      const input = document.createElement("input");
      input.type = "text";
      input.className = `slot slot-${seg.kind}`;
      input.dataset.slotId = seg.id;
      input.dataset.kind = seg.kind;
      input.placeholder = seg.default;
      input.value = seg.fill ?? "";
      input.size = Math.max(seg.default.length, seg.fill?.length ?? 0, 4);
      input.addEventListener("input", () => {
        input.size = Math.max(input.value.length, seg.default.length, 4);
        callbacks.onFillChange(seg.id, input.value);
      });
      item.appendChild(input);
      if (DROPDOWN_KINDS.has(seg.kind)) {
        attachDropdown(input, seg.kind, VERB_KEY_BY_CONSTRUCT[line.construct], api);
      }
    }
    list.appendChild(item);
  }
  container.appendChild(list);
}

function attachDropdown(input: HTMLInputElement, kind: string, verbKey: string | undefined, api: ApiClient): void {
  const datalist = document.createElement("datalist");
  datalist.id = `suggestions-${input.dataset.slotId}`;
  input.setAttribute("list", datalist.id);
  input.after(datalist);

  let lastPrefix: string | null = null;
  const refresh = async () => {
    const prefix = kind === "object" ? input.value.trim() : "";
    if (prefix === lastPrefix) return;
    lastPrefix = prefix;
    try {
      const suggestions = await api.suggest(kind, prefix, 12, kind === "verb" ? verbKey : undefined);
      datalist.textContent = "";
      for (const text of suggestions) {
        const option = document.createElement("option");
        option.value = text;
        datalist.appendChild(option);
      }
    } catch {
      // suggestions are best-effort; typing always works without them
    }
  };
  input.addEventListener("focus", refresh);
  input.addEventListener("input", refresh);
}

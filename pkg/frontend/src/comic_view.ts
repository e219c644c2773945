import type { Placement } from "./types.js";

// The comic pane holds a list of strips. "Generate" adds a strip to the
// right of or below the existing ones; "update" swaps the content of the
// latest strip in place. SVG arrives fully rendered from the server and is
// inserted verbatim.

export function addStrip(pane: HTMLElement, svg: string, placement: Placement): void {
  pane.classList.toggle("flow-right", placement === "right");
  pane.classList.toggle("flow-below", placement === "below");
  const strip = document.createElement("div");
  strip.className = "strip";
  strip.innerHTML = svg;
  pane.appendChild(strip);
}

export function replaceLatestStrip(pane: HTMLElement, svg: string): void {
  const strips = pane.querySelectorAll(".strip");
  const last = strips[strips.length - 1];
  if (last === undefined) {
    addStrip(pane, svg, "below");
    return;
  }
  last.innerHTML = svg;
}

export function stripCount(pane: HTMLElement): number {
  return pane.querySelectorAll(".strip").length;
}

export function displayedSvg(pane: HTMLElement): string | null {
  const strips = pane.querySelectorAll(".strip");
  const last = strips[strips.length - 1];
  return last ? last.innerHTML : null;
}

export function clearStrips(pane: HTMLElement): void {
  pane.textContent = "";
}

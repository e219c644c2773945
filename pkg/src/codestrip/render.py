"""Deterministic SVG rendering of a comic document.

One horizontal band of panels per row, stacked top-to-bottom and aligned at
the left margin. Panels composite primitive elements in a fixed z-order:
frame, sprite, speech bubble, text. All coordinates are formatted to two
decimals and elements are emitted in a stable order, so equal inputs give
byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .composer import Character, ComicDoc, Panel, Row, SpeechBubble, SpriteRef, Text
from .sprites import Sprite, SpriteSet, get

INDENT_FILL = "#d9d9d9"
PANEL_FILL = "#ffffff"
STROKE_COLOR = "#1a1a1a"
TEXT_COLOR = "#1a1a1a"
SLIM_FACTOR = 0.4  # height of ellipsis-only rows relative to a full row
PANEL_PAD = 8.0
LINE_HEIGHT = 1.3  # in font-size units
MAX_TEXT_LINES = 3
CHAR_WIDTH = 0.6  # rough glyph width in font-size units, for wrapping


@dataclass(frozen=True)
class Layout:
    panel_w: float = 160.0
    panel_h: float = 120.0
    gutter: float = 8.0
    margin: float = 16.0
    font_size: float = 14.0
    dim_opacity: float = 0.4

    def __post_init__(self):
        for name in ("panel_w", "panel_h", "gutter", "margin", "font_size"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.dim_opacity <= 1.0:
            raise ValueError("dim_opacity must be in (0, 1]")


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


@dataclass(frozen=True)
class _Box:
    x: float
    y: float
    w: float
    h: float

    def inset(self, pad: float) -> "_Box":
        return _Box(self.x + pad, self.y + pad, max(self.w - 2 * pad, 1.0), max(self.h - 2 * pad, 1.0))

    def sub(self, fx: float, fy: float, fw: float, fh: float) -> "_Box":
        return _Box(self.x + self.w * fx, self.y + self.h * fy, self.w * fw, self.h * fh)


class _Svg:
    def __init__(self):
        self.parts: list[str] = []

    def rect(self, box: _Box, fill: str, stroke: str | None = None) -> None:
        stroke_attr = f' stroke="{stroke}" stroke-width="1.50"' if stroke else ""
        self.parts.append(
            f'<rect x="{_fmt(box.x)}" y="{_fmt(box.y)}" width="{_fmt(box.w)}" '
            f'height="{_fmt(box.h)}" fill="{fill}"{stroke_attr}/>'
        )

    def polyline(self, points: list[tuple[float, float]], width: float = 1.5) -> None:
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{STROKE_COLOR}" '
            f'stroke-width="{_fmt(width)}" stroke-linecap="round" stroke-linejoin="round"/>'
        )

    def text(self, x: float, y: float, content: str, size: float, anchor: str = "middle") -> None:
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
            f'font-size="{_fmt(size)}" fill="{TEXT_COLOR}" text-anchor="{anchor}">{_escape(content)}</text>'
        )


def _wrap(text: str, max_chars: int) -> list[str]:
    """Greedy word wrap to MAX_TEXT_LINES lines, ellipsizing overflow."""
    max_chars = max(max_chars, 1)
    words = text.split()
    if not words:
        return []
    lines: list[str] = []
    current = words[0]
    for word in words[1:]:
        if len(current) + 1 + len(word) <= max_chars:
            current += " " + word
        else:
            lines.append(current)
            current = word
    lines.append(current)
    if len(lines) > MAX_TEXT_LINES:
        lines = lines[:MAX_TEXT_LINES]
        lines[-1] = lines[-1][: max(max_chars - 1, 1)].rstrip() + "…"
    return [line if len(line) <= max_chars else line[: max(max_chars - 1, 1)].rstrip() + "…" for line in lines]


def _draw_sprite(svg: _Svg, sprite: Sprite, box: _Box, layout: Layout) -> None:
    """Scale unit-square strokes into `box`, preserving aspect ratio."""
    side = min(box.w, box.h)
    ox = box.x + (box.w - side) / 2
    oy = box.y + (box.h - side) / 2
    for stroke in sprite.strokes:
        svg.polyline([(ox + x * side, oy + y * side) for x, y in stroke])
    if sprite.label:
        size = layout.font_size * 0.8
        lines = _wrap(sprite.label, int(side / (size * CHAR_WIDTH)))
        if lines:
            svg.text(ox + side / 2, oy + side * 0.62, lines[0], size)


def _draw_text_block(svg: _Svg, box: _Box, content: str, layout: Layout, size: float | None = None) -> None:
    size = size or layout.font_size
    lines = _wrap(content, int(box.w / (size * CHAR_WIDTH)))
    if not lines:
        return
    line_h = size * LINE_HEIGHT
    block_h = line_h * len(lines)
    top = box.y + (box.h - block_h) / 2 + size  # baseline of first line
    for i, line in enumerate(lines):
        svg.text(box.x + box.w / 2, top + i * line_h, line, size)


def _draw_bubble(svg: _Svg, bubble: SpeechBubble, box: _Box, sprites: SpriteSet, layout: Layout) -> None:
    speaker_box = box.sub(0.0, 0.55, 0.3, 0.45)
    bubble_box = box.sub(0.0, 0.0, 1.0, 0.6)
    _draw_sprite(svg, get(sprites, bubble.speaker), speaker_box, layout)
    shape = get(sprites, "bubble")
    for stroke in shape.strokes:
        svg.polyline([(bubble_box.x + x * bubble_box.w, bubble_box.y + y * bubble_box.h) for x, y in stroke])
    _draw_text_block(svg, bubble_box.sub(0.12, 0.08, 0.76, 0.55), bubble.content, layout)


def _row_height(row: Row, layout: Layout) -> float:
    content = row.content_panels()
    if content and all(p.kind == "ellipsis" for p in content):
        return layout.panel_h * SLIM_FACTOR
    return layout.panel_h


def _draw_panel(svg: _Svg, panel: Panel, box: _Box, sprites: SpriteSet, layout: Layout) -> None:
    # z-order: frame first, then sprites, bubbles, text
    svg.rect(box, INDENT_FILL if panel.kind == "indent" else PANEL_FILL)
    frame = get(sprites, "frame")
    for stroke in frame.strokes:
        svg.polyline([(box.x + x * box.w, box.y + y * box.h) for x, y in stroke])
    if panel.kind == "indent":
        return

    content = box.inset(PANEL_PAD)
    figures = [e for e in panel.elements if isinstance(e, (SpriteRef, Character))]
    bubbles = [e for e in panel.elements if isinstance(e, SpeechBubble)]
    texts = [e for e in panel.elements if isinstance(e, Text)]

    if figures:
        figure_box = content.sub(0.0, 0.0, 1.0, 0.6) if texts else content
        for element in figures:
            if isinstance(element, Character):
                sprite = get(sprites, "stick-figure")
            else:
                sprite = get(sprites, element.category)
                if sprite.name == "placeholder" and element.label:
                    sprite = Sprite(sprite.name, sprite.strokes, label=element.label)
            _draw_sprite(svg, sprite, figure_box, layout)
    for element in bubbles:
        _draw_bubble(svg, element, content, sprites, layout)
    if texts:
        text_box = content.sub(0.0, 0.62, 1.0, 0.38) if figures else content
        for element in texts:
            if element.content:
                _draw_text_block(svg, text_box, element.content, layout)


def render_svg(doc: ComicDoc, sprites: SpriteSet, layout: Layout | None = None) -> bytes:
    """Render the document to UTF-8 SVG bytes. Pure and byte-stable."""
    layout = layout or Layout()
    widest = max((len(row.panels) for row in doc.rows), default=0)
    width = 2 * layout.margin + max(widest * layout.panel_w + max(widest - 1, 0) * layout.gutter, 0.0)
    heights = [_row_height(row, layout) for row in doc.rows]
    height = 2 * layout.margin + sum(heights) + max(len(doc.rows) - 1, 0) * layout.gutter

    svg = _Svg()
    y = layout.margin
    for row, row_h in zip(doc.rows, heights):
        dimmed = doc.dim_unexecuted and not row.executed
        opacity = f' opacity="{_fmt(layout.dim_opacity)}"' if dimmed else ""
        svg.parts.append(f'<g{opacity}>')
        for j, panel in enumerate(row.panels):
            x = layout.margin + j * (layout.panel_w + layout.gutter)
            _draw_panel(svg, panel, _Box(x, y, layout.panel_w, row_h), sprites, layout)
        svg.parts.append("</g>")
        y += row_h + layout.gutter

    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">'
    )
    body = "\n".join([head, *svg.parts, "</svg>"]) + "\n"
    return body.encode("utf-8")

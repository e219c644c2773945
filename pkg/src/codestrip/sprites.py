"""Read-only library of vector sketches used inside comic panels.

A sprite is a list of polyline strokes normalized to the unit square.
Four glyphs are built in and always available regardless of the loaded
file: the stick figure, the speech-bubble outline, the panel frame, and
the labeled placeholder box shown when a category has no sketch.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .errors import SpriteFormatError

Stroke = tuple[tuple[float, float], ...]

BUILTIN_NAMES = ("stick-figure", "bubble", "frame", "placeholder")


@dataclass(frozen=True)
class Sprite:
    name: str
    strokes: tuple[Stroke, ...]
    label: str | None = None  # placeholder copies carry the missing category


@dataclass(frozen=True)
class SpriteSet:
    entries: dict[str, Sprite]

    def categories(self) -> tuple[str, ...]:
        """Loaded sketch names, excluding the built-in glyphs."""
        return tuple(sorted(n for n in self.entries if n not in BUILTIN_NAMES))


def _poly(*points: tuple[float, float]) -> Stroke:
    return tuple(points)


def _circle(cx: float, cy: float, r: float, n: int = 12) -> Stroke:
    import math

    return tuple(
        (cx + r * math.cos(2 * math.pi * i / n - math.pi / 2), cy + r * math.sin(2 * math.pi * i / n - math.pi / 2))
        for i in range(n + 1)
    )


def _builtins() -> dict[str, Sprite]:
    stick = Sprite(
        "stick-figure",
        (
            _circle(0.5, 0.16, 0.11),
            _poly((0.5, 0.27), (0.5, 0.62)),
            _poly((0.28, 0.42), (0.72, 0.42)),
            _poly((0.5, 0.62), (0.33, 0.92)),
            _poly((0.5, 0.62), (0.67, 0.92)),
        ),
    )
    bubble = Sprite(
        "bubble",
        (
            _poly(
                (0.2, 0.1), (0.8, 0.1), (0.95, 0.2), (0.95, 0.6), (0.8, 0.7),
                (0.45, 0.7), (0.3, 0.9), (0.35, 0.7), (0.2, 0.7), (0.05, 0.6),
                (0.05, 0.2), (0.2, 0.1),
            ),
        ),
    )
    frame = Sprite("frame", (_poly((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)),))
    placeholder = Sprite(
        "placeholder",
        (
            _poly((0.08, 0.08), (0.92, 0.08), (0.92, 0.92), (0.08, 0.92), (0.08, 0.08)),
            _poly((0.08, 0.08), (0.92, 0.92)),
            _poly((0.92, 0.08), (0.08, 0.92)),
        ),
    )
    return {s.name: s for s in (stick, bubble, frame, placeholder)}


def _validate_strokes(name: str, strokes: object) -> tuple[Stroke, ...]:
    if not isinstance(strokes, list) or not strokes:
        raise SpriteFormatError(f"sprite {name!r}: strokes must be a non-empty array")
    out: list[Stroke] = []
    for stroke in strokes:
        if not isinstance(stroke, list) or len(stroke) < 2:
            raise SpriteFormatError(f"sprite {name!r}: every stroke needs at least 2 points")
        points: list[tuple[float, float]] = []
        for point in stroke:
            if not isinstance(point, list) or len(point) != 2:
                raise SpriteFormatError(f"sprite {name!r}: points must be [x, y] pairs")
            x, y = point
            if not all(isinstance(v, (int, float)) and 0.0 <= v <= 1.0 for v in (x, y)):
                raise SpriteFormatError(f"sprite {name!r}: coordinates must lie in [0, 1]")
            points.append((float(x), float(y)))
        out.append(tuple(points))
    return tuple(out)


def load_sprites(path: str | Path | None = None) -> SpriteSet:
    """Load sketches from an NDJSON file (one {"name", "strokes"} record per
    line); `None` loads the bundled set. Built-in glyphs are always present,
    even from an empty file."""
    if path is None:
        text = resources.files("codestrip.data").joinpath("sprites.ndjson").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    entries = _builtins()
    for i, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SpriteFormatError(f"line {i}: not valid JSON: {exc}") from exc
        if not isinstance(record, dict) or not isinstance(record.get("name"), str):
            raise SpriteFormatError(f"line {i}: expected an object with a 'name' string")
        name = record["name"]
        if name != name.lower():
            raise SpriteFormatError(f"line {i}: sprite name {name!r} must be lowercase")
        entries[name] = Sprite(name, _validate_strokes(name, record.get("strokes")))
    return SpriteSet(entries)


def get(sprite_set: SpriteSet, category: str) -> Sprite:
    """The sketch for a category, or the placeholder labeled with the
    requested name on a miss. Never fails."""
    sprite = sprite_set.entries.get(category.strip().lower())
    if sprite is not None:
        return sprite
    return replace(sprite_set.entries["placeholder"], label=category)


def find_reference(sprite_set: SpriteSet, texts: list[str]) -> str | None:
    """First sketch category mentioned in any of the given texts.

    Texts are scanned in order; within one text, longer category names win
    (then alphabetical), so "school bus" beats "bus"."""
    names = sorted(sprite_set.categories(), key=lambda n: (-len(n), n))
    for text in texts:
        lowered = text.lower()
        for name in names:
            if re.search(rf"(?<![a-z0-9]){re.escape(name)}(?![a-z0-9])", lowered):
                return name
    return None


def sprite_to_json(sprite: Sprite) -> dict:
    return {"name": sprite.name, "strokes": [[[x, y] for x, y in stroke] for stroke in sprite.strokes]}

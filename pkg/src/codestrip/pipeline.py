"""The pure pipeline shared by the CLI and the HTTP service.

Both frontends call the same functions with the same resources, which is
what guarantees byte-identical SVG for identical inputs.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path

from .composer import ComicDoc, ComposeOptions, compose
from .errors import StructureChanged, UnknownSlot
from .frontend import parse
from .lexicon import Lexicon, load_lexicon
from .render import Layout, render_svg
from .sprites import SpriteSet, load_sprites
from .story import StoryTemplate, apply_fills, build_story_template
from .tracer import TraceLimits, trace

DATA_DIR_ENV = "CODESTRIP_DATA"


@dataclass(frozen=True)
class Resources:
    lexicon: Lexicon
    sprites: SpriteSet
    examples: list[dict]


def _data_override(name: str) -> Path | None:
    root = os.environ.get(DATA_DIR_ENV)
    if not root:
        return None
    candidate = Path(root) / name
    return candidate if candidate.is_file() else None


def load_examples(path: str | Path | None = None) -> list[dict]:
    if path is None:
        text = importlib_resources.files("codestrip.data").joinpath("examples.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return json.loads(text)["examples"]


def load_resources(
    lexicon_path: str | Path | None = None,
    sprites_path: str | Path | None = None,
    examples_path: str | Path | None = None,
) -> Resources:
    """Bundled resources, overridable per file by flag or by dropping a
    replacement file into the directory named by $CODESTRIP_DATA."""
    return Resources(
        lexicon=load_lexicon(lexicon_path or _data_override("lexicon.json")),
        sprites=load_sprites(sprites_path or _data_override("sprites.ndjson")),
        examples=load_examples(examples_path or _data_override("examples.json")),
    )


def story_template_for(code: str) -> StoryTemplate:
    return build_story_template(parse(code))


def comic_for(
    code: str,
    fills: dict[str, str] | None,
    options: ComposeOptions | None,
    sprites: SpriteSet,
    layout: Layout | None = None,
    limits: TraceLimits | None = None,
) -> tuple[ComicDoc, bytes]:
    """code + fills -> (comic document, rendered SVG)."""
    ast = parse(code)
    template = build_story_template(ast)
    if fills:
        try:
            template = apply_fills(template, fills)
        except UnknownSlot as exc:
            raise StructureChanged(f"fill references a slot the code does not produce: {exc.slot_id}") from exc
    doc = compose(ast, template, trace(ast, limits), options, sprites)
    return doc, render_svg(doc, sprites, layout)

"""codestrip — small programs to stories to comic strips.

Pipeline: parse → story template → execution trace → comic layout → SVG.
Every stage is a pure function over immutable values; the CLI and HTTP
service are thin wrappers around the same core, so both produce identical
output for identical input.
"""

from .composer import ComicDoc, ComposeOptions, compose, update
from .errors import (
    CodestripError,
    EmptyFill,
    LexiconFormatError,
    MismatchedInputs,
    ParseError,
    RuntimeFault,
    SpriteFormatError,
    StructureChanged,
    UnknownKind,
    UnknownSlot,
    UnsupportedConstruct,
)
from .frontend import CodeAst, parse, pretty_print
from .lexicon import Lexicon, load_lexicon, suggest
from .render import Layout, render_svg
from .sprites import SpriteSet, load_sprites
from .story import StoryTemplate, build_story_template, fill_slot, render_story_text
from .tracer import ExecutionTrace, TraceLimits, trace

__all__ = [
    "CodeAst",
    "CodestripError",
    "ComicDoc",
    "ComposeOptions",
    "EmptyFill",
    "ExecutionTrace",
    "Layout",
    "Lexicon",
    "LexiconFormatError",
    "MismatchedInputs",
    "ParseError",
    "RuntimeFault",
    "SpriteFormatError",
    "SpriteSet",
    "StoryTemplate",
    "StructureChanged",
    "TraceLimits",
    "UnknownKind",
    "UnknownSlot",
    "UnsupportedConstruct",
    "build_story_template",
    "compose",
    "fill_slot",
    "load_lexicon",
    "load_sprites",
    "parse",
    "pretty_print",
    "render_story_text",
    "render_svg",
    "suggest",
    "trace",
    "update",
]

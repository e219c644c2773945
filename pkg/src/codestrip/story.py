"""Line-by-line story templates derived from code.

Each code line becomes one story line: fixed words plus typed slots whose
defaults come from the code tokens (variable -> object, operator -> verb,
literal -> value, function/keyword -> action). Users overwrite slot fills
with real-life stand-ins; the skeleton never changes, so a template built
twice from the same code has identical slot ids.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace

from . import frontend as f
from .errors import EmptyFill, UnknownSlot

SLOT_KINDS = ("object", "verb", "value", "action", "condition-phrase", "function-name")

# Default verb for each comparison operator; `=` and `==` read as plain "is".
OPERATOR_VERBS = {
    "=": "is",
    "==": "is",
    "!=": "is not",
    "<": "is less than",
    ">": "is greater than",
    "<=": "is at most",
    ">=": "is at least",
}

_BE_VERBS = frozenset({"is", "are", "am", "was", "were"})

# Punctuation that glues to the previous word when lines are rendered.
_NO_SPACE_BEFORE = (",", ".", ";", ":", "!", "?")


@dataclass(frozen=True)
class FixedText:
    text: str


@dataclass(frozen=True)
class Slot:
    id: str
    kind: str
    default_fill: str
    fill: str | None = None

    @property
    def text(self) -> str:
        return self.fill if self.fill is not None else self.default_fill


Segment = FixedText | Slot


@dataclass(frozen=True)
class StoryLine:
    code_line: int
    depth: int
    construct: str  # assign | if | while | for-range | func-def | call | return
    segments: tuple[Segment, ...]

    def slots(self) -> tuple[Slot, ...]:
        return tuple(s for s in self.segments if isinstance(s, Slot))

    def slot_of_kind(self, kind: str) -> Slot | None:
        for slot in self.slots():
            if slot.kind == kind:
                return slot
        return None


@dataclass(frozen=True)
class StoryTemplate:
    lines: tuple[StoryLine, ...]
    source_fingerprint: str

    def find_slot(self, slot_id: str) -> Slot | None:
        for line in self.lines:
            for slot in line.slots():
                if slot.id == slot_id:
                    return slot
        return None

    def slot_ids(self) -> tuple[str, ...]:
        return tuple(s.id for line in self.lines for s in line.slots())


class _SlotNamer:
    """Stable per-line slot ids: L3.object, L3.object2, ..."""

    def __init__(self, line: int):
        self.line = line
        self.counts: dict[str, int] = {}

    def make(self, kind: str, default: str) -> Slot:
        n = self.counts.get(kind, 0) + 1
        self.counts[kind] = n
        suffix = "" if n == 1 else str(n)
        return Slot(f"L{self.line}.{kind}{suffix}", kind, default)


def _print_default(args: tuple[f.Expr, ...]) -> str:
    """Default reported-speech text for a print call."""
    if len(args) == 1 and isinstance(args[0], f.StrLit):
        return f.expr_text(args[0])  # keeps its double quotes
    inner = ", ".join(f.expr_text(a) for a in args)
    return f"'{inner}'"


def _condition_segments(cond: f.Expr, namer: _SlotNamer) -> list[Segment]:
    if isinstance(cond, f.Compare):
        return [
            namer.make("object", f.expr_text(cond.left)),
            namer.make("verb", OPERATOR_VERBS[cond.op]),
            namer.make("value", f.expr_text(cond.right)),
        ]
    return [namer.make("condition-phrase", f.expr_text(cond))]


def _line_for(stmt: f.Stmt) -> StoryLine:
    namer = _SlotNamer(stmt.line)
    segments: list[Segment]
    if isinstance(stmt, f.Assign):
        segments = [
            namer.make("object", stmt.target),
            namer.make("verb", OPERATOR_VERBS["="]),
        ]
        if isinstance(stmt.value, f.StrLit):
            segments.append(FixedText(","))  # reported speech: x reads, "hello"
        segments.append(namer.make("value", f.expr_text(stmt.value)))
        construct = "assign"
    elif isinstance(stmt, f.If):
        segments = [FixedText("if"), *_condition_segments(stmt.cond, namer)]
        construct = "if"
    elif isinstance(stmt, f.While):
        segments = [FixedText("while"), *_condition_segments(stmt.cond, namer)]
        construct = "while"
    elif isinstance(stmt, f.ForRange):
        segments = [FixedText("repeat"), namer.make("value", f.expr_text(stmt.count)), FixedText("times")]
        construct = "for-range"
    elif isinstance(stmt, f.FuncDef):
        segments = [FixedText("to"), namer.make("function-name", stmt.name)]
        segments.extend(namer.make("object", param) for param in stmt.params)
        construct = "func-def"
    elif isinstance(stmt, f.CallStmt):
        if stmt.callee == "print":
            segments = [namer.make("action", "say"), FixedText(","), namer.make("value", _print_default(stmt.args))]
        else:
            segments = [namer.make("function-name", stmt.callee)]
            segments.extend(namer.make("value", f.expr_text(a)) for a in stmt.args)
        construct = "call"
    elif isinstance(stmt, f.Return):
        segments = [namer.make("action", "give back"), namer.make("value", f.expr_text(stmt.value))]
        construct = "return"
    else:
        raise TypeError(f"not a statement: {stmt!r}")
    return StoryLine(stmt.line, stmt.depth, construct, tuple(segments))


def build_story_template(ast: f.CodeAst) -> StoryTemplate:
    """One story line per code line, in source order."""
    lines = tuple(_line_for(stmt) for stmt in f.walk(ast.statements))
    return StoryTemplate(lines, f.fingerprint(ast))


# ── filling ─────────────────────────────────────────────────


def fill_slot(template: StoryTemplate, slot_id: str, text: str) -> StoryTemplate:
    """Return a template with one slot filled. Filling twice with the same
    text is a no-op; the rest of the template is untouched."""
    trimmed = text.strip()
    if not trimmed:
        raise EmptyFill(slot_id)
    if template.find_slot(slot_id) is None:
        raise UnknownSlot(slot_id)
    lines = tuple(
        replace(
            line,
            segments=tuple(
                replace(seg, fill=trimmed) if isinstance(seg, Slot) and seg.id == slot_id else seg
                for seg in line.segments
            ),
        )
        for line in template.lines
    )
    return StoryTemplate(lines, template.source_fingerprint)


def apply_fills(template: StoryTemplate, fills: dict[str, str]) -> StoryTemplate:
    """Fill several slots at once (insertion order of the mapping)."""
    for slot_id, text in fills.items():
        template = fill_slot(template, slot_id, text)
    return template


# ── rendering ───────────────────────────────────────────────


def join_words(parts: list[str]) -> str:
    out = ""
    for part in parts:
        if not part:
            continue
        if not out:
            out = part
        elif part.startswith(_NO_SPACE_BEFORE):
            out += part
        else:
            out += " " + part
    return out


def render_line(line: StoryLine, overrides: dict[str, str] | None = None) -> str:
    """Prose for one line, without indentation. `overrides` swaps in
    runtime values for specific slots (used by the comic for loop bodies)."""
    overrides = overrides or {}
    parts = []
    for seg in line.segments:
        if isinstance(seg, Slot):
            parts.append(overrides.get(seg.id, seg.text))
        else:
            parts.append(seg.text)
    return join_words(parts)


def render_story_text(template: StoryTemplate) -> list[str]:
    """One prose line per story line, indented two spaces per depth level."""
    return ["  " * line.depth + render_line(line) for line in template.lines]


def _deinflect(verb: str) -> str:
    if verb == "has":
        return "have"
    if verb == "does":
        return "do"
    if verb.endswith("ies") and len(verb) > 4:
        return verb[:-3] + "y"
    if verb.endswith(("ches", "shes", "sses", "xes", "zes", "oes")):
        return verb[:-2]
    if verb.endswith("s") and not verb.endswith("ss"):
        return verb[:-1]
    return verb


def question_text(line: StoryLine, overrides: dict[str, str] | None = None) -> str:
    """Condition lines re-phrased as a question: "if apple tastes good"
    becomes "does apple taste good?"; be-verbs front instead ("is x True?")."""
    overrides = overrides or {}

    def text_of(slot: Slot) -> str:
        return overrides.get(slot.id, slot.text)

    phrase = line.slot_of_kind("condition-phrase")
    if phrase is not None:
        return f"{text_of(phrase)}?"
    obj = line.slot_of_kind("object")
    verb = line.slot_of_kind("verb")
    value = line.slot_of_kind("value")
    if obj is None or verb is None or value is None:
        return f"{render_line(line, overrides)}?"
    verb_words = text_of(verb).split()
    first, rest = verb_words[0], verb_words[1:]
    if first in _BE_VERBS:
        parts = [first, text_of(obj), *rest, text_of(value)]
    else:
        parts = ["does", text_of(obj), _deinflect(first), *rest, text_of(value)]
    return join_words(parts) + "?"


# ── serialization ───────────────────────────────────────────


def segment_to_json(seg: Segment) -> dict:
    if isinstance(seg, FixedText):
        return {"type": "text", "text": seg.text}
    return {"type": "slot", "id": seg.id, "kind": seg.kind, "default": seg.default_fill, "fill": seg.fill}


def template_to_json(template: StoryTemplate) -> dict:
    return {
        "version": 1,
        "source_fingerprint": template.source_fingerprint,
        "lines": [
            {
                "code_line": line.code_line,
                "depth": line.depth,
                "construct": line.construct,
                "segments": [segment_to_json(s) for s in line.segments],
            }
            for line in template.lines
        ],
    }


def segment_from_json(node: dict) -> Segment:
    if node["type"] == "text":
        return FixedText(node["text"])
    if node["type"] == "slot":
        return Slot(node["id"], node["kind"], node["default"], node.get("fill"))
    raise ValueError(f"unknown segment type {node['type']!r}")


def template_from_json(doc: dict) -> StoryTemplate:
    lines = tuple(
        StoryLine(
            node["code_line"],
            node["depth"],
            node["construct"],
            tuple(segment_from_json(s) for s in node["segments"]),
        )
        for node in doc["lines"]
    )
    return StoryTemplate(lines, doc["source_fingerprint"])


def skeleton_fingerprint(template: StoryTemplate) -> str:
    """Hash of the template minus fills: the part update() must preserve."""
    doc = template_to_json(template)
    for line in doc["lines"]:
        for seg in line["segments"]:
            seg.pop("fill", None)
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def fills_of(template: StoryTemplate) -> dict[str, str]:
    """The user-entered fills, keyed by slot id."""
    return {
        slot.id: slot.fill
        for line in template.lines
        for slot in line.slots()
        if slot.fill is not None
    }

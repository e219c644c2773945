"""Compose code, story, and trace into a comic document.

Each panel carries one of the five narrative phases (Establisher, Initial,
Prolongation, Peak, Release) and a content kind. Rows map 1-to-1 to code
lines, with two deliberate exceptions:

* loops unroll into one row group per traced iteration — an iteration
  marker row (which carries the loop line) followed by the body rows with
  concrete traced values — plus one closing boundary row per loop region,
  so a region with k shown iterations and body size b spans 1 + k*(1+b)
  rows;
* function bodies render once, at the definition, as static Peak panels;
  traced effects of a call (prints, returned values) attach to the call
  row as extra panels, never extra rows.

Row and panel structure is a function of (code, trace, options) only.
Slot fills control text, bubble content, and sprite choice — which is what
makes `update` cheap and structure-preserving.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import frontend as f
from . import story as st
from . import tracer as tr
from .errors import MismatchedInputs, StructureChanged
from .sprites import SpriteSet, find_reference

PHASES = ("Establisher", "Initial", "Prolongation", "Peak", "Release")
PANEL_KINDS = ("intro", "statement", "question", "answer", "output", "iteration-marker", "indent", "ellipsis")

STICK_FIGURE = "stick-figure"
ELLIPSIS_TEXT = "⋯"  # midline horizontal ellipsis
LOOP_DONE_TEXT = "done"


# ── document model ──────────────────────────────────────────


@dataclass(frozen=True)
class Text:
    content: str


@dataclass(frozen=True)
class SpeechBubble:
    content: str
    speaker: str  # sprite category, or "stick-figure"


@dataclass(frozen=True)
class SpriteRef:
    category: str
    label: str | None = None


@dataclass(frozen=True)
class Character:
    pass


Element = Text | SpeechBubble | SpriteRef | Character


@dataclass(frozen=True)
class Panel:
    phase: str
    kind: str
    elements: tuple[Element, ...] = ()


@dataclass(frozen=True)
class Row:
    code_line: int
    iteration: tr.IterPath | None
    executed: bool
    panels: tuple[Panel, ...]

    def indent_count(self) -> int:
        count = 0
        for panel in self.panels:
            if panel.kind != "indent":
                break
            count += 1
        return count

    def content_panels(self) -> tuple[Panel, ...]:
        return tuple(p for p in self.panels if p.kind != "indent")


@dataclass(frozen=True)
class ComicDoc:
    rows: tuple[Row, ...]
    dim_unexecuted: bool
    source_fingerprint: str
    template_skeleton: str


@dataclass(frozen=True)
class ComposeOptions:
    show_unexecuted: str = "dimmed"  # full | dimmed | hidden
    iterations_shown: int = 3
    ellipsis_on_truncation: bool = True

    def __post_init__(self):
        if self.show_unexecuted not in ("full", "dimmed", "hidden"):
            raise ValueError(f"show_unexecuted must be full/dimmed/hidden, not {self.show_unexecuted!r}")
        if self.iterations_shown < 1:
            raise ValueError("iterations_shown must be >= 1")


def options_from_json(doc: dict | None) -> ComposeOptions:
    doc = doc or {}
    base = ComposeOptions()
    return ComposeOptions(
        show_unexecuted=doc.get("show_unexecuted", base.show_unexecuted),
        iterations_shown=doc.get("iterations_shown", base.iterations_shown),
        ellipsis_on_truncation=doc.get("ellipsis_on_truncation", base.ellipsis_on_truncation),
    )


# ── trace index ─────────────────────────────────────────────


class _TraceIndex:
    """Lookup of events by (line, iter_path), restricted to the main flow
    (empty call path); inlined call effects are indexed by call site."""

    def __init__(self, trace: tr.ExecutionTrace):
        self.direct: dict[tuple[int, tr.IterPath], list[tr.Event]] = {}
        self.call_effects: dict[int, list[tr.Event]] = {}
        for event in trace.events:
            if event.call_path:
                self.call_effects.setdefault(event.call_path[0], []).append(event)
            else:
                self.direct.setdefault((event.line, event.iter_path), []).append(event)
        self.capped_lines = frozenset(trace.capped_loop_lines)

    def events_at(self, line: int, path: tr.IterPath) -> list[tr.Event]:
        return self.direct.get((line, path), [])

    def outcome_at(self, line: int, path: tr.IterPath) -> bool | None:
        for event in self.events_at(line, path):
            if isinstance(event, tr.CondEvaluated):
                return event.outcome
        return None

    def assigned_value_at(self, line: int, path: tr.IterPath) -> tr.Value | None:
        for event in self.events_at(line, path):
            if isinstance(event, tr.Assigned):
                return event.value
        return None

    def printed_text_at(self, line: int, path: tr.IterPath) -> str | None:
        for event in self.events_at(line, path):
            if isinstance(event, tr.Printed):
                return event.text
        return None

    def iteration_count(self, line: int, path: tr.IterPath) -> int:
        return sum(1 for e in self.events_at(line, path) if isinstance(e, tr.IterationBegan))

    def effects_of_call(self, line: int, path: tr.IterPath) -> list[tr.Event]:
        """Printed/Returned events produced inside a call made at `line`
        during the iteration identified by `path`."""
        out = []
        for event in self.call_effects.get(line, []):
            if event.iter_path[: len(path)] == path and isinstance(event, (tr.Printed, tr.Returned)):
                out.append(event)
        return out

    def call_ran(self, line: int, path: tr.IterPath) -> bool:
        """Whether a call made at `line` produced any event at all (a call
        can run without printing or returning)."""
        return any(
            event.iter_path[: len(path)] == path for event in self.call_effects.get(line, [])
        )


# ── composition ─────────────────────────────────────────────


@dataclass
class _Protagonist:
    label: str
    sprite: str | None  # resolved sketch category, if any


class _Composer:
    def __init__(
        self,
        ast: f.CodeAst,
        template: st.StoryTemplate,
        trace: tr.ExecutionTrace,
        options: ComposeOptions,
        sprites: SpriteSet | None,
    ):
        self.options = options
        self.sprites = sprites
        self.index = _TraceIndex(trace)
        self.lines = {line.code_line: line for line in template.lines}
        self.rows: list[Row] = []
        self.protagonists: dict[str, _Protagonist] = {}
        for stmt in f.walk(ast.statements):
            if isinstance(stmt, f.Assign) and stmt.target not in self.protagonists:
                self.protagonists[stmt.target] = self._protagonist_for(stmt.line)

    # sprite selection: scan the line's fills for a mention of a known
    # sketch category; the object fill is checked first, then the rest.
    def _resolve_sprite(self, story_line: st.StoryLine) -> str | None:
        obj = story_line.slot_of_kind("object")
        if obj is None or obj.fill is None:
            return None
        texts = [obj.fill] + [s.fill for s in story_line.slots() if s.fill is not None and s is not obj]
        if self.sprites is not None:
            match = find_reference(self.sprites, texts)
            if match is not None:
                return match
        return obj.fill.strip().lower()

    def _protagonist_for(self, code_line: int) -> _Protagonist:
        story_line = self.lines[code_line]
        obj = story_line.slot_of_kind("object")
        label = obj.text if obj is not None else ""
        return _Protagonist(label=label, sprite=self._resolve_sprite(story_line))

    def _figure(self, story_line: st.StoryLine) -> Element:
        sprite = self._resolve_sprite(story_line)
        if sprite is None:
            return Character()
        obj = story_line.slot_of_kind("object")
        return SpriteRef(sprite, label=obj.fill if obj else None)

    def _speaker_for_args(self, args: tuple[f.Expr, ...]) -> str:
        if len(args) == 1 and isinstance(args[0], f.Name):
            protagonist = self.protagonists.get(args[0].ident)
            if protagonist is not None and protagonist.sprite is not None:
                return protagonist.sprite
        return STICK_FIGURE

    def _indents(self, depth: int) -> list[Panel]:
        return [Panel("Establisher", "indent") for _ in range(depth)]

    def _emit(self, row: Row) -> None:
        if self.options.show_unexecuted == "hidden" and not row.executed:
            return
        self.rows.append(row)

    # ── statement templates ─────────────────────────────

    def walk_block(self, body: tuple[f.Stmt, ...], path: tr.IterPath, live: bool) -> None:
        for stmt in body:
            self.walk_stmt(stmt, path, live)

    def walk_stmt(self, stmt: f.Stmt, path: tr.IterPath, live: bool) -> None:
        story_line = self.lines[stmt.line]
        if isinstance(stmt, f.Assign):
            executed = live and bool(self.index.events_at(stmt.line, path))
            overrides = self._assign_overrides(stmt, story_line, path)
            figure = self._figure(story_line)
            obj = story_line.slot_of_kind("object")
            intro = Panel("Establisher", "intro", (figure, Text(obj.text if obj else stmt.target)))
            statement = Panel("Initial", "statement", (figure, Text(st.render_line(story_line, overrides))))
            self._emit(Row(stmt.line, path or None, executed, (*self._indents(stmt.depth), intro, statement)))
        elif isinstance(stmt, f.If):
            outcome = self.index.outcome_at(stmt.line, path)
            executed = live and outcome is not None
            question = Panel("Initial", "question", (self._figure(story_line), Text(st.question_text(story_line))))
            answer_text = "?" if outcome is None else ("yes" if outcome else "no")
            answer = Panel("Prolongation", "answer", (SpeechBubble(answer_text, STICK_FIGURE),))
            self._emit(Row(stmt.line, path or None, executed, (*self._indents(stmt.depth), question, answer)))
            self.walk_block(stmt.body, path, live=executed and bool(outcome))
        elif isinstance(stmt, (f.While, f.ForRange)):
            self._loop(stmt, story_line, path, live)
        elif isinstance(stmt, f.FuncDef):
            self._func_def(stmt, story_line, live)
        elif isinstance(stmt, f.CallStmt):
            if stmt.callee == "print":
                self._print_row(stmt, story_line, path, live)
            else:
                self._call_row(stmt, story_line, path, live)
        elif isinstance(stmt, f.Return):
            executed = live and bool(self.index.events_at(stmt.line, path))
            statement = Panel("Initial", "statement", (Text(st.render_line(story_line)),))
            self._emit(Row(stmt.line, path or None, executed, (*self._indents(stmt.depth), statement)))
        else:
            raise TypeError(f"not a statement: {stmt!r}")

    def _assign_overrides(self, stmt: f.Assign, story_line: st.StoryLine, path: tr.IterPath) -> dict[str, str]:
        """Inside a loop iteration, an unfilled value slot shows the value
        the assignment actually produced on that pass."""
        if not path:
            return {}
        value_slot = story_line.slot_of_kind("value")
        if value_slot is None or value_slot.fill is not None:
            return {}
        value = self.index.assigned_value_at(stmt.line, path)
        if value is None:
            return {}
        return {value_slot.id: tr.render_value(value)}

    def _print_row(self, stmt: f.CallStmt, story_line: st.StoryLine, path: tr.IterPath, live: bool) -> None:
        printed = self.index.printed_text_at(stmt.line, path)
        executed = live and printed is not None
        value_slot = story_line.slot_of_kind("value")
        if value_slot is not None and value_slot.fill is not None:
            content = value_slot.fill
        elif printed is not None:
            content = printed
        else:
            content = value_slot.default_fill if value_slot is not None else ""
        bubble = SpeechBubble(content, self._speaker_for_args(stmt.args))
        output = Panel("Peak", "output", (bubble,))
        self._emit(Row(stmt.line, path or None, executed, (*self._indents(stmt.depth), output)))

    def _call_row(self, stmt: f.CallStmt, story_line: st.StoryLine, path: tr.IterPath, live: bool) -> None:
        effects = self.index.effects_of_call(stmt.line, path)
        executed = live and self.index.call_ran(stmt.line, path)
        panels = [Panel("Initial", "statement", (Text(st.render_line(story_line)),))]
        for event in effects:
            if isinstance(event, tr.Printed):
                panels.append(Panel("Release", "output", (SpeechBubble(event.text, STICK_FIGURE),)))
            elif isinstance(event, tr.Returned):
                panels.append(Panel("Release", "output", (Text(f"gives back {tr.render_value(event.value)}"),)))
        self._emit(Row(stmt.line, path or None, executed, (*self._indents(stmt.depth), *panels)))

    def _loop(self, stmt: f.While | f.ForRange, story_line: st.StoryLine, path: tr.IterPath, live: bool) -> None:
        traced = self.index.iteration_count(stmt.line, path)
        shown = min(traced, self.options.iterations_shown)
        for k in range(shown):
            self._emit(self._marker_row(stmt, story_line, path, k))
            self.walk_block(stmt.body, path + ((stmt.line, k),), live=True)
        more = shown < traced or stmt.line in self.index.capped_lines
        if more and self.options.ellipsis_on_truncation:
            boundary_text = ELLIPSIS_TEXT
        elif more:
            boundary_text = ""
        else:
            boundary_text = LOOP_DONE_TEXT
        boundary = Panel("Release", "ellipsis", (Text(boundary_text),))
        reached = live and (traced > 0 or bool(self.index.events_at(stmt.line, path)))
        self._emit(Row(stmt.line, path or None, reached, (*self._indents(stmt.depth + 1), boundary)))

    def _marker_row(self, stmt: f.While | f.ForRange, story_line: st.StoryLine, path: tr.IterPath, k: int) -> Row:
        if isinstance(stmt, f.ForRange):
            marker = Panel("Establisher", "iteration-marker", (Text(f"{stmt.var} = {k}"),))
            header = Panel("Initial", "statement", (Text(st.render_line(story_line)),))
            panels = (marker, header)
        else:
            marker = Panel("Establisher", "iteration-marker", (Text(f"round {k}"),))
            question = Panel("Initial", "question", (Text(st.question_text(story_line)),))
            answer = Panel("Prolongation", "answer", (SpeechBubble("yes", STICK_FIGURE),))
            panels = (marker, question, answer)
        iteration = path + ((stmt.line, k),)
        return Row(stmt.line, iteration, True, (*self._indents(stmt.depth + 1), *panels))

    def _func_def(self, stmt: f.FuncDef, story_line: st.StoryLine, live: bool) -> None:
        figure = Character()
        name_slot = story_line.slot_of_kind("function-name")
        intro = Panel("Establisher", "intro", (figure, Text(name_slot.text if name_slot else stmt.name)))
        header = Panel("Initial", "statement", (Text(st.render_line(story_line)),))
        self._emit(Row(stmt.line, None, live, (*self._indents(stmt.depth), intro, header)))
        for child in f.walk(stmt.body):
            child_line = self.lines[child.line]
            if isinstance(child, (f.If, f.While)):
                panel = Panel("Peak", "question", (Text(st.question_text(child_line)),))
            else:
                panel = Panel("Peak", "statement", (Text(st.render_line(child_line)),))
            self._emit(Row(child.line, None, live, (*self._indents(child.depth), panel)))


def compose(
    ast: f.CodeAst,
    template: st.StoryTemplate,
    trace: tr.ExecutionTrace,
    options: ComposeOptions | None = None,
    sprites: SpriteSet | None = None,
) -> ComicDoc:
    """Build the comic document.

    `template` and `trace` must have been derived from `ast`. When a sprite
    set is given, object fills are matched against its categories to pick
    panel images; otherwise the normalized fill text is used as-is and the
    renderer falls back to a labeled placeholder.
    """
    options = options or ComposeOptions()
    ast_print = f.fingerprint(ast)
    if template.source_fingerprint != ast_print or trace.source_fingerprint != ast_print:
        raise MismatchedInputs("template or trace was not built from this code")
    composer = _Composer(ast, template, trace, options, sprites)
    composer.walk_block(ast.statements, (), live=True)
    return ComicDoc(
        rows=tuple(composer.rows),
        dim_unexecuted=options.show_unexecuted == "dimmed",
        source_fingerprint=ast_print,
        template_skeleton=st.skeleton_fingerprint(template),
    )


def update(
    doc: ComicDoc,
    ast: f.CodeAst,
    new_template: st.StoryTemplate,
    trace: tr.ExecutionTrace,
    options: ComposeOptions | None = None,
    sprites: SpriteSet | None = None,
) -> ComicDoc:
    """Re-render content after fill changes, keeping the grid identical.

    The new template must share the original's skeleton (same lines, same
    slot ids); otherwise the comic's structure would no longer describe the
    code and StructureChanged is raised.
    """
    if st.skeleton_fingerprint(new_template) != doc.template_skeleton:
        raise StructureChanged("story template skeleton differs from the composed comic")
    if f.fingerprint(ast) != doc.source_fingerprint:
        raise StructureChanged("code differs from the composed comic")
    return compose(ast, new_template, trace, options, sprites)


# ── serialization ───────────────────────────────────────────


def element_to_json(element: Element) -> dict:
    if isinstance(element, Text):
        return {"type": "text", "content": element.content}
    if isinstance(element, SpeechBubble):
        return {"type": "bubble", "content": element.content, "speaker": element.speaker}
    if isinstance(element, SpriteRef):
        return {"type": "sprite", "category": element.category, "label": element.label}
    if isinstance(element, Character):
        return {"type": "character"}
    raise TypeError(f"not an element: {element!r}")


def element_from_json(node: dict) -> Element:
    kind = node["type"]
    if kind == "text":
        return Text(node["content"])
    if kind == "bubble":
        return SpeechBubble(node["content"], node["speaker"])
    if kind == "sprite":
        return SpriteRef(node["category"], node.get("label"))
    if kind == "character":
        return Character()
    raise ValueError(f"unknown element type {kind!r}")


def doc_to_json(doc: ComicDoc) -> dict:
    return {
        "version": 1,
        "source_fingerprint": doc.source_fingerprint,
        "template_skeleton": doc.template_skeleton,
        "dim_unexecuted": doc.dim_unexecuted,
        "rows": [
            {
                "code_line": row.code_line,
                "iteration": None if row.iteration is None else [list(p) for p in row.iteration],
                "executed": row.executed,
                "panels": [
                    {
                        "phase": panel.phase,
                        "kind": panel.kind,
                        "elements": [element_to_json(e) for e in panel.elements],
                    }
                    for panel in row.panels
                ],
            }
            for row in doc.rows
        ],
    }


def doc_from_json(node: dict) -> ComicDoc:
    rows = tuple(
        Row(
            code_line=raw["code_line"],
            iteration=None if raw["iteration"] is None else tuple((p[0], p[1]) for p in raw["iteration"]),
            executed=raw["executed"],
            panels=tuple(
                Panel(p["phase"], p["kind"], tuple(element_from_json(e) for e in p["elements"]))
                for p in raw["panels"]
            ),
        )
        for raw in node["rows"]
    )
    return ComicDoc(rows, node["dim_unexecuted"], node["source_fingerprint"], node["template_skeleton"])

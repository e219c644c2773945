"""Concrete execution of a CodeAst into an ordered event trace.

The trace supplies the comic with runtime content: condition outcomes for
answer bubbles, per-iteration loop values, and printed output. Values are
integers, booleans, and strings only. Loops are bounded by an iteration
cap; a trace that was cut short is marked truncated. A runtime fault stops
execution but still returns the events recorded so far, so downstream
stages can render structure for faulty programs.

`iter_path` identifies the dynamic loop iteration an event belongs to as a
sequence of (loop-line, index) pairs; `call_path` does the same for inlined
user-function calls as a stack of call-site lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import frontend as f
from .errors import RuntimeFault

Value = int | bool | str
IterPath = tuple[tuple[int, int], ...]

MAX_CALL_DEPTH = 8


@dataclass(frozen=True)
class TraceLimits:
    max_iterations_per_loop: int = 3
    max_total_events: int = 500

    def __post_init__(self):
        if self.max_iterations_per_loop < 1 or self.max_total_events < 1:
            raise ValueError("trace limits must be positive")


@dataclass(frozen=True)
class Event:
    line: int
    iter_path: IterPath
    call_path: tuple[int, ...]


@dataclass(frozen=True)
class Assigned(Event):
    var: str
    value: Value


@dataclass(frozen=True)
class CondEvaluated(Event):
    outcome: bool


@dataclass(frozen=True)
class IterationBegan(Event):
    loop_var: str | None
    index: int


@dataclass(frozen=True)
class Printed(Event):
    text: str


@dataclass(frozen=True)
class Returned(Event):
    value: Value


@dataclass(frozen=True)
class ExecutionTrace:
    events: tuple[Event, ...]
    truncated: bool
    fault: RuntimeFault | None
    source_fingerprint: str
    capped_loop_lines: tuple[int, ...] = ()  # loops stopped early by the cap


def render_value(value: Value) -> str:
    """How a value prints: True/False for booleans, bare text for strings."""
    if value is True:
        return "True"
    if value is False:
        return "False"
    return str(value)


class _EventLimit(Exception):
    pass


class _ReturnSignal(Exception):
    def __init__(self, value: Value | None):
        self.value = value


@dataclass
class _Frame:
    env: dict[str, Value] = field(default_factory=dict)


class _Interpreter:
    def __init__(self, ast: f.CodeAst, limits: TraceLimits):
        self.limits = limits
        self.events: list[Event] = []
        self.truncated = False
        self.capped_lines: set[int] = set()
        self.functions: dict[str, f.FuncDef] = {}
        for stmt in f.walk(ast.statements):
            if isinstance(stmt, f.FuncDef):
                self.functions[stmt.name] = stmt

    def emit(self, event: Event) -> None:
        if len(self.events) >= self.limits.max_total_events:
            raise _EventLimit()
        self.events.append(event)

    # ── statements ──────────────────────────────────────────

    def run_block(self, body: tuple[f.Stmt, ...], frame: _Frame, path: IterPath, calls: tuple[int, ...]) -> None:
        for stmt in body:
            self.run_stmt(stmt, frame, path, calls)

    def run_stmt(self, stmt: f.Stmt, frame: _Frame, path: IterPath, calls: tuple[int, ...]) -> None:
        if isinstance(stmt, f.Assign):
            value = self.eval(stmt.value, frame, stmt.line, path, calls)
            frame.env[stmt.target] = value
            self.emit(Assigned(stmt.line, path, calls, stmt.target, value))
        elif isinstance(stmt, f.If):
            outcome = bool(self.eval(stmt.cond, frame, stmt.line, path, calls))
            self.emit(CondEvaluated(stmt.line, path, calls, outcome))
            if outcome:
                self.run_block(stmt.body, frame, path, calls)
        elif isinstance(stmt, f.While):
            index = 0
            while True:
                outcome = bool(self.eval(stmt.cond, frame, stmt.line, path, calls))
                self.emit(CondEvaluated(stmt.line, path, calls, outcome))
                if not outcome:
                    break
                if index >= self.limits.max_iterations_per_loop:
                    self.truncated = True
                    self.capped_lines.add(stmt.line)
                    break
                self.emit(IterationBegan(stmt.line, path, calls, None, index))
                self.run_block(stmt.body, frame, path + ((stmt.line, index),), calls)
                index += 1
        elif isinstance(stmt, f.ForRange):
            count = self.eval(stmt.count, frame, stmt.line, path, calls)
            if type(count) is not int:
                raise RuntimeFault(stmt.line, "type-mismatch")
            total = max(count, 0)
            shown = min(total, self.limits.max_iterations_per_loop)
            if total > shown:
                self.truncated = True
                self.capped_lines.add(stmt.line)
            for index in range(shown):
                self.emit(IterationBegan(stmt.line, path, calls, stmt.var, index))
                frame.env[stmt.var] = index
                self.run_block(stmt.body, frame, path + ((stmt.line, index),), calls)
        elif isinstance(stmt, f.FuncDef):
            pass  # bound up front; definition itself produces no event
        elif isinstance(stmt, f.CallStmt):
            if stmt.callee == "print":
                values = [self.eval(a, frame, stmt.line, path, calls) for a in stmt.args]
                self.emit(Printed(stmt.line, path, calls, " ".join(render_value(v) for v in values)))
            else:
                self.call_function(stmt.callee, stmt.args, frame, stmt.line, path, calls)
        elif isinstance(stmt, f.Return):
            value = self.eval(stmt.value, frame, stmt.line, path, calls)
            self.emit(Returned(stmt.line, path, calls, value))
            raise _ReturnSignal(value)
        else:
            raise TypeError(f"not a statement: {stmt!r}")

    def call_function(
        self,
        callee: str,
        args: tuple[f.Expr, ...],
        frame: _Frame,
        line: int,
        path: IterPath,
        calls: tuple[int, ...],
    ) -> Value | None:
        fn = self.functions.get(callee)
        if fn is None:
            raise RuntimeFault(line, "undefined-function")
        if len(args) != len(fn.params):
            raise RuntimeFault(line, "type-mismatch")
        if len(calls) >= MAX_CALL_DEPTH:
            raise RuntimeFault(line, "recursion-limit")
        values = [self.eval(a, frame, line, path, calls) for a in args]
        local = _Frame(env=dict(zip(fn.params, values)))
        try:
            self.run_block(fn.body, local, path, calls + (line,))
        except _ReturnSignal as signal:
            return signal.value
        return None

    # ── expressions ─────────────────────────────────────────

    def eval(self, expr: f.Expr, frame: _Frame, line: int, path: IterPath, calls: tuple[int, ...]) -> Value:
        if isinstance(expr, (f.IntLit, f.BoolLit, f.StrLit)):
            return expr.value
        if isinstance(expr, f.Name):
            if expr.ident not in frame.env:
                raise RuntimeFault(line, "undefined-name")
            return frame.env[expr.ident]
        if isinstance(expr, f.BinOp):
            left = self.eval(expr.left, frame, line, path, calls)
            right = self.eval(expr.right, frame, line, path, calls)
            if type(left) is not int or type(right) is not int:
                raise RuntimeFault(line, "type-mismatch")
            if expr.op == "+":
                return left + right
            if expr.op == "-":
                return left - right
            if expr.op == "*":
                return left * right
            if right == 0:
                raise RuntimeFault(line, "division-by-zero")
            return left // right  # integer division, rounded down
        if isinstance(expr, f.Compare):
            left = self.eval(expr.left, frame, line, path, calls)
            right = self.eval(expr.right, frame, line, path, calls)
            if type(left) is not type(right):
                raise RuntimeFault(line, "type-mismatch")
            if expr.op == "==":
                return left == right
            if expr.op == "!=":
                return left != right
            if type(left) is bool:
                raise RuntimeFault(line, "type-mismatch")  # no ordering on booleans
            if expr.op == "<":
                return left < right
            if expr.op == ">":
                return left > right
            if expr.op == "<=":
                return left <= right
            return left >= right
        if isinstance(expr, f.Call):
            if expr.callee == "print":
                raise RuntimeFault(line, "type-mismatch")  # print has no value
            result = self.call_function(expr.callee, expr.args, frame, line, path, calls)
            if result is None:
                raise RuntimeFault(line, "type-mismatch")  # function returned nothing
            return result
        raise TypeError(f"not an expression: {expr!r}")


def trace(ast: f.CodeAst, limits: TraceLimits | None = None) -> ExecutionTrace:
    """Execute the program and return its event trace.

    Never raises for runtime failures: the fault is recorded on the trace
    and the events gathered so far are kept. A top-level `return` simply
    ends the program.
    """
    limits = limits or TraceLimits()
    interp = _Interpreter(ast, limits)
    fault: RuntimeFault | None = None
    try:
        interp.run_block(ast.statements, _Frame(), (), ())
    except RuntimeFault as rf:
        fault = rf
    except _ReturnSignal:
        pass
    except _EventLimit:
        interp.truncated = True
    return ExecutionTrace(
        events=tuple(interp.events),
        truncated=interp.truncated,
        fault=fault,
        source_fingerprint=f.fingerprint(ast),
        capped_loop_lines=tuple(sorted(interp.capped_lines)),
    )


# ── serialization ───────────────────────────────────────────


def event_to_json(event: Event) -> dict:
    base = {
        "line": event.line,
        "iter_path": [list(p) for p in event.iter_path],
        "call_path": list(event.call_path),
    }
    if isinstance(event, Assigned):
        return {"type": "assigned", **base, "var": event.var, "value": event.value}
    if isinstance(event, CondEvaluated):
        return {"type": "cond-evaluated", **base, "outcome": event.outcome}
    if isinstance(event, IterationBegan):
        return {"type": "iteration-began", **base, "loop_var": event.loop_var, "index": event.index}
    if isinstance(event, Printed):
        return {"type": "printed", **base, "text": event.text}
    if isinstance(event, Returned):
        return {"type": "returned", **base, "value": event.value}
    raise TypeError(f"not an event: {event!r}")


def trace_to_json(tr: ExecutionTrace) -> dict:
    return {
        "version": 1,
        "source_fingerprint": tr.source_fingerprint,
        "truncated": tr.truncated,
        "capped_loop_lines": list(tr.capped_loop_lines),
        "fault": None if tr.fault is None else {"line": tr.fault.line, "kind": tr.fault.kind},
        "events": [event_to_json(e) for e in tr.events],
    }


def event_from_json(node: dict) -> Event:
    kind = node["type"]
    base = (
        node["line"],
        tuple((p[0], p[1]) for p in node["iter_path"]),
        tuple(node["call_path"]),
    )
    if kind == "assigned":
        return Assigned(*base, node["var"], node["value"])
    if kind == "cond-evaluated":
        return CondEvaluated(*base, node["outcome"])
    if kind == "iteration-began":
        return IterationBegan(*base, node["loop_var"], node["index"])
    if kind == "printed":
        return Printed(*base, node["text"])
    if kind == "returned":
        return Returned(*base, node["value"])
    raise ValueError(f"unknown event type {kind!r}")


def trace_from_json(doc: dict) -> ExecutionTrace:
    fault = doc.get("fault")
    return ExecutionTrace(
        events=tuple(event_from_json(e) for e in doc["events"]),
        truncated=doc["truncated"],
        fault=None if fault is None else RuntimeFault(fault["line"], fault["kind"]),
        source_fingerprint=doc["source_fingerprint"],
        capped_loop_lines=tuple(doc.get("capped_loop_lines", ())),
    )

"""Frontend for the supported Python subset.

Parses source text into a typed syntax tree, one statement per source line.
Blocks are introduced by a trailing colon and a fixed-width indent (default
4 spaces); tabs are rejected. Comments are dropped during tokenization, so
a comment-only line does not count as a code line.

Supported statements: assignment, `if` (no else), `while`,
`for <name> in range(<expr>)`, `def`, calls, `return`.
Supported expressions: int/bool/string literals, names, `+ - * /`,
a single comparison (`== != < > <= >=`), and calls.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass

from .errors import ParseError, UnsupportedConstruct

DEFAULT_INDENT_UNIT = 4

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")

_COMPARE_OPS = ("==", "!=", "<=", ">=", "<", ">")
_ADD_OPS = ("+", "-")
_MUL_OPS = ("*", "/")

# Keywords the parser consumes itself.
_KEYWORDS = frozenset({"if", "while", "for", "in", "def", "return", "True", "False"})

# Valid Python we deliberately do not support, mapped to the construct name
# reported in diagnostics.
_REJECTED_KEYWORDS = {
    "else": "else",
    "elif": "elif",
    "class": "class",
    "import": "import",
    "from": "import",
    "try": "try",
    "except": "try",
    "finally": "try",
    "with": "with",
    "lambda": "lambda",
    "global": "global",
    "nonlocal": "nonlocal",
    "pass": "pass",
    "break": "break",
    "continue": "continue",
    "raise": "raise",
    "del": "del",
    "assert": "assert",
    "yield": "yield",
    "async": "async",
    "await": "await",
    "match": "match",
    "and": "boolean operator",
    "or": "boolean operator",
    "not": "boolean operator",
    "is": "is",
    "None": "None",
}


# ── Syntax tree ─────────────────────────────────────────────────


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class StrLit(Expr):
    value: str


@dataclass(frozen=True)
class Name(Expr):
    ident: str


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Compare(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call(Expr):
    callee: str
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class Stmt:
    line: int
    depth: int


@dataclass(frozen=True)
class Assign(Stmt):
    target: str
    value: Expr


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    body: tuple[Stmt, ...]


@dataclass(frozen=True)
class While(Stmt):
    cond: Expr
    body: tuple[Stmt, ...]


@dataclass(frozen=True)
class ForRange(Stmt):
    var: str
    count: Expr
    body: tuple[Stmt, ...]


@dataclass(frozen=True)
class FuncDef(Stmt):
    name: str
    params: tuple[str, ...]
    body: tuple[Stmt, ...]


@dataclass(frozen=True)
class CallStmt(Stmt):
    callee: str
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class Return(Stmt):
    value: Expr


@dataclass(frozen=True)
class CodeAst:
    statements: tuple[Stmt, ...]


# ── Tokenizer ───────────────────────────────────────────────────


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME INT STR OP KW
    text: str
    col: int  # 1-based column in the original line
    value: object = None


def _tokenize(line_text: str, line: int, col_offset: int) -> list[_Token]:
    """Tokenize one source line; comments are skipped entirely."""
    tokens: list[_Token] = []
    i = 0
    n = len(line_text)
    while i < n:
        ch = line_text[i]
        col = col_offset + i + 1
        if ch == " ":
            i += 1
            continue
        if ch == "#":
            break
        if ch in "0123456789":
            m = _INT_RE.match(line_text, i)
            tokens.append(_Token("INT", m.group(), col, int(m.group())))
            i = m.end()
            continue
        if ("a" <= ch <= "z") or ("A" <= ch <= "Z") or ch == "_":
            m = _IDENT_RE.match(line_text, i)
            word = m.group()
            kind = "KW" if word in _KEYWORDS else "NAME"
            tokens.append(_Token(kind, word, col))
            i = m.end()
            continue
        if ch in "\"'":
            value, end = _scan_string(line_text, i, line, col)
            tokens.append(_Token("STR", line_text[i:end], col, value))
            i = end
            continue
        two = line_text[i : i + 2]
        if two in ("==", "!=", "<=", ">=", "+=", "-=", "*=", "/="):
            tokens.append(_Token("OP", two, col))
            i += 2
            continue
        if ch in "=<>+-*/(),:":
            tokens.append(_Token("OP", ch, col))
            i += 1
            continue
        raise ParseError(line, col, f"unexpected character {ch!r}")
    return tokens


def _scan_string(text: str, start: int, line: int, col: int) -> tuple[str, int]:
    quote = text[start]
    out: list[str] = []
    i = start + 1
    escapes = {"n": "\n", "t": "\t", "\\": "\\", '"': '"', "'": "'"}
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            if i + 1 >= len(text):
                raise ParseError(line, col, "unterminated string literal")
            esc = text[i + 1]
            if esc not in escapes:
                raise ParseError(line, col + i - start, f"unknown escape \\{esc}")
            out.append(escapes[esc])
            i += 2
            continue
        if ch == quote:
            return "".join(out), i + 1
        out.append(ch)
        i += 1
    raise ParseError(line, col, "unterminated string literal")


@dataclass(frozen=True)
class _Line:
    number: int
    depth: int
    tokens: list[_Token]


def _logical_lines(text: str, indent_unit: int) -> list[_Line]:
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    lines: list[_Line] = []
    for number, raw in enumerate(text.split("\n"), start=1):
        tab = raw.find("\t")
        if tab >= 0:
            raise ParseError(number, tab + 1, "tab characters are not allowed")
        indent = len(raw) - len(raw.lstrip(" "))
        tokens = _tokenize(raw[indent:], number, indent)
        if not tokens:
            continue  # blank or comment-only line
        if indent % indent_unit:
            raise ParseError(
                number, 1, f"indentation must be a multiple of {indent_unit} spaces"
            )
        lines.append(_Line(number, indent // indent_unit, tokens))
    return lines


# ── Statement parser ────────────────────────────────────────────


class _Parser:
    def __init__(self, lines: list[_Line]):
        self.lines = lines
        self.pos = 0

    def parse_program(self) -> CodeAst:
        statements = self.parse_block(depth=0)
        if self.pos < len(self.lines):
            line = self.lines[self.pos]
            raise ParseError(line.number, 1, "unexpected indent")
        return CodeAst(tuple(statements))

    def parse_block(self, depth: int) -> list[Stmt]:
        out: list[Stmt] = []
        while self.pos < len(self.lines):
            line = self.lines[self.pos]
            if line.depth < depth:
                break
            if line.depth > depth:
                raise ParseError(line.number, 1, "unexpected indent")
            self.pos += 1
            out.append(self.parse_statement(line, depth))
        return out

    def parse_statement(self, line: _Line, depth: int) -> Stmt:
        head = line.tokens[0]
        if head.kind == "KW":
            if head.text == "if":
                return self._compound(line, depth, "if")
            if head.text == "while":
                return self._compound(line, depth, "while")
            if head.text == "for":
                return self._for_range(line, depth)
            if head.text == "def":
                return self._func_def(line, depth)
            if head.text == "return":
                cursor = _Cursor(line)
                cursor.advance()
                value = cursor.parse_expr()
                cursor.expect_end()
                return Return(line.number, depth, value)
            raise ParseError(line.number, head.col, f"unexpected keyword {head.text!r}")
        if head.kind == "NAME":
            if head.text in _REJECTED_KEYWORDS:
                raise UnsupportedConstruct(line.number, _REJECTED_KEYWORDS[head.text])
            return self._simple(line, depth)
        raise ParseError(line.number, head.col, f"unexpected token {head.text!r}")

    def _simple(self, line: _Line, depth: int) -> Stmt:
        cursor = _Cursor(line)
        name = cursor.take().text
        nxt = cursor.peek()
        if nxt is None:
            raise UnsupportedConstruct(line.number, "expression statement")
        if nxt.text == "=":
            cursor.advance()
            value = cursor.parse_expr()
            cursor.expect_end()
            return Assign(line.number, depth, name, value)
        if nxt.text in ("+=", "-=", "*=", "/="):
            raise UnsupportedConstruct(line.number, "augmented assignment")
        if nxt.text == "(":
            args = cursor.parse_call_args()
            cursor.expect_end()
            return CallStmt(line.number, depth, name, args)
        raise UnsupportedConstruct(line.number, "expression statement")

    def _header_cursor(self, line: _Line) -> _Cursor:
        """Cursor positioned after the leading keyword; the trailing colon is
        stripped so condition parsing sees only the expression tokens."""
        last = line.tokens[-1]
        if last.text != ":":
            raise ParseError(line.number, last.col + len(last.text), "expected ':'")
        cursor = _Cursor(line, stop=len(line.tokens) - 1)
        cursor.advance()
        return cursor

    def _body(self, line: _Line, depth: int) -> tuple[Stmt, ...]:
        body = self.parse_block(depth + 1)
        if not body:
            raise ParseError(line.number, 1, "expected an indented block")
        return tuple(body)

    def _compound(self, line: _Line, depth: int, kind: str) -> Stmt:
        cursor = self._header_cursor(line)
        cond = cursor.parse_expr()
        cursor.expect_end()
        body = self._body(line, depth)
        cls = If if kind == "if" else While
        return cls(line.number, depth, cond, body)

    def _for_range(self, line: _Line, depth: int) -> Stmt:
        cursor = self._header_cursor(line)
        var = cursor.expect("NAME").text
        kw = cursor.take()
        if kw.text != "in":
            raise ParseError(line.number, kw.col, "expected 'in'")
        callee = cursor.take()
        if callee.text != "range":
            raise UnsupportedConstruct(line.number, "for over a non-range iterable")
        cursor.expect_op("(")
        count = cursor.parse_expr()
        cursor.expect_op(")")
        cursor.expect_end()
        body = self._body(line, depth)
        return ForRange(line.number, depth, var, count, body)

    def _func_def(self, line: _Line, depth: int) -> Stmt:
        cursor = self._header_cursor(line)
        name = cursor.expect("NAME").text
        cursor.expect_op("(")
        params: list[str] = []
        if not cursor.match_op(")"):
            params.append(cursor.expect("NAME").text)
            while cursor.match_op(","):
                params.append(cursor.expect("NAME").text)
            cursor.expect_op(")")
        cursor.expect_end()
        body = self._body(line, depth)
        return FuncDef(line.number, depth, name, tuple(params), body)


class _Cursor:
    """Token cursor for a single line, with the expression grammar."""

    def __init__(self, line: _Line, stop: int | None = None):
        self.line = line
        self.tokens = line.tokens[: stop if stop is not None else len(line.tokens)]
        self.pos = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> None:
        self.pos += 1

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.line.tokens[-1]
            raise ParseError(self.line.number, last.col + len(last.text), "unexpected end of line")
        self.advance()
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            raise ParseError(self.line.number, tok.col, f"expected {kind}, got {tok.text!r}")
        return tok

    def expect_op(self, text: str) -> _Token:
        tok = self.take()
        if tok.text != text:
            raise ParseError(self.line.number, tok.col, f"expected {text!r}, got {tok.text!r}")
        return tok

    def match_op(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.advance()
            return True
        return False

    def expect_end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(self.line.number, tok.col, f"unexpected token {tok.text!r}")

    # Expression grammar: compare > add > mul > atom. A single comparison
    # only; chained comparisons are outside the subset.
    def parse_expr(self) -> Expr:
        left = self.parse_add()
        tok = self.peek()
        if tok is not None and tok.text in _COMPARE_OPS:
            self.advance()
            right = self.parse_add()
            after = self.peek()
            if after is not None and after.text in _COMPARE_OPS:
                raise UnsupportedConstruct(self.line.number, "chained comparison")
            return Compare(tok.text, left, right)
        return left

    def parse_add(self) -> Expr:
        left = self.parse_mul()
        while True:
            tok = self.peek()
            if tok is None or tok.text not in _ADD_OPS:
                return left
            self.advance()
            left = BinOp(tok.text, left, self.parse_mul())

    def parse_mul(self) -> Expr:
        left = self.parse_atom()
        while True:
            tok = self.peek()
            if tok is None or tok.text not in _MUL_OPS:
                return left
            self.advance()
            left = BinOp(tok.text, left, self.parse_atom())

    def parse_atom(self) -> Expr:
        tok = self.take()
        if tok.kind == "INT":
            return IntLit(tok.value)
        if tok.kind == "STR":
            return StrLit(tok.value)
        if tok.kind == "KW" and tok.text in ("True", "False"):
            return BoolLit(tok.text == "True")
        if tok.text == "-":
            num = self.take()
            if num.kind != "INT":
                raise ParseError(self.line.number, num.col, "expected a number after '-'")
            return IntLit(-num.value)
        if tok.text == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if tok.kind == "NAME":
            if tok.text in _REJECTED_KEYWORDS:
                raise UnsupportedConstruct(self.line.number, _REJECTED_KEYWORDS[tok.text])
            if self.match_op("("):
                args = self._args_after_paren()
                return Call(tok.text, args)
            return Name(tok.text)
        raise ParseError(self.line.number, tok.col, f"unexpected token {tok.text!r}")

    def parse_call_args(self) -> tuple[Expr, ...]:
        self.expect_op("(")
        return self._args_after_paren()

    def _args_after_paren(self) -> tuple[Expr, ...]:
        args: list[Expr] = []
        if self.match_op(")"):
            return tuple(args)
        args.append(self.parse_expr())
        while self.match_op(","):
            args.append(self.parse_expr())
        self.expect_op(")")
        return tuple(args)


def parse(source: str, indent_unit: int = DEFAULT_INDENT_UNIT) -> CodeAst:
    """Parse source text into a CodeAst.

    Raises ParseError for malformed code and UnsupportedConstruct for valid
    Python outside the subset. Every non-blank, non-comment line becomes
    exactly one statement.
    """
    return _Parser(_logical_lines(source, indent_unit)).parse_program()


# ── Pretty printer ──────────────────────────────────────────────

_PREC_COMPARE = 1
_PREC_ADD = 2
_PREC_MUL = 3
_PREC_ATOM = 4


def expr_text(expr: Expr) -> str:
    """Canonical source text of one expression."""
    return _expr_text(expr, 0)


def _expr_text(expr: Expr, parent_prec: int, right_side: bool = False) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, BoolLit):
        return "True" if expr.value else "False"
    if isinstance(expr, StrLit):
        return _quote(expr.value)
    if isinstance(expr, Name):
        return expr.ident
    if isinstance(expr, Call):
        args = ", ".join(_expr_text(a, 0) for a in expr.args)
        return f"{expr.callee}({args})"
    if isinstance(expr, Compare):
        prec = _PREC_COMPARE
        text = f"{_expr_text(expr.left, prec)} {expr.op} {_expr_text(expr.right, prec)}"
    elif isinstance(expr, BinOp):
        prec = _PREC_ADD if expr.op in _ADD_OPS else _PREC_MUL
        left = _expr_text(expr.left, prec)
        right = _expr_text(expr.right, prec, right_side=True)
        text = f"{left} {expr.op} {right}"
    else:
        raise TypeError(f"not an expression: {expr!r}")
    # Parenthesize when the context binds tighter, or equally tight on the
    # right of a left-associative operator (a - (b - c)).
    if prec < parent_prec or (prec == parent_prec and right_side):
        return f"({text})"
    return text


def _quote(value: str) -> str:
    body = value.replace("\\", "\\\\").replace('"', '\\"')
    body = body.replace("\n", "\\n").replace("\t", "\\t")
    return f'"{body}"'


def pretty_print(ast: CodeAst, indent_unit: int = DEFAULT_INDENT_UNIT) -> str:
    """Canonical source text; parsing it back yields a structurally equal tree."""
    out: list[str] = []

    def emit(stmt: Stmt, depth: int) -> None:
        pad = " " * (indent_unit * depth)
        if isinstance(stmt, Assign):
            out.append(f"{pad}{stmt.target} = {expr_text(stmt.value)}")
        elif isinstance(stmt, If):
            out.append(f"{pad}if {expr_text(stmt.cond)}:")
            for child in stmt.body:
                emit(child, depth + 1)
        elif isinstance(stmt, While):
            out.append(f"{pad}while {expr_text(stmt.cond)}:")
            for child in stmt.body:
                emit(child, depth + 1)
        elif isinstance(stmt, ForRange):
            out.append(f"{pad}for {stmt.var} in range({expr_text(stmt.count)}):")
            for child in stmt.body:
                emit(child, depth + 1)
        elif isinstance(stmt, FuncDef):
            params = ", ".join(stmt.params)
            out.append(f"{pad}def {stmt.name}({params}):")
            for child in stmt.body:
                emit(child, depth + 1)
        elif isinstance(stmt, CallStmt):
            args = ", ".join(expr_text(a) for a in stmt.args)
            out.append(f"{pad}{stmt.callee}({args})")
        elif isinstance(stmt, Return):
            out.append(f"{pad}return {expr_text(stmt.value)}")
        else:
            raise TypeError(f"not a statement: {stmt!r}")

    for stmt in ast.statements:
        emit(stmt, 0)
    return "\n".join(out) + ("\n" if out else "")


# ── Structural equality and serialization ───────────────────────


def ast_equal(a: CodeAst, b: CodeAst) -> bool:
    """Structural equality ignoring line numbers (pretty-printing renumbers)."""
    return _strip_lines(ast_to_json(a)) == _strip_lines(ast_to_json(b))


def _strip_lines(node: object) -> object:
    if isinstance(node, dict):
        return {k: _strip_lines(v) for k, v in node.items() if k != "line"}
    if isinstance(node, list):
        return [_strip_lines(v) for v in node]
    return node


def expr_to_json(expr: Expr) -> dict:
    if isinstance(expr, IntLit):
        return {"kind": "int", "value": expr.value}
    if isinstance(expr, BoolLit):
        return {"kind": "bool", "value": expr.value}
    if isinstance(expr, StrLit):
        return {"kind": "str", "value": expr.value}
    if isinstance(expr, Name):
        return {"kind": "name", "ident": expr.ident}
    if isinstance(expr, BinOp):
        return {
            "kind": "binop",
            "op": expr.op,
            "left": expr_to_json(expr.left),
            "right": expr_to_json(expr.right),
        }
    if isinstance(expr, Compare):
        return {
            "kind": "compare",
            "op": expr.op,
            "left": expr_to_json(expr.left),
            "right": expr_to_json(expr.right),
        }
    if isinstance(expr, Call):
        return {
            "kind": "call",
            "callee": expr.callee,
            "args": [expr_to_json(a) for a in expr.args],
        }
    raise TypeError(f"not an expression: {expr!r}")


def stmt_to_json(stmt: Stmt) -> dict:
    base = {"line": stmt.line, "depth": stmt.depth}
    if isinstance(stmt, Assign):
        return {"kind": "assign", **base, "target": stmt.target, "value": expr_to_json(stmt.value)}
    if isinstance(stmt, If):
        return {"kind": "if", **base, "cond": expr_to_json(stmt.cond), "body": [stmt_to_json(s) for s in stmt.body]}
    if isinstance(stmt, While):
        return {"kind": "while", **base, "cond": expr_to_json(stmt.cond), "body": [stmt_to_json(s) for s in stmt.body]}
    if isinstance(stmt, ForRange):
        return {
            "kind": "for-range",
            **base,
            "var": stmt.var,
            "count": expr_to_json(stmt.count),
            "body": [stmt_to_json(s) for s in stmt.body],
        }
    if isinstance(stmt, FuncDef):
        return {
            "kind": "func-def",
            **base,
            "name": stmt.name,
            "params": list(stmt.params),
            "body": [stmt_to_json(s) for s in stmt.body],
        }
    if isinstance(stmt, CallStmt):
        return {"kind": "call", **base, "callee": stmt.callee, "args": [expr_to_json(a) for a in stmt.args]}
    if isinstance(stmt, Return):
        return {"kind": "return", **base, "value": expr_to_json(stmt.value)}
    raise TypeError(f"not a statement: {stmt!r}")


def ast_to_json(ast: CodeAst) -> dict:
    return {"version": 1, "statements": [stmt_to_json(s) for s in ast.statements]}


def expr_from_json(node: dict) -> Expr:
    kind = node["kind"]
    if kind == "int":
        return IntLit(node["value"])
    if kind == "bool":
        return BoolLit(node["value"])
    if kind == "str":
        return StrLit(node["value"])
    if kind == "name":
        return Name(node["ident"])
    if kind == "binop":
        return BinOp(node["op"], expr_from_json(node["left"]), expr_from_json(node["right"]))
    if kind == "compare":
        return Compare(node["op"], expr_from_json(node["left"]), expr_from_json(node["right"]))
    if kind == "call":
        return Call(node["callee"], tuple(expr_from_json(a) for a in node["args"]))
    raise ValueError(f"unknown expression kind {kind!r}")


def stmt_from_json(node: dict) -> Stmt:
    kind = node["kind"]
    line, depth = node["line"], node["depth"]
    if kind == "assign":
        return Assign(line, depth, node["target"], expr_from_json(node["value"]))
    if kind == "if":
        return If(line, depth, expr_from_json(node["cond"]), tuple(stmt_from_json(s) for s in node["body"]))
    if kind == "while":
        return While(line, depth, expr_from_json(node["cond"]), tuple(stmt_from_json(s) for s in node["body"]))
    if kind == "for-range":
        return ForRange(
            line, depth, node["var"], expr_from_json(node["count"]), tuple(stmt_from_json(s) for s in node["body"])
        )
    if kind == "func-def":
        return FuncDef(line, depth, node["name"], tuple(node["params"]), tuple(stmt_from_json(s) for s in node["body"]))
    if kind == "call":
        return CallStmt(line, depth, node["callee"], tuple(expr_from_json(a) for a in node["args"]))
    if kind == "return":
        return Return(line, depth, expr_from_json(node["value"]))
    raise ValueError(f"unknown statement kind {kind!r}")


def ast_from_json(doc: dict) -> CodeAst:
    return CodeAst(tuple(stmt_from_json(s) for s in doc["statements"]))


def fingerprint(ast: CodeAst) -> str:
    """Stable hash of the tree, used to check template/trace provenance."""
    blob = json.dumps(ast_to_json(ast), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def walk(statements: tuple[Stmt, ...]):
    """Yield every statement in source order, depth-first."""
    for stmt in statements:
        yield stmt
        if isinstance(stmt, (If, While, ForRange, FuncDef)):
            yield from walk(stmt.body)


def statement_lines(ast: CodeAst) -> list[int]:
    """Line numbers of all statements in source order."""
    return [s.line for s in walk(ast.statements)]

"""Exception types shared across the pipeline.

Every error that can surface to a CLI or HTTP caller carries enough
structure (line numbers, machine-readable codes) to build a diagnostic
without parsing the message string.
"""

from __future__ import annotations


class CodestripError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def payload(self) -> dict:
        """Machine-readable form used by the CLI and HTTP service."""
        return {"error": self.code, "detail": str(self)}


class ParseError(CodestripError):
    """Malformed source text (bad indentation, stray tokens, ...)."""

    code = "syntax-error"

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message

    def payload(self) -> dict:
        return {"error": self.code, "line": self.line, "detail": self.message}


class UnsupportedConstruct(CodestripError):
    """Syntactically valid Python that falls outside the supported subset."""

    code = "unsupported-construct"

    def __init__(self, line: int, construct: str):
        super().__init__(f"unsupported construct: {construct} at line {line}")
        self.line = line
        self.construct = construct

    def payload(self) -> dict:
        return {"error": self.code, "line": self.line, "detail": self.construct}


class RuntimeFault(CodestripError):
    """Concrete execution failed at `line`; `kind` names the failure class."""

    code = "runtime-fault"

    KINDS = (
        "undefined-name",
        "type-mismatch",
        "division-by-zero",
        "undefined-function",
        "recursion-limit",
    )

    def __init__(self, line: int, kind: str):
        super().__init__(f"{kind} at line {line}")
        self.line = line
        self.kind = kind

    def payload(self) -> dict:
        return {"error": self.code, "line": self.line, "detail": self.kind}


class UnknownSlot(CodestripError):
    code = "unknown-slot"

    def __init__(self, slot_id: str):
        super().__init__(f"no such slot: {slot_id!r}")
        self.slot_id = slot_id


class EmptyFill(CodestripError):
    code = "empty-fill"

    def __init__(self, slot_id: str):
        super().__init__(f"fill for slot {slot_id!r} is empty")
        self.slot_id = slot_id


class LexiconFormatError(CodestripError):
    code = "lexicon-format"


class SpriteFormatError(CodestripError):
    code = "sprite-format"


class UnknownKind(CodestripError):
    code = "unknown-kind"

    def __init__(self, kind: str):
        super().__init__(f"no suggestions for slot kind {kind!r}")
        self.kind = kind


class MismatchedInputs(CodestripError):
    """Template or trace was not derived from the given syntax tree."""

    code = "mismatched-inputs"


class StructureChanged(CodestripError):
    """Fills refer to a template skeleton that no longer matches the code."""

    code = "structure-changed"

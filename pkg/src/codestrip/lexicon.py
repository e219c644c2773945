"""Ranked fill suggestions for story slots.

Object suggestions come from a fixed list of 345 sketch category names (the
same names the sprite library draws from), verb suggestions from per-operator
synonym lists. Suggestions back the dropdowns in the authoring UI; they are
hints, never constraints — any text can fill a slot.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import LexiconFormatError, UnknownKind
from .story import OPERATOR_VERBS

CATEGORY_COUNT = 345


@dataclass(frozen=True)
class Lexicon:
    object_categories: tuple[str, ...]
    verb_sets: dict[str, tuple[str, ...]]  # keyed by operator: = == != < > <= >=
    keyword_verbs: dict[str, tuple[str, ...]]  # keyed by builtin/keyword: print, return


def _validate_verb_list(key: str, verbs: object) -> tuple[str, ...]:
    if not isinstance(verbs, list) or not verbs:
        raise LexiconFormatError(f"verb list for {key!r} must be a non-empty array")
    out: list[str] = []
    for verb in verbs:
        if not isinstance(verb, str) or not verb.strip():
            raise LexiconFormatError(f"verb list for {key!r} contains a non-string or blank entry")
        if verb in out:
            raise LexiconFormatError(f"duplicate verb {verb!r} for {key!r}")
        out.append(verb)
    return tuple(out)


def parse_lexicon(doc: object) -> Lexicon:
    if not isinstance(doc, dict):
        raise LexiconFormatError("lexicon must be a JSON object")
    categories = doc.get("categories")
    if not isinstance(categories, list):
        raise LexiconFormatError("missing 'categories' array")
    seen: set[str] = set()
    for name in categories:
        if not isinstance(name, str) or not name or name != name.lower():
            raise LexiconFormatError(f"category {name!r} must be a lowercase string")
        if name in seen:
            raise LexiconFormatError(f"duplicate category {name!r}")
        seen.add(name)
    if len(categories) != CATEGORY_COUNT:
        raise LexiconFormatError(f"expected {CATEGORY_COUNT} categories, found {len(categories)}")
    verbs = doc.get("verbs")
    if not isinstance(verbs, dict) or "=" not in verbs:
        raise LexiconFormatError("missing 'verbs' object with at least the '=' entry")
    verb_sets: dict[str, tuple[str, ...]] = {}
    keyword_verbs: dict[str, tuple[str, ...]] = {}
    for key, entry in verbs.items():
        checked = _validate_verb_list(key, entry)
        if key in OPERATOR_VERBS:
            verb_sets[key] = checked
        else:
            keyword_verbs[key] = checked
    return Lexicon(tuple(categories), verb_sets, keyword_verbs)


def load_lexicon(path: str | Path | None = None) -> Lexicon:
    """Load and validate a lexicon file; `None` loads the bundled default."""
    if path is None:
        text = resources.files("codestrip.data").joinpath("lexicon.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LexiconFormatError(f"not valid JSON: {exc}") from exc
    return parse_lexicon(doc)


def suggest(
    lexicon: Lexicon,
    kind: str,
    prefix: str | None = None,
    limit: int = 10,
    key: str | None = None,
) -> list[str]:
    """Ordered suggestions for one slot kind.

    `key` picks the verb list: the operator for kind="verb" (default "="),
    the callee for kind="action" (default "print"). Objects are filtered by
    case-insensitive prefix and come back alphabetical.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if kind == "object":
        pool: tuple[str, ...] = lexicon.object_categories
        candidates = sorted(pool)
    elif kind == "verb":
        candidates = list(lexicon.verb_sets.get(key or "=", ()))
    elif kind == "action":
        candidates = list(lexicon.keyword_verbs.get(key or "print", ()))
    else:
        raise UnknownKind(kind)
    if prefix:
        needle = prefix.lower()
        candidates = [c for c in candidates if c.lower().startswith(needle)]
    return candidates[:limit]

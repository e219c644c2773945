"""File-backed persistence of authoring sessions.

A project is the restartable session state: code text, slot fills, and
compose options. Projects are plain JSON files keyed by a generated id;
writes are serialized per id and atomic (write-then-rename).
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from pathlib import Path

from .composer import options_from_json
from .errors import StructureChanged
from .pipeline import story_template_for

PROJECT_VERSION = 1

_ID_RE = re.compile(r"[0-9a-f]{32}")


def validate_project(doc: dict) -> dict:
    """Check the invariants: schema version, parseable code, and fills that
    refer only to slots the code actually produces."""
    if not isinstance(doc, dict):
        raise StructureChanged("project must be a JSON object")
    version = doc.get("version", PROJECT_VERSION)
    if version != PROJECT_VERSION:
        raise StructureChanged(f"unsupported project version {version!r}")
    code = doc.get("code", "")
    if not isinstance(code, str):
        raise StructureChanged("project code must be a string")
    fills = doc.get("fills", {})
    if not isinstance(fills, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in fills.items()
    ):
        raise StructureChanged("project fills must map slot ids to text")
    template = story_template_for(code)  # raises parse diagnostics as-is
    known = set(template.slot_ids())
    stale = sorted(set(fills) - known)
    if stale:
        raise StructureChanged(f"fills reference unknown slots: {', '.join(stale)}")
    options = options_from_json(doc.get("options"))
    return {
        "version": PROJECT_VERSION,
        "code": code,
        "fills": fills,
        "options": {
            "show_unexecuted": options.show_unexecuted,
            "iterations_shown": options.iterations_shown,
            "ellipsis_on_truncation": options.ellipsis_on_truncation,
        },
    }


class ProjectStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._registry_lock = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}

    def _lock_for(self, project_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(project_id, threading.Lock())

    def _path(self, project_id: str) -> Path:
        return self.root / f"{project_id}.json"

    def save(self, doc: dict, project_id: str | None = None) -> str:
        checked = validate_project(doc)
        project_id = project_id or uuid.uuid4().hex
        if not _ID_RE.fullmatch(project_id):
            raise StructureChanged(f"invalid project id {project_id!r}")
        with self._lock_for(project_id):
            tmp = self._path(project_id).with_suffix(".tmp")
            tmp.write_text(json.dumps(checked, indent=2), "utf-8")
            tmp.replace(self._path(project_id))
        return project_id

    def load(self, project_id: str) -> dict | None:
        if not _ID_RE.fullmatch(project_id):
            return None
        with self._lock_for(project_id):
            path = self._path(project_id)
            if not path.is_file():
                return None
            return json.loads(path.read_text("utf-8"))

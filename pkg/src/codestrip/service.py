"""HTTP service around the pipeline, consumed by the browser UI.

Every handler runs the same pure pipeline the CLI uses; immutable resources
(lexicon, sprites, examples) are shared across requests, and the project
store serializes writes per id. Pipeline errors surface as 400 responses
with a machine-readable body: {"error", "line", "detail"}.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .composer import doc_to_json, options_from_json
from .errors import CodestripError
from .lexicon import suggest
from .pipeline import Resources, comic_for, story_template_for
from .projects import ProjectStore
from .sprites import get as get_sprite
from .sprites import sprite_to_json
from .story import template_to_json


class StoryRequest(BaseModel):
    code: str


class ComicRequest(BaseModel):
    code: str
    fills: dict[str, str] = Field(default_factory=dict)
    options: dict | None = None


class ProjectRequest(BaseModel):
    code: str
    fills: dict[str, str] = Field(default_factory=dict)
    options: dict | None = None


def create_app(resources: Resources, project_root: str | Path, webapp_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="codestrip", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = ProjectStore(project_root)

    @app.exception_handler(CodestripError)
    async def pipeline_error(_: Request, exc: CodestripError) -> JSONResponse:
        payload = exc.payload()
        payload.setdefault("line", None)
        return JSONResponse(status_code=400, content=payload)

    @app.post("/api/story-template")
    def story_template(req: StoryRequest) -> JSONResponse:
        return JSONResponse(template_to_json(story_template_for(req.code)))

    @app.post("/api/comic")
    def comic(req: ComicRequest) -> JSONResponse:
        try:
            options = options_from_json(req.options)
        except ValueError as exc:
            return JSONResponse(status_code=400, content={"error": "invalid-options", "line": None, "detail": str(exc)})
        doc, svg = comic_for(req.code, req.fills, options, resources.sprites)
        return JSONResponse({"comic_doc": doc_to_json(doc), "svg": svg.decode("utf-8")})

    @app.get("/api/suggest")
    def suggestions(kind: str, prefix: str = "", limit: int = 10, key: str | None = None) -> JSONResponse:
        limit = max(1, min(limit, 400))
        out = suggest(resources.lexicon, kind, prefix or None, limit, key)
        return JSONResponse({"suggestions": out})

    @app.get("/api/sprites/{category}")
    def sprite(category: str) -> JSONResponse:
        found = get_sprite(resources.sprites, category)
        record = sprite_to_json(found)
        record["label"] = found.label
        return JSONResponse(record)

    @app.get("/api/examples")
    def examples() -> JSONResponse:
        return JSONResponse({"examples": resources.examples})

    @app.post("/api/project")
    def save_project(req: ProjectRequest) -> JSONResponse:
        project_id = store.save({"code": req.code, "fills": req.fills, "options": req.options or {}})
        return JSONResponse({"id": project_id})

    @app.get("/api/project/{project_id}")
    def load_project(project_id: str) -> JSONResponse:
        project = store.load(project_id)
        if project is None:
            return JSONResponse(status_code=404, content={"error": "unknown-project", "detail": project_id})
        return JSONResponse(project)

    if webapp_dir is not None and Path(webapp_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(webapp_dir), html=True), name="webapp")

    return app

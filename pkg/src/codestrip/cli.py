"""Command-line interface: storygen, comicgen, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .composer import ComposeOptions, doc_to_json
from .errors import CodestripError, StructureChanged
from .pipeline import comic_for, load_resources, story_template_for
from .story import fills_of, skeleton_fingerprint, template_from_json, template_to_json


def _read_source(path: str) -> str:
    return Path(path).read_text("utf-8")


def cmd_storygen(args: argparse.Namespace) -> int:
    code = _read_source(args.input)
    template = story_template_for(code)
    out = Path(args.out) if args.out else Path(args.input).with_suffix(".story.json")
    out.write_text(json.dumps(template_to_json(template), indent=2) + "\n", "utf-8")
    print(out)
    return 0


def cmd_comicgen(args: argparse.Namespace) -> int:
    code = _read_source(args.input)
    fills: dict[str, str] = {}
    if args.story:
        stored = template_from_json(json.loads(Path(args.story).read_text("utf-8")))
        fresh = story_template_for(code)
        if skeleton_fingerprint(stored) != skeleton_fingerprint(fresh):
            raise StructureChanged("story file does not match the code; regenerate it")
        fills = fills_of(stored)
    options = ComposeOptions(
        show_unexecuted=args.unexecuted,
        iterations_shown=args.iterations,
    )
    resources = load_resources(sprites_path=args.sprites, lexicon_path=args.lexicon)
    doc, svg = comic_for(code, fills, options, resources.sprites)
    out = Path(args.out) if args.out else Path(args.input).with_suffix(".svg")
    out.write_bytes(svg)
    sidecar = out.with_suffix(out.suffix + ".json")
    sidecar.write_text(json.dumps(doc_to_json(doc), indent=2) + "\n", "utf-8")
    print(out)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    resources = load_resources(sprites_path=args.sprites, lexicon_path=args.lexicon)
    app = create_app(resources, args.projects, webapp_dir=args.webapp)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codestrip",
        description="Turn a small program into a story template and a comic strip.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    storygen = sub.add_parser("storygen", help="generate a story template file from code")
    storygen.add_argument("input", help="source file")
    storygen.add_argument("--out", help="template JSON path (default: <input>.story.json)")
    storygen.set_defaults(func=cmd_storygen)

    comicgen = sub.add_parser("comicgen", help="render a comic strip from code (plus optional story fills)")
    comicgen.add_argument("input", help="source file")
    comicgen.add_argument("--story", help="story template JSON with fills")
    comicgen.add_argument("--out", help="SVG output path (default: <input>.svg)")
    comicgen.add_argument("--iterations", type=int, default=3, help="loop iterations to draw (default 3)")
    comicgen.add_argument(
        "--unexecuted",
        choices=("full", "dimmed", "hidden"),
        default="dimmed",
        help="how to draw rows the program never ran",
    )
    comicgen.add_argument("--sprites", help="sprite NDJSON file (default: bundled)")
    comicgen.add_argument("--lexicon", help="lexicon JSON file (default: bundled)")
    comicgen.set_defaults(func=cmd_comicgen)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8023)
    serve.add_argument("--sprites", help="sprite NDJSON file (default: bundled)")
    serve.add_argument("--lexicon", help="lexicon JSON file (default: bundled)")
    serve.add_argument("--projects", default="projects", help="directory for saved projects")
    serve.add_argument("--webapp", help="directory of built web UI to serve at /")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CodestripError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""HTTP JSON API over an immutable knowledge base.

- ``GET /api/meta``: notion ids, feature poset nodes/edges, KB hash.
- ``POST /api/query``: body is a setting (same JSON shape as the KB files);
  the response equals ``fairdiv query --format json`` for that setting.
- Static files (the web UI bundle, if built) are served at ``/``.

The KB is loaded once at startup; requests never mutate anything, so
concurrent handling is trivially safe.  Reloading requires a restart.
"""

from __future__ import annotations

import pathlib

import click
import uvicorn
from fastapi import FastAPI, HTTPException, Request
from fastapi.staticfiles import StaticFiles

from .api import meta_json, query_response_json
from .engine import InconsistencyError, query
from .kb import load_kb
from .settings import setting_from_json

DEFAULT_STATIC_DIR = (
    pathlib.Path(__file__).resolve().parent.parent.parent
    / "frontend" / "dist"
)


def create_app(kb=None, static_dir: str | None = None) -> FastAPI:
    if kb is None:
        kb = load_kb()
    app = FastAPI(title="fair-division implication workbench")
    meta = meta_json(kb)

    @app.get("/api/meta")
    def handle_meta() -> dict:
        return meta

    @app.post("/api/query")
    async def handle_query(request: Request) -> dict:
        try:
            body = await request.json()
            if not isinstance(body, dict):
                raise ValueError("request body must be a JSON object")
            setting = setting_from_json(body.get("setting", body))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        try:
            result = query(kb, setting)
        except InconsistencyError as exc:
            raise HTTPException(
                status_code=500,
                detail=f"knowledge base inconsistency: {exc}",
            ) from exc
        return query_response_json(kb, result)

    static = pathlib.Path(static_dir) if static_dir else DEFAULT_STATIC_DIR
    if static.is_dir():
        app.mount("/", StaticFiles(directory=str(static), html=True))
    return app


@click.command()
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--kb", "kb_path", default=None, help="KB JSON path.")
@click.option("--static", "static_dir", default=None, help="Web UI bundle dir.")
def main(port, host, kb_path, static_dir):
    """Serve the query API (and the web UI, if built)."""
    app = create_app(load_kb(kb_path), static_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()

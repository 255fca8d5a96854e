"""HTTP JSON service.

A thin, stateless layer over the same operation handlers the CLI uses: every
POST body is the flat payload dict, every response is the report dict with
floats rounded exactly as the CLI renders them. Schema problems map to 400,
domain rejections (infeasible correlation, invalid rates, over-budget
simulations) to 422, both as {code, message} objects.
"""
from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from . import config as cfg
from ._version import __version__
from .errors import CompositeError
from .report import round_floats
from .simulate import feasible_cells

DEFAULT_MAX_TOTAL_REPS = 200_000

_OPS = ("derive", "bounds", "size", "power", "recommend", "curve", "simulate")

_PLACEHOLDER = """<!doctype html>
<html>
  <head><title>composize</title></head>
  <body>
    <h1>composize {version}</h1>
    <p>The explorer UI has not been built. The JSON API is live under
    <code>/api/v1/</code>; see <code>/api/v1/health</code>.</p>
  </body>
</html>
"""


def _static_dir(explicit: str | None) -> Path | None:
    candidate = explicit or os.environ.get("COMPOSIZE_STATIC")
    if candidate is None:
        candidate = str(Path(__file__).parent / "static")
    path = Path(candidate)
    if (path / "index.html").is_file():
        return path
    return None


def _simulate_budget_total(payload: dict) -> tuple[int, int]:
    """Total replications a simulate request would run: rows x reps x 2 runs."""
    grid = cfg.grid_config_from(payload)
    rows = len(feasible_cells(grid)) * len(grid.rules) * len(grid.variances)
    return rows, rows * grid.reps * 2


def create_app(
    static_dir: str | None = None, max_total_reps: int | None = None
) -> FastAPI:
    """Build the service; each instance is independent and stateless."""
    if max_total_reps is None:
        max_total_reps = int(os.environ.get("COMPOSIZE_MAX_REPS", DEFAULT_MAX_TOTAL_REPS))

    app = FastAPI(title="composize", version=__version__)

    @app.exception_handler(cfg.SchemaError)
    async def _schema_error(request, exc: cfg.SchemaError):
        return JSONResponse(status_code=400, content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(CompositeError)
    async def _domain_error(request, exc: CompositeError):
        return JSONResponse(status_code=422, content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _body_error(request, exc: RequestValidationError):
        errors = exc.errors()
        missing = any(e.get("type") == "missing" for e in errors)
        code = "schema.missing_field" if missing else "schema.invalid"
        message = "; ".join(e.get("msg", "invalid request") for e in errors[:3])
        return JSONResponse(status_code=400, content={"code": code, "message": message})

    @app.get("/api/v1/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    def _register(op: str) -> None:
        def endpoint(payload: dict) -> JSONResponse:
            if op == "simulate":
                rows, total = _simulate_budget_total(payload)
                if total > max_total_reps:
                    return JSONResponse(
                        status_code=422,
                        content={
                            "code": "simulate.budget_exceeded",
                            "message": (
                                f"request needs {total} replications "
                                f"({rows} rows x 2 runs); the service cap is "
                                f"{max_total_reps}, use the CLI for large grids"
                            ),
                        },
                    )
            return JSONResponse(content=round_floats(cfg.handle(op, payload)))

        endpoint.__name__ = op
        app.post(f"/api/v1/{op}")(endpoint)

    for op in _OPS:
        _register(op)

    static = _static_dir(static_dir)
    if static is not None:
        app.mount("/", StaticFiles(directory=static, html=True), name="ui")
    else:
        @app.get("/", response_class=HTMLResponse)
        def index() -> str:
            return _PLACEHOLDER.format(version=__version__)

    return app

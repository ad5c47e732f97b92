"""FastAPI application exposing the package over HTTP.

Run with ``uvicorn entrogeo.service:app``.  Endpoints accept the same JSON
documents the CLI reads from disk; errors come back as
``{"error": {"code", "category", "message"}}`` with the status determined by
the error category (400 validation, 409 precondition, 500 numeric fault).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse

from ..errors import (
    CATEGORY_NUMERIC,
    CATEGORY_PRECONDITION,
    CATEGORY_VALIDATION,
    EntrogeoError,
)
from ..version import __version__
from . import handlers
from .models import (
    GeometryReportModel,
    GeometryRequest,
    MeasuresReportModel,
    MeasuresRequest,
    QuantumReportModel,
    QuantumRequest,
    SweepRequest,
)

STATUS_BY_CATEGORY = {
    CATEGORY_VALIDATION: 400,
    CATEGORY_PRECONDITION: 409,
    CATEGORY_NUMERIC: 500,
}


def create_app() -> FastAPI:
    app = FastAPI(title="entrogeo", version=__version__)

    @app.exception_handler(EntrogeoError)
    async def _domain_error(_: Request, exc: EntrogeoError) -> JSONResponse:
        return JSONResponse(
            status_code=STATUS_BY_CATEGORY.get(exc.category, 500),
            content=exc.to_payload(),
        )

    @app.exception_handler(RequestValidationError)
    async def _schema_error(_: Request, exc: RequestValidationError) -> JSONResponse:
        # body-schema failures join the same error shape as domain validation
        first = exc.errors()[0] if exc.errors() else {}
        where = ".".join(str(p) for p in first.get("loc", ())) or "body"
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "code": "INVALID_REQUEST",
                    "category": CATEGORY_VALIDATION,
                    "message": f"{where}: {first.get('msg', 'invalid request body')}",
                }
            },
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "tool": "entrogeo", "version": __version__}

    @app.post("/measures", response_model=MeasuresReportModel)
    def measures(req: MeasuresRequest) -> MeasuresReportModel:
        return handlers.run_measures(req)

    @app.post("/geometry", response_model=GeometryReportModel)
    def geometry(req: GeometryRequest) -> GeometryReportModel:
        return handlers.run_geometry(req)

    @app.post("/quantum", response_model=QuantumReportModel)
    def quantum(req: QuantumRequest) -> QuantumReportModel:
        return handlers.run_quantum(req)

    @app.post("/sweep")
    def sweep(req: SweepRequest) -> PlainTextResponse:
        return PlainTextResponse(handlers.run_sweep(req), media_type="text/csv")

    return app


app = create_app()

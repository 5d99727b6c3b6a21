"""FastAPI application exposing the analysis handlers."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..states import PopsDocument, PopsValidationError
from . import handlers, models

app = FastAPI(
    title="locc-lab",
    version=__version__,
    description=(
        "Local distinguishability of orthogonal product-state sets, "
        "LOCC protocol synthesis, and non-commutativity measures."
    ),
)


@app.get("/health", response_model=models.HealthResponse)
def health() -> models.HealthResponse:
    return handlers.health()


@app.get("/corpora", response_model=models.CorporaResponse)
def corpora() -> models.CorporaResponse:
    return handlers.corpora_names()


@app.get("/corpora/{name}", response_model=PopsDocument, response_model_exclude_none=True)
def corpus(name: str) -> dict:
    try:
        return handlers.corpus_document(name)
    except KeyError as exc:
        raise HTTPException(status_code=404, detail=str(exc.args[0])) from exc


@app.post("/analyze", response_model=models.AnalyzeResponse)
def analyze(req: models.AnalyzeRequest) -> models.AnalyzeResponse:
    return _run(handlers.analyze, req)


@app.post("/quantumness", response_model=models.QuantumnessResponse)
def quantumness(req: models.QuantumnessRequest) -> models.QuantumnessResponse:
    return _run(handlers.quantumness, req)


@app.post("/curve", response_model=models.CurveResponse)
def curve(req: models.CurveRequest) -> models.CurveResponse:
    return _run(handlers.curve, req)


@app.post("/oracle", response_model=models.OracleResponse)
def oracle(req: models.OracleRequest) -> models.OracleResponse:
    return _run(handlers.oracle, req)


def _run(handler, req):
    try:
        return handler(req)
    except KeyError as exc:
        raise HTTPException(status_code=404, detail=str(exc.args[0])) from exc
    except (PopsValidationError, ValueError, RuntimeError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc

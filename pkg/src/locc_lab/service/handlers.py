"""Pure request -> response functions behind the HTTP routes and the CLI."""

from __future__ import annotations

import numpy as np

from .. import __version__
from ..corpora import builtin_document, builtin_names
from ..linalg import outer
from ..protocol import (
    bruteforce_indistinguishable,
    classify_with_guarantee,
    distinguish,
    protocol_report,
)
from ..quantumness import NcReport, ensemble_nc, weighted_nc
from ..semiclassical import curve_csv, nc_curve, parse_qc, qc_nc, rho_x_family
from ..states import PopsSet, parse_pops, parse_ensemble, random_complete_pops, side_set
from . import models


def health() -> models.HealthResponse:
    return models.HealthResponse(status="ok", version=__version__)


def corpora_names() -> models.CorporaResponse:
    return models.CorporaResponse(names=builtin_names())


def corpus_document(name: str) -> dict:
    return builtin_document(name)


def _resolve_pops(builtin: str | None, document, tol: float) -> PopsSet:
    if builtin is not None:
        return parse_pops(builtin_document(builtin), tol)
    return parse_pops(document, tol)


def analyze(req: models.AnalyzeRequest) -> models.AnalyzeResponse:
    pops = _resolve_pops(req.builtin, req.document, req.tol)
    cls, guaranteed = classify_with_guarantee(pops, req.tol)
    tree, verdict = distinguish(pops, req.tol, req.max_rounds)
    report = protocol_report(tree, verdict, pops.labels())
    return models.AnalyzeResponse(
        dims=(pops.dim_a, pops.dim_b),
        n_states=len(pops),
        complete=pops.complete,
        classification=cls.value,
        guaranteed_by_class=guaranteed,
        verdict=report["verdict"],
        caveat=report["caveat"],
        rounds=report["rounds"],
        labels=report["labels"],
        stuck_leaves=report["stuck_leaves"],
        partition=report["partition"],
        tree=models.TreeNode.model_validate(report["tree"]),
    )


def _pair_term_models(
    report: NcReport, labels: list[str] | None
) -> list[models.PairTermModel]:
    out = []
    for (i, j) in sorted(report.pair_terms):
        out.append(
            models.PairTermModel(
                i=i,
                j=j,
                label_i=labels[i] if labels else None,
                label_j=labels[j] if labels else None,
                value=report.pair_terms[(i, j)],
            )
        )
    return out


def quantumness(req: models.QuantumnessRequest) -> models.QuantumnessResponse:
    if req.qc is not None:
        state = parse_qc(req.qc, req.tol)
        report = qc_nc(state, req.tol)
        return models.QuantumnessResponse(
            scope="qc-blocks",
            count=len(state.blocks),
            total=report.total,
            pair_terms=_pair_term_models(report, None),
        )
    if req.ensemble is not None:
        ens = parse_ensemble(req.ensemble, req.tol)
        report = weighted_nc(ens, req.tol)
        return models.QuantumnessResponse(
            scope="weighted-ensemble",
            count=len(ens.items),
            total=report.total,
            pair_terms=_pair_term_models(report, None),
        )
    if req.rho_x is not None:
        state = rho_x_family(req.rho_x, req.tol)
        report = qc_nc(state, req.tol)
        return models.QuantumnessResponse(
            scope=f"rho-x({req.rho_x:g})",
            count=len(state.blocks),
            total=report.total,
            pair_terms=_pair_term_models(report, None),
        )
    pops = _resolve_pops(req.builtin, req.document, req.tol)
    locals_ = side_set(pops, req.side)
    labels = pops.labels()
    if req.states is not None:
        by_label = {lab: k for k, lab in enumerate(labels)}
        unknown = [lab for lab in req.states if lab not in by_label]
        if unknown:
            raise ValueError(
                f"unknown state labels {unknown}; known: {', '.join(labels)}"
            )
        picks = [by_label[lab] for lab in req.states]
    else:
        picks = list(range(len(locals_)))
    chosen = [locals_[k] for k in picks]
    report = ensemble_nc([outer(s.vec) for s in chosen], req.tol)
    return models.QuantumnessResponse(
        scope=f"pops-side-{req.side}",
        count=len(chosen),
        total=report.total,
        pair_terms=_pair_term_models(report, [labels[k] for k in picks]),
    )


def curve(req: models.CurveRequest) -> models.CurveResponse:
    rows = nc_curve(req.samples, req.tol)
    return models.CurveResponse(
        samples=req.samples,
        rows=[models.CurvePoint(x=x, n=n) for x, n in rows],
        csv=curve_csv(rows),
    )


def oracle(req: models.OracleRequest) -> models.OracleResponse:
    cases: list[models.OracleCase] = []
    jobs: list[tuple[str, PopsSet]] = []
    names = req.builtins
    if names is None and req.random is None:
        names = builtin_names()
    for name in names or []:
        jobs.append((name, parse_pops(builtin_document(name), req.tol)))
    if req.random is not None:
        m, n = req.random.dims
        for k in range(req.random.count):
            seed = req.random.seed + k
            jobs.append(
                (
                    f"random-{m}x{n}-seed{seed}-depth{req.random.depth}",
                    random_complete_pops(m, n, seed, req.random.depth),
                )
            )
    for name, pops in jobs:
        if len(pops) > 16:
            raise ValueError(
                f"case {name!r} has {len(pops)} states; the witness search is capped at 16"
            )
        _, verdict = distinguish(pops, req.tol)
        found, witness = bruteforce_indistinguishable(pops, req.tol)
        cases.append(
            models.OracleCase(
                name=name,
                dims=(pops.dim_a, pops.dim_b),
                procedure_distinguishable=verdict.distinguishable,
                witness_found=found,
                witness=list(witness) if witness is not None else None,
                agree=verdict.distinguishable == (not found),
            )
        )
    return models.OracleResponse(
        cases=cases, disagreements=sum(not c.agree for c in cases)
    )

"""Request and response models for the analysis service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..semiclassical import QcDocument
from ..states import EnsembleDocument, PopsDocument


class AnalyzeRequest(BaseModel):
    """One product set (builtin name or inline document) to analyze."""

    model_config = ConfigDict(extra="forbid")

    builtin: str | None = None
    document: PopsDocument | None = None
    tol: float = Field(default=1e-8, gt=0.0)
    max_rounds: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.builtin is None) == (self.document is None):
            raise ValueError("provide exactly one of builtin or document")
        return self


class OutcomeModel(BaseModel):
    label: int
    span: list[list[list[float]]]
    block: list[int]


class MeasurementModel(BaseModel):
    side: Literal["A", "B"]
    outcomes: list[OutcomeModel]
    has_complement: bool


class TreeNode(BaseModel):
    """Protocol tree node; children keyed 'aLabel,bLabel' (0 = no measurement)."""

    candidates: list[int]
    action: Literal["leaf", "measure_a", "measure_b", "measure_both"]
    status: Literal["distinguished", "stuck"] | None = None
    measurements: dict[Literal["A", "B"], MeasurementModel | None]
    children: dict[str, "TreeNode"] = {}


TreeNode.model_rebuild()


class AnalyzeResponse(BaseModel):
    dims: tuple[int, int]
    n_states: int
    complete: bool
    classification: str
    guaranteed_by_class: bool
    verdict: Literal["distinguishable", "indistinguishable"]
    caveat: str | None
    rounds: int
    labels: list[str]
    stuck_leaves: list[list[int]]
    partition: list[list[int]]
    tree: TreeNode


class QuantumnessRequest(BaseModel):
    """One operator family to measure.

    Exactly one source: builtin/document (product set, side required, with an
    optional label subset), qc (flagged state), ensemble (weighted densities),
    or rho_x (the builtin one-parameter family).
    """

    model_config = ConfigDict(extra="forbid")

    builtin: str | None = None
    document: PopsDocument | None = None
    qc: QcDocument | None = None
    ensemble: EnsembleDocument | None = None
    rho_x: float | None = None
    side: Literal["A", "B"] | None = None
    states: list[str] | None = None
    tol: float = Field(default=1e-8, gt=0.0)

    @model_validator(mode="after")
    def _consistent(self):
        sources = [self.builtin, self.document, self.qc, self.ensemble, self.rho_x]
        if sum(s is not None for s in sources) != 1:
            raise ValueError(
                "provide exactly one of builtin, document, qc, ensemble, or rho_x"
            )
        pops_source = self.builtin is not None or self.document is not None
        if pops_source and self.side is None:
            raise ValueError("product-set input needs side 'A' or 'B'")
        if not pops_source and (self.side is not None or self.states is not None):
            raise ValueError("side/states only apply to product-set input")
        if self.states is not None and not self.states:
            raise ValueError("states subset must not be empty")
        return self


class PairTermModel(BaseModel):
    i: int
    j: int
    label_i: str | None = None
    label_j: str | None = None
    value: float


class QuantumnessResponse(BaseModel):
    scope: str
    count: int
    total: float
    pair_terms: list[PairTermModel]


class CurveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    samples: int = Field(default=101, ge=2, le=1_000_001)
    tol: float = Field(default=1e-8, gt=0.0)


class CurvePoint(BaseModel):
    x: float
    n: float


class CurveResponse(BaseModel):
    samples: int
    rows: list[CurvePoint]
    csv: str


class RandomSweep(BaseModel):
    model_config = ConfigDict(extra="forbid")

    count: int = Field(ge=1, le=100_000)
    dims: tuple[int, int]
    seed: int = 0
    depth: int = Field(default=4, ge=0)


class OracleRequest(BaseModel):
    """Cross-check the procedure against the exhaustive witness search."""

    model_config = ConfigDict(extra="forbid")

    builtins: list[str] | None = None
    random: RandomSweep | None = None
    tol: float = Field(default=1e-8, gt=0.0)


class OracleCase(BaseModel):
    name: str
    dims: tuple[int, int]
    procedure_distinguishable: bool
    witness_found: bool
    witness: list[int] | None
    agree: bool


class OracleResponse(BaseModel):
    cases: list[OracleCase]
    disagreements: int


class CorporaResponse(BaseModel):
    names: list[str]


class HealthResponse(BaseModel):
    status: str
    version: str

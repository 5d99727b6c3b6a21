"""Bipartite product-state sets: data model, JSON document schema, classifier.

The central object is a PopsSet: a list of pairwise (globally) orthogonal
pure product states on an m x n system, optionally declared complete
(count == m * n). Sets are exchanged as JSON documents:

    {"dims": [m, n], "complete": true,
     "states": [{"label": "psi1", "a": [[re, im], ...m], "b": [[re, im], ...n],
                 "p": 0.25}, ...]}

`p` is an optional per-state weight; it is carried through parsing but plays
no role in any distinguishability analysis.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .linalg import DEFAULT_TOL, as_vector, haar_unitary, outer
from .quantumness import ensemble_nc, validate_weighted_items


class PopsValidationError(ValueError):
    """A product-state document or set violates its invariants."""


class EnsembleClass(str, enum.Enum):
    """Which sides of a product ensemble carry non-commutativity."""

    CLASSICAL_CLASSICAL = "classical-classical"
    CLASSICAL_QUANTUM = "classical-quantum"
    QUANTUM_CLASSICAL = "quantum-classical"
    QUANTUM_QUANTUM = "quantum-quantum"


@dataclass(frozen=True)
class PureState:
    """Unit-norm complex vector with an optional display label."""

    vec: np.ndarray
    label: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "vec", as_vector(self.vec))

    @property
    def dim(self) -> int:
        return self.vec.shape[0]


@dataclass(frozen=True)
class ProductState:
    """Product state |a> tensor |b| with a label and optional weight."""

    a: PureState
    b: PureState
    label: str
    p: float | None = None

    def joint_vec(self) -> np.ndarray:
        return np.kron(self.a.vec, self.b.vec)


@dataclass(frozen=True)
class PopsSet:
    """Pairwise orthogonal product states on an m x n bipartite system."""

    dim_a: int
    dim_b: int
    states: tuple[ProductState, ...]
    complete: bool = False

    def __len__(self) -> int:
        return len(self.states)

    def labels(self) -> list[str]:
        return [s.label for s in self.states]


class StateEntry(BaseModel):
    """One product state in a document: amplitudes as [re, im] pairs."""

    model_config = ConfigDict(extra="forbid")

    label: str
    a: list[tuple[float, float]] = Field(min_length=1)
    b: list[tuple[float, float]] = Field(min_length=1)
    p: float | None = None


class PopsDocument(BaseModel):
    """Wire format for a product-state set."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["pops"] = "pops"
    dims: tuple[int, int]
    complete: bool
    states: list[StateEntry] = Field(min_length=1)


def _entry_vec(pairs: list[tuple[float, float]]) -> np.ndarray:
    return np.array([re + 1j * im for re, im in pairs], dtype=np.complex128)


def validate_pops(pops: PopsSet, tol: float = DEFAULT_TOL) -> None:
    """Check every PopsSet invariant, raising PopsValidationError on the first failure."""
    m, n = pops.dim_a, pops.dim_b
    if m < 1 or n < 1:
        raise PopsValidationError(f"dims must be positive, got {m} x {n}")
    if not pops.states:
        raise PopsValidationError("set has no states")
    labels = pops.labels()
    if len(set(labels)) != len(labels):
        dup = next(l for l in labels if labels.count(l) > 1)
        raise PopsValidationError(f"duplicate state label {dup!r}")
    for s in pops.states:
        if s.a.dim != m or s.b.dim != n:
            raise PopsValidationError(
                f"state {s.label!r} has dims {s.a.dim} x {s.b.dim}, expected {m} x {n}"
            )
        for side, vec in (("a", s.a.vec), ("b", s.b.vec)):
            nrm = float(np.linalg.norm(vec))
            if abs(nrm - 1.0) > tol:
                raise PopsValidationError(
                    f"state {s.label!r} side {side} is not unit norm: |v| = {nrm:.10g}"
                )
        if s.p is not None and s.p < 0:
            raise PopsValidationError(f"state {s.label!r} has negative weight {s.p}")
    amat = np.array([s.a.vec for s in pops.states])
    bmat = np.array([s.b.vec for s in pops.states])
    overlaps = np.abs((amat @ amat.conj().T) * (bmat @ bmat.conj().T))
    np.fill_diagonal(overlaps, 0.0)
    worst = np.unravel_index(int(np.argmax(overlaps)), overlaps.shape)
    if overlaps[worst] >= tol:
        i, j = worst
        raise PopsValidationError(
            f"states {labels[i]!r} and {labels[j]!r} are not orthogonal: "
            f"|overlap| = {overlaps[worst]:.10g}"
        )
    if pops.complete and len(pops.states) != m * n:
        raise PopsValidationError(
            f"set declared complete but has {len(pops.states)} states, expected {m * n}"
        )


def parse_pops(document, tol: float = DEFAULT_TOL) -> PopsSet:
    """Parse and validate a product-state document (JSON text, dict, or model).

    Every violation is an error; nothing is silently repaired.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise PopsValidationError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(document, PopsDocument):
        try:
            document = PopsDocument.model_validate(document)
        except ValidationError as exc:
            raise PopsValidationError(f"document does not match the schema: {exc}") from exc
    m, n = document.dims
    states = []
    for entry in document.states:
        states.append(
            ProductState(
                a=PureState(_entry_vec(entry.a)),
                b=PureState(_entry_vec(entry.b)),
                label=entry.label,
                p=entry.p,
            )
        )
    pops = PopsSet(dim_a=m, dim_b=n, states=tuple(states), complete=document.complete)
    validate_pops(pops, tol)
    return pops


def serialize_pops(pops: PopsSet) -> dict:
    """Document dict for a PopsSet; parse_pops(serialize_pops(s)) round-trips."""
    states = []
    for s in pops.states:
        entry = {
            "label": s.label,
            "a": [[float(z.real), float(z.imag)] for z in s.a.vec],
            "b": [[float(z.real), float(z.imag)] for z in s.b.vec],
        }
        if s.p is not None:
            entry["p"] = float(s.p)
        states.append(entry)
    return {
        "kind": "pops",
        "dims": [pops.dim_a, pops.dim_b],
        "complete": pops.complete,
        "states": states,
    }


def ket_str(state, zero_tol: float = 1e-12) -> str:
    """Ket-notation rendering of a vector, e.g. '0.7071|0> + 0.7071|1>'."""
    vec = as_vector(getattr(state, "vec", state))
    parts: list[tuple[str, str]] = []
    for k, z in enumerate(vec):
        if abs(z) <= zero_tol:
            continue
        if abs(z.imag) <= zero_tol:
            sign = "-" if z.real < 0 else "+"
            mag = abs(z.real)
            term = f"|{k}>" if abs(mag - 1.0) <= zero_tol else f"{mag:.4f}|{k}>"
            parts.append((sign, term))
        else:
            parts.append(("+", f"({z.real:.4f}{z.imag:+.4f}i)|{k}>"))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def side_set(pops: PopsSet, side: str) -> list[PureState]:
    """Local parts of every state on one side, duplicates preserved, in set order."""
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    prefix = side.lower()
    out = []
    for i, s in enumerate(pops.states):
        local = s.a if side == "A" else s.b
        out.append(PureState(local.vec, label=local.label or f"{prefix}{i + 1}"))
    return out


def classify(pops: PopsSet, tol: float = DEFAULT_TOL) -> EnsembleClass:
    """Bucket a set by which sides have non-commuting (unweighted) projectors."""
    totals = []
    for side in ("A", "B"):
        ops = [outer(s.vec) for s in side_set(pops, side)]
        totals.append(ensemble_nc(ops, tol).total)
    a_quantum, b_quantum = (t >= tol for t in totals)
    return {
        (False, False): EnsembleClass.CLASSICAL_CLASSICAL,
        (False, True): EnsembleClass.CLASSICAL_QUANTUM,
        (True, False): EnsembleClass.QUANTUM_CLASSICAL,
        (True, True): EnsembleClass.QUANTUM_QUANTUM,
    }[(a_quantum, b_quantum)]


@dataclass(frozen=True)
class WeightedEnsemble:
    """Density operators with probabilities; weighted_nc consumes p_i * rho_i."""

    items: tuple[tuple[float, np.ndarray], ...]


def validate_ensemble(ens: WeightedEnsemble, tol: float = DEFAULT_TOL) -> None:
    """Probabilities form a distribution; operators are density matrices."""
    validate_weighted_items(ens.items, tol)


class EnsembleItem(BaseModel):
    """One weighted density matrix: rows of [re, im] pairs."""

    model_config = ConfigDict(extra="forbid")

    p: float
    rho: list[list[tuple[float, float]]] = Field(min_length=1)


class EnsembleDocument(BaseModel):
    """Wire format for a weighted ensemble."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["ensemble"]
    items: list[EnsembleItem] = Field(min_length=1)


def matrix_from_pairs(rows: list[list[tuple[float, float]]]) -> np.ndarray:
    """Dense complex matrix from [re, im] pair rows."""
    return np.array(
        [[re + 1j * im for re, im in row] for row in rows], dtype=np.complex128
    )


def parse_ensemble(document, tol: float = DEFAULT_TOL) -> WeightedEnsemble:
    """Parse and validate a weighted-ensemble document."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise PopsValidationError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(document, EnsembleDocument):
        try:
            document = EnsembleDocument.model_validate(document)
        except ValidationError as exc:
            raise PopsValidationError(f"document does not match the schema: {exc}") from exc
    items = tuple((item.p, matrix_from_pairs(item.rho)) for item in document.items)
    ens = WeightedEnsemble(items=items)
    try:
        validate_ensemble(ens, tol)
    except PopsValidationError:
        raise
    except ValueError as exc:
        raise PopsValidationError(str(exc)) from exc
    return ens


# ---------------------------------------------------------------------------
# Random complete sets by grid tiling.
#
# Rows index the A basis, columns the B basis. Any exact tiling of the grid
# into 1 x k row segments and k x 1 column segments yields a complete
# pairwise-orthogonal product set: within a segment the rotated basis is
# orthonormal, and two distinct segments either share no row/column support
# on one side or cover disjoint cells of the shared line.
# ---------------------------------------------------------------------------

Segment = tuple[str, int, tuple[int, ...]]  # ("h", row, cols) | ("v", col, rows)


def _tile(
    rows: tuple[int, ...],
    cols: tuple[int, ...],
    depth: int,
    rng: np.random.Generator,
    out: list[Segment],
) -> None:
    if depth <= 0:
        for s in rows:
            for t in cols:
                out.append(("h", s, (t,)))
        return
    r, c = len(rows), len(cols)
    if r == 1 and c == 1:
        out.append(("h", rows[0], cols))
        return
    if r == 1:
        if c >= 2 and int(rng.integers(2)) == 0:
            k = int(rng.integers(1, c))
            _tile(rows, cols[:k], depth - 1, rng, out)
            _tile(rows, cols[k:], depth - 1, rng, out)
        else:
            out.append(("h", rows[0], cols))
        return
    if c == 1:
        if r >= 2 and int(rng.integers(2)) == 0:
            k = int(rng.integers(1, r))
            _tile(rows[:k], cols, depth - 1, rng, out)
            _tile(rows[k:], cols, depth - 1, rng, out)
        else:
            out.append(("v", cols[0], rows))
        return
    move = int(rng.integers(3))
    if move == 0:
        k = int(rng.integers(1, r))
        _tile(rows[:k], cols, depth - 1, rng, out)
        _tile(rows[k:], cols, depth - 1, rng, out)
    elif move == 1:
        k = int(rng.integers(1, c))
        _tile(rows, cols[:k], depth - 1, rng, out)
        _tile(rows, cols[k:], depth - 1, rng, out)
    else:
        # Border ring laid out pinwheel-style; recurse into the interior.
        out.append(("h", rows[0], cols[:-1]))
        out.append(("v", cols[-1], rows[:-1]))
        out.append(("h", rows[-1], cols[1:]))
        out.append(("v", cols[0], rows[1:]))
        if rows[1:-1] and cols[1:-1]:
            _tile(rows[1:-1], cols[1:-1], depth - 1, rng, out)


def _segment_states(m: int, n: int, segments: list[Segment], rng: np.random.Generator):
    states = []
    for kind, anchor, band in segments:
        k = len(band)
        u = haar_unitary(k, rng) if k >= 2 else np.eye(1, dtype=np.complex128)
        for col in range(k):
            coeffs = u[:, col]
            if kind == "h":
                a = np.zeros(m, dtype=np.complex128)
                a[anchor] = 1.0
                b = np.zeros(n, dtype=np.complex128)
                for j, t in enumerate(band):
                    b[t] = coeffs[j]
            else:
                b = np.zeros(n, dtype=np.complex128)
                b[anchor] = 1.0
                a = np.zeros(m, dtype=np.complex128)
                for j, s in enumerate(band):
                    a[s] = coeffs[j]
            states.append(
                ProductState(
                    a=PureState(a), b=PureState(b), label=f"psi{len(states) + 1}"
                )
            )
    return tuple(states)


def random_complete_pops(m: int, n: int, seed: int, depth: int = 4) -> PopsSet:
    """Random complete product set from a seeded recursive grid tiling.

    depth bounds the number of nested tiling moves; depth=0 is the plain
    computational product basis. The same (m, n, seed, depth) always yields
    the same set.
    """
    if m < 1 or n < 1:
        raise ValueError(f"dims must be positive, got {m} x {n}")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    rng = np.random.default_rng(seed)
    segments: list[Segment] = []
    _tile(tuple(range(m)), tuple(range(n)), depth, rng, segments)
    states = _segment_states(m, n, segments, rng)
    return PopsSet(dim_a=m, dim_b=n, states=states, complete=True)

"""Non-commutativity measure for operator families and greedy state chains.

The measure of a family {A_1, ..., A_k} is the sum over unordered pairs of
the trace norm of their commutator. For two pure-state projectors with
overlap magnitude x it equals 2 x sqrt(1 - x^2), which peaks at x = 1/sqrt(2)
and vanishes exactly for identical or orthogonal rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    commutator,
    outer,
    rank_of_span,
    state_vector,
    trace_norm,
)


@dataclass(frozen=True)
class NcReport:
    """Total measure plus the individual pair terms, keyed (i, j) with i > j."""

    total: float
    pair_terms: dict[tuple[int, int], float]


@dataclass(frozen=True)
class Chain:
    """States ordered so each prefix strictly grows the measure.

    indices are positions into the input list; n_values[k] is the measure of
    the prefix of length k + 2 (a length-1 chain has no values).
    """

    indices: tuple[int, ...]
    n_values: tuple[float, ...]


def pair_nc(u, v) -> float:
    """Trace norm of the commutator of the two pure-state projectors."""
    return trace_norm(commutator(outer(state_vector(u)), outer(state_vector(v))))


def ensemble_nc(ops: Sequence, tol: float = DEFAULT_TOL) -> NcReport:
    """Measure of a family of Hermitian operators, with per-pair breakdown."""
    mats = [as_matrix(op) for op in ops]
    if mats and any(m.shape != mats[0].shape for m in mats):
        raise ValueError("operators do not share a dimension")
    for k, m in enumerate(mats):
        if float(np.max(np.abs(m - m.conj().T))) > tol:
            raise ValueError(f"operator {k} is not Hermitian within tol={tol:g}")
    pair_terms: dict[tuple[int, int], float] = {}
    for i in range(len(mats)):
        for j in range(i):
            pair_terms[(i, j)] = trace_norm(commutator(mats[i], mats[j]))
    total = float(sum(pair_terms[key] for key in sorted(pair_terms)))
    return NcReport(total=total, pair_terms=pair_terms)


def validate_weighted_items(items: Sequence, tol: float = DEFAULT_TOL) -> None:
    """Probabilities form a distribution and operators are density matrices."""
    if not items:
        raise ValueError("ensemble has no members")
    total_p = 0.0
    dim = None
    for k, (p, rho) in enumerate(items):
        p = float(p)
        if p < -tol:
            raise ValueError(f"member {k} has negative probability {p}")
        total_p += p
        mat = as_matrix(rho)
        if dim is None:
            dim = mat.shape[0]
        if mat.shape != (dim, dim):
            raise ValueError(f"member {k} is not {dim} x {dim}")
        if float(np.max(np.abs(mat - mat.conj().T))) > tol:
            raise ValueError(f"member {k} is not Hermitian")
        w = np.linalg.eigvalsh(mat)
        if float(w[0]) < -tol:
            raise ValueError(f"member {k} is not PSD: min eigenvalue {float(w[0]):.3g}")
        if abs(float(np.trace(mat).real) - 1.0) > tol:
            raise ValueError(f"member {k} does not have unit trace")
    if abs(total_p - 1.0) > tol:
        raise ValueError(f"probabilities sum to {total_p:.10g}, expected 1")


def weighted_nc(ensemble, tol: float = DEFAULT_TOL) -> NcReport:
    """Measure over the weighted operators p_i * rho_i of an ensemble.

    Accepts a WeightedEnsemble or any sequence of (p, rho) pairs.
    """
    items = list(getattr(ensemble, "items", ensemble))
    validate_weighted_items(items, tol)
    return ensemble_nc([float(p) * as_matrix(rho) for p, rho in items], tol)


def pair_terms_matrix(states: Sequence) -> np.ndarray:
    """Symmetric matrix of pair terms for a list of pure states."""
    vectors = [state_vector(s) for s in states]
    k = len(vectors)
    terms = np.zeros((k, k))
    for i in range(k):
        for j in range(i):
            terms[i, j] = terms[j, i] = pair_nc(vectors[i], vectors[j])
    return terms


def chain_from_terms(
    vectors: Sequence[np.ndarray],
    terms: np.ndarray,
    span_dim: int,
    tol: float = DEFAULT_TOL,
) -> Chain | None:
    """Greedy chain growth over precomputed pair terms.

    From each start in turn: append the first state that is linearly
    independent of the prefix and raises the measure by more than tol; stop
    when the chain reaches span_dim states or no state qualifies.
    """
    k = len(vectors)
    for start in range(k):
        chain = [start]
        n_values: list[float] = []
        v0 = vectors[start]
        basis = [v0 / np.linalg.norm(v0)]
        current = 0.0
        grew = True
        while len(chain) < span_dim and grew:
            grew = False
            for cand in range(k):
                if cand in chain:
                    continue
                w = vectors[cand].astype(np.complex128, copy=True)
                for _ in range(2):
                    for q in basis:
                        w -= q * np.vdot(q, w)
                nrm = float(np.linalg.norm(w))
                if nrm <= tol:
                    continue
                delta = float(terms[cand, chain].sum())
                if delta <= tol:
                    continue
                chain.append(cand)
                current += delta
                n_values.append(current)
                basis.append(w / nrm)
                grew = True
                break
        if len(chain) == span_dim:
            return Chain(indices=tuple(chain), n_values=tuple(n_values))
    return None


def find_chain(states: Sequence, tol: float = DEFAULT_TOL) -> Chain | None:
    """Full-span strictly increasing chain for a state list, or None.

    Succeeds (length equals the span dimension) exactly when the list cannot
    be split into mutually orthogonal sublists; a span of one state is the
    trivial length-1 chain.
    """
    vectors = [state_vector(s) for s in states]
    if not vectors:
        raise ValueError("expected at least one state")
    span_dim = rank_of_span(vectors, tol)
    if span_dim <= 1:
        return Chain(indices=(0,), n_values=())
    terms = pair_terms_matrix(vectors)
    return chain_from_terms(vectors, terms, span_dim, tol)

"""LOCC protocol synthesis and verdicts for orthogonal product-state sets.

The procedure alternates two moves until nothing changes: split each side's
local states into mutually orthogonal blocks and measure the block projectors
(nondestructive by construction), then intersect the surviving index sets
across the classical channel. A leaf with one candidate is distinguished; a
leaf whose two sides are both unsplittable is stuck, and any stuck leaf makes
the whole set locally indistinguishable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .linalg import DEFAULT_TOL, orthonormal_basis, rank_of_span, state_vector
from .quantumness import chain_from_terms, pair_terms_matrix
from .singleset import decompose
from .states import (
    EnsembleClass,
    PopsSet,
    classify,
    ket_str,
    side_set,
    validate_pops,
)


@dataclass(frozen=True)
class Outcome:
    """One projective outcome: label, projector, its range basis, survivors."""

    label: int
    projector: np.ndarray
    span: tuple[np.ndarray, ...]
    block: tuple[int, ...]


@dataclass(frozen=True)
class Measurement:
    """Nondestructive projective measurement on one side.

    Outcome projectors are mutually orthogonal block-span projectors; when
    they do not resolve the identity the remainder is kept as an explicit
    never-occurring complement outcome.
    """

    side: str
    outcomes: tuple[Outcome, ...]
    complement: np.ndarray | None = None


@dataclass
class ProtocolNode:
    """Tree node: candidate indices plus the round played at this node.

    Children are keyed by (A outcome label, B outcome label); label 0 means
    that side did not measure this round.
    """

    candidates: tuple[int, ...]
    action: str  # "leaf" | "measure_a" | "measure_b" | "measure_both"
    status: str | None = None  # leaves: "distinguished" | "stuck"
    measure_a: Measurement | None = None
    measure_b: Measurement | None = None
    children: dict[tuple[int, int], "ProtocolNode"] = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    """Outcome of the procedure on one set."""

    distinguishable: bool
    stuck_leaves: tuple[tuple[int, ...], ...]
    final_partition: tuple[tuple[int, ...], ...]
    complete_set: bool
    rounds: int


def _build_measurement(
    side: str,
    vectors: list[np.ndarray],
    candidates: tuple[int, ...],
    tol: float,
) -> Measurement:
    sub = [vectors[i] for i in candidates]
    partition = decompose(sub, tol)
    dim = sub[0].shape[0]
    outcomes = []
    total = np.zeros((dim, dim), dtype=np.complex128)
    for k, block in enumerate(partition.blocks):
        basis = orthonormal_basis([sub[p] for p in block], tol)
        projector = np.zeros((dim, dim), dtype=np.complex128)
        for q in basis:
            projector += np.outer(q, q.conj())
        total += projector
        outcomes.append(
            Outcome(
                label=k + 1,
                projector=projector,
                span=tuple(basis),
                block=tuple(candidates[p] for p in block),
            )
        )
    remainder = np.eye(dim, dtype=np.complex128) - total
    complement = remainder if float(np.trace(remainder).real) > 0.5 else None
    return Measurement(side=side, outcomes=tuple(outcomes), complement=complement)


def _expand(
    candidates: tuple[int, ...],
    avecs: list[np.ndarray],
    bvecs: list[np.ndarray],
    budget: int,
    tol: float,
) -> ProtocolNode:
    if len(candidates) == 1:
        return ProtocolNode(candidates=candidates, action="leaf", status="distinguished")
    meas_a = _build_measurement("A", avecs, candidates, tol)
    meas_b = _build_measurement("B", bvecs, candidates, tol)
    split_a = len(meas_a.outcomes) > 1
    split_b = len(meas_b.outcomes) > 1
    if not split_a and not split_b:
        return ProtocolNode(candidates=candidates, action="leaf", status="stuck")
    if budget <= 0:
        raise RuntimeError("round budget exhausted before the procedure settled")
    action = {(True, True): "measure_both", (True, False): "measure_a", (False, True): "measure_b"}[
        (split_a, split_b)
    ]
    a_branches = [(o.label, set(o.block)) for o in meas_a.outcomes] if split_a else [(0, set(candidates))]
    b_branches = [(o.label, set(o.block)) for o in meas_b.outcomes] if split_b else [(0, set(candidates))]
    node = ProtocolNode(
        candidates=candidates,
        action=action,
        measure_a=meas_a if split_a else None,
        measure_b=meas_b if split_b else None,
    )
    for (ja, block_a), (jb, block_b) in itertools.product(a_branches, b_branches):
        survivors = tuple(sorted(block_a & block_b))
        if survivors:
            node.children[(ja, jb)] = _expand(survivors, avecs, bvecs, budget - 1, tol)
    return node


def _leaves(node: ProtocolNode) -> Iterator[ProtocolNode]:
    if node.action == "leaf":
        yield node
    else:
        for key in sorted(node.children):
            yield from _leaves(node.children[key])


def _depth(node: ProtocolNode) -> int:
    if node.action == "leaf":
        return 0
    return 1 + max(_depth(child) for child in node.children.values())


def distinguish(
    pops: PopsSet, tol: float = DEFAULT_TOL, max_rounds: int | None = None
) -> tuple[ProtocolNode, Verdict]:
    """Run the measure-and-intersect procedure; returns (tree, verdict).

    The verdict is exact for complete sets. For a non-complete set a stuck
    leaf only means this procedure cannot finish (Verdict.complete_set is
    False and renderers flag the claim as necessary-only).
    """
    validate_pops(pops, tol)
    if max_rounds is None:
        max_rounds = pops.dim_a + pops.dim_b
    avecs = [s.vec for s in side_set(pops, "A")]
    bvecs = [s.vec for s in side_set(pops, "B")]
    tree = _expand(tuple(range(len(pops))), avecs, bvecs, max_rounds, tol)
    leaves = list(_leaves(tree))
    stuck = tuple(leaf.candidates for leaf in leaves if leaf.status == "stuck")
    partition = tuple(leaf.candidates for leaf in leaves)
    verdict = Verdict(
        distinguishable=not stuck,
        stuck_leaves=stuck,
        final_partition=partition,
        complete_set=pops.complete,
        rounds=_depth(tree),
    )
    return tree, verdict


def classify_with_guarantee(
    pops: PopsSet, tol: float = DEFAULT_TOL
) -> tuple[EnsembleClass, bool]:
    """Ensemble class plus whether that class alone guarantees distinguishability.

    Any class with a commuting side is locally distinguishable; only the
    quantum-quantum class can fail, so the guarantee is class != qq.
    """
    cls = classify(pops, tol)
    return cls, cls is not EnsembleClass.QUANTUM_QUANTUM


def _adjacency_masks(vectors: list[np.ndarray], tol: float) -> list[int]:
    mat = np.array(vectors)
    overlap = np.abs(mat @ mat.conj().T) >= tol
    np.fill_diagonal(overlap, False)
    return [int(sum(1 << j for j in np.nonzero(row)[0])) for row in overlap]


def _connected(mask: int, adj: list[int]) -> bool:
    seen = mask & -mask
    frontier = seen
    while frontier:
        reach = 0
        f = frontier
        while f:
            low = f & -f
            reach |= adj[low.bit_length() - 1]
            f ^= low
        frontier = reach & mask & ~seen
        seen |= frontier
    return seen == mask


def bruteforce_indistinguishable(
    pops: PopsSet, tol: float = DEFAULT_TOL, max_states: int = 16
) -> tuple[bool, tuple[int, ...] | None]:
    """Exhaustive witness search, independent of the round-based procedure.

    Scans every index subset (largest first) for one whose A-parts and
    B-parts both admit full-span strictly increasing chains with span >= 2;
    such a subset certifies that the complete set cannot be locally
    distinguished. Returns (found, first witness or None).
    """
    validate_pops(pops, tol)
    if not pops.complete:
        raise ValueError("witness search is only meaningful for complete sets")
    k = len(pops)
    if k > max_states:
        raise ValueError(f"set has {k} states, above the max_states={max_states} bound")
    avecs = [s.vec for s in side_set(pops, "A")]
    bvecs = [s.vec for s in side_set(pops, "B")]
    adj_a = _adjacency_masks(avecs, tol)
    adj_b = _adjacency_masks(bvecs, tol)
    terms_a = pair_terms_matrix(avecs)
    terms_b = pair_terms_matrix(bvecs)
    for size in range(k, 1, -1):
        for combo in itertools.combinations(range(k), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if not _connected(mask, adj_a) or not _connected(mask, adj_b):
                continue
            sub_a = [avecs[i] for i in combo]
            span_a = rank_of_span(sub_a, tol)
            if span_a < 2:
                continue
            sub_b = [bvecs[i] for i in combo]
            span_b = rank_of_span(sub_b, tol)
            if span_b < 2:
                continue
            sel = np.ix_(combo, combo)
            if chain_from_terms(sub_a, terms_a[sel], span_a, tol) is None:
                continue
            if chain_from_terms(sub_b, terms_b[sel], span_b, tol) is None:
                continue
            return True, combo
    return False, None


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _vec_pairs(vec: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in vec]


def _measurement_dict(meas: Measurement | None) -> dict | None:
    if meas is None:
        return None
    return {
        "side": meas.side,
        "outcomes": [
            {
                "label": o.label,
                "span": [_vec_pairs(q) for q in o.span],
                "block": list(o.block),
            }
            for o in meas.outcomes
        ],
        "has_complement": meas.complement is not None,
    }


def _node_dict(node: ProtocolNode) -> dict:
    return {
        "candidates": list(node.candidates),
        "action": node.action,
        "status": node.status,
        "measurements": {
            "A": _measurement_dict(node.measure_a),
            "B": _measurement_dict(node.measure_b),
        },
        "children": {
            f"{ja},{jb}": _node_dict(child)
            for (ja, jb), child in sorted(node.children.items())
        },
    }


def protocol_report(
    tree: ProtocolNode, verdict: Verdict, labels: Sequence[str] | None = None
) -> dict:
    """JSON-ready report document for one procedure run."""
    n_states = sum(len(block) for block in verdict.final_partition)
    if labels is None:
        labels = [f"psi{i + 1}" for i in range(n_states)]
    caveat = None
    if not verdict.complete_set:
        caveat = "set not complete: a stuck verdict is necessary-only for this procedure"
    return {
        "verdict": "distinguishable" if verdict.distinguishable else "indistinguishable",
        "caveat": caveat,
        "rounds": verdict.rounds,
        "labels": list(labels),
        "stuck_leaves": [list(block) for block in verdict.stuck_leaves],
        "partition": [list(block) for block in verdict.final_partition],
        "tree": _node_dict(tree),
    }


def _label_run(indices: Sequence[int], labels: Sequence[str]) -> str:
    return "{" + ", ".join(labels[i] for i in indices) + "}"


def _pairs_vec(pairs: Sequence[Sequence[float]]) -> np.ndarray:
    return np.array([re + 1j * im for re, im in pairs], dtype=np.complex128)


def _text_lines(
    node: dict, labels: Sequence[str], indent: int, round_no: int
) -> list[str]:
    pad = "  " * indent
    name = _label_run(node["candidates"], labels)
    if node["action"] == "leaf":
        if node["status"] == "distinguished":
            return [f"{pad}{name}: distinguished -> {labels[node['candidates'][0]]}"]
        return [f"{pad}{name}: stuck (both local sides are single sets)"]
    what = {
        "measure_a": "A measures",
        "measure_b": "B measures",
        "measure_both": "A and B measure",
    }[node["action"]]
    lines = [f"{pad}Round {round_no} on {name}: {what}, then both announce outcomes"]
    for side in ("A", "B"):
        meas = node["measurements"][side]
        if meas is None:
            continue
        for o in meas["outcomes"]:
            kets = ", ".join(ket_str(_pairs_vec(q)) for q in o["span"])
            lines.append(
                f"{pad}  {side} outcome {o['label']}: project onto span{{{kets}}}"
            )
        if meas["has_complement"]:
            lines.append(
                f"{pad}  {side} remainder outcome: never occurs for these states"
            )
    for key, child in sorted(
        node["children"].items(), key=lambda kv: tuple(int(x) for x in kv[0].split(","))
    ):
        ja, jb = key.split(",")
        lines.append(f"{pad}  on outcomes (A={ja}, B={jb}):")
        lines.extend(_text_lines(child, labels, indent + 2, round_no + 1))
    return lines


def format_report_text(report: dict) -> str:
    """Human-readable narrative for a protocol report document."""
    labels = report["labels"]
    lines = [
        "Verdict: locally " + report["verdict"],
        f"Rounds: {report['rounds']}",
    ]
    if report["caveat"]:
        lines.append("Caveat: " + report["caveat"])
    if report["stuck_leaves"]:
        lines.append(
            "Stuck leaves: "
            + "; ".join(_label_run(b, labels) for b in report["stuck_leaves"])
        )
    lines.append(
        "Final partition: "
        + " | ".join(_label_run(b, labels) for b in report["partition"])
    )
    lines.append("Protocol:")
    lines.extend(_text_lines(report["tree"], labels, 1, 1))
    return "\n".join(lines)


def format_protocol_text(
    tree: ProtocolNode, verdict: Verdict, labels: Sequence[str] | None = None
) -> str:
    """Human-readable protocol narrative with ket notation."""
    return format_report_text(protocol_report(tree, verdict, labels))


def render_protocol(
    tree: ProtocolNode,
    verdict: Verdict,
    labels: Sequence[str] | None = None,
    fmt: str = "text",
) -> str:
    """Render a run as text or byte-deterministic JSON."""
    if fmt == "text":
        return format_protocol_text(tree, verdict, labels)
    if fmt == "json":
        return json.dumps(protocol_report(tree, verdict, labels), indent=2, sort_keys=True)
    raise ValueError(f"unknown format {fmt!r}")

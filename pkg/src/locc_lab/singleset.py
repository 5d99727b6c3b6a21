"""Decompose a state list into mutually orthogonal blocks.

Two states are linked when their overlap magnitude is at least tol; the
connected components of that graph are exactly the finest partition into
mutually orthogonal sublists, so the decomposition is unique. A list with a
single block cannot be split at all ("single" below).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import DEFAULT_TOL, projector_onto_span, state_vector


@dataclass(frozen=True)
class OrthGraph:
    """Non-orthogonality graph: nodes are list positions."""

    n: int
    adjacency: np.ndarray  # boolean, zero diagonal

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.adjacency[i, j]]


@dataclass(frozen=True)
class Partition:
    """Blocks ordered by smallest member, each block sorted ascending."""

    blocks: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.blocks)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def build_graph(states: Sequence, tol: float = DEFAULT_TOL) -> OrthGraph:
    """Overlap graph of a state list: edge iff |<s_i|s_j>| >= tol."""
    vecs = [state_vector(s) for s in states]
    if not vecs:
        raise ValueError("expected at least one state")
    if any(v.shape != vecs[0].shape for v in vecs):
        raise ValueError("states do not share a dimension")
    mat = np.array(vecs)
    overlap = np.abs(mat @ mat.conj().T)
    adjacency = overlap >= tol
    np.fill_diagonal(adjacency, False)
    return OrthGraph(n=len(vecs), adjacency=adjacency)


def decompose(states: Sequence, tol: float = DEFAULT_TOL) -> Partition:
    """Finest partition of the list into mutually orthogonal blocks."""
    graph = build_graph(states, tol)
    uf = _UnionFind(graph.n)
    for i, j in graph.edges():
        uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(graph.n):
        groups.setdefault(uf.find(i), []).append(i)
    blocks = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda b: b[0])
    return Partition(blocks=tuple(blocks))


def is_single(states: Sequence, tol: float = DEFAULT_TOL) -> bool:
    """True when the list admits no orthogonal split."""
    return len(decompose(states, tol)) == 1


def block_projectors(
    states: Sequence, partition: Partition, tol: float = DEFAULT_TOL
) -> list[np.ndarray]:
    """Projector onto the span of each block, in block order."""
    vecs = [state_vector(s) for s in states]
    return [projector_onto_span([vecs[i] for i in block], tol) for block in partition.blocks]

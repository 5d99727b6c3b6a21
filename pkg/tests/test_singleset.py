"""Tests for the non-orthogonality graph and its block decomposition."""

import numpy as np
from helpers import rand_unit

from locc_lab.corpora import builtin_pops
from locc_lab.linalg import projector_onto_span
from locc_lab.singleset import block_projectors, build_graph, decompose, is_single
from locc_lab.states import side_set


def _bfs_components(n, edges):
    adj = {i: set() for i in range(n)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    seen, comps = set(), []
    for start in range(n):
        if start in seen:
            continue
        comp, queue = set(), [start]
        while queue:
            node = queue.pop()
            if node in comp:
                continue
            comp.add(node)
            queue.extend(adj[node] - comp)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return tuple(sorted(comps))


def test_graph_edges_are_overlaps():
    e0 = np.array([1.0, 0.0])
    e1 = np.array([0.0, 1.0])
    plus = (e0 + e1) / np.sqrt(2)
    graph = build_graph([e0, e1, plus])
    assert graph.n == 3
    assert graph.edges() == [(0, 2), (1, 2)]
    assert not graph.adjacency.diagonal().any()


def test_decompose_matches_bfs_on_random_lists():
    rng = np.random.default_rng(41)
    for _ in range(50):
        dim = int(rng.integers(2, 5))
        count = int(rng.integers(1, 8))
        basis = np.eye(dim, dtype=complex)
        vecs = [
            basis[int(rng.integers(dim))].copy() if rng.random() < 0.5 else rand_unit(dim, rng)
            for _ in range(count)
        ]
        part = decompose(vecs)
        graph = build_graph(vecs)
        assert part.blocks == _bfs_components(count, graph.edges())


def test_block_ordering_is_by_smallest_member():
    e0 = np.array([1.0, 0.0, 0.0])
    e1 = np.array([0.0, 1.0, 0.0])
    e2 = np.array([0.0, 0.0, 1.0])
    part = decompose([e2, e1, e0, e1])
    assert part.blocks == ((0,), (1, 3), (2,))
    assert len(part) == 3


def test_builtin_side_decompositions():
    b9 = builtin_pops("bennett9")
    for side in ("A", "B"):
        assert is_single([s.vec for s in side_set(b9, side)])
    prod = builtin_pops("product3x3")
    part = decompose([s.vec for s in side_set(prod, "A")])
    assert len(part) == 3
    assert all(len(block) == 3 for block in part.blocks)
    dom = builtin_pops("dominoes2xN")
    a_part = decompose([s.vec for s in side_set(dom, "A")])
    b_part = decompose([s.vec for s in side_set(dom, "B")])
    assert len(a_part) == 2  # rows |0>, |1>
    assert len(b_part) == 1  # overlapping dominoes chain the columns together


def test_single_set_definitions_agree():
    e0 = np.array([1.0, 0.0])
    e1 = np.array([0.0, 1.0])
    plus = (e0 + e1) / np.sqrt(2)
    assert is_single([e0, plus, e1])
    assert not is_single([e0, e1])
    assert is_single([e0])


def test_block_projectors_resolve_identity_for_spanning_sets():
    pops = builtin_pops("paper3x4")
    vecs = [s.vec for s in side_set(pops, "B")]
    part = decompose(vecs)
    projs = block_projectors(vecs, part)
    assert len(projs) == len(part)
    total = sum(projs)
    np.testing.assert_allclose(total, np.eye(4), atol=1e-10)
    for p, block in zip(projs, part.blocks):
        np.testing.assert_allclose(p, projector_onto_span([vecs[i] for i in block]), atol=1e-12)
        np.testing.assert_allclose(p @ p, p, atol=1e-10)

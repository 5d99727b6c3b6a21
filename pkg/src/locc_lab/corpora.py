"""Builtin product-state corpora, compiled in so regressions need no files.

Names: bennett9 (the nine-state 3x3 tiles set), paper3x4 (its 3x4 extension
by a third column line), product3x3 (computational product basis), and the
dominoes2xN staircase family (the literal name is the 2x4 instance;
dominoes2x<k> selects width k).
"""

from __future__ import annotations

import math
import re

from .linalg import DEFAULT_TOL
from .states import PopsSet, parse_pops

_SQ2 = 1.0 / math.sqrt(2.0)


def _basis(dim: int, i: int) -> list[list[float]]:
    return [[1.0 if k == i else 0.0, 0.0] for k in range(dim)]


def _pm(dim: int, i: int, j: int, sign: float) -> list[list[float]]:
    vec = [[0.0, 0.0] for _ in range(dim)]
    vec[i] = [_SQ2, 0.0]
    vec[j] = [sign * _SQ2, 0.0]
    return vec


def _tiles3xn_states(b_dim: int) -> list[dict]:
    """The nine tile states of the 3x3 pinwheel, with B-side padded to b_dim."""
    return [
        {"label": "psi1", "a": _basis(3, 1), "b": _basis(b_dim, 1)},
        {"label": "psi2", "a": _basis(3, 0), "b": _pm(b_dim, 0, 1, +1.0)},
        {"label": "psi3", "a": _basis(3, 0), "b": _pm(b_dim, 0, 1, -1.0)},
        {"label": "psi4", "a": _basis(3, 2), "b": _pm(b_dim, 1, 2, +1.0)},
        {"label": "psi5", "a": _basis(3, 2), "b": _pm(b_dim, 1, 2, -1.0)},
        {"label": "psi6", "a": _pm(3, 1, 2, +1.0), "b": _basis(b_dim, 0)},
        {"label": "psi7", "a": _pm(3, 1, 2, -1.0), "b": _basis(b_dim, 0)},
        {"label": "psi8", "a": _pm(3, 0, 1, +1.0), "b": _basis(b_dim, 2)},
        {"label": "psi9", "a": _pm(3, 0, 1, -1.0), "b": _basis(b_dim, 2)},
    ]


def _bennett9_document() -> dict:
    return {"dims": [3, 3], "complete": True, "states": _tiles3xn_states(3)}


def _paper3x4_document() -> dict:
    states = _tiles3xn_states(4)
    for k, row in enumerate((0, 1, 2)):
        states.append(
            {"label": f"psi{10 + k}", "a": _basis(3, row), "b": _basis(4, 3)}
        )
    return {"dims": [3, 4], "complete": True, "states": states}


def _product3x3_document() -> dict:
    states = []
    for s in range(3):
        for t in range(3):
            states.append(
                {"label": f"psi{3 * s + t + 1}", "a": _basis(3, s), "b": _basis(3, t)}
            )
    return {"dims": [3, 3], "complete": True, "states": states}


def _dominoes_document(width: int) -> dict:
    if not 2 <= width <= 9:
        raise KeyError(f"dominoes width must be in 2..9, got {width}")
    states = []
    covered = set()
    for i in range(width - 1):
        row = i % 2
        covered.update({(row, i), (row, i + 1)})
        for sign in (+1.0, -1.0):
            states.append({"a": _basis(2, row), "b": _pm(width, i, i + 1, sign)})
    for row in range(2):
        for col in range(width):
            if (row, col) not in covered:
                states.append({"a": _basis(2, row), "b": _basis(width, col)})
    for k, entry in enumerate(states):
        entry["label"] = f"psi{k + 1}"
    return {"dims": [2, width], "complete": True, "states": states}


_FIXED = {
    "bennett9": _bennett9_document,
    "paper3x4": _paper3x4_document,
    "product3x3": _product3x3_document,
}

_DOMINOES_RE = re.compile(r"^dominoes2x(\d+)$")
_DOMINOES_DEFAULT_WIDTH = 4


def builtin_names() -> list[str]:
    """Addressable corpus names (dominoes2xN stands for the whole family)."""
    return sorted([*_FIXED, "dominoes2xN"])


def builtin_document(name: str) -> dict:
    """Fresh document dict for a builtin corpus; KeyError on unknown names."""
    if name in _FIXED:
        doc = _FIXED[name]()
    elif name == "dominoes2xN":
        doc = _dominoes_document(_DOMINOES_DEFAULT_WIDTH)
    else:
        match = _DOMINOES_RE.match(name)
        if not match:
            raise KeyError(
                f"unknown builtin corpus {name!r}; known: {', '.join(builtin_names())}"
            )
        doc = _dominoes_document(int(match.group(1)))
    return {"kind": "pops", **doc}


def builtin_pops(name: str, tol: float = DEFAULT_TOL) -> PopsSet:
    """Parsed builtin corpus."""
    return parse_pops(builtin_document(name), tol)

"""Shared helpers for the test suite."""

import numpy as np


def rand_unit(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def rand_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / float(np.trace(rho).real)


# Registry the acceptance tests fill in; conftest prints it after the run.
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def record(num: int, name: str, ok: bool) -> None:
    ACCEPTANCE[num] = (name, bool(ok))

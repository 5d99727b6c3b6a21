"""Dense complex linear algebra helpers shared by every analysis module.

All inputs are plain numpy arrays (or anything np.asarray accepts) and are
treated as complex128. Tolerances are absolute, calibrated for unit-normalized
vectors and operators of unit scale; every public function takes the caller's
tolerance so a single value can be threaded through a whole analysis.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-8

# eigvalsh(A^H A) may return slightly negative values for PSD input;
# anything above this magnitude is clamped to zero, never sign-flipped.
_PSD_CLAMP = -1e-12

# Exact-zero singular values come back from eigvalsh as noise of order
# eps * lambda_max; sqrt would inflate each to ~1e-8. Eigenvalues below
# this relative floor are zeroed so rank-deficient inputs stay accurate.
_REL_FLOOR = 1e-14


def as_vector(v) -> np.ndarray:
    """Coerce to a 1-d complex128 array, rejecting anything else."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a nonempty vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite entries")
    return arr


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d square complex128 array, rejecting anything else."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.size == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def state_vector(state) -> np.ndarray:
    """Vector of a pure state: accepts arrays or objects exposing .vec."""
    return as_vector(getattr(state, "vec", state))


def inner(u, v) -> complex:
    """Hermitian inner product <u|v>, conjugating the first argument."""
    uu, vv = as_vector(u), as_vector(v)
    if uu.shape != vv.shape:
        raise ValueError(f"dimension mismatch: {uu.shape[0]} vs {vv.shape[0]}")
    return complex(np.vdot(uu, vv))


def outer(u, v=None) -> np.ndarray:
    """Rank-one operator |u><v| (|u><u| when v is omitted)."""
    uu = as_vector(u)
    vv = uu if v is None else as_vector(v)
    return np.outer(uu, vv.conj())


def commutator(a, b) -> np.ndarray:
    """Matrix commutator [A, B] = AB - BA for equal-shape square matrices."""
    aa, bb = as_matrix(a), as_matrix(b)
    if aa.shape != bb.shape:
        raise ValueError(f"shape mismatch: {aa.shape} vs {bb.shape}")
    return aa @ bb - bb @ aa


def trace_norm(a) -> float:
    """Sum of singular values, via the Hermitian eigendecomposition of A^H A.

    Eigenvalues of A^H A in [_PSD_CLAMP, 0) are clamped to zero (a value
    below the clamp indicates a broken input and raises), and eigenvalues
    below _REL_FLOOR times the largest are zeroed as rounding noise.
    """
    aa = as_matrix(a)
    w = np.linalg.eigvalsh(aa.conj().T @ aa)
    largest = float(w[-1])
    if largest <= 0.0:
        return 0.0
    if float(w[0]) < _PSD_CLAMP * max(1.0, largest):
        raise ValueError(f"gram spectrum not PSD within clamp: min eigenvalue {float(w[0]):g}")
    w = np.where(w < _REL_FLOOR * largest, 0.0, w)
    return float(np.sum(np.sqrt(w)))


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(as_matrix(a), as_matrix(b))


def _stack(vectors: Iterable) -> np.ndarray:
    vecs = [as_vector(v) for v in vectors]
    if not vecs:
        raise ValueError("expected at least one vector")
    dim = vecs[0].shape[0]
    if any(v.shape[0] != dim for v in vecs):
        raise ValueError("vectors do not share a dimension")
    return np.array(vecs)


def rank_of_span(vectors: Sequence, tol: float = DEFAULT_TOL) -> int:
    """Numerical dimension of span(vectors): singular values above tol * largest."""
    m = _stack(vectors)
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] <= tol:
        return 0
    return int(np.sum(s > tol * s[0]))


def orthonormal_basis(vectors: Sequence, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of span(vectors) by modified Gram-Schmidt.

    A second orthogonalization pass keeps the basis orthonormal to machine
    precision even for nearly dependent inputs; residuals with norm <= tol
    are dropped as dependent.
    """
    basis: list[np.ndarray] = []
    for v in _stack(vectors):
        w = v.astype(np.complex128, copy=True)
        for _ in range(2):
            for q in basis:
                w -= q * np.vdot(q, w)
        nrm = float(np.linalg.norm(w))
        if nrm > tol:
            basis.append(w / nrm)
    return basis


def projector_onto_span(vectors: Sequence, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto span(vectors)."""
    basis = orthonormal_basis(vectors, tol)
    dim = as_vector(vectors[0]).shape[0]
    p = np.zeros((dim, dim), dtype=np.complex128)
    for q in basis:
        p += np.outer(q, q.conj())
    return p


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    """True when max|A - A^H| is within tol."""
    aa = as_matrix(a)
    return float(np.max(np.abs(aa - aa.conj().T))) <= tol


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with phase fix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))

"""Flagged states (quantum blocks tagged by orthogonal flags) and their measure.

A flagged state is sum_i X_i tensor |i><i| with weighted blocks X_i (PSD,
traces summing to one) and orthonormal flag vectors |i>. Its measure is the
non-commutativity of the weighted blocks. The weighted blocks are basis
independent: any flag basis in which the same density matrix is block
diagonal recovers the same block multiset, so the measure is well defined.
"""

from __future__ import annotations

import decimal
import json
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .linalg import DEFAULT_TOL, as_matrix, as_vector, trace_norm
from .quantumness import NcReport, ensemble_nc
from .states import PopsValidationError, matrix_from_pairs

# Block eigenvalues above this floor are treated as rounding noise and
# clamped when validating PSD-ness.
_EIG_FLOOR = -1e-10


@dataclass(frozen=True)
class QcState:
    """Weighted blocks plus the orthonormal flag vectors tagging them."""

    blocks: tuple[np.ndarray, ...]
    flag_basis: tuple[np.ndarray, ...]

    @property
    def flag_dim(self) -> int:
        return self.flag_basis[0].shape[0]

    @property
    def block_dim(self) -> int:
        return self.blocks[0].shape[0]


def validate_qc(state: QcState, tol: float = DEFAULT_TOL) -> None:
    """Check every QcState invariant."""
    if not state.blocks:
        raise ValueError("flagged state has no blocks")
    if len(state.blocks) != len(state.flag_basis):
        raise ValueError(
            f"{len(state.blocks)} blocks but {len(state.flag_basis)} flag vectors"
        )
    dim = state.blocks[0].shape[0]
    trace_sum = 0.0
    for k, block in enumerate(state.blocks):
        mat = as_matrix(block)
        if mat.shape != (dim, dim):
            raise ValueError(f"block {k} is not {dim} x {dim}")
        if float(np.max(np.abs(mat - mat.conj().T))) > tol:
            raise ValueError(f"block {k} is not Hermitian")
        w = np.linalg.eigvalsh(mat)
        if float(w[0]) < _EIG_FLOOR:
            raise ValueError(f"block {k} is not PSD: min eigenvalue {float(w[0]):.3g}")
        trace_sum += float(np.trace(mat).real)
    if abs(trace_sum - 1.0) > tol:
        raise ValueError(f"block traces sum to {trace_sum:.10g}, expected 1")
    fdim = state.flag_basis[0].shape[0]
    if len(state.flag_basis) > fdim:
        raise ValueError("more flags than flag-space dimensions")
    fmat = np.array([as_vector(f) for f in state.flag_basis])
    if fmat.shape[1] != fdim:
        raise ValueError("flag vectors do not share a dimension")
    gram = fmat @ fmat.conj().T
    if float(np.max(np.abs(gram - np.eye(len(state.flag_basis))))) > tol:
        raise ValueError("flag vectors are not orthonormal")


def qc_nc(state: QcState, tol: float = DEFAULT_TOL) -> NcReport:
    """Measure of a flagged state: non-commutativity of its weighted blocks."""
    validate_qc(state, tol)
    return ensemble_nc(state.blocks, tol)


def assemble(state: QcState, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Density matrix sum_i X_i tensor |i><i| (quantum factor first)."""
    validate_qc(state, tol)
    d, f = state.block_dim, state.flag_dim
    rho = np.zeros((d * f, d * f), dtype=np.complex128)
    for block, flag in zip(state.blocks, state.flag_basis):
        rho += np.kron(np.asarray(block, dtype=np.complex128), np.outer(flag, flag.conj()))
    return rho


def extract_blocks(
    rho, flag_basis: Sequence, tol: float = DEFAULT_TOL
) -> QcState:
    """Read the weighted blocks of a density matrix off a given flag basis.

    X_i = (I tensor <i|) rho (I tensor |i>). The matrix must be block
    diagonal with respect to the flags within tol: any cross-flag block mass
    or mass outside the flag span raises, reporting the residual.
    """
    mat = as_matrix(rho)
    if float(np.max(np.abs(mat - mat.conj().T))) > tol:
        raise ValueError("rho is not Hermitian")
    if abs(float(np.trace(mat).real) - 1.0) > tol:
        raise ValueError("rho does not have unit trace")
    flags = [as_vector(f) for f in flag_basis]
    if not flags:
        raise ValueError("no flag vectors given")
    fdim = flags[0].shape[0]
    total_dim = mat.shape[0]
    if total_dim % fdim != 0:
        raise ValueError(
            f"rho dimension {total_dim} is not divisible by flag dimension {fdim}"
        )
    d = total_dim // fdim
    fmat = np.array(flags)
    gram = fmat @ fmat.conj().T
    if float(np.max(np.abs(gram - np.eye(len(flags))))) > tol:
        raise ValueError("flag vectors are not orthonormal")
    # rho as a 4-index tensor: (quantum, flag, quantum, flag)
    tensor = mat.reshape(d, fdim, d, fdim)
    blocks = {}
    residual = 0.0
    for i, fi in enumerate(flags):
        for j, fj in enumerate(flags):
            xij = np.einsum("afbg,f,g->ab", tensor, fi.conj(), fj)
            if i == j:
                blocks[i] = xij
            else:
                residual = max(residual, trace_norm(xij))
    diag_mass = sum(float(np.trace(blocks[i]).real) for i in range(len(flags)))
    outside = abs(float(np.trace(mat).real) - diag_mass)
    residual = max(residual, outside)
    if residual > tol:
        raise ValueError(
            f"rho is not block-diagonal in this flag basis: residual {residual:.6g}"
        )
    return QcState(
        blocks=tuple(blocks[i] for i in range(len(flags))),
        flag_basis=tuple(flags),
    )


def attach_ancilla(state: QcState, tau, tol: float = DEFAULT_TOL) -> QcState:
    """Tensor the same ancilla density matrix onto every block."""
    validate_qc(state, tol)
    t = as_matrix(tau)
    if float(np.max(np.abs(t - t.conj().T))) > tol:
        raise ValueError("ancilla is not Hermitian")
    w = np.linalg.eigvalsh(t)
    if float(w[0]) < -tol:
        raise ValueError("ancilla is not PSD")
    if abs(float(np.trace(t).real) - 1.0) > tol:
        raise ValueError("ancilla does not have unit trace")
    return QcState(
        blocks=tuple(np.kron(b, t) for b in state.blocks),
        flag_basis=state.flag_basis,
    )


def rho_x_family(x: float, tol: float = DEFAULT_TOL) -> QcState:
    """Three equal-weight flagged blocks; the third overlaps the first by x.

    Blocks |0><0|/3, |1><1|/3 and |phi><phi|/3 with
    phi = x|0> + sqrt(1 - x^2)|2>, flags the computational basis of C^3.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    e0 = np.array([1.0, 0.0, 0.0], dtype=np.complex128)
    e1 = np.array([0.0, 1.0, 0.0], dtype=np.complex128)
    phi = np.array([x, 0.0, np.sqrt(max(0.0, 1.0 - x * x))], dtype=np.complex128)
    blocks = tuple(
        np.outer(v, v.conj()) / 3.0 for v in (e0, e1, phi)
    )
    flags = tuple(np.eye(3, dtype=np.complex128)[i] for i in range(3))
    state = QcState(blocks=blocks, flag_basis=flags)
    validate_qc(state, tol)
    return state


def nc_curve(samples: int, tol: float = DEFAULT_TOL) -> list[tuple[float, float]]:
    """(x, measure) on a uniform [0, 1] grid for the rho_x family."""
    if samples < 2:
        raise ValueError("need at least two samples")
    rows = []
    for x in np.linspace(0.0, 1.0, samples):
        rows.append((float(x), qc_nc(rho_x_family(float(x), tol), tol).total))
    return rows


def _fmt12(value: float) -> str:
    # Plain positional decimal with exactly 12 significant digits; numpy's
    # positional formatter drops a digit for exactly-representable binaries.
    d = decimal.Decimal(value)
    if d.is_zero():
        return "0.00000000000"
    shift = 11 - d.adjusted()
    q = d.quantize(decimal.Decimal(1).scaleb(-shift), rounding=decimal.ROUND_HALF_EVEN)
    return format(q, "f")


def curve_csv(rows: Sequence[tuple[float, float]]) -> str:
    """CSV text for curve rows: header x,N and 12-significant-digit values."""
    lines = ["x,N"]
    for x, n in rows:
        lines.append(f"{_fmt12(x)},{_fmt12(n)}")
    return "\n".join(lines) + "\n"


class QcDocument(BaseModel):
    """Wire format for a flagged state: blocks as rows of [re, im] pairs."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["qc"]
    flag_dim: int = Field(ge=1)
    blocks: list[list[list[tuple[float, float]]]] = Field(min_length=1)
    flag_basis: list[list[tuple[float, float]]] | None = None


def parse_qc(document, tol: float = DEFAULT_TOL) -> QcState:
    """Parse and validate a flagged-state document.

    Without an explicit flag_basis the first len(blocks) computational basis
    vectors of C^flag_dim are used.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise PopsValidationError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(document, QcDocument):
        try:
            document = QcDocument.model_validate(document)
        except ValidationError as exc:
            raise PopsValidationError(f"document does not match the schema: {exc}") from exc
    blocks = tuple(matrix_from_pairs(rows) for rows in document.blocks)
    if document.flag_basis is not None:
        flags = tuple(
            np.array([re + 1j * im for re, im in vec], dtype=np.complex128)
            for vec in document.flag_basis
        )
    else:
        if len(blocks) > document.flag_dim:
            raise PopsValidationError(
                f"{len(blocks)} blocks do not fit flag_dim={document.flag_dim}"
            )
        eye = np.eye(document.flag_dim, dtype=np.complex128)
        flags = tuple(eye[i] for i in range(len(blocks)))
    state = QcState(blocks=blocks, flag_basis=flags)
    try:
        validate_qc(state, tol)
    except ValueError as exc:
        raise PopsValidationError(str(exc)) from exc
    return state

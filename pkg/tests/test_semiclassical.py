"""Tests for flagged (block-diagonal) states and their quantumness."""

import numpy as np
import pytest
from helpers import rand_density, rand_unit

from locc_lab.linalg import kron, trace_norm
from locc_lab.semiclassical import (
    QcState,
    assemble,
    attach_ancilla,
    curve_csv,
    extract_blocks,
    nc_curve,
    parse_qc,
    qc_nc,
    rho_x_family,
    validate_qc,
)


def _computational_flags(dim, count):
    eye = np.eye(dim, dtype=np.complex128)
    return tuple(eye[i] for i in range(count))


def _random_qc(rng, block_dim=2, flags=3):
    weights = rng.dirichlet(np.ones(flags))
    blocks = tuple(w * rand_density(block_dim, rng) for w in weights)
    return QcState(blocks=blocks, flag_basis=_computational_flags(flags, flags))


def test_validate_qc_rejects_defects():
    good = _random_qc(np.random.default_rng(51))
    validate_qc(good)
    bad_trace = QcState(blocks=tuple(2 * b for b in good.blocks), flag_basis=good.flag_basis)
    with pytest.raises(ValueError):
        validate_qc(bad_trace)
    skewed = np.array([[0.5, 0.5], [0.0, 0.5]])
    with pytest.raises(ValueError):
        validate_qc(QcState(blocks=(skewed, np.eye(2) / 4), flag_basis=_computational_flags(2, 2)))
    negative = np.diag([0.75, -0.25])
    with pytest.raises(ValueError):
        validate_qc(QcState(blocks=(negative, np.eye(2) / 4), flag_basis=_computational_flags(2, 2)))
    overlapping_flags = (np.array([1.0, 0.0]), np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        validate_qc(QcState(blocks=(np.eye(2) / 4, np.eye(2) / 4), flag_basis=overlapping_flags))


def test_family_value_at_balanced_overlap():
    state = rho_x_family(1.0 / np.sqrt(2.0))
    np.testing.assert_allclose(qc_nc(state).total, 1.0 / 9.0, atol=1e-12)


def test_family_closed_form_small_grid():
    for x in np.linspace(0.0, 1.0, 21):
        total = qc_nc(rho_x_family(float(x))).total
        np.testing.assert_allclose(total, (2.0 / 9.0) * x * np.sqrt(1 - x * x), atol=1e-12)


def test_family_rejects_out_of_range():
    with pytest.raises(ValueError):
        rho_x_family(-0.1)
    with pytest.raises(ValueError):
        rho_x_family(1.1)


def test_assemble_extract_round_trip():
    rng = np.random.default_rng(52)
    state = _random_qc(rng, block_dim=3, flags=3)
    rho = assemble(state)
    np.testing.assert_allclose(np.trace(rho).real, 1.0, atol=1e-12)
    back = extract_blocks(rho, state.flag_basis)
    for x, y in zip(back.blocks, state.blocks):
        np.testing.assert_allclose(x, y, atol=1e-12)


def test_assemble_single_flag_is_identity_embedding():
    rng = np.random.default_rng(57)
    rho = rand_density(3, rng)
    state = QcState(blocks=(rho,), flag_basis=(np.array([1.0 + 0.0j]),))
    np.testing.assert_allclose(assemble(state), rho, atol=1e-12)


def test_extract_maximally_mixed_gives_equal_blocks():
    dim, flags = 2, 3
    rho = np.eye(dim * flags) / (dim * flags)
    state = extract_blocks(rho, _computational_flags(flags, flags))
    for block in state.blocks:
        np.testing.assert_allclose(block, np.eye(dim) / (dim * flags), atol=1e-12)


def test_extract_reports_flag_coherence_residual():
    # |0><0| tensor |+><+| has cross-flag mass of trace norm exactly 1/2
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    block = np.array([[1.0, 0.0], [0.0, 0.0]])
    rho = kron(block, np.outer(plus, plus.conj()))
    with pytest.raises(ValueError) as err:
        extract_blocks(rho, _computational_flags(2, 2))
    assert "residual" in str(err.value)
    assert "0.5" in str(err.value)


def test_extract_rejects_non_hermitian_and_bad_trace():
    with pytest.raises(ValueError):
        extract_blocks(np.triu(np.ones((4, 4))), _computational_flags(2, 2))
    with pytest.raises(ValueError):
        extract_blocks(np.eye(4), _computational_flags(2, 2))


def test_ancilla_scaling_by_purity():
    rng = np.random.default_rng(53)
    state = _random_qc(rng, block_dim=2, flags=3)
    before = qc_nc(state).total
    for tau_dim in (2, 3):
        tau = rand_density(tau_dim, rng)
        after = qc_nc(attach_ancilla(state, tau)).total
        purity = float(np.trace(tau @ tau).real)
        np.testing.assert_allclose(after, before * purity, atol=1e-10)
    # a pure ancilla leaves the measure unchanged
    v = rand_unit(2, rng)
    pure = np.outer(v, v.conj())
    np.testing.assert_allclose(qc_nc(attach_ancilla(state, pure)).total, before, atol=1e-10)


def test_attach_ancilla_rejects_non_density_input():
    state = _random_qc(np.random.default_rng(54))
    with pytest.raises(ValueError):
        attach_ancilla(state, np.eye(2))  # trace 2


def test_degenerate_flag_rotation_preserves_blocks():
    rng = np.random.default_rng(55)
    shared = 0.4 * rand_density(2, rng)
    other = 0.2 * rand_density(2, rng)
    flags = _computational_flags(3, 3)
    state = QcState(blocks=(shared, shared, other), flag_basis=flags)
    rho = assemble(state)
    theta = 0.7
    f0 = np.cos(theta) * flags[0] + np.sin(theta) * flags[1]
    f1 = -np.sin(theta) * flags[0] + np.cos(theta) * flags[1]
    rotated = extract_blocks(rho, (f0, f1, flags[2]))
    for x, y in zip(rotated.blocks, state.blocks):
        np.testing.assert_allclose(x, y, atol=1e-8)


def test_nc_curve_shape_and_csv():
    rows = nc_curve(5)
    assert len(rows) == 5
    assert rows[0] == (0.0, 0.0)
    np.testing.assert_allclose(rows[-1][1], 0.0, atol=1e-12)
    text = curve_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "x,N"
    assert len(lines) == 6
    assert text.endswith("\n")
    assert text == curve_csv(nc_curve(5))
    # fixed 12-significant-digit decimal cells
    assert lines[1] == "0.00000000000,0.00000000000"
    assert lines[2].startswith("0.250000000000,")
    with pytest.raises(ValueError):
        nc_curve(1)


def test_parse_qc_document_paths():
    def pairs(mat):
        return [[[z.real, z.imag] for z in row] for row in mat]

    rng = np.random.default_rng(56)
    blocks = [0.5 * rand_density(2, rng), 0.5 * rand_density(2, rng)]
    doc = {"kind": "qc", "flag_dim": 3, "blocks": [pairs(b) for b in blocks]}
    state = parse_qc(doc)
    assert state.flag_dim == 3
    assert state.block_dim == 2
    for x, y in zip(state.blocks, blocks):
        np.testing.assert_allclose(x, y, atol=1e-15)
    # explicit flags and schema violations
    doc["flag_basis"] = [[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]]
    parse_qc(doc)
    doc["flag_basis"] = "nope"
    from locc_lab.states import PopsValidationError

    with pytest.raises(PopsValidationError):
        parse_qc(doc)

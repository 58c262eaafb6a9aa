import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oqho.errors import DimensionError
from oqho.structured import (
    StructureTolerance,
    bold_j_matrix,
    doubled_up,
    doubled_up_residual,
    extract_bold_blocks,
    is_doubled_up,
    is_hermitian,
    is_orthogonal,
    is_orthosymplectic,
    is_skew_symmetric,
    is_symmetric,
    is_symplectic,
    is_unitary,
    j_matrix,
    nabla,
    orthogonality_residual,
    symplectic_residual,
    t_matrix,
)

seeds = st.integers(0, 10**6)


def test_j_matrix_block_form():
    j = j_matrix(4)
    expected = np.array(
        [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], dtype=float
    )
    assert np.array_equal(j, expected)


def test_j_matrix_squares_to_minus_identity():
    for r in (2, 4, 8, 20):
        assert np.linalg.norm(j_matrix(r) @ j_matrix(r) + np.eye(r)) < 1e-14


def test_bold_j_matrix_squares_to_identity():
    for r in (2, 6, 12):
        bj = bold_j_matrix(r)
        assert np.linalg.norm(bj @ bj - np.eye(r)) < 1e-14
        assert np.array_equal(np.diag(bj), np.r_[np.ones(r // 2), -np.ones(r // 2)])


@pytest.mark.parametrize("bad", [0, 1, 3, -2])
def test_structured_matrices_reject_bad_dimensions(bad):
    for fn in (j_matrix, bold_j_matrix, t_matrix):
        with pytest.raises(DimensionError):
            fn(bad)


def test_t_matrix_identities():
    for k in (2, 4, 8, 16, 32):
        t = t_matrix(k)
        assert np.linalg.norm(t @ t.conj().T - 2.0 * np.eye(k)) < 1e-13
        lhs = 0.5 * t @ bold_j_matrix(k) @ t.conj().T
        assert np.linalg.norm(lhs - 1j * j_matrix(k)) < 1e-13


def test_doubled_up_layout():
    x1 = np.array([[1 + 2j]])
    x2 = np.array([[3 - 1j]])
    out = doubled_up(x1, x2)
    assert out.shape == (2, 2)
    assert out[0, 0] == 1 + 2j and out[0, 1] == 3 - 1j
    assert out[1, 0] == 3 + 1j and out[1, 1] == 1 - 2j
    assert doubled_up_residual(out) == 0.0


def test_doubled_up_shape_mismatch():
    with pytest.raises(DimensionError):
        doubled_up(np.zeros((2, 2)), np.zeros((2, 3)))


@settings(deadline=None, max_examples=30)
@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_nabla_extract_roundtrip(seed, rows, cols):
    rng = np.random.default_rng(seed)
    x1 = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    x2 = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    real_form = nabla(x1, x2)
    assert real_form.dtype == float
    y1, y2 = extract_bold_blocks(real_form)
    assert np.linalg.norm(y1 - x1) < 1e-12
    assert np.linalg.norm(y2 - x2) < 1e-12


@settings(deadline=None, max_examples=20)
@given(seeds, st.integers(1, 3), st.integers(1, 3))
def test_nabla_is_t_conjugated_doubled_up(seed, rows, cols):
    rng = np.random.default_rng(seed)
    x1 = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    x2 = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    lhs = nabla(x1, x2).astype(complex)
    rhs = 0.5 * t_matrix(2 * rows) @ doubled_up(x1, x2) @ t_matrix(2 * cols).conj().T
    assert np.linalg.norm(lhs - rhs) < 1e-12


def test_identity_is_orthogonal_symplectic_and_not_skew():
    eye = np.eye(4)
    assert is_orthogonal(eye)
    assert is_symplectic(eye)
    assert is_orthosymplectic(eye)
    assert not is_skew_symmetric(eye)
    assert is_symmetric(eye)


def test_j_is_orthogonal_and_symplectic_and_skew():
    j = j_matrix(4)
    assert is_orthogonal(j)
    assert is_symplectic(j)
    assert is_skew_symmetric(j)


def test_diagonal_scaling_fails_both_groups():
    mat = np.diag([2.0, 1.0, 1.0, 1.0])
    assert not is_orthogonal(mat)
    assert not is_symplectic(mat)
    assert orthogonality_residual(mat) > 1.0
    assert symplectic_residual(mat) > 0.5


def test_hermitian_and_unitary_predicates():
    h = np.array([[1.0, 2 - 1j], [2 + 1j, -3.0]])
    assert is_hermitian(h)
    assert not is_hermitian(h + 1j * np.eye(2))
    phase = np.diag([np.exp(0.3j), np.exp(-1.1j)])
    assert is_unitary(phase)
    assert not is_unitary(2.0 * phase)


def test_is_doubled_up_detects_pattern_violation():
    x = doubled_up(np.array([[1 + 1j]]), np.array([[2.0]]))
    assert is_doubled_up(x)
    x[1, 1] = 5.0
    assert not is_doubled_up(x)


def test_tolerance_coercion():
    tol = StructureTolerance.coerce(None)
    assert tol.absolute == 1e-10 and tol.relative == 1e-8
    tol = StructureTolerance.coerce(1e-3)
    assert tol.absolute == 1e-3 and tol.relative == 0.0
    same = StructureTolerance(absolute=1.0, relative=2.0)
    assert StructureTolerance.coerce(same) is same
    assert same.bound(10.0) == 21.0
    assert same.accepts(21.0, 10.0) and not same.accepts(21.01, 10.0)


def test_residuals_require_square_input():
    with pytest.raises(DimensionError):
        orthogonality_residual(np.zeros((2, 3)))

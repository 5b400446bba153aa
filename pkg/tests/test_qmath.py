import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from i3322game.qmath import (ComplexMatrix, InvalidArgument, check_hermitian, hermitian_eigenvalues,
                             pauli, sym3_eigenvalues, tensor, trace, trace_of_product)
from i3322game.quantum import paper_state, singlet_state

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complex_entry = st.builds(complex, finite, finite)
mat2 = st.lists(complex_entry, min_size=4, max_size=4).map(lambda e: ComplexMatrix(2, 2, tuple(e)))


def as_np(m: ComplexMatrix) -> np.ndarray:
    return np.array(m.to_rows(), dtype=complex)


def test_identity_tensor_identity():
    i2 = ComplexMatrix.identity(2)
    assert tensor(i2, i2) == ComplexMatrix.identity(4)


def test_basis_projector_placement():
    p0 = ComplexMatrix.outer((1, 0))
    p1 = ComplexMatrix.outer((0, 1))
    t = tensor(p0, p1)
    nonzero = [(i, j) for i in range(4) for j in range(4) if t[i, j] != 0]
    assert nonzero == [(1, 1)]  # |01>
    assert t[1, 1] == 1


def test_sigma_x_correlation_of_mixed_state():
    # hand-multiplied: only the anti-diagonal of rho survives, 0.34 + 0 + 0 + 0.34
    xx = tensor(pauli("X"), pauli("X"))
    assert trace(xx @ paper_state().rho).real == pytest.approx(0.68, abs=1e-12)


def test_tensor_rejects_wrong_shape():
    with pytest.raises(InvalidArgument):
        tensor(ComplexMatrix.identity(4), ComplexMatrix.identity(2))


@given(mat2, mat2)
def test_tensor_matches_numpy_kron(a, b):
    np.testing.assert_allclose(as_np(tensor(a, b)), np.kron(as_np(a), as_np(b)), atol=1e-12)


@given(mat2, mat2)
def test_trace_of_tensor_factorizes(a, b):
    assert abs(trace(tensor(a, b)) - trace(a) * trace(b)) <= 1e-9 * (1 + abs(trace(a) * trace(b)))


@given(mat2, mat2, mat2)
def test_tensor_bilinear(a, a2, b):
    assert tensor(a + a2, b).is_close(tensor(a, b) + tensor(a2, b), 1e-12 * 400)


def test_trace_examples():
    assert trace(ComplexMatrix.identity(4)) == 4
    assert trace(paper_state().rho) == pytest.approx(1.0, abs=1e-12)
    assert trace(singlet_state().rho) == pytest.approx(1.0, abs=1e-12)


def test_trace_non_square():
    with pytest.raises(InvalidArgument):
        trace(ComplexMatrix.zeros(2, 4))


@given(st.lists(complex_entry, min_size=16, max_size=16), st.lists(complex_entry, min_size=16, max_size=16))
def test_trace_of_product_matches_product(ea, eb):
    a, b = ComplexMatrix(4, 4, tuple(ea)), ComplexMatrix(4, 4, tuple(eb))
    assert abs(trace_of_product(a, b) - trace(a @ b)) <= 1e-9 * 1000


def test_matmul_and_adjoint_against_numpy():
    rng = np.random.default_rng(7)
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    y = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    mx, my = ComplexMatrix.from_rows(x.tolist()), ComplexMatrix.from_rows(y.tolist())
    np.testing.assert_allclose(as_np(mx @ my), x @ y, atol=1e-12)
    np.testing.assert_allclose(as_np(mx.adjoint()), x.conj().T)


@pytest.mark.parametrize("diag, expected", [
    ((1, 2, 3), (3, 2, 1)),
    ((0.4624, 0.4624, 0.49), (0.49, 0.4624, 0.4624)),
    ((0, 0, 0), (0, 0, 0)),
])
def test_sym3_diagonal_examples(diag, expected):
    m = ComplexMatrix.from_rows([[diag[i] if i == j else 0 for j in range(3)] for i in range(3)])
    assert sym3_eigenvalues(m) == pytest.approx(expected, abs=1e-12)


def test_sym3_rejects_asymmetric():
    with pytest.raises(InvalidArgument):
        sym3_eigenvalues(ComplexMatrix.from_rows([[1, 2, 0], [0, 1, 0], [0, 0, 1]]))


sym3 = st.lists(st.floats(-5, 5, allow_nan=False), min_size=6, max_size=6).map(
    lambda v: [[v[0], v[1], v[2]], [v[1], v[3], v[4]], [v[2], v[4], v[5]]])


@given(sym3)
def test_sym3_eigenvalues_properties(rows):
    m = ComplexMatrix.from_rows(rows)
    ev = sym3_eigenvalues(m)
    assert list(ev) == sorted(ev, reverse=True)
    assert sum(ev) == pytest.approx(rows[0][0] + rows[1][1] + rows[2][2], abs=1e-9)
    a = np.array(rows)
    for lam in ev:
        # characteristic-polynomial residual det(A - lam I), scaled by the matrix size
        resid = np.linalg.det(a - lam * np.eye(3))
        assert abs(resid) < 1e-9 * max(1.0, np.abs(a).max()) ** 3
    np.testing.assert_allclose(ev, np.linalg.eigvalsh(a)[::-1], atol=1e-9)


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_hermitian_eigenvalues_match_numpy(seed):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = g + g.conj().T
    np.testing.assert_allclose(hermitian_eigenvalues(ComplexMatrix.from_rows(h.tolist())),
                               np.linalg.eigvalsh(h), atol=1e-10)


def test_check_hermitian_report():
    rep = check_hermitian(singlet_state().rho)
    assert rep.is_hermitian and rep.max_asymmetry == 0
    assert rep.min_eigenvalue == pytest.approx(0, abs=1e-12)
    assert rep.trace == pytest.approx(1)

    bad = check_hermitian(ComplexMatrix.from_rows([[1, 1], [0, 0]]))
    assert not bad.is_hermitian and bad.max_asymmetry == pytest.approx(1)


def test_shape_validation():
    with pytest.raises(InvalidArgument):
        ComplexMatrix(2, 2, (0j,) * 3)
    with pytest.raises(InvalidArgument):
        ComplexMatrix(5, 5, (0j,) * 25)

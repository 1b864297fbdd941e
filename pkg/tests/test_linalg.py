import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhmspace.linalg import helmert_basis, hyperplane_spectrum, jacobi_eigh, numerical_rank


@st.composite
def symmetric(draw, n_max=9):
    n = draw(st.integers(1, n_max))
    seed = draw(st.integers(0, 2**32 - 1))
    a = np.random.default_rng(seed).normal(size=(n, n))
    return a + a.T


@given(symmetric())
def test_jacobi_matches_numpy(a):
    w, v = jacobi_eigh(a)
    assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-10 * max(1.0, np.abs(a).max()))
    assert np.allclose(v.T @ v, np.eye(len(a)), atol=1e-10)
    assert np.allclose(a @ v, v * w, atol=1e-9 * max(1.0, np.abs(a).max()))


@given(symmetric(6))
def test_compiled_and_python_kernels_agree(a):
    w1, _ = jacobi_eigh(a, compiled=True)
    w2, _ = jacobi_eigh(a, compiled=False)
    assert np.allclose(w1, w2, atol=1e-12 * max(1.0, np.abs(a).max()))


def test_jacobi_eigenvalues_ascending_on_diagonal():
    w, v = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
    assert list(w) == [-1.0, 2.0, 3.0]
    assert np.allclose(np.abs(v), np.eye(3)[:, [1, 2, 0]])


@pytest.mark.parametrize("n", [1, 2, 3, 7])
def test_helmert_basis_is_orthonormal_and_mass_zero(n):
    v = helmert_basis(n)
    assert v.shape == (n, n - 1)
    assert np.allclose(v.T @ v, np.eye(n - 1))
    assert np.allclose(v.sum(axis=0), 0.0)


def test_numerical_rank_relative_threshold():
    assert numerical_rank(np.array([1.0, 1e-12, -2.0])) == 2
    assert numerical_rank(np.zeros(3)) == 0


def test_hyperplane_spectrum_of_discrete_space():
    # J - I restricted to mass zero is -I
    w, u = hyperplane_spectrum(np.ones((4, 4)) - np.eye(4))
    assert np.allclose(w, -1.0)
    assert np.allclose(u.sum(axis=0), 0.0)

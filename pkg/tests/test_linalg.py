import numpy as np
import pytest

from errors import DimensionMismatchError, SingularMatrixError
from linalg import (Rng, least_norm_solution, lu_solve, null_space_vector, numerical_rank, random_matrix,
                    random_unit_complex, random_vector, singular_values)


def test_rng_is_deterministic():
    a, b = Rng(7), Rng(7)
    assert np.array_equal(random_matrix(a, 3, 3), random_matrix(b, 3, 3))
    assert random_unit_complex(a) == random_unit_complex(b)
    assert not np.array_equal(random_vector(Rng(7), 4), random_vector(Rng(8), 4))
    assert abs(abs(random_unit_complex(Rng(1))) - 1) < 1e-15


def test_rng_rejects_bad_seed():
    with pytest.raises(ValueError):
        Rng(-1)


@pytest.mark.parametrize("shape", [(1, 1), (5, 5), (4, 7), (7, 3), (12, 12)])
def test_jacobi_singular_values_match_numpy(shape):
    """Test one-sided Jacobi against LAPACK on random complex matrices"""
    A = random_matrix(Rng(sum(shape)), *shape)
    expected = np.linalg.svd(A, compute_uv=False)
    assert np.allclose(singular_values(A), expected, rtol=1e-10, atol=1e-12)


def test_numerical_rank_of_deficient_matrix():
    rng = Rng(2)
    A = random_matrix(rng, 5, 2) @ random_matrix(rng, 2, 6)
    assert numerical_rank(A) == 2
    assert numerical_rank(random_matrix(rng, 4, 4)) == 4
    assert numerical_rank(np.zeros((3, 3))) == 0


def test_lu_solve():
    rng = Rng(3)
    A = random_matrix(rng, 6, 6)
    x = random_vector(rng, 6)
    assert np.allclose(lu_solve(A, A @ x), x)
    with pytest.raises(SingularMatrixError):
        lu_solve(np.zeros((3, 3)), np.ones(3))
    with pytest.raises(DimensionMismatchError):
        lu_solve(np.ones((2, 3)), np.ones(2))


def test_null_space_and_least_norm():
    """Test the line parameterization helpers"""
    rng = Rng(4)
    A = random_matrix(rng, 2, 3)
    b = random_vector(rng, 2)
    v = null_space_vector(A)
    assert np.isclose(np.linalg.norm(v), 1)
    assert np.allclose(A @ v, 0, atol=1e-12)
    x = least_norm_solution(A, b)
    assert np.allclose(A @ x, b)
    assert abs(np.vdot(v, x)) < 1e-10
    with pytest.raises(SingularMatrixError):
        null_space_vector(random_matrix(rng, 1, 3))


def _unitary(rng, n):
    q, _ = np.linalg.qr(random_matrix(rng, n, n))
    return q


@pytest.mark.parametrize("case", range(50))
def test_numerical_rank_ignores_unitary_factors(case):
    rng = Rng(1000 + case)
    m, n = 3 + case % 5, 2 + case % 7
    r = 1 + case % min(m, n)
    A = random_matrix(rng, m, r) @ random_matrix(rng, r, n)
    assert numerical_rank(A) == r
    assert numerical_rank(_unitary(rng, m) @ A @ _unitary(rng, n)) == r


def test_singular_values_carry_the_frobenius_norm():
    rng = Rng(6)
    for shape in ((6, 6), (3, 8), (9, 4)):
        A = random_matrix(rng, *shape)
        assert np.isclose(np.sum(singular_values(A) ** 2), np.linalg.norm(A, "fro") ** 2, rtol=1e-12)


def test_lu_solve_twenty_by_twenty():
    rng = Rng(9)
    A = random_matrix(rng, 20, 20)
    x = random_vector(rng, 20)
    assert np.linalg.norm(lu_solve(A, A @ x) - x) <= 1e-10 * np.linalg.norm(x)

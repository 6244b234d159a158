import numpy as np
import pytest

from errors import DimensionMismatchError
from generators import random_dense
from linalg import Rng, random_matrix, random_vector
from polynomial import (Polynomial, PolySystem, bezout_number, compile_system, differentiate, evaluate,
                        evaluate_system, gradient, jacobian, parse_polynomial, randomize)

NAMES = ["x", "y", "z"]


def poly(text):
    return parse_polynomial(text, NAMES)


def test_canonical_form_merges_and_drops_terms():
    """Test that like terms merge and cancelled terms vanish"""
    p = poly("x*y + y*x - 2*x*y + z")
    assert p == poly("z")
    assert poly("x - x").is_zero()
    assert poly("3").is_constant()
    assert poly("(x + 1)^2") == poly("x^2 + 2*x + 1")


def test_monomials_sorted_by_degree_first():
    """Test graded ordering of stored monomials"""
    p = poly("1 + z + x^2 + y^3")
    assert [m.degree for m in p.monomials] == [3, 2, 1, 0]


def test_evaluate_sphere_and_illustrative(illustrative_system):
    """Test evaluation at known zeros"""
    assert evaluate(poly("x^2 + y^2 + z^2 - 1"), [1, 0, 0]) == 0
    values = evaluate_system(illustrative_system, [0.5, 0.5, 0.5])
    assert np.abs(values).max() <= 1e-14


def test_evaluate_rejects_wrong_dimension():
    with pytest.raises(DimensionMismatchError):
        evaluate(poly("x + y"), [1.0, 2.0])


def test_differentiate_and_gradient():
    """Test symbolic derivative against the numeric gradient"""
    p = poly("x^2*y + 3*z")
    assert differentiate(p, 0) == poly("2*x*y")
    assert differentiate(p, 2) == poly("3")
    x = np.array([1.5, -2.0, 0.25j])
    g = gradient(p, x)
    assert np.allclose(g, [2 * 1.5 * -2.0, 1.5 ** 2, 3])
    with pytest.raises(IndexError):
        differentiate(p, 3)


def test_jacobian_matches_finite_differences():
    """Test compiled and plain Jacobians against central differences on 100 random cases"""
    h = 1e-6
    for case in range(100):
        n = 2 + case % 3
        system = random_dense(n_equations=n, n_vars=n, degrees=1 + case % 4, seed=case)
        rng = Rng(1000 + case)
        x = 0.5 * random_vector(rng, n)
        compiled = compile_system(system)
        J = compiled.jacobian(x)
        assert np.allclose(J, jacobian(system, x), rtol=1e-12, atol=1e-12)
        fd = np.empty_like(J)
        for j in range(n):
            e = np.zeros(n)
            e[j] = h
            fd[:, j] = (compiled.evaluate(x + e) - compiled.evaluate(x - e)) / (2 * h)
        scale = max(1.0, np.abs(J).max())
        assert np.abs(fd - J).max() <= 1e-6 * scale


def test_compiled_evaluate_matches_plain(illustrative_system):
    x = np.array([0.3 + 0.1j, -0.7, 1.2j])
    assert np.allclose(compile_system(illustrative_system).evaluate(x), evaluate_system(illustrative_system, x))


def test_randomize_combines_rows(illustrative_system, rng):
    """Test that row i of the randomized system is sum_j R[i, j] f_j"""
    R = random_matrix(rng, 2, 3)
    randomized = randomize(illustrative_system, R)
    x = np.array([0.2, 0.4j, -1.1])
    expected = R @ evaluate_system(illustrative_system, x)
    assert len(randomized) == 2
    assert np.allclose(evaluate_system(randomized, x), expected)
    assert np.allclose(compile_system(illustrative_system, R).evaluate(x), expected)
    with pytest.raises(DimensionMismatchError):
        randomize(illustrative_system, random_matrix(rng, 2, 2))


def test_compiled_embedding_offsets_variables():
    """Test a block reading the second half of a longer vector"""
    system = PolySystem((poly("x*y - z"),), 3)
    block = compile_system(system, offset=3, total_vars=6)
    w = np.array([9, 9, 9, 2.0, 3.0, 1.0])
    assert np.allclose(block.evaluate(w), [5.0])
    J = block.jacobian(w)
    assert J.shape == (1, 6)
    assert np.allclose(J[0], [0, 0, 0, 3.0, 2.0, -1.0])


def test_degrees_and_bezout(illustrative_system):
    assert illustrative_system.degrees == (5, 6, 8)
    assert bezout_number(illustrative_system) == 240


def test_polynomial_arithmetic():
    x, y = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
    p = (x + 2) * (y - 1) - x * y
    assert p == Polynomial.from_terms({(1, 0): -1, (0, 1): 2, (0, 0): -2}, 2)
    assert (x ** 3).degree == 3
    assert Polynomial.linear([1, 2], 3)([1, 1]) == 6
    with pytest.raises(DimensionMismatchError):
        x + Polynomial.variable(0, 3)

import numpy as np
import pytest

from diagonal import DiagonalProblem, build_diagonal_homotopy, intersect_with_hypersurface
from errors import DimensionMismatchError
from linalg import Rng
from polynomial import parse_system
from solver import EquationByEquationSolver, SolverConfig
from witness import hypersurface_witness, vanishes_at

CUBIC_TEXT = "vars: x, y, z; y - x^2; z - x^3;"
SPHERE_TEXT = "vars: x, y, z; x^2 + y^2 + z^2 - 1;"


@pytest.fixture
def twisted_cubic():
    """Witness points of the twisted cubic and the solver state that produced them."""
    system = parse_system(CUBIC_TEXT)
    solver = EquationByEquationSolver(SolverConfig(seed=1))
    result = solver.solve(system)
    return system, result.collection[2], solver


def test_diagonal_homotopy_shape_and_start_points(twisted_cubic):
    """Test the curve x surface homotopy is square in 2N variables and starts at zero"""
    system, W, solver = twisted_cubic
    context = solver.context
    sphere = parse_system(SPHERE_TEXT)[0]
    problem = DiagonalProblem(3, 1, system, context.randomizer(system, 2), sphere, context.flag, np.exp(0.4j))
    assert problem.n_equations == 6
    assert len(problem.randomized_a) == 2
    h = build_diagonal_homotopy(problem)
    assert h.n_vars == 6
    assert h.fixed_block.n_equations == 3
    assert h.moving_start.n_equations == 3
    hyper = hypersurface_witness(sphere, context).points
    for w in W.points:
        for x in hyper:
            start = np.concatenate([w.point, x.point])
            assert np.linalg.norm(h.evaluate(start, 0.0)) <= 1e-8 * (1 + np.linalg.norm(start))


def test_intersect_twisted_cubic_with_sphere(twisted_cubic):
    """Test the 3 x 2 diagonal finds the six points of cubic and sphere"""
    system, W, solver = twisted_cubic
    assert len(W) == 3
    sphere = parse_system(SPHERE_TEXT)[0]
    candidates, stats = intersect_with_hypersurface(W.points, system, sphere, 2, solver.context, Rng(4))
    assert stats == {"tracked": 6, "converged": 6, "diverged": 0, "failed": 0}
    assert len(candidates) == 6
    full = system.append(sphere)
    for c in candidates:
        assert vanishes_at(full, c.point)
        assert c.residual <= 1e-8
    keys = [c.sort_key() for c in candidates]
    assert keys == sorted(keys)


def test_candidate_sets_agree_across_gammas(twisted_cubic):
    system, W, solver = twisted_cubic
    sphere = parse_system(SPHERE_TEXT)[0]
    first, _ = intersect_with_hypersurface(W.points, system, sphere, 2, solver.context, Rng(4))
    second, _ = intersect_with_hypersurface(W.points, system, sphere, 2, solver.context, Rng(99))
    for a in first:
        assert min(np.linalg.norm(a.point - b.point) for b in second) <= 1e-6


def test_dimension_zero_input_is_rejected(twisted_cubic):
    system, _, solver = twisted_cubic
    sphere = parse_system(SPHERE_TEXT)[0]
    with pytest.raises(DimensionMismatchError):
        DiagonalProblem(3, 0, system, np.ones((3, 2)), sphere, solver.context.flag, 1.0)
    with pytest.raises(DimensionMismatchError):
        DiagonalProblem(3, 1, system, np.ones((2, 2)), parse_system("vars: x, y, z; 4;")[0],
                        solver.context.flag, 1.0)


def test_empty_inputs_track_nothing(twisted_cubic):
    system, W, solver = twisted_cubic
    sphere = parse_system(SPHERE_TEXT)[0]
    candidates, stats = intersect_with_hypersurface([], system, sphere, 2, solver.context, Rng(0))
    assert candidates == []
    assert stats["tracked"] == 0
    candidates, stats = intersect_with_hypersurface(W.points, system, sphere, 2, solver.context, Rng(0),
                                                    hyper_points=[])
    assert stats["tracked"] == 0

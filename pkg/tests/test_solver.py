import pytest

import config
from errors import DimensionMismatchError
from generators import random_dense
from polynomial import parse_system
from solver import (EquationByEquationSolver, EquationOrder, Mode, SolverConfig, StageStats, preprocess, solve,
                    solve_nonsingular)
from witness import vanishes_at


def system(text):
    return parse_system(f"vars: x, y, z; {text}")


def assert_balanced(stats: StageStats, inputs: int = None):
    """Every path, every witness point and every hypersurface point is accounted for exactly once."""
    assert stats.tracked == stats.converged + stats.diverged + stats.failed
    assert stats.converged == (stats.dropped_d + stats.dropped_e + stats.junk_g
                               + stats.dropped_singular + stats.accepted)
    assert stats.hypersurface_points == stats.discarded_b + stats.paired
    if inputs is not None:
        assert stats.shortcut_a + stats.discarded_a + stats.discarded_codim_n + stats.pooled == inputs


def test_preprocess_drops_zero_polynomials():
    prepared, report = preprocess(parse_system("vars: x, y; x - x; y - 1;"))
    assert report.dropped_zero == [0]
    assert not report.inconsistent
    assert len(prepared) == 1
    assert report.order == [1]


def test_nonzero_constant_means_no_solutions(solver_config):
    result = solve(parse_system("vars: x, y; x - 1; 2;"), cfg=solver_config)
    assert result.preprocess.inconsistent
    assert result.preprocess.constant_index == 1
    assert result.collection.counts() == {}
    assert result.stages == []


def test_degree_order_sorts_ascending():
    prepared, report = preprocess(parse_system("vars: x, y; x^2 + y^2 - 1; x - y;"), EquationOrder.DEGREE)
    assert report.order == [1, 0]
    assert list(prepared.degrees) == [1, 2]


def test_line_and_plane_components(solver_config):
    """Test {xz, yz}: the plane z = 0 and the line x = y = 0"""
    result = solve(system("x*z; y*z;"), cfg=solver_config)
    collection, stages = result
    assert collection.counts() == {1: 1, 2: 1}
    stats = stages[0]
    assert stats.shortcut_a == 1
    assert stats.discarded_b == 1
    assert stats.junk_g == 0
    assert stats.tracked == 1
    assert_balanced(stats)
    plane = collection[1].points[0].point
    assert abs(plane[2]) < 1e-10
    line = collection[2].points[0].point
    assert abs(line[0]) < 1e-10 and abs(line[1]) < 1e-10
    assert not result.incomplete


def test_junk_inside_a_component_is_removed(solver_config):
    """Test {xz, z(x+z)}: the diagonal lands on x = z = 0, which lies in z = 0"""
    result = solve(system("x*z; z*(x + z);"), cfg=solver_config)
    assert result.collection.counts() == {1: 1, 2: 0}
    stats = result.stages[0]
    assert stats.junk_g == 1
    assert stats.accepted == 0
    assert_balanced(stats)


def test_ignore_set_removes_plane(solver_config):
    Q = system("z;")
    result = solve(system("x*z; y*z;"), Q, solver_config)
    assert result.collection.counts() == {1: 0, 2: 1}
    for W in result.collection.nonempty():
        for w in W.points:
            assert not vanishes_at(Q, w.point)


def test_ignore_set_must_match_variables(solver_config):
    with pytest.raises(DimensionMismatchError):
        solve(system("x*z;"), parse_system("vars: x; x;"), solver_config)


def test_nonsingular_mode_two_quadrics():
    quadrics = random_dense(2, 2, 2, seed=5)
    result = solve_nonsingular(quadrics, cfg=SolverConfig(seed=2))
    assert result.config.mode is Mode.NONSINGULAR
    assert result.collection.counts()[2] == 4
    for w in result.collection[2].points:
        assert not w.singular
        assert w.residual <= 1e-8
    assert_balanced(result.stages[0])


def test_same_seed_same_answer():
    quadrics = random_dense(2, 2, 2, seed=8)
    first = solve(quadrics, cfg=SolverConfig(seed=9))
    second = solve(quadrics, cfg=SolverConfig(seed=9))
    a = [w.point for w in first.collection[2].points]
    b = [w.point for w in second.collection[2].points]
    assert len(a) == len(b) == 4
    for x, y in zip(a, b):
        assert (x == y).all()


def test_first_witness_set_counts_multiplicity():
    solver = EquationByEquationSolver(SolverConfig(seed=4))
    result = solver.solve(system("(x - 1)^2*(y + z);"))
    assert result.collection.counts() == {1: 2}
    assert result.hypersurface_counts == [3]
    assert result.stages == []


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(worker_count=0)
    with pytest.raises(ValueError):
        SolverConfig(seed=-3)
    assert SolverConfig(mode="nonsingular").mode is Mode.NONSINGULAR


def test_illustrative_filter_counts(illustrative_system, solver_config):
    """Test which points the shortcut and the earlier-equation tests remove at each stage"""
    result = solve(illustrative_system, cfg=solver_config)
    first, second = result.stages
    assert first.shortcut_a == 2
    assert first.discarded_b == 2
    assert second.discarded_b == 7
    assert_balanced(first, inputs=result.hypersurface_counts[0])
    assert_balanced(second, inputs=first.shortcut_a + first.accepted)


def test_tangent_parabolas_meet_in_a_double_point(solver_config):
    """Test {x^2 - y, x^2 + y}: both finite paths end at the origin"""
    result = solve(parse_system("vars: x, y; x^2 - y; x^2 + y;"), cfg=solver_config)
    (origin,) = result.collection[2].points
    assert abs(origin.point).max() < 1e-6
    assert origin.multiplicity_count == 2
    assert origin.singular
    stats = result.stages[0]
    assert stats.dropped_d >= 1
    assert_balanced(stats, inputs=2)


def test_double_hypersurface_points_are_singular(solver_config):
    plain = solve(system("x^2 + y^2 + z^2 - 1;"), cfg=solver_config).collection[1]
    double = solve(system("(x^2 + y^2 + z^2 - 1)^2;"), cfg=solver_config).collection[1]
    assert [w.singular for w in plain.points] == [False, False]
    assert [(w.multiplicity_count, w.singular) for w in double.points] == [(2, True), (2, True)]
    assert solve_nonsingular(system("(x^2 + y^2 + z^2 - 1)^2;"), cfg=solver_config).collection.counts() == {1: 0}


def test_ignore_set_roots_are_counted(solver_config):
    result = solve(system("x*z; y*z;"), system("z;"), solver_config)
    stats = result.stages[0]
    assert stats.dropped_q == 1
    assert stats.hypersurface_points == 1
    assert_balanced(stats, inputs=1)


def test_config_defaults_are_read_at_construction(monkeypatch):
    monkeypatch.setattr(config, "MODE", "nonsingular")
    monkeypatch.setattr(config, "ORDER", "degree")
    cfg = SolverConfig()
    assert cfg.mode is Mode.NONSINGULAR
    assert cfg.equation_order is EquationOrder.DEGREE
    monkeypatch.setattr(config, "MODE", "sometimes")
    with pytest.raises(ValueError):
        SolverConfig()

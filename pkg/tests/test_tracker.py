import numpy as np
import pytest

from errors import DimensionMismatchError
from generators import illustrative_system
from linalg import Rng, random_matrix, random_vector
from polynomial import AffineRows, PolySystem, compile_system, parse_polynomial
from tracker import Homotopy, PathStatus, TrackOptions, newton_refine, summarize, track_path, track_paths
from witness import WitnessContext, hypersurface_witness


def univariate(text):
    return compile_system(PolySystem((parse_polynomial(text, ["x"]),), 1))


EMPTY = compile_system(PolySystem((), 1))


def test_track_square_root_path():
    """Test x(t) = sqrt(1 + 3t) from x = 1 to x = 2"""
    h = Homotopy(EMPTY, univariate("x^2 - 1"), univariate("x^2 - 4"), 1.0)
    result = track_path(h, [1.0])
    assert result.status is PathStatus.CONVERGED
    assert abs(result.endpoint[0] - 2) < 1e-10
    assert result.endpoint_residual < 1e-9


def test_gamma_trick_reaches_both_roots():
    h = Homotopy(EMPTY, univariate("x^2 - 1"), univariate("x^2 - 4"), np.exp(0.9j))
    results = track_paths(h, [[1.0], [-1.0]])
    assert all(r.converged for r in results)
    ends = sorted(r.endpoint[0].real for r in results)
    assert np.allclose(ends, [-2, 2], atol=1e-9)


def test_degree_drop_sends_one_path_to_infinity():
    """Test the extra start solution diverges when the target has lower degree"""
    h = Homotopy(EMPTY, univariate("x^2 - 1"), univariate("x - 2"), np.exp(0.7j))
    results = track_paths(h, [[1.0], [-1.0]])
    statuses = sorted(r.status.value for r in results)
    assert statuses == ["converged", "diverged"]
    converged = next(r for r in results if r.converged)
    assert abs(converged.endpoint[0] - 2) < 1e-9
    assert summarize(results) == {"tracked": 2, "converged": 1, "diverged": 1, "failed": 0}


def test_concurrent_tracking_keeps_start_order():
    h = Homotopy(EMPTY, univariate("x^3 - 1"), univariate("x^3 - 2*x + 5"), np.exp(0.3j))
    starts = [[np.exp(2j * np.pi * k / 3)] for k in range(3)]
    sequential = track_paths(h, starts, workers=1)
    parallel = track_paths(h, starts, workers=3)
    for a, b in zip(sequential, parallel):
        assert a.status is b.status
        assert np.allclose(a.endpoint, b.endpoint)


def test_fixed_block_is_kept_along_the_path():
    """Test a homotopy in two variables whose first row never moves"""
    fixed = compile_system(PolySystem((parse_polynomial("x - y", ["x", "y"]),), 2))
    start = compile_system(PolySystem((parse_polynomial("x^2 - 1", ["x", "y"]),), 2))
    target = AffineRows([[1.0, 1.0]], [-3.0])
    h = Homotopy(fixed, start, target, np.exp(0.5j))
    results = track_paths(h, [[1.0, 1.0], [-1.0, -1.0]])
    statuses = sorted(r.status.value for r in results)
    assert statuses == ["converged", "diverged"]
    end = next(r for r in results if r.converged).endpoint
    assert np.allclose(end, [1.5, 1.5])


def test_homotopy_must_be_square():
    with pytest.raises(DimensionMismatchError):
        Homotopy(univariate("x"), univariate("x^2 - 1"), univariate("x^2 - 4"))
    with pytest.raises(ValueError):
        Homotopy(EMPTY, univariate("x^2 - 1"), univariate("x^2 - 4"), 0)


def test_reversed_homotopy_swaps_ends():
    h = Homotopy(EMPTY, univariate("x^2 - 1"), univariate("x^2 - 4"), 1.0)
    back = h.reversed(1.0)
    result = track_path(back, [2.0])
    assert result.converged
    assert abs(result.endpoint[0] - 1) < 1e-10


def test_newton_refine():
    result = newton_refine(univariate("x^2 - 2"), [1.4], 1e-14, 20)
    assert result.converged
    assert abs(result.x[0] - np.sqrt(2)) < 1e-14


def test_track_options_validation():
    with pytest.raises(ValueError):
        TrackOptions(step_min=0.5, step_init=0.1)
    with pytest.raises(ValueError):
        TrackOptions(t_end_offset=0)


def test_start_point_off_the_start_system_fails():
    h = Homotopy(EMPTY, univariate("x^2 - 1"), univariate("x^2 - 4"), 1.0)
    result = track_path(h, [1.5])
    assert result.status is PathStatus.FAILED
    assert result.steps_taken == 0
    assert result.t_final == 0.0
    assert "start point" in result.message


@pytest.fixture
def slice_motion():
    """Witness points of the illustrative first equation and a homotopy moving their slice."""
    f1 = illustrative_system()[0]
    context = WitnessContext.create(Rng(17), 3, 1)
    points = [w.point for w in hypersurface_witness(f1, context).points]
    rng = Rng(18)
    target = AffineRows(random_matrix(rng, 2, 3), random_vector(rng, 2))
    fixed = context.randomized_block(PolySystem((f1,), 3), 1)
    return Homotopy(fixed, context.flag.slice_for_codim(1), target, np.exp(1.3j)), points


def test_reverse_tracking_returns_to_the_start(slice_motion):
    h, starts = slice_motion
    forward = track_paths(h, starts)
    assert all(r.converged for r in forward)
    back = track_paths(h.reversed(1 / h.gamma), [r.endpoint for r in forward])
    for x0, r in zip(starts, back):
        assert r.converged
        assert np.linalg.norm(r.endpoint - x0) <= 1e-6 * (1 + np.linalg.norm(x0))


def test_t_increases_along_every_path(slice_motion):
    h, starts = slice_motion
    for r in track_paths(h, starts, TrackOptions(keep_history=True)):
        assert r.t_history[0] == 0.0
        assert r.t_history[-1] == 1.0
        assert all(b > a for a, b in zip(r.t_history, r.t_history[1:]))


def test_converged_endpoints_meet_the_newton_tolerance(slice_motion):
    h, starts = slice_motion
    opts = TrackOptions()
    results = track_paths(h, starts, opts)
    assert len(results) == 5
    for r in results:
        assert r.converged
        assert r.endpoint_residual <= opts.newton_tol
        assert h.scaled_residual(r.endpoint, 1.0) == r.endpoint_residual

"""Predictor-corrector continuation of homotopy paths from t=0 to t=1."""

import asyncio
import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

import config
from errors import DimensionMismatchError, SingularMatrixError
from linalg import lu_solve

logger = logging.getLogger(__name__)

# end-of-path growth that marks a path as running off to infinity
DIVERGENCE_GROWTH = 10.0
GROWTH_CHECKPOINT_T = 0.99
# start points farther than this many newton_tol from H(x, 0) = 0 are rejected
START_RESIDUAL_FACTOR = 1e3


class PathStatus(str, enum.Enum):
    CONVERGED = "converged"
    DIVERGED = "diverged"
    FAILED = "failed"


@dataclass(frozen=True)
class TrackOptions:
    step_init: float = config.STEP_INIT
    step_min: float = config.STEP_MIN
    step_max: float = config.STEP_MAX
    newton_tol: float = config.NEWTON_TOL
    max_newton_iters: int = config.MAX_NEWTON_ITERS
    max_steps: int = config.MAX_STEPS
    diverge_norm: float = config.DIVERGE_NORM
    t_end_offset: float = config.T_END_OFFSET
    end_newton_iters: int = 30
    keep_history: bool = False

    def __post_init__(self):
        if not 0 < self.step_min <= self.step_init <= self.step_max < 1:
            raise ValueError("track options need 0 < step_min <= step_init <= step_max < 1")
        if not self.newton_tol > 0:
            raise ValueError("newton_tol must be positive")
        if self.max_newton_iters < 1 or self.max_steps < 1 or self.end_newton_iters < 1:
            raise ValueError("iteration limits must be positive")
        if not 0 < self.t_end_offset < 1:
            raise ValueError("t_end_offset must lie in (0, 1)")


@dataclass
class Homotopy:
    """H(x, t) = [fixed(x); gamma*(1-t)*start(x) + t*target(x)].

    Blocks expose `evaluate(x)`, `jacobian(x)`, `n_equations` and `n_vars`
    (CompiledSystem, AffineRows, BlockSystem).
    """

    fixed_block: object
    moving_start: object
    moving_target: object
    gamma: complex = 1.0

    def __post_init__(self):
        self.n_vars = self.moving_start.n_vars
        for block in (self.fixed_block, self.moving_target):
            if block.n_vars != self.n_vars:
                raise DimensionMismatchError("all homotopy blocks must share one variable vector")
        if self.moving_start.n_equations != self.moving_target.n_equations:
            raise DimensionMismatchError("start and target blocks need the same number of rows")
        if self.fixed_block.n_equations + self.moving_start.n_equations != self.n_vars:
            raise DimensionMismatchError(
                f"homotopy is not square: {self.fixed_block.n_equations} fixed + "
                f"{self.moving_start.n_equations} moving rows in {self.n_vars} variables")
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")
        self.gamma = complex(self.gamma)

    def evaluate(self, x: np.ndarray, t: float) -> np.ndarray:
        moving = self.gamma * (1 - t) * self.moving_start.evaluate(x) + t * self.moving_target.evaluate(x)
        return np.concatenate([self.fixed_block.evaluate(x), moving])

    def jacobians(self, x: np.ndarray, t: float):
        """(dH/dx, dH/dt) at (x, t)."""
        fixed_jac = self.fixed_block.jacobian(x)
        hx = np.vstack([fixed_jac,
                        self.gamma * (1 - t) * self.moving_start.jacobian(x) + t * self.moving_target.jacobian(x)])
        moving_dt = self.moving_target.evaluate(x) - self.gamma * self.moving_start.evaluate(x)
        ht = np.concatenate([np.zeros(self.fixed_block.n_equations, dtype=np.complex128), moving_dt])
        return hx, ht

    def scaled_residual(self, x: np.ndarray, t: float) -> float:
        """Largest |H_i(x, t)| relative to the size of the terms of row i."""
        moving = abs(self.gamma) * (1 - t) * self.moving_start.row_scales(x) + t * self.moving_target.row_scales(x)
        scales = np.concatenate([self.fixed_block.row_scales(x), moving])
        if not scales.size:
            return 0.0
        return float(np.max(np.abs(self.evaluate(x, t)) / scales))

    def at(self, t: float) -> "FrozenHomotopy":
        return FrozenHomotopy(self, t)

    def reversed(self, gamma: complex) -> "Homotopy":
        return Homotopy(self.fixed_block, self.moving_target, self.moving_start, gamma)


@dataclass
class FrozenHomotopy:
    """H(., t) as a square system for Newton's method."""

    homotopy: Homotopy
    t: float

    @property
    def n_vars(self) -> int:
        return self.homotopy.n_vars

    @property
    def n_equations(self) -> int:
        return self.homotopy.n_vars

    def evaluate(self, x):
        return self.homotopy.evaluate(x, self.t)

    def jacobian(self, x):
        return self.homotopy.jacobians(x, self.t)[0]


@dataclass
class PathResult:
    status: PathStatus
    endpoint: np.ndarray
    endpoint_residual: float
    steps_taken: int
    max_norm_seen: float
    t_final: float = 1.0
    message: str = ""
    t_history: Optional[List[float]] = None

    @property
    def converged(self) -> bool:
        return self.status is PathStatus.CONVERGED


class NewtonResult(NamedTuple):
    x: np.ndarray
    residual: float
    converged: bool
    iterations: int


def newton_refine(system, x, tol: float, max_iters: int) -> NewtonResult:
    """Newton's method on a square system until the update is below tol*(1+|x|)."""
    x = np.array(x, dtype=np.complex128)
    if system.n_equations != system.n_vars:
        raise DimensionMismatchError("newton_refine needs a square system")
    for iteration in range(1, max_iters + 1):
        value = system.evaluate(x)
        try:
            update = lu_solve(system.jacobian(x), -value)
        except (SingularMatrixError, ValueError) as exc:
            logger.debug("Newton stopped at iteration %d: %s", iteration, exc)
            return NewtonResult(x, float(np.linalg.norm(value)), False, iteration)
        x = x + update
        if not np.all(np.isfinite(x)):
            return NewtonResult(x, float("inf"), False, iteration)
        if np.linalg.norm(update) <= tol * (1 + np.linalg.norm(x)):
            return NewtonResult(x, float(np.linalg.norm(system.evaluate(x))), True, iteration)
    return NewtonResult(x, float(np.linalg.norm(system.evaluate(x))), False, max_iters)


def _correct(h: Homotopy, x: np.ndarray, t: float, opts: TrackOptions):
    """Fixed-t Newton corrector; requires contraction and convergence within the budget."""
    previous = None
    for _ in range(opts.max_newton_iters):
        update = lu_solve(h.jacobians(x, t)[0], -h.evaluate(x, t))
        x = x + update
        size = np.linalg.norm(update)
        if not np.isfinite(size):
            return x, False
        if size <= opts.newton_tol * (1 + np.linalg.norm(x)):
            return x, True
        if previous is not None and size > 0.5 * previous:
            return x, False
        previous = size
    return x, False


def track_path(h: Homotopy, x0, opts: TrackOptions = None) -> PathResult:
    """Follow the solution of H(x, t) = 0 through x0 at t = 0 to t = 1.

    Euler predictor along dx/dt = -Hx^{-1} Ht, Newton corrector at fixed t.
    The step doubles after four consecutive accepts and halves on a reject.
    """
    opts = opts or TrackOptions()
    x = np.array(x0, dtype=np.complex128)
    if x.size != h.n_vars:
        raise DimensionMismatchError(f"start point has {x.size} coordinates, homotopy has {h.n_vars}")
    t = 0.0
    step = opts.step_init
    streak = 0
    steps = 0
    max_norm = float(np.linalg.norm(x))
    checkpoint_norm = None
    t_end = 1.0 - opts.t_end_offset
    history = [t] if opts.keep_history else None

    start_residual = h.scaled_residual(x, 0.0)
    if not start_residual <= START_RESIDUAL_FACTOR * opts.newton_tol:
        logger.warning(f"⚠️ Start point is not a solution of H(x, 0): scaled residual {start_residual:.2e}")
        return PathResult(PathStatus.FAILED, x, start_residual, 0, max_norm, 0.0,
                          "start point does not solve the start system", history)

    while t < t_end:
        if steps >= opts.max_steps:
            return PathResult(PathStatus.FAILED, x, float("inf"), steps, max_norm, t,
                              "step budget exhausted", history)
        steps += 1
        dt = min(step, t_end - t)
        try:
            hx, ht = h.jacobians(x, t)
            predicted = x + dt * lu_solve(hx, -ht)
            corrected, accepted = _correct(h, predicted, t + dt, opts)
        except (SingularMatrixError, ValueError):
            accepted = False
        if accepted:
            x, t = corrected, t + dt
            if history is not None:
                history.append(t)
            norm = float(np.linalg.norm(x))
            max_norm = max(max_norm, norm)
            if checkpoint_norm is None and t >= GROWTH_CHECKPOINT_T:
                checkpoint_norm = norm
            if norm > opts.diverge_norm:
                return PathResult(PathStatus.DIVERGED, x, float("inf"), steps, max_norm, t,
                                  "norm exceeded divergence threshold", history)
            streak += 1
            if streak >= 4:
                step = min(2 * step, opts.step_max)
                streak = 0
        else:
            streak = 0
            step /= 2
            if step < opts.step_min:
                near_end = t >= GROWTH_CHECKPOINT_T
                blown_up = max_norm >= np.sqrt(opts.diverge_norm)
                status = PathStatus.DIVERGED if (near_end or blown_up) else PathStatus.FAILED
                return PathResult(status, x, float("inf"), steps, max_norm, t, "step size collapsed", history)

    refined = newton_refine(h.at(1.0), x, opts.newton_tol, opts.end_newton_iters)
    end_norm = float(np.linalg.norm(refined.x))
    moved = np.linalg.norm(refined.x - x)
    residual = h.scaled_residual(refined.x, 1.0) if np.all(np.isfinite(refined.x)) else float("inf")
    if history is not None:
        history.append(1.0)
    if refined.converged and moved <= 1e-2 * (1 + np.linalg.norm(x)) and residual <= opts.newton_tol:
        return PathResult(PathStatus.CONVERGED, refined.x, residual, steps,
                          max(max_norm, end_norm), 1.0, t_history=history)
    reference = checkpoint_norm if checkpoint_norm is not None else float(np.linalg.norm(x0))
    if np.linalg.norm(x) >= DIVERGENCE_GROWTH * (1 + reference):
        return PathResult(PathStatus.DIVERGED, x, residual, steps, max_norm, t,
                          "endpoint at infinity", history)
    return PathResult(PathStatus.FAILED, x, residual, steps, max_norm, t,
                      "endpoint refinement did not converge", history)


def track_paths(h: Homotopy, starts: Sequence, opts: TrackOptions = None, workers: int = 1) -> List[PathResult]:
    """Track every start point; results come back in start order."""
    opts = opts or TrackOptions()
    starts = list(starts)
    if workers <= 1 or len(starts) <= 1:
        return [track_path(h, x0, opts) for x0 in starts]
    return asyncio.run(_track_concurrently(h, starts, opts, workers))


async def _track_concurrently(h: Homotopy, starts: list, opts: TrackOptions, workers: int) -> List[PathResult]:
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        tasks = [loop.run_in_executor(pool, track_path, h, x0, opts) for x0 in starts]
        results = await asyncio.gather(*tasks, return_exceptions=True)

    out = []
    for i, result in enumerate(results):
        if isinstance(result, Exception):
            logger.error(f"❌ Path {i} raised {type(result).__name__}: {result}")
            x0 = np.asarray(starts[i], dtype=np.complex128)
            out.append(PathResult(PathStatus.FAILED, x0, float("inf"), 0, float(np.linalg.norm(x0)), 0.0,
                                  str(result)))
        else:
            out.append(result)
    return out


def summarize(results: Sequence[PathResult]) -> dict:
    counts = {status: 0 for status in PathStatus}
    for r in results:
        counts[r.status] += 1
    return {
        "tracked": len(results),
        "converged": counts[PathStatus.CONVERGED],
        "diverged": counts[PathStatus.DIVERGED],
        "failed": counts[PathStatus.FAILED],
    }


if __name__ == "__main__":
    # x(t) = sqrt(1 + 3t) on (1-t)(x^2-1) + t(x^2-4)
    from polynomial import PolySystem, compile_system, parse_polynomial

    names = ["x"]
    start = compile_system(PolySystem((parse_polynomial("x^2 - 1", names),), 1))
    target = compile_system(PolySystem((parse_polynomial("x^2 - 4", names),), 1))
    empty = compile_system(PolySystem((), 1))
    result = track_path(Homotopy(empty, start, target, 1.0), [1.0])
    print(f"{result.status.value}: x(1) = {result.endpoint[0]:.12f} after {result.steps_taken} steps")

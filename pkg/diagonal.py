"""Diagonal homotopy: intersect a pure-dimensional witness set with a hypersurface.

Works extrinsically in (u, v) in C^{2N}: u moves on A, v on V(g), and the
moving block trades the slice rows H_a(u), H_1(v)..H_{N-1}(v) for the
diagonal u - v.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import DimensionMismatchError
from linalg import Rng, random_unit_complex
from polynomial import AffineRows, BlockSystem, Polynomial, PolySystem, compile_system, randomize
from tracker import Homotopy, PathResult, summarize, track_paths
from witness import (GenericFlag, WitnessContext, WitnessPoint, hypersurface_witness, point_residual,
                     refine_point)

logger = logging.getLogger(__name__)


@dataclass
class DiagonalProblem:
    n_vars: int
    dim_a: int
    system_a: PolySystem
    randomizer_a: np.ndarray
    g: Polynomial
    flag: GenericFlag
    gamma: complex

    def __post_init__(self):
        if not 1 <= self.dim_a < self.n_vars:
            raise DimensionMismatchError(
                f"diagonal homotopy needs 1 <= dim A < {self.n_vars}, got dim A = {self.dim_a}")
        if self.g.degree < 1:
            raise DimensionMismatchError("the hypersurface polynomial must be nonconstant")
        if self.system_a.n_vars != self.n_vars or self.g.n_vars != self.n_vars:
            raise DimensionMismatchError("system, hypersurface and flag must share one ambient space")
        expected = (self.n_vars - self.dim_a, len(self.system_a))
        if np.shape(self.randomizer_a) != expected:
            raise DimensionMismatchError(f"randomizer must be {expected}, got {np.shape(self.randomizer_a)}")

    @property
    def randomized_a(self) -> PolySystem:
        return randomize(self.system_a, self.randomizer_a)

    @property
    def n_equations(self) -> int:
        return (self.n_vars - self.dim_a) + 1 + (self.dim_a - 1) + self.n_vars


def build_diagonal_homotopy(problem: DiagonalProblem) -> Homotopy:
    n, a = problem.n_vars, problem.dim_a
    total = 2 * n
    fixed = BlockSystem([
        compile_system(problem.system_a, problem.randomizer_a, 0, total),
        compile_system(PolySystem((problem.g,), n), None, n, total),
        problem.flag.rows(a - 1).embed(0, total),
    ], total)
    start = problem.flag.rows(a, a - 1).embed(0, total).stack(problem.flag.rows(n - 1).embed(n, total))
    identity = np.eye(n, dtype=np.complex128)
    target = AffineRows(np.hstack([identity, -identity]))
    return Homotopy(fixed, start, target, problem.gamma)


@dataclass
class Candidate:
    """A diagonal endpoint projected to u and refined; `source` = (index in A, index in X)."""

    point: np.ndarray
    residual: float
    source: Tuple[int, int]
    path: PathResult

    def sort_key(self):
        return tuple(np.column_stack([self.point.real, self.point.imag]).ravel())


def intersect_with_hypersurface(points_a: Sequence[WitnessPoint], system_a: PolySystem, g: Polynomial,
                                codim: int, context: WitnessContext, rng: Rng,
                                hyper_points: Optional[Sequence[WitnessPoint]] = None,
                                ) -> Tuple[List[Candidate], Dict[str, int]]:
    """Candidates for the codim+1 witness superset of A ∩ V(g).

    `points_a` are witness points of codimension `codim` that g does not vanish
    on; `hyper_points` defaults to the full hypersurface witness set of g.
    """
    n = context.n_vars
    problem_gamma = random_unit_complex(rng)
    if hyper_points is None:
        hyper_points = hypersurface_witness(g, context).points
    stats = summarize([])
    if not points_a or not hyper_points:
        return [], stats

    problem = DiagonalProblem(n, n - codim, system_a, context.randomizer(system_a, codim), g,
                              context.flag, problem_gamma)
    h = build_diagonal_homotopy(problem)
    pairs = list(product(range(len(points_a)), range(len(hyper_points))))
    starts = [np.concatenate([points_a[i].point, hyper_points[k].point]) for i, k in pairs]
    logger.debug(f"Diagonal at codim {codim}: {len(points_a)} x {len(hyper_points)} paths")

    results = track_paths(h, starts, context.track_options, context.workers)
    stats = summarize(results)
    target_system = system_a.append(g)
    target_rows = context.flag.slice_for_codim(codim + 1)
    tol_dup = context.tolerances.dup

    candidates = []
    for source, result in zip(pairs, results):
        if not result.converged:
            continue
        u, v = result.endpoint[:n], result.endpoint[n:]
        gap = np.linalg.norm(u - v)
        if gap > tol_dup * (1 + np.linalg.norm(u)):
            stats["converged"] -= 1
            stats["failed"] += 1
            context.warn(f"diagonal endpoint off the diagonal by {gap:.2e} (start pair {source})")
            continue
        point = refine_point(target_system, codim + 1, u, context)
        candidates.append(Candidate(point, point_residual(target_system, target_rows, point), source, result))
    candidates.sort(key=Candidate.sort_key)
    return candidates, stats

"""One-shot total-degree homotopy for square systems.

Tracks all prod(d_i) paths from x_i^{d_i} - b_i = 0 at once. Used as the
baseline the equation-by-equation method is measured against, and as an
independent check of its nonsingular output.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from errors import DimensionMismatchError
from linalg import Rng, numerical_rank, random_unit_complex
from polynomial import Polynomial, PolySystem, compile_system
from tracker import Homotopy, PathStatus, TrackOptions, newton_refine, summarize, track_paths
from witness import Tolerances, is_duplicate

logger = logging.getLogger(__name__)


def total_degree_start(system: PolySystem, rng: Rng) -> Tuple[np.ndarray, List[np.ndarray]]:
    """Random constants b_i and every solution of x_i^{d_i} = b_i."""
    degrees = system.degrees
    b = np.array([random_unit_complex(rng) for _ in range(system.n_vars)])
    per_coordinate = []
    for d, bi in zip(degrees, b):
        root = bi ** (1.0 / d)
        per_coordinate.append(root * np.exp(2j * np.pi * np.arange(d) / d))
    starts = [np.array(choice, dtype=np.complex128) for choice in itertools.product(*per_coordinate)]
    return b, starts


def start_system(degrees, b) -> PolySystem:
    n = len(degrees)
    polys = []
    for i, (d, bi) in enumerate(zip(degrees, b)):
        exponents = tuple(d if j == i else 0 for j in range(n))
        polys.append(Polynomial.from_terms({exponents: 1.0, (0,) * n: -bi}, n))
    return PolySystem(tuple(polys), n)


@dataclass
class OneShotResult:
    points: List[np.ndarray] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    singular_dropped: int = 0
    duplicates: int = 0


def solve_total_degree(system: PolySystem, rng: Rng, opts: TrackOptions = None, tolerances: Tolerances = None,
                       workers: int = 1) -> OneShotResult:
    """Nonsingular isolated solutions of a square system."""
    if len(system) != system.n_vars:
        raise DimensionMismatchError(
            f"total-degree homotopy needs a square system, got {len(system)} equations in {system.n_vars} variables")
    if any(d < 1 for d in system.degrees):
        raise DimensionMismatchError("every polynomial must be nonconstant")
    tol = tolerances or Tolerances()
    opts = opts or TrackOptions()
    n = system.n_vars

    b, starts = total_degree_start(system, rng)
    gamma = random_unit_complex(rng)
    target = compile_system(system)
    h = Homotopy(compile_system(PolySystem((), n)), compile_system(start_system(system.degrees, b)), target, gamma)
    logger.info(f"🔄 Total-degree homotopy: {len(starts)} paths")
    results = track_paths(h, starts, opts, workers)

    outcome = OneShotResult(stats=summarize(results))
    for r in results:
        if r.status is not PathStatus.CONVERGED:
            continue
        refined = newton_refine(target, r.endpoint, 1e-13, 8)
        x = refined.x if refined.converged else r.endpoint
        if numerical_rank(target.jacobian(x), tol.rank) < n:
            outcome.singular_dropped += 1
            continue
        if is_duplicate(outcome.points, x, tol.dup) is not None:
            outcome.duplicates += 1
            continue
        outcome.points.append(x)
    stats = outcome.stats
    logger.info(f"✅ Total-degree homotopy: {stats['diverged']} diverged, {stats['converged']} converged, "
                f"{len(outcome.points)} nonsingular solutions")
    return outcome

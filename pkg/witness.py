"""Witness sets, the generic slicing flag, and the filter tests run on candidate points."""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

import config
from errors import DimensionMismatchError, NonGenericSliceError
from linalg import (Rng, least_norm_solution, null_space_vector, numerical_rank, random_matrix,
                    random_unit_complex, random_vector)
from polynomial import (AffineRows, BlockSystem, Polynomial, PolySystem, compile_system, evaluate,
                        restrict_to_line, solve_univariate)
from tracker import Homotopy, PathStatus, TrackOptions, newton_refine, track_paths

logger = logging.getLogger(__name__)

REFINE_TOL = 1e-13
REFINE_ITERS = 8


@dataclass(frozen=True)
class Tolerances:
    zero: float = config.TOL_ZERO
    dup: float = config.TOL_DUP
    slice: float = config.TOL_SLICE
    rank: float = config.TOL_RANK
    res: float = config.TOL_RES

    def __post_init__(self):
        for name in ("zero", "dup", "slice", "res"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be positive")
        if not 0 < self.rank < 1:
            raise ValueError("rank tolerance must lie in (0, 1)")


@dataclass(frozen=True)
class GenericFlag:
    """Hyperplanes H_1..H_N; H_i(x) = normals[i-1] @ x + constants[i-1]."""

    normals: np.ndarray
    constants: np.ndarray

    @property
    def n_vars(self) -> int:
        return self.normals.shape[1]

    def rows(self, stop: int, start: int = 0) -> AffineRows:
        """H_{start+1}..H_{stop} as affine rows."""
        if not 0 <= start <= stop <= self.n_vars:
            raise IndexError(f"flag has {self.n_vars} hyperplanes, asked for {start + 1}..{stop}")
        return AffineRows(self.normals[start:stop].reshape(stop - start, self.n_vars),
                          self.constants[start:stop])

    def slice_for_codim(self, codim: int) -> AffineRows:
        return self.rows(self.n_vars - codim)


def make_flag(rng: Rng, n_vars: int) -> GenericFlag:
    if n_vars < 1:
        raise ValueError("a flag needs at least one dimension")
    while True:
        normals = random_matrix(rng, n_vars, n_vars)
        constants = random_vector(rng, n_vars)
        if numerical_rank(normals) == n_vars:
            return GenericFlag(normals, constants)
        logger.warning("⚠️ Degenerate flag drawn, drawing again")


def witness_line(flag: GenericFlag):
    """H_1 ∩ ... ∩ H_{N-1} as (base, direction)."""
    n = flag.n_vars
    if n == 1:
        return np.zeros(1, dtype=np.complex128), np.ones(1, dtype=np.complex128)
    rows = flag.rows(n - 1)
    base = least_norm_solution(rows.matrix, -rows.constants)
    return base, null_space_vector(rows.matrix)


@dataclass
class WitnessPoint:
    point: np.ndarray
    residual: float = 0.0
    multiplicity_count: int = 1
    singular: bool = False

    def copy(self) -> "WitnessPoint":
        return replace(self, point=self.point.copy())


@dataclass
class WitnessSet:
    """Points of a pure codimension-`codim` set cut by a linear slice.

    The slice is the flag prefix H_1..H_{N-codim} unless `slice_rows` is set
    (after move_slice or sample).
    """

    codim: int
    system: PolySystem
    flag: GenericFlag
    points: List[WitnessPoint] = field(default_factory=list)
    slice_rows: Optional[AffineRows] = None

    def __post_init__(self):
        if not 1 <= self.codim <= self.system.n_vars:
            raise ValueError(f"codimension {self.codim} outside [1, {self.system.n_vars}]")

    @property
    def n_vars(self) -> int:
        return self.system.n_vars

    @property
    def dimension(self) -> int:
        return self.n_vars - self.codim

    @property
    def degree(self) -> int:
        return len(self.points)

    @property
    def slice(self) -> AffineRows:
        return self.slice_rows if self.slice_rows is not None else self.flag.slice_for_codim(self.codim)

    def coordinates(self) -> np.ndarray:
        return np.array([w.point for w in self.points], dtype=np.complex128).reshape(-1, self.n_vars)

    def __len__(self) -> int:
        return len(self.points)


@dataclass
class WitnessCollection:
    sets: Dict[int, WitnessSet] = field(default_factory=dict)

    def __getitem__(self, codim: int) -> WitnessSet:
        return self.sets[codim]

    def __contains__(self, codim: int) -> bool:
        return codim in self.sets

    def codims(self) -> List[int]:
        return sorted(self.sets)

    def counts(self) -> Dict[int, int]:
        return {c: len(self.sets[c]) for c in self.codims()}

    def nonempty(self) -> List[WitnessSet]:
        return [self.sets[c] for c in self.codims() if self.sets[c].points]


class WitnessContext:
    """Run-scoped random data and settings shared by every witness computation.

    The randomization R_c for (system, c) is the leading c x m block of one
    matrix drawn at construction, so every caller sees the same R_c.
    """

    def __init__(self, flag: GenericFlag, randomization: np.ndarray, tolerances: Tolerances = None,
                 track_options: TrackOptions = None, workers: int = 1):
        self.flag = flag
        self.randomization = randomization
        self.tolerances = tolerances or Tolerances()
        self.track_options = track_options or TrackOptions()
        self.workers = workers
        self.warnings: List[str] = []

    @classmethod
    def create(cls, rng: Rng, n_vars: int, n_equations: int = None, **kwargs) -> "WitnessContext":
        flag = make_flag(rng, n_vars)
        columns = max(n_equations or 0, n_vars)
        return cls(flag, random_matrix(rng, n_vars, columns), **kwargs)

    @property
    def n_vars(self) -> int:
        return self.flag.n_vars

    def warn(self, message: str):
        logger.warning(f"⚠️ {message}")
        self.warnings.append(message)

    def randomizer(self, system: PolySystem, codim: int) -> np.ndarray:
        m = len(system)
        if not 1 <= codim <= self.n_vars:
            raise ValueError(f"codimension {codim} outside [1, {self.n_vars}]")
        if m > self.randomization.shape[1]:
            raise DimensionMismatchError(
                f"context was sized for {self.randomization.shape[1]} equations, system has {m}")
        return self.randomization[:codim, :m]

    def randomized_block(self, system: PolySystem, codim: int, offset: int = 0, total_vars: int = None):
        return compile_system(system, self.randomizer(system, codim), offset, total_vars)


def sliced_square_system(system: PolySystem, codim: int, context: WitnessContext,
                         slice_rows: AffineRows = None) -> BlockSystem:
    """[R_c f; H_1..H_{N-c}], square in N variables."""
    rows = slice_rows if slice_rows is not None else context.flag.slice_for_codim(codim)
    if rows.n_equations != system.n_vars - codim:
        raise DimensionMismatchError(f"codim {codim} needs {system.n_vars - codim} slice rows, got {rows.n_equations}")
    return BlockSystem([context.randomized_block(system, codim), rows], system.n_vars)


def _scale(p: Polynomial, x: np.ndarray) -> float:
    return max(p.coeff_norm, 1e-300) * (1 + np.linalg.norm(x)) ** p.degree


def scaled_value(p: Polynomial, x) -> float:
    x = np.asarray(x, dtype=np.complex128)
    return abs(evaluate(p, x)) / _scale(p, x)


def point_residual(system: PolySystem, rows: AffineRows, x) -> float:
    """Largest scaled equation value, slice rows included (relative to 1+|x|)."""
    x = np.asarray(x, dtype=np.complex128)
    values = [scaled_value(p, x) for p in system]
    if rows is not None and rows.n_equations:
        values.append(float(np.max(np.abs(rows.evaluate(x)))) / (1 + np.linalg.norm(x)))
    return max(values, default=0.0)


def vanishes_at(polys: Union[Polynomial, PolySystem, Sequence[Polynomial]], x, tol_zero: float = None) -> bool:
    """True iff every given polynomial is numerically zero at x.

    |p(x)| <= tol_zero * (1+|x|)^deg(p) * max|coefficient|.
    """
    tol_zero = config.TOL_ZERO if tol_zero is None else tol_zero
    if isinstance(polys, Polynomial):
        polys = (polys,)
    x = np.asarray(x, dtype=np.complex128)
    for p in polys:
        if p.n_vars != x.size:
            raise DimensionMismatchError(f"point in C^{x.size} for a polynomial in {p.n_vars} variables")
        if scaled_value(p, x) > tol_zero:
            return False
    return True


def is_duplicate(points: Sequence, x, tol_dup: float = None) -> Optional[int]:
    tol_dup = config.TOL_DUP if tol_dup is None else tol_dup
    x = np.asarray(x, dtype=np.complex128)
    radius = tol_dup * (1 + np.linalg.norm(x))
    for i, p in enumerate(points):
        coords = p.point if isinstance(p, WitnessPoint) else np.asarray(p)
        if np.linalg.norm(coords - x) <= radius:
            return i
    return None


def is_singular_point(system: PolySystem, codim: int, x, context: WitnessContext,
                      tol_rank: float = None, slice_rows: AffineRows = None) -> bool:
    tol_rank = context.tolerances.rank if tol_rank is None else tol_rank
    square = sliced_square_system(system, codim, context, slice_rows)
    return numerical_rank(square.jacobian(np.asarray(x, dtype=np.complex128)), tol_rank) < system.n_vars


def refine_point(system: PolySystem, codim: int, x, context: WitnessContext, slice_rows: AffineRows = None):
    """Newton-polish x on its sliced square system; keeps x if Newton makes it worse."""
    square = sliced_square_system(system, codim, context, slice_rows)
    x = np.asarray(x, dtype=np.complex128)
    before = float(np.linalg.norm(square.evaluate(x)))
    result = newton_refine(square, x, REFINE_TOL, REFINE_ITERS)
    if np.all(np.isfinite(result.x)) and result.residual <= before \
            and np.linalg.norm(result.x - x) <= context.tolerances.dup * (1 + np.linalg.norm(x)):
        return result.x
    return x


@dataclass
class HypersurfaceWitness:
    points: List[WitnessPoint]
    degree: int
    dropped_q: int = 0

    @property
    def count_with_multiplicity(self) -> int:
        return sum(w.multiplicity_count for w in self.points)


def hypersurface_witness(f: Polynomial, context: WitnessContext, Q: Optional[PolySystem] = None) -> HypersurfaceWitness:
    """(V(f) ∩ L) minus Q, with L the flag's witness line."""
    tol = context.tolerances
    base, direction = witness_line(context.flag)
    roots = solve_univariate(restrict_to_line(f, base, direction))
    if roots.no_roots:
        context.warn(f"polynomial of degree {f.degree} has no roots on the witness line")
        return HypersurfaceWitness([], 0)
    line_rows = context.flag.rows(context.n_vars - 1)
    single = PolySystem((f,), f.n_vars)
    points: List[WitnessPoint] = []
    clusters: List[List[np.ndarray]] = []
    dropped = 0
    for s in roots.roots:
        x = base + s * direction
        if Q is not None and len(Q) and vanishes_at(Q, x, tol.zero):
            dropped += 1
            continue
        hit = is_duplicate(points, x, tol.dup)
        if hit is not None:
            # a multiple root is represented by the centroid of its copies
            clusters[hit].append(x)
            merged = points[hit]
            merged.multiplicity_count += 1
            merged.point = np.mean(clusters[hit], axis=0)
            merged.residual = point_residual(single, line_rows, merged.point)
            continue
        clusters.append([x])
        points.append(WitnessPoint(x, point_residual(single, line_rows, x)))
    return HypersurfaceWitness(points, roots.degree, dropped)


def _slice_through(x: np.ndarray, count: int, rng: Rng) -> AffineRows:
    normals = random_matrix(rng, count, x.size)
    return AffineRows(normals, -normals @ x)


def _track_slice_motion(W: WitnessSet, target: AffineRows, context: WitnessContext, gamma: complex):
    fixed = context.randomized_block(W.system, W.codim)
    h = Homotopy(fixed, W.slice, target, gamma)
    return track_paths(h, [w.point for w in W.points], context.track_options, context.workers)


def membership_test(W: WitnessSet, x, context: WitnessContext, rng: Rng) -> bool:
    """Does x lie on the set witnessed by W?

    Moves W's slice to a random one through x; x is a member iff some tracked
    witness point lands on it. A failed path counts as membership.
    """
    x = np.asarray(x, dtype=np.complex128)
    tol = context.tolerances
    if not W.points:
        return False
    if W.dimension == 0:
        return is_duplicate(W.points, x, tol.dup) is not None
    target = _slice_through(x, W.dimension, rng)
    results = _track_slice_motion(W, target, context, random_unit_complex(rng))
    for r in results:
        if r.status is PathStatus.FAILED:
            context.warn(f"membership path failed ({r.message}); treating point as a member of the codim-{W.codim} set")
            return True
    endpoints = [r.endpoint for r in results if r.status is PathStatus.CONVERGED]
    return is_duplicate(endpoints, x, tol.dup) is not None


def move_slice(W: WitnessSet, new_rows: AffineRows, context: WitnessContext, gamma: complex = None,
               rng: Rng = None) -> WitnessSet:
    """Track W's points to the slice given by `new_rows`."""
    if new_rows.n_equations != W.dimension:
        raise DimensionMismatchError(f"codim-{W.codim} set needs {W.dimension} hyperplanes, got {new_rows.n_equations}")
    if gamma is None:
        gamma = random_unit_complex(rng) if rng is not None else complex(np.exp(0.7j))
    moved = WitnessSet(W.codim, W.system, W.flag, [], new_rows)
    if not W.points:
        return moved
    results = _track_slice_motion(W, new_rows, context, gamma)
    for w, r in zip(W.points, results):
        if r.status is not PathStatus.CONVERGED:
            raise NonGenericSliceError(f"slice motion path {r.status.value}: {r.message}")
        point = refine_point(W.system, W.codim, r.endpoint, context, new_rows)
        if is_duplicate(moved.points, point, context.tolerances.dup) is not None:
            raise NonGenericSliceError("two witness points met during slice motion")
        moved.points.append(WitnessPoint(point, point_residual(W.system, new_rows, point),
                                         w.multiplicity_count, w.singular))
    return moved


def sample(W: WitnessSet, context: WitnessContext, rng: Rng) -> WitnessSet:
    """W moved to a fresh random slice."""
    rows = AffineRows(random_matrix(rng, W.dimension, W.n_vars), random_vector(rng, W.dimension)) \
        if W.dimension else AffineRows.empty(W.n_vars)
    return move_slice(W, rows, context, random_unit_complex(rng))


def multiplicity_classes(W: WitnessSet) -> Dict[int, int]:
    """multiplicity_count -> number of points carrying it."""
    return dict(sorted(Counter(w.multiplicity_count for w in W.points).items()))


def check_witness_set(W: WitnessSet, tolerances: Tolerances = None) -> List[str]:
    """Invariant violations of W, empty when W is well formed."""
    tol = tolerances or Tolerances()
    problems = []
    rows = W.slice
    for i, w in enumerate(W.points):
        if w.multiplicity_count < 1:
            problems.append(f"point {i}: multiplicity_count {w.multiplicity_count} < 1")
        if rows.n_equations:
            off_slice = float(np.max(np.abs(rows.evaluate(w.point))))
            if off_slice > tol.slice * (1 + np.linalg.norm(w.point)):
                problems.append(f"point {i}: off the slice by {off_slice:.2e}")
        residual = point_residual(W.system, rows, w.point)
        if residual > tol.res:
            problems.append(f"point {i}: residual {residual:.2e} above {tol.res:.0e}")
    for i in range(len(W.points)):
        hit = is_duplicate(W.points[:i], W.points[i].point, tol.dup)
        if hit is not None:
            problems.append(f"points {hit} and {i} coincide")
    return problems

"""Equation-by-equation driver: preprocessing, the stage loop and its filter tests."""

import enum
import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

import config
from diagonal import intersect_with_hypersurface
from errors import DimensionMismatchError
from linalg import Rng
from polynomial import Polynomial, PolySystem, bezout_number
from tracker import TrackOptions
from witness import (Tolerances, WitnessCollection, WitnessContext, WitnessPoint, WitnessSet,
                     check_witness_set, hypersurface_witness, is_duplicate, is_singular_point,
                     membership_test, point_residual, vanishes_at)

logger = logging.getLogger(__name__)


class Mode(str, enum.Enum):
    ALL = "all"
    NONSINGULAR = "nonsingular"


class EquationOrder(str, enum.Enum):
    GIVEN = "given"
    DEGREE = "degree"


@dataclass(frozen=True)
class SolverConfig:
    seed: int = config.SEED
    mode: Mode = field(default_factory=lambda: Mode(config.MODE))
    tolerances: Tolerances = field(default_factory=Tolerances)
    track_options: TrackOptions = field(default_factory=TrackOptions)
    worker_count: int = config.THREADS
    equation_order: EquationOrder = field(default_factory=lambda: EquationOrder(config.ORDER))

    def __post_init__(self):
        if self.worker_count < 1:
            raise ValueError("worker_count must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "equation_order", EquationOrder(self.equation_order))


@dataclass
class StageStats:
    """Bookkeeping for one stage; every input point and hypersurface point lands in one bucket.

    Witness points: shortcut_a + discarded_a + discarded_codim_n + pooled.
    Hypersurface roots: dropped_q + hypersurface_points, with hypersurface_points = discarded_b + paired.
    Paths: tracked = converged + diverged + failed.
    Candidates (= converged): dropped_d + dropped_e + junk_g + dropped_singular + accepted.
    """

    stage: int
    dropped_q: int = 0
    hypersurface_points: int = 0
    tracked: int = 0
    converged: int = 0
    diverged: int = 0
    failed: int = 0
    shortcut_a: int = 0
    discarded_a: int = 0
    discarded_codim_n: int = 0
    pooled: int = 0
    discarded_b: int = 0
    paired: int = 0
    dropped_d: int = 0
    dropped_e: int = 0
    junk_g: int = 0
    dropped_singular: int = 0
    accepted: int = 0
    diagonal_shapes: List[str] = field(default_factory=list)
    wall_time: float = 0.0

    def add_paths(self, counts: Dict[str, int]):
        for key in ("tracked", "converged", "diverged", "failed"):
            setattr(self, key, getattr(self, key) + counts[key])

    def to_dict(self, timings: bool = True) -> dict:
        data = asdict(self)
        if not timings:
            data.pop("wall_time")
        return data


@dataclass
class PreprocessReport:
    dropped_zero: List[int] = field(default_factory=list)
    constant_index: Optional[int] = None
    order: List[int] = field(default_factory=list)

    @property
    def inconsistent(self) -> bool:
        return self.constant_index is not None


@dataclass
class SolveResult:
    system: PolySystem
    collection: WitnessCollection
    stages: List[StageStats]
    preprocess: PreprocessReport
    config: SolverConfig
    hypersurface_counts: List[int] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def incomplete(self) -> bool:
        return any(s.failed for s in self.stages)

    @property
    def total_diagonal_paths(self) -> int:
        return sum(s.tracked for s in self.stages)

    @property
    def bezout_number(self) -> int:
        return bezout_number(self.system) if len(self.system) else 0

    def __iter__(self):
        # (collection, stages) unpacking
        return iter((self.collection, self.stages))


def preprocess(system: PolySystem, order: EquationOrder = EquationOrder.GIVEN) -> Tuple[PolySystem, PreprocessReport]:
    """Drop zero polynomials, flag an inconsistent constant, apply the equation order."""
    report = PreprocessReport()
    kept = []
    for i, p in enumerate(system):
        if p.is_zero():
            logger.info(f"🧹 Dropping identically zero polynomial #{i + 1}")
            report.dropped_zero.append(i)
        elif p.is_constant():
            if report.constant_index is None:
                report.constant_index = i
        else:
            kept.append(i)
    if report.inconsistent:
        logger.info(f"⚠️ Polynomial #{report.constant_index + 1} is a nonzero constant: no solutions")
        return system.with_polynomials([]), report
    if EquationOrder(order) is EquationOrder.DEGREE:
        kept.sort(key=lambda i: system[i].degree)
    report.order = kept
    return system.with_polynomials([system[i] for i in kept]), report


class EquationByEquationSolver:
    """Builds W^1 from f_1 and folds in one equation per stage."""

    def __init__(self, cfg: SolverConfig = None, Q: Optional[PolySystem] = None):
        self.cfg = cfg or SolverConfig()
        self.Q = Q if Q is not None and len(Q) else None
        self.rng: Optional[Rng] = None
        self.context: Optional[WitnessContext] = None

    @property
    def nonsingular_only(self) -> bool:
        return self.cfg.mode is Mode.NONSINGULAR

    def _start(self, system: PolySystem):
        self.rng = Rng(self.cfg.seed)
        self.context = WitnessContext.create(self.rng, system.n_vars, len(system),
                                             tolerances=self.cfg.tolerances,
                                             track_options=self.cfg.track_options,
                                             workers=self.cfg.worker_count)

    def solve(self, system: PolySystem) -> SolveResult:
        if self.Q is not None and self.Q.n_vars != system.n_vars:
            raise DimensionMismatchError(f"ignore set has {self.Q.n_vars} variables, system has {system.n_vars}")
        prepared, report = preprocess(system, self.cfg.equation_order)
        result = SolveResult(prepared, WitnessCollection(), [], report, self.cfg)
        if report.inconsistent:
            return result
        if not len(prepared):
            result.warnings.append("no nonzero polynomials: the solution set is the whole space")
            logger.warning(f"⚠️ {result.warnings[-1]}")
            return result

        self._start(prepared)
        n = prepared.n_vars
        logger.info(f"🔄 Solving {len(prepared)} equations in {n} variables "
                    f"(seed {self.cfg.seed}, mode {self.cfg.mode.value})")

        collection, first_count = self.first_witness_set(prepared)
        result.hypersurface_counts.append(first_count)
        for k in range(1, len(prepared)):
            collection, stats, count = self.stage(collection, prepared[:k], prepared[k], k)
            result.stages.append(stats)
            result.hypersurface_counts.append(count)

        result.collection = collection
        result.warnings.extend(self.context.warnings)
        for W in collection.nonempty():
            for problem in check_witness_set(W, self.cfg.tolerances):
                result.warnings.append(f"codim {W.codim}: {problem}")
        logger.info(f"✅ Done: {collection.counts()} with {result.total_diagonal_paths} diagonal paths")
        if result.incomplete:
            logger.warning("⚠️ Some paths failed; the witness collection may be incomplete")
        return result

    def first_witness_set(self, system: PolySystem) -> Tuple[WitnessCollection, int]:
        f1 = system[0]
        first = hypersurface_witness(f1, self.context, self.Q)
        single = system[:1]
        W = WitnessSet(1, single, self.context.flag)
        for w in first.points:
            w.singular = w.multiplicity_count > 1 or is_singular_point(single, 1, w.point, self.context)
            if self.nonsingular_only and w.singular:
                continue
            W.points.append(w)
        logger.info(f"✅ W^1: {len(W)} points from a degree-{f1.degree} hypersurface")
        return WitnessCollection({1: W}), first.count_with_multiplicity

    def stage(self, W_k: WitnessCollection, system_k: PolySystem, f_next: Polynomial,
              k: int) -> Tuple[WitnessCollection, StageStats, int]:
        """Intersect every set of W_k with V(f_next)."""
        started = time.perf_counter()
        stats = StageStats(stage=k)
        ctx, tol = self.context, self.cfg.tolerances
        n = system_k.n_vars
        new_system = system_k.append(f_next)
        top = min(n, k + 1)
        out = WitnessCollection({c: WitnessSet(c, new_system, ctx.flag) for c in range(1, top + 1)})
        logger.info(f"🔄 Stage {k}: adding a degree-{f_next.degree} equation")

        X = hypersurface_witness(f_next, ctx, self.Q)
        stats.dropped_q = X.dropped_q
        stats.hypersurface_points = len(X.points)
        survivors = []
        for x in X.points:
            # test (b): one earlier polynomial vanishing is enough to discard x
            if any(vanishes_at(f, x.point, tol.zero) for f in system_k):
                stats.discarded_b += 1
            else:
                survivors.append(x)
        stats.paired = len(survivors)

        for c in range(1, min(n, k) + 1):
            W = W_k.sets.get(c)
            if W is None or not W.points:
                continue
            pool = self._route(W, f_next, new_system, out, stats)
            if not pool or not survivors:
                continue
            stats.diagonal_shapes.append(f"{len(pool)}x{len(survivors)}")
            candidates, counts = intersect_with_hypersurface(pool, system_k, f_next, c, ctx, self.rng,
                                                             hyper_points=survivors)
            stats.add_paths(counts)
            for candidate in candidates:
                self._filter(candidate.point, c + 1, new_system, out, stats)

        stats.wall_time = time.perf_counter() - started
        logger.info(f"✅ Stage {k}: {out.counts()} | paths {stats.tracked} tracked, "
                    f"{stats.diverged} diverged, {stats.converged} converged, {stats.failed} failed")
        if stats.failed:
            ctx.warn(f"stage {k}: {stats.failed} failed paths")
        return out, stats, X.count_with_multiplicity

    def _route(self, W: WitnessSet, f_next: Polynomial, new_system: PolySystem,
               out: WitnessCollection, stats: StageStats) -> List[WitnessPoint]:
        """Test (a). Points on V(f_next) go straight to the output; the rest form the diagonal pool."""
        pool = []
        for w in W.points:
            if vanishes_at(f_next, w.point, self.cfg.tolerances.zero):
                if self.nonsingular_only:
                    stats.discarded_a += 1
                    continue
                passed = w.copy()
                passed.residual = point_residual(new_system, W.slice, w.point)
                passed.singular = w.multiplicity_count > 1 or is_singular_point(new_system, W.codim, w.point,
                                                                                self.context)
                out[W.codim].points.append(passed)
                stats.shortcut_a += 1
            elif W.codim == new_system.n_vars:
                stats.discarded_codim_n += 1
            else:
                pool.append(w)
        stats.pooled += len(pool)
        return pool

    def _filter(self, y: np.ndarray, codim: int, new_system: PolySystem, out: WitnessCollection,
                stats: StageStats):
        """Tests (d) through (g) for one diagonal candidate."""
        ctx, tol = self.context, self.cfg.tolerances
        target = out[codim]
        hit = is_duplicate(target.points, y, tol.dup)
        if hit is not None:
            target.points[hit].multiplicity_count += 1
            target.points[hit].singular = True
            stats.dropped_d += 1
            return
        if self.Q is not None and vanishes_at(self.Q, y, tol.zero):
            stats.dropped_e += 1
            return
        singular = is_singular_point(new_system, codim, y, ctx)
        if singular:
            if self.nonsingular_only:
                stats.dropped_singular += 1
                return
            for higher in range(1, codim):
                if out[higher].points and membership_test(out[higher], y, ctx, self.rng):
                    logger.debug(f"Junk point at codim {codim} lies on the codim-{higher} set")
                    stats.junk_g += 1
                    return
        target.points.append(WitnessPoint(y, point_residual(new_system, target.slice, y), 1, singular))
        stats.accepted += 1


def solve(system: PolySystem, Q: Optional[PolySystem] = None, cfg: SolverConfig = None) -> SolveResult:
    return EquationByEquationSolver(cfg, Q).solve(system)


def solve_nonsingular(system: PolySystem, Q: Optional[PolySystem] = None, cfg: SolverConfig = None) -> SolveResult:
    """Multiplicity-one isolated solutions only: test-(a) passers and singular candidates are discarded."""
    cfg = cfg or SolverConfig()
    if len(system) > system.n_vars:
        logger.warning("⚠️ More equations than variables; only codim-N points can survive")
    cfg = SolverConfig(cfg.seed, Mode.NONSINGULAR, cfg.tolerances, cfg.track_options,
                       cfg.worker_count, cfg.equation_order)
    return solve(system, Q, cfg)


if __name__ == "__main__":
    from generators import illustrative_system

    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    outcome = solve(illustrative_system())
    print(f"📊 Witness counts: {outcome.collection.counts()}")

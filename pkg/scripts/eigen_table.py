import sys, os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import logging

from generators import eigenvalue_problem
from linalg import Rng
from oneshot import solve_total_degree
from solver import SolverConfig, solve, solve_nonsingular


def main():
    logging.basicConfig(level=logging.WARNING, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    size = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

    result = solve(eigenvalue_problem(size, seed=seed), cfg=SolverConfig(seed=seed))
    print(f"{'stage':>5} {'tracked':>8} {'divergent':>10} {'convergent':>11}")
    for s in result.stages:
        print(f"{s.stage:>5} {s.tracked:>8} {s.diverged:>10} {s.converged:>11}")
    print(f"{'total':>5} {sum(s.tracked for s in result.stages):>8} "
          f"{sum(s.diverged for s in result.stages):>10} {sum(s.converged for s in result.stages):>11}")
    print(f"codim-{size} witness points: {len(result.collection[size])}")

    square = eigenvalue_problem(size, seed=seed, hyperplane=True)
    nonsingular = solve_nonsingular(square, cfg=SolverConfig(seed=seed))
    oneshot = solve_total_degree(square, Rng(seed))
    print(f"with one hyperplane: equation-by-equation {nonsingular.collection.counts()}, "
          f"{nonsingular.total_diagonal_paths} diagonal paths; "
          f"total degree {oneshot.stats['tracked']} paths, {oneshot.stats['diverged']} diverged, "
          f"{len(oneshot.points)} solutions")


if __name__ == "__main__":
    main()

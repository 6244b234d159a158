import sys, os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import logging

from generators import illustrative_system
from report import format_report
from solver import SolverConfig, solve


def main():
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    result = solve(illustrative_system(), cfg=SolverConfig(seed=seed))
    print(format_report(result))
    print(f"Witness counts: {result.collection.counts()} (expected {{1: 2, 2: 6, 3: 1}})")


if __name__ == "__main__":
    main()

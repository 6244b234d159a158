"""Stage tables and JSON results for a solver run."""

import json
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

import config
from solver import SolveResult
from witness import WitnessSet, multiplicity_classes

STAGE_COLUMNS = [
    ("stage", 5), ("diagonal", 10), ("tracked", 8), ("diverged", 9), ("converged", 10), ("failed", 7),
    ("(a)", 5), ("(b)", 5), ("(d)", 5), ("(e)", 5), ("(g)", 5), ("accepted", 9),
]
TIMING_COLUMNS = [("time", 10), ("time/path", 11)]


def _row(cells, widths) -> str:
    return "  ".join(str(c).rjust(w) for c, w in zip(cells, widths)).rstrip()


class ReportFormatter:
    """Plain-text report: input summary, per-stage table, final witness sets."""

    def __init__(self, timings: bool = None):
        self.timings = config.REPORT_TIMINGS if timings is None else timings

    def header(self, result: SolveResult) -> List[str]:
        system = result.system
        lines = [f"eqbyeq run: {len(system)} equations in {system.n_vars} variables, "
                 f"degrees {list(system.degrees)}",
                 f"seed {result.config.seed}, mode {result.config.mode.value}, "
                 f"order {result.config.equation_order.value}"]
        pre = result.preprocess
        if pre.dropped_zero:
            lines.append(f"dropped zero polynomials: {[i + 1 for i in pre.dropped_zero]}")
        if pre.inconsistent:
            lines.append(f"polynomial #{pre.constant_index + 1} is a nonzero constant: no solutions")
        if result.hypersurface_counts:
            lines.append("hypersurface witness counts: " + " ".join(str(c) for c in result.hypersurface_counts))
            lines.append(f"Bezout number {result.bezout_number}, diagonal paths tracked {result.total_diagonal_paths}")
        return lines

    def stage_table(self, result: SolveResult) -> List[str]:
        columns = STAGE_COLUMNS + (TIMING_COLUMNS if self.timings else [])
        widths = [w for _, w in columns]
        lines = [_row([name for name, _ in columns], widths)]
        totals = dict.fromkeys(("tracked", "diverged", "converged", "failed"), 0)
        wall = 0.0
        for s in result.stages:
            cells = [s.stage, "+".join(s.diagonal_shapes) or "-", s.tracked, s.diverged, s.converged, s.failed,
                     s.shortcut_a, s.discarded_b, s.dropped_d, s.dropped_e, s.junk_g, s.accepted]
            if self.timings:
                per_path = s.wall_time / s.tracked if s.tracked else 0.0
                cells += [f"{s.wall_time:.3f}s", f"{per_path * 1e3:.2f}ms"]
            lines.append(_row(cells, widths))
            for key in totals:
                totals[key] += getattr(s, key)
            wall += s.wall_time
        total_cells = ["total", "", totals["tracked"], totals["diverged"], totals["converged"], totals["failed"]]
        if self.timings:
            total_cells += [""] * 6 + [f"{wall:.3f}s"]
        lines.append(_row(total_cells, widths))
        return lines

    def witness_table(self, result: SolveResult) -> List[str]:
        lines = [_row(["codim", "dim", "count", "multiplicities"], [5, 4, 6, 16])]
        for codim in result.collection.codims():
            W = result.collection[codim]
            classes = ", ".join(f"{m}:{k}" for m, k in multiplicity_classes(W).items()) or "-"
            lines.append(_row([codim, W.dimension, len(W), classes], [5, 4, 6, 16]))
        return lines

    def format(self, result: SolveResult) -> str:
        lines = self.header(result)
        if result.stages:
            lines += [""] + self.stage_table(result)
        if result.collection.sets:
            lines += [""] + self.witness_table(result)
        lines += ["", f"incomplete: {'yes' if result.incomplete else 'no'}"]
        if result.warnings:
            lines.append("warnings:")
            lines += [f"  - {w}" for w in result.warnings]
        return "\n".join(lines) + "\n"


def format_report(result: SolveResult, timings: bool = None) -> str:
    return ReportFormatter(timings).format(result)


def _point_to_json(point: np.ndarray) -> list:
    return [[float(c.real), float(c.imag)] for c in point]


def _witness_set_to_json(W: WitnessSet) -> dict:
    return {
        "codim": W.codim,
        "count": len(W),
        "points": [{
            "coords": _point_to_json(w.point),
            "residual": float(w.residual),
            "multiplicity_count": w.multiplicity_count,
            "singular": bool(w.singular),
        } for w in W.points],
    }


def result_to_json(result: SolveResult, timings: bool = None) -> dict:
    timings = config.REPORT_TIMINGS if timings is None else timings
    return {
        "n_vars": result.system.n_vars,
        "n_equations": len(result.system),
        "seed": result.config.seed,
        "mode": result.config.mode.value,
        "witness_sets": [_witness_set_to_json(result.collection[c]) for c in result.collection.codims()],
        "stages": [s.to_dict(timings) for s in result.stages],
        "hypersurface_counts": list(result.hypersurface_counts),
        "total_diagonal_paths": result.total_diagonal_paths,
        "bezout_number": result.bezout_number,
        "incomplete": result.incomplete,
        "warnings": list(result.warnings),
    }


def dumps_result(result: SolveResult, timings: bool = None) -> str:
    # json writes floats with repr, the shortest text that reads back bit-exact
    return json.dumps(result_to_json(result, timings), indent=2) + "\n"


def write_text(text: str, path: str):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


@dataclass
class StoredPoint:
    point: np.ndarray
    residual: float
    multiplicity_count: int
    singular: bool


@dataclass
class StoredResult:
    """A result read back from JSON."""

    n_vars: int
    n_equations: int
    seed: int
    mode: str
    witness_sets: Dict[int, List[StoredPoint]] = field(default_factory=dict)
    stages: List[dict] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    incomplete: bool = False
    raw: Optional[dict] = None

    def counts(self) -> Dict[int, int]:
        return {c: len(points) for c, points in sorted(self.witness_sets.items())}


def parse_result(data: dict) -> StoredResult:
    sets = {}
    for entry in data["witness_sets"]:
        sets[int(entry["codim"])] = [
            StoredPoint(np.array([complex(re, im) for re, im in p["coords"]], dtype=np.complex128),
                        float(p["residual"]), int(p["multiplicity_count"]), bool(p["singular"]))
            for p in entry["points"]
        ]
    return StoredResult(data["n_vars"], data["n_equations"], data["seed"], data["mode"], sets,
                        data.get("stages", []), data.get("warnings", []), data.get("incomplete", False), data)


def load_result(path: str) -> StoredResult:
    with open(path, "r", encoding="utf-8") as f:
        return parse_result(json.load(f))

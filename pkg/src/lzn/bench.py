"""Timing of the compiled and pure-Python solver kernels on the same workloads."""

from __future__ import annotations

import time
from collections.abc import Callable

from .families import build, localize_subdivision, materialize, parse_descriptor, truncate
from .graph import complete_graph, cycle_graph, hat_graph
from .solver import CKernel, PyKernel, make_kernel, solve_exact


def workloads() -> list[tuple[str, object, int]]:
    gp, _ = materialize(localize_subdivision(complete_graph(4)))
    comb, _ = truncate(build(parse_descriptor("comb")), 6)
    return [
        ("hat k=2", hat_graph(), 2),
        ("C8 k=1", cycle_graph(8), 1),
        ("comb radius 6 k=1", comb, 1),
        ("G'(K4) k=1", gp, 1),
    ]


def _time(fn: Callable[[], object], repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(repeat: int = 3) -> list[dict]:
    kernels = [("python", PyKernel)] + ([("compiled", CKernel)] if CKernel is not None else [])
    rows = []
    for name, g, k in workloads():
        row = {"workload": name, "vertices": g.n}
        states = set()
        for kname, cls in kernels:
            kernel = make_kernel(g, cls)
            row[kname] = _time(lambda: solve_exact(g, k, kernel=kernel), repeat)
            states.add(len(solve_exact(g, k, kernel=kernel)))
        if len(states) != 1:
            raise AssertionError(f"kernels disagree on {name}: {states}")
        row["states"] = states.pop()
        rows.append(row)
    return rows


def report(rows: list[dict]) -> str:
    lines = [f"{'workload':<20} {'n':>4} {'states':>7} {'python s':>9} {'compiled s':>11} {'speedup':>8}"]
    for r in rows:
        comp = r.get("compiled")
        speed = f"{r['python'] / comp:8.1f}" if comp else f"{'-':>8}"
        comp_s = f"{comp:11.4f}" if comp else f"{'-':>11}"
        lines.append(f"{r['workload']:<20} {r['vertices']:>4} {r['states']:>7} {r['python']:9.4f} {comp_s} {speed}")
    return "\n".join(lines) + "\n"

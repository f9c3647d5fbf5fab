"""Benchmark harness: run engine/indicator matrices on generated fronts and
emit raw per-run rows plus per-cell averages as CSV."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from pathlib import Path

from .core import Indicator, IndicatorKind
from .frontgen import FrontSpec, gen_front
from .greedy import SelectionResult, select_lazy, select_standard, select_update

__all__ = ["BenchCase", "BenchRow", "run_case", "run_matrix", "write_rows", "write_summary", "RAW_COLUMNS"]

RAW_COLUMNS = ("problem", "m", "n", "k", "indicator", "engine", "repeat", "seconds", "total_evals", "evals_per_step")


@dataclass(frozen=True)
class BenchCase:
    family: str
    m: int
    n: int
    k: int
    indicator: str
    engine: str
    pool: int | None = None

    def __post_init__(self):
        if self.engine == "update" and self.indicator != "hv":
            raise ValueError("the update engine only exists for hypervolume")


@dataclass
class BenchRow:
    case: BenchCase
    repeat: int
    seconds: float
    result: SelectionResult


def _select(case: BenchCase, V) -> SelectionResult:
    ind = Indicator(IndicatorKind(case.indicator)) if case.indicator != "hv" else Indicator(IndicatorKind.HYPERVOLUME)
    if case.engine == "standard":
        return select_standard(V, case.k, ind)
    if case.engine == "lazy":
        return select_lazy(V, case.k, ind)
    if case.engine == "update":
        return select_update(V, case.k)
    raise ValueError(f"unknown engine {case.engine!r}")


def run_case(case: BenchCase, repeat: int, seed: int) -> BenchRow:
    """One timed run; the candidate set is redrawn per repeat, derived
    deterministically from (seed, case, repeat)."""
    spec = FrontSpec(
        family=case.family,
        m=case.m,
        n_pool=case.pool or case.n,
        n_sample=case.n,
        seed=seed,
    )
    V = gen_front(spec)
    t0 = time.perf_counter()
    res = _select(case, V)
    dt = time.perf_counter() - t0
    return BenchRow(case=case, repeat=repeat, seconds=dt, result=res)


def run_matrix(cases: list[BenchCase], repeats: int, seed: int) -> list[BenchRow]:
    rows = []
    for ci, case in enumerate(cases):
        for rep in range(repeats):
            # decorrelate the instance stream per (matrix cell, repeat)
            rows.append(run_case(case, rep, seed=seed * 1_000_003 + ci * 1_009 + rep))
    return rows


def write_rows(path: str | Path, rows: list[BenchRow]) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RAW_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row.case.family,
                    row.case.m,
                    row.case.n,
                    row.case.k,
                    row.case.indicator,
                    row.case.engine,
                    row.repeat,
                    f"{row.seconds:.6f}",
                    row.result.total_evals,
                    ";".join(str(e) for e in row.result.evals_per_step),
                ]
            )


def write_summary(path: str | Path, rows: list[BenchRow]) -> None:
    cells: dict[BenchCase, list[BenchRow]] = {}
    for row in rows:
        cells.setdefault(row.case, []).append(row)
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("problem", "m", "n", "k", "indicator", "engine", "repeats", "mean_seconds", "mean_total_evals"))
        for case, group in cells.items():
            writer.writerow(
                [
                    case.family,
                    case.m,
                    case.n,
                    case.k,
                    case.indicator,
                    case.engine,
                    len(group),
                    f"{sum(r.seconds for r in group) / len(group):.6f}",
                    f"{sum(r.result.total_evals for r in group) / len(group):.1f}",
                ]
            )

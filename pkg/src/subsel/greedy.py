"""Greedy inclusion engines: standard, contribution-updating, and lazy.

All three hypervolume engines and both IGD engines share the same
deterministic tie-breaking (equal gains go to the smallest original index),
which makes the selected index sequences of the standard and lazy engines
exactly equal, not just equally good.

``evals_per_step`` counts full contribution evaluations (hypervolume
contribution calls or IGD improvement calls); for the updating engine it
counts per-candidate update operations, whose individual cost is what that
engine improves.
"""

from __future__ import annotations

import heapq
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import CandidateSet, Indicator, IndicatorKind
from .indicators import DistanceCache, commit, distances_to, improvement

logger = logging.getLogger(__name__)

__all__ = ["TentativeEntry", "SelectionResult", "select_standard", "select_update", "select_lazy"]


@dataclass(slots=True)
class TentativeEntry:
    """Lazy-heap element: a candidate with a cached upper bound on its
    contribution and the selected-set size at which that bound was exact."""

    idx: int
    bound: float
    stamp: int

    def __lt__(self, other: "TentativeEntry") -> bool:
        # max-heap by bound; ties go to the smaller index
        if self.bound != other.bound:
            return self.bound > other.bound
        return self.idx < other.idx


@dataclass
class SelectionResult:
    """Outcome of one greedy run.

    ``selected`` holds original-input indices.  ``step_gains`` are the per-step
    marginal gains (for IGD engines the first entry is the indicator value of
    the seeded first solution, under which the sequence is non-increasing).
    """

    selected: list[int]
    step_gains: list[float]
    evals_per_step: list[int]
    wall_time: float
    engine: str
    indicator: str
    final_value: float
    zero_gain_tail: bool = False
    kernel_calls: int = 0
    recompute_log: list[tuple[int, int, float, float]] | None = None

    @property
    def total_evals(self) -> int:
        return int(sum(self.evals_per_step))


def _validate(V: CandidateSet, k: int) -> None:
    if not isinstance(V, CandidateSet):
        raise TypeError("V must be a CandidateSet")
    if k < 1:
        raise ValueError("k must be at least 1")


def _take_all(V: CandidateSet, engine: str, indicator: str, t0: float) -> SelectionResult:
    logger.warning("requested k >= candidate count (%d); returning every point", V.n)
    sel = [int(i) for i in V.source_index]
    # indicator value of the full set; skipped for large sets where an exact
    # hypervolume of everything is not worth the cost of a degenerate request
    final = _final_value(V, list(range(V.n)), indicator) if V.n <= 500 else float("nan")
    return SelectionResult(
        selected=sel,
        step_gains=[],
        evals_per_step=[],
        wall_time=time.perf_counter() - t0,
        engine=engine,
        indicator=indicator,
        final_value=final,
    )


def _final_value(V: CandidateSet, positions: list[int], indicator: str) -> float:
    from .hypervolume import HvContext, hv
    from .indicators import igd

    pts = V.points[positions]
    if indicator == "hv":
        return hv(pts, HvContext(V.ref_point))
    metric = "euclidean" if indicator == "igd" else "igdplus"
    return igd(pts, V.points, metric)


def _map_selected(V: CandidateSet, positions: list[int]) -> list[int]:
    return [int(V.source_index[p]) for p in positions]


# --------------------------------------------------------------------------
# hypervolume engines


def _hv_standard(V: CandidateSet, k: int, threads: int = 1) -> SelectionResult:
    t0 = time.perf_counter()
    pts = V.points
    n, m = pts.shape
    alive = np.ones(n, dtype=np.bool_)
    out = np.empty(n)
    S = np.empty((k, m))
    threads = max(1, min(threads, n // 64)) if n >= 128 else 1
    spaces = [_kernels.Workspace(k + 1, m) for _ in range(max(threads, 1))]
    ws = spaces[0]
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    bounds = np.linspace(0, n, threads + 1).astype(int) if threads > 1 else None

    def sweep(step: int) -> None:
        # candidate values are independent, so chunked threads produce
        # bit-identical results to a sequential sweep
        if pool is None:
            _kernels._sweep_contributions(pts, alive, S[:step], V.ref_point, ws.fbuf, ws.ibuf, ws.counter, out)
            return
        jobs = []
        for t in range(threads):
            a, b = bounds[t], bounds[t + 1]
            w = spaces[t]
            jobs.append(
                pool.submit(
                    _kernels._sweep_contributions,
                    pts[a:b], alive[a:b], S[:step], V.ref_point, w.fbuf, w.ibuf, w.counter, out[a:b],
                )
            )
        for job in jobs:
            job.result()

    positions: list[int] = []
    gains: list[float] = []
    evals: list[int] = []
    try:
        for step in range(k):
            sweep(step)
            best = int(np.argmax(out))
            positions.append(best)
            gains.append(float(out[best]))
            S[step] = pts[best]
            alive[best] = False
            evals.append(n - step)
    finally:
        if pool is not None:
            pool.shutdown()
    return SelectionResult(
        selected=_map_selected(V, positions),
        step_gains=gains,
        evals_per_step=evals,
        wall_time=time.perf_counter() - t0,
        engine="standard",
        indicator="hv",
        final_value=float(_kernels.hv_raw(S, V.ref_point, ws)),
        zero_gain_tail=any(g == 0.0 for g in gains),
        kernel_calls=int(sum(w.counter[0] for w in spaces)),
    )


def _hv_lazy(V: CandidateSet, k: int, log_recomputes: bool) -> SelectionResult:
    t0 = time.perf_counter()
    pts = V.points
    n, m = pts.shape
    ws = _kernels.Workspace(k + 1, m)
    out = np.empty(n)
    S = np.empty((k, m))
    _kernels._sweep_contributions(pts, np.ones(n, dtype=np.bool_), S[:0], V.ref_point, ws.fbuf, ws.ibuf, ws.counter, out)
    heap = [TentativeEntry(i, float(out[i]), 0) for i in range(n)]
    heapq.heapify(heap)

    positions: list[int] = []
    gains: list[float] = []
    evals: list[int] = []
    log: list[tuple[int, int, float, float]] | None = [] if log_recomputes else None
    for step in range(k):
        step_evals = n if step == 0 else 0
        while True:
            entry = heapq.heappop(heap)
            if entry.stamp == step:
                positions.append(entry.idx)
                gains.append(entry.bound)
                break
            v = float(_kernels.hvc_raw(pts[entry.idx], S[:step], V.ref_point, ws))
            step_evals += 1
            if log is not None:
                log.append((step, entry.idx, entry.bound, v))
            entry.bound = v
            entry.stamp = step
            if not heap or entry < heap[0]:
                positions.append(entry.idx)
                gains.append(v)
                break
            heapq.heappush(heap, entry)
        S[step] = pts[positions[-1]]
        evals.append(step_evals)
    return SelectionResult(
        selected=_map_selected(V, positions),
        step_gains=gains,
        evals_per_step=evals,
        wall_time=time.perf_counter() - t0,
        engine="lazy",
        indicator="hv",
        final_value=float(_kernels.hv_raw(S, V.ref_point, ws)),
        zero_gain_tail=any(g == 0.0 for g in gains),
        kernel_calls=int(ws.counter[0]),
        recompute_log=log,
    )


def _hv_update(V: CandidateSet, k: int) -> SelectionResult:
    t0 = time.perf_counter()
    pts = V.points
    n, m = pts.shape
    ws = _kernels.Workspace(k + 1, m)
    vals = np.empty(n)
    alive = np.ones(n, dtype=np.bool_)
    S = np.empty((k, m))
    wrow = np.empty(m)
    _kernels._sweep_contributions(pts, alive, S[:0], V.ref_point, ws.fbuf, ws.ibuf, ws.counter, vals)
    positions: list[int] = []
    gains: list[float] = []
    evals: list[int] = []
    for step in range(k):
        if step > 0:
            # fold the newest member into every cached contribution;
            # S[:step-1] is the selected set from before it joined
            _kernels._joint_update_sweep(
                pts, alive, vals, S[step - 1], S[: step - 1], V.ref_point, ws.fbuf, ws.ibuf, ws.counter, wrow
            )
        masked = np.where(alive, vals, -1.0)
        best = int(np.argmax(masked))
        positions.append(best)
        gains.append(float(masked[best]))
        S[step] = pts[best]
        alive[best] = False
        evals.append(n - step)
    return SelectionResult(
        selected=_map_selected(V, positions),
        step_gains=gains,
        evals_per_step=evals,
        wall_time=time.perf_counter() - t0,
        engine="update",
        indicator="hv",
        final_value=float(_kernels.hv_raw(S, V.ref_point, ws)),
        zero_gain_tail=any(g == 0.0 for g in gains),
        kernel_calls=int(ws.counter[0]),
    )


# --------------------------------------------------------------------------
# IGD / IGD+ engines


def _igd_first_scan(pts: np.ndarray, R: np.ndarray, metric: str) -> int:
    # full scan for the singleton with the smallest indicator value;
    # np.argmin keeps the smallest index on ties
    vals = np.empty(pts.shape[0])
    for i in range(pts.shape[0]):
        vals[i] = np.mean(distances_to(pts[i], R, metric))
    return int(np.argmin(vals))


def _igd_standard(V: CandidateSet, k: int, metric: str, R: np.ndarray, indicator: str) -> SelectionResult:
    t0 = time.perf_counter()
    pts = V.points
    n = pts.shape[0]
    first = _igd_first_scan(pts, R, metric)
    cache = DistanceCache.seeded(pts[first], R, metric)
    alive = np.ones(n, dtype=bool)
    alive[first] = False
    positions = [first]
    gains = [cache.mean()]
    evals = [n]
    for _step in range(1, k):
        best = -1
        best_delta = -np.inf
        best_dp: np.ndarray | None = None
        cnt = 0
        for i in np.flatnonzero(alive):
            delta, dp = improvement(pts[i], cache, R)
            cnt += 1
            if delta > best_delta:
                best = int(i)
                best_delta = delta
                best_dp = dp
        commit(cache, best_dp)
        alive[best] = False
        positions.append(best)
        gains.append(float(best_delta))
        evals.append(cnt)
    return SelectionResult(
        selected=_map_selected(V, positions),
        step_gains=gains,
        evals_per_step=evals,
        wall_time=time.perf_counter() - t0,
        engine="standard",
        indicator=indicator,
        final_value=cache.mean(),
        zero_gain_tail=any(g == 0.0 for g in gains[1:]),
    )


def _igd_lazy(V: CandidateSet, k: int, metric: str, R: np.ndarray, indicator: str, log_recomputes: bool) -> SelectionResult:
    t0 = time.perf_counter()
    pts = V.points
    n = pts.shape[0]
    first = _igd_first_scan(pts, R, metric)
    cache = DistanceCache.seeded(pts[first], R, metric)
    positions = [first]
    gains = [cache.mean()]
    evals = [n]
    heap: list[TentativeEntry] = []
    init_evals = 0
    for i in range(n):
        if i == first:
            continue
        delta, _dp = improvement(pts[i], cache, R)
        init_evals += 1
        heap.append(TentativeEntry(i, delta, 1))
    heapq.heapify(heap)
    log: list[tuple[int, int, float, float]] | None = [] if log_recomputes else None
    for step in range(1, k):
        step_evals = init_evals if step == 1 else 0
        while True:
            entry = heapq.heappop(heap)
            if entry.stamp == step:
                positions.append(entry.idx)
                gains.append(entry.bound)
                break
            delta, _dp = improvement(pts[entry.idx], cache, R)
            step_evals += 1
            if log is not None:
                log.append((step, entry.idx, entry.bound, delta))
            entry.bound = delta
            entry.stamp = step
            if not heap or entry < heap[0]:
                positions.append(entry.idx)
                gains.append(delta)
                break
            heapq.heappush(heap, entry)
        commit(cache, distances_to(pts[positions[-1]], R, metric))
        evals.append(step_evals)
    return SelectionResult(
        selected=_map_selected(V, positions),
        step_gains=gains,
        evals_per_step=evals,
        wall_time=time.perf_counter() - t0,
        engine="lazy",
        indicator=indicator,
        final_value=cache.mean(),
        zero_gain_tail=any(g == 0.0 for g in gains[1:]),
        recompute_log=log,
    )


# --------------------------------------------------------------------------
# public entry points


def _dispatch(V: CandidateSet, k: int, ind: Indicator, engine: str, log_recomputes: bool = False, threads: int = 1) -> SelectionResult:
    _validate(V, k)
    kind = ind.kind
    name = kind.value
    t0 = time.perf_counter()
    if V.n < k:
        return _take_all(V, engine, name, t0)
    if kind is IndicatorKind.HYPERVOLUME:
        if engine == "standard":
            return _hv_standard(V, k, threads=threads)
        if engine == "lazy":
            return _hv_lazy(V, k, log_recomputes)
        return _hv_update(V, k)
    metric = "euclidean" if kind is IndicatorKind.IGD else "igdplus"
    R = ind.resolve_reference(V)
    if engine == "standard":
        return _igd_standard(V, k, metric, R, name)
    return _igd_lazy(V, k, metric, R, name, log_recomputes)


def select_standard(V: CandidateSet, k: int, ind: Indicator, threads: int = 1) -> SelectionResult:
    """Plain greedy inclusion: every remaining candidate is evaluated at every
    step; ties go to the smallest original index.

    ``threads`` may chunk each hypervolume sweep across worker threads; the
    per-candidate values and the merge order are unchanged, so the selection
    is bit-identical to the sequential run."""
    return _dispatch(V, k, ind, "standard", threads=threads)


def select_update(V: CandidateSet, k: int) -> SelectionResult:
    """Greedy inclusion for hypervolume that keeps every candidate's exact
    contribution cached and updates it after each insertion instead of
    recomputing it.  Selects exactly the same sequence as select_standard."""
    return _dispatch(V, k, Indicator(IndicatorKind.HYPERVOLUME), "update")


def select_lazy(V: CandidateSet, k: int, ind: Indicator, log_recomputes: bool = False) -> SelectionResult:
    """Lazy greedy inclusion: cached gains are upper bounds (the indicators
    have diminishing returns), so only the heap maximum is recomputed.
    Selects exactly the same sequence as select_standard."""
    return _dispatch(V, k, ind, "lazy", log_recomputes=log_recomputes)

"""Independent reference implementations used for cross-checking.

Nothing here shares code with the production kernels: hypervolume comes from
inclusion-exclusion or a plane sweep, IGD from the double loop over its
definition, and optima from exhaustive enumeration.  Slow on purpose.
"""

from __future__ import annotations

import itertools

import numpy as np

__all__ = [
    "hv_inclusion_exclusion",
    "hv_all_subsets",
    "hv_sweep_2d",
    "igd_naive",
    "igd_improvement_naive",
    "best_subset_hv",
    "best_subset_igd",
    "nondominated_mask",
]


def hv_inclusion_exclusion(points, ref) -> float:
    """Union volume of the boxes [p, ref] by inclusion-exclusion (n <= ~15)."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    ref = np.asarray(ref, dtype=np.float64)
    n = pts.shape[0]
    if pts.size == 0:
        return 0.0
    if n > 20:
        raise ValueError("inclusion-exclusion oracle is limited to 20 points")
    total = 0.0
    for mask in range(1, 1 << n):
        rows = [i for i in range(n) if mask >> i & 1]
        corner = np.max(pts[rows], axis=0)
        vol = float(np.prod(np.maximum(0.0, ref - corner)))
        total += vol if len(rows) % 2 == 1 else -vol
    return total


def hv_all_subsets(points, ref) -> np.ndarray:
    """Hypervolume of every subset, indexed by bitmask (length 2**n).

    Uses the subset-max dynamic program plus a subset-sum transform over the
    signed corner volumes, so the whole table costs O(2^n * (m + n)).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    ref = np.asarray(ref, dtype=np.float64)
    n = pts.shape[0]
    if n > 20:
        raise ValueError("subset table oracle is limited to 20 points")
    size = 1 << n
    corner = np.empty((size, pts.shape[1]))
    corner[0] = -np.inf
    for mask in range(1, size):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        corner[mask] = np.maximum(corner[rest], pts[i]) if rest else pts[i]
    vols = np.prod(np.maximum(0.0, ref - corner), axis=1)
    vols[0] = 0.0
    signs = np.where(np.array([bin(m).count("1") & 1 for m in range(size)]), 1.0, -1.0)
    table = signs * vols
    # zeta transform: table[T] = sum over subsets U of T of signed vol[U]
    for b in range(n):
        bit = 1 << b
        idx = np.arange(size)
        has = (idx & bit) != 0
        table[has] += table[idx[has] ^ bit]
    return table


def hv_sweep_2d(points, ref) -> float:
    """2-D hypervolume by vertical-strip integration with a running minimum."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    ref = np.asarray(ref, dtype=np.float64)
    if pts.size == 0:
        return 0.0
    if pts.shape[1] != 2:
        raise ValueError("sweep oracle is 2-D only")
    inside = np.all(pts < ref, axis=1)
    pts = pts[inside]
    if pts.shape[0] == 0:
        return 0.0
    order = np.argsort(pts[:, 0], kind="stable")
    xs = pts[order, 0]
    ys = pts[order, 1]
    total = 0.0
    best_y = np.inf
    for i in range(len(xs)):
        x_next = xs[i + 1] if i + 1 < len(xs) else ref[0]
        best_y = min(best_y, ys[i])
        total += (x_next - xs[i]) * (ref[1] - best_y)
    return total


def _dist(metric: str, s, r) -> float:
    if metric == "euclidean":
        return float(np.sqrt(sum((si - ri) ** 2 for si, ri in zip(s, r))))
    if metric == "igdplus":
        return float(np.sqrt(sum(max(0.0, si - ri) ** 2 for si, ri in zip(s, r))))
    raise ValueError(metric)


def igd_naive(S, R, metric: str = "euclidean") -> float:
    """IGD straight from the definition: double loop, no caching."""
    S = np.atleast_2d(np.asarray(S, dtype=np.float64))
    R = np.atleast_2d(np.asarray(R, dtype=np.float64))
    total = 0.0
    for r in R:
        total += min(_dist(metric, s, r) for s in S)
    return total / R.shape[0]


def igd_improvement_naive(a, S, R, metric: str = "euclidean") -> float:
    """Improvement via two full IGD evaluations."""
    S = np.atleast_2d(np.asarray(S, dtype=np.float64))
    a = np.asarray(a, dtype=np.float64)
    return igd_naive(S, R, metric) - igd_naive(np.vstack((S, a[None, :])), R, metric)


def best_subset_hv(points, ref, k: int) -> tuple[float, tuple[int, ...]]:
    """Exhaustive optimum of hypervolume over subsets of size <= k."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    n = pts.shape[0]
    table = hv_all_subsets(pts, ref)
    best_v = -1.0
    best_mask = 0
    for mask in range(1 << n):
        if bin(mask).count("1") <= k and table[mask] > best_v:
            best_v = table[mask]
            best_mask = mask
    sel = tuple(i for i in range(n) if best_mask >> i & 1)
    return float(best_v), sel


def best_subset_igd(points, R, k: int, metric: str = "euclidean") -> tuple[float, tuple[int, ...]]:
    """Exhaustive minimum of IGD over nonempty subsets of size <= k."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    n = pts.shape[0]
    best_v = np.inf
    best: tuple[int, ...] = ()
    for size in range(1, min(k, n) + 1):
        for combo in itertools.combinations(range(n), size):
            v = igd_naive(pts[list(combo)], R, metric)
            if v < best_v:
                best_v = v
                best = combo
    return float(best_v), best


def nondominated_mask(points) -> np.ndarray:
    """Brute-force O(n^2) mask of rows to keep: not weakly dominated by any
    distinct row, duplicates keep the lowest index."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    n = pts.shape[0]
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if np.all(pts[j] <= pts[i]):
                if np.array_equal(pts[j], pts[i]):
                    if j < i:
                        keep[i] = False
                        break
                else:
                    keep[i] = False
                    break
    return keep

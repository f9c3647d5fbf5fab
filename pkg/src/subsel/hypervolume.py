"""Exact hypervolume and hypervolume-contribution computation.

Contributions use the limit/worse reduction: the contribution of p equals the
volume of p's box minus the hypervolume of the set obtained by taking the
coordinate-wise maximum of every other point with p.  One hypervolume call on
that (usually heavily collapsed) set replaces two calls on the full sets.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import as_point

__all__ = ["HvContext", "hv", "hvc", "limit", "joint_hvc_update"]


class HvContext:
    """Reference point plus reusable scratch buffers.

    A context is cheap to create and safe to reuse across calls (identical
    calls return identical values); it must not be shared between threads
    running concurrently.  ``kernel_calls`` counts recursion nodes of the
    underlying exact-volume kernels and is instrumentation only.
    """

    def __init__(self, ref_point):
        self.ref_point = as_point(ref_point)
        self.m = self.ref_point.shape[0]
        self._ws = _kernels.Workspace(16, self.m)

    @property
    def kernel_calls(self) -> int:
        return int(self._ws.counter[0])

    def reset_kernel_calls(self) -> None:
        self._ws.counter[0] = 0


def _as_set(points, m: int) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(points, dtype=np.float64))
    if arr.size == 0:
        return np.empty((0, m), dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != m:
        raise ValueError(f"expected an (n, {m}) point set, got shape {arr.shape}")
    return arr


def hv(points, ctx: HvContext) -> float:
    """Hypervolume of a point set, clipped to the context's reference box.

    Points not strictly inside the box contribute nothing. hv([]) == 0.
    """
    pts = _as_set(points, ctx.m)
    if pts.shape[0] == 0:
        return 0.0
    return float(_kernels.hv_raw(pts, ctx.ref_point, ctx._ws))


def hvc(p, points, ctx: HvContext) -> float:
    """Contribution of p: hv(points + [p]) - hv(points), computed with a
    single hypervolume call on the limited set.  Zero when p is weakly
    dominated by a member of the set."""
    pv = as_point(p)
    if pv.shape[0] != ctx.m:
        raise ValueError("point dimension mismatch")
    pts = _as_set(points, ctx.m)
    return float(_kernels.hvc_raw(pv, pts, ctx.ref_point, ctx._ws))


def limit(s, p) -> np.ndarray:
    """Coordinate-wise maximum of two points."""
    sv = as_point(s)
    pv = as_point(p)
    if sv.shape != pv.shape:
        raise ValueError("dimension mismatch")
    return np.maximum(sv, pv)


def joint_hvc_update(hvc_values: dict[int, float], points, s_new, S, ctx: HvContext) -> dict[int, float]:
    """Update cached contributions after ``s_new`` joined the selected set.

    ``hvc_values`` maps candidate index (row of ``points``) to its exact
    contribution to ``S``, the selected set *before* ``s_new`` was added.  For
    each candidate c the jointly-dominated volume of c and s_new beyond S --
    one contribution call on worse(c, s_new) against S -- is subtracted,
    leaving the exact contribution to S + [s_new].  Mutates and returns the
    map."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != ctx.m:
        raise ValueError("points must be (n, m)")
    s_new = as_point(s_new)
    if s_new.shape[0] != ctx.m:
        raise ValueError("dimension mismatch")
    S_arr = _as_set(S, ctx.m)
    n = pts.shape[0]
    for idx in hvc_values:
        if not 0 <= idx < n:
            raise KeyError(f"index {idx} outside the candidate array")
    for idx in hvc_values:
        val = hvc_values[idx]
        if val == 0.0:
            continue
        cand = pts[idx]
        if bool(np.all(s_new <= cand)):
            hvc_values[idx] = 0.0
            continue
        w = np.maximum(cand, s_new)
        joint = float(_kernels.hvc_raw(w, S_arr, ctx.ref_point, ctx._ws))
        hvc_values[idx] = max(val - joint, 0.0)
    return hvc_values

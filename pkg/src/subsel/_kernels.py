"""Compiled numerical kernels for exact hypervolume work.

Everything here operates on raw float64 arrays so numba can compile it; the
public API lives in :mod:`subsel.hypervolume`.  Two exact algorithms share the
small-set bases:

* a slicing recursion (sort by the last objective, peel one exclusive volume
  per point, recurse one dimension down on the limited set) used for narrow
  problems, and
* a pivot/partition recursion on origin-anchored boxes used for wide problems,
  where slicing degenerates on weakly-correlated fronts.

All scratch memory comes from caller-provided rectangular arenas
``fbuf (levels, cap, m)`` / ``ibuf (levels, cap)`` so the hot path never
allocates.  Results are deterministic: stable sorts, fixed iteration order,
fixed reduction order.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


# widths >= this are handled by the pivot/partition recursion
QHV_MIN_WIDTH = 6


@njit(cache=True)
def _ie_min(buf, n, w, ref):
    # inclusion-exclusion over <= 4 boxes [p, ref], any width
    total = 0.0
    for mask in range(1, 1 << n):
        v = 1.0
        bits = 0
        for c in range(w):
            mx = -1.0e300
            for i in range(n):
                if mask >> i & 1 and buf[i, c] > mx:
                    mx = buf[i, c]
            v *= ref[c] - mx
        for i in range(n):
            bits += mask >> i & 1
        if bits & 1:
            total += v
        else:
            total -= v
    return total


@njit(cache=True)
def _ie_origin(buf, n, w):
    # inclusion-exclusion over a handful of boxes [0, q]; intersections use the min
    total = 0.0
    for mask in range(1, 1 << n):
        v = 1.0
        bits = 0
        for c in range(w):
            mn = 1.0e300
            for i in range(n):
                if mask >> i & 1 and buf[i, c] < mn:
                    mn = buf[i, c]
            v *= mn
        for i in range(n):
            bits += mask >> i & 1
        if bits & 1:
            total += v
        else:
            total -= v
    return total


@njit(cache=True)
def _stairs_min(buf, n, ref, prm):
    # 2-D staircase; rows must be mutually non-dominated and deduplicated
    for i in range(n):
        prm[i] = i
    for i in range(1, n):
        cur = prm[i]
        key = buf[cur, 0]
        j = i
        while j > 0 and buf[prm[j - 1], 0] > key:
            prm[j] = prm[j - 1]
            j -= 1
        prm[j] = cur
    v = 0.0
    prev_y = ref[1]
    for t in range(n):
        i = prm[t]
        v += (ref[0] - buf[i, 0]) * (prev_y - buf[i, 1])
        prev_y = buf[i, 1]
    return v


@njit(cache=True)
def _sweep3_min(buf, n, ref, prm, xs, ys):
    # 3-D sweep along the third objective, integrating a 2-D staircase;
    # tolerates dominated and duplicate rows
    for i in range(n):
        prm[i] = i
    for i in range(1, n):
        cur = prm[i]
        key = buf[cur, 2]
        j = i
        while j > 0 and buf[prm[j - 1], 2] > key:
            prm[j] = prm[j - 1]
            j -= 1
        prm[j] = cur
    size = 0
    area = 0.0
    vol = 0.0
    for t in range(n):
        i = prm[t]
        x = buf[i, 0]
        y = buf[i, 1]
        lo = 0
        hi = size
        while lo < hi:
            mid = (lo + hi) >> 1
            if xs[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        idx = lo
        dominated = False
        if idx > 0 and ys[idx - 1] <= y:
            dominated = True
        if idx < size and xs[idx] == x and ys[idx] <= y:
            dominated = True
        if not dominated:
            cursor = x
            cover = (ref[1] - ys[idx - 1]) if idx > 0 else 0.0
            old = 0.0
            j = idx
            while j < size and ys[j] >= y:
                old += (xs[j] - cursor) * cover
                cursor = xs[j]
                cover = ref[1] - ys[j]
                j += 1
            x_end = xs[j] if j < size else ref[0]
            old += (x_end - cursor) * cover
            area += (ref[1] - y) * (x_end - x) - old
            removed = j - idx
            if removed == 0:
                for t2 in range(size, idx, -1):
                    xs[t2] = xs[t2 - 1]
                    ys[t2] = ys[t2 - 1]
                xs[idx] = x
                ys[idx] = y
            else:
                xs[idx] = x
                ys[idx] = y
                if removed > 1:
                    for t2 in range(j, size):
                        xs[idx + 1 + t2 - j] = xs[t2]
                        ys[idx + 1 + t2 - j] = ys[t2]
            size += 1 - removed
        z = buf[i, 2]
        z_next = buf[prm[t + 1], 2] if t + 1 < n else ref[2]
        vol += area * (z_next - z)
    return vol


@njit(cache=True)
def _compact_min(buf, cnt, w):
    # in-place removal of weakly dominated rows and duplicates (lowest index
    # kept); returns the new row count.  Safe because kept rows are written at
    # positions <= the row being examined.
    k2 = 0
    for a in range(cnt):
        drop = False
        for p in range(k2):
            le = True
            for c in range(w):
                if buf[p, c] > buf[a, c]:
                    le = False
                    break
            if le:
                drop = True
                break
        if not drop:
            for b in range(a + 1, cnt):
                le = True
                eq = True
                for c in range(w):
                    d = buf[b, c] - buf[a, c]
                    if d > 0.0:
                        le = False
                        break
                    if d != 0.0:
                        eq = False
                if le and not eq:
                    drop = True
                    break
        if not drop:
            if k2 != a:
                for c in range(w):
                    buf[k2, c] = buf[a, c]
            k2 += 1
    return k2


@njit(cache=True)
def _compact_origin(buf, cnt, w):
    # origin form: drop boxes contained in another box (q <= q'), dedup
    k2 = 0
    for a in range(cnt):
        drop = False
        for p in range(k2):
            ge = True
            for c in range(w):
                if buf[p, c] < buf[a, c]:
                    ge = False
                    break
            if ge:
                drop = True
                break
        if not drop:
            for b in range(a + 1, cnt):
                ge = True
                eq = True
                for c in range(w):
                    d = buf[b, c] - buf[a, c]
                    if d < 0.0:
                        ge = False
                        break
                    if d != 0.0:
                        eq = False
                if ge and not eq:
                    drop = True
                    break
        if not drop:
            if k2 != a:
                for c in range(w):
                    buf[k2, c] = buf[a, c]
            k2 += 1
    return k2


@njit(cache=False, nogil=True)
def _qhv_rec(fbuf, level, n, w, counter):
    # union volume of origin boxes held at fbuf[level, :n, :w]
    counter[0] += 1
    buf = fbuf[level]
    if n == 0:
        return 0.0
    if n == 1:
        v = 1.0
        for c in range(w):
            v *= buf[0, c]
        return v
    if n <= 4:
        return _ie_origin(buf, n, w)
    # pivot: the largest box
    best = 0
    bestv = -1.0
    for i in range(n):
        v = 1.0
        for c in range(w):
            v *= buf[i, c]
        if v > bestv:
            bestv = v
            best = i
    total = bestv
    nxt = fbuf[level + 1]
    for j in range(w):
        pj = buf[best, j]
        cnt = 0
        for i in range(n):
            qj = buf[i, j]
            if qj <= pj:
                continue
            for c in range(j):
                v = buf[i, c]
                p = buf[best, c]
                nxt[cnt, c] = p if p < v else v
            nxt[cnt, j] = qj - pj
            for c in range(j + 1, w):
                nxt[cnt, c] = buf[i, c]
            cnt += 1
        if cnt:
            cnt = _compact_origin(nxt, cnt, w)
            total += _qhv_rec(fbuf, level + 1, cnt, w, counter)
    return total


@njit(cache=False, nogil=True)
def _hv_rec(fbuf, ibuf, level, n, w, ref, counter):
    # hypervolume of the set at fbuf[level, :n, :w]; rows must be mutually
    # non-dominated and strictly inside the reference box
    counter[0] += 1
    buf = fbuf[level]
    if n == 0:
        return 0.0
    if n == 1:
        v = 1.0
        for c in range(w):
            v *= ref[c] - buf[0, c]
        return v
    if n <= 4:
        return _ie_min(buf, n, w, ref)
    if w == 2:
        return _stairs_min(buf, n, ref, ibuf[level])
    if w == 3:
        return _sweep3_min(buf, n, ref, ibuf[level], fbuf[level + 1, :, 0], fbuf[level + 1, :, 1])
    if w >= QHV_MIN_WIDTH:
        for i in range(n):
            for c in range(w):
                buf[i, c] = ref[c] - buf[i, c]
        return _qhv_rec(fbuf, level, n, w, counter)
    # slicing step: peel exclusive volumes in worsening order of the last
    # objective; every limited set then lives in that objective's plane
    last = w - 1
    prm = ibuf[level]
    for i in range(n):
        prm[i] = i
    for i in range(1, n):
        cur = prm[i]
        key = buf[cur, last]
        j = i
        while j > 0 and buf[prm[j - 1], last] < key:
            prm[j] = prm[j - 1]
            j -= 1
        prm[j] = cur
    nxt = fbuf[level + 1]
    total = 0.0
    for i in range(n):
        pi = prm[i]
        boxp = 1.0
        for c in range(last):
            boxp *= ref[c] - buf[pi, c]
        rest = n - i - 1
        if rest == 0:
            sub = boxp
        else:
            covered = False
            for j in range(rest):
                qi = prm[i + 1 + j]
                allle = True
                for c in range(last):
                    a = buf[qi, c]
                    b = buf[pi, c]
                    nxt[j, c] = a if a > b else b
                    if a > b:
                        allle = False
                if allle:
                    covered = True
                    break
            if covered:
                continue
            cnt = _compact_min(nxt, rest, last)
            sub = boxp - _hv_rec(fbuf, ibuf, level + 1, cnt, last, ref, counter)
        total += (ref[last] - buf[pi, last]) * sub
    return total


@njit(cache=False, nogil=True)
def _hv_entry(points, ref, fbuf, ibuf, counter):
    # clip to the reference box, filter, then recurse
    n, m = points.shape
    buf = fbuf[0]
    cnt = 0
    for i in range(n):
        inside = True
        for c in range(m):
            if points[i, c] >= ref[c]:
                inside = False
                break
        if inside:
            for c in range(m):
                buf[cnt, c] = points[i, c]
            cnt += 1
    cnt = _compact_min(buf, cnt, m)
    return _hv_rec(fbuf, ibuf, 0, cnt, m, ref, counter)


@njit(cache=False, nogil=True)
def _hvc_core(p, S, ref, fbuf, ibuf, counter):
    # contribution of p to S via one hypervolume call on the limited set
    m = p.shape[0]
    for c in range(m):
        if p[c] >= ref[c]:
            return 0.0
    box = 1.0
    for c in range(m):
        box *= ref[c] - p[c]
    ns = S.shape[0]
    if ns == 0:
        return box
    buf = fbuf[0]
    cnt = 0
    for j in range(ns):
        covers = True
        inside = True
        for c in range(m):
            a = S[j, c]
            b = p[c]
            v = a if a > b else b
            buf[cnt, c] = v
            if a > b:
                covers = False
            if v >= ref[c]:
                inside = False
        if covers:
            return 0.0
        if inside:
            cnt += 1
    if cnt == 0:
        return box
    cnt = _compact_min(buf, cnt, m)
    v = box - _hv_rec(fbuf, ibuf, 0, cnt, m, ref, counter)
    return v if v > 0.0 else 0.0


@njit(cache=False, nogil=True)
def _sweep_contributions(points, alive, S, ref, fbuf, ibuf, counter, out):
    # contribution of every alive candidate to S, in index order
    for i in range(points.shape[0]):
        if alive[i]:
            out[i] = _hvc_core(points[i], S, ref, fbuf, ibuf, counter)
        else:
            out[i] = -1.0


@njit(cache=False, nogil=True)
def _joint_update_sweep(points, alive, vals, s_new, S_old, ref, fbuf, ibuf, counter, wrow):
    # after s_new joined the selected set (previously S_old), subtract from
    # each cached contribution the volume jointly dominated with s_new only
    m = s_new.shape[0]
    for i in range(points.shape[0]):
        if not alive[i] or vals[i] == 0.0:
            continue
        dominated = True
        for c in range(m):
            if s_new[c] > points[i, c]:
                dominated = False
                break
        if dominated:
            vals[i] = 0.0
            continue
        for c in range(m):
            a = points[i, c]
            b = s_new[c]
            wrow[c] = a if a > b else b
        joint = _hvc_core(wrow, S_old, ref, fbuf, ibuf, counter)
        v = vals[i] - joint
        vals[i] = v if v > 0.0 else 0.0


@njit(cache=True)
def _sanitize_keep(pts, keep):
    # pts pre-sorted so that any weak dominator of row i appears before it
    # (ascending coordinate sum, ties by original index)
    n, m = pts.shape
    for i in range(n):
        keep[i] = True
        for j in range(i):
            if not keep[j]:
                continue
            le = True
            for c in range(m):
                if pts[j, c] > pts[i, c]:
                    le = False
                    break
            if le:
                keep[i] = False
                break


class Workspace:
    """Reusable scratch arenas for the kernels; one per context, not shared
    across threads.

    The slicing recursion needs at most ``m + 2`` levels; the pivot/partition
    recursion (entered only for widths >= QHV_MIN_WIDTH) sheds at least one
    box per level, so ``cap + 2`` levels always suffice.
    """

    def __init__(self, cap: int, m: int):
        self.cap = 0
        self.m = m
        self.counter = np.zeros(1, dtype=np.int64)
        self.grow(cap)

    def grow(self, cap: int) -> None:
        cap = max(cap, 8)
        if cap <= self.cap:
            return
        levels = (cap + 2) if self.m >= QHV_MIN_WIDTH else (self.m + 2)
        self.fbuf = np.empty((levels, cap, self.m), dtype=np.float64)
        self.ibuf = np.empty((levels, cap), dtype=np.int64)
        self.cap = cap


def hv_raw(points: np.ndarray, ref: np.ndarray, ws: Workspace) -> float:
    ws.grow(points.shape[0] + 1)
    return _hv_entry(points, ref, ws.fbuf, ws.ibuf, ws.counter)


def hvc_raw(p: np.ndarray, S: np.ndarray, ref: np.ndarray, ws: Workspace) -> float:
    ws.grow(S.shape[0] + 1)
    return _hvc_core(p, S, ref, ws.fbuf, ws.ibuf, ws.counter)

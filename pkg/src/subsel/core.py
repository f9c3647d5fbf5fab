"""Objective-space geometry: dominance relations and candidate-set handling.

Everything uses the minimization convention; maximization inputs must be
negated at ingestion.  Coordinate comparisons are exact (no epsilon), and
duplicate detection is bit-exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._kernels import _sanitize_keep

logger = logging.getLogger(__name__)


def as_point(coords) -> np.ndarray:
    """Validate one objective vector: 1-D, at least two finite coordinates."""
    p = np.asarray(coords, dtype=np.float64)
    if p.ndim != 1:
        raise ValueError(f"a point must be 1-D, got shape {p.shape}")
    if p.shape[0] < 2:
        raise ValueError("a point needs at least 2 objectives")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"non-finite coordinate in point {p!r}")
    return p


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def dominates(a, b) -> bool:
    """Pareto dominance under minimization: a <= b everywhere, < somewhere."""
    a, b = _pair(a, b)
    return bool(np.all(a <= b) and np.any(a < b))


def weakly_dominates(a, b) -> bool:
    """a <= b in every coordinate (true for identical points)."""
    a, b = _pair(a, b)
    return bool(np.all(a <= b))


@dataclass(frozen=True)
class SanitizeReport:
    n_input: int
    n_kept: int
    removed_duplicates: tuple[int, ...]
    removed_dominated: tuple[int, ...]
    n_outside_ref_box: int


@dataclass(frozen=True)
class CandidateSet:
    """Immutable, indexed set of objective vectors plus the hypervolume
    reference point.  Row i is the point with stable identity i; source_index
    maps each row back to its position in the pre-sanitize input."""

    points: np.ndarray
    ref_point: np.ndarray
    provenance: str = ""
    source_index: np.ndarray = field(default=None)  # type: ignore[assignment]
    report: SanitizeReport | None = None

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.float64))
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("points must be a nonempty (n, m) array")
        if pts.shape[1] < 2:
            raise ValueError("need at least 2 objectives")
        if not np.all(np.isfinite(pts)):
            raise ValueError("non-finite coordinate in candidate set")
        ref = as_point(self.ref_point)
        if ref.shape[0] != pts.shape[1]:
            raise ValueError("reference point dimension mismatch")
        src = self.source_index
        if src is None:
            src = np.arange(pts.shape[0], dtype=np.int64)
        else:
            src = np.asarray(src, dtype=np.int64)
            if src.shape != (pts.shape[0],):
                raise ValueError("source_index must have one entry per point")
        for arr in (pts, ref, src):
            arr.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "ref_point", ref)
        object.__setattr__(self, "source_index", src)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def m(self) -> int:
        return self.points.shape[1]


class IndicatorKind(str, Enum):
    HYPERVOLUME = "hv"
    IGD = "igd"
    IGD_PLUS = "igdplus"


@dataclass(frozen=True)
class Indicator:
    """Selection criterion: hypervolume (needs the set's ref_point) or
    IGD/IGD+ (reference_set defaults to the full candidate set)."""

    kind: IndicatorKind
    reference_set: CandidateSet | None = None

    def __post_init__(self):
        kind = IndicatorKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is IndicatorKind.HYPERVOLUME and self.reference_set is not None:
            raise ValueError("hypervolume takes its reference point from the candidate set")

    def resolve_reference(self, candidates: CandidateSet) -> np.ndarray:
        ref = self.reference_set if self.reference_set is not None else candidates
        if ref.m != candidates.m:
            raise ValueError("reference set dimension mismatch")
        if ref.n == 0:
            raise ValueError("reference set is empty")
        return ref.points


def sanitize(points, ref_point, provenance: str = "") -> CandidateSet:
    """Build a CandidateSet whose points are mutually non-weakly-dominating.

    Duplicates keep the lowest original index; dominated points are removed.
    Points not strictly inside the reference box are kept (their hypervolume
    contribution is zero) but counted in the report and logged.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("need a nonempty (n, m) array of points")
    if pts.shape[1] < 2:
        raise ValueError("need at least 2 objectives")
    if not np.all(np.isfinite(pts)):
        raise ValueError("non-finite coordinate in input points")
    ref = as_point(ref_point)
    if ref.shape[0] != pts.shape[1]:
        raise ValueError("reference point dimension mismatch")

    n = pts.shape[0]
    # any weak dominator of a point has a smaller-or-equal coordinate sum, so
    # after this ordering a single backward scan finds every removal
    order = np.lexsort((np.arange(n), pts.sum(axis=1)))
    spts = np.ascontiguousarray(pts[order])
    keep = np.empty(n, dtype=np.bool_)
    _sanitize_keep(spts, keep)

    kept_orig = np.sort(order[keep])
    removed = order[~keep]
    dup: list[int] = []
    dom: list[int] = []
    kept_pts = pts[kept_orig]
    for idx in removed.tolist():
        # a removed duplicate has a bit-exact copy among the kept rows
        if bool(np.any(np.all(kept_pts == pts[idx], axis=1))):
            dup.append(idx)
        else:
            dom.append(idx)

    outside = int(np.sum(~np.all(kept_pts < ref, axis=1)))
    if outside:
        logger.warning(
            "%d of %d kept points are not strictly inside the reference box; "
            "their hypervolume contribution is zero",
            outside,
            kept_orig.size,
        )
    report = SanitizeReport(
        n_input=n,
        n_kept=int(kept_orig.size),
        removed_duplicates=tuple(sorted(dup)),
        removed_dominated=tuple(sorted(dom)),
        n_outside_ref_box=outside,
    )
    return CandidateSet(
        points=kept_pts,
        ref_point=ref,
        provenance=provenance,
        source_index=kept_orig,
        report=report,
    )

"""Synthetic non-dominated candidate sets on standard analytic fronts.

Families:

* ``dtlz1``  - linear simplex, sum(f) = 0.5, f >= 0
* ``dtlz2``  - concave unit-sphere patch, sum(f^2) = 1, f >= 0
* ``idtlz2`` - inverted sphere patch, f = 1 - g with g on the dtlz2 patch
* ``dtlz7``  - disconnected: f_1..f_{m-1} uniform over the non-dominated
  sub-intervals of [0, 1], f_m from the closed-form trailing objective

Generation samples ``n_pool`` points from the front and then draws
``n_sample`` of them without replacement, both driven by one seed, so a spec
is fully reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CandidateSet, sanitize

__all__ = ["FAMILIES", "FrontSpec", "gen_front"]

FAMILIES = ("dtlz1", "dtlz2", "idtlz2", "dtlz7")

DEFAULT_REF_COORD = 1.1


@dataclass(frozen=True)
class FrontSpec:
    family: str
    m: int
    n_pool: int
    n_sample: int
    seed: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; pick one of {FAMILIES}")
        if self.m < 2:
            raise ValueError("need at least 2 objectives")
        if not 1 <= self.n_sample <= self.n_pool:
            raise ValueError("need 1 <= n_sample <= n_pool")


def _simplex(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    g = rng.standard_exponential((n, m))
    return 0.5 * g / g.sum(axis=1, keepdims=True)


def _sphere(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    z = np.abs(rng.standard_normal((n, m)))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _trailing_term(f: np.ndarray) -> np.ndarray:
    # per-coordinate reduction h(u) = u/2 * (1 + sin(3*pi*u)) of the
    # disconnected family's trailing objective
    return 0.5 * f * (1.0 + np.sin(3.0 * np.pi * f))


def _h_scalar(u: float) -> float:
    return 0.5 * u * (1.0 + np.sin(3.0 * np.pi * u))


def _bisect(fn, lo: float, hi: float, tol: float = 1e-14) -> float:
    sign_lo = fn(lo) > 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (fn(mid) > 0.0) == sign_lo:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def _dtlz7_intervals() -> tuple[tuple[float, float], tuple[float, float]]:
    """Sub-intervals of [0, 1] where h is at its running maximum; only these
    coordinate values appear on the non-dominated part of the front."""

    def dh(u: float) -> float:
        return 0.5 * (1.0 + np.sin(3.0 * np.pi * u)) + 1.5 * np.pi * u * np.cos(3.0 * np.pi * u)

    peak1 = _bisect(dh, 1.0 / 6.0, 0.45)
    peak2 = _bisect(dh, 5.0 / 6.0, 0.95)
    h1 = _h_scalar(peak1)
    # first point of the second rising branch that beats the first peak
    rise = _bisect(lambda u: h1 - _h_scalar(u), 0.5, peak2)
    return (0.0, peak1), (rise, peak2)


_DTLZ7_SLABS = _dtlz7_intervals()


def _dtlz7(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    (a0, a1), (b0, b1) = _DTLZ7_SLABS
    len_a = a1 - a0
    len_b = b1 - b0
    total = len_a + len_b
    u = rng.uniform(0.0, total, size=(n, m - 1))
    lead = np.where(u < len_a, a0 + u, b0 + (u - len_a))
    trailing = 2.0 * (m - _trailing_term(lead).sum(axis=1))
    return np.column_stack((lead, trailing))


_SAMPLERS = {
    "dtlz1": _simplex,
    "dtlz2": _sphere,
    "idtlz2": lambda rng, n, m: 1.0 - _sphere(rng, n, m),
    "dtlz7": _dtlz7,
}


def gen_front(spec: FrontSpec) -> CandidateSet:
    """Sample a candidate set from the requested front; deterministic in the
    seed, sanitized to mutual non-dominance."""
    rng = np.random.default_rng(spec.seed)
    pool = _SAMPLERS[spec.family](rng, spec.n_pool, spec.m)
    idx = rng.choice(spec.n_pool, size=spec.n_sample, replace=False)
    pts = pool[idx]
    if spec.family == "dtlz7":
        # the trailing objective exceeds the usual box; push the reference
        # point just past the sampled extent in every coordinate
        ref = pts.max(axis=0) + 0.1
        note = "ref_point=max+0.1 (trailing objective exceeds the standard box)"
    else:
        ref = np.full(spec.m, DEFAULT_REF_COORD)
        note = f"ref_point=({DEFAULT_REF_COORD}, ...)"
    provenance = f"{spec.family} m={spec.m} pool={spec.n_pool} n={spec.n_sample} seed={spec.seed}; {note}"
    return sanitize(pts, ref, provenance=provenance)

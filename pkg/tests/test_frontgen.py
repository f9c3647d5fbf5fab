import numpy as np
import pytest

from subsel.frontgen import _DTLZ7_SLABS, FrontSpec, gen_front
from subsel.oracles import nondominated_mask


def spec(family, m=3, n=400, pool=None, seed=11):
    return FrontSpec(family=family, m=m, n_pool=pool or n, n_sample=n, seed=seed)


def test_dtlz2_points_lie_on_the_sphere():
    cs = gen_front(spec("dtlz2"))
    assert np.all(np.abs((cs.points**2).sum(axis=1) - 1.0) < 1e-9)
    assert np.all(cs.points >= 0)


def test_dtlz1_points_lie_on_the_simplex():
    cs = gen_front(spec("dtlz1", m=5))
    assert np.all(np.abs(cs.points.sum(axis=1) - 0.5) < 1e-9)
    assert np.all(cs.points >= 0)


def test_idtlz2_is_inverted_sphere():
    cs = gen_front(spec("idtlz2"))
    g = 1.0 - cs.points
    assert np.all(np.abs((g**2).sum(axis=1) - 1.0) < 1e-9)
    assert np.all((cs.points >= 0) & (cs.points <= 1))


def test_dtlz7_leading_coords_in_slabs_and_trailing_formula():
    cs = gen_front(spec("dtlz7", m=4, n=600))
    (a0, a1), (b0, b1) = _DTLZ7_SLABS
    lead = cs.points[:, :-1]
    in_a = (lead >= a0) & (lead <= a1)
    in_b = (lead >= b0) & (lead <= b1)
    assert np.all(in_a | in_b)
    assert in_b.any()  # both slabs actually used
    want = 2.0 * (4 - (0.5 * lead * (1.0 + np.sin(3.0 * np.pi * lead))).sum(axis=1))
    assert np.allclose(cs.points[:, -1], want, atol=1e-12)


@pytest.mark.parametrize("family", ["dtlz1", "dtlz2", "idtlz2"])
def test_analytic_fronts_survive_sanitize_untouched(family):
    cs = gen_front(spec(family, m=4, n=500))
    assert cs.n == 500
    assert cs.report.removed_dominated == ()
    assert cs.report.removed_duplicates == ()


def test_generated_sets_are_mutually_nondominated():
    for family in ("dtlz1", "dtlz2", "idtlz2", "dtlz7"):
        cs = gen_front(spec(family, m=3, n=200))
        assert np.all(nondominated_mask(cs.points))


def test_fixed_seed_is_bit_identical():
    a = gen_front(spec("dtlz2", m=5, n=300, seed=42))
    b = gen_front(spec("dtlz2", m=5, n=300, seed=42))
    assert np.array_equal(a.points, b.points)
    c = gen_front(spec("dtlz2", m=5, n=300, seed=43))
    assert not np.array_equal(a.points, c.points)


def test_pool_subsampling_draws_from_a_larger_pool():
    small = gen_front(spec("dtlz2", n=100, pool=100, seed=5))
    pooled = gen_front(spec("dtlz2", n=100, pool=5000, seed=5))
    assert small.n == pooled.n == 100
    assert not np.array_equal(small.points, pooled.points)


def test_dtlz2_coordinate_means_are_uniform():
    # oracle: 1e6-sample Monte-Carlo estimate of the patch coordinate mean
    # (seed 777) gives 0.50005; the analytic value is exactly 1/2
    cs = gen_front(spec("dtlz2", m=3, n=4000, seed=9))
    sigma_mean = cs.points.std() / np.sqrt(cs.n)
    assert np.all(np.abs(cs.points.mean(axis=0) - 0.5) < 3.0 * sigma_mean + (0.50005 - 0.5))


def test_reference_points():
    cs = gen_front(spec("dtlz2", m=4))
    assert np.allclose(cs.ref_point, 1.1)
    cs7 = gen_front(spec("dtlz7", m=3, n=300))
    assert np.allclose(cs7.ref_point, cs7.points.max(axis=0) + 0.1)
    assert "max+0.1" in cs7.provenance


def test_spec_validation():
    with pytest.raises(ValueError):
        FrontSpec(family="zdt1", m=3, n_pool=10, n_sample=10, seed=0)
    with pytest.raises(ValueError):
        FrontSpec(family="dtlz2", m=1, n_pool=10, n_sample=10, seed=0)
    with pytest.raises(ValueError):
        FrontSpec(family="dtlz2", m=3, n_pool=10, n_sample=20, seed=0)

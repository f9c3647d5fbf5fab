import numpy as np
import pytest

from subsel.hypervolume import HvContext, hv, hvc, joint_hvc_update, limit
from subsel.oracles import hv_inclusion_exclusion, hv_sweep_2d

REF2 = np.array([1.1, 1.1])


def rel_err(got, want):
    return abs(got - want) / max(1.0, abs(want))


def test_hv_single_box():
    assert hv([[0.5, 0.5]], HvContext(REF2)) == pytest.approx(0.36, abs=1e-15)


def test_hv_empty_set():
    assert hv([], HvContext(REF2)) == 0.0


def test_hv_three_point_front_matches_inclusion_exclusion():
    pts = [[0.2, 0.8], [0.5, 0.5], [0.8, 0.2]]
    want = hv_inclusion_exclusion(pts, REF2)  # 0.54 by direct evaluation
    assert hv(pts, HvContext(REF2)) == pytest.approx(want, rel=1e-12)


def test_hv_dimension_mismatch():
    with pytest.raises(ValueError):
        hv([[0.5, 0.5, 0.5]], HvContext(REF2))


def test_hv_clips_points_outside_box():
    ctx = HvContext(REF2)
    assert hv([[0.5, 1.2]], ctx) == 0.0  # empty clipped region
    assert hv([[0.5, 1.1]], ctx) == 0.0  # zero-measure slab
    combined = hv([[0.5, 1.2], [0.9, 0.9]], ctx)
    assert combined == pytest.approx(0.2 * 0.2, abs=1e-15)


def test_hvc_against_empty_set_is_own_volume():
    assert hvc([0.5, 0.5], [], HvContext(REF2)) == pytest.approx(0.36, abs=1e-15)


def test_hvc_dominated_point_is_exactly_zero():
    assert hvc([0.6, 0.6], [[0.5, 0.5]], HvContext(REF2)) == 0.0


def test_hvc_matches_two_hv_oracle():
    p = [0.5, 0.5]
    S = [[0.2, 0.8], [0.8, 0.2]]
    want = hv_inclusion_exclusion([[0.2, 0.8], [0.8, 0.2], [0.5, 0.5]], REF2) - hv_inclusion_exclusion(S, REF2)
    assert hvc(p, S, HvContext(REF2)) == pytest.approx(want, rel=1e-12)


def test_limit_examples():
    assert limit([0.2, 0.8], [0.5, 0.5]).tolist() == [0.5, 0.8]
    assert limit([0.5, 0.5], [0.5, 0.5]).tolist() == [0.5, 0.5]
    assert limit([1, 0], [0, 1]).tolist() == [1, 1]


def test_hv_oracle_equivalence_small_sets(rng):
    ctx = {}
    for _ in range(200):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(1, 9))
        pts = rng.random((n, m))
        ref = np.full(m, 1.1)
        c = ctx.setdefault(m, HvContext(ref))
        assert rel_err(hv(pts, c), hv_inclusion_exclusion(pts, ref)) < 1e-9


def test_hvc_identity_random(rng):
    for _ in range(200):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(0, 9))
        S = rng.random((n, m))
        p = rng.random(m)
        ref = np.full(m, 1.1)
        c = HvContext(ref)
        direct = hv(np.vstack((S, p[None, :])), c) - hv(S, c)
        assert abs(hvc(p, S, c) - direct) < 1e-9


def test_hv_monotone_under_superset(rng):
    for _ in range(100):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(1, 10))
        T = rng.random((n, m))
        sub = rng.integers(0, 2, size=n).astype(bool)
        c = HvContext(np.full(m, 1.1))
        assert hv(T[sub], c) <= hv(T, c) + 1e-12


def test_hvc_submodular_sample(rng):
    for _ in range(300):
        m = int(rng.integers(2, 5))
        nb = int(rng.integers(1, 9))
        B = rng.random((nb, m))
        na = int(rng.integers(0, nb))
        A = B[rng.permutation(nb)[:na]]
        p = rng.random(m)
        c = HvContext(np.full(m, 1.1))
        assert hvc(p, A, c) >= hvc(p, B, c) - 1e-9


def test_hv_2d_matches_sweep_oracle(rng):
    for _ in range(30):
        n = int(rng.integers(2, 501))
        pts = rng.random((n, 2))
        c = HvContext(REF2)
        assert rel_err(hv(pts, c), hv_sweep_2d(pts, REF2)) < 1e-9


def test_context_reuse_no_state_leak():
    ctx = HvContext(REF2)
    pts = [[0.2, 0.8], [0.5, 0.5], [0.8, 0.2]]
    first = hv(pts, ctx)
    mid = hvc([0.4, 0.4], pts, ctx)
    assert mid > 0
    assert hv(pts, ctx) == first


def test_kernel_call_instrumentation():
    ctx = HvContext(REF2)
    before = ctx.kernel_calls
    hv([[0.2, 0.8], [0.5, 0.5], [0.8, 0.2], [0.3, 0.6], [0.6, 0.3]], ctx)
    assert ctx.kernel_calls > before
    ctx.reset_kernel_calls()
    assert ctx.kernel_calls == 0


# joint contribution updating -------------------------------------------------


def test_joint_update_matches_fresh_recompute_2d():
    ctx = HvContext(REF2)
    S = np.array([[0.2, 0.8]])
    cands = np.array([[0.5, 0.5]])
    vals = {0: hvc(cands[0], S, ctx)}
    joint_hvc_update(vals, cands, np.array([0.8, 0.2]), S, ctx)
    want = hvc(cands[0], [[0.2, 0.8], [0.8, 0.2]], ctx)
    assert vals[0] == pytest.approx(want, rel=1e-12)


def test_joint_update_disjoint_regions_leave_value_alone():
    # the new member shares no exclusive region with the candidate beyond S
    ctx = HvContext(REF2)
    S = np.array([[0.5, 0.5]])
    cands = np.array([[0.05, 0.9]])
    before = hvc(cands[0], S, ctx)
    vals = {0: before}
    joint_hvc_update(vals, cands, np.array([0.9, 0.05]), S, ctx)
    assert vals[0] == pytest.approx(before, abs=1e-15)


def test_joint_update_dominating_newcomer_zeroes_candidate():
    ctx = HvContext(REF2)
    S = np.array([[0.2, 0.8]])
    cands = np.array([[0.6, 0.6]])
    vals = {0: hvc(cands[0], S, ctx)}
    joint_hvc_update(vals, cands, np.array([0.5, 0.5]), S, ctx)
    assert vals[0] == 0.0


def test_joint_update_random_instances(rng):
    for _ in range(200):
        m = int(rng.integers(2, 5))
        ns = int(rng.integers(0, 6))
        nc = int(rng.integers(1, 6))
        S = rng.random((ns, m))
        cands = rng.random((nc, m))
        s_new = rng.random(m)
        ctx = HvContext(np.full(m, 1.1))
        vals = {i: hvc(cands[i], S, ctx) for i in range(nc)}
        joint_hvc_update(vals, cands, s_new, S, ctx)
        after = np.vstack((S, s_new[None, :]))
        for i in range(nc):
            assert abs(vals[i] - hvc(cands[i], after, ctx)) < 1e-9


def test_joint_update_unknown_index():
    ctx = HvContext(REF2)
    with pytest.raises(KeyError):
        joint_hvc_update({5: 0.1}, np.array([[0.5, 0.5]]), np.array([0.4, 0.4]), [], ctx)

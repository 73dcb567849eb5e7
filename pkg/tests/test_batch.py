import numpy as np

from turanlab import batch as bt
from turanlab import graph as gr
from turanlab import inequalities as iq


def assert_context_rows_match(bctx, i, sctx, tol=1e-10):
    scalars = [
        ("m", sctx.m), ("t", sctx.t), ("omega", sctx.omega),
        ("min_cv", sctx.min_cv),
    ]
    for name, want in scalars:
        assert getattr(bctx, name)[i] == want, name
    floats = [
        ("lam1", sctx.lam1), ("lam2", sctx.lam2),
        ("s_plus", sctx.s_plus), ("s_minus", sctx.s_minus),
        ("sum_cv_wilf", sctx.sum_cv_wilf), ("sum_cv_half", sctx.sum_cv_half),
        ("sum_cv_reg", sctx.sum_cv_reg), ("sum_ce_local", sctx.sum_ce_local),
    ]
    for name, want in floats:
        got = getattr(bctx, name)[i]
        assert abs(got - want) <= tol * max(1.0, abs(want)), (name, got, want)
    flags = [
        ("diamond_free", sctx.diamond_free), ("regular", sctx.regular),
        ("complete", sctx.complete), ("connected", sctx.connected),
    ]
    for name, want in flags:
        assert bool(getattr(bctx, name)[i]) == bool(want), name
    for r in (1, 2, 3):
        assert abs(bctx.walk_total(r)[i] - sctx.walk_total(r)) <= tol
        assert abs(bctx.walk_conj_sum(r)[i] - sctx.walk_conj_sum(r)) <= tol
        assert abs(bctx.walk_sqrt_sum(r)[i] - sctx.walk_sqrt_sum(r)) <= tol


def test_batch_matches_scalar_exhaustive_n_le_4():
    for n in (1, 2, 3, 4):
        masks = np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)
        bctx = bt.BatchContext(n, masks, walk_rs=(1, 2, 3))
        for mask in masks:
            sctx = iq.GraphContext(gr.from_edge_mask(n, int(mask)))
            assert_context_rows_match(bctx, int(mask), sctx)


def test_batch_matches_scalar_sampled_n7():
    rng = np.random.default_rng(41)
    masks = rng.integers(0, 1 << 21, size=300, dtype=np.int64)
    bctx = bt.BatchContext(7, masks, walk_rs=(1, 2, 3))
    for i, mask in enumerate(masks):
        sctx = iq.GraphContext(gr.from_edge_mask(7, int(mask)))
        assert_context_rows_match(bctx, i, sctx)


def test_batch_checks_match_scalar_results():
    rng = np.random.default_rng(42)
    masks = rng.integers(0, 1 << 15, size=200, dtype=np.int64)
    ids = iq.expand_check_ids("all", walk_rs=(1, 2, 3))
    bctx = bt.BatchContext(6, masks, walk_rs=(1, 2, 3))
    for cid in ids:
        entry, r = iq.parse_check_id(cid)
        lhs = np.broadcast_to(np.asarray(entry.lhs(bctx, r), dtype=np.float64), (len(masks),))
        rhs = np.broadcast_to(np.asarray(entry.rhs(bctx, r), dtype=np.float64), (len(masks),))
        app = np.broadcast_to(np.asarray(entry.applicable(bctx, r)), (len(masks),))
        for i in (0, 17, 63, 199):
            g = gr.from_edge_mask(6, int(masks[i]))
            res = iq.check(cid, g)
            assert abs(lhs[i] - res.lhs) <= 1e-10 * max(1, abs(res.lhs)), cid
            assert abs(rhs[i] - res.rhs) <= 1e-10 * max(1, abs(res.rhs)), cid
            assert bool(app[i]) == res.applicable, cid


def test_triangle_cross_oracle_exact_n7():
    # Combinatorial t(G) must equal round(sum lambda_i^3 / 6) exactly on
    # every labeled graph with 7 vertices.
    for lo in range(0, 1 << 21, 1 << 16):
        masks = np.arange(lo, lo + (1 << 16), dtype=np.int64)
        ctx = bt.BatchContext(7, masks)
        spectral_t = np.rint((ctx.eigenvalues**3).sum(axis=1) / 6.0).astype(np.int64)
        assert np.array_equal(spectral_t, ctx.t)


def test_diamond_free_edge_identity_vectorized():
    masks = np.arange(1 << 10, dtype=np.int64)
    bctx = bt.BatchContext(5, masks, walk_rs=())
    df = bctx.diamond_free
    # 3 * sum_e 2(1 - 1/c(e)) = 3m + 3t exactly on diamond-free graphs.
    lhs = 3 * bctx.ce2_count + 4 * bctx.ce3_count
    rhs = 3 * (bctx.m + bctx.t)
    assert np.array_equal(lhs[df], rhs[df])
    assert df.sum() > 100

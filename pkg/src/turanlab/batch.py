"""Vectorized per-chunk evaluation for the labeled-graph enumeration scans.

A chunk of graphs on n <= 7 vertices is a vector of edge masks (bit k of a
mask is the k-th pair in lexicographic order).  Everything the catalogue
needs is computed with batched numpy kernels:

 * spectra via stacked ``eigvalsh`` calls,
 * clique quantities via the subset table: a vertex subset S is a clique of
   mask M iff required_edges(S) & ~M == 0, and there are at most 2^7 - 1
   subsets, so one boolean (chunk x subsets) matrix answers omega, c(v),
   c(e), t and diamond-freeness at once,
 * walk counts via repeated integer matmuls,
 * connectivity via boolean matrix squaring.

The resulting ``BatchContext`` exposes the same field names as the scalar
``GraphContext``, so catalogue formulas evaluate unchanged on whole chunks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import lex_pairs
from .spectra import DEFAULT_SIGN_RTOL


@dataclass(frozen=True)
class SubsetTables:
    n: int
    pairs: tuple[tuple[int, int], ...]
    pair_u: np.ndarray
    pair_v: np.ndarray
    sub_req: np.ndarray      # required edge mask per nonempty vertex subset
    sub_pc: np.ndarray       # subset cardinality
    vert_idx: tuple[np.ndarray, ...]   # subsets containing v
    pair_idx: tuple[np.ndarray, ...]   # subsets containing both endpoints of pair k
    tri_pos: np.ndarray                # subsets of size 3
    tri_by_pair: tuple[np.ndarray, ...]  # size-3 subsets through pair k


@lru_cache(maxsize=None)
def subset_tables(n: int) -> SubsetTables:
    pairs = tuple(lex_pairs(n))
    bit_of_pair = {p: k for k, p in enumerate(pairs)}
    subs = list(range(1, 1 << n))
    req = np.zeros(len(subs), dtype=np.int64)
    pc = np.zeros(len(subs), dtype=np.int64)
    members: list[list[int]] = []
    for i, s in enumerate(subs):
        mem = [v for v in range(n) if s >> v & 1]
        members.append(mem)
        pc[i] = len(mem)
        mask = 0
        for a in range(len(mem)):
            for b in range(a + 1, len(mem)):
                mask |= 1 << bit_of_pair[(mem[a], mem[b])]
        req[i] = mask
    vert_idx = tuple(
        np.array([i for i, mem in enumerate(members) if v in mem], dtype=np.int64)
        for v in range(n)
    )
    pair_idx = tuple(
        np.array([i for i, mem in enumerate(members) if u in mem and v in mem], dtype=np.int64)
        for u, v in pairs
    )
    tri_pos = np.flatnonzero(pc == 3)
    tri_by_pair = tuple(
        np.array(
            [i for i in tri_pos if u in members[i] and v in members[i]],
            dtype=np.int64,
        )
        for u, v in pairs
    )
    return SubsetTables(
        n=n,
        pairs=pairs,
        pair_u=np.array([p[0] for p in pairs], dtype=np.int64),
        pair_v=np.array([p[1] for p in pairs], dtype=np.int64),
        sub_req=req,
        sub_pc=pc,
        vert_idx=vert_idx,
        pair_idx=pair_idx,
        tri_pos=tri_pos,
        tri_by_pair=tri_by_pair,
    )


class BatchContext:
    """Aligned arrays of per-graph quantities for one chunk of edge masks."""

    def __init__(self, n: int, masks: np.ndarray, walk_rs: tuple[int, ...] = (),
                 sign_rtol: float = DEFAULT_SIGN_RTOL):
        tab = subset_tables(n)
        masks = np.asarray(masks, dtype=np.int64)
        nbits = len(tab.pairs)
        B = len(masks)
        self.masks = masks
        self.size = B
        self.exact_cliques = True

        edge_present = (masks[:, None] >> np.arange(nbits, dtype=np.int64)[None, :]) & 1 \
            if nbits else np.zeros((B, 0), dtype=np.int64)
        edge_bool = edge_present.astype(bool)

        a_int = np.zeros((B, n, n), dtype=np.int64)
        if nbits:
            a_int[:, tab.pair_u, tab.pair_v] = edge_present
            a_int[:, tab.pair_v, tab.pair_u] = edge_present
        degrees = a_int.sum(axis=2)

        self.n = n
        self.m = edge_present.sum(axis=1)
        self.complete = self.m == nbits
        self.regular = degrees.max(axis=1) == degrees.min(axis=1)

        # Connectivity: boolean reachability by repeated squaring of A + I.
        reach = (a_int + np.eye(n, dtype=np.int64)[None]) > 0
        for _ in range(3):  # (A+I)^8 covers paths up to length 7
            reach = np.matmul(reach.astype(np.uint8), reach.astype(np.uint8)) > 0
        self.connected = reach[:, 0, :].all(axis=1)

        eigs = np.linalg.eigvalsh(a_int.astype(np.float64))
        desc = eigs[:, ::-1]
        self.eigenvalues = desc
        self.lam1 = desc[:, 0].copy()
        self.lam2 = desc[:, 1].copy() if n >= 2 else np.zeros(B)
        thr = sign_rtol * np.maximum(1.0, self.lam1)[:, None]
        sq = desc * desc
        self.s_plus = np.where(desc > thr, sq, 0.0).sum(axis=1)
        self.s_minus = np.where(desc < -thr, sq, 0.0).sum(axis=1)
        self.n_plus = (desc > thr).sum(axis=1)
        self.n_minus = (desc < -thr).sum(axis=1)

        is_clique = (masks[:, None] & tab.sub_req[None, :]) == tab.sub_req[None, :]
        pc_masked = np.where(is_clique, tab.sub_pc[None, :], 0)
        self.omega = pc_masked.max(axis=1)
        c_v = np.empty((B, n), dtype=np.int64)
        for v in range(n):
            c_v[:, v] = pc_masked[:, tab.vert_idx[v]].max(axis=1)
        self.c_v = c_v
        self.min_cv = c_v.min(axis=1)
        c_e = np.zeros((B, nbits), dtype=np.int64)
        for k in range(nbits):
            c_e[:, k] = pc_masked[:, tab.pair_idx[k]].max(axis=1)
        self.c_e = c_e
        self.t = is_clique[:, tab.tri_pos].sum(axis=1) if len(tab.tri_pos) else np.zeros(B, dtype=np.int64)
        if nbits:
            tri_per_edge = np.zeros((B, nbits), dtype=np.int64)
            for k in range(nbits):
                if len(tab.tri_by_pair[k]):
                    tri_per_edge[:, k] = is_clique[:, tab.tri_by_pair[k]].sum(axis=1)
            self.diamond_free = ((tri_per_edge <= 1) | ~edge_bool).all(axis=1)
        else:
            self.diamond_free = np.ones(B, dtype=bool)

        cv_f = c_v.astype(np.float64)
        self._cv_wilf_weights = 1.0 - 1.0 / cv_f
        self._cv_sqrt_weights = np.sqrt(self._cv_wilf_weights)
        self.sum_cv_wilf = self._cv_wilf_weights.sum(axis=1)
        self.sum_cv_half = (1.0 - 1.0 / (2.0 * cv_f)).sum(axis=1)
        self.sum_cv_reg = np.where(
            cv_f >= 2.0, 1.0 - 1.0 / np.maximum(2.0 * cv_f - 2.0, 1.0), 0.0
        ).sum(axis=1)
        if nbits:
            ce_f = np.maximum(c_e, 1).astype(np.float64)
            self.sum_ce_local = np.where(edge_bool, 2.0 * (1.0 - 1.0 / ce_f), 0.0).sum(axis=1)
            self.ce3_count = ((c_e == 3) & edge_bool).sum(axis=1)
            self.ce2_count = ((c_e == 2) & edge_bool).sum(axis=1)
        else:
            self.sum_ce_local = np.zeros(B)
            self.ce3_count = np.zeros(B, dtype=np.int64)
            self.ce2_count = np.zeros(B, dtype=np.int64)
        self.w_lam1 = self.lam1
        self.sum_ce_local_w = self.sum_ce_local

        self._walks: dict[int, np.ndarray] = {}
        if walk_rs:
            r_needed = max(max(walk_rs), 2 * max(walk_rs))
            w = np.ones((B, n), dtype=np.int64)
            self._walks[1] = w
            for r in range(2, r_needed + 1):
                w = np.matmul(a_int, w[:, :, None])[:, :, 0]
                self._walks[r] = w

    def walk_total(self, r: int):
        return self._walks[r].sum(axis=1).astype(np.float64)

    def walk_conj_sum(self, r: int):
        return (self._walks[r] * self._cv_wilf_weights).sum(axis=1)

    def walk_sqrt_sum(self, r: int):
        return (self._walks[r] * self._cv_sqrt_weights).sum(axis=1)

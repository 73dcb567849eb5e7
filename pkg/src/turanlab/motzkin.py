"""Quadratic-form maximization over the probability simplex.

``quad_form`` evaluates F(x) = x^T W x for a weighted adjacency W;
``maximize_simplex`` climbs it with replicator dynamics
x <- x * (Wx) / (x^T W x), whose multiplicative updates stay on the simplex
and never decrease the objective.  For the unweighted adjacency the maximum
is 1 - 1/omega; the localized weightings below are bounded by 1, with the
bound attained on uniform weight over a maximum clique.

Restarts mix Dirichlet(1) interior points with indicator starts on maximal
cliques found by a bounded search, so the known optima are always reachable
without relying on convergence luck.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cliques
from .graph import Graph, rng_for

SCHEMES = ("classical", "avg_local", "geo_local", "custom")

MONOTONE_SLOP = 1e-12
CONVERGENCE_TOL = 1e-12


@dataclass(frozen=True)
class WeightScheme:
    """Edge weighting for the quadratic form."""

    id: str
    values: dict[tuple[int, int], float] | None = None  # only for "custom"

    def matrix(self, g: Graph) -> np.ndarray:
        if self.id not in SCHEMES:
            raise ValueError(f"unknown scheme {self.id!r}; one of {SCHEMES}")
        w = np.zeros((g.n, g.n))
        if self.id == "custom":
            vals = self.values or {}
            for (u, v), val in vals.items():
                if val < 0:
                    raise ValueError(f"negative weight on ({u}, {v})")
                if not g.has_edge(u, v):
                    raise ValueError(f"({u}, {v}) is not an edge")
                w[u, v] = w[v, u] = val
            return w
        if self.id == "classical":
            for u, v in g.edges:
                w[u, v] = w[v, u] = 1.0
            return w
        c_v = cliques.vertex_clique_numbers(g)
        for u, v in g.edges:
            # Edge endpoints always satisfy c >= 2.
            cu, cv = c_v[u], c_v[v]
            if self.id == "avg_local":
                val = 0.5 * (cu / (cu - 1) + cv / (cv - 1))
            else:  # geo_local
                val = np.sqrt(cu * cv / ((cu - 1) * (cv - 1)))
            w[u, v] = w[v, u] = val
        return w


def simplex_check(x: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < -tol) or abs(float(x.sum()) - 1.0) > 1e-9:
        raise ValueError("point is not on the standard simplex")
    return np.clip(x, 0.0, None)


def quad_form(g: Graph, scheme: WeightScheme | str, x) -> float:
    """F(x) = sum over edges of 2 w_uv x_u x_v for x on the simplex."""
    scheme = WeightScheme(scheme) if isinstance(scheme, str) else scheme
    x = simplex_check(x)
    w = scheme.matrix(g)
    return float(x @ w @ x)


def uniform_clique_point(g: Graph, witness: tuple[int, ...]) -> np.ndarray:
    """Uniform weight on a clique: the equality witness for the local schemes."""
    x = np.zeros(g.n)
    x[list(witness)] = 1.0 / len(witness)
    return x


def _maximal_cliques(g: Graph, cap: int = 64) -> list[tuple[int, ...]]:
    """First ``cap`` maximal cliques in deterministic pivot order."""
    out: list[tuple[int, ...]] = []
    adj = g.adj

    def bk(r: int, p: int, x: int):
        if len(out) >= cap:
            return
        if not p and not x:
            out.append(tuple(v for v in range(g.n) if r >> v & 1))
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best = -1
        rest = pivot_pool
        while rest:
            b = rest & -rest
            v = b.bit_length() - 1
            deg = (adj[v] & p).bit_count()
            if deg > best:
                best, pivot = deg, v
            rest ^= b
        cand = p & ~adj[pivot]
        while cand:
            b = cand & -cand
            v = b.bit_length() - 1
            bk(r | b, p & adj[v], x & adj[v])
            p &= ~b
            x |= b
            cand ^= b
            if len(out) >= cap:
                return

    bk(0, (1 << g.n) - 1, 0)
    return out


def replicator_ascent(w: np.ndarray, x0: np.ndarray, iters: int, tol: float = CONVERGENCE_TOL):
    """Iterate replicator dynamics from x0; returns (x, value, steps).

    The objective is asserted nondecreasing up to 1e-12 per step.
    """
    x = np.asarray(x0, dtype=np.float64).copy()
    wx = w @ x
    val = float(x @ wx)
    for step in range(iters):
        if val <= 0.0:
            # No edge mass in the support: every simplex point here scores 0.
            return x, 0.0, step
        x = x * wx / val
        s = float(x.sum())
        if s != 1.0:
            x /= s
        wx = w @ x
        new_val = float(x @ wx)
        if new_val < val - MONOTONE_SLOP:
            raise AssertionError(f"replicator objective decreased: {val} -> {new_val}")
        if abs(new_val - val) < tol:
            return x, new_val, step + 1
        val = new_val
    return x, val, iters


def _lex_smaller(a: np.ndarray, b: np.ndarray) -> bool:
    for xa, xb in zip(a, b):
        if xa != xb:
            return xa < xb
    return False


def maximize_simplex(
    g: Graph,
    scheme: WeightScheme | str = "classical",
    restarts: int = 32,
    iters: int = 10_000,
    tol: float = CONVERGENCE_TOL,
    seed: int = 0,
) -> tuple[np.ndarray, float]:
    """Best stationary value of F over the simplex from multiple starts.

    Starts: ``restarts`` Dirichlet(1) interior points plus one indicator
    start per maximal clique from a bounded enumeration.  Ties are broken
    toward the lexicographically smaller point.
    """
    if restarts < 1:
        raise ValueError("restarts >= 1 required")
    scheme = WeightScheme(scheme) if isinstance(scheme, str) else scheme
    w = scheme.matrix(g)
    active = np.flatnonzero(w.sum(axis=1) > 0)
    starts: list[np.ndarray] = []
    for k in range(restarts):
        rng = rng_for(seed, k)
        if len(active) == 0:
            starts.append(np.full(g.n, 1.0 / g.n))
            continue
        x = np.zeros(g.n)
        x[active] = rng.dirichlet(np.ones(len(active)))
        starts.append(x)
    for witness in _maximal_cliques(g):
        starts.append(uniform_clique_point(g, witness))

    best_x, best_val = starts[0], -np.inf
    for x0 in starts:
        x, val, _ = replicator_ascent(w, x0, iters, tol)
        if val > best_val + tol or (abs(val - best_val) <= tol and _lex_smaller(x, best_x)):
            best_x, best_val = x, val
    return best_x, max(best_val, 0.0)

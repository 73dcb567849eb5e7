"""Clique number, localized clique numbers c(v)/c(e), triangles, predicates.

The exact search is branch-and-bound over bitmask candidate sets with a
greedy-coloring upper bound and pivot-style pruning.  Localized quantities
restrict the universe to a single neighborhood (c(v) = 1 + omega(G[N(v)]),
c(uv) = 2 + omega(G[N(u) cap N(v)])), so per-call universes stay small even
on large graphs.

Above ``EXACT_ORDER_CAP`` vertices the exhaustive search becomes
impractical; there the localized quantities fall back to greedy clique
extension, which yields certified lower bounds.  Every inequality in the
catalogue is monotone increasing in the clique sizes on its bound side, so
lower bounds can only under-report the bound: a check that passes with them
is guaranteed, and a candidate violation is re-examined exactly before being
reported.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, is_connected

EXACT_ORDER_CAP = 64


@dataclass(frozen=True)
class CliqueProfile:
    """Clique-local summary of one graph."""

    omega: int
    c_v: tuple[int, ...]
    c_e: tuple[int, ...]  # aligned with Graph.edges order
    t: int
    tv: int
    exact: bool = True

    def __post_init__(self):
        assert all(1 <= c <= self.omega for c in self.c_v)
        assert max(self.c_v) == self.omega or not self.c_v


def _greedy_clique(adj: tuple[int, ...], universe: int) -> int:
    """Lowest-bit greedy extension; returns a clique mask within universe."""
    clique = 0
    cand = universe
    while cand:
        b = cand & -cand
        clique |= b
        cand &= adj[b.bit_length() - 1]
    return clique


def max_clique(g: Graph, universe: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Exact maximum clique size and one witness vertex set.

    ``universe`` restricts the search to an induced subgraph given as a
    vertex bitmask (used for the localized clique numbers).
    """
    adj = g.adj
    if universe is None:
        universe = (1 << g.n) - 1
    if universe.bit_count() > EXACT_ORDER_CAP:
        raise ValueError(f"exact clique search capped at {EXACT_ORDER_CAP} vertices")
    best_mask = _greedy_clique(adj, universe)
    best = [best_mask.bit_count(), best_mask]

    def expand(r_mask: int, r_size: int, cand: int):
        # Greedy coloring of cand: color classes are independent sets, so a
        # clique meets each class at most once and r_size + color bounds it.
        order: list[tuple[int, int]] = []
        q = cand
        color = 0
        while q:
            color += 1
            avail = q
            while avail:
                b = avail & -avail
                v = b.bit_length() - 1
                order.append((v, color))
                q ^= b
                avail = (avail ^ b) & ~adj[v]
        for v, c in reversed(order):
            if r_size + c <= best[0]:
                return
            bit = 1 << v
            if r_size + 1 > best[0]:
                best[0] = r_size + 1
                best[1] = r_mask | bit
            new_cand = cand & adj[v]
            if new_cand and r_size + 1 + new_cand.bit_count() > best[0]:
                expand(r_mask | bit, r_size + 1, new_cand)
            cand ^= bit

    if universe:
        expand(0, 0, universe)
    witness = tuple(v for v in range(g.n) if best[1] >> v & 1)
    return best[0], witness


def clique_number(g: Graph, universe: int | None = None, exact: bool = True) -> int:
    if exact:
        return max_clique(g, universe)[0]
    uni = (1 << g.n) - 1 if universe is None else universe
    return _greedy_clique(g.adj, uni).bit_count()


def vertex_clique_numbers(g: Graph, exact: bool | None = None) -> tuple[int, ...]:
    """c(v) = 1 + omega(G[N(v)]) for every vertex; isolated vertices get 1."""
    if exact is None:
        exact = g.n <= EXACT_ORDER_CAP
    return tuple(1 + clique_number(g, g.adj[v], exact) for v in range(g.n))


def edge_clique_numbers(g: Graph, exact: bool | None = None) -> tuple[int, ...]:
    """c(uv) = 2 + omega(G[N(u) cap N(v)]), aligned with g.edges."""
    if exact is None:
        exact = g.n <= EXACT_ORDER_CAP
    adj = g.adj
    return tuple(2 + clique_number(g, adj[u] & adj[v], exact) for u, v in g.edges)


def triangle_count(g: Graph) -> int:
    """Exact t(G) via neighbor-mask intersections (each triangle hits 3 edges)."""
    adj = g.adj
    total = sum((adj[u] & adj[v]).bit_count() for u, v in g.edges)
    assert total % 3 == 0
    return total // 3


def neighborhood_edge_counts(g: Graph) -> list[int]:
    """m(G[N(v)]) per vertex; their sum is 3 t(G)."""
    adj = g.adj
    out = []
    for v in range(g.n):
        nb = adj[v]
        acc = 0
        rest = nb
        while rest:
            b = rest & -rest
            acc += (adj[b.bit_length() - 1] & nb).bit_count()
            rest ^= b
        out.append(acc // 2)
    return out


def is_diamond_free(g: Graph) -> bool:
    """No edge whose endpoints share two common neighbors."""
    adj = g.adj
    return all((adj[u] & adj[v]).bit_count() <= 1 for u, v in g.edges)


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            rest = g.adj[v]
            while rest:
                b = rest & -rest
                u = b.bit_length() - 1
                rest ^= b
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def is_complete_multipartite(g: Graph) -> bool:
    """True iff the complement is a disjoint union of cliques."""
    full = (1 << g.n) - 1
    comp = tuple(full ^ (1 << v) ^ g.adj[v] for v in range(g.n))
    seen = 0
    for start in range(g.n):
        if seen >> start & 1:
            continue
        # Component of the complement containing start.
        visited = 1 << start
        frontier = visited
        while frontier:
            nxt = 0
            rest = frontier
            while rest:
                b = rest & -rest
                nxt |= comp[b.bit_length() - 1]
                rest ^= b
            frontier = nxt & ~visited
            visited |= frontier
        rest = visited
        while rest:
            b = rest & -rest
            if comp[b.bit_length() - 1] & visited != visited ^ b:
                return False
            rest ^= b
        seen |= visited
    return True


def predicates(g: Graph) -> dict[str, bool]:
    degs = g.degrees
    return {
        "triangle_free": triangle_count(g) == 0,
        "diamond_free": is_diamond_free(g),
        "regular": min(degs) == max(degs),
        "complete": g.m == g.n * (g.n - 1) // 2,
        "bipartite": is_bipartite(g),
        "complete_multipartite": is_complete_multipartite(g),
        "connected": is_connected(g),
    }


def clique_profile(g: Graph, exact: bool | None = None) -> CliqueProfile:
    if exact is None:
        exact = g.n <= EXACT_ORDER_CAP
    c_v = vertex_clique_numbers(g, exact)
    c_e = edge_clique_numbers(g, exact)
    omega = max(c_v)
    t = triangle_count(g)
    return CliqueProfile(
        omega=omega,
        c_v=c_v,
        c_e=c_e,
        t=t,
        tv=sum(1 for c in c_v if c >= 3),
        exact=exact,
    )

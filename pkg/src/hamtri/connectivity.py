"""Vertex connectivity, 4-separator enumeration and separating short cycles.

Connectivity queries run unit-capacity max-flow on the vertex-split
network with the classical pair schedule (one fixed vertex against its
non-neighbors, plus non-adjacent neighbor pairs).  Separator enumeration
has two routes: exhaustive 4-subset sweep within a configurable budget,
and candidate generation from separating 4-cycles with per-candidate
verification; the two are cross-checked in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .cycles import Cycle, enumerate_cycles
from .embedding import Graph, SignedEmbedding


class ConnectivityError(ValueError):
    """Operation precondition violated (disconnected input, budget, ...)."""


def _removal_components_ge2(g: Graph, removed: Iterable[int]) -> bool:
    """True when deleting the vertex set leaves >= 2 connected components."""
    rem = 0
    for v in removed:
        rem |= 1 << v
    rest = ((1 << g.n) - 1) & ~rem
    if rest == 0:
        return False
    start = (rest & -rest).bit_length() - 1
    seen = 1 << start
    stack = [start]
    while stack:
        v = stack.pop()
        new = g.adj_bits[v] & rest & ~seen
        while new:
            w = (new & -new).bit_length() - 1
            new &= new - 1
            seen |= 1 << w
            stack.append(w)
    return seen != rest


def is_separating_set(g: Graph, vertices: Iterable[int]) -> bool:
    return _removal_components_ge2(g, vertices)


class _SplitFlow:
    """Unit-capacity max-flow on the vertex-split digraph of g.

    Vertex v becomes v_in = 2v and v_out = 2v + 1 with a capacity-1 arc
    between them; each edge uv becomes u_out->v_in and v_out->u_in.  The
    number of internally disjoint s-t paths is the max flow from s_out to
    t_in.
    """

    def __init__(self, g: Graph):
        self.g = g
        n2 = 2 * g.n
        self.head: list[int] = []
        self.cap: list[int] = []
        self.nxt: list[int] = []
        self.first = [-1] * n2
        for v in range(g.n):
            self._arc(2 * v, 2 * v + 1, 1)
        for u, v in g.edges():
            self._arc(2 * u + 1, 2 * v, 1)
            self._arc(2 * v + 1, 2 * u, 1)
        self.base_cap = tuple(self.cap)

    def _arc(self, a: int, b: int, c: int):
        for x, y, cc in ((a, b, c), (b, a, 0)):
            self.head.append(y)
            self.cap.append(cc)
            self.nxt.append(self.first[x])
            self.first[x] = len(self.head) - 1

    def max_flow(self, s: int, t: int, limit: int) -> int:
        """Dinic from s_out to t_in, stopping once `limit` is reached."""
        self.cap = list(self.base_cap)
        src, snk = 2 * s + 1, 2 * t
        n2 = 2 * self.g.n
        flow = 0
        while flow < limit:
            level = [-1] * n2
            level[src] = 0
            queue = [src]
            for v in queue:
                e = self.first[v]
                while e != -1:
                    w = self.head[e]
                    if self.cap[e] > 0 and level[w] < 0:
                        level[w] = level[v] + 1
                        queue.append(w)
                    e = self.nxt[e]
            if level[snk] < 0:
                break
            it = list(self.first)

            def dfs(v: int) -> bool:
                if v == snk:
                    return True
                while it[v] != -1:
                    e = it[v]
                    w = self.head[e]
                    if self.cap[e] > 0 and level[w] == level[v] + 1 and dfs(w):
                        self.cap[e] -= 1
                        self.cap[e ^ 1] += 1
                        return True
                    it[v] = self.nxt[e]
                return False

            pushed = False
            while flow < limit and dfs(src):
                flow += 1
                pushed = True
            if not pushed:
                break
        return flow


def _pair_schedule(g: Graph) -> list[tuple[int, int]]:
    """Pairs whose flow minimum equals the connectivity.

    Fix v0 (least id of minimum degree).  If some minimum cut avoids v0,
    a non-neighbor of v0 across the cut witnesses it; if v0 lies in every
    minimum cut, two of its neighbors sit in different components and are
    non-adjacent.
    """
    v0 = min(range(g.n), key=lambda v: (g.degree(v), v))
    pairs = [(v0, t) for t in range(g.n) if t != v0 and not g.has_edge(v0, t)]
    nbrs = g.neighbors(v0)
    pairs.extend((u, w) for u, w in itertools.combinations(nbrs, 2) if not g.has_edge(u, w))
    return pairs


def vertex_connectivity(g: Graph) -> int:
    """Minimum vertex cut size, or n-1 for complete graphs."""
    if g.n < 2:
        raise ConnectivityError("connectivity needs n >= 2")
    if not g.is_connected():
        raise ConnectivityError("graph is disconnected")
    pairs = _pair_schedule(g)
    best = g.n - 1
    if not pairs:
        return best
    net = _SplitFlow(g)
    for s, t in pairs:
        best = min(best, net.max_flow(s, t, best))
        if best == 0:
            break
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    """True iff n > k and no vertex set of size < k disconnects g."""
    if g.n <= k:
        return False
    if k <= 0:
        return True
    if not g.is_connected():
        return False
    if k >= 2 and g.min_degree() < k:
        return False
    pairs = _pair_schedule(g)
    if not pairs:
        return True
    net = _SplitFlow(g)
    return all(net.max_flow(s, t, k) >= k for s, t in pairs)


@dataclass(frozen=True)
class SeparatorSet:
    """All 4-element separating vertex sets of a 4-connected graph.

    `separators` holds every separating 4-set (sorted tuples); `minimal`
    are those with no separating proper subset.  In a 4-connected graph
    the two collections coincide, but both are computed rather than
    assumed since the distinction matters for the census report.
    """

    separators: tuple[tuple[int, int, int, int], ...]
    minimal: tuple[tuple[int, int, int, int], ...]
    method: str

    @property
    def total(self) -> int:
        return len(self.separators)

    @property
    def minimal_total(self) -> int:
        return len(self.minimal)


def _is_minimal_separator(g: Graph, sep: tuple) -> bool:
    return not any(_removal_components_ge2(g, sub)
                   for r in range(1, len(sep))
                   for sub in itertools.combinations(sep, r))


def enumerate_4_separators(g: Graph, method: str = "auto", budget: int = 50) -> SeparatorSet:
    """Exact set of all 4-element separating vertex sets of a 4-connected g.

    method="brute" sweeps all C(n,4) subsets (requires n <= budget);
    method="cycles" verifies the vertex sets of separating 4-cycles, which
    is exhaustive for sphere triangulations (every separating 4-set of a
    4-connected planar triangulation spans a separating 4-cycle) but is
    not guaranteed complete on the projective plane; "auto" picks brute
    force within the budget and the cycle route above it.
    """
    if not is_k_connected(g, 4):
        raise ConnectivityError("4-separator census requires a 4-connected graph")
    if method == "auto":
        method = "brute" if g.n <= budget else "cycles"
    if method == "brute":
        if g.n > budget:
            raise ConnectivityError(
                f"brute-force separator enumeration budget exceeded (n={g.n} > {budget})")
        seps = tuple(quad for quad in itertools.combinations(range(g.n), 4)
                     if _removal_components_ge2(g, quad))
    elif method == "cycles":
        cand = set()
        for a in range(g.n):
            for b in range(a + 1, g.n):
                if g.has_edge(a, b):
                    continue
                common = sorted(g.adj_sets[a] & g.adj_sets[b])
                for x, y in itertools.combinations(common, 2):
                    cand.add(tuple(sorted((a, b, x, y))))
        seps = tuple(sorted(q for q in cand if _removal_components_ge2(g, q)))
    else:
        raise ValueError(f"unknown method {method!r}")
    minimal = tuple(s for s in seps if _is_minimal_separator(g, s))
    return SeparatorSet(separators=seps, minimal=minimal, method=method)


def enumerate_separating_cycles(emb: SignedEmbedding, k: int) -> list[Cycle]:
    """All k-cycles (k = 3 or 4) whose vertex removal disconnects the graph."""
    if k not in (3, 4):
        raise ValueError(f"separating cycle length must be 3 or 4, got {k}")
    g = emb.graph
    return [c for c in enumerate_cycles(g, k)
            if _removal_components_ge2(g, c.vertices)]


def separating_cycles_of_graph(g: Graph, k: int) -> list[Cycle]:
    """Graph-level variant used by the witness pipeline internals."""
    return [c for c in enumerate_cycles(g, k)
            if _removal_components_ge2(g, c.vertices)]

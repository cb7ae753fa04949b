"""Short cycles (lengths 3-6), saturation tests and the diamond-6-cycle.

An independent set S saturates a 4- or 5-cycle when it contains two of its
vertices, and a diamond-6-cycle when it contains three of its crucial
vertices.  V_C collects the vertices adjacent to at least three vertices
of a 4-cycle C; in a triangulation of Euler genus sigma it satisfies
|V_C| <= 8(sigma + 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence

from .embedding import Graph, SignedEmbedding


class CycleError(ValueError):
    """Sequence is not a cycle of the given graph."""


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Least-vertex-first form, then the lexicographically smaller direction."""
    k = len(seq)
    i = seq.index(min(seq))
    fwd = tuple(seq[(i + j) % k] for j in range(k))
    bwd = tuple(seq[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


@dataclass(frozen=True)
class Cycle:
    """A cycle as a canonical cyclic vertex sequence."""

    vertices: tuple[int, ...]

    @classmethod
    def from_sequence(cls, g: Graph, seq: Sequence[int]) -> "Cycle":
        k = len(seq)
        if k < 3:
            raise CycleError("cycle needs at least 3 vertices")
        if len(set(seq)) != k:
            raise CycleError(f"repeated vertex in {seq}")
        for i in range(k):
            if not g.has_edge(seq[i], seq[(i + 1) % k]):
                raise CycleError(f"{seq[i]}-{seq[(i + 1) % k]} is not an edge")
        return cls(canonical_cycle(seq))

    @property
    def length(self) -> int:
        return len(self.vertices)

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def edges(self):
        k = len(self.vertices)
        for i in range(k):
            u, w = self.vertices[i], self.vertices[(i + 1) % k]
            yield (u, w) if u < w else (w, u)


def enumerate_cycles(g: Graph, k: int) -> list[Cycle]:
    """All k-cycles of g (3 <= k <= 6), each once, in canonical order.

    Anchored backtracking: paths start at their least vertex, extend only
    through larger vertices, and close with the direction tie broken by
    second < last.
    """
    if not 3 <= k <= 6:
        raise ValueError(f"k must be in 3..6, got {k}")
    out = []
    adj = g.adj_sets
    path = [0] * k

    def extend(depth: int, allowed: frozenset):
        last = path[depth - 1]
        if depth == k - 1:
            for w in allowed & adj[last]:
                if path[0] in adj[w] and path[1] < w:
                    path[depth] = w
                    out.append(Cycle(canonical_cycle(path)))
            return
        for w in allowed & adj[last]:
            path[depth] = w
            extend(depth + 1, allowed - {w})

    for a in range(g.n):
        path[0] = a
        extend(1, frozenset(v for v in range(a + 1, g.n)))
    out.sort(key=lambda c: c.vertices)
    return out


def saturating_pairs(g: Graph, s: Iterable[int], k: int,
                     cycles: Optional[list[Cycle]] = None) -> list[tuple[tuple[int, int], Cycle]]:
    """Unordered pairs of the independent set s lying together on a k-cycle.

    Each pair carries one witness cycle (the canonically least one).  An
    empty result certifies that s saturates no k-cycle.  Precomputed cycle
    lists may be passed to avoid re-enumeration.
    """
    sset = frozenset(s)
    for u in sset:
        for w in g.adj_sets[u] & sset:
            raise CycleError(f"s is not independent: edge {min(u, w)}-{max(u, w)}")
    if cycles is None:
        cycles = enumerate_cycles(g, k)
    best: dict[tuple[int, int], Cycle] = {}
    for c in cycles:
        hit = sorted(sset & c.vertex_set())
        for pair in itertools.combinations(hit, 2):
            if pair not in best or c.vertices < best[pair].vertices:
                best[pair] = c
    return sorted(best.items())


def vertices_dominating_cycle(g: Graph, c: Cycle) -> frozenset:
    """V_C: vertices adjacent to at least three vertices of the 4-cycle c."""
    if c.length != 4:
        raise CycleError("V_C is defined for 4-cycles")
    cset = c.vertex_set()
    for i in range(4):
        if not g.has_edge(c.vertices[i], c.vertices[(i + 1) % 4]):
            raise CycleError(f"{c} is not a cycle of the graph")
    return frozenset(v for v in range(g.n) if len(g.adj_sets[v] & cset) >= 3)


# ---------------------------------------------------------------------------
# diamond-6-cycle
# ---------------------------------------------------------------------------

# Fixed pattern: hexagon 0..5 with three outer vertices 6, 7, 8, each
# adjacent to three consecutive hexagon vertices (6: 0,1,2; 7: 2,3,4;
# 8: 4,5,0).  This is a cyclic chain of three diamonds (two triangles glued
# along an edge) in which consecutive diamonds share a tip; the hexagon
# vertices are the six crucial ones.
_DIAMOND6_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
                   (6, 0), (6, 1), (6, 2),
                   (7, 2), (7, 3), (7, 4),
                   (8, 4), (8, 5), (8, 0))
_DIAMOND6_CRUCIAL = frozenset(range(6))


@dataclass(frozen=True)
class DiamondSixPattern:
    """The diamond-6-cycle pattern graph with its six crucial vertices."""

    pattern_graph: Graph
    crucial: frozenset

    def __post_init__(self):
        if len(self.crucial) != 6:
            raise ValueError("a diamond-6-cycle has exactly six crucial vertices")
        if not self.crucial <= frozenset(range(self.pattern_graph.n)):
            raise ValueError("crucial vertices out of range")
        if not self.pattern_graph.is_connected():
            raise ValueError("pattern must be connected")
        if not enumerate_cycles(self.pattern_graph, 6):
            raise ValueError("pattern must contain a 6-cycle")

    @classmethod
    def default(cls) -> "DiamondSixPattern":
        return cls(Graph.from_edges(9, _DIAMOND6_EDGES), _DIAMOND6_CRUCIAL)


@dataclass(frozen=True)
class DiamondMatch:
    """One occurrence of the pattern in a host graph."""

    image: tuple[tuple[int, int], ...]   # (pattern vertex, host vertex) pairs
    crucial_image: frozenset
    vertices: frozenset

    def mapping(self) -> dict[int, int]:
        return dict(self.image)


def find_diamond6(g: Graph, pattern: Optional[DiamondSixPattern] = None,
                  induced: bool = False) -> list[DiamondMatch]:
    """All embeddings of the diamond-6-cycle pattern into g.

    Matching is subgraph embedding by default (extra host edges allowed);
    pass induced=True for the stricter variant.  Matches are deduplicated
    by (vertex set, crucial vertex set), i.e. up to pattern automorphisms
    that fix the crucial structure.
    """
    if pattern is None:
        pattern = DiamondSixPattern.default()
    p = pattern.pattern_graph
    if g.n < p.n:
        return []
    # visit pattern vertices so each one (after the first) touches the
    # already-mapped part; break ties toward high pattern degree
    order = [max(range(p.n), key=lambda v: p.degree(v))]
    placed = {order[0]}
    while len(order) < p.n:
        nxt = max((v for v in range(p.n) if v not in placed),
                  key=lambda v: (len(p.adj_sets[v] & placed), p.degree(v), -v))
        order.append(nxt)
        placed.add(nxt)

    found: dict[tuple[frozenset, frozenset], DiamondMatch] = {}
    image: dict[int, int] = {}
    used: set[int] = set()

    def rec(depth: int):
        if depth == p.n:
            key = (frozenset(image.values()),
                   frozenset(image[c] for c in pattern.crucial))
            if key not in found:
                pairs = tuple(sorted(image.items()))
                found[key] = DiamondMatch(pairs, key[1], key[0])
            return
        pv = order[depth]
        anchors = [q for q in p.adj_sets[pv] if q in image]
        if anchors:
            cands = set(g.adj_sets[image[anchors[0]]])
            for q in anchors[1:]:
                cands &= g.adj_sets[image[q]]
            cands -= used
        else:
            cands = set(range(g.n)) - used
        nonanchors = [q for q in range(p.n) if q in image and q not in anchors] if induced else ()
        for hv in sorted(cands):
            if g.degree(hv) < p.degree(pv):
                continue
            if induced and any(g.has_edge(hv, image[q]) for q in nonanchors):
                continue
            image[pv] = hv
            used.add(hv)
            rec(depth + 1)
            del image[pv]
            used.discard(hv)

    rec(0)
    return sorted(found.values(), key=lambda mt: (sorted(mt.vertices), sorted(mt.crucial_image)))


def saturates_diamond6(s: Iterable[int], matches: Iterable[DiamondMatch]
                       ) -> tuple[bool, Optional[DiamondMatch]]:
    """Whether s contains >=3 crucial vertices of some match, with witness."""
    sset = frozenset(s)
    for mt in matches:
        if len(mt.crucial_image & sset) >= 3:
            return True, mt
    return False, None


# ---------------------------------------------------------------------------
# sidedness on the embedded surface
# ---------------------------------------------------------------------------

Sidedness = Literal["one_sided", "two_sided"]


def cycle_sidedness(emb: SignedEmbedding, c: Cycle) -> Sidedness:
    """Classify a cycle of the embedding as one- or two-sided.

    The product of edge signs along a closed walk is invariant under
    vertex flips (a cycle meets each flipped vertex in 0 or 2 edges), so
    the raw product decides: -1 means the cycle's neighborhood is a Moebius
    band.  On the projective plane two-sided, contractible and
    surface-separating coincide; every cycle of a sphere embedding is
    two-sided.
    """
    prod = 1
    for u, v in c.edges():
        if not emb.graph.has_edge(u, v):
            raise CycleError(f"{c} is not a cycle of the embedding")
        prod *= emb.edge_sign(u, v)
    return "two_sided" if prod == 1 else "one_sided"

"""Instance generators: double wheels, K6 on the projective plane, and
seeded random 4-connected sphere triangulations via diagonal-flip walks.

The double wheel (join of a cycle C_{n-2} with two non-adjacent apexes) is
the extremal family for the hamiltonian-cycle count 2(n-2)(n-4) and
maximizes the number of 4-separators.  Flip walks explore the space of
sphere triangulations on a fixed vertex count; the hill climber drives the
separating-4-cycle count down to produce low-separator instances.
"""

from __future__ import annotations

import math
import random
from typing import Optional

from .connectivity import separating_cycles_of_graph
from .embedding import Graph, SignedEmbedding

# Icosahedron rotation system (planar, from the geometric solid); a handy
# 5-connected member of the test corpus.
_ICOSAHEDRON_ROT = (
    (6, 2, 1, 7, 5), (3, 7, 0, 2, 8), (8, 1, 0, 6, 4), (11, 7, 1, 8, 9),
    (9, 8, 2, 6, 10), (10, 6, 0, 7, 11), (4, 2, 0, 5, 10), (11, 5, 0, 1, 3),
    (9, 3, 1, 2, 4), (10, 11, 3, 8, 4), (11, 9, 4, 6, 5), (5, 7, 3, 9, 10),
)

# K6 embedded in the projective plane (10 triangular faces, Euler genus 1).
# Derived once from the icosahedron by identifying antipodal vertex pairs:
# the rotation at a class is the rotation at its representative, and an
# edge gets sign -1 when the lift from the representative ends at the
# antipode of the other representative.
_K6_ROT = (
    (3, 2, 1, 4, 5), (3, 4, 0, 2, 5), (5, 1, 0, 3, 4),
    (2, 4, 1, 5, 0), (0, 5, 2, 3, 1), (1, 3, 0, 4, 2),
)
_K6_SIGN = {
    (0, 1): 1, (0, 2): 1, (0, 3): -1, (0, 4): -1, (0, 5): 1,
    (1, 2): 1, (1, 3): 1, (1, 4): -1, (1, 5): -1,
    (2, 3): -1, (2, 4): 1, (2, 5): -1,
    (3, 4): -1, (3, 5): -1, (4, 5): -1,
}


class GenerationError(RuntimeError):
    """Generator could not satisfy its contract (budget or bad arguments)."""


def _all_plus(rotation) -> dict:
    sign = {}
    for v, row in enumerate(rotation):
        for w in row:
            if v < w:
                sign[(v, w)] = 1
    return sign


def double_wheel(n: int) -> SignedEmbedding:
    """Join of the rim cycle v_0..v_{n-3} with two non-adjacent apexes.

    Rim vertices are 0..n-3, the apexes are n-2 (inside) and n-1 (outside).
    """
    if n < 6:
        raise GenerationError(f"double wheel needs n >= 6, got {n}")
    k = n - 2
    x, y = k, k + 1
    rotation = [[(i - 1) % k, x, (i + 1) % k, y] for i in range(k)]
    rotation.append(list(range(k - 1, -1, -1)))  # x
    rotation.append(list(range(k)))              # y
    graph = Graph(rotation, require_connected=True)
    return SignedEmbedding(graph, rotation, _all_plus(rotation))


def octahedron() -> SignedEmbedding:
    """K_{2,2,2}; the double wheel on 6 vertices."""
    return double_wheel(6)


def icosahedron() -> SignedEmbedding:
    rotation = [list(r) for r in _ICOSAHEDRON_ROT]
    graph = Graph(rotation, require_connected=True)
    return SignedEmbedding(graph, rotation, _all_plus(rotation))


def k6_projective() -> SignedEmbedding:
    """The 5-connected triangulation K6 of the projective plane."""
    rotation = [list(r) for r in _K6_ROT]
    graph = Graph(rotation, require_connected=True)
    return SignedEmbedding(graph, rotation, dict(_K6_SIGN))


# ---------------------------------------------------------------------------
# diagonal flips
# ---------------------------------------------------------------------------

def _flip_apexes(rot: list[list[int]], u: int, v: int) -> tuple[int, int]:
    """Apexes (a, b) of the two triangles at edge uv: faces (u,v,a), (v,u,b)."""
    ru = rot[u]
    iu = ru.index(v)
    return ru[(iu - 1) % len(ru)], ru[(iu + 1) % len(ru)]


def _flip_inplace(rot: list[list[int]], u: int, v: int) -> Optional[tuple[int, int]]:
    """Replace edge uv by the opposite diagonal; returns it, or None if the
    diagonal already exists (the flip would create a parallel edge)."""
    a, b = _flip_apexes(rot, u, v)
    if a == b or a in rot[b]:
        return None
    rot[u].remove(v)
    rot[v].remove(u)
    ja = rot[a].index(v)
    rot[a].insert(ja + 1, b)
    jb = rot[b].index(u)
    rot[b].insert(jb + 1, a)
    return (a, b) if a < b else (b, a)


def diagonal_flip(emb: SignedEmbedding, u: int, v: int) -> SignedEmbedding:
    """Flip edge uv of a sphere triangulation, keeping the graph simple."""
    if not emb.all_positive():
        raise GenerationError("diagonal flips are implemented for sphere embeddings only")
    if not emb.graph.has_edge(u, v):
        raise GenerationError(f"{u}-{v} is not an edge")
    rot = [list(r) for r in emb.rotation]
    if _flip_inplace(rot, u, v) is None:
        raise GenerationError(f"flipping {u}-{v} would create a parallel edge")
    graph = Graph(rot, require_connected=True)
    return SignedEmbedding(graph, rot, _all_plus(rot))


def _edges_of_rot(rot) -> list[tuple[int, int]]:
    return sorted((u, w) for u in range(len(rot)) for w in rot[u] if u < w)


def _is_4_connected_rot(rot) -> bool:
    """Fast 4-connectivity test on raw rotation lists (bitmask triples)."""
    n = len(rot)
    if n <= 5:
        # n=5 needs K5; larger cases go through the sweep
        return n == 5 and all(len(r) == 4 for r in rot)
    if min(len(r) for r in rot) < 4:
        return False
    bits = [0] * n
    for v in range(n):
        for w in rot[v]:
            bits[v] |= 1 << w
    full = (1 << n) - 1
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                rest = full & ~(1 << a | 1 << b | 1 << c)
                start = (rest & -rest).bit_length() - 1
                seen = 1 << start
                stack = [start]
                while stack:
                    x = stack.pop()
                    new = bits[x] & rest & ~seen
                    while new:
                        w = (new & -new).bit_length() - 1
                        new &= new - 1
                        seen |= 1 << w
                        stack.append(w)
                if seen != rest:
                    return False
    return True


def _random_move_4c(rng: random.Random, rot: list[list[int]],
                    tries: int = 60, repair_tries: int = 60) -> bool:
    """One random flip move that keeps the triangulation 4-connected.

    A uniformly drawn flip almost always drops an endpoint to degree 3, so
    a rejected flip is given a chance to be repaired by one further random
    flip before both are rolled back.  Every accepted state is 4-connected,
    which keeps walks from double wheels (where no single flip preserves
    4-connectivity) moving.
    """
    for _ in range(tries):
        u, v = rng.choice(_edges_of_rot(rot))
        first = _flip_inplace(rot, u, v)
        if first is None:
            continue
        if _is_4_connected_rot(rot):
            return True
        for _ in range(repair_tries):
            u2, v2 = rng.choice(_edges_of_rot(rot))
            second = _flip_inplace(rot, u2, v2)
            if second is None:
                continue
            if _is_4_connected_rot(rot):
                return True
            _flip_inplace(rot, *second)
        _flip_inplace(rot, *first)
    return False


def random_triangulation_4c(n: int, seed: int = 0, flips: Optional[int] = None) -> SignedEmbedding:
    """Seeded random 4-connected sphere triangulation on n vertices.

    Starts from the double wheel and performs `flips` random
    connectivity-preserving flip moves (default 3n).  Deterministic per
    (n, seed, flips); flips=0 returns the double wheel itself.
    """
    if n < 6:
        raise GenerationError(f"need n >= 6, got {n}")
    if flips is None:
        flips = 3 * n
    emb = double_wheel(n)
    if flips == 0:
        return emb
    rng = random.Random(seed)
    rot = [list(r) for r in emb.rotation]
    for step in range(flips):
        if not _random_move_4c(rng, rot):
            raise GenerationError(
                f"random walk stalled after {step} of {flips} moves (n={n}, seed={seed})")
    graph = Graph(rot, require_connected=True)
    return SignedEmbedding(graph, rot, _all_plus(rot))


def low_separator_family(n: int, seed: int = 0, target: float = 0,
                         max_steps: int = 300) -> SignedEmbedding:
    """Hill-climb flip moves to minimize the separating-4-cycle count.

    Starts from random_triangulation_4c(n, seed) and applies the steepest
    single flip that keeps the graph 4-connected until the count reaches
    `target` or no flip improves it (a local minimum; best effort).
    target=math.inf returns the starting sample unchanged.
    """
    if n < 12:
        raise GenerationError(f"low-separator family needs n >= 12, got {n}")
    emb = random_triangulation_4c(n, seed)
    rot = [list(r) for r in emb.rotation]

    def objective(r) -> int:
        return len(separating_cycles_of_graph(Graph(r), 4))

    current = objective(rot)
    for _ in range(max_steps):
        if current <= target:
            break
        best: Optional[tuple[int, tuple[int, int]]] = None
        for u, v in _edges_of_rot(rot):
            diag = _flip_inplace(rot, u, v)
            if diag is None:
                continue
            if _is_4_connected_rot(rot):
                score = objective(rot)
                if best is None or score < best[0]:
                    best = (score, (u, v))
            _flip_inplace(rot, *diag)
        if best is None or best[0] >= current:
            break
        u, v = best[1]
        _flip_inplace(rot, u, v)
        current = best[0]
    graph = Graph(rot, require_connected=True)
    return SignedEmbedding(graph, rot, _all_plus(rot))

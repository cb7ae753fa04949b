"""Exact hamiltonian-cycle counting by two independent algorithms.

Counts are undirected: each cycle is one edge set, with orientation and
starting point quotiented out.  The anchored backtracker and the
subset dynamic program are written against the same contract and
cross-validate each other in the test suite.  All arithmetic is exact;
results beyond the 64-bit range raise instead of wrapping.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .embedding import Graph

INT64_MAX = 2**63 - 1
# float64 shadow values above this bound cannot certify an exact int64 result
_F64_SAFE = float(2**60)


class CountOverflowError(RuntimeError):
    """Exact count (or a DP intermediate) left the 64-bit range."""


@dataclass(frozen=True)
class HamCount:
    """An exact undirected hamiltonian cycle count with provenance."""

    value: int
    method: str
    elapsed: float


def _check_64(value: int, method: str) -> None:
    if value > INT64_MAX:
        raise CountOverflowError(f"{method} count {value} exceeds the 64-bit range")


def count_hc_backtrack(g: Graph, prune_every: int = 4) -> HamCount:
    """Count hamiltonian cycles by anchored backtracking.

    The least vertex is the root; direction symmetry is broken by
    requiring the second vertex id below the last.  Every `prune_every`
    levels the search checks that the root and all unvisited vertices are
    still mutually reachable through unvisited territory, and vertices
    left with fewer than two usable incident edges cut the branch.
    """
    t0 = time.perf_counter()
    value = _backtrack(g, prune_every=prune_every, find_one=False)
    _check_64(value, "backtrack")
    return HamCount(value=value, method="backtrack", elapsed=time.perf_counter() - t0)


class HamiltonicityResult(NamedTuple):
    is_hamiltonian: bool
    cycle: Optional[tuple[int, ...]]


def is_hamiltonian(g: Graph) -> HamiltonicityResult:
    """First hamiltonian cycle found by the backtracker, or false after exhaustion."""
    if g.n < 3:
        return HamiltonicityResult(False, None)
    witness = _backtrack(g, prune_every=4, find_one=True)
    if witness is None:
        return HamiltonicityResult(False, None)
    return HamiltonicityResult(True, tuple(witness))


class _Found(Exception):
    pass


def _backtrack(g: Graph, prune_every: int, find_one: bool):
    n = g.n
    if n < 3:
        return None if find_one else 0
    bits = g.adj_bits
    full = (1 << n) - 1
    count = 0
    path = [0]

    def flood_ok(cur: int, visited: int) -> bool:
        allowed = (full & ~visited) | 1  # unvisited plus the root
        reach = 1 << cur
        frontier = reach
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= bits[v]
            nxt &= allowed & ~reach
            reach |= nxt
            frontier = nxt
        return (allowed & ~reach) == 0

    def degrees_ok(cur: int, visited: int) -> bool:
        open_set = (full & ~visited) | (1 << cur) | 1
        un = full & ~visited
        while un:
            v = (un & -un).bit_length() - 1
            un &= un - 1
            avail = bits[v] & open_set
            if avail == 0 or avail & (avail - 1) == 0:  # fewer than 2 usable edges
                return False
        return True

    def rec(cur: int, visited: int, depth: int, first: int):
        nonlocal count
        if visited == full:
            if bits[cur] & 1 and cur > first:
                if find_one:
                    raise _Found
                count += 1
            return
        if depth % prune_every == 0 and not (flood_ok(cur, visited) and degrees_ok(cur, visited)):
            return
        avail = bits[cur] & ~visited
        while avail:
            w = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            path.append(w)
            rec(w, visited | (1 << w), depth + 1, first)
            path.pop()

    try:
        for u in g.neighbors(0):
            path.append(u)
            rec(u, 1 | (1 << u), 2, u)
            path.pop()
    except _Found:
        return list(path)
    return None if find_one else count


def _dp_layers(g: Graph, dtype):
    """Held-Karp style layered DP counting rooted hamiltonian paths.

    Masks range over vertices 1..n-1; dp[mask, v] counts paths from vertex
    0 that visit exactly {0} | mask and end at v.  Layers are indexed by
    sorted mask arrays so only two popcount layers live at a time.
    """
    n = g.n
    bits = g.adj_bits
    masks = np.array([np.int64(1) << (u - 1) for u in range(1, n)], dtype=np.int64)
    masks.sort()
    dp = np.zeros((len(masks), n - 1), dtype=dtype)
    for u in g.neighbors(0):
        idx = int(np.searchsorted(masks, np.int64(1) << (u - 1)))
        dp[idx, u - 1] = 1
    for size in range(2, n):
        new_masks = np.array(
            [sum(1 << (v - 1) for v in comb)
             for comb in itertools.combinations(range(1, n), size)], dtype=np.int64)
        new_masks.sort()
        new_dp = np.zeros((len(new_masks), n - 1), dtype=dtype)
        for v in range(1, n):
            vb = np.int64(1) << (v - 1)
            sel = (new_masks & vb) != 0
            mv = new_masks[sel]
            prev = mv ^ vb
            pidx = np.searchsorted(masks, prev)
            acc = np.zeros(len(mv), dtype=dtype)
            for u in range(1, n):
                if u != v and (bits[v] >> u) & 1:
                    has_u = ((prev >> (u - 1)) & 1) == 1
                    acc[has_u] += dp[pidx[has_u], u - 1]
            new_dp[sel, v - 1] = acc
        masks, dp = new_masks, new_dp
        if dtype == np.float64 and dp.size and float(dp.max()) > _F64_SAFE:
            raise CountOverflowError("subset DP intermediate exceeds the 64-bit range")
    total = 0
    for v in g.neighbors(0):
        total += dp[0, v - 1]
    return total


def count_hc_dp(g: Graph, limit: int = 24) -> HamCount:
    """Count hamiltonian cycles by the subset dynamic program.

    Independent of the backtracker; restricted to 3 <= n <= limit by
    memory.  A float64 shadow run bounds all intermediates before the
    exact int64 pass, so overflow is reported rather than wrapped.
    """
    if not 3 <= g.n <= limit:
        raise ValueError(f"subset DP handles 3 <= n <= {limit}, got n={g.n}")
    t0 = time.perf_counter()
    _dp_layers(g, np.float64)  # raises on overflow risk
    directed = int(_dp_layers(g, np.int64))
    assert directed % 2 == 0
    value = directed // 2
    _check_64(value, "subset_dp")
    return HamCount(value=value, method="subset_dp", elapsed=time.perf_counter() - t0)


def count_hc_avoiding(g: Graph, avoid: Iterable[tuple[int, int]],
                      method: str = "backtrack") -> HamCount:
    """Hamiltonian cycles of g that use no edge of `avoid` (= count on g - avoid)."""
    deleted = g.delete_edges(avoid)  # validates avoid as a subset of E(g)
    if method == "backtrack":
        return count_hc_backtrack(deleted)
    if method == "subset_dp":
        return count_hc_dp(deleted)
    raise ValueError(f"unknown method {method!r}")

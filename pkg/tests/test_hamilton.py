"""Exact hamiltonian cycle counting: backtracker vs subset DP."""

from __future__ import annotations

import itertools
import random

import pytest

from hamtri import generators
from hamtri.embedding import Graph
from hamtri.hamilton import (CountOverflowError, _check_64, count_hc_avoiding,
                             count_hc_backtrack, count_hc_dp, is_hamiltonian)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def test_octahedron_count(octahedron):
    # inclusion-exclusion over K6 minus a perfect matching: 60 - 3*24 + 3*12 - 8
    assert count_hc_backtrack(octahedron.graph).value == 16
    assert count_hc_dp(octahedron.graph).value == 16


def test_complete_and_cycle_counts():
    assert count_hc_backtrack(complete_graph(6)).value == 60  # (6-1)!/2
    assert count_hc_dp(complete_graph(6)).value == 60
    assert count_hc_dp(cycle_graph(5)).value == 1
    assert count_hc_backtrack(cycle_graph(5)).value == 1


def test_double_wheel_law_small():
    for n in range(6, 10):
        g = generators.double_wheel(n).graph
        expect = 2 * (n - 2) * (n - 4)
        assert count_hc_backtrack(g).value == expect
        assert count_hc_dp(g).value == expect


def test_count_provenance(octahedron):
    res = count_hc_backtrack(octahedron.graph)
    assert res.method == "backtrack" and res.elapsed >= 0
    res = count_hc_dp(octahedron.graph)
    assert res.method == "subset_dp"


def test_count_avoiding(octahedron):
    g = octahedron.graph
    # every edge lies on 16*6/12 = 8 cycles by edge transitivity
    assert count_hc_avoiding(g, [(0, 1)]).value == 8
    assert count_hc_avoiding(g, [(0, 1)], method="subset_dp").value == 8
    assert count_hc_avoiding(g, []).value == 16
    with pytest.raises(Exception):
        count_hc_avoiding(g, [(0, 2)])  # not an edge


def test_count_avoiding_double_wheel_cross_check():
    g = generators.double_wheel(7).graph
    rim_apex = (0, 5)  # rim vertex 0, apex x
    bt = count_hc_avoiding(g, [rim_apex], method="backtrack").value
    dp = count_hc_avoiding(g, [rim_apex], method="subset_dp").value
    assert bt == dp


def test_count_avoiding_monotone(octahedron):
    g = octahedron.graph
    total = count_hc_backtrack(g).value
    for e in g.edges():
        assert count_hc_avoiding(g, [e]).value < total  # every edge is used
    # equality case: the chord of a 6-cycle lies on no hamiltonian cycle
    g6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)] + [(0, 3)])
    assert count_hc_backtrack(g6).value == 1
    assert count_hc_avoiding(g6, [(0, 3)]).value == 1


def test_is_hamiltonian_witness(corpus):
    for name, emb in corpus:
        res = is_hamiltonian(emb.graph)
        assert res.is_hamiltonian, name
        cyc = res.cycle
        assert sorted(cyc) == list(range(emb.n)), name
        for i in range(len(cyc)):
            assert emb.graph.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]), name


def test_is_hamiltonian_negative():
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert is_hamiltonian(star) == (False, None)
    assert count_hc_backtrack(star).value == 0
    assert count_hc_dp(star).value == 0


def test_counters_agree_on_seeded_instances():
    rng = random.Random(11)
    for i in range(20):
        n = rng.choice(range(7, 13))
        g = generators.random_triangulation_4c(n, seed=100 + i).graph
        assert count_hc_backtrack(g).value == count_hc_dp(g).value, (n, i)


def test_count_invariant_under_relabeling():
    g = generators.random_triangulation_4c(10, seed=2).graph
    base = count_hc_backtrack(g).value
    rng = random.Random(0)
    for _ in range(3):
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabeled(perm)
        assert count_hc_backtrack(h).value == base
        assert count_hc_dp(h).value == base


def test_dp_size_limit():
    g = generators.double_wheel(10).graph
    with pytest.raises(ValueError):
        count_hc_dp(g, limit=9)
    with pytest.raises(ValueError):
        count_hc_dp(Graph.from_edges(2, [(0, 1)]))


def test_overflow_is_reported():
    with pytest.raises(CountOverflowError):
        _check_64(2**63, "backtrack")
    _check_64(2**63 - 1, "backtrack")  # boundary passes


def test_prune_frequency_is_a_pure_tunable(octahedron):
    g = generators.double_wheel(9).graph
    for freq in (1, 2, 3, 7):
        assert count_hc_backtrack(g, prune_every=freq).value == 70

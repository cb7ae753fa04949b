"""Acceptance suite: one criterion per test, one printed verdict line each.

Run with `pytest tests/test_acceptance.py -s` to see the verdict lines.
"""

from __future__ import annotations

import math
import time

import pytest

from hamtri import generators
from hamtri.cli import lemma7_corpus
from hamtri.connectivity import (enumerate_4_separators,
                                 enumerate_separating_cycles)
from hamtri.cycles import enumerate_cycles, vertices_dominating_cycle
from hamtri.hamilton import count_hc_backtrack, count_hc_dp, is_hamiltonian
from hamtri.witness import run_pipeline

DOUBLE_WHEEL_COUNTS = {6: 16, 7: 30, 8: 48, 9: 70, 10: 96, 11: 126, 12: 160}


def _report(num: int, name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[criterion {num}] {name}: {status}{suffix}")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


@pytest.fixture(scope="module")
def random200():
    """200 seeded random 4-connected sphere triangulations with n <= 16."""
    sizes = list(range(6, 17))
    out = []
    for i in range(200):
        n = sizes[i % len(sizes)]
        out.append((n, i, generators.random_triangulation_4c(n, seed=1000 + i)))
    return out


def test_criterion_1_double_wheel_law():
    worst = 0.0
    ok = True
    for n, expect in DOUBLE_WHEEL_COUNTS.items():
        g = generators.double_wheel(n).graph
        t0 = time.perf_counter()
        bt = count_hc_backtrack(g).value
        dp = count_hc_dp(g).value
        elapsed = time.perf_counter() - t0
        worst = max(worst, elapsed)
        ok &= bt == dp == expect == 2 * (n - 2) * (n - 4) and elapsed < 60.0
    _report(1, "double-wheel law 2(n-2)(n-4), n=6..12", ok,
            f"worst instance {worst:.2f}s")


def test_criterion_2_counter_cross_validation(corpus, random200):
    checked = 0
    ok = True
    for name, emb in corpus:
        if emb.n <= 16:
            ok &= count_hc_backtrack(emb.graph).value == count_hc_dp(emb.graph).value
            checked += 1
    for n, i, emb in random200:
        ok &= count_hc_backtrack(emb.graph).value == count_hc_dp(emb.graph).value
        checked += 1
    _report(2, "backtrack == subset DP on fixtures + 200 random, n <= 16", ok,
            f"{checked} instances, exact match required")


def test_criterion_3_separator_censuses(corpus, octahedron, k6p):
    ok = enumerate_4_separators(octahedron.graph).total == 3
    for n in range(7, 13):
        total = enumerate_4_separators(generators.double_wheel(n).graph).total
        ok &= total == (n - 2) * (n - 5) // 2
    ok &= enumerate_4_separators(k6p.graph).total == 0
    agree = 0
    for name, emb in corpus:
        if emb.n <= 12:
            brute = enumerate_4_separators(emb.graph, method="brute")
            cyc = enumerate_4_separators(emb.graph, method="cycles")
            ok &= brute.separators == cyc.separators
            agree += 1
    _report(3, "separator censuses + brute/flow route agreement", ok,
            f"octahedron=3, double wheels (n-2)(n-5)/2, K6=0, {agree} cross-checks")


def test_criterion_4_lemma3_bound(corpus):
    violations = 0
    cycles_checked = 0
    for name, emb in corpus:
        sigma = emb.euler_genus()
        bound = 8 * (sigma + 1)
        for c in enumerate_cycles(emb.graph, 4):
            cycles_checked += 1
            if len(vertices_dominating_cycle(emb.graph, c)) > bound:
                violations += 1
    _report(4, "|V_C| <= 8(sigma+1) for every 4-cycle", violations == 0,
            f"{cycles_checked} cycles across the corpus, {violations} violations")


def test_criterion_5_pipeline_floors(corpus):
    ok = True
    details = []
    for name, emb in corpus:
        rep = run_pipeline(emb)
        sigma = rep.genus
        s = {st.name: st.size for st in rep.stages}
        n = rep.n
        sep4 = rep.census.separating_4cycles
        div4 = 16 if sigma == 0 else 166
        div5 = 31 if sigma == 0 else 1231
        inst_ok = (s["S1"] >= n / 3
                   and 6 * s["S2"] >= s["S1"]
                   and s["S3"] >= s["S2"] - 18 * sep4
                   and div4 * s["S4"] >= s["S3"]
                   and div5 * s["S5"] >= s["S4"]
                   and rep.conditions.all_ok)
        witnesses = sum(len(c.witnesses) for c in rep.conditions.checks)
        inst_ok &= witnesses == 0
        if not inst_ok:
            details.append(name)
        ok &= inst_ok
    _report(5, "stage floors and conditions (i)-(v) on every corpus instance",
            ok, "all floors hold, zero failure witnesses" if ok else f"failed: {details}")


def test_criterion_6_lemma7_exhaustive():
    t0 = time.perf_counter()
    corpus = lemma7_corpus(50, seed=0, max_n=14)
    conn_fail = ham_fail = 0
    checked = nonempty = 0
    for label, emb in corpus:
        rep = run_pipeline(emb, check_f_budget=100_000)
        if rep.lemma7 is None:
            continue
        nonempty += 1
        checked += rep.lemma7.checked
        conn_fail += len(rep.lemma7.connectivity_failures)
        ham_fail += len(rep.lemma7.hamiltonicity_failures)
        assert rep.lemma7.hamiltonicity_checked
    elapsed = time.perf_counter() - t0
    ok = conn_fail == 0 and ham_fail == 0 and elapsed < 1800
    _report(6, "G - F stays 4-connected and hamiltonian for every F", ok,
            f"{len(corpus)} instances, {nonempty} with nonempty S, "
            f"{checked} choice sets, {elapsed:.0f}s")


def test_criterion_7_hamiltonicity_baseline(corpus):
    failures = [name for name, emb in corpus
                if not is_hamiltonian(emb.graph).is_hamiltonian]
    _report(7, "every 4-connected corpus triangulation is hamiltonian",
            not failures, f"{len(corpus)} instances" if not failures else str(failures))


def test_criterion_8_scaling_growth():
    sizes = [12, 14, 16, 18, 20]
    rows = []
    for n in sizes:
        emb = generators.low_separator_family(n, seed=1)
        rep = run_pipeline(emb)
        count = count_hc_dp(emb.graph).value
        if n <= 14:
            assert count == count_hc_backtrack(emb.graph).value
        rows.append((n, len(rep.witness_set), count,
                     len(enumerate_separating_cycles(emb, 4))))
    logs = [math.log2(c) for _, _, c, _ in rows]
    increasing = all(a < b for a, b in zip(logs, logs[1:]))
    floor_ok = all(c >= 2 for _, s_size, c, _ in rows if s_size > 0)
    detail = "; ".join(f"n={n}: count={c} (log2={math.log2(c):.1f}, |S|={s}, sep4={k})"
                       for n, s, c, k in rows)
    _report(8, "low-separator family: log2(count) strictly increasing",
            increasing and floor_ok, detail)

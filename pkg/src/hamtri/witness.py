"""Constructive witness pipeline for the linear-separator theorem.

Builds the nested vertex sets S1 (degree <= 6) >= S2 (independent) >= S3
(off all separating 4-cycles and their dominating sets) >= S4/S5/S6 (no
saturated 4-cycle, 5-cycle, diamond-6-cycle), re-verifying every
guarantee directly instead of trusting the bounds, then exercises the
edge-deletion lemma: for any F with exactly one edge per vertex of the
final S, G - F stays 4-connected (and hamiltonian on the sphere and
projective plane).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .connectivity import (enumerate_4_separators, is_k_connected,
                           separating_cycles_of_graph)
from .cycles import (Cycle, DiamondMatch, DiamondSixPattern, enumerate_cycles,
                     find_diamond6, saturates_diamond6, saturating_pairs,
                     vertices_dominating_cycle)
from .embedding import Graph, SignedEmbedding, validate_triangulation
from .hamilton import is_hamiltonian

C_THRESHOLD = Fraction(1, 324)

# Refinement divisors per Euler genus: the conflict graph for saturated
# 4-cycles has maximum degree C(6,2)*(10*sigma+1), so one more color
# suffices; the 5-cycle conflict graph is 2*C(6,2)*(40*sigma+1)-degenerate.
CLEAN4_DIVISOR = {0: 16, 1: 166}
CLEAN5_DIVISOR = {0: 31, 1: 1231}


class PipelineError(RuntimeError):
    """A stage precondition or proved invariant failed."""


# ---------------------------------------------------------------------------
# degeneracy ordering / greedy coloring
# ---------------------------------------------------------------------------

def _smallest_last(vertices: Sequence[int], nbrs: dict, rank) -> tuple[list[int], int]:
    """Smallest-last ordering and degeneracy; ties go to the lowest rank."""
    deg = {v: len(nbrs[v]) for v in vertices}
    alive = set(vertices)
    removal = []
    degeneracy = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], rank(u)))
        degeneracy = max(degeneracy, deg[v])
        removal.append(v)
        alive.remove(v)
        for w in nbrs[v]:
            if w in alive:
                deg[w] -= 1
    return removal[::-1], degeneracy


def _greedy_color(order: Sequence[int], nbrs: dict) -> dict[int, int]:
    color: dict[int, int] = {}
    for v in order:
        taken = {color[w] for w in nbrs[v] if w in color}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    return color


def _largest_class_within(target: Iterable[int], color: dict[int, int]) -> frozenset:
    """Color class with the most vertices of `target`; ties to the lowest color."""
    target = list(target)
    ncolors = max(color.values()) + 1 if color else 0
    best = max(range(ncolors),
               key=lambda c: (sum(1 for v in target if color[v] == c), -c))
    return frozenset(v for v in target if color[v] == best)


def _rank_fn(priority: Optional[Sequence[int]]):
    if priority is None:
        return lambda v: v
    return lambda v: priority[v]


# ---------------------------------------------------------------------------
# stages
# ---------------------------------------------------------------------------

def stage1_low_degree(g: Graph) -> frozenset:
    """S1: all vertices of degree at most 6; |S1| >= n/3 on genus <= 1."""
    if g.min_degree() < 4:
        raise PipelineError("minimum degree below 4: not a 4-connected triangulation")
    s1 = frozenset(v for v in range(g.n) if g.degree(v) <= 6)
    if 3 * len(s1) < g.n:
        raise PipelineError(f"|S1|={len(s1)} below n/3: input is not a genus<=1 triangulation")
    return s1


def stage2_independent(g: Graph, s1: Iterable[int],
                       priority: Optional[Sequence[int]] = None) -> frozenset:
    """S2: independent subset of S1 of size >= |S1|/6.

    Colors the whole graph greedily along a smallest-last ordering (a
    genus <= 1 graph is 5-degenerate, so at most 6 colors appear) and
    keeps the color class with the largest intersection with S1.
    """
    s1 = frozenset(s1)
    if not s1:
        raise PipelineError("S1 is empty")
    rank = _rank_fn(priority)
    nbrs = {v: g.adj_sets[v] for v in range(g.n)}
    order, _ = _smallest_last(range(g.n), nbrs, rank)
    color = _greedy_color(order, nbrs)
    ncolors = max(color.values()) + 1
    if ncolors > 6:
        raise PipelineError(
            f"greedy coloring used {ncolors} colors; genus <= 1 input admits 6")
    s2 = _largest_class_within(s1, color)
    if 6 * len(s2) < len(s1):
        raise PipelineError("largest color class smaller than |S1|/6")
    return s2


def stage3_prune_separating(g: Graph, s2: Iterable[int],
                            sep4cycles: Sequence[Cycle]) -> frozenset:
    """S3: S2 minus, per separating 4-cycle C, the vertices on C or in V_C.

    Each cycle removes at most 2 + 16 = 18 vertices from an independent set
    on genus <= 1 (two on the cycle, |V_C| <= 8(sigma+1) <= 16 nearby).
    """
    s2 = frozenset(s2)
    out = set(s2)
    for c in sep4cycles:
        banned = set(c.vertices) | vertices_dominating_cycle(g, c)
        removed = s2 & banned
        if len(removed) > 18:
            raise PipelineError(
                f"separating 4-cycle {c.vertices} removed {len(removed)} > 18 vertices")
        out -= banned
    return frozenset(out)


@dataclass(frozen=True)
class ConflictGraph:
    """Pairs of candidate vertices that saturate the configuration at hand."""

    vertices: tuple[int, ...]
    edges: frozenset
    degeneracy: int


def build_conflict_graph(g: Graph, s: Iterable[int], kind: str,
                         cycles: Optional[Sequence[Cycle]] = None,
                         diamond_matches: Optional[Sequence[DiamondMatch]] = None,
                         pattern: Optional[DiamondSixPattern] = None,
                         priority: Optional[Sequence[int]] = None) -> ConflictGraph:
    """Conflict graph on s for kind in {"4cycle", "5cycle", "diamond6"}."""
    s = tuple(sorted(s))
    sset = frozenset(s)
    pairs: set[tuple[int, int]] = set()
    if kind in ("4cycle", "5cycle"):
        k = 4 if kind == "4cycle" else 5
        if cycles is None:
            cycles = enumerate_cycles(g, k)
        for pair, _ in saturating_pairs(g, sset, k, cycles=cycles):
            pairs.add(pair)
    elif kind == "diamond6":
        if diamond_matches is None:
            diamond_matches = find_diamond6(g, pattern)
        for mt in diamond_matches:
            hit = sorted(sset & mt.crucial_image)
            pairs.update(itertools.combinations(hit, 2))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    nbrs: dict[int, set] = {v: set() for v in s}
    for u, w in pairs:
        nbrs[u].add(w)
        nbrs[w].add(u)
    _, degeneracy = _smallest_last(s, nbrs, _rank_fn(priority))
    return ConflictGraph(vertices=s, edges=frozenset(pairs), degeneracy=degeneracy)


def refine_no_saturation(g: Graph, s: Iterable[int], kind: str, sigma: int,
                         priority: Optional[Sequence[int]] = None,
                         pattern: Optional[DiamondSixPattern] = None,
                         cycles: Optional[Sequence[Cycle]] = None,
                         diamond_matches: Optional[Sequence[DiamondMatch]] = None,
                         separating_4cycles: Optional[Sequence[Cycle]] = None) -> frozenset:
    """Subset of s saturating no configuration of the given kind.

    Greedy coloring along a smallest-last ordering of the conflict graph;
    the largest class is returned and re-verified directly.  Size floors
    |out| >= |s| / divisor are enforced for kinds "4cycle" and "5cycle"
    (divisors 16/31 on the sphere, 166/1231 on the projective plane); the
    diamond-6-cycle constant is unspecified, so only the achieved ratio is
    observable.  The optional keyword arguments are precomputed caches.
    """
    if sigma not in (0, 1):
        raise PipelineError(f"refinement supports genus 0 or 1, got {sigma}")
    s = frozenset(s)
    for v in s:
        if g.degree(v) > 6:
            raise PipelineError(f"vertex {v} has degree {g.degree(v)} > 6")
    for u in s:
        hit = g.adj_sets[u] & s
        if hit:
            raise PipelineError(f"s is not independent: edge {u}-{min(hit)}")
    if kind == "4cycle":
        if separating_4cycles is None:
            separating_4cycles = separating_cycles_of_graph(g, 4)
        bad = saturating_pairs(g, s, 4, cycles=list(separating_4cycles))
        if bad:
            raise PipelineError(f"s saturates separating 4-cycle {bad[0][1].vertices}")
    elif kind in ("5cycle", "diamond6"):
        bad = saturating_pairs(g, s, 4)
        if bad:
            raise PipelineError(f"s saturates 4-cycle {bad[0][1].vertices}")
    if not s:
        return s
    conflict = build_conflict_graph(g, s, kind, cycles=cycles,
                                    diamond_matches=diamond_matches,
                                    pattern=pattern, priority=priority)
    nbrs = {v: set() for v in conflict.vertices}
    for u, w in conflict.edges:
        nbrs[u].add(w)
        nbrs[w].add(u)
    order, _ = _smallest_last(conflict.vertices, nbrs, _rank_fn(priority))
    color = _greedy_color(order, nbrs)
    out = _largest_class_within(s, color)
    # direct re-verification, never trusted from the conflict graph alone
    if kind in ("4cycle", "5cycle"):
        k = 4 if kind == "4cycle" else 5
        leftover = saturating_pairs(g, out, k, cycles=cycles)
        if leftover:
            raise PipelineError(f"refinement left a saturated {k}-cycle: {leftover[0]}")
        divisor = (CLEAN4_DIVISOR if kind == "4cycle" else CLEAN5_DIVISOR)[sigma]
        if divisor * len(out) < len(s):
            raise PipelineError(
                f"{kind} refinement floor violated: {len(out)} < {len(s)}/{divisor}")
    else:
        if diamond_matches is None:
            diamond_matches = find_diamond6(g, pattern)
        sat, mt = saturates_diamond6(out, diamond_matches)
        if sat:
            raise PipelineError(f"refinement left a saturated diamond-6-cycle: {mt}")
    return out


# ---------------------------------------------------------------------------
# conditions (i)-(v)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionCheck:
    name: str
    ok: bool
    witnesses: tuple


@dataclass(frozen=True)
class ConditionReport:
    checks: tuple[ConditionCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __getitem__(self, name: str) -> ConditionCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {c.name: {"ok": c.ok, "witnesses": [dict(w) for w in c.witnesses]}
                for c in self.checks}


def verify_conditions(g: Graph, emb: Optional[SignedEmbedding], s: Iterable[int],
                      pattern: Optional[DiamondSixPattern] = None,
                      cycles4: Optional[Sequence[Cycle]] = None,
                      cycles5: Optional[Sequence[Cycle]] = None,
                      diamond_matches: Optional[Sequence[DiamondMatch]] = None,
                      separating_4cycles: Optional[Sequence[Cycle]] = None
                      ) -> ConditionReport:
    """Check conditions (i)-(v) on a vertex set, with concrete witnesses.

    (i) every degree <= 6; (ii) independence; (iii) no vertex on a
    separating 4-cycle; (iv) none adjacent to three vertices of one;
    (v) no saturated 4-, 5- or diamond-6-cycle.  Report-style: failures
    are collected, not raised.  The embedding is only consulted for
    context; all five conditions are graph-theoretic.
    """
    s = frozenset(s)
    sorted_s = sorted(s)
    if cycles4 is None:
        cycles4 = enumerate_cycles(g, 4)
    if cycles5 is None:
        cycles5 = enumerate_cycles(g, 5)
    sep4 = (separating_cycles_of_graph(g, 4)
            if separating_4cycles is None else separating_4cycles)
    # (i)
    w1 = tuple({"vertex": v, "degree": g.degree(v)} for v in sorted_s if g.degree(v) > 6)
    # (ii)
    w2 = tuple({"edge": [u, w]} for u, w in itertools.combinations(sorted_s, 2)
               if g.has_edge(u, w))
    # (iii)
    w3 = tuple({"vertex": v, "cycle": list(c.vertices)}
               for c in sep4 for v in sorted_s if v in c.vertex_set())
    # (iv)
    w4 = tuple({"vertex": v, "cycle": list(c.vertices)}
               for c in sep4 for v in sorted_s
               if len(g.adj_sets[v] & c.vertex_set()) >= 3)
    # (v)
    w5 = []
    if not w2:  # saturation is defined for independent sets
        for k, cyc in ((4, cycles4), (5, cycles5)):
            for pair, witness in saturating_pairs(g, s, k, cycles=list(cyc)):
                w5.append({"kind": f"{k}cycle", "pair": list(pair),
                           "cycle": list(witness.vertices)})
        if diamond_matches is None:
            diamond_matches = find_diamond6(g, pattern)
        sat, mt = saturates_diamond6(s, diamond_matches)
        if sat:
            w5.append({"kind": "diamond6", "crucial": sorted(mt.crucial_image),
                       "vertices": sorted(mt.vertices)})
    checks = (
        ConditionCheck("i", not w1, w1),
        ConditionCheck("ii", not w2, w2),
        ConditionCheck("iii", not w3, w3),
        ConditionCheck("iv", not w4, w4),
        ConditionCheck("v", not w5, tuple(w5)),
    )
    return ConditionReport(checks)


# ---------------------------------------------------------------------------
# edge choices and the deletion lemma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeChoiceSet:
    """One edge per vertex of S; F is the resulting edge set."""

    assignment: tuple[tuple[int, tuple[int, int]], ...]

    @property
    def edges(self) -> frozenset:
        return frozenset(e for _, e in self.assignment)


def edge_choice_count(g: Graph, s: Iterable[int]) -> int:
    """Number of possible edge choice sets: the product of the degrees."""
    total = 1
    for v in s:
        total *= g.degree(v)
    return total


def enumerate_edge_choices(g: Graph, s: Iterable[int], budget: int,
                           seed: int = 0) -> Iterator[EdgeChoiceSet]:
    """All assignments of one incident edge per vertex of s, or a sample.

    Yields the full product (in lexicographic order over sorted s and
    sorted neighbor lists) when it has at most `budget` members, otherwise
    exactly `budget` distinct assignments drawn with the given seed.
    """
    sorted_s = sorted(set(s))
    if not sorted_s:
        raise PipelineError("edge choices need a nonempty vertex set")
    per_vertex = [[(v, (min(v, w), max(v, w))) for w in g.neighbors(v)]
                  for v in sorted_s]
    total = edge_choice_count(g, sorted_s)
    if total <= budget:
        for combo in itertools.product(*per_vertex):
            yield EdgeChoiceSet(tuple(combo))
        return
    rng = random.Random(seed)
    seen = set()
    while len(seen) < budget:
        idx = tuple(rng.randrange(len(choices)) for choices in per_vertex)
        if idx in seen:
            continue
        seen.add(idx)
        yield EdgeChoiceSet(tuple(choices[i] for choices, i in zip(per_vertex, idx)))


@dataclass
class Lemma7Report:
    """Aggregated outcome of the G - F checks (counterexamples expected: none)."""

    checked: int = 0
    exhaustive: bool = True
    hamiltonicity_checked: bool = True
    connectivity_failures: list = field(default_factory=list)
    hamiltonicity_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.connectivity_failures and not self.hamiltonicity_failures

    def to_json_dict(self) -> dict:
        return {
            "checked": self.checked,
            "exhaustive": self.exhaustive,
            "hamiltonicity_checked": self.hamiltonicity_checked,
            "connectivity_failures": self.connectivity_failures,
            "hamiltonicity_failures": self.hamiltonicity_failures,
            "ok": self.ok,
        }


def check_lemma7(g: Graph, s: Iterable[int], choices: Iterable[EdgeChoiceSet],
                 check_hamiltonian: bool = True) -> Lemma7Report:
    """For every F: G - F must be 4-connected (and hamiltonian if asked)."""
    report = Lemma7Report(hamiltonicity_checked=check_hamiltonian)
    for choice in choices:
        edges = sorted(choice.edges)
        deleted = g.delete_edges(edges)
        report.checked += 1
        if not is_k_connected(deleted, 4):
            report.connectivity_failures.append([list(e) for e in edges])
            continue
        if check_hamiltonian and not is_hamiltonian(deleted).is_hamiltonian:
            report.hamiltonicity_failures.append([list(e) for e in edges])
    return report


# ---------------------------------------------------------------------------
# full pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StageRecord:
    name: str
    vertices: tuple[int, ...]
    floor: Optional[float]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_json_dict(self) -> dict:
        return {"name": self.name, "size": self.size,
                "floor": self.floor, "vertices": list(self.vertices)}


@dataclass(frozen=True)
class SeparatorCensus:
    four_separators_all: int
    four_separators_minimal: int
    separating_4cycles: int
    separating_3cycles: int

    def to_json_dict(self) -> dict:
        return {
            "four_separators_all": self.four_separators_all,
            "four_separators_minimal": self.four_separators_minimal,
            "separating_4cycles": self.separating_4cycles,
            "separating_3cycles": self.separating_3cycles,
        }


@dataclass(frozen=True)
class WitnessReport:
    """Full pipeline trace: stage sets, floors, conditions, censuses."""

    n: int
    m: int
    genus: int
    c: Fraction
    stages: tuple[StageRecord, ...]
    conditions: ConditionReport
    census: SeparatorCensus
    c_threshold_ok: bool
    diamond_ratio: Optional[float]
    lemma7: Optional[Lemma7Report]

    @property
    def witness_set(self) -> frozenset:
        return frozenset(self.stages[-1].vertices)

    def stage(self, name: str) -> StageRecord:
        for st in self.stages:
            if st.name == name:
                return st
        raise KeyError(name)

    def floors_hold(self) -> bool:
        return all(st.floor is None or st.size >= st.floor - 1e-9 for st in self.stages)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "m": self.m,
            "genus": self.genus,
            "c": str(self.c),
            "stages": [st.to_json_dict() for st in self.stages],
            "conditions": self.conditions.to_json_dict(),
            "conditions_all_ok": self.conditions.all_ok,
            "separator_census": self.census.to_json_dict(),
            "c_threshold_ok": self.c_threshold_ok,
            "diamond_ratio": self.diamond_ratio,
            "witness_size": self.stages[-1].size,
            "lemma7": self.lemma7.to_json_dict() if self.lemma7 else None,
        }


def run_pipeline(emb: SignedEmbedding, c: Fraction = Fraction(1, 400),
                 check_f_budget: Optional[int] = None, seed: int = 0,
                 priority: Optional[Sequence[int]] = None,
                 pattern: Optional[DiamondSixPattern] = None,
                 separator_budget: int = 50) -> WitnessReport:
    """Run all stages on a validated 4-connected triangulation of genus <= 1.

    Records every stage against its theoretical floor, whether the number
    of 4-separators stays below c*n (the pipeline continues either way and
    records the verdict), and the condition report for the final set.
    With check_f_budget, all edge choice sets F (or a seeded sample) are
    checked for 4-connectivity and hamiltonicity of G - F.
    """
    c = Fraction(c)
    if c >= C_THRESHOLD:
        raise PipelineError(f"c must be a rational below 1/324, got {c}")
    validation = validate_triangulation(emb)
    if not validation.ok:
        raise PipelineError(f"not a triangulation of genus <= 1: {validation.violations}")
    sigma = validation.genus
    g = emb.graph
    if not is_k_connected(g, 4):
        raise PipelineError("graph is not 4-connected")
    if pattern is None:
        pattern = DiamondSixPattern.default()

    cycles4 = enumerate_cycles(g, 4)
    cycles5 = enumerate_cycles(g, 5)
    sep4 = separating_cycles_of_graph(g, 4)
    sep3 = separating_cycles_of_graph(g, 3)
    matches = find_diamond6(g, pattern)
    separators = enumerate_4_separators(g, budget=separator_budget)
    census = SeparatorCensus(
        four_separators_all=separators.total,
        four_separators_minimal=separators.minimal_total,
        separating_4cycles=len(sep4),
        separating_3cycles=len(sep3),
    )
    threshold_ok = Fraction(separators.total) <= c * g.n

    s1 = stage1_low_degree(g)
    s2 = stage2_independent(g, s1, priority=priority)
    s3 = stage3_prune_separating(g, s2, sep4)
    s4 = refine_no_saturation(g, s3, "4cycle", sigma, priority=priority,
                              cycles=cycles4, separating_4cycles=sep4)
    s5 = refine_no_saturation(g, s4, "5cycle", sigma, priority=priority,
                              cycles=cycles5)
    s6 = refine_no_saturation(g, s5, "diamond6", sigma, priority=priority,
                              pattern=pattern, diamond_matches=matches)

    stages = (
        StageRecord("S1", tuple(sorted(s1)), g.n / 3),
        StageRecord("S2", tuple(sorted(s2)), len(s1) / 6),
        StageRecord("S3", tuple(sorted(s3)), len(s2) - 18 * len(sep4)),
        StageRecord("S4", tuple(sorted(s4)), len(s3) / CLEAN4_DIVISOR[sigma]),
        StageRecord("S5", tuple(sorted(s5)), len(s4) / CLEAN5_DIVISOR[sigma]),
        StageRecord("S6", tuple(sorted(s6)), None),
    )
    for st in stages:
        if st.floor is not None and st.size < st.floor - 1e-9:
            raise PipelineError(f"stage {st.name} floor violated: {st.size} < {st.floor}")

    conditions = verify_conditions(g, emb, s6, pattern=pattern,
                                   cycles4=cycles4, cycles5=cycles5,
                                   diamond_matches=matches,
                                   separating_4cycles=sep4)
    diamond_ratio = (len(s6) / len(s5)) if s5 else None

    lemma7 = None
    if check_f_budget is not None and s6:
        choices = enumerate_edge_choices(g, s6, budget=check_f_budget, seed=seed)
        lemma7 = check_lemma7(g, s6, choices)
        lemma7.exhaustive = edge_choice_count(g, s6) <= check_f_budget

    return WitnessReport(n=g.n, m=g.m, genus=sigma, c=c, stages=stages,
                         conditions=conditions, census=census,
                         c_threshold_ok=threshold_ok,
                         diamond_ratio=diamond_ratio, lemma7=lemma7)

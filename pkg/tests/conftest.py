"""Shared corpus fixtures.

The small corpus covers both surfaces and the extremal family: the
octahedron, double wheels up to n=12, the icosahedron, K6 on the
projective plane, and a handful of seeded random 4-connected sphere
triangulations including two hill-climbed low-separator instances.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from hamtri import generators

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def octahedron():
    return generators.octahedron()


@pytest.fixture(scope="session")
def icosahedron():
    return generators.icosahedron()


@pytest.fixture(scope="session")
def k6p():
    return generators.k6_projective()


@pytest.fixture(scope="session")
def corpus():
    """(name, embedding) pairs; every member is a 4-connected triangulation."""
    members = [("octahedron", generators.octahedron()),
               ("icosahedron", generators.icosahedron()),
               ("k6_projective", generators.k6_projective())]
    for n in range(6, 13):
        members.append((f"double_wheel_{n}", generators.double_wheel(n)))
    for i, n in enumerate((8, 9, 10, 11, 12, 13, 14, 14)):
        members.append((f"random_{n}_{i}", generators.random_triangulation_4c(n, seed=i)))
    members.append(("lowsep_12", generators.low_separator_family(12, seed=0)))
    members.append(("lowsep_14", generators.low_separator_family(14, seed=1)))
    return members


@pytest.fixture(scope="session")
def sphere_corpus(corpus):
    return [(name, emb) for name, emb in corpus if emb.euler_genus() == 0]

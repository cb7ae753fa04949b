"""Parsing, face tracing, genus and triangulation validation."""

from __future__ import annotations

import random

import pytest

from hamtri import generators
from hamtri.embedding import (EmbeddingError, Graph, ParseError,
                              k3q_euler_genus, parse_planar_code,
                              parse_signed_rotation, serialize_planar_code,
                              serialize_signed_rotation, trace_faces,
                              validate_triangulation)

from conftest import FIXTURES


def test_graph_rejects_bad_structure():
    with pytest.raises(EmbeddingError):
        Graph([[0]])                      # loop
    with pytest.raises(EmbeddingError):
        Graph([[1, 1], [0, 0]])           # parallel edge
    with pytest.raises(EmbeddingError):
        Graph([[1], []])                  # asymmetric
    with pytest.raises(EmbeddingError):
        Graph([[1], [0], [3], [2]], require_connected=True)


def test_graph_delete_edges_validates_subset():
    g = generators.octahedron().graph
    with pytest.raises(EmbeddingError):
        g.delete_edges([(0, 2)])  # opposite rim pair, not an edge


def test_parse_octahedron_fixture():
    embs = parse_planar_code(FIXTURES.joinpath("octahedron.plc").read_bytes())
    assert len(embs) == 1
    emb = embs[0]
    assert emb.n == 6 and emb.m == 12
    assert len(emb.faces()) == 8  # f = 2n - 4
    assert emb.all_positive()


def test_parse_planar_code_empty_after_header():
    assert parse_planar_code(b">>planar_code<<") == []


def test_parse_planar_code_errors():
    with pytest.raises(ParseError):
        parse_planar_code(b">>planar_code<<\x03\x02")          # truncated
    with pytest.raises(ParseError):
        parse_planar_code(b">>planar_code<<\x02\x05\x00\x01\x00")  # id out of range
    with pytest.raises(EmbeddingError):
        parse_planar_code(b"\x02\x02\x00\x00")                  # asymmetric (vertex 2 empty)


def test_planar_code_round_trip_double_wheel():
    emb = generators.double_wheel(7)
    again = parse_planar_code(serialize_planar_code([emb]))[0]
    assert again.rotation == emb.rotation
    assert again == emb


def test_planar_code_rejects_signed():
    with pytest.raises(EmbeddingError):
        serialize_planar_code([generators.k6_projective()])


def test_parse_k6_fixture():
    emb = parse_signed_rotation(FIXTURES.joinpath("k6_projective.rot").read_text())
    assert emb.n == 6 and emb.m == 15
    assert len(emb.faces()) == 10
    assert emb.euler_genus() == 1


def test_parse_all_plus_rotation_text_is_sphere():
    text = serialize_signed_rotation(generators.octahedron())
    emb = parse_signed_rotation(text)
    assert emb.euler_genus() == 0


def test_parse_sign_mismatch_rejected():
    text = ("n 6\n"
            "v 0: 1 2 3 4 5\n"
            "v 1: 0 2 3 4 5\n"
            "v 2: 0 1 3 4 5-\n"   # edge 2-5 marked -1 here
            "v 3: 0 1 2 4 5\n"
            "v 4: 0 1 2 3 5\n"
            "v 5: 0 1 2 3 4\n")   # ... and +1 here
    with pytest.raises(ParseError, match="2-5"):
        parse_signed_rotation(text)


def test_parse_missing_vertex_line():
    with pytest.raises(ParseError, match="missing vertex line"):
        parse_signed_rotation("n 3\nv 0: 1 2\nv 1: 2 0\n")


def test_parse_rotation_text_misc_errors():
    with pytest.raises(ParseError):
        parse_signed_rotation("v 0: 1\n")       # vertex before n
    with pytest.raises(ParseError):
        parse_signed_rotation("n 2\nn 2\n")     # duplicate n
    with pytest.raises(ParseError):
        parse_signed_rotation("n 2\nv 0 1\nv 1: 0\n")  # missing colon


def test_trace_faces_counts(octahedron, k6p):
    assert len(trace_faces(octahedron)) == 8
    assert all(len(f) == 3 for f in trace_faces(k6p))
    assert len(trace_faces(k6p)) == 10
    dw10 = generators.double_wheel(10)
    assert len(trace_faces(dw10)) == 16


def test_euler_genus_examples(octahedron, k6p):
    assert octahedron.euler_genus() == 0
    assert k6p.euler_genus() == 1
    assert generators.double_wheel(8).euler_genus() == 0


def test_validate_triangulation(octahedron, k6p):
    assert validate_triangulation(octahedron).ok
    assert validate_triangulation(octahedron).genus == 0
    rep = validate_triangulation(k6p)
    assert rep.ok and rep.genus == 1
    c4 = parse_signed_rotation(FIXTURES.joinpath("c4.rot").read_text())
    rep = validate_triangulation(c4)
    assert not rep.ok
    assert any("non-triangular" in v for v in rep.violations)


def test_k3q_euler_genus():
    assert k3q_euler_genus(3) == 1
    assert k3q_euler_genus(4) == 1
    assert k3q_euler_genus(7) == 3
    with pytest.raises(ValueError):
        k3q_euler_genus(2)


def test_euler_relations_across_corpus(corpus):
    for name, emb in corpus:
        n, m, f = emb.n, emb.m, len(emb.faces())
        genus = emb.euler_genus()
        assert sum(len(face) for face in emb.faces()) == 2 * m, name
        if genus == 0:
            assert m == 3 * n - 6 and f == 2 * n - 4, name
        else:
            assert m == 3 * n - 3 and f == 2 * n - 2, name


def test_rotation_text_round_trip_corpus(corpus):
    for name, emb in corpus:
        again = parse_signed_rotation(serialize_signed_rotation(emb))
        assert again == emb, name


def test_planar_code_round_trip_sphere_corpus(sphere_corpus):
    embs = [emb for _, emb in sphere_corpus]
    again = parse_planar_code(serialize_planar_code(embs))
    assert again == embs


def test_vertex_flip_preserves_genus(corpus):
    rng = random.Random(0)
    for name, emb in corpus:
        for v in rng.sample(range(emb.n), 3):
            flipped = emb.vertex_flip(v)
            assert flipped.euler_genus() == emb.euler_genus(), name
            assert len(flipped.faces()) == len(emb.faces()), name
        # flipping twice restores the embedding
        v = rng.randrange(emb.n)
        assert emb.vertex_flip(v).vertex_flip(v).sign == emb.sign


def test_rotation_must_match_neighbors(octahedron):
    rot = [list(r) for r in octahedron.rotation]
    rot[0] = rot[0][:-1] + [rot[0][-1] ^ 1]  # swap in a wrong neighbor
    from hamtri.embedding import SignedEmbedding
    with pytest.raises(EmbeddingError):
        SignedEmbedding(octahedron.graph, rot, dict(octahedron.sign))

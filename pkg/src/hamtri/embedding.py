"""Graphs and their cellular embeddings in the sphere or projective plane.

An embedding is stored as a signed rotation system: a cyclic order of
neighbors around every vertex plus a sign in {+1, -1} per edge.  All-plus
systems describe orientable (here: sphere) embeddings; a -1 sign means the
local orientation flips when the edge is traversed, which is enough to
encode the projective plane.  Faces are recovered by the standard tracing
rule, and the Euler genus is 2 - (n - m + f).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

PLANAR_CODE_HEADER = b">>planar_code<<"


class EmbeddingError(ValueError):
    """Structurally invalid graph or rotation system."""


class ParseError(EmbeddingError):
    """Malformed input file or byte stream."""


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Adjacency lists are kept sorted; neighbor sets and adjacency bitmasks
    are precomputed since all algorithms here live on small graphs.
    """

    __slots__ = ("n", "adj", "m", "adj_sets", "adj_bits")

    def __init__(self, adjacency: Sequence[Sequence[int]], *, require_connected: bool = False):
        n = len(adjacency)
        adj = []
        m2 = 0
        for v, row in enumerate(adjacency):
            srow = tuple(sorted(row))
            for w in srow:
                if not 0 <= w < n:
                    raise EmbeddingError(f"neighbor {w} of vertex {v} out of range")
                if w == v:
                    raise EmbeddingError(f"loop at vertex {v}")
            if len(set(srow)) != len(srow):
                raise EmbeddingError(f"parallel edge at vertex {v}")
            adj.append(srow)
            m2 += len(srow)
        for v in range(n):
            for w in adj[v]:
                if v not in adj[w]:
                    raise EmbeddingError(f"asymmetric adjacency: {v}->{w} but not {w}->{v}")
        self.n = n
        self.adj = tuple(adj)
        self.m = m2 // 2
        self.adj_sets = tuple(frozenset(row) for row in adj)
        bits = []
        for row in adj:
            b = 0
            for w in row:
                b |= 1 << w
            bits.append(b)
        self.adj_bits = tuple(bits)
        if require_connected and not self.is_connected():
            raise EmbeddingError("graph is disconnected")

    @classmethod
    def from_edges(cls, n: int, edges, **kw) -> "Graph":
        rows = [[] for _ in range(n)]
        for u, v in edges:
            rows[u].append(v)
            rows[v].append(u)
        return cls(rows, **kw)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def min_degree(self) -> int:
        return min((len(r) for r in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for w in self.adj[u]:
                if u < w:
                    yield (u, w)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        stack = [0]
        while stack:
            v = stack.pop()
            new = self.adj_bits[v] & ~seen
            while new:
                w = (new & -new).bit_length() - 1
                new &= new - 1
                seen |= 1 << w
                stack.append(w)
        return seen == (1 << self.n) - 1

    def delete_edges(self, edges) -> "Graph":
        """Graph with the given edges removed (result may be disconnected)."""
        gone = {(min(u, v), max(u, v)) for u, v in edges}
        for u, v in gone:
            if not self.has_edge(u, v):
                raise EmbeddingError(f"edge {u}-{v} not in graph")
        rows = [[w for w in self.adj[v]
                 if (min(v, w), max(v, w)) not in gone] for v in range(self.n)]
        return Graph(rows)

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Apply the vertex permutation v -> perm[v]."""
        rows = [[] for _ in range(self.n)]
        for v in range(self.n):
            rows[perm[v]] = [perm[w] for w in self.adj[v]]
        return Graph(rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self):
        return hash(self.adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class Face(NamedTuple):
    """One face boundary as a cyclic vertex sequence (as traced)."""

    boundary: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.boundary)


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class SignedEmbedding:
    """A graph with a rotation system and per-edge signs.

    ``rotation[v]`` is the cyclic neighbor order around v; ``sign`` maps
    each edge (u, v) with u < v to +1 or -1.  Sphere inputs carry all-plus
    signs.  Instances are immutable; faces are traced lazily and cached.
    """

    __slots__ = ("graph", "rotation", "sign", "_faces")

    def __init__(self, graph: Graph, rotation: Sequence[Sequence[int]], sign: dict):
        if len(rotation) != graph.n:
            raise EmbeddingError("rotation must list every vertex")
        rot = []
        for v in range(graph.n):
            row = tuple(rotation[v])
            if sorted(row) != list(graph.adj[v]):
                raise EmbeddingError(f"rotation at {v} is not a permutation of its neighbors")
            rot.append(row)
        keys = {_edge_key(u, v) for u, v in graph.edges()}
        norm = {}
        for (u, v), s in sign.items():
            k = _edge_key(u, v)
            if k not in keys:
                raise EmbeddingError(f"sign given for non-edge {u}-{v}")
            if s not in (1, -1):
                raise EmbeddingError(f"edge sign must be +1 or -1, got {s}")
            if k in norm and norm[k] != s:
                raise EmbeddingError(f"conflicting signs for edge {k}")
            norm[k] = s
        missing = keys - set(norm)
        if missing:
            raise EmbeddingError(f"missing sign for edges {sorted(missing)[:3]}...")
        self.graph = graph
        self.rotation = tuple(rot)
        self.sign = norm
        self._faces = None

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def edge_sign(self, u: int, v: int) -> int:
        return self.sign[_edge_key(u, v)]

    def faces(self) -> list[Face]:
        if self._faces is None:
            self._faces = trace_faces(self)
        return self._faces

    def euler_genus(self) -> int:
        return euler_genus(self)

    def all_positive(self) -> bool:
        return all(s == 1 for s in self.sign.values())

    def vertex_flip(self, v: int) -> "SignedEmbedding":
        """Reverse the rotation at v and negate all signs at v.

        This changes the local orientation patch only; the embedded surface
        (hence face count and genus) is unchanged.
        """
        rot = [list(r) for r in self.rotation]
        rot[v] = rot[v][::-1]
        sign = dict(self.sign)
        for w in self.graph.adj[v]:
            k = _edge_key(v, w)
            sign[k] = -sign[k]
        return SignedEmbedding(self.graph, rot, sign)

    def relabeled(self, perm: Sequence[int]) -> "SignedEmbedding":
        rot = [()] * self.n
        for v in range(self.n):
            rot[perm[v]] = tuple(perm[w] for w in self.rotation[v])
        sign = {_edge_key(perm[u], perm[v]): s for (u, v), s in self.sign.items()}
        return SignedEmbedding(self.graph.relabeled(perm), rot, sign)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SignedEmbedding)
                and self.rotation == other.rotation and self.sign == other.sign)

    def __hash__(self):
        return hash((self.rotation, tuple(sorted(self.sign.items()))))

    def __repr__(self):
        return f"SignedEmbedding(n={self.n}, m={self.m})"


def trace_faces(emb: SignedEmbedding) -> list[Face]:
    """Trace all face boundaries of a signed rotation system.

    Walk states are (v, w, d): traverse edge v->w while the accumulated
    orientation is d.  Crossing an edge of sign -1 flips d; the next edge
    at w is the rotation successor of v for d=+1 and the predecessor for
    d=-1.  Each traced orbit is paired with its reversed mirror orbit via
    (v, w, d) -> (w, v, -d*sign(vw)), so every face is reported once and
    exactly 2m edge sides are consumed.  Tracing starts from the
    lexicographically least unused directed edge, which fixes the
    orientation of the report deterministically.
    """
    g = emb.graph
    rot = emb.rotation
    pos = [{u: i for i, u in enumerate(r)} for r in rot]
    used: set[tuple[int, int, int]] = set()
    faces = []
    sides = 0
    for v0 in range(g.n):
        for w0 in rot[v0]:
            for d0 in (1, -1):
                start = (v0, w0, d0)
                if start in used:
                    continue
                boundary = []
                cur = start
                while True:
                    v, w, d = cur
                    if cur in used:
                        raise EmbeddingError("face tracing revisited a state; corrupt rotation system")
                    used.add(cur)
                    used.add((w, v, -d * emb.edge_sign(v, w)))
                    boundary.append(v)
                    d2 = d * emb.edge_sign(v, w)
                    i = pos[w][v]
                    deg = len(rot[w])
                    nxt = rot[w][(i + 1) % deg] if d2 == 1 else rot[w][(i - 1) % deg]
                    cur = (w, nxt, d2)
                    if cur == start:
                        break
                faces.append(Face(tuple(boundary)))
                sides += len(boundary)
    if sides != 2 * g.m:
        raise EmbeddingError(f"face tracing consumed {sides} edge sides, expected {2 * g.m}")
    return faces


def euler_genus(emb: SignedEmbedding) -> int:
    """Euler genus 2 - (n - m + f) of the embedded surface."""
    f = len(emb.faces())
    return 2 - (emb.n - emb.m + f)


@dataclass
class TriangulationReport:
    """Outcome of validate_triangulation; empty violations means pass."""

    ok: bool
    genus: int
    violations: list[str]


def validate_triangulation(emb: SignedEmbedding) -> TriangulationReport:
    """Check that an embedding is a sphere or projective-plane triangulation.

    Passes iff the graph is simple and connected (simplicity is enforced by
    construction), every face boundary is a 3-cycle on distinct vertices,
    and the Euler genus is 0 or 1.  Violations are reported, not raised.
    """
    violations = []
    if not emb.graph.is_connected():
        violations.append("graph is disconnected")
    for face in emb.faces():
        b = face.boundary
        if len(b) != 3:
            violations.append(f"non-triangular face {b}")
        elif len(set(b)) != 3:
            violations.append(f"face with repeated vertex {b}")
    genus = emb.euler_genus()
    if genus not in (0, 1):
        violations.append(f"genus {genus} not in {{0, 1}}")
    return TriangulationReport(ok=not violations, genus=genus, violations=violations)


def k3q_euler_genus(q: int) -> int:
    """Euler genus of the complete bipartite graph K_{3,q}: ceil((q-2)/2)."""
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    return math.ceil((q - 2) / 2)


# ---------------------------------------------------------------------------
# planar code (binary, plantri-compatible)
# ---------------------------------------------------------------------------

def parse_planar_code(data: bytes) -> list[SignedEmbedding]:
    """Parse a planar_code byte stream into embeddings (all signs +1).

    Format: optional ASCII header ``>>planar_code<<``; per graph one byte n
    (1 <= n < 256), then for each vertex its neighbor list as 1-based bytes
    terminated by 0.  Neighbor order is the (clockwise) rotation.  Fails
    atomically on a malformed record.
    """
    pos = 0
    if data.startswith(PLANAR_CODE_HEADER):
        pos = len(PLANAR_CODE_HEADER)
    out = []
    total = len(data)
    while pos < total:
        n = data[pos]
        pos += 1
        if n == 0:
            raise ParseError("graph with zero vertices in planar code")
        rows = []
        for v in range(n):
            row = []
            while True:
                if pos >= total:
                    raise ParseError(f"truncated planar code in vertex {v} of graph {len(out)}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise ParseError(f"neighbor id {b} out of range for n={n}")
                row.append(b - 1)
            rows.append(row)
        graph = Graph(rows, require_connected=True)
        sign = {e: 1 for e in graph.edges()}
        out.append(SignedEmbedding(graph, rows, sign))
    return out


def serialize_planar_code(embeddings, header: bool = True) -> bytes:
    """Write embeddings as planar code.  Requires all-plus signs and n < 256."""
    chunks = [PLANAR_CODE_HEADER] if header else []
    for emb in embeddings:
        if not emb.all_positive():
            raise EmbeddingError("planar code cannot carry signed (non-sphere) embeddings")
        if emb.n >= 256:
            raise EmbeddingError("planar code limited to n < 256")
        rec = bytearray([emb.n])
        for v in range(emb.n):
            rec.extend(w + 1 for w in emb.rotation[v])
            rec.append(0)
        chunks.append(bytes(rec))
    return b"".join(chunks)


# ---------------------------------------------------------------------------
# signed rotation text format
# ---------------------------------------------------------------------------

def parse_signed_rotation(text: str) -> SignedEmbedding:
    """Parse the signed rotation text format.

    Grammar: ``#`` starts a comment; one ``n <count>`` line; per vertex a
    line ``v <id>: <nbr>[-] <nbr>[-] ...`` where a trailing ``-`` marks
    edge sign -1 (default +1) and neighbor order is the rotation.  Each
    edge's sign must agree on both endpoint lines.
    """
    n = None
    rows: dict[int, list[int]] = {}
    sign_seen: dict[tuple[int, int], tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate n line")
            try:
                n = int(parts[1])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: malformed n line") from None
            if n <= 0:
                raise ParseError(f"line {lineno}: n must be positive")
        elif parts[0] == "v":
            if n is None:
                raise ParseError(f"line {lineno}: vertex line before n line")
            head = line.split(":", 1)
            if len(head) != 2:
                raise ParseError(f"line {lineno}: missing ':' in vertex line")
            try:
                v = int(head[0].split()[1])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: malformed vertex id") from None
            if not 0 <= v < n:
                raise ParseError(f"line {lineno}: vertex id {v} out of range")
            if v in rows:
                raise ParseError(f"line {lineno}: duplicate line for vertex {v}")
            row = []
            for tok in head[1].split():
                s = 1
                if tok.endswith("-"):
                    s = -1
                    tok = tok[:-1]
                try:
                    w = int(tok)
                except ValueError:
                    raise ParseError(f"line {lineno}: bad neighbor token {tok!r}") from None
                if not 0 <= w < n:
                    raise ParseError(f"line {lineno}: neighbor {w} out of range")
                row.append(w)
                k = _edge_key(v, w)
                if k in sign_seen:
                    prev_line, prev_s = sign_seen[k]
                    if prev_s != s:
                        raise ParseError(
                            f"line {lineno}: sign of edge {k[0]}-{k[1]} disagrees with line {prev_line}")
                else:
                    sign_seen[k] = (lineno, s)
            rows[v] = row
        else:
            raise ParseError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise ParseError("missing n line")
    missing = [v for v in range(n) if v not in rows]
    if missing:
        raise ParseError(f"missing vertex line for {missing}")
    rotation = [rows[v] for v in range(n)]
    graph = Graph(rotation, require_connected=True)
    sign = {k: s for k, (_, s) in sign_seen.items()}
    return SignedEmbedding(graph, rotation, sign)


def serialize_signed_rotation(emb: SignedEmbedding) -> str:
    """Write an embedding in the signed rotation text format."""
    lines = [f"n {emb.n}"]
    for v in range(emb.n):
        toks = []
        for w in emb.rotation[v]:
            toks.append(f"{w}-" if emb.edge_sign(v, w) == -1 else str(w))
        lines.append(f"v {v}: " + " ".join(toks))
    return "\n".join(lines) + "\n"

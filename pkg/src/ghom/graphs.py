"""Finite undirected graphs with optional loops, morphisms, and products.

Vertices are string tokens kept in declaration order; that order is the
tie-breaker for every "deterministic choice" in the package.  A loop is
stored as the edge (v, v), so "looped vertex" is a derived predicate and
products/morphisms need no special cases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import GraphFormatError, GuardExceeded

# `|` joins coordinate tokens in product and exponential graphs.
_TOKEN_RE = re.compile(r"[A-Za-z0-9_|]+\Z")


def _check_token(token: str) -> str:
    if not isinstance(token, str) or not _TOKEN_RE.match(token):
        raise GraphFormatError(f"bad vertex token {token!r}")
    return token


class Graph:
    """Immutable undirected graph without multiple edges; loops allowed."""

    __slots__ = ("vertices", "edges", "_index", "_adj", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]]):
        vs = tuple(vertices)
        index: dict[str, int] = {}
        for v in vs:
            _check_token(v)
            if v in index:
                raise GraphFormatError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        canon = set()
        for u, v in edges:
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise GraphFormatError(f"edge endpoint {missing!r} is not a declared vertex")
            canon.add((u, v) if index[u] <= index[v] else (v, u))
        self.vertices = vs
        self.edges = frozenset(canon)
        self._index = index
        adj: dict[str, list[str]] = {v: [] for v in vs}
        for u, v in canon:
            adj[u].append(v)
            if u != v:
                adj[v].append(u)
        self._adj = {v: tuple(sorted(ns, key=index.__getitem__)) for v, ns in adj.items()}
        self._hash = hash((vs, self.edges))

    # -- basic queries ---------------------------------------------------

    def __contains__(self, v: str) -> bool:
        return v in self._index

    def index(self, v: str) -> int:
        """Declaration index of a vertex."""
        return self._index[v]

    def adjacent(self, u: str, v: str) -> bool:
        iu, iv = self._index[u], self._index[v]
        pair = (u, v) if iu <= iv else (v, u)
        return pair in self.edges

    def neighbors(self, v: str) -> tuple[str, ...]:
        """Neighbors in declaration order; includes v itself iff v is looped."""
        return self._adj[v]

    def is_looped(self, v: str) -> bool:
        return (v, v) in self.edges

    def looped_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.is_looped(v))

    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    # -- derived graphs --------------------------------------------------

    def subgraph(self, keep: Iterable[str]) -> "Graph":
        """Induced subgraph; declaration order inherited from this graph."""
        keep_set = set(keep)
        for v in keep_set:
            if v not in self._index:
                raise GraphFormatError(f"subgraph vertex {v!r} not in graph")
        vs = tuple(v for v in self.vertices if v in keep_set)
        es = [(u, v) for (u, v) in self.edges if u in keep_set and v in keep_set]
        return Graph(vs, es)

    def component_of(self, v: str) -> tuple[str, ...]:
        """Vertices of v's connected component, in declaration order."""
        if v not in self._index:
            raise GraphFormatError(f"vertex {v!r} not in graph")
        seen = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return tuple(u for u in self.vertices if u in seen)

    def components(self) -> tuple[tuple[str, ...], ...]:
        out = []
        placed: set[str] = set()
        for v in self.vertices:
            if v not in placed:
                comp = self.component_of(v)
                placed.update(comp)
                out.append(comp)
        return tuple(out)

    def is_connected(self) -> bool:
        return len(self.vertices) <= 1 or len(self.component_of(self.vertices[0])) == len(self.vertices)

    # -- equality / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


# -- file format ----------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    Lines: ``# comment``, ``vertex <token> [loop]``, ``edge <token> <token>``.
    Vertex declaration order is preserved and significant.
    """
    vertices: list[str] = []
    declared: set[str] = set()
    loops: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) == 3 and parts[2] == "loop":
                flag = True
            elif len(parts) == 2:
                flag = False
            else:
                raise GraphFormatError(f"malformed vertex line {line!r}", line=lineno)
            token = parts[1]
            if not _TOKEN_RE.match(token):
                raise GraphFormatError(f"bad vertex token {token!r}", line=lineno)
            if token in declared:
                raise GraphFormatError(f"duplicate vertex declaration {token!r}", line=lineno)
            declared.add(token)
            vertices.append(token)
            if flag:
                loops.append(token)
        elif parts[0] == "edge":
            if len(parts) != 3:
                raise GraphFormatError(f"malformed edge line {line!r}", line=lineno)
            u, v = parts[1], parts[2]
            for t in (u, v):
                if t not in declared:
                    raise GraphFormatError(f"edge references undeclared vertex {t!r}", line=lineno)
            edges.append((u, v))
        else:
            raise GraphFormatError(f"unrecognized line {line!r}", line=lineno)
    edges.extend((v, v) for v in loops)
    return Graph(vertices, edges)


def serialize(g: Graph) -> str:
    """Inverse of parse_graph: vertices in declaration order, then non-loop
    edges as lexicographically sorted lines (loops ride on the vertex flag)."""
    lines = []
    for v in g.vertices:
        lines.append(f"vertex {v} loop" if g.is_looped(v) else f"vertex {v}")
    edge_lines = sorted(
        "edge {} {}".format(*sorted((u, v))) for (u, v) in g.edges if u != v
    )
    lines.extend(edge_lines)
    return "\n".join(lines) + "\n"


# -- standard constructions ------------------------------------------------


def path_graph(n: int, looped: bool = False) -> Graph:
    """Path on vertices 0..n; with looped=True every vertex also gets a loop."""
    if n < 0:
        raise ValueError("path length must be >= 0")
    vs = [str(i) for i in range(n + 1)]
    es = [(str(i), str(i + 1)) for i in range(n)]
    if looped:
        es.extend((v, v) for v in vs)
    return Graph(vs, es)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    vs = [str(i) for i in range(n)]
    es = [(str(i), str((i + 1) % n)) for i in range(n)]
    return Graph(vs, es)


def complete_graph(n: int) -> Graph:
    vs = [str(i) for i in range(n)]
    es = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)]
    return Graph(vs, es)


def terminal_graph() -> Graph:
    """One vertex with one loop: the terminal object."""
    return Graph(["v"], [("v", "v")])


def product(g: Graph, h: Graph) -> Graph:
    """Categorical product: (v1,w1) ~ (v2,w2) iff v1~v2 and w1~w2.

    Vertex tokens are the coordinates joined with '|'.
    """
    vs = [f"{v}|{w}" for v in g.vertices for w in h.vertices]
    es = []
    for (v1, v2) in g.edges:
        for (w1, w2) in h.edges:
            es.append((f"{v1}|{w1}", f"{v2}|{w2}"))
            if v1 != v2 and w1 != w2:
                es.append((f"{v1}|{w2}", f"{v2}|{w1}"))
    return Graph(vs, es)


# -- morphisms --------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    """Vertex map between graphs; validity is checked by check_morphism."""

    source: Graph
    target: Graph
    mapping: Mapping[str, str]

    def __call__(self, v: str) -> str:
        return self.mapping[v]

    def image_tuple(self) -> tuple[str, ...]:
        """Images in source declaration order; hashable state for searches."""
        return tuple(self.mapping[v] for v in self.source.vertices)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.image_tuple()))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Morphism)
            and self.source == other.source
            and self.target == other.target
            and self.image_tuple() == other.image_tuple()
        )


def identity_morphism(g: Graph) -> Morphism:
    return Morphism(g, g, {v: v for v in g.vertices})


def compose(f: Morphism, g: Morphism) -> Morphism:
    """Composite g . f (apply f first)."""
    if f.target != g.source:
        raise ValueError("morphisms not composable")
    return Morphism(f.source, g.target, {v: g.mapping[f.mapping[v]] for v in f.source.vertices})


def check_morphism(f: Morphism) -> bool:
    """True iff every edge (loops included) is preserved.

    A non-total map is an error, not False.
    """
    for v in f.source.vertices:
        if v not in f.mapping:
            raise ValueError(f"map not total: vertex {v!r} has no image")
        if f.mapping[v] not in f.target:
            raise ValueError(f"image {f.mapping[v]!r} of {v!r} is not a target vertex")
    for (u, v) in f.source.edges:
        if not f.target.adjacent(f.mapping[u], f.mapping[v]):
            return False
    return True


def parse_morphism(text: str, source: Graph, target: Graph) -> Morphism:
    """Parse a map file: one ``<source-token> <target-token>`` pair per line."""
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"malformed map line {line!r}", line=lineno)
        s, t = parts
        if s not in source:
            raise GraphFormatError(f"unknown source vertex {s!r}", line=lineno)
        if t not in target:
            raise GraphFormatError(f"unknown target vertex {t!r}", line=lineno)
        if s in mapping:
            raise GraphFormatError(f"vertex {s!r} mapped twice", line=lineno)
        mapping[s] = t
    for v in source.vertices:
        if v not in mapping:
            raise GraphFormatError(f"map not total: vertex {v!r} has no image")
    return Morphism(source, target, mapping)


# -- brute-force isomorphism -------------------------------------------------


def find_isomorphism(g: Graph, h: Graph, cap: int = 10) -> Optional[Morphism]:
    """Deterministic backtracking isomorphism search for desk-size graphs.

    Returns the lexicographically least bijection in vertex order, or None.
    Guarded: refuses graphs larger than `cap` vertices.
    """
    if len(g.vertices) > cap or len(h.vertices) > cap:
        raise GuardExceeded(
            f"isomorphism search capped at {cap} vertices "
            f"(got {len(g.vertices)} and {len(h.vertices)})"
        )
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    if sorted(g.degree(v) for v in g.vertices) != sorted(h.degree(v) for v in h.vertices):
        return None

    gv = g.vertices
    used: set[str] = set()
    assignment: dict[str, str] = {}

    def feasible(v: str, w: str) -> bool:
        if g.degree(v) != h.degree(w) or g.is_looped(v) != h.is_looped(w):
            return False
        for prev in assignment:
            if g.adjacent(v, prev) != h.adjacent(w, assignment[prev]):
                return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(gv):
            return True
        v = gv[i]
        for w in h.vertices:
            if w in used or not feasible(v, w):
                continue
            assignment[v] = w
            used.add(w)
            if backtrack(i + 1):
                return True
            del assignment[v]
            used.remove(w)
        return False

    if not backtrack(0):
        return None
    return Morphism(g, h, dict(assignment))

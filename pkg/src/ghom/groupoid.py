"""Presentations of walk groups and fundamental groups.

Generators come from edges outside a spanning forest (walk group: loop
edges contribute order-2 generators); the fundamental group adds one
relator per closed 4-walk.  Abelian invariants are computed by exact
Smith normal form, and the resulting lattice doubles as the negative
oracle for homotopy decisions: homotopic walks can never have different
abelianized images.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .graphs import Graph
from .snf import RowLattice, abelian_invariants_of
from .walks import Walk


# -- words ------------------------------------------------------------------


def free_reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    stack: list[tuple[int, int]] = []
    for g, e in letters:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word: letters are (generator index, +1 or -1)."""

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.letters != free_reduce(self.letters):
            raise ValueError("word is not freely reduced")

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(free_reduce(self.letters + other.letters))

    def is_trivial(self) -> bool:
        return not self.letters

    def exponent_vector(self, width: int) -> list[int]:
        vec = [0] * width
        for g, e in self.letters:
            vec[g] += e
        return vec

    def signed_indices(self) -> list[int]:
        """1-based signed generator indices (JSON form)."""
        return [e * (g + 1) for g, e in self.letters]


# -- spanning forests ---------------------------------------------------------


@dataclass(frozen=True)
class SpanningForest:
    """Acyclic spanning edge set given by a parent map; loops never occur.

    parent[v] is None for the root of v's component.
    """

    graph: Graph
    parent: tuple[tuple[str, Optional[str]], ...]

    def __post_init__(self):
        par = dict(self.parent)
        if set(par) != set(self.graph.vertices):
            raise ValueError("forest must cover every vertex exactly once")
        for child, p in par.items():
            if p is None:
                continue
            if p == child:
                raise ValueError("loops cannot be forest edges")
            if not self.graph.adjacent(child, p):
                raise ValueError(f"forest edge {child!r}-{p!r} is not a graph edge")
        for v in par:
            seen = {v}
            cur = par[v]
            while cur is not None:
                if cur in seen:
                    raise ValueError("forest parent map has a cycle")
                seen.add(cur)
                cur = par[cur]

    def parent_of(self, v: str) -> Optional[str]:
        return dict(self.parent)[v]

    def edges(self) -> frozenset[tuple[str, str]]:
        idx = self.graph.index
        out = set()
        for child, p in self.parent:
            if p is not None:
                out.add((child, p) if idx(child) <= idx(p) else (p, child))
        return frozenset(out)

    def root_path(self, v: str) -> list[str]:
        par = dict(self.parent)
        path = [v]
        while par[path[-1]] is not None:
            path.append(par[path[-1]])
        return path

    def tree_seq(self, u: str, v: str) -> tuple[str, ...]:
        """The unique forest walk from u to v (same component required)."""
        pu, pv = self.root_path(u), self.root_path(v)
        if pu[-1] != pv[-1]:
            raise ValueError(f"{u!r} and {v!r} are in different forest components")
        anc = set(pu)
        i = 0
        while pv[i] not in anc:
            i += 1
        meet = pv[i]
        up = pu[: pu.index(meet) + 1]
        down = pv[:i][::-1]
        return tuple(up) + tuple(down)


def bfs_forest(g: Graph, base: Optional[str] = None) -> SpanningForest:
    """Breadth-first forest in vertex order; `base` roots its component."""
    order = list(g.vertices)
    if base is not None:
        if base not in g:
            raise ValueError(f"base vertex {base!r} not in graph")
        order.remove(base)
        order.insert(0, base)
    parent: dict[str, Optional[str]] = {}
    for start in order:
        if start in parent:
            continue
        parent[start] = None
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.neighbors(u):
                    if w != u and w not in parent:
                        parent[w] = u
                        nxt.append(w)
            frontier = nxt
    return SpanningForest(g, tuple((v, parent[v]) for v in g.vertices))


def path_forest(g: Graph, sequence: Iterable[str]) -> SpanningForest:
    """Forest whose single tree is the given vertex path (testing aid)."""
    seq = list(sequence)
    parent: dict[str, Optional[str]] = {seq[0]: None}
    for a, b in zip(seq, seq[1:]):
        parent[b] = a
    for v in g.vertices:
        parent.setdefault(v, None)
    return SpanningForest(g, tuple((v, parent[v]) for v in g.vertices))


# -- generators and edge words -------------------------------------------------


@dataclass(frozen=True)
class Generator:
    label: str
    edge: Optional[tuple[str, str]]
    is_loop: bool = False


class EdgeWords:
    """Translation from walks to words for one component and one forest.

    Unlooped mode: generators are non-forest edges; loop edges become
    order-2 generators.  Looped mode: the walk (v v) is trivial, so loop
    edges translate to nothing and only non-forest non-loop edges generate.
    """

    def __init__(self, graph: Graph, forest: SpanningForest, component: Iterable[str], looped_mode: bool = False):
        self.graph = graph
        self.forest = forest
        self.component = frozenset(component)
        self.looped_mode = looped_mode
        idx = graph.index
        forest_edges = forest.edges()
        plain, loops = [], []
        for (u, v) in graph.edges:
            if u not in self.component or v not in self.component:
                continue
            if u == v:
                loops.append((u, v))
            elif (u, v) not in forest_edges:
                plain.append((u, v))
        plain.sort(key=lambda e: (idx(e[0]), idx(e[1])))
        loops.sort(key=lambda e: idx(e[0]))
        gens: list[Generator] = []
        for (u, v) in plain:
            gens.append(Generator(f"e{len(gens) + 1}", (u, v)))
        if not looped_mode:
            for (u, v) in loops:
                gens.append(Generator(f"e{len(gens) + 1}", (u, v), is_loop=True))
        self.generators = tuple(gens)
        self._by_edge = {g.edge: i for i, g in enumerate(gens)}

    def letter(self, a: str, b: str) -> Optional[tuple[int, int]]:
        """Letter contributed by traversing the edge a->b, or None."""
        idx = self.graph.index
        edge = (a, b) if idx(a) <= idx(b) else (b, a)
        i = self._by_edge.get(edge)
        if i is None:
            return None
        if a == b:
            return (i, 1)
        return (i, 1 if idx(a) < idx(b) else -1)

    def word_of_seq(self, seq: tuple[str, ...]) -> Word:
        for v in seq:
            if v not in self.component:
                raise ValueError(f"walk vertex {v!r} leaves the presented component")
        letters = []
        for a, b in zip(seq, seq[1:]):
            lt = self.letter(a, b)
            if lt is not None:
                letters.append(lt)
        return Word(free_reduce(letters))


def word_of_walk(g: Graph, forest: SpanningForest, w: Walk, looped_mode: bool = False) -> Word:
    """Word of a walk over the generators determined by (graph, forest)."""
    if w.graph != g:
        raise ValueError("walk does not live in the given graph")
    comp = g.component_of(w.start)
    return EdgeWords(g, forest, comp, looped_mode).word_of_seq(w.seq)


# -- presentations -------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    basepoint: str

    def __post_init__(self):
        n = len(self.generators)
        for w in self.relators:
            for g, _ in w.letters:
                if not 0 <= g < n:
                    raise ValueError("relator mentions an undeclared generator")


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        return f"rank {self.rank}, torsion [{', '.join(map(str, self.torsion))}]"


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    width = len(p.generators)
    rows = [w.exponent_vector(width) for w in p.relators]
    rank, torsion = abelian_invariants_of(rows, width)
    return AbelianInvariants(rank, tuple(torsion))


def _closed_4_walks(g: Graph, component: frozenset[str]):
    """All closed 4-walks inside a component, in deterministic order."""
    for p in (v for v in g.vertices if v in component):
        for q in g.neighbors(p):
            for r in g.neighbors(q):
                for s in g.neighbors(r):
                    if g.adjacent(s, p):
                        yield (p, q, r, s, p)


def _dedupe_words(words: Iterable[Word]) -> tuple[Word, ...]:
    seen = set()
    out = []
    for w in words:
        if w.is_trivial() or w.letters in seen:
            continue
        seen.add(w.letters)
        out.append(w)
    return tuple(out)


def walk_group_presentation(g: Graph, v: str) -> Presentation:
    """Walk group of v's component: free on non-forest edges, except loop
    generators square to the identity."""
    if v not in g:
        raise ValueError(f"vertex {v!r} not in graph")
    forest = bfs_forest(g, v)
    table = EdgeWords(g, forest, g.component_of(v))
    relators = [
        Word(((i, 1), (i, 1)))
        for i, gen in enumerate(table.generators)
        if gen.is_loop
    ]
    return Presentation(table.generators, tuple(relators), v)


def diamond_relators(g: Graph, forest: SpanningForest, v: str) -> list[Word]:
    """Words of all closed 4-walks in v's component; trivial and duplicate
    words dropped."""
    comp = frozenset(g.component_of(v))
    table = EdgeWords(g, forest, comp)
    return list(_dedupe_words(table.word_of_seq(w) for w in _closed_4_walks(g, comp)))


def fundamental_group_presentation(g: Graph, v: str) -> Presentation:
    """Walk-group generators plus one relator per closed 4-walk."""
    base = walk_group_presentation(g, v)
    forest = bfs_forest(g, v)
    diamonds = diamond_relators(g, forest, v)
    return Presentation(base.generators, base.relators + tuple(diamonds), v)


def looped_diamond_walks(g: Graph, v: str) -> list[tuple[str, ...]]:
    """Closed 4-walks in the looped subgraph of v's component whose moved
    pair is adjacent: the relator walks of the looped presentation."""
    if v not in g or not g.is_looped(v):
        raise ValueError(f"vertex {v!r} must be a looped vertex of the graph")
    lg = g.subgraph(g.looped_vertices())
    comp = frozenset(lg.component_of(v))
    return [
        (p, q, r, s, p)
        for (p, q, r, s, _) in _closed_4_walks(lg, comp)
        if lg.adjacent(q, s)
    ]


def looped_presentation_core(g: Graph, v: str) -> Presentation:
    """Derived presentation of the looped fundamental group at a looped
    vertex: computed on the looped subgraph, loop edges contribute nothing,
    and diamonds additionally need their moved pair adjacent."""
    if v not in g:
        raise ValueError(f"vertex {v!r} not in graph")
    if not g.is_looped(v):
        raise ValueError(f"vertex {v!r} is not looped")
    lg = g.subgraph(g.looped_vertices())
    forest = bfs_forest(lg, v)
    comp = frozenset(lg.component_of(v))
    table = EdgeWords(lg, forest, comp, looped_mode=True)
    words = [table.word_of_seq(w) for w in looped_diamond_walks(g, v)]
    return Presentation(table.generators, _dedupe_words(words), v)


# -- abelianized component data (negative homotopy oracle) ---------------------


class AbelianizedComponent:
    """Abelianization of the (looped) fundamental group of one component,
    exposing canonical residues of walk words."""

    def __init__(self, graph: Graph, table: EdgeWords, relators: tuple[Word, ...]):
        self.graph = graph
        self.table = table
        width = len(table.generators)
        self.lattice = RowLattice([w.exponent_vector(width) for w in relators], width)

    def residue(self, seq: tuple[str, ...]) -> tuple[int, ...]:
        word = self.table.word_of_seq(seq)
        return self.lattice.residue(word.exponent_vector(len(self.table.generators)))

    def separates(self, seq_a: tuple[str, ...], seq_b: tuple[str, ...]):
        ra, rb = self.residue(seq_a), self.residue(seq_b)
        return ra != rb, ra, rb


@lru_cache(maxsize=256)
def abelianized_component(graph: Graph, root: str, looped: bool) -> AbelianizedComponent:
    if looped:
        pres = looped_presentation_core(graph, root)
        lg = graph.subgraph(graph.looped_vertices())
        forest = bfs_forest(lg, root)
        table = EdgeWords(lg, forest, lg.component_of(root), looped_mode=True)
        return AbelianizedComponent(lg, table, pres.relators)
    pres = fundamental_group_presentation(graph, root)
    forest = bfs_forest(graph, root)
    table = EdgeWords(graph, forest, graph.component_of(root))
    return AbelianizedComponent(graph, table, pres.relators)


def abelianized_for_walkseq(graph: Graph, start: str, looped: bool) -> AbelianizedComponent:
    """Cached abelianized data for the component containing `start`."""
    if looped:
        lg = graph.subgraph(graph.looped_vertices())
        root = lg.component_of(start)[0]
    else:
        root = graph.component_of(start)[0]
    return abelianized_component(graph, root, looped)


# -- van Kampen amalgamation -----------------------------------------------------


class CoverError(ValueError):
    """The two vertex sets do not form an admissible cover."""


class DiamondConditionError(CoverError):
    """A proper diamond lies in neither part."""

    def __init__(self, walk_seq: tuple[str, ...]):
        super().__init__(f"diamond {','.join(walk_seq)} lies in neither part")
        self.walk_seq = walk_seq


def _proper_diamonds(g: Graph):
    """Closed 4-walks realizing a genuine spider move: (p q r s p) with
    p != r and q != s.  Degenerate diamonds have trivial words and are
    irrelevant to amalgamation."""
    for p in g.vertices:
        for q in g.neighbors(p):
            for r in g.neighbors(q):
                if r == p:
                    continue
                for s in g.neighbors(r):
                    if s != q and g.adjacent(s, p):
                        yield (p, q, r, s, p)


def _intersection_generator_walks(sub: Graph, base: str) -> list[tuple[str, ...]]:
    """Closed walks at `base` realizing each fundamental-group generator of
    base's component in `sub` (non-forest edges, loops included)."""
    forest = bfs_forest(sub, base)
    comp = frozenset(sub.component_of(base))
    table = EdgeWords(sub, forest, comp)
    walks = []
    for gen in table.generators:
        u, v = gen.edge
        walks.append(forest.tree_seq(base, u) + (v,) + forest.tree_seq(v, base)[1:])
    return walks


def van_kampen_presentation(g: Graph, part1: Iterable[str], part2: Iterable[str], v: str) -> Presentation:
    """Amalgamated presentation of the fundamental group over a two-part
    vertex cover.

    Every proper diamond must lie inside one induced part.  Disconnected
    intersections are handled groupoid-style: each intersection component
    beyond the basepoint's contributes one connecting generator.
    """
    v1, v2 = set(part1), set(part2)
    for name, vs in (("part1", v1), ("part2", v2)):
        for u in vs:
            if u not in g:
                raise CoverError(f"{name} vertex {u!r} not in graph")
    if v1 | v2 != set(g.vertices):
        missing = sorted(set(g.vertices) - (v1 | v2))
        raise CoverError(f"parts do not cover the graph (missing {missing})")
    if v not in v1 & v2:
        raise CoverError(f"basepoint {v!r} must lie in both parts")
    for d in _proper_diamonds(g):
        verts = set(d)
        if not (verts <= v1 or verts <= v2):
            raise DiamondConditionError(d)
    g1, g2 = g.subgraph(v1), g.subgraph(v2)
    if not g1.is_connected() or not g2.is_connected():
        raise CoverError("both parts must induce connected subgraphs")
    inter = g.subgraph(v1 & v2)

    p1 = fundamental_group_presentation(g1, v)
    p2 = fundamental_group_presentation(g2, v)
    forest1, forest2 = bfs_forest(g1, v), bfs_forest(g2, v)
    table1 = EdgeWords(g1, forest1, g1.component_of(v))
    table2 = EdgeWords(g2, forest2, g2.component_of(v))

    n1, n2 = len(p1.generators), len(p2.generators)

    def shift(word: Word, offset: int) -> Word:
        return Word(tuple((i + offset, e) for i, e in word.letters))

    gens: list[Generator] = []
    gens.extend(Generator(f"e{i + 1}", gn.edge, gn.is_loop) for i, gn in enumerate(p1.generators))
    gens.extend(Generator(f"e{n1 + i + 1}", gn.edge, gn.is_loop) for i, gn in enumerate(p2.generators))
    relators: list[Word] = list(p1.relators) + [shift(w, n1) for w in p2.relators]

    # intersection components: basepoint's first, the rest by least vertex
    comps = list(inter.components())
    comps.sort(key=lambda c: (v not in c, g.index(c[0])))
    connecting: dict[int, Optional[int]] = {}
    for ci in range(1, len(comps)):
        connecting[ci] = n1 + n2 + (ci - 1)
        gens.append(Generator(f"t{ci + 1}", None))

    for ci, comp in enumerate(comps):
        base_c = v if v in comp else comp[0]
        gamma1 = forest1.tree_seq(v, base_c)
        gamma2 = forest2.tree_seq(v, base_c)
        t_idx = connecting.get(ci)
        for wseq in _intersection_generator_walks(inter, base_c):
            conj1 = gamma1 + wseq[1:] + gamma1[::-1][1:]
            conj2 = gamma2 + wseq[1:] + gamma2[::-1][1:]
            w1 = table1.word_of_seq(conj1)
            w2 = shift(table2.word_of_seq(conj2), n1)
            if t_idx is None:
                rel = w1 * w2.inverse()
            else:
                t = Word(((t_idx, 1),))
                rel = w1 * t * w2.inverse() * t.inverse()
            if not rel.is_trivial():
                relators.append(rel)

    return Presentation(tuple(gens), _dedupe_words(relators), v)

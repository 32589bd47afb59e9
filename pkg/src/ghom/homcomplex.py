"""Exponential graphs, the 2-skeleton of the multihomomorphism complex,
and the desk-scale comparison of its fundamental group against the looped
walk groupoid of the exponential graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as iproduct
from math import comb

from .errors import GuardExceeded
from .graphs import Graph
from .groupoid import (
    AbelianInvariants,
    Generator,
    Presentation,
    Word,
    abelian_invariants,
    free_reduce,
    looped_diamond_walks,
    looped_presentation_core,
)
from .homotopy import Verdict, walks_homotopic
from .walks import Walk

DEFAULT_CAP = 100_000


def exponential_graph(g: Graph, h: Graph, cap: int = DEFAULT_CAP) -> Graph:
    """All set maps V(g) -> V(h); f ~ f' iff x~y in g forces f(x) ~ f'(y).

    A vertex is looped exactly when its map is a graph morphism.  Tokens
    are the images in g's vertex order joined with '|'.
    """
    n, m = len(g.vertices), len(h.vertices)
    if m ** n > cap:
        raise GuardExceeded(f"exponential graph would have {m}**{n} vertices (cap {cap})")
    maps = list(iproduct(h.vertices, repeat=n))
    tokens = ["|".join(f) for f in maps]
    gidx = {v: i for i, v in enumerate(g.vertices)}
    gedges = [(gidx[u], gidx[v]) for (u, v) in g.edges]

    def linked(f1, f2) -> bool:
        for (xi, yi) in gedges:
            if not h.adjacent(f1[xi], f2[yi]):
                return False
            if xi != yi and not h.adjacent(f1[yi], f2[xi]):
                return False
        return True

    edges = []
    for i, f1 in enumerate(maps):
        for j in range(i, len(maps)):
            if linked(f1, maps[j]):
                edges.append((tokens[i], tokens[j]))
    return Graph(tokens, edges)


# -- multihom cells -------------------------------------------------------------


@dataclass(frozen=True)
class Multihom:
    """Set-valued assignment indexed by the source graph's vertex order."""

    assignment: tuple[tuple[str, ...], ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.assignment)

    def dimension_profile(self) -> tuple[int, ...]:
        return tuple(sorted((n for n in self.sizes() if n > 1), reverse=True))

    def token(self) -> str:
        """0-cells only: the exponential-graph vertex this morphism names."""
        return "|".join(s[0] for s in self.assignment)


def _valid_multihom(g: Graph, h: Graph, assignment: tuple[tuple[str, ...], ...]) -> bool:
    gidx = {v: i for i, v in enumerate(g.vertices)}
    for (x, y) in g.edges:
        for a in assignment[gidx[x]]:
            for b in assignment[gidx[y]]:
                if not h.adjacent(a, b):
                    return False
    return True


@dataclass(frozen=True)
class Complex2:
    """0/1/2-skeleton of the multihom complex Hom(source, target)."""

    source: Graph = field(repr=False)
    target: Graph = field(repr=False)
    cells0: tuple[Multihom, ...]
    cells1: tuple[Multihom, ...]
    cells2: tuple[Multihom, ...]
    boundary: dict[Multihom, tuple[Multihom, ...]] = field(repr=False)


def hom_complex_2skeleton(g: Graph, h: Graph, cap: int = DEFAULT_CAP) -> Complex2:
    """Enumerate every multihom whose image-size profile is a 0-, 1- or
    2-cell, with boundaries by assignment inclusion."""
    n, m = len(g.vertices), len(h.vertices)
    if n == 0:
        raise ValueError("source graph has no vertices")
    total = m ** n
    total += n * comb(m, 2) * m ** (n - 1)
    total += n * comb(m, 3) * m ** (n - 1)
    total += comb(n, 2) * comb(m, 2) ** 2 * (m ** (n - 2) if n >= 2 else 0)
    if total > cap:
        raise GuardExceeded(f"hom complex enumeration needs {total} candidates (cap {cap})")

    hidx = {v: i for i, v in enumerate(h.vertices)}

    def sort_set(vs) -> tuple[str, ...]:
        return tuple(sorted(vs, key=hidx.__getitem__))

    singles = [(v,) for v in h.vertices]
    doubles = [sort_set(p) for p in combinations(h.vertices, 2)]
    triples = [sort_set(p) for p in combinations(h.vertices, 3)]

    def cells_with(big_positions: list[tuple[int, tuple[str, ...]]]) -> list[Multihom]:
        """All valid multihoms with the given oversized coordinates and
        singletons elsewhere."""
        fixed = dict(big_positions)
        free_positions = [i for i in range(n) if i not in fixed]
        out = []
        for images in iproduct(h.vertices, repeat=len(free_positions)):
            assignment: list[tuple[str, ...]] = [()] * n
            for i, s in fixed.items():
                assignment[i] = s
            for i, v in zip(free_positions, images):
                assignment[i] = (v,)
            tup = tuple(assignment)
            if _valid_multihom(g, h, tup):
                out.append(Multihom(tup))
        return out

    cells0 = cells_with([])
    cells1 = []
    for i in range(n):
        for d in doubles:
            cells1.extend(cells_with([(i, d)]))
    cells2 = []
    for i in range(n):
        for t in triples:
            cells2.extend(cells_with([(i, t)]))
    for i, j in combinations(range(n), 2):
        for d1 in doubles:
            for d2 in doubles:
                cells2.extend(cells_with([(i, d1), (j, d2)]))

    def restrict(cell: Multihom, pos: int, keep: tuple[str, ...]) -> Multihom:
        a = list(cell.assignment)
        a[pos] = keep
        return Multihom(tuple(a))

    boundary: dict[Multihom, tuple[Multihom, ...]] = {}
    for c in cells0:
        boundary[c] = ()
    for c in cells1:
        pos = next(i for i, s in enumerate(c.assignment) if len(s) == 2)
        a, b = c.assignment[pos]
        boundary[c] = (restrict(c, pos, (a,)), restrict(c, pos, (b,)))
    for c in cells2:
        sizes = c.sizes()
        if 3 in sizes:
            pos = sizes.index(3)
            trip = c.assignment[pos]
            faces = tuple(restrict(c, pos, sort_set(pair)) for pair in combinations(trip, 2))
        else:
            i, j = [k for k, s in enumerate(sizes) if s == 2]
            faces = (
                restrict(c, i, (c.assignment[i][0],)),
                restrict(c, i, (c.assignment[i][1],)),
                restrict(c, j, (c.assignment[j][0],)),
                restrict(c, j, (c.assignment[j][1],)),
            )
        boundary[c] = faces
    return Complex2(g, h, tuple(cells0), tuple(cells1), tuple(cells2), boundary)


# -- edge-path group of the 2-skeleton ----------------------------------------------


def _skeleton_components(c: Complex2) -> list[list[Multihom]]:
    adj: dict[Multihom, list[Multihom]] = {v: [] for v in c.cells0}
    for e in c.cells1:
        a, b = c.boundary[e]
        adj[a].append(b)
        adj[b].append(a)
    comps = []
    seen: set[Multihom] = set()
    for v in c.cells0:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        nxt.append(w)
            frontier = nxt
        comps.append(comp)
    return comps


def edge_path_presentation(c: Complex2, base: Multihom) -> Presentation:
    """Combinatorial fundamental group of base's component: generators are
    non-tree 1-cells, relators are 2-cell boundary words (tree letters
    dropped)."""
    if base not in c.boundary or any(len(s) != 1 for s in base.assignment):
        raise ValueError("base must be a 0-cell of the complex")

    comp = None
    for comp_cells in _skeleton_components(c):
        if base in comp_cells:
            comp = set(comp_cells)
            break
    assert comp is not None

    edges_in = [e for e in c.cells1 if c.boundary[e][0] in comp]
    # BFS tree over 0-cells along 1-cells, in enumeration order
    tree_edges: set[Multihom] = set()
    reached = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for v in frontier:
            for e in edges_in:
                if e in tree_edges:
                    continue
                a, b = c.boundary[e]
                if a == v and b not in reached:
                    other = b
                elif b == v and a not in reached:
                    other = a
                else:
                    continue
                tree_edges.add(e)
                reached.add(other)
                nxt.append(other)
        frontier = nxt

    gens_cells = [e for e in edges_in if e not in tree_edges]
    gens = tuple(Generator(f"e{i + 1}", None) for i in range(len(gens_cells)))
    gen_index = {e: i for i, e in enumerate(gens_cells)}

    directed: dict[tuple[Multihom, Multihom], list[tuple[Multihom, int]]] = {}
    for e in edges_in:
        a, b = c.boundary[e]
        directed.setdefault((a, b), []).append((e, 1))
        directed.setdefault((b, a), []).append((e, -1))

    def cycle_word(corners: list[Multihom], faces: tuple[Multihom, ...]) -> Word:
        letters = []
        face_set = set(faces)
        for a, b in zip(corners, corners[1:] + corners[:1]):
            options = [(e, s) for (e, s) in directed.get((a, b), []) if e in face_set]
            if not options:
                raise ValueError("2-cell boundary is not a cycle of its faces")
            e, s = options[0]
            if e in gen_index:
                letters.append((gen_index[e], s))
        return Word(free_reduce(letters))

    relators = []
    for cell in c.cells2:
        faces = c.boundary[cell]
        if c.boundary[faces[0]][0] not in comp:
            continue
        sizes = cell.sizes()
        if 3 in sizes:
            pos = sizes.index(3)
            corners = [Multihom(cell.assignment[:pos] + ((v,),) + cell.assignment[pos + 1:])
                       for v in cell.assignment[pos]]
        else:
            i, j = [k for k, s in enumerate(sizes) if s == 2]
            (y1, y2), (z1, z2) = cell.assignment[i], cell.assignment[j]

            def corner(y, z):
                a = list(cell.assignment)
                a[i], a[j] = (y,), (z,)
                return Multihom(tuple(a))

            corners = [corner(y1, z1), corner(y2, z1), corner(y2, z2), corner(y1, z2)]
        w = cycle_word(corners, faces)
        if not w.is_trivial() and w.letters not in {r.letters for r in relators}:
            relators.append(w)
    return Presentation(gens, tuple(relators), base.token())


def looped_presentation(g: Graph, v: str) -> Presentation:
    """Presentation of the looped fundamental group at a looped vertex."""
    return looped_presentation_core(g, v)


# -- desk-scale comparison -------------------------------------------------------------


@dataclass(frozen=True)
class ComponentComparison:
    representative: str
    looped_invariants: AbelianInvariants
    complex_invariants: AbelianInvariants

    @property
    def matches(self) -> bool:
        return self.looped_invariants == self.complex_invariants


@dataclass(frozen=True)
class HomComparisonReport:
    components_match: bool
    comparisons: tuple[ComponentComparison, ...]
    looped_component_count: int
    complex_component_count: int
    uncertified_relators: tuple[tuple[str, ...], ...] = ()

    @property
    def passed(self) -> bool:
        return (
            self.components_match
            and all(c.matches for c in self.comparisons)
            and not self.uncertified_relators
        )


def compare_thm66(
    g: Graph,
    h: Graph,
    max_len: int = 8,
    cap: int = DEFAULT_CAP,
    certify_relators: bool = True,
) -> HomComparisonReport:
    """Compare, component by component, the looped walk groupoid of the
    exponential graph against the edge-path group of the multihom complex:
    component sets must biject and abelian invariants must agree.

    With certify_relators, every looped relator walk must additionally be
    certified null-homotopic by the looped search within max_len — the
    cross-check that the derived relator scheme never overshoots.
    """
    k = exponential_graph(g, h, cap=cap)
    delta = hom_complex_2skeleton(g, h, cap=cap)

    looped_sub = k.subgraph(k.looped_vertices())
    looped_comps = [frozenset(comp) for comp in looped_sub.components()]
    delta_comps = [frozenset(c.token() for c in comp) for comp in _skeleton_components(delta)]
    components_match = set(looped_comps) == set(delta_comps)

    cell0_by_token = {c.token(): c for c in delta.cells0}
    comparisons = []
    uncertified = []
    if components_match:
        for comp in sorted(looped_comps, key=lambda c: min(c)):
            root = min(comp, key=looped_sub.index)
            lp = looped_presentation(k, root)
            ep = edge_path_presentation(delta, cell0_by_token[root])
            comparisons.append(
                ComponentComparison(root, abelian_invariants(lp), abelian_invariants(ep))
            )
            if certify_relators:
                for seq in looped_diamond_walks(k, root):
                    d = walks_homotopic(
                        Walk(k, seq),
                        Walk(k, (seq[0],)),
                        looped_mode=True,
                        max_len=max(max_len, len(seq) - 1),
                    )
                    if d.verdict is not Verdict.EQUAL:
                        uncertified.append(seq)
    return HomComparisonReport(
        components_match,
        tuple(comparisons),
        len(looped_comps),
        len(delta_comps),
        tuple(uncertified),
    )

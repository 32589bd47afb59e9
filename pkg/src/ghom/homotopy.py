"""Homotopy decisions for walks and morphisms, with replayable certificates.

Equality of homotopy classes has no known decision procedure here, so the
verdict is three-valued: Equal comes with a move-by-move certificate from a
bounded bidirectional search, Distinct comes from an independently
recomputable separating invariant (endpoints, parity, or abelianized image),
and everything else is an honest Unknown carrying the exhausted bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .graphs import Graph, Morphism, check_morphism, identity_morphism
from .groupoid import abelianized_for_walkseq
from .walks import Walk

DEFAULT_MAX_STATES = 200_000
DEFAULT_EXTENSION = 6  # default max_len headroom over the longer input


class Verdict(str, Enum):
    EQUAL = "Equal"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


# -- certificate steps ---------------------------------------------------------


@dataclass(frozen=True)
class SpiderStep:
    """Replace the vertex at an interior position."""

    position: int
    old: str
    new: str


@dataclass(frozen=True)
class PruneStep:
    position: int


@dataclass(frozen=True)
class UnpruneStep:
    """Insert the backtrack (seq[pos], via) before position pos."""

    position: int
    via: str


@dataclass(frozen=True)
class LPruneStep:
    position: int


@dataclass(frozen=True)
class LUnpruneStep:
    position: int


@dataclass(frozen=True)
class MorphismSpiderStep:
    vertex: str
    old: str
    new: str


WalkStep = Union[SpiderStep, PruneStep, UnpruneStep, LPruneStep, LUnpruneStep]


@dataclass(frozen=True)
class Separation:
    """A Distinct certificate: a named invariant with the two values."""

    invariant: str
    left: object
    right: object


@dataclass(frozen=True)
class Exhaustion:
    """An Unknown certificate: the bounds the search ran out of."""

    states_explored: int
    max_len: Optional[int]
    max_states: int


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    certificate: Union[tuple, Separation, Exhaustion]

    @property
    def is_equal(self) -> bool:
        return self.verdict is Verdict.EQUAL


# -- walk moves ------------------------------------------------------------------


def apply_walk_step(graph: Graph, seq: tuple[str, ...], step: WalkStep, looped_mode: bool = False) -> tuple[str, ...]:
    """Apply one certificate step, validating its side conditions."""
    n = len(seq) - 1
    if isinstance(step, SpiderStep):
        i = step.position
        if not 0 < i < n:
            raise ValueError(f"spider position {i} is not interior")
        if seq[i] != step.old:
            raise ValueError(f"spider step expects {step.old!r} at {i}, found {seq[i]!r}")
        if step.new == step.old:
            raise ValueError("spider step must change the vertex")
        if not (graph.adjacent(step.new, seq[i - 1]) and graph.adjacent(step.new, seq[i + 1])):
            raise ValueError("spider replacement not adjacent to both neighbors")
        if looped_mode and not (graph.is_looped(step.new) and graph.adjacent(step.old, step.new)):
            raise ValueError("looped spider move needs old~new with a looped target")
        return seq[:i] + (step.new,) + seq[i + 1:]
    if isinstance(step, PruneStep):
        i = step.position
        if not (0 <= i <= n - 2 and seq[i] == seq[i + 2]):
            raise ValueError(f"no prune applies at {i}")
        return seq[:i] + seq[i + 2:]
    if isinstance(step, UnpruneStep):
        i = step.position
        if not 0 <= i <= n:
            raise ValueError(f"unprune position {i} out of range")
        if not graph.adjacent(seq[i], step.via):
            raise ValueError("unprune via-vertex not adjacent")
        if looped_mode and not graph.is_looped(step.via):
            raise ValueError("looped unprune needs a looped via-vertex")
        return seq[:i] + (seq[i], step.via) + seq[i:]
    if isinstance(step, LPruneStep):
        if not looped_mode:
            raise ValueError("l-prune outside looped mode")
        i = step.position
        if not (0 <= i <= n - 1 and seq[i] == seq[i + 1]):
            raise ValueError(f"no l-prune applies at {i}")
        return seq[:i] + seq[i + 1:]
    if isinstance(step, LUnpruneStep):
        if not looped_mode:
            raise ValueError("l-unprune outside looped mode")
        i = step.position
        if not 0 <= i <= n:
            raise ValueError(f"l-unprune position {i} out of range")
        return seq[:i] + (seq[i],) + seq[i:]
    raise TypeError(f"not a walk step: {step!r}")


def invert_walk_step(step: WalkStep, parent_seq: tuple[str, ...]) -> WalkStep:
    """Step undoing `step`, as applied from the step's result."""
    if isinstance(step, SpiderStep):
        return SpiderStep(step.position, step.new, step.old)
    if isinstance(step, PruneStep):
        return UnpruneStep(step.position, parent_seq[step.position + 1])
    if isinstance(step, UnpruneStep):
        return PruneStep(step.position)
    if isinstance(step, LPruneStep):
        return LUnpruneStep(step.position)
    if isinstance(step, LUnpruneStep):
        return LPruneStep(step.position)
    raise TypeError(f"not a walk step: {step!r}")


def walk_step_successors(
    graph: Graph,
    seq: tuple[str, ...],
    looped_mode: bool,
    max_len: int,
) -> list[tuple[WalkStep, tuple[str, ...]]]:
    """All one-move neighbors of a walk state, in deterministic order."""
    n = len(seq) - 1
    out: list[tuple[WalkStep, tuple[str, ...]]] = []
    for i in range(n - 1):
        if seq[i] == seq[i + 2]:
            out.append((PruneStep(i), seq[:i] + seq[i + 2:]))
    if looped_mode:
        for i in range(n):
            if seq[i] == seq[i + 1]:
                out.append((LPruneStep(i), seq[:i] + seq[i + 1:]))
    for i in range(1, n):
        prev_v, cur, next_v = seq[i - 1], seq[i], seq[i + 1]
        for x in graph.neighbors(prev_v):
            if x == cur or not graph.adjacent(x, next_v):
                continue
            if looped_mode and not (graph.is_looped(x) and graph.adjacent(cur, x)):
                continue
            out.append((SpiderStep(i, cur, x), seq[:i] + (x,) + seq[i + 1:]))
    if n + 2 <= max_len:
        for i in range(n + 1):
            for x in graph.neighbors(seq[i]):
                if looped_mode and not graph.is_looped(x):
                    continue
                out.append((UnpruneStep(i, x), seq[:i] + (seq[i], x) + seq[i:]))
    if looped_mode and n + 1 <= max_len:
        for i in range(n + 1):
            out.append((LUnpruneStep(i), seq[:i] + (seq[i],) + seq[i:]))
    return out


def spider_successors(w: Walk, looped_mode: bool = False) -> list[tuple[SpiderStep, Walk]]:
    """All walks one interior spider move away, by position then vertex order."""
    if looped_mode and not w.is_looped_walk():
        raise ValueError("looped mode requires a looped walk")
    out = []
    for step, seq in walk_step_successors(w.graph, w.seq, looped_mode, max_len=w.length):
        if isinstance(step, SpiderStep):
            out.append((step, Walk(w.graph, seq)))
    return out


def replay_walk_certificate(a: Walk, steps, looped_mode: bool = False) -> Walk:
    """Apply an Equal certificate; every intermediate must be a valid walk."""
    seq = a.seq
    for step in steps:
        seq = apply_walk_step(a.graph, seq, step, looped_mode)
        Walk(a.graph, seq)
    return Walk(a.graph, seq)


# -- bidirectional search ---------------------------------------------------------


def _assemble(meet, seen_a, seen_b):
    forward = []
    cur = meet
    while seen_a[cur] is not None:
        parent, step = seen_a[cur]
        forward.append(step)
        cur = parent
    forward.reverse()
    backward = []
    cur = meet
    while seen_b[cur] is not None:
        parent, step = seen_b[cur]
        backward.append(invert_walk_step(step, parent))
        cur = parent
    return tuple(forward + backward)


def _bidirectional_search(successors, start, goal, max_states):
    """Generic meet-in-the-middle BFS; returns (certificate, explored) or
    (None, explored)."""
    if start == goal:
        return (), 0
    seen_a = {start: None}
    seen_b = {goal: None}
    front_a, front_b = [start], [goal]
    while front_a and front_b:
        if len(front_a) <= len(front_b):
            front, seen, other = front_a, seen_a, seen_b
            expanding_a = True
        else:
            front, seen, other = front_b, seen_b, seen_a
            expanding_a = False
        nxt = []
        for state in front:
            for step, ns in successors(state):
                if ns in seen:
                    continue
                seen[ns] = (state, step)
                if ns in other:
                    cert = _assemble(ns, seen_a, seen_b)
                    return cert, len(seen_a) + len(seen_b)
                nxt.append(ns)
                if len(seen_a) + len(seen_b) > max_states:
                    return None, len(seen_a) + len(seen_b)
        if expanding_a:
            front_a = nxt
        else:
            front_b = nxt
    return None, len(seen_a) + len(seen_b)


# -- walk homotopy ------------------------------------------------------------------


def walks_homotopic(
    a: Walk,
    b: Walk,
    looped_mode: bool = False,
    max_len: Optional[int] = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> Decision:
    """Decide homotopy rel endpoints of two walks.

    Equal and Distinct verdicts are definitive; Unknown means the bounded
    search gave out.
    """
    if a.graph != b.graph:
        raise ValueError("walks live in different graphs")
    if looped_mode and not (a.is_looped_walk() and b.is_looped_walk()):
        raise ValueError("looped mode requires looped walks")
    if max_states < 1:
        raise ValueError("max_states must be positive")
    longest = max(a.length, b.length)
    if max_len is None:
        max_len = longest + DEFAULT_EXTENSION
    if max_len < longest:
        raise ValueError(f"max_len {max_len} below the longer input ({longest})")

    if (a.start, a.end) != (b.start, b.end):
        return Decision(
            Verdict.DISTINCT,
            Separation("endpoint mismatch", (a.start, a.end), (b.start, b.end)),
        )
    if not looped_mode and a.parity() != b.parity():
        return Decision(
            Verdict.DISTINCT, Separation("parity mismatch", a.parity(), b.parity())
        )
    ab = abelianized_for_walkseq(a.graph, a.start, looped_mode)
    separated, res_a, res_b = ab.separates(a.seq, b.seq)
    if separated:
        return Decision(
            Verdict.DISTINCT,
            Separation("abelianization image mismatch", res_a, res_b),
        )

    graph = a.graph

    def successors(seq):
        return walk_step_successors(graph, seq, looped_mode, max_len)

    cert, explored = _bidirectional_search(successors, a.seq, b.seq, max_states)
    if cert is not None:
        return Decision(Verdict.EQUAL, cert)
    return Decision(Verdict.UNKNOWN, Exhaustion(explored, max_len, max_states))


# -- morphism homotopy ----------------------------------------------------------------


def _morphism_successors(source: Graph, target: Graph, state: tuple[str, ...]):
    out = []
    for xi, x in enumerate(source.vertices):
        old = state[xi]
        looped = source.is_looped(x)
        for y in target.vertices:
            if y == old:
                continue
            ok = True
            for w in source.neighbors(x):
                if w == x:
                    if not target.adjacent(y, y):
                        ok = False
                        break
                elif not target.adjacent(y, state[source.index(w)]):
                    ok = False
                    break
            if ok and looped and not target.adjacent(old, y):
                ok = False
            if ok:
                out.append((MorphismSpiderStep(x, old, y), state[:xi] + (y,) + state[xi + 1:]))
    return out


def apply_morphism_step(f: Morphism, step: MorphismSpiderStep) -> Morphism:
    if f.mapping[step.vertex] != step.old:
        raise ValueError("morphism step does not match the current map")
    mapping = dict(f.mapping)
    mapping[step.vertex] = step.new
    g = Morphism(f.source, f.target, mapping)
    if not check_morphism(g):
        raise ValueError("morphism step leaves the morphism space")
    if f.source.is_looped(step.vertex) and not f.target.adjacent(step.old, step.new):
        raise ValueError("spider move at a looped vertex needs adjacent images")
    return g


def replay_morphism_certificate(f: Morphism, steps) -> Morphism:
    cur = f
    for step in steps:
        cur = apply_morphism_step(cur, step)
    return cur


def morphisms_homotopic(f: Morphism, g: Morphism, max_steps: int = DEFAULT_MAX_STATES) -> Decision:
    """Decide homotopy of two morphisms by spider-move search.

    The morphism space is finite, so a fully explored closure that misses
    the other map is a definitive Distinct.
    """
    if f.source != g.source or f.target != g.target:
        raise ValueError("morphisms must share source and target")
    if not (check_morphism(f) and check_morphism(g)):
        raise ValueError("both maps must be graph morphisms")
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    source, target = f.source, f.target
    fs, gs = f.image_tuple(), g.image_tuple()
    if fs == gs:
        return Decision(Verdict.EQUAL, ())

    loopless = not any(source.is_looped(v) for v in source.vertices)
    if source.is_connected() and loopless and source.edge_count() > 0:
        comp_f = target.component_of(fs[0])[0]
        comp_g = target.component_of(gs[0])[0]
        if comp_f != comp_g:
            return Decision(
                Verdict.DISTINCT,
                Separation("image component mismatch", comp_f, comp_g),
            )

    seen_a = {fs: None}
    seen_b = {gs: None}
    front_a, front_b = [fs], [gs]
    while True:
        if not front_a or not front_b:
            return Decision(
                Verdict.DISTINCT,
                Separation("spider closure disjoint", len(seen_a), len(seen_b)),
            )
        if len(front_a) <= len(front_b):
            front, seen, other, expanding_a = front_a, seen_a, seen_b, True
        else:
            front, seen, other, expanding_a = front_b, seen_b, seen_a, False
        nxt = []
        for state in front:
            for step, ns in _morphism_successors(source, target, state):
                if ns in seen:
                    continue
                seen[ns] = (state, step)
                if ns in other:
                    forward = []
                    cur = ns
                    while seen_a[cur] is not None:
                        parent, st = seen_a[cur]
                        forward.append(st)
                        cur = parent
                    forward.reverse()
                    backward = []
                    cur = ns
                    while seen_b[cur] is not None:
                        parent, st = seen_b[cur]
                        backward.append(MorphismSpiderStep(st.vertex, st.new, st.old))
                        cur = parent
                    return Decision(Verdict.EQUAL, tuple(forward + backward))
                nxt.append(ns)
                if len(seen_a) + len(seen_b) > max_steps:
                    return Decision(
                        Verdict.UNKNOWN,
                        Exhaustion(len(seen_a) + len(seen_b), None, max_steps),
                    )
        if expanding_a:
            front_a = nxt
        else:
            front_b = nxt


# -- folds and stiff reduction -----------------------------------------------------


def foldable_pairs(g: Graph) -> list[tuple[str, str]]:
    """All (x, u) with N(x) contained in N(u): folding x onto u forms a
    spider pair with the identity.  Loop-inclusive neighborhoods make the
    looped side conditions automatic."""
    out = []
    for x in g.vertices:
        nx = set(g.neighbors(x))
        for u in g.vertices:
            if u != x and nx <= set(g.neighbors(u)):
                out.append((x, u))
    return out


def find_fold(g: Graph) -> Optional[tuple[Morphism, str]]:
    """Deterministic first fold (least foldable x, least replacement), or
    None when the graph is stiff."""
    for x in g.vertices:
        nx = set(g.neighbors(x))
        for u in g.vertices:
            if u != x and nx <= set(g.neighbors(u)):
                mapping = {v: v for v in g.vertices}
                mapping[x] = u
                return Morphism(g, g, mapping), x
    return None


def is_stiff(g: Graph) -> bool:
    return find_fold(g) is None


def stiff_reduce(g: Graph) -> tuple[Graph, list[Morphism]]:
    """Fold until stiff; returns the stiff graph and the fold sequence,
    each fold restricted to its image."""
    folds: list[Morphism] = []
    cur = g
    while True:
        found = find_fold(cur)
        if found is None:
            return cur, folds
        self_fold, x = found
        image = cur.subgraph([v for v in cur.vertices if v != x])
        folds.append(Morphism(cur, image, dict(self_fold.mapping)))
        cur = image


def fold_composite(g: Graph, folds: list[Morphism]) -> Morphism:
    """Composite homotopy-equivalence witness G -> stiff(G)."""
    composite = identity_morphism(g)
    for f in folds:
        composite = Morphism(g, f.target, {v: f.mapping[composite.mapping[v]] for v in g.vertices})
    return composite

import random

import pytest

from ghom import Graph, parse_graph


EXAMPLE42 = """\
vertex a
vertex b
vertex c
vertex d
vertex e
edge d a
edge a c
edge c e
edge e d
edge c b
"""

WHEEL = """\
vertex a
vertex b
vertex c
vertex d
vertex e
vertex x
edge a b
edge b c
edge c d
edge d e
edge e a
edge x a
edge x b
edge x c
edge x d
edge x e
"""

LOOPED_SQUARE = """\
vertex a loop
vertex b loop
vertex c loop
vertex d loop
edge a b
edge b c
edge c d
edge d a
"""

LOOPED_K2 = """\
vertex a loop
vertex b loop
edge a b
"""


@pytest.fixture
def example42():
    """4-cycle d-a-c-e with pendant edge c-b: the walk-homotopy workhorse."""
    return parse_graph(EXAMPLE42)


@pytest.fixture
def wheel():
    """5-cycle a..e plus hub x."""
    return parse_graph(WHEEL)


@pytest.fixture
def looped_square():
    return parse_graph(LOOPED_SQUARE)


@pytest.fixture
def looped_k2():
    return parse_graph(LOOPED_K2)


def random_graph(rng: random.Random, n: int, p: float = 0.45, loops: bool = False,
                 no_isolated: bool = False) -> Graph:
    """Seeded random graph on vertices v0..v{n-1}."""
    vs = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((vs[i], vs[j]))
    if loops:
        edges.extend((v, v) for v in vs)
    if no_isolated:
        have = {u for e in edges for u in e if e[0] != e[1]}
        for i, v in enumerate(vs):
            if v not in have and n > 1:
                other = vs[(i + 1) % n]
                edges.append((v, other))
                have.update((v, other))
    return Graph(vs, edges)


def random_walk_seq(rng: random.Random, g: Graph, max_len: int) -> tuple[str, ...]:
    """Seeded random walk; stops early at vertices with no neighbors."""
    v = rng.choice(g.vertices)
    seq = [v]
    for _ in range(rng.randint(0, max_len)):
        nbrs = g.neighbors(seq[-1])
        if not nbrs:
            break
        seq.append(rng.choice(nbrs))
    return tuple(seq)

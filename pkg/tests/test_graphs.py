import itertools
import random

import pytest

from ghom import (
    Graph,
    GraphFormatError,
    GuardExceeded,
    Morphism,
    check_morphism,
    compose,
    cycle_graph,
    find_isomorphism,
    identity_morphism,
    parse_graph,
    path_graph,
    product,
    serialize,
    terminal_graph,
)
from conftest import random_graph


def test_parse_k2():
    g = parse_graph("vertex a\nvertex b\nedge a b")
    assert g.vertices == ("a", "b")
    assert g.edges == frozenset({("a", "b")})


def test_parse_terminal():
    g = parse_graph("vertex v loop")
    assert g.vertices == ("v",)
    assert g.edges == frozenset({("v", "v")})
    assert g.is_looped("v")


def test_parse_undeclared_vertex_is_error():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("edge a b")
    assert "line 1" in str(exc.value)


def test_parse_duplicate_vertex_reports_line():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("vertex a\nvertex a")
    assert "line 2" in str(exc.value)


def test_parse_malformed_line():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("vertex a\nfrobnicate a b")
    assert exc.value.line == 2


def test_parse_loop_via_edge_line():
    g = parse_graph("vertex v\nedge v v")
    assert g.is_looped("v")


def test_comments_and_blanks_ignored():
    g = parse_graph("# a comment\n\nvertex a\n  \nvertex b\nedge a b\n")
    assert len(g.edges) == 1


def test_serialize_roundtrip_exact(example42, wheel, looped_square):
    for g in (example42, wheel, looped_square, terminal_graph(), path_graph(0)):
        assert parse_graph(serialize(g)) == g


def test_roundtrip_preserves_declaration_order():
    g = parse_graph("vertex z\nvertex a\nedge z a")
    assert parse_graph(serialize(g)).vertices == ("z", "a")


def test_path_graph_degenerate():
    g = path_graph(0)
    assert g.vertices == ("0",) and not g.edges


def test_path_graph_p2():
    g = path_graph(2)
    assert g.vertices == ("0", "1", "2")
    assert g.edges == frozenset({("0", "1"), ("1", "2")})


def test_path_graph_looped_interval():
    g = path_graph(1, looped=True)
    assert g.edges == frozenset({("0", "1"), ("0", "0"), ("1", "1")})
    assert g.is_looped("0") and g.is_looped("1")


def test_path_graph_negative():
    with pytest.raises(ValueError):
        path_graph(-1)


def brute_force_product_edges(g, h):
    # oracle: enumerate every vertex pair against the definition
    out = set()
    for v1, w1 in itertools.product(g.vertices, h.vertices):
        for v2, w2 in itertools.product(g.vertices, h.vertices):
            if g.adjacent(v1, v2) and h.adjacent(w1, w2):
                a, b = f"{v1}|{w1}", f"{v2}|{w2}"
                out.add((a, b) if a <= b else (b, a))
    return out


def test_product_k2_k2_is_two_disjoint_edges():
    k2 = path_graph(1)
    p = product(k2, k2)
    assert len(p.vertices) == 4
    assert p.edges == frozenset({("0|0", "1|1"), ("0|1", "1|0")})
    assert {frozenset(e) for e in p.edges} == {frozenset(e) for e in brute_force_product_edges(k2, k2)}


def test_product_p2_k2_matches_worked_example():
    p = product(path_graph(2), path_graph(1))
    assert p.edges == frozenset(
        {("0|0", "1|1"), ("1|1", "2|0"), ("0|1", "1|0"), ("1|0", "2|1")}
    )


def test_product_with_terminal_is_identity_shape(example42):
    p = product(example42, terminal_graph())
    relabel = {f"{v}|v": v for v in example42.vertices}
    assert [relabel[v] for v in p.vertices] == list(example42.vertices)
    assert {(relabel[u], relabel[v]) for (u, v) in p.edges} == set(example42.edges)


def test_product_matches_oracle_on_random_graphs():
    rng = random.Random(7)
    for _ in range(10):
        g = random_graph(rng, rng.randint(1, 4), loops=rng.random() < 0.5)
        h = random_graph(rng, rng.randint(1, 4), loops=rng.random() < 0.5)
        p = product(g, h)
        assert {frozenset(e) for e in p.edges} == {
            frozenset(e) for e in brute_force_product_edges(g, h)
        }


def test_product_symmetry_via_isomorphism():
    rng = random.Random(11)
    for _ in range(5):
        g = random_graph(rng, 3)
        h = random_graph(rng, 3, loops=True)
        assert find_isomorphism(product(g, h), product(h, g), cap=12) is not None


def test_check_morphism_identity(example42):
    assert check_morphism(identity_morphism(example42))


def test_check_morphism_constant_onto_unlooped_vertex_fails():
    c5 = cycle_graph(5)
    const = Morphism(c5, c5, {v: "0" for v in c5.vertices})
    assert not check_morphism(const)


def test_check_morphism_fold_onto_neighbor_of_pendant(example42):
    fold = Morphism(example42, example42, {"a": "a", "b": "a", "c": "c", "d": "d", "e": "e"})
    assert check_morphism(fold)


def test_check_morphism_b_to_d_is_not_a_morphism(example42):
    # c~b must map to c~d, but c and d are opposite corners of the square
    bad = Morphism(example42, example42, {"a": "a", "b": "d", "c": "c", "d": "d", "e": "e"})
    assert not check_morphism(bad)


def test_check_morphism_requires_total_map():
    k2 = path_graph(1)
    with pytest.raises(ValueError):
        check_morphism(Morphism(k2, k2, {"0": "0"}))


def test_check_morphism_loop_preservation():
    t = terminal_graph()
    k2 = path_graph(1)
    assert not check_morphism(Morphism(t, k2, {"v": "0"}))


def test_composition_closure():
    rng = random.Random(23)
    for _ in range(20):
        g = random_graph(rng, 4, no_isolated=True)
        h = random_graph(rng, 4, loops=True)
        maps_gh = [
            Morphism(g, h, dict(zip(g.vertices, images)))
            for images in itertools.product(h.vertices, repeat=4)
        ]
        good = [m for m in maps_gh if check_morphism(m)][:3]
        idm = identity_morphism(h)
        for m in good:
            assert check_morphism(compose(m, idm))


def test_find_isomorphism_relabel():
    k2 = path_graph(1)
    other = parse_graph("vertex p\nvertex q\nedge p q")
    iso = find_isomorphism(k2, other)
    assert iso is not None and iso.mapping == {"0": "p", "1": "q"}


def test_find_isomorphism_distinguishes_c5_p4():
    assert find_isomorphism(cycle_graph(5), path_graph(4)) is None


def test_find_isomorphism_two_k2_vs_product():
    two_k2 = Graph(["p", "q", "r", "s"], [("p", "q"), ("r", "s")])
    iso = find_isomorphism(two_k2, product(path_graph(1), path_graph(1)))
    assert iso is not None
    assert check_morphism(iso)
    inv = Morphism(iso.target, iso.source, {w: v for v, w in iso.mapping.items()})
    assert check_morphism(inv)


def test_find_isomorphism_respects_loops():
    t = terminal_graph()
    single = path_graph(0)
    assert find_isomorphism(t, single) is None


def test_find_isomorphism_guard():
    big = path_graph(11)
    with pytest.raises(GuardExceeded):
        find_isomorphism(big, big)
    assert find_isomorphism(big, big, cap=20) is not None


def test_duplicate_edges_collapse():
    g = parse_graph("vertex a\nvertex b\nedge a b\nedge b a")
    assert len(g.edges) == 1


def test_vertex_tokens_validated():
    with pytest.raises(GraphFormatError):
        Graph(["bad token"], [])
    with pytest.raises(GraphFormatError):
        Graph([""], [])

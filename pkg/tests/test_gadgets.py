import itertools
import random

import pytest
from hypothesis import given, strategies as st

from q3t.errors import DepthUnsupported, InputError, UnknownCase
from q3t.gadgets import (
    _mirror_name,
    _r1,
    _r2,
    augment_recursive,
    build_gt,
    check_case,
    classify_permutation,
    classify_positions,
    expected_vertex_count,
    interleavings,
    permutation_classes,
    pigeonhole_class,
)
from q3t.graph_core import norm_edge


@pytest.mark.parametrize("T", [1, 2, 7, 50])
def test_counts(T):
    g = build_gt(T)
    assert (g.n, g.m) == (14 * T + 2, 41 * T + 1)


def test_t1800_count():
    assert build_gt(1800).n == 25202


def test_invalid_T():
    with pytest.raises(InputError):
        build_gt(0)


def test_x_alpha_edges_exist():
    g = build_gt(5)
    for i in range(1, 6):
        assert norm_edge(g.lookup("x", i), g.lookup("alpha", i)) in g.graph.edges
        assert norm_edge(g.lookup("y", i), g.lookup("beta", i)) in g.graph.edges


def test_st_edges_independent_and_joined_to_poles():
    g = build_gt(6)
    A, B = g.lookup("A"), g.lookup("B")
    ends = [v for e in g.st_edges() for v in e]
    assert len(set(ends)) == len(ends)
    adj = g.graph.adjacency
    assert all({A, B} <= adj[v] for v in ends)


def test_k4_pairs_around_st_edge():
    g = build_gt(3)
    adj = g.graph.adjacency
    s, t = g.lookup("s", 2), g.lookup("t", 2)
    for a, b in (("x", "alpha"), ("alpha'", "alpha''"), ("y", "beta"), ("beta'", "beta''")):
        w, z = g.lookup(a, 2), g.lookup(b, 2)
        assert {s, t, z} <= adj[w] and {s, t, w} <= adj[z]


@pytest.mark.parametrize("T", [1, 2, 3])
def test_completion_is_a_planar_3tree_supergraph(T):
    for g in (build_gt(T), augment_recursive(build_gt(T), 1), augment_recursive(build_gt(T), 2)):
        tri = g.triangulation()
        assert g.graph.edges <= tri.edges
        assert tri.m == 3 * tri.n - 6


@pytest.mark.parametrize("T,levels", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)])
def test_recursive_counts(T, levels):
    g = augment_recursive(build_gt(T), levels)
    assert g.n == expected_vertex_count(T, levels)
    assert len(g.frontier) == T ** (levels + 1)


def test_t1_depth1_has_30_vertices():
    assert augment_recursive(build_gt(1), 1).n == 30


def test_copies_use_st_edges_as_poles():
    g = augment_recursive(build_gt(2), 1)
    assert set(g.copy_poles.values()) == set(build_gt(2).st_edges())
    adj = g.graph.adjacency
    for copy, (s, t) in g.copy_poles.items():
        for e in g.st_edges(copy):
            assert all({s, t} <= adj[v] for v in e)


def test_depth_errors():
    with pytest.raises(DepthUnsupported):
        augment_recursive(build_gt(1), 3)
    with pytest.raises(DepthUnsupported):
        augment_recursive(augment_recursive(build_gt(1), 1), 1)


@pytest.mark.parametrize("frag,expected", [
    ("A s B t", "P2"), ("A B s t", "P4"), ("s t A B", "P5"),
    ("s A B t", "P1"), ("s A t B", "P3"), ("A s t B", "P6"),
])
def test_classify_examples(frag, expected):
    g = build_gt(1)
    names = {"A": g.lookup("A"), "B": g.lookup("B"), "s": g.lookup("s", 1), "t": g.lookup("t", 1)}
    head = [names[x] for x in frag.split()]
    rest = [v for v in range(g.n) if v not in head]
    assert classify_permutation(head + rest, g, 1) == expected


MIRROR = {"P1": "P1", "P2": "P3", "P3": "P2", "P4": "P5", "P5": "P4", "P6": "P6"}


@given(st.permutations(range(4)))
def test_classification_total_and_stable(perm):
    pa, pb, ps, pt = perm
    c = classify_positions(pa, pb, ps, pt)
    # renaming the poles or the edge ends does not matter
    assert classify_positions(pb, pa, ps, pt) == c == classify_positions(pa, pb, pt, ps)
    # reversing the order swaps P2/P3 and P4/P5
    assert classify_positions(3 - pa, 3 - pb, 3 - ps, 3 - pt) == MIRROR[c]


@pytest.mark.parametrize("r", [1, 2])
def test_pigeonhole_on_random_layouts(r):
    T = 18 * r * r
    g = build_gt(T)
    rng = random.Random(r)
    for _ in range(20):
        order = list(range(g.n))
        rng.shuffle(order)
        queue_of = {e: rng.randrange(3) for e in g.st_edges()}
        classes = permutation_classes(order, g)
        assert max(len(v) for v in classes.values()) >= 3 * r * r
        _, _, edges = pigeonhole_class(order, queue_of, g)
        assert len(edges) >= r * r


def test_interleavings_count():
    assert sum(1 for _ in interleavings(list("abc"), ["x", "y"])) == 4 * 5
    assert sum(1 for _ in interleavings(list("abcdef"), list("wxyz"), lambda v, g: 1 <= g <= 5)) == 5 * 6 * 7 * 8


def test_mirror_names():
    assert _mirror_name("x4", 8) == "y5"
    assert _mirror_name("alpha''3", 10) == "beta''8"
    assert _mirror_name("p2", 10) == "v9"
    assert _mirror_name("A", 10) == "B"


def test_r1_r2_never_hold_together():
    Z = [f"x{i}" for i in range(4, 8)] + [f"y{i}" for i in range(4, 8)]
    assert not any(_r1(p) and _r2(p) for p in itertools.permutations(Z))
    # each requirement alone is satisfiable
    assert any(_r1(p) for p in itertools.permutations(Z))
    assert any(_r2(p) for p in itertools.permutations(Z))


def test_unknown_case():
    with pytest.raises(UnknownCase):
        check_case("p9")


def test_p1_twist():
    rep = check_case("p1-twist")
    assert rep.ok and rep.enumerated == 3 * 19


def test_p2_twist_and_its_mirror():
    rep = check_case("p2-twist")
    assert rep.ok and rep.enumerated == 2 * 380


def test_necklace_props_one_index():
    rep = check_case("p4-necklace-props", {"i_min": 5, "i_max": 5})
    assert rep.ok
    labels = {c[0]: c for c in rep.checks}
    assert labels["neighbour:i=5:w~s5+t5"][1] == 23
    assert labels["k4-pair:i=5"][1] == 552


def test_necklace_final_one_index():
    rep = check_case("p4-necklace-final", {"i_min": 6, "i_max": 6})
    assert rep.ok and rep.enumerated == 1680


def test_case_report_json_keys():
    assert set(check_case("p1-twist").to_json()) == {"case", "enumerated", "failures"}

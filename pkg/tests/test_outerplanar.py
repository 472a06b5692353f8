import pytest
from hypothesis import given, strategies as st

from q3t.errors import NotAFace
from q3t.graph_core import (
    OuterplaneComponent,
    biconnect_augment,
    components_of_level,
    goldner_harary,
    peel_levels,
    random_3tree,
)
from q3t.outerplanar import (
    LeveledLayout,
    face_roles,
    leveled_layout,
    two_queue_order,
    validate_leveled_layout,
)
from q3t.verify import queue_nesting_pair

from oracles import max_rainbow_bruteforce


def augmented_components(t):
    ls = peel_levels(t)
    for i in range(ls.depth + 1):
        for c in components_of_level(ls, i):
            yield biconnect_augment(c)


def fan(k):
    """Vertex 0 joined to the path 1..k: a fan of k-1 triangles."""
    edges = {(0, i) for i in range(1, k + 1)} | {(i, i + 1) for i in range(1, k)}
    faces = tuple((0, i, i + 1) for i in range(1, k))
    return OuterplaneComponent(0, 0, tuple(range(k + 1)), frozenset(edges), faces, tuple(range(k + 1)))


def test_single_triangle():
    c = OuterplaneComponent(0, 0, (0, 1, 2), frozenset({(0, 1), (1, 2), (0, 2)}), ((0, 1, 2),), (0, 1, 2))
    l = leveled_layout(c)
    assert sorted(l.y.values()) == [0, 1, 2]
    order, q = two_queue_order(l)
    assert sorted(order) == [0, 1, 2]
    assert sorted(q.values()) == [0, 0, 1]
    assert face_roles(l, (2, 0, 1)) == l.roles[(0, 1, 2)]


def test_degenerate_components():
    one = OuterplaneComponent(0, 0, (5,), frozenset(), (), (5,))
    assert leveled_layout(one).order() == [5]
    two = OuterplaneComponent(0, 0, (3, 4), frozenset({(3, 4)}), (), (3, 4))
    l = leveled_layout(two)
    assert abs(l.y[3] - l.y[4]) == 1
    assert two_queue_order(l)[1] == {(3, 4): 0}


def test_fan_layout():
    c = fan(8)
    l = leveled_layout(c)
    assert validate_leveled_layout(c, l) == []


def test_face_roles_rejects_non_face():
    c = fan(5)
    l = leveled_layout(c)
    with pytest.raises(NotAFace):
        face_roles(l, (0, 1, 9))


def test_validator_reports_span_violation():
    c = fan(4)
    l = leveled_layout(c)
    bad_y = dict(l.y)
    bad_y[0] += 5
    bad = LeveledLayout(bad_y, l.x_order, {}, l.edges)
    kinds = {v.kind for v in validate_leveled_layout(c, bad)}
    assert "EdgeSpanViolation" in kinds or "MissingVertex" in kinds


def test_validator_catches_swapped_vertices():
    (c,) = [c for c in augmented_components(random_3tree(300, 1)) if len(c.vertices) > 40][:1]
    l = leveled_layout(c)
    lvl = max(l.x_order, key=lambda k: len(l.x_order[k]))
    seq = list(l.x_order[lvl])
    seq[0], seq[-1] = seq[-1], seq[0]
    bad = LeveledLayout(l.y, {**l.x_order, lvl: tuple(seq)}, {}, l.edges)
    kinds = {v.kind for v in validate_leveled_layout(c, bad)}
    assert kinds & {"QueueNestingViolation", "AnchorMonotonicityViolation"}


@given(st.integers(3, 600), st.integers(0, 10_000))
def test_leveled_layouts_of_random_components(n, seed):
    for c in augmented_components(random_3tree(n, seed)):
        l = leveled_layout(c)
        assert validate_leveled_layout(c, l) == []
        assert min(l.y.values()) == 0
        order, q = two_queue_order(l)
        pos = {v: i for i, v in enumerate(order)}
        for k in (0, 1):
            es = [e for e, j in q.items() if j == k]
            assert queue_nesting_pair(es, pos) is None
            assert max_rainbow_bruteforce(es, pos) <= 1
        for f in c.internal_faces:
            a, t, b = face_roles(l, f)
            assert l.y[t] == l.y[a] + 1 == l.y[b] + 2


def test_goldner_harary_levels():
    for c in augmented_components(goldner_harary()):
        assert validate_leveled_layout(c, leveled_layout(c)) == []


def test_layout_json_shape():
    c = fan(4)
    doc = leveled_layout(c).to_json()
    assert set(doc) == {"y", "x_order", "roles"}
    assert all(set(r) == {"face", "anchor", "top", "bottom"} for r in doc["roles"])

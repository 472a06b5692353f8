import pytest
from hypothesis import given, strategies as st

from q3t.engine import (
    ANCHOR_QUEUE,
    BOTTOM_QUEUE,
    TOP_QUEUE,
    ChildSpec,
    five_queue_construction,
    five_queue_layout,
    structure_violations,
    two_level_layout,
)
from q3t.errors import ChildNotInFace
from q3t.graph_core import (
    build_from_stellations,
    components_of_level,
    goldner_harary,
    peel_levels,
    random_3tree,
    biconnect_augment,
)
from q3t.verify import exact_queue_number, is_valid_queue_layout, queue_nesting_pair


def test_triangle():
    st3 = random_3tree(3, 0)
    lay = five_queue_layout(st3)
    assert sorted(lay.order) == [0, 1, 2]
    assert set(lay.queue_of.values()) == {0}
    assert lay.intervals == ((0, 0, 3),)


def test_k4_binding_edges_one_per_queue():
    k4 = build_from_stellations((0, 1, 2), [(3, (0, 1, 2))])
    lay = five_queue_layout(k4)
    binding = {lay.queue_of[(v, 3)] for v in (0, 1, 2)}
    assert binding == {ANCHOR_QUEUE, TOP_QUEUE, BOTTOM_QUEUE}
    assert lay.order[-1] == 3


def test_goldner_harary():
    gh = goldner_harary()
    res = five_queue_construction(gh)
    assert is_valid_queue_layout(gh.graph, res.layout, 5)
    assert structure_violations(res) == []
    assert res.layout.queues_used <= 5


@given(st.integers(3, 1200), st.integers(0, 10_000))
def test_random_layouts_are_valid(n, seed):
    t = random_3tree(n, seed)
    res = five_queue_construction(t)
    assert is_valid_queue_layout(t.graph, res.layout, 5)
    assert structure_violations(res) == []
    assert set(res.layout.queue_of) == set(t.edges)


@given(st.integers(4, 300), st.integers(0, 10_000), st.integers(0, 10_000))
def test_any_outer_face_works(n, seed, pick):
    t = random_3tree(n, seed)
    faces = sorted(tuple(sorted(f)) for f in t.faces)
    outer = faces[pick % len(faces)]
    res = five_queue_construction(t, outer=outer)
    assert {v for v, l in res.levels.level_of.items() if l == 0} == set(outer)
    assert is_valid_queue_layout(t.graph, res.layout, 5)
    assert structure_violations(res) == []


def test_keep_dummy_retains_augmentation_edges():
    gh = goldner_harary()
    res = five_queue_construction(gh, keep_dummy=True)
    dummies = set().union(*(c.dummy_edges for c in res.components.values()))
    assert dummies and dummies <= set(res.layout.queue_of)
    assert dummies.isdisjoint(five_queue_layout(gh).queue_of)


def test_threads_give_identical_layouts():
    t = random_3tree(500, 8)
    assert five_queue_layout(t, workers=1) == five_queue_layout(t, workers=3)


def test_interval_order():
    t = random_3tree(800, 2)
    res = five_queue_construction(t)
    lvl = [res.levels.level_of[v] for v in res.layout.order]
    assert lvl == sorted(lvl)
    ends = [iv[2] for iv in res.layout.intervals]
    starts = [iv[1] for iv in res.layout.intervals]
    assert starts[0] == 0 and starts[1:] == ends[:-1] and ends[-1] == t.n


@pytest.mark.parametrize("seed", range(12))
def test_two_level_instance(seed):
    t = random_3tree(150, seed)
    ls = peel_levels(t)
    if ls.depth < 1:
        pytest.skip("single level")
    (root,) = [biconnect_augment(c) for c in components_of_level(ls, 0)]
    kids = components_of_level(ls, 1)
    from q3t.outerplanar import leveled_layout

    specs = [ChildSpec(k.ref, k.container, tuple(leveled_layout(biconnect_augment(k)).order())) for k in kids]
    order, child_order, bq = two_level_layout(root, specs, ls.binding_edges[0])
    full = list(order)
    by_ref = {s.ref: s for s in specs}
    for r in child_order:
        full.extend(by_ref[r].order)
    pos = {v: i for i, v in enumerate(full)}
    assert set(bq.values()) <= {2, 3, 4}
    for q in (2, 3, 4):
        assert queue_nesting_pair([e for e, k in bq.items() if k == q], pos) is None


def test_child_outside_face_rejected():
    k4 = build_from_stellations((0, 1, 2), [(3, (0, 1, 2))])
    ls = peel_levels(k4)
    (root,) = components_of_level(ls, 0)
    with pytest.raises(ChildNotInFace):
        two_level_layout(root, [ChildSpec((1, 0), (0, 1, 7), (3,))], [(0, 3)])


@pytest.mark.parametrize("seed", range(8))
def test_exact_never_exceeds_construction(seed):
    t = random_3tree(9, seed)
    lay = five_queue_layout(t)
    assert exact_queue_number(t.graph)[0] <= lay.queues_used

"""Five-queue layouts of planar 3-trees.

Vertices are grouped by level (distance from the outer triangle).  Every
level component is biconnected by chords in its outer face, drawn as a
leveled outerplanar layout and read off as a 2-queue order (queues 0, 1).
The components of the next level sit inside internal faces of that drawing
and are ordered by the positions of their face's anchor, top and bottom.
Edges from a child to the anchor of its face go to queue 2, to the top to
queue 3 and to the bottom to queue 4.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ChildNotInFace, InternalStructureViolation, NotAFace
from .graph_core import (
    Edge,
    LevelStructure,
    OuterplaneComponent,
    StackedTriangulation,
    biconnect_augment,
    components_of_level,
    face_key,
    norm_edge,
    peel_levels,
)
from .outerplanar import LeveledLayout, face_roles, leveled_layout, two_queue_order
from .verify import QueueLayout, queue_nesting_pair

ANCHOR_QUEUE, TOP_QUEUE, BOTTOM_QUEUE = 2, 3, 4
Ref = Tuple[int, int]


@dataclass(frozen=True)
class ChildSpec:
    """A next-level component as seen from the component that contains it."""

    ref: Ref
    face: Tuple[int, int, int]
    order: Tuple[int, ...]


@dataclass(frozen=True)
class EngineResult:
    layout: QueueLayout
    levels: LevelStructure
    components: Dict[Ref, OuterplaneComponent]
    leveled: Dict[Ref, LeveledLayout]
    child_order: Dict[Ref, Tuple[Ref, ...]]


def two_level_layout(
    c: OuterplaneComponent,
    children: Sequence[ChildSpec],
    binding_edges: Iterable[Edge],
    layout: Optional[LeveledLayout] = None,
) -> Tuple[List[int], List[Ref], Dict[Edge, int]]:
    """Order ``c``, sort its children and put the binding edges in queues 2-4.

    ``binding_edges`` are the edges between ``c`` and the children.  Returns
    ``(order_of_c, child_order, binding_queues)``.
    """
    layout = layout or leveled_layout(c)
    order, _ = two_queue_order(layout)
    pos = {v: i for i, v in enumerate(order)}
    roles = {}
    keyed = []
    for ch in children:
        face = face_key(ch.face)
        try:
            anchor, top, bottom = face_roles(layout, face)
        except NotAFace as exc:
            raise ChildNotInFace(f"child {ch.ref} sits in {face}, not a face of {c.ref}") from exc
        if face not in layout.roles:
            raise ChildNotInFace(f"child {ch.ref}: {face} is not an internal face of {c.ref}")
        roles[ch.ref] = (anchor, top, bottom)
        keyed.append(((pos[anchor], pos[top], pos[bottom]), ch.ref))
    keyed.sort()
    for (k1, r1), (k2, r2) in zip(keyed, keyed[1:]):
        if k1 == k2:
            raise InternalStructureViolation(f"children {r1} and {r2} share a face")

    owner = {}
    for ch in children:
        for v in ch.order:
            owner[v] = ch.ref
    queues = {}
    for u, v in binding_edges:
        inner, outer = (u, v) if u in owner else (v, u)
        if inner not in owner or outer not in pos:
            raise ChildNotInFace(f"binding edge {(u, v)} does not join {c.ref} to a child")
        anchor, top, bottom = roles[owner[inner]]
        if outer == anchor:
            q = ANCHOR_QUEUE
        elif outer == top:
            q = TOP_QUEUE
        elif outer == bottom:
            q = BOTTOM_QUEUE
        else:
            raise ChildNotInFace(f"binding edge {(u, v)} leaves the face of child {owner[inner]}")
        queues[norm_edge(u, v)] = q
    return order, [r for _, r in keyed], queues


def _threads(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("Q3T_THREADS", "1")))
    except ValueError:
        return 1


def five_queue_construction(
    st: StackedTriangulation,
    outer: Optional[Sequence[int]] = None,
    keep_dummy: bool = False,
    workers: Optional[int] = None,
) -> EngineResult:
    """Run the level-by-level construction and keep its intermediate data."""
    ls = peel_levels(st, outer)
    comps: Dict[Ref, OuterplaneComponent] = {}
    for i in range(ls.depth + 1):
        for c in components_of_level(ls, i):
            comps[c.ref] = biconnect_augment(c)

    refs = sorted(comps)
    n_workers = _threads(workers)
    if n_workers > 1 and len(refs) > 1:
        with ThreadPoolExecutor(n_workers) as pool:
            drawn = list(pool.map(lambda r: leveled_layout(comps[r]), refs))
    else:
        drawn = [leveled_layout(comps[r]) for r in refs]
    leveled = dict(zip(refs, drawn))

    kids: Dict[Ref, List[ChildSpec]] = {r: [] for r in refs}
    for ref, tri in ls.containment.items():
        parent = ls.component_of[tri[0]]
        kids[parent].append(ChildSpec(ref, tri, leveled[ref].order()))
    binding_of: Dict[Ref, List[Edge]] = {r: [] for r in refs}
    for lvl_edges in ls.binding_edges:
        for u, v in lvl_edges:
            hi = u if ls.level_of[u] < ls.level_of[v] else v
            binding_of[ls.component_of[hi]].append((u, v))

    queue_of: Dict[Edge, int] = {}
    own_order: Dict[Ref, List[int]] = {}
    child_order: Dict[Ref, Tuple[Ref, ...]] = {}
    for ref in refs:
        c = comps[ref]
        order, sorted_kids, bq = two_level_layout(c, kids[ref], binding_of[ref], leveled[ref])
        own_order[ref] = order
        child_order[ref] = tuple(sorted_kids)
        queue_of.update(bq)
        _, lq = two_queue_order(leveled[ref])
        for e, q in lq.items():
            if keep_dummy or e not in c.dummy_edges:
                queue_of[e] = q

    # Preorder over the component tree with sorted children: per level this
    # concatenates sibling subtrees in child order.
    per_level: List[List[int]] = [[] for _ in range(ls.depth + 1)]
    stack = [(0, 0)]
    while stack:
        ref = stack.pop()
        per_level[ref[0]].extend(own_order[ref])
        stack.extend(reversed(child_order[ref]))
    order: List[int] = []
    intervals = []
    for j, seq in enumerate(per_level):
        intervals.append((j, len(order), len(order) + len(seq)))
        order.extend(seq)
    if sorted(order) != list(range(st.n)):
        raise InternalStructureViolation("assembled order is not a permutation")
    _fold_level_queues(queue_of, order)
    layout = QueueLayout(tuple(order), queue_of, tuple(intervals))
    return EngineResult(layout, ls, comps, leveled, child_order)


def _fold_level_queues(queue_of: Dict[Edge, int], order: Sequence[int]) -> None:
    """Move queue 1 into queue 0 when their union has no nesting pair."""
    level = [e for e, q in queue_of.items() if q in (0, 1)]
    if all(queue_of[e] == 0 for e in level):
        return
    pos = {v: i for i, v in enumerate(order)}
    if queue_nesting_pair(level, pos) is None:
        for e in level:
            queue_of[e] = 0


def five_queue_layout(
    st: StackedTriangulation,
    outer: Optional[Sequence[int]] = None,
    keep_dummy: bool = False,
    workers: Optional[int] = None,
) -> QueueLayout:
    """Queue layout of a planar 3-tree with at most five queues."""
    return five_queue_construction(st, outer, keep_dummy, workers).layout


def structure_violations(res: EngineResult) -> List[str]:
    """Interval, queue-class and sibling-separation checks on a construction."""
    out: List[str] = []
    ls, layout = res.levels, res.layout
    pos = layout.positions()
    for j, start, end in layout.intervals:
        if any(ls.level_of[v] != j for v in layout.order[start:end]):
            out.append(f"interval {j} holds vertices of another level")
    level_set = {e for es in ls.level_edges for e in es}
    for e, q in layout.queue_of.items():
        u, v = e
        if e in level_set and q not in (0, 1):
            out.append(f"level edge {e} in queue {q}")
        elif e not in level_set and e in ls.st.edges and q not in (2, 3, 4):
            out.append(f"binding edge {e} in queue {q}")
        if abs(ls.level_of[u] - ls.level_of[v]) > 1:
            out.append(f"edge {e} joins non-adjacent intervals")

    # per-level (first, last) position of every component subtree; deeper
    # components are finished before their parents
    span: Dict[Ref, Dict[int, Tuple[int, int]]] = {}
    for ref in sorted(res.components, reverse=True):
        ps = [pos[v] for v in res.components[ref].vertices]
        mine = {ref[0]: (min(ps), max(ps))}
        for kid in res.child_order[ref]:
            for j, (lo, hi) in span[kid].items():
                a, b = mine.get(j, (lo, hi))
                mine[j] = (min(a, lo), max(b, hi))
        span[ref] = mine
    for ref, kids in res.child_order.items():
        for k1, k2 in zip(kids, kids[1:]):
            for j in set(span[k1]) & set(span[k2]):
                if span[k1][j][1] > span[k2][j][0]:
                    out.append(f"siblings {k1} and {k2} interleave on level {j}")
    for q in sorted(set(layout.queue_of.values())):
        es = [e for e, k in layout.queue_of.items() if k == q]
        pair = queue_nesting_pair(es, pos)
        if pair is not None:
            out.append(f"queue {q}: {pair[0]} nests {pair[1]}")
    return out

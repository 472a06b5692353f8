"""Leveled drawings of internally triangulated outerplane graphs.

Every internally triangulated biconnected outerplane graph has a planar
drawing with integer y-coordinates in which every edge spans one or two
levels.  Each internal face then occupies three consecutive levels: its
*anchor* sits on the middle one, its *top* and *bottom* above and below.
Sorting vertices by decreasing y (left to right within a level) and putting
span-1 edges in queue 0, span-2 edges in queue 1 gives a 2-queue layout.

Construction
------------
The weak dual is walked from a root face drawn as ``y = (2, 1, 0)``.  Every
shared edge owns a region of the plane outside the part drawn so far:

* ``U`` regions (span-1 edge, opening upwards): the apex goes one level
  above the higher endpoint;
* ``D`` regions (span-1 edge, opening downwards): one level below the lower
  endpoint;
* ``S`` regions (span-2 edge): the apex goes on the middle level.

Placing an apex splits a region by a vertical ray from the apex into a left
and a right sub-region, so the left-to-right order on every level is the
in-order traversal of the region tree.  Regions are bounded by y-monotone
curves, which keeps the drawing level-planar.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import ConstructionExhausted, NotAFace
from .graph_core import Edge, OuterplaneComponent, face_key, norm_edge

Roles = Tuple[int, int, int]  # (anchor, top, bottom)


@dataclass(frozen=True)
class LeveledLayout:
    y: Dict[int, int]
    x_order: Dict[int, Tuple[int, ...]]
    roles: Dict[Tuple[int, int, int], Roles] = field(default_factory=dict)
    edges: FrozenSet[Edge] = frozenset()

    def order(self) -> List[int]:
        """Vertices by decreasing level, left to right within a level."""
        out = []
        for lvl in sorted(self.x_order, reverse=True):
            out.extend(self.x_order[lvl])
        return out

    def to_json(self) -> dict:
        return {
            "y": {str(v): y for v, y in sorted(self.y.items())},
            "x_order": {str(k): list(v) for k, v in sorted(self.x_order.items())},
            "roles": [
                {"face": list(f), "anchor": r[0], "top": r[1], "bottom": r[2]}
                for f, r in sorted(self.roles.items())
            ],
        }


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


def roles_from_levels(y: Dict[int, int], face: Sequence[int]) -> Optional[Roles]:
    """Anchor, top and bottom of a face, or ``None`` if it is not a band."""
    a, b, c = sorted(face, key=lambda v: y[v])
    if y[b] - y[a] == 1 and y[c] - y[b] == 1:
        return (b, c, a)
    return None


def face_roles(layout: LeveledLayout, face: Sequence[int]) -> Roles:
    key = face_key(face)
    if key in layout.roles:
        return layout.roles[key]
    if any(v not in layout.y for v in key):
        raise NotAFace(f"{key} is not a face of this layout")
    roles = roles_from_levels(layout.y, key)
    if roles is None:
        raise NotAFace(f"{key} does not span three consecutive levels")
    return roles


def _third(face: Tuple[int, int, int], u: int, v: int) -> int:
    for w in face:
        if w != u and w != v:
            return w
    raise AssertionError(face)


def leveled_layout(c: OuterplaneComponent) -> LeveledLayout:
    """Leveled drawing of a biconnected internally triangulated component."""
    verts = list(c.vertices)
    if len(verts) == 1:
        return LeveledLayout({verts[0]: 0}, {0: (verts[0],)}, {}, c.edges)
    if len(verts) == 2:
        u, v = sorted(verts)
        return LeveledLayout({u: 1, v: 0}, {1: (u,), 0: (v,)}, {}, c.edges)
    if not c.internal_faces:
        raise ConstructionExhausted(f"component {c.ref} has no internal faces")

    faces_on = defaultdict(list)
    for f in c.internal_faces:
        a, b, d = f
        for e in (norm_edge(a, b), norm_edge(b, d), norm_edge(a, d)):
            faces_on[e].append(f)

    root = min(c.internal_faces)
    a, b, d = root
    y = {a: 2, b: 1, d: 0}
    visited = {root}

    # Each token is either ("v", vertex) or ("r", kind, left, right, parent
    # face); regions are expanded in place until only vertices remain.
    def region(kind, left, right, parent):
        return ("r", kind, left, right, parent)

    def span_kind(p, q, up):
        return ("U" if up else "D") if abs(y[p] - y[q]) == 1 else ("Sup" if up else "Sdown")

    # root triangle: a top, b anchor to the right of segment a-d, d bottom;
    # the region left of a-d reaches every level
    tokens = [
        region("Sfull", a, d, root),
        ("v", a),
        ("v", b),
        ("v", d),
        region("U", a, b, root),
        region("D", d, b, root),
    ]

    out: List[int] = []
    stack = list(reversed(tokens))
    while stack:
        tok = stack.pop()
        if tok[0] == "v":
            out.append(tok[1])
            continue
        _, kind, p, q, parent = tok
        e = norm_edge(p, q)
        nxt = [f for f in faces_on[e] if f != parent]
        if not nxt:
            continue
        f = nxt[0]
        if f in visited:
            raise ConstructionExhausted(f"weak dual of {c.ref} is not a tree")
        visited.add(f)
        w = _third(f, p, q)
        lo, hi = (p, q) if y[p] < y[q] else (q, p)
        if kind == "U":
            y[w] = y[hi] + 1
            left = region(span_kind(p, w, True), p, w, f)
            right = region(span_kind(w, q, True), w, q, f)
        elif kind == "D":
            y[w] = y[lo] - 1
            left = region(span_kind(p, w, False), p, w, f)
            right = region(span_kind(w, q, False), w, q, f)
        elif kind in ("Sup", "Sdown"):
            y[w] = y[lo] + 1
            up = kind == "Sup"
            left = region("U" if up else "D", p, w, f)
            right = region("U" if up else "D", w, q, f)
        else:  # Sfull: p is the top endpoint, q the bottom one
            y[w] = y[lo] + 1
            # the apex's horizontal ray splits the region into an upper part
            # (edge to the top endpoint) and a lower part; levels are disjoint
            left = region("U", w, hi, f)
            right = region("D", w, lo, f)
        stack.extend((right, ("v", w), left))

    if len(visited) != len(c.internal_faces) or len(out) != len(verts):
        raise ConstructionExhausted(f"component {c.ref}: weak dual is not connected")

    shift = min(y.values())
    y = {v: yy - shift for v, yy in y.items()}
    x_order = defaultdict(list)
    for v in out:
        x_order[y[v]].append(v)
    roles = {}
    for f in c.internal_faces:
        r = roles_from_levels(y, f)
        if r is None:
            raise ConstructionExhausted(f"face {f} is not a three-level band")
        roles[f] = r
    layout = LeveledLayout(y, {k: tuple(v) for k, v in x_order.items()}, roles, c.edges)
    problems = validate_leveled_layout(c, layout)
    if problems:
        raise ConstructionExhausted(f"component {c.ref}: {problems[0]}")
    return layout


def two_queue_order(layout: LeveledLayout) -> Tuple[List[int], Dict[Edge, int]]:
    """Order by decreasing y; span-1 edges to queue 0, span-2 edges to queue 1."""
    queue_of = {}
    for u, v in layout.edges:
        span = abs(layout.y[u] - layout.y[v])
        if span not in (1, 2):
            raise ConstructionExhausted(f"edge {(u, v)} spans {span} levels")
        queue_of[norm_edge(u, v)] = span - 1
    return layout.order(), queue_of


def validate_leveled_layout(c: OuterplaneComponent, layout: LeveledLayout) -> List[Violation]:
    """Every broken leveled-layout invariant, as data; empty if valid."""
    from .verify import queue_nesting_pair

    out: List[Violation] = []
    placed = [v for lvl in layout.x_order.values() for v in lvl]
    if sorted(placed) != sorted(c.vertices) or set(layout.y) != set(c.vertices):
        out.append(Violation("MissingVertex", "level sequences do not cover the component exactly"))
        return out
    for lvl, seq in layout.x_order.items():
        for v in seq:
            if layout.y[v] != lvl:
                out.append(Violation("MissingVertex", f"vertex {v} listed on level {lvl}"))
    for u, v in sorted(c.edges):
        span = abs(layout.y[u] - layout.y[v])
        if span not in (1, 2):
            out.append(Violation("EdgeSpanViolation", f"edge {(u, v)} spans {span}"))
    for f in c.internal_faces:
        r = roles_from_levels(layout.y, f)
        if r is None:
            out.append(Violation("FaceBandViolation", f"face {f} levels {[layout.y[v] for v in f]}"))
        elif f in layout.roles and layout.roles[f] != r:
            out.append(Violation("RoleViolation", f"face {f} roles {layout.roles[f]} expected {r}"))
    if out:
        return out

    order = layout.order()
    pos = {v: i for i, v in enumerate(order)}
    out.extend(_monotonicity_violations(c, layout, pos))
    queues = {e: abs(layout.y[e[0]] - layout.y[e[1]]) - 1 for e in c.edges}
    for q in (0, 1):
        es = [e for e, k in queues.items() if k == q]
        pair = queue_nesting_pair(es, pos)
        if pair is not None:
            out.append(Violation("QueueNestingViolation", f"queue {q}: {pair[0]} nests {pair[1]}"))
    return out


def _monotonicity_violations(c, layout, pos) -> List[Violation]:
    """Faces whose anchors are ordered must have tops and bottoms ordered alike.

    For distinct anchors ``u < u'`` this requires ``top <= top'`` and
    ``bottom <= bottom'``.  For a shared anchor, faces ordered by top must
    also be ordered by bottom.
    """
    out = []
    rows = []
    for f in c.internal_faces:
        u, v, w = roles_from_levels(layout.y, f)
        rows.append((pos[u], pos[v], pos[w], f))
    rows.sort()
    max_top = max_bot = -1
    i = 0
    while i < len(rows):
        j = i
        while j < len(rows) and rows[j][0] == rows[i][0]:
            j += 1
        group = rows[i:j]
        if min(r[1] for r in group) < max_top:
            out.append(Violation("AnchorMonotonicityViolation", f"tops reverse at anchor {group[0][3]}"))
        if min(r[2] for r in group) < max_bot:
            out.append(Violation("AnchorMonotonicityViolation", f"bottoms reverse at anchor {group[0][3]}"))
        best = -1
        for r in sorted(group, key=lambda r: (r[1], r[2])):
            if r[2] < best:
                out.append(Violation("AnchorMonotonicityViolation", f"shared anchor, face {r[3]}"))
            best = max(best, r[2])
        max_top = max(max_top, max(r[1] for r in group))
        max_bot = max(max_bot, max(r[2] for r in group))
        i = j
    return out

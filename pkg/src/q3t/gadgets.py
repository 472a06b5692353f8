"""The lower-bound gadget family and an exhaustive checker for its case analysis.

``G_T`` has two poles ``A`` and ``B`` and ``T`` independent *(s,t)-edges*,
each joined to both poles and surrounded by twelve stellation vertices.  In
any 3-queue layout many (s,t)-edges share one ordering pattern relative to
the poles, and for each pattern a 4-rainbow is forced.  The functions here
rebuild the gadget and re-check the pattern arguments by brute force: every
placement of the relevant free vertices into a fixed skeleton order is
enumerated and must contain a 4-rainbow.

Adding vertices to an order never destroys a rainbow, so checking small
induced sub-orders is enough for the claims about full layouts.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import DepthUnsupported, InputError, UnknownCase
from .graph_core import Edge, SimpleGraph, StackedTriangulation, Stellation, build_from_stellations, norm_edge
from .verify import LinearOrder, nesting_depths

ROLE_TAGS = ("s", "t", "x", "y", "alpha", "beta", "p", "q", "u", "v",
             "alpha'", "alpha''", "beta'", "beta''")
PER_EDGE = len(ROLE_TAGS)

# (apex, face) per (s,t)-edge, in insertion order; every face exists when used
_LOCAL_STELLATIONS = (
    ("x", ("A", "s", "t")),
    ("y", ("B", "s", "t")),
    ("alpha", ("x", "s", "t")),
    ("beta", ("y", "s", "t")),
    ("p", ("A", "x", "s")),
    ("q", ("A", "x", "t")),
    ("u", ("B", "y", "s")),
    ("v", ("B", "y", "t")),
    ("alpha'", ("s", "t", "alpha")),
    ("alpha''", ("s", "t", "alpha'")),
    ("beta'", ("s", "t", "beta")),
    ("beta''", ("s", "t", "beta'")),
)


@dataclass(frozen=True)
class Role:
    tag: str
    index: int = 0  # 1-based (s,t)-edge index, 0 for the poles
    copy: int = 0  # 0 for the outermost gadget, k >= 1 for attached copies


@dataclass(frozen=True)
class GadgetGraph:
    """A gadget with its roles and a completion to a planar 3-tree.

    ``completion`` is a stellation history whose final graph contains
    ``graph`` as a subgraph; its extra edges are padding only.
    """

    graph: SimpleGraph
    roles: Dict[int, Role]
    T: int
    depth: int
    base: Tuple[int, int, int]
    completion: Tuple[Stellation, ...] = field(repr=False)
    copy_poles: Dict[int, Edge] = field(default_factory=dict)
    frontier: Tuple[Edge, ...] = ()
    # face <s, t, alpha''> of every frontier edge, where copies attach
    pockets: Tuple[Tuple[int, int, int], ...] = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def lookup(self, tag: str, index: int = 0, copy: int = 0) -> int:
        return self._index[(tag, index, copy)]

    @property
    def _index(self) -> Dict[Tuple[str, int, int], int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {(r.tag, r.index, r.copy): v for v, r in self.roles.items()}
            object.__setattr__(self, "_idx", idx)
        return idx

    def st_edges(self, copy: int = 0) -> List[Edge]:
        return [norm_edge(self.lookup("s", i, copy), self.lookup("t", i, copy))
                for i in range(1, self.T + 1)]

    def triangulation(self) -> StackedTriangulation:
        """Replay the completion; raises if some target was not a face."""
        return build_from_stellations(self.base, self.completion)


class _Builder:
    def __init__(self):
        self.n = 0
        self.roles: Dict[int, Role] = {}
        self.edges: Set[Edge] = set()
        self.stell: List[Stellation] = []

    def new(self, role: Role) -> int:
        v = self.n
        self.n += 1
        self.roles[v] = role
        return v

    def stellate(self, apex: int, face: Sequence[int], real: Sequence[int]):
        self.stell.append(Stellation(apex, tuple(face)))
        self.edges.update(norm_edge(apex, w) for w in real)

    def attach(self, T: int, A: int, B: int, copy: int, face: Optional[Tuple[int, int, int]]):
        """Add a gadget with poles ``A``, ``B``.

        ``face`` is an existing face containing edge ``A B`` to grow into, or
        ``None`` for the outermost gadget (whose base is ``A B s_1``).
        Returns the new (s,t)-edges and the face ``<s, t, alpha''>`` of each.
        """
        st_edges, pockets = [], []
        prev_t = None
        for i in range(1, T + 1):
            s = self.new(Role("s", i, copy))
            t = self.new(Role("t", i, copy))
            if i == 1:
                if face is None:  # s_1 is a corner of the base triangle
                    self.edges.update((norm_edge(s, A), norm_edge(s, B)))
                else:
                    self.stellate(s, face, (A, B))
            else:
                self.stellate(s, (A, B, prev_t), (A, B))
            self.stellate(t, (A, B, s), (A, B, s))
            prev_t = t
            names = {"A": A, "B": B, "s": s, "t": t}
            for tag, tri in _LOCAL_STELLATIONS:
                v = self.new(Role(tag, i, copy))
                names[tag] = v
                corners = [names[c] for c in tri]
                self.stellate(v, corners, corners)
            st_edges.append(norm_edge(s, t))
            pockets.append((s, t, names["alpha''"]))
        return st_edges, pockets


def build_gt(T: int) -> GadgetGraph:
    """The depth-0 gadget with ``14 T + 2`` vertices and ``41 T + 1`` edges."""
    if T < 1:
        raise InputError(f"T must be at least 1, got {T}")
    b = _Builder()
    A = b.new(Role("A"))
    B = b.new(Role("B"))
    b.edges.add(norm_edge(A, B))
    st_edges, pockets = b.attach(T, A, B, 0, None)
    s1 = st_edges[0][0]
    g = GadgetGraph(
        graph=SimpleGraph(b.n, frozenset(b.edges)),
        roles=dict(b.roles),
        T=T,
        depth=0,
        base=(A, B, s1),
        completion=tuple(b.stell),
        frontier=tuple(st_edges),
        pockets=tuple(pockets),
    )
    return g


def augment_recursive(g: GadgetGraph, levels: int = 1) -> GadgetGraph:
    """Attach a fresh copy of ``G_T`` with poles ``s, t`` to every (s,t)-edge.

    Each round attaches copies to the (s,t)-edges created by the previous
    round only; ``levels=2`` gives the doubly augmented gadget.
    """
    if g.depth != 0:
        raise DepthUnsupported("augment_recursive expects a depth-0 gadget")
    if levels not in (1, 2):
        raise DepthUnsupported(f"levels must be 1 or 2, got {levels}")
    b = _Builder()
    b.n = g.n
    b.roles = dict(g.roles)
    b.edges = set(g.graph.edges)
    b.stell = list(g.completion)
    pockets = list(g.pockets)
    copy_poles: Dict[int, Edge] = {}
    copy = 0
    frontier: List[Edge] = []
    for _ in range(levels):
        frontier, next_pockets = [], []
        for s, t, a2 in pockets:
            copy += 1
            copy_poles[copy] = (s, t)
            new_edges, new_pockets = b.attach(g.T, s, t, copy, (s, t, a2))
            frontier.extend(new_edges)
            next_pockets.extend(new_pockets)
        pockets = next_pockets
    out = GadgetGraph(
        graph=SimpleGraph(b.n, frozenset(b.edges)),
        roles=b.roles,
        T=g.T,
        depth=levels,
        base=g.base,
        completion=tuple(b.stell),
        copy_poles=copy_poles,
        frontier=tuple(frontier),
        pockets=tuple(pockets),
    )
    return out


def expected_vertex_count(T: int, depth: int) -> int:
    """Closed form: each round adds ``14 T`` vertices per frontier edge."""
    n, frontier = 14 * T + 2, T
    for _ in range(depth):
        n += frontier * 14 * T
        frontier *= T
    return n


# ---------------------------------------------------------------------------
# permutation classes


PATTERNS = {
    ("s", "A", "B", "t"): "P1",
    ("A", "s", "B", "t"): "P2",
    ("s", "A", "t", "B"): "P3",
    ("A", "B", "s", "t"): "P4",
    ("s", "t", "A", "B"): "P5",
    ("A", "s", "t", "B"): "P6",
}


def classify_positions(pa: int, pb: int, ps: int, pt: int) -> str:
    """Pattern of ``s, t`` relative to ``A, B`` after normalising ``A < B``, ``s < t``."""
    if pb < pa:
        pa, pb = pb, pa
    if pt < ps:
        ps, pt = pt, ps
    key = tuple(name for _, name in sorted(((pa, "A"), (pb, "B"), (ps, "s"), (pt, "t"))))
    return PATTERNS[key]


def classify_permutation(order, g: GadgetGraph, i: int, copy: int = 0) -> str:
    lo = LinearOrder.of(order)
    if copy:
        A, B = g.copy_poles[copy]
    else:
        A, B = g.lookup("A"), g.lookup("B")
    s, t = g.lookup("s", i, copy), g.lookup("t", i, copy)
    return classify_positions(lo[A], lo[B], lo[s], lo[t])


def permutation_classes(order, g: GadgetGraph) -> Dict[str, List[int]]:
    """Indices of the (s,t)-edges of the outer gadget grouped by pattern."""
    out: Dict[str, List[int]] = {}
    for i in range(1, g.T + 1):
        out.setdefault(classify_permutation(order, g, i), []).append(i)
    return out


def pigeonhole_class(order, queue_of: Dict[Edge, int], g: GadgetGraph) -> Tuple[str, int, List[Edge]]:
    """Largest group of (s,t)-edges sharing both a pattern and a queue.

    With ``T = 18 r^2`` and three queues some pattern holds ``>= 3 r^2``
    edges and one queue keeps ``>= r^2`` of those.
    """
    groups: Dict[Tuple[str, int], List[Edge]] = {}
    for i in range(1, g.T + 1):
        e = norm_edge(g.lookup("s", i), g.lookup("t", i))
        groups.setdefault((classify_permutation(order, g, i), queue_of[e]), []).append(e)
    (pattern, q), edges = max(groups.items(), key=lambda kv: (len(kv[1]), kv[0]))
    return pattern, q, edges


# ---------------------------------------------------------------------------
# case harness


@dataclass
class CaseReport:
    case: str
    enumerated: int = 0
    failures: List[dict] = field(default_factory=list)
    checks: List[Tuple[str, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"case": self.case, "enumerated": self.enumerated, "failures": self.failures}


class _Scene:
    """A small ordered world: named vertices with their edges.

    Names are gadget role strings such as ``"s3"`` or ``"x4"``; synthetic
    vertices (``"w"``, ``"z"``) get whatever neighbours a check asks for.
    """

    def __init__(self, g: GadgetGraph):
        self.g = g
        self.adj: Dict[str, Set[str]] = {}

    def name(self, v: int) -> str:
        r = self.g.roles[v]
        return r.tag if r.index == 0 else f"{r.tag}{r.index}"

    def vertex(self, name: str) -> int:
        tag, i = _split(name)
        return self.g.lookup(tag, i)

    def edges_among(self, names: Iterable[str], drop: Iterable[Edge] = ()) -> List[Tuple[str, str]]:
        names = list(names)
        drop = {frozenset(e) for e in drop}
        ids = {}
        for nm in names:
            if nm in self.adj:
                continue
            ids[self.vertex(nm)] = nm
        out = []
        gadj = self.g.graph.adjacency
        for v, nm in ids.items():
            for w in gadj[v]:
                if w in ids and v < w and frozenset((nm, ids[w])) not in drop:
                    out.append((nm, ids[w]))
        for nm, nbrs in self.adj.items():
            if nm in names:
                for w in nbrs:
                    if w in names and (w not in self.adj or nm < w) and frozenset((nm, w)) not in drop:
                        out.append((nm, w))
        return out


def _rainbow(order: Sequence[str], edges: Sequence[Tuple[str, str]]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    es = [e for e in edges if e[0] in pos and e[1] in pos]
    if not es:
        return 0
    depth, _ = nesting_depths(es, pos)
    return max(depth)


def interleavings(
    skeleton: Sequence[str],
    free: Sequence[str],
    allowed: Optional[Callable[[str, int], bool]] = None,
) -> Iterator[List[str]]:
    """Every order extending ``skeleton`` by ``free``; gap ``k`` sits after ``k`` skeleton vertices."""
    skel = set(skeleton)

    def rec(seq: List[str], k: int):
        if k == len(free):
            yield list(seq)
            return
        v = free[k]
        gap = 0
        for p in range(len(seq) + 1):
            if allowed is None or allowed(v, gap):
                seq.insert(p, v)
                yield from rec(seq, k + 1)
                seq.pop(p)
            if p < len(seq) and seq[p] in skel:
                gap += 1

    yield from rec(list(skeleton), 0)


_NAME = re.compile(r"^(.*?)(\d*)$")
_MIRROR_TAG = {"A": "B", "s": "t", "x": "y", "p": "v", "q": "u", "alpha": "beta",
               "alpha'": "beta'", "alpha''": "beta''"}
_MIRROR_TAG.update({v: k for k, v in list(_MIRROR_TAG.items())})


def _split(name: str) -> Tuple[str, int]:
    tag, digits = _NAME.match(name).groups()
    return tag, int(digits) if digits else 0


def _mirror_name(name: str, r: int) -> str:
    """Reverse the order, swap the poles, swap s/t and x/y, reverse indices."""
    tag, i = _split(name)
    if tag not in _MIRROR_TAG:
        return name + "*"
    return _MIRROR_TAG[tag] + (str(r + 1 - i) if i else "")


def _run(report: CaseReport, label: str, orders: Iterable[List[str]], edges, need: int = 4,
         expect_rainbow: Optional[Callable[[List[str]], bool]] = None, mirror_r: int = 0,
         scene: Optional[_Scene] = None):
    """Enumerate orders; those selected by ``expect_rainbow`` must reach ``need``."""
    total = bad = 0
    for order in orders:
        total += 1
        if expect_rainbow is not None and not expect_rainbow(order):
            continue
        size = _rainbow(order, edges)
        if size < need:
            bad += 1
            if len(report.failures) < 50:
                report.failures.append({"check": label, "order": order, "rainbow": size})
        if mirror_r:
            mirrored = [_mirror_name(v, mirror_r) for v in reversed(order)]
            medges = [(_mirror_name(a, mirror_r), _mirror_name(b, mirror_r)) for a, b in edges]
            other = _rainbow(mirrored, medges)
            if other != size:
                bad += 1
                report.failures.append({"check": label + ":mirror", "order": order, "rainbow": size,
                                        "mirrored": other})
            if scene is not None:
                real = scene.edges_among(mirrored)
                if set(map(frozenset, real)) != set(map(frozenset, medges)):
                    bad += 1
                    report.failures.append({"check": label + ":mirror-edges", "order": order})
    report.enumerated += total
    report.checks.append((label, total, bad))


def _s(i):
    return f"s{i}"


def _t(i):
    return f"t{i}"


def _p1_twist(params) -> CaseReport:
    r = 8
    g = build_gt(r)
    sc = _Scene(g)
    rep = CaseReport("p1-twist")
    skel = [_s(i) for i in range(1, r + 1)] + ["A", "B"] + [_t(i) for i in range(1, r + 1)]
    for z in ("x4", "y4"):
        names = skel + [z]
        _run(rep, f"{z}-anywhere", interleavings(skel, [z]), sc.edges_among(names))
    # the argument for x4 never uses the edge x4-A
    names = skel + ["x4"]
    _run(rep, "x4-without-pole-edge", interleavings(skel, ["x4"]),
         sc.edges_among(names, drop=[("x4", "A")]))
    return rep


def _p2_twist(params) -> CaseReport:
    r = 8
    g = build_gt(r)
    sc = _Scene(g)
    rep = CaseReport("p2-twist")
    skel = ["A"] + [_s(i) for i in range(1, r + 1)] + ["B"] + [_t(i) for i in range(1, r + 1)]
    free = ["x4", "x5"]
    edges = sc.edges_among(skel + free)
    _run(rep, "x4,x5-anywhere", interleavings(skel, free), edges, mirror_r=r, scene=sc)
    # the mirror image: s1..s8 A t1..t8 B with y4, y5
    skel3 = [_s(i) for i in range(1, r + 1)] + ["A"] + [_t(i) for i in range(1, r + 1)] + ["B"]
    free3 = ["y4", "y5"]
    _run(rep, "P3:y4,y5-anywhere", interleavings(skel3, free3), sc.edges_among(skel3 + free3))
    return rep


def _r1(seq: Sequence[str]) -> bool:
    """The first seven Z vertices appear with non-decreasing index."""
    idx = [int(v[1:]) for v in seq[:7]]
    return all(a <= b for a, b in zip(idx, idx[1:]))


def _r2(seq: Sequence[str]) -> bool:
    """Among the last seven Z vertices every x precedes every y."""
    tail = seq[-7:]
    last_x = max((k for k, v in enumerate(tail) if v[0] == "x"), default=-1)
    first_y = min((k for k, v in enumerate(tail) if v[0] == "y"), default=len(tail))
    return last_x < first_y


def _p4_twist(params) -> CaseReport:
    r = 10
    g = build_gt(r)
    sc = _Scene(g)
    rep = CaseReport("p4-twist")
    skel = ["A", "B"] + [_s(i) for i in range(1, r + 1)] + [_t(i) for i in range(1, r + 1)]
    Z = [f"x{i}" for i in range(4, 8)] + [f"y{i}" for i in range(4, 8)]
    t9_gap = skel.index("t9")
    for z in Z:
        names = skel + [z]
        edges = sc.edges_among(names, drop=[(z, "A"), (z, "B")])
        _run(rep, f"{z}-before-t9", interleavings(skel, [z], lambda v, gap: gap <= t9_gap), edges,
             mirror_r=r)
    # all orders of Z after t9; dropping t10 only removes edges, so one
    # skeleton without t10 covers every position of t10 as well
    skel9 = skel[:]
    skel9.remove("t10")
    edges = sc.edges_among(skel9 + Z)
    orders = (skel9 + list(p) for p in itertools.permutations(Z))
    _run(rep, "Z-after-t9", orders, edges)
    if params.get("with_t10", False):
        edges10 = sc.edges_among(skel + Z)
        orders10 = (skel[:t9_gap + 1] + list(p[:k]) + ["t10"] + list(p[k:])
                    for p in itertools.permutations(Z) for k in range(len(Z) + 1))
        _run(rep, "Z-around-t10", orders10, edges10)
    both = sum(1 for p in itertools.permutations(Z) if _r1(p) and _r2(p))
    rep.checks.append(("prefix-and-suffix", 40320, both))
    if both:
        rep.failures.append({"check": "prefix-and-suffix", "count": both})
    return rep


def _necklace_skeleton(r: int = 10) -> List[str]:
    out = ["A", "B"]
    for i in range(1, r + 1):
        out += [_s(i), _t(i)]
    return out


def _between(skel: Sequence[str], lo: str, hi: str) -> Callable[[int], bool]:
    """Gap predicate: strictly after ``lo`` and strictly before ``hi``."""
    a, b = skel.index(lo), skel.index(hi)
    return lambda gap: a < gap <= b


def _after(skel: Sequence[str], v: str) -> Callable[[int], bool]:
    a = skel.index(v)
    return lambda gap: gap > a


def _p4_necklace_props(params) -> CaseReport:
    r = 10
    g = build_gt(r)
    sc = _Scene(g)
    rep = CaseReport("p4-necklace-props")
    skel = _necklace_skeleton(r)
    lo_i, hi_i = params.get("i_min", 3), params.get("i_max", 8)
    late = _after(skel, "s10")
    for i in range(lo_i, hi_i + 1):
        inside = _between(skel, _s(i - 1), _t(i + 1))
        # a common neighbour w of s_i and t_i (or of just one of them)
        for nbrs in ((_s(i), _t(i)), (_s(i),), (_t(i),)):
            sc.adj = {"w": set(nbrs)}
            edges = sc.edges_among(skel + ["w"])
            _run(rep, f"neighbour:i={i}:w~{'+'.join(nbrs)}", interleavings(skel, ["w"]), edges,
                 expect_rainbow=lambda o: not (inside(_gap(o, "w", skel)) or late(_gap(o, "w", skel))))
        # w, z, s_i, t_i form a K4
        sc.adj = {"w": {_s(i), _t(i), "z"}, "z": {_s(i), _t(i), "w"}}
        edges = sc.edges_among(skel + ["w", "z"])
        _run(rep, f"k4-pair:i={i}", interleavings(skel, ["w", "z"]), edges,
             expect_rainbow=lambda o: not (late(_gap(o, "w", skel)) or late(_gap(o, "z", skel))))
        # w, z adjacent to s_i, t_i but not to each other
        sc.adj = {"w": {_s(i), _t(i)}, "z": {_s(i), _t(i)}}
        edges = sc.edges_among(skel + ["w", "z"])
        left = _between(skel, _s(i - 1), _s(i))
        right = _between(skel, _t(i), _t(i + 1))
        mid = _between(skel, _s(i), _t(i))

        def forbidden(o, left=left, right=right, mid=mid):
            gw, gz = _gap(o, "w", skel), _gap(o, "z", skel)
            if (left(gw) and left(gz)) or (right(gw) and right(gz)):
                return True
            side_w, side_z = left(gw) or right(gw), left(gz) or right(gz)
            return (side_w and mid(gz)) or (side_z and mid(gw))

        _run(rep, f"independent-pair:i={i}", interleavings(skel, ["w", "z"]), edges, expect_rainbow=forbidden)
    # a stellation vertex of edge i placed after s10 while one vertex
    # of each K4 around (s_{i-1}, t_{i-1}) is also after s10
    for i in range(max(lo_i, 4), hi_i + 1):
        for tag in ("x", "y", "p", "q", "u", "v"):
            w = f"{tag}{i}"
            lates = [f"k{j}" for j in range(4)]
            sc.adj = {k: {_s(i - 1), _t(i - 1)} for k in lates}
            names = skel + [w] + lates
            edges = sc.edges_among(names)
            orders = interleavings(skel, [w] + lates, lambda v, gap: late(gap))
            _run(rep, f"late:i={i}:{w}", orders, edges)
    sc.adj = {}
    return rep


def _gap(order: Sequence[str], v: str, skel: Sequence[str]) -> int:
    skel_set = set(skel)
    k = 0
    for u in order:
        if u == v:
            return k
        if u in skel_set:
            k += 1
    raise KeyError(v)


def _p4_necklace_final(params) -> CaseReport:
    r = 10
    g = build_gt(r)
    sc = _Scene(g)
    rep = CaseReport("p4-necklace-final")
    skel = _necklace_skeleton(r)
    free_names = params.get("free", ("x", "y", "p", "q"))
    for i in range(params.get("i_min", 4), params.get("i_max", 8) + 1):
        inside = _between(skel, _s(i - 1), _t(i + 1))
        free = [f"{tag}{i}" for tag in free_names]
        edges = sc.edges_among(skel + free)
        _run(rep, f"final:i={i}", interleavings(skel, free, lambda v, gap: inside(gap)), edges,
             mirror_r=r, scene=sc)
    return rep


CASES: Dict[str, Callable[[dict], CaseReport]] = {
    "p1-twist": _p1_twist,
    "p2-twist": _p2_twist,
    "p4-twist": _p4_twist,
    "p4-necklace-props": _p4_necklace_props,
    "p4-necklace-final": _p4_necklace_final,
}


def check_case(case_id: str, params: Optional[dict] = None) -> CaseReport:
    """Enumerate the placements of one case and collect those without a 4-rainbow."""
    if case_id not in CASES:
        raise UnknownCase(f"unknown case {case_id!r}; known: {', '.join(CASES)}")
    return CASES[case_id](dict(params or {}))

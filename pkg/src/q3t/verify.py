"""Rainbows, twists and necklaces: checking and computing queue layouts.

Two edges ``(a, b)`` and ``(c, d)`` with endpoints normalised so that
``a < b`` and ``c < d`` in the order *nest* when ``a < c`` and ``d < b``
strictly.  Edges sharing an endpoint therefore never nest.  This is the only
nesting test used anywhere in the package.
"""

from __future__ import annotations

import bisect
import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    BudgetExceeded,
    IncompleteAssignment,
    PreconditionViolated,
    UnknownVertex,
)
from .graph_core import Edge, SimpleGraph, norm_edge

Pos = Mapping[int, int]


@dataclass(frozen=True)
class LinearOrder:
    """A bijection between vertices and ranks ``0..n-1``."""

    sequence: Tuple[int, ...]
    position: Dict[int, int] = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        pos = {v: i for i, v in enumerate(self.sequence)}
        if len(pos) != len(self.sequence):
            raise PreconditionViolated("order repeats a vertex")
        object.__setattr__(self, "position", pos)

    @classmethod
    def of(cls, order) -> "LinearOrder":
        if isinstance(order, LinearOrder):
            return order
        return cls(tuple(order))

    def __len__(self):
        return len(self.sequence)

    def __getitem__(self, v: int) -> int:
        return self.position[v]

    def precedes(self, u: int, v: int) -> bool:
        return self.position[u] < self.position[v]


@dataclass(frozen=True)
class PatternCertificate:
    """A set of independent edges forming a rainbow, twist or necklace.

    ``edges`` holds ``(s_i, t_i)`` pairs oriented by the order, listed as
    ``s_1, s_2, ...`` appear.  ``positions`` holds the matching ranks.
    """

    kind: str
    edges: Tuple[Edge, ...]
    positions: Tuple[Tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    @classmethod
    def build(cls, kind: str, edges: Iterable[Edge], pos: Pos) -> "PatternCertificate":
        oriented = []
        for u, v in edges:
            oriented.append((u, v) if pos[u] < pos[v] else (v, u))
        oriented.sort(key=lambda e: pos[e[0]])
        return cls(kind, tuple(oriented), tuple((pos[s], pos[t]) for s, t in oriented))

    def check(self) -> bool:
        """Whether the recorded positions really form the claimed pattern."""
        ps = self.positions
        ends = [p for e in ps for p in e]
        if len(set(ends)) != len(ends):
            return False  # not independent
        if any(s >= t for s, t in ps) or any(ps[i][0] >= ps[i + 1][0] for i in range(len(ps) - 1)):
            return False
        pairs = zip(ps, ps[1:])
        if self.kind == "rainbow":
            return all(t2 < t1 for (_, t1), (s2, t2) in pairs)
        if self.kind == "twist":
            return all(t1 < t2 for (_, t1), (_, t2) in pairs) and ps[-1][0] < ps[0][1]
        if self.kind == "necklace":
            return all(t1 < s2 for (_, t1), (s2, _) in pairs)
        return False

    def to_json(self) -> dict:
        return {"kind": self.kind, "edges": [list(e) for e in self.edges],
                "positions": [list(p) for p in self.positions]}


@dataclass(frozen=True)
class QueueLayout:
    """Vertex order plus queue index per edge.

    ``intervals`` lists ``(level, start, end)`` with ``end`` exclusive when
    the layout comes from the level-by-level construction.
    """

    order: Tuple[int, ...]
    queue_of: Dict[Edge, int]
    intervals: Tuple[Tuple[int, int, int], ...] = ()

    @property
    def queues_used(self) -> int:
        return len(set(self.queue_of.values()))

    @property
    def num_queues(self) -> int:
        return max(self.queue_of.values(), default=-1) + 1

    def positions(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    reason: str = ""
    queue: Optional[int] = None
    certificate: Optional[PatternCertificate] = None

    def __bool__(self):
        return self.ok


def nests(e: Edge, f: Edge, pos: Pos) -> bool:
    """Whether ``e`` strictly encloses ``f`` or ``f`` encloses ``e``."""
    a, b = sorted((pos[e[0]], pos[e[1]]))
    c, d = sorted((pos[f[0]], pos[f[1]]))
    return (a < c and d < b) or (c < a and b < d)


def _spans(edges: Iterable[Edge], pos: Pos) -> List[Tuple[int, int, Edge]]:
    out = []
    for u, v in edges:
        a, b = pos[u], pos[v]
        out.append((a, b, (u, v)) if a < b else (b, a, (u, v)))
    return out


def queue_nesting_pair(edges: Iterable[Edge], pos: Pos) -> Optional[Tuple[Edge, Edge]]:
    """Some ``(outer, inner)`` nesting pair among ``edges``, or ``None``.

    Sweeps edges by left end; an edge is nested iff a strictly-earlier-left
    edge reaches strictly further right.
    """
    spans = sorted(_spans(edges, pos))
    best_r, best_e = -1, None
    i = 0
    while i < len(spans):
        j = i
        while j < len(spans) and spans[j][0] == spans[i][0]:
            j += 1
        for _, r, e in spans[i:j]:
            if r < best_r:
                return best_e, e
        top = max(spans[i:j], key=lambda s: s[1])
        if top[1] > best_r:
            best_r, best_e = top[1], top[2]
        i = j
    return None


class _PrefixMax:
    """Fenwick tree of (value, payload) supporting prefix maxima."""

    def __init__(self, n: int):
        self.n = n
        self.tree: List[Tuple[int, int]] = [(0, -1)] * (n + 1)

    def update(self, i: int, item: Tuple[int, int]):
        i += 1
        while i <= self.n:
            if item > self.tree[i]:
                self.tree[i] = item
            i += i & -i

    def query(self, i: int) -> Tuple[int, int]:
        """Maximum over indices ``< i``."""
        best = (0, -1)
        while i > 0:
            if self.tree[i] > best:
                best = self.tree[i]
            i -= i & -i
        return best


def nesting_depths(edges: Sequence[Edge], pos: Pos) -> Tuple[List[int], List[int]]:
    """Largest rainbow with each edge outermost, plus a successor pointer.

    ``child[k]`` is the index of the next edge inward on one such rainbow
    (``-1`` if none).  Runs in ``O(m log m)``.
    """
    spans = _spans(edges, pos)
    n = max((b for _, b, _ in spans), default=0) + 1
    depth = [1] * len(spans)
    child = [-1] * len(spans)
    fen = _PrefixMax(n)
    by_left = sorted(range(len(spans)), key=lambda k: -spans[k][0])
    i = 0
    while i < len(by_left):
        j = i
        left = spans[by_left[i]][0]
        while j < len(by_left) and spans[by_left[j]][0] == left:
            j += 1
        group = by_left[i:j]
        for k in group:
            d, c = fen.query(spans[k][1])
            depth[k] = d + 1
            child[k] = c
        for k in group:
            fen.update(spans[k][1], (depth[k], k))
        i = j
    return depth, child


def _order_pos(g: SimpleGraph, order) -> Dict[int, int]:
    lo = LinearOrder.of(order)
    for u, v in g.edges:
        if u not in lo.position or v not in lo.position:
            raise UnknownVertex(f"edge {(u, v)} has an endpoint outside the order")
    return lo.position


def _rainbow_of(edges: Sequence[Edge], pos: Pos) -> Tuple[int, PatternCertificate]:
    if not edges:
        return 0, PatternCertificate("rainbow", (), ())
    depth, child = nesting_depths(edges, pos)
    k = max(range(len(edges)), key=lambda i: depth[i])
    chain = []
    while k != -1:
        chain.append(edges[k])
        k = child[k]
    return len(chain), PatternCertificate.build("rainbow", chain, pos)


def max_rainbow(g: SimpleGraph, order) -> Tuple[int, PatternCertificate]:
    """Size of the largest rainbow under ``order`` with a certificate."""
    pos = _order_pos(g, order)
    return _rainbow_of(list(g.sorted_edges()), pos)


def assign_min_queues(g: SimpleGraph, order) -> QueueLayout:
    """Fewest-queue layout for a fixed order: queue = nesting depth - 1."""
    pos = _order_pos(g, order)
    edges = list(g.sorted_edges())
    depth, _ = nesting_depths(edges, pos)
    return QueueLayout(tuple(LinearOrder.of(order).sequence),
                       {e: d - 1 for e, d in zip(edges, depth)})


def is_valid_queue_layout(g: SimpleGraph, layout: QueueLayout, k: int = 5) -> ValidityReport:
    """Check that ``layout`` is a queue layout of ``g`` using at most ``k`` queues."""
    if sorted(layout.order) != list(range(g.n)):
        missing = set(range(g.n)) - set(layout.order)
        if missing:
            raise UnknownVertex(f"order misses vertices {sorted(missing)[:5]}")
        raise UnknownVertex("order contains vertices outside the graph or repeats")
    queue_of = {norm_edge(*e): q for e, q in layout.queue_of.items()}
    unassigned = [e for e in g.sorted_edges() if e not in queue_of]
    if unassigned:
        raise IncompleteAssignment(f"{len(unassigned)} edges have no queue, e.g. {unassigned[0]}")
    extra = set(queue_of) - set(g.edges)
    if extra:
        raise IncompleteAssignment(f"layout assigns non-edges, e.g. {min(extra)}")
    used = sorted(set(queue_of.values()))
    if len(used) > k:
        return ValidityReport(False, f"{len(used)} queues used, at most {k} allowed")
    pos = layout.positions()
    by_queue: Dict[int, List[Edge]] = {}
    for e, q in sorted(queue_of.items()):
        by_queue.setdefault(q, []).append(e)
    for q in used:
        pair = queue_nesting_pair(by_queue[q], pos)
        if pair is not None:
            cert = PatternCertificate.build("rainbow", pair, pos)
            return ValidityReport(False, f"queue {q}: {pair[0]} nests {pair[1]}", q, cert)
    return ValidityReport(True)


# ---------------------------------------------------------------------------
# exact queue number


@dataclass
class Budget:
    max_n: int = 12
    timeout: Optional[float] = None
    upper_order: Optional[Sequence[int]] = None


def queue_lower_bound(n: int, m: int) -> int:
    """Smallest ``k`` with ``m <= 2kn - k(2k+1)``, the edge bound for k queues."""
    if m == 0:
        return 0
    k = 1
    while m > 2 * k * n - k * (2 * k + 1):
        k += 1
    return k


def _heuristic_orders(g: SimpleGraph, rng: random.Random, tries: int):
    import networkx as nx

    nxg = g.to_networkx()
    for src in range(g.n):
        yield [v for v in nx.bfs_tree(nxg, src)] + [v for v in range(g.n) if v not in nx.node_connected_component(nxg, src)]
    for _ in range(tries):
        perm = list(range(g.n))
        rng.shuffle(perm)
        yield perm


def exact_queue_number(g: SimpleGraph, budget: Optional[Budget] = None) -> Tuple[int, List[int]]:
    """Queue number of ``g`` with a witness order, by branch and bound.

    Vertices are placed left to right.  The bound of a prefix is its deepest
    closed rainbow, plus one when some open edge starts left of that
    rainbow's outer edge (the rainbow then ends up beneath it).
    """
    budget = budget or Budget()
    n, m = g.n, g.m
    if n > budget.max_n:
        raise BudgetExceeded(f"n={n} exceeds solver limit {budget.max_n}",
                             queue_lower_bound(n, m), None, None)
    if m == 0:
        return 0, list(range(n))
    lower = queue_lower_bound(n, m)
    rng = random.Random(0)
    best, best_order = m + 1, None
    candidates = list(_heuristic_orders(g, rng, 200))
    if budget.upper_order is not None:
        candidates.insert(0, list(budget.upper_order))
    for order in candidates:
        size, _ = max_rainbow(g, order)
        if size < best:
            best, best_order = size, list(order)
    if best == lower:
        return best, best_order

    adj = [sorted(g.adjacency[v]) for v in range(n)]
    pos = [-1] * n
    seq: List[int] = []
    # dep_at[l] = deepest closed rainbow whose outer edge starts at rank l
    dep_at = [0] * n
    deadline = None if budget.timeout is None else time.monotonic() + budget.timeout
    nodes = 0
    half = (n - 1) // 2

    def bound_after() -> int:
        p = len(seq)
        closed = max(dep_at[:p], default=0)
        # leftmost open edge; anything closed strictly inside it nests below it
        for u in seq:
            if any(pos[w] < 0 for w in adj[u]):
                inner = max(dep_at[pos[u] + 1:p], default=0)
                return max(closed, inner + 1 if inner else 0)
        return closed

    def place(v: int):
        p = len(seq)
        pos[v] = p
        seq.append(v)
        saved = []
        new = []
        for u in adj[v]:
            l = pos[u]
            if 0 <= l < p:
                new.append((l, 1 + max(dep_at[l + 1:p], default=0)))
        for l, d in new:
            saved.append((l, dep_at[l]))
            if d > dep_at[l]:
                dep_at[l] = d
        return saved

    def unplace(v: int, saved):
        for l, d in reversed(saved):
            dep_at[l] = d
        seq.pop()
        pos[v] = -1

    def search():
        nonlocal best, best_order, nodes
        nodes += 1
        if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
            raise TimeoutError
        if len(seq) == n:
            b = max(dep_at)
            if b < best:
                best, best_order = b, list(seq)
            return
        if len(seq) > half and pos[0] < 0:
            return
        options = []
        for v in range(n):
            if pos[v] >= 0:
                continue
            saved = place(v)
            b = bound_after()
            unplace(v, saved)
            if b < best:
                options.append((b, -sum(1 for u in adj[v] if pos[u] >= 0), v))
        options.sort()
        for b, _, v in options:
            if b >= best or best <= lower:
                continue
            saved = place(v)
            search()
            unplace(v, saved)

    try:
        search()
    except TimeoutError:
        raise BudgetExceeded(f"timeout after {budget.timeout}s", lower, best, best_order)
    return best, best_order


# ---------------------------------------------------------------------------
# twists and necklaces


def find_twist_or_necklace(edges: Sequence[Edge], order, r: int) -> PatternCertificate:
    """An ``r``-twist among ``edges`` if there is one, else an ``r``-necklace.

    ``edges`` must hold at least ``r*r`` pairwise independent, pairwise
    non-nesting edges.  Sorted by left end their right ends also increase,
    so edges ``i`` and ``j > i`` cross iff ``left_j < right_i``.
    """
    lo = LinearOrder.of(order)
    pos = lo.position
    if r < 1:
        raise PreconditionViolated("r must be positive")
    if len(edges) < r * r:
        raise PreconditionViolated(f"need {r * r} edges, got {len(edges)}")
    ends = [x for e in edges for x in e]
    if len(set(ends)) != len(ends):
        raise PreconditionViolated("edges are not pairwise independent")
    pair = queue_nesting_pair(edges, pos)
    if pair is not None:
        raise PreconditionViolated(f"{pair[0]} nests {pair[1]}")
    spans = sorted(_spans(edges, pos))
    lefts = [s[0] for s in spans]
    for i, (_, right, _) in enumerate(spans):
        if bisect.bisect_left(lefts, right) - i >= r:
            return PatternCertificate.build("twist", [s[2] for s in spans[i:i + r]], pos)
    # No r-twist: edge k and edge k + r - 1 never cross, so taking one edge
    # and skipping the next r - 1 yields pairwise disjoint edges.
    chosen = [spans[k * r][2] for k in range(r)]
    cert = PatternCertificate.build("necklace", chosen, pos)
    assert cert.check(), "necklace extraction broke"
    return cert


def brute_force_max_rainbow(edges: Sequence[Edge], pos: Pos) -> int:
    """Quadratic longest-chain DP over strict nesting; used as an oracle."""
    spans = sorted(_spans(edges, pos), key=lambda s: s[1] - s[0])
    best = [1] * len(spans)
    for i, (a, b, _) in enumerate(spans):
        for j in range(i):
            c, d, _ = spans[j]
            if a < c and d < b:
                best[i] = max(best[i], best[j] + 1)
    return max(best, default=0)


def naive_queue_number(g: SimpleGraph) -> int:
    """Minimum over all ``n!`` orders of the maximum rainbow."""
    if g.m == 0:
        return 0
    edges = list(g.sorted_edges())
    best = g.m
    for perm in itertools.permutations(range(g.n)):
        pos = {v: i for i, v in enumerate(perm)}
        best = min(best, brute_force_max_rainbow(edges, pos))
    return best

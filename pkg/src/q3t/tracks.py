"""Track layouts, the acyclic 4-colouring of planar 3-trees, and the track bound."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import InputError
from .graph_core import Edge, SimpleGraph, StackedTriangulation


@dataclass(frozen=True)
class TrackLayout:
    """``tracks[i]`` lists the vertices of track ``i`` in their order."""

    tracks: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_assignment(cls, track_of: Dict[int, int], order: Sequence[int]) -> "TrackLayout":
        k = max(track_of.values(), default=-1) + 1
        tracks: List[List[int]] = [[] for _ in range(k)]
        for v in order:
            tracks[track_of[v]].append(v)
        return cls(tuple(tuple(t) for t in tracks))

    @property
    def track_of(self) -> Dict[int, int]:
        return {v: i for i, t in enumerate(self.tracks) for v in t}


@dataclass(frozen=True)
class TrackViolation:
    kind: str  # "intra-track" or "x-crossing"
    edges: Tuple[Edge, ...]


def validate_track_layout(g: SimpleGraph, tl: TrackLayout) -> Optional[TrackViolation]:
    """``None`` if ``tl`` is a track layout of ``g``, else a witness.

    Edges ``(u, v)``, ``(x, y)`` with ``u, x`` on one track and ``v, y`` on
    another form an X-crossing when ``u < x`` but ``y < v``.
    """
    track = tl.track_of
    rank = {v: i for t in tl.tracks for i, v in enumerate(t)}
    missing = [v for v in range(g.n) if v not in track]
    if missing:
        raise InputError(f"vertices without a track: {missing[:5]}")
    between: Dict[Tuple[int, int], List[Tuple[int, int, Edge]]] = {}
    for u, v in g.sorted_edges():
        if track[u] == track[v]:
            return TrackViolation("intra-track", ((u, v),))
        if track[u] > track[v]:
            u, v = v, u
        between.setdefault((track[u], track[v]), []).append((rank[u], rank[v], (u, v)))
    for pairs in between.values():
        # sorted by the lower track, ranks on the upper track must not drop;
        # edges sharing a lower endpoint cannot cross each other
        pairs.sort()
        best = None
        i = 0
        while i < len(pairs):
            j = i
            while j < len(pairs) and pairs[j][0] == pairs[i][0]:
                j += 1
            for _, r, e in pairs[i:j]:
                if best is not None and r < best[0]:
                    return TrackViolation("x-crossing", (best[1], e))
            top = max(pairs[i:j], key=lambda p: p[1])
            if best is None or top[1] > best[0]:
                best = (top[1], top[2])
            i = j
    return None


@dataclass(frozen=True)
class Coloring:
    color_of: Dict[int, int]

    @property
    def num_colors(self) -> int:
        return len(set(self.color_of.values()))

    def classes(self) -> List[frozenset]:
        out: Dict[int, set] = {}
        for v, c in self.color_of.items():
            out.setdefault(c, set()).add(v)
        return sorted((frozenset(s) for s in out.values()), key=min)


def acyclic_4_coloring(st: StackedTriangulation) -> Coloring:
    """The proper 4-colouring: each apex takes the colour missing from its face."""
    color = {v: i for i, v in enumerate(st.base)}
    for s in st.stellations:
        (missing,) = {0, 1, 2, 3} - {color[v] for v in s.face}
        color[s.apex] = missing
    return Coloring(color)


def is_proper(g: SimpleGraph, col: Coloring) -> bool:
    return all(col.color_of[u] != col.color_of[v] for u, v in g.edges)


def bichromatic_cycle(g: SimpleGraph, col: Coloring) -> Optional[List[int]]:
    """Some cycle using only two colours, or ``None`` when the colouring is acyclic."""
    colors = sorted(set(col.color_of.values()))
    for i, a in enumerate(colors):
        for b in colors[i + 1:]:
            h = nx.Graph()
            h.add_edges_from(e for e in g.edges if {col.color_of[e[0]], col.color_of[e[1]]} == {a, b})
            if h.number_of_edges() and not nx.is_forest(h):
                return [u for u, _ in nx.find_cycle(h)]
    return None


def is_acyclic(g: SimpleGraph, col: Coloring) -> bool:
    return is_proper(g, col) and bichromatic_cycle(g, col) is None


TRACK_BOUND_LIMIT = 10 ** 100


def track_bound(q: int, c: int) -> int:
    """Track number bound ``c (2q)^(c-1)`` for queue number ``q``, acyclic chromatic number ``c``."""
    if q < 1 or c < 1:
        raise InputError("q and c must be positive")
    if (c - 1) * (2 * q).bit_length() > TRACK_BOUND_LIMIT.bit_length():
        raise OverflowError(f"track_bound({q}, {c}) exceeds 10^100")
    return c * (2 * q) ** (c - 1)

"""Planar 3-trees as stacked triangulations, and their peeling into levels.

A planar 3-tree is stored as its construction history: a base triangle and
an ordered list of stellations, each placing a new apex inside a current
(bounded) face and joining it to the three corners.  The set of bounded
faces of the current graph is exactly the set of leaves of the face tree,
so the embedding never has to be computed separately.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import (
    AugmentationConflict,
    DuplicateApex,
    InputError,
    InternalStructureViolation,
    NotA3Tree,
    NotAFace,
    NotPlanar3Tree,
    StellationTargetNotAFace,
    TooSmall,
)

Edge = Tuple[int, int]
Face = FrozenSet[int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def face_key(face: Iterable[int]) -> Tuple[int, int, int]:
    """Canonical sorted triple for a face given in any order."""
    a, b, c = sorted(face)
    return (a, b, c)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices ``0..vertex_count-1``."""

    vertex_count: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InputError("vertex_count must be non-negative")
        clean = set()
        for u, v in self.edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InputError(f"edge ({u}, {v}) uses an unknown vertex")
            clean.add(norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        edges = [tuple(e) for e in edges]
        seen = set()
        for u, v in edges:
            e = norm_edge(u, v)
            if e in seen:
                raise InputError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        adj = defaultdict(set)
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(adj[v]) for v in range(self.vertex_count)}

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class Stellation:
    apex: int
    face: Tuple[int, int, int]


@dataclass(frozen=True)
class StackedTriangulation:
    """A planar 3-tree given by its base triangle and stellation history.

    The base triangle is the outer face.  ``faces`` are the bounded faces of
    the final graph (the leaves of the face tree).
    """

    base: Tuple[int, int, int]
    stellations: Tuple[Stellation, ...]
    edges: FrozenSet[Edge] = field(repr=False)
    faces: FrozenSet[Face] = field(repr=False)

    @property
    def n(self) -> int:
        return 3 + len(self.stellations)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def graph(self) -> SimpleGraph:
        return SimpleGraph(self.n, self.edges)

    @property
    def outer_face(self) -> Face:
        return frozenset(self.base)

    def has_face(self, triple: Iterable[int]) -> bool:
        f = frozenset(triple)
        return f == self.outer_face or f in self.faces


def build_from_stellations(
    base: Sequence[int], stellations: Iterable[Sequence]
) -> StackedTriangulation:
    """Replay a stellation history and return the resulting triangulation.

    Each stellation is ``(apex, face)`` or a :class:`Stellation`.  The face
    must be a bounded face at the time it is stellated.  Vertex ids must end
    up being exactly ``0..n-1``.
    """
    base = tuple(int(v) for v in base)
    if len(set(base)) != 3:
        raise InputError(f"base must be three distinct vertices, got {base}")
    records = []
    for s in stellations:
        if isinstance(s, Stellation):
            records.append(s)
        else:
            apex, face = s
            records.append(Stellation(int(apex), face_key(face)))

    used = set(base)
    edges = {norm_edge(base[0], base[1]), norm_edge(base[1], base[2]), norm_edge(base[0], base[2])}
    leaves = {frozenset(base)}
    for rec in records:
        if rec.apex in used:
            raise DuplicateApex(f"vertex {rec.apex} is already present")
        f = frozenset(rec.face)
        if len(f) != 3 or f not in leaves:
            raise StellationTargetNotAFace(f"{rec.face} is not a current face")
        leaves.remove(f)
        a, b, c = rec.face
        k = rec.apex
        leaves.update((frozenset((a, b, k)), frozenset((b, c, k)), frozenset((a, c, k))))
        edges.update((norm_edge(a, k), norm_edge(b, k), norm_edge(c, k)))
        used.add(k)

    n = len(used)
    if used != set(range(n)):
        raise InputError("vertex ids must be exactly 0..n-1")
    return StackedTriangulation(base, tuple(records), frozenset(edges), frozenset(leaves))


def random_3tree(n: int, seed: int = 0) -> StackedTriangulation:
    """Random planar 3-tree: each new apex stellates a uniform random face."""
    if n < 3:
        raise TooSmall(f"a planar 3-tree needs n >= 3, got {n}")
    rng = random.Random(seed)
    leaves: List[Tuple[int, int, int]] = [(0, 1, 2)]
    stellations = []
    for k in range(3, n):
        i = rng.randrange(len(leaves))
        a, b, c = leaves[i]
        leaves[i] = leaves[-1]
        leaves.pop()
        stellations.append(Stellation(k, (a, b, c)))
        leaves.extend(((a, b, k), (b, c, k), (a, c, k)))
    return build_from_stellations((0, 1, 2), stellations)


def goldner_harary() -> StackedTriangulation:
    """The 11-vertex Goldner-Harary graph.

    It is the triangular bipyramid (equator 0, 1, 2; poles 3, 4) with all six
    faces stellated by 5..10.  One bipyramid face must be the outer face of
    the bipyramid, so the graph is built as an edge list and re-rooted at the
    face (0, 1, 5), which lies inside the stellated face (0, 1, 3).
    """
    edges = {(0, 1), (1, 2), (0, 2)}
    for pole in (3, 4):
        edges.update((e, pole) for e in (0, 1, 2))
    apex = 5
    for pole in (3, 4):
        for a, b in ((0, 1), (1, 2), (0, 2)):
            edges.update(((a, apex), (b, apex), (pole, apex)))
            apex += 1
    g = SimpleGraph.from_edges(11, edges)
    return recognize(g, outer=(0, 1, 5))


# -- recognition -------------------------------------------------------------


def _eliminate(adj: Dict[int, set], protected: FrozenSet[int]) -> List[Tuple[int, Tuple[int, int, int]]]:
    """Strip degree-3 vertices whose neighbourhood is a triangle.

    Returns the removal sequence as ``(vertex, neighbour triple)`` followed
    by ``(None, survivors)``.  Raises :class:`NotA3Tree` when stuck.
    """
    adj = {v: set(nb) for v, nb in adj.items()}
    pending = deque(v for v in adj if len(adj[v]) == 3 and v not in protected)
    removed = []
    while len(adj) > 3:
        found = None
        while pending:
            v = pending.popleft()
            if v not in adj or len(adj[v]) != 3:
                continue
            a, b, c = adj[v]
            if b in adj[a] and c in adj[a] and c in adj[b]:
                found = v
                break
        if found is None:
            raise NotA3Tree(f"no eliminable vertex with {len(adj)} vertices left")
        v = found
        nbrs = tuple(adj.pop(v))
        for u in nbrs:
            adj[u].discard(v)
            if len(adj[u]) == 3 and u not in protected:
                pending.append(u)
        removed.append((v, face_key(nbrs)))
    rest = list(adj)
    a, b, c = rest
    if not (b in adj[a] and c in adj[a] and c in adj[b]):
        raise NotA3Tree("the last three vertices do not form a triangle")
    removed.append((None, face_key(rest)))
    return removed


def recognize(g: SimpleGraph, outer: Optional[Sequence[int]] = None) -> StackedTriangulation:
    """Recognize ``g`` as a planar 3-tree and return a stellation history.

    A degree-3 vertex with a triangular neighbourhood is removed repeatedly.
    The reversed sequence is replayed on the sphere (the two sides of the
    starting triangle both count as faces), which succeeds exactly when the
    graph is planar.  The history is then recomputed from the requested outer
    face (default: the final triangle of the first elimination when it is a
    face, else the smallest face) so that every apex lies inside it.
    """
    if g.n < 3:
        raise TooSmall(f"a planar 3-tree needs n >= 3, got {g.n}")
    if g.m != 3 * g.n - 6:
        raise NotA3Tree(f"a planar 3-tree on {g.n} vertices has {3 * g.n - 6} edges, got {g.m}")
    adj = {v: set(nb) for v, nb in g.adjacency.items()}

    seq = _eliminate(adj, frozenset())
    start = frozenset(seq[-1][1])
    sphere = Counter({start: 2})
    for v, nbrs in reversed(seq[:-1]):
        f = frozenset(nbrs)
        if sphere[f] == 0:
            raise NotPlanar3Tree(f"neighbours {nbrs} of vertex {v} do not bound a face")
        sphere[f] -= 1
        a, b, c = nbrs
        sphere.update((frozenset((a, b, v)), frozenset((b, c, v)), frozenset((a, c, v))))

    if outer is None:
        chosen = start if sphere[start] > 0 else min((f for f, k in sphere.items() if k > 0), key=face_key)
        outer_t = face_key(chosen)
    else:
        outer_t = tuple(int(v) for v in outer)
        if len(set(outer_t)) != 3 or sphere[frozenset(outer_t)] == 0:
            raise NotAFace(f"{tuple(outer)} is not a face of the graph")

    seq = _eliminate(adj, frozenset(outer_t))
    if frozenset(seq[-1][1]) != frozenset(outer_t):
        raise InternalStructureViolation("elimination did not end on the outer face")
    stellations = [Stellation(v, nbrs) for v, nbrs in reversed(seq[:-1])]
    try:
        st = build_from_stellations(outer_t, stellations)
    except StellationTargetNotAFace as exc:
        raise InternalStructureViolation(f"replay from a face failed: {exc}") from exc
    if st.edges != g.edges:
        raise InternalStructureViolation("replay does not reproduce the input edges")
    return st


# -- levels and components ---------------------------------------------------


@dataclass(frozen=True)
class OuterplaneComponent:
    """A connected component of one level, with its internal faces.

    ``outer_cycle`` is the closed boundary walk (a Hamiltonian cycle once the
    component is biconnected).  ``container`` is the triangle of the
    previous level the component lies in (``None`` at level 0).
    """

    level: int
    index: int
    vertices: Tuple[int, ...]
    edges: FrozenSet[Edge]
    internal_faces: Tuple[Tuple[int, int, int], ...]
    outer_cycle: Tuple[int, ...]
    container: Optional[Tuple[int, int, int]] = None
    dummy_edges: FrozenSet[Edge] = frozenset()

    @property
    def ref(self) -> Tuple[int, int]:
        return (self.level, self.index)

    @property
    def real_edges(self) -> FrozenSet[Edge]:
        return self.edges - self.dummy_edges

    def adjacency(self) -> Dict[int, set]:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_biconnected(self) -> bool:
        if len(self.vertices) <= 2:
            return True
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return nx.is_biconnected(g)


@dataclass(frozen=True)
class LevelStructure:
    st: StackedTriangulation
    level_of: Dict[int, int]
    level_edges: Tuple[Tuple[Edge, ...], ...]
    binding_edges: Tuple[Tuple[Edge, ...], ...]
    component_of: Dict[int, Tuple[int, int]]
    components: Tuple[Tuple[Tuple[int, ...], ...], ...]
    containment: Dict[Tuple[int, int], Tuple[int, int, int]]

    @property
    def depth(self) -> int:
        """Index of the deepest level (lambda)."""
        return len(self.components) - 1


def peel_levels(st: StackedTriangulation, outer: Optional[Sequence[int]] = None) -> LevelStructure:
    """Partition vertices into levels by repeatedly removing the outer boundary.

    A vertex shares a face with an already-removed vertex exactly when it is
    adjacent to one, so level ``i`` is the set of vertices at graph distance
    ``i`` from the outer triangle.
    """
    if outer is not None and frozenset(outer) != st.outer_face:
        if not st.has_face(outer):
            raise NotAFace(f"{tuple(outer)} is not a face")
        st = recognize(st.graph, outer=outer)
    adj = st.graph.adjacency
    level_of = {v: 0 for v in st.base}
    frontier = list(st.base)
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in level_of:
                    level_of[w] = level_of[u] + 1
                    nxt.append(w)
        frontier = nxt
    depth = max(level_of.values())

    level_edges = [[] for _ in range(depth + 1)]
    binding = [[] for _ in range(depth)]
    for u, v in sorted(st.edges):
        lu, lv = level_of[u], level_of[v]
        if lu == lv:
            level_edges[lu].append((u, v))
        elif abs(lu - lv) == 1:
            binding[min(lu, lv)].append((u, v))
        else:
            raise InternalStructureViolation(f"edge {(u, v)} skips a level")

    by_level = defaultdict(list)
    for v in sorted(level_of):
        by_level[level_of[v]].append(v)
    component_of = {}
    components = []
    for i in range(depth + 1):
        comps = []
        for v in by_level[i]:
            if v in component_of:
                continue
            ref = (i, len(comps))
            members = []
            stack = [v]
            component_of[v] = ref
            while stack:
                u = stack.pop()
                members.append(u)
                for w in adj[u]:
                    if level_of[w] == i and w not in component_of:
                        component_of[w] = ref
                        stack.append(w)
            comps.append(tuple(sorted(members)))
        components.append(tuple(comps))

    containment = {}
    for i in range(1, depth + 1):
        for j, members in enumerate(components[i]):
            outside = {w for u in members for w in adj[u] if level_of[w] == i - 1}
            if len(outside) != 3:
                raise InternalStructureViolation(
                    f"component {(i, j)} touches {len(outside)} vertices of level {i - 1}"
                )
            containment[(i, j)] = face_key(outside)

    return LevelStructure(
        st=st,
        level_of=level_of,
        level_edges=tuple(tuple(e) for e in level_edges),
        binding_edges=tuple(tuple(e) for e in binding),
        component_of=component_of,
        components=tuple(components),
        containment=containment,
    )


def components_of_level(ls: LevelStructure, i: int) -> List[OuterplaneComponent]:
    """Return the level-``i`` components with their internal faces.

    An internal face of a component is either a face of the whole
    triangulation spanned by component vertices, or the triangle that
    contains a component of the next level.
    """
    if not 0 <= i <= ls.depth:
        raise InputError(f"level {i} out of range 0..{ls.depth}")
    faces_of = defaultdict(list)
    for f in ls.st.faces:
        refs = {ls.component_of[v] for v in f}
        if len(refs) == 1:
            (ref,) = refs
            if ref[0] == i:
                faces_of[ref].append(face_key(f))
    if i < ls.depth:
        for ref, tri in ls.containment.items():
            if ref[0] == i + 1:
                faces_of[ls.component_of[tri[0]]].append(tri)

    edges_of = defaultdict(set)
    for e in ls.level_edges[i]:
        edges_of[ls.component_of[e[0]]].add(e)

    out = []
    for j, members in enumerate(ls.components[i]):
        ref = (i, j)
        faces = tuple(sorted(faces_of[ref]))
        edges = frozenset(edges_of[ref])
        walk = _boundary_walk(members, edges, faces)
        comp = OuterplaneComponent(
            level=i,
            index=j,
            vertices=members,
            edges=edges,
            internal_faces=faces,
            outer_cycle=tuple(walk),
            container=ls.containment.get(ref),
        )
        problems = outerplane_violations(comp)
        if problems:
            raise InternalStructureViolation(f"component {ref}: {problems[0]}")
        out.append(comp)
    return out


def outerplane_violations(c: OuterplaneComponent, require_biconnected: bool = False) -> List[str]:
    """Combinatorial check that ``c`` is an internally triangulated outerplane graph.

    The internal faces must be edge-glued triangles forming a forest in the
    weak dual, with the right count for a connected outerplane graph, and
    the faces around each vertex inside a block must be consecutive.
    """
    problems = []
    vs = set(c.vertices)
    n, m = len(vs), len(c.edges)
    for u, v in c.edges:
        if u not in vs or v not in vs:
            problems.append(f"edge {(u, v)} leaves the component")
    use = Counter()
    for f in c.internal_faces:
        a, b, d = f
        for e in (norm_edge(a, b), norm_edge(b, d), norm_edge(a, d)):
            if e not in c.edges:
                problems.append(f"face {f} uses missing edge {e}")
            use[e] += 1
    if any(k > 2 for k in use.values()):
        problems.append("an edge lies on more than two internal faces")
    if n and len(c.internal_faces) != m - n + 1:
        problems.append(f"{len(c.internal_faces)} internal faces, expected {m - n + 1}")
    if problems:
        return problems

    # weak dual must be a forest and faces at each vertex must form a subtree
    # of it; with the count above this rules out pinched or wrapped gluings
    dual = nx.Graph()
    dual.add_nodes_from(range(len(c.internal_faces)))
    by_edge = defaultdict(list)
    for k, f in enumerate(c.internal_faces):
        a, b, d = f
        for e in (norm_edge(a, b), norm_edge(b, d), norm_edge(a, d)):
            by_edge[e].append(k)
    for ks in by_edge.values():
        if len(ks) == 2:
            dual.add_edge(*ks)
    if len(dual) and not nx.is_forest(dual):
        problems.append("weak dual has a cycle")
        return problems
    at_vertex = defaultdict(list)
    for k, f in enumerate(c.internal_faces):
        for v in f:
            at_vertex[v].append(k)
    for v, ks in at_vertex.items():
        sub = dual.subgraph(ks)
        # several triangle fans may meet at a cut vertex; each block's should
        # be consecutive, i.e. each fan is a path
        for comp in nx.connected_components(sub):
            if not nx.is_tree(sub.subgraph(comp)) or max(dict(sub.subgraph(comp).degree()).values(), default=0) > 2:
                problems.append(f"faces around vertex {v} do not form a fan")
    if require_biconnected:
        if not c.is_biconnected():
            problems.append("component is not biconnected")
        elif n >= 3 and not nx.is_connected(dual):
            problems.append("weak dual is disconnected")
    return problems


def _blocks(vertices: Sequence[int], edges: Iterable[Edge]) -> List[FrozenSet[int]]:
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(edges)
    return [frozenset(b) for b in nx.biconnected_components(g)]


def _block_cycle(block: FrozenSet[int], faces: Sequence[Tuple[int, int, int]]) -> List[int]:
    """Hamiltonian boundary cycle of a biconnected triangulated polygon."""
    if len(block) == 2:
        return sorted(block)
    use = Counter()
    for f in faces:
        if set(f) <= block:
            a, b, c = f
            use.update((norm_edge(a, b), norm_edge(b, c), norm_edge(a, c)))
    nbr = defaultdict(list)
    for (u, v), k in use.items():
        if k == 1:
            nbr[u].append(v)
            nbr[v].append(u)
    start = min(block)
    cycle = [start]
    prev, cur = None, start
    while True:
        options = [w for w in nbr[cur] if w != prev]
        if len(nbr[cur]) != 2 or not options:
            raise InternalStructureViolation(f"block {sorted(block)} has no boundary cycle")
        nxt = options[0] if prev is not None else min(nbr[cur])
        if nxt == start:
            break
        cycle.append(nxt)
        prev, cur = cur, nxt
    if len(cycle) != len(block):
        raise InternalStructureViolation(f"boundary of block {sorted(block)} is not Hamiltonian")
    return cycle


def _boundary_walk(vertices: Sequence[int], edges: Iterable[Edge], faces) -> List[int]:
    """Closed boundary walk of a connected outerplane graph.

    Blocks hanging at a cut vertex are visited in the outer face in a fixed
    (sorted) order, which yields one valid outerplane embedding.  Cut
    vertices appear once per visit.
    """
    vertices = list(vertices)
    if len(vertices) == 1:
        return vertices
    blocks = _blocks(vertices, edges)
    cycles = {b: _block_cycle(b, faces) for b in blocks}
    blocks_at = defaultdict(list)
    for b in blocks:
        for v in b:
            blocks_at[v].append(b)
    for v in blocks_at:
        blocks_at[v].sort(key=lambda b: sorted(b))

    def rotated(b, at):
        cyc = cycles[b]
        k = cyc.index(at)
        return cyc[k:] + cyc[:k]

    root = min(blocks, key=lambda b: sorted(b))
    seen = {root}
    walk: List[int] = []
    # frame = [cycle, position, unvisited child blocks at that position]; a
    # child frame starts at position 1 because its entry vertex was emitted
    # by the parent, which emits it again once the child is finished
    stack = [[rotated(root, cycles[root][0]), 0, None]]
    while stack:
        frame = stack[-1]
        cyc, i, kids = frame
        if kids is None:
            if i == len(cyc):
                stack.pop()
                if stack:
                    walk.append(stack[-1][0][stack[-1][1]])
                continue
            v = cyc[i]
            walk.append(v)
            kids = frame[2] = [b for b in blocks_at[v] if b not in seen]
        if kids:
            b = kids.pop(0)
            seen.add(b)
            stack.append([rotated(b, cyc[i]), 1, None])
            continue
        frame[1] += 1
        frame[2] = None
    return walk


def biconnect_augment(c: OuterplaneComponent) -> OuterplaneComponent:
    """Add outer-face chords until ``c`` is biconnected.

    Walking the outer boundary, each repeated occurrence of a cut vertex
    ``v`` between boundary neighbours ``a`` and ``b`` is shortcut by the
    dummy edge ``(a, b)``, closing the triangle ``(a, v, b)`` in the outer
    face.  Existing internal faces are untouched.
    """
    if len(c.vertices) <= 2 or c.is_biconnected():
        return c
    walk = list(c.outer_cycle)
    edges = set(c.edges)
    dummies = set(c.dummy_edges)
    faces = list(c.internal_faces)
    counts = Counter(walk)
    i = 0
    guard = 0
    while len(walk) > len(c.vertices):
        guard += 1
        if guard > 10 * len(walk) * len(walk) + 100:
            raise AugmentationConflict(f"component {c.ref}: augmentation did not terminate")
        L = len(walk)
        v = walk[i % L]
        if counts[v] > 1:
            a = walk[(i - 1) % L]
            b = walk[(i + 1) % L]
            e = norm_edge(a, b)
            if a != b and e not in edges:
                edges.add(e)
                dummies.add(e)
                faces.append(face_key((a, v, b)))
                del walk[i % L]
                counts[v] -= 1
                i = max(i - 1, 0)
                continue
        i = (i + 1) % L
    out = OuterplaneComponent(
        level=c.level,
        index=c.index,
        vertices=c.vertices,
        edges=frozenset(edges),
        internal_faces=tuple(sorted(faces)),
        outer_cycle=tuple(walk),
        container=c.container,
        dummy_edges=frozenset(dummies),
    )
    problems = outerplane_violations(out, require_biconnected=True)
    if problems:
        raise AugmentationConflict(f"component {c.ref}: {problems[0]}")
    return out

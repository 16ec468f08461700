"""Vertex connectivity, blocks, and subdivision structure.

Vertex connectivity is exact: local minimum vertex cuts are computed with a
vertex-split unit-capacity max-flow and combined with Even's pair-selection
scheme, so only vertex pairs ``(v_i, v_j)`` with ``i <= kappa`` are tried.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .errors import NotASubdivision
from .graph import Graph, build_graph


@dataclass(frozen=True)
class Separator:
    """A vertex set whose removal disconnects ``witnesses``.

    ``witnesses`` is None when removal leaves at most one vertex.
    """

    vertices: tuple[int, ...]
    witnesses: tuple[int, int] | None

    def to_record(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "witnesses": list(self.witnesses) if self.witnesses else None,
        }


class Connectivity(NamedTuple):
    kappa: int
    # None for complete graphs (including K0, K1, K2), where no separator exists.
    separator: Separator | None


class _FlowNetwork:
    """Vertex-split network of an undirected graph, reused across pairs.

    Node ``2v`` is v_in and ``2v+1`` is v_out; the arc v_in -> v_out has
    capacity 1, graph arcs u_out -> w_in capacity n (never in a min cut).
    """

    def __init__(self, g: Graph):
        self.g = g
        size = 2 * g.n
        self.head: list[int] = []
        self.base_cap: list[int] = []
        self.out: list[list[int]] = [[] for _ in range(size)]
        for v in range(g.n):
            self._arc(2 * v, 2 * v + 1, 1)
        big = max(g.n, 1)
        for u in range(g.n):
            for w in g.adj[u]:
                self._arc(2 * u + 1, 2 * w, big)

    def _arc(self, a: int, b: int, c: int) -> None:
        self.out[a].append(len(self.head))
        self.head.append(b)
        self.base_cap.append(c)
        self.out[b].append(len(self.head))
        self.head.append(a)
        self.base_cap.append(0)

    def local_cut(self, s: int, t: int, bound: int) -> tuple[int, tuple[int, ...] | None]:
        """Max number of internally disjoint s-t paths, capped at ``bound``.

        If the value is below ``bound`` a minimum s-t separator is returned too.
        """
        cap = list(self.base_cap)
        head, out = self.head, self.out
        source, sink = 2 * s + 1, 2 * t
        flow = 0
        while flow < bound:
            prev = [-1] * len(out)
            prev[source] = -2
            queue = deque([source])
            while queue and prev[sink] == -1:
                a = queue.popleft()
                for e in out[a]:
                    b = head[e]
                    if cap[e] > 0 and prev[b] == -1:
                        prev[b] = e
                        queue.append(b)
            if prev[sink] == -1:
                # prev marks the residual-reachable set: cut the split arcs leaving it.
                cut = tuple(
                    v for v in range(self.g.n)
                    if prev[2 * v] != -1 and prev[2 * v + 1] == -1 and v != s
                )
                return flow, cut
            b = sink
            while b != source:
                e = prev[b]
                cap[e] -= 1
                cap[e ^ 1] += 1
                b = head[e ^ 1]
            flow += 1
        return flow, None


def _connectivity(g: Graph, limit: int | None = None) -> Connectivity:
    n = g.n
    if n <= 1:
        return Connectivity(0, None)
    comps = g.components()
    if len(comps) > 1:
        return Connectivity(0, Separator((), (comps[0][0], comps[1][0])))
    if g.is_complete():
        return Connectivity(n - 1, None)
    # kappa <= delta: N(v) of a min-degree vertex separates v from a non-neighbour.
    v = min(range(n), key=lambda u: (g.degree(u), u))
    other = next(u for u in range(n) if u != v and not g.has_edge(u, v))
    best = Connectivity(g.degree(v), Separator(g.adj[v], (v, other)))
    if limit is not None and best.kappa < limit:
        return best
    net = _FlowNetwork(g)
    i = 0
    while i <= best.kappa and i < n:
        for j in range(i + 1, n):
            if g.has_edge(i, j):
                continue
            bound = best.kappa if limit is None else min(best.kappa, limit)
            value, cut = net.local_cut(i, j, bound)
            if cut is not None and value < best.kappa:
                best = Connectivity(value, Separator(tuple(sorted(cut)), (i, j)))
                if limit is not None and value < limit:
                    return best
        i += 1
    return best


def vertex_connectivity(g: Graph) -> Connectivity:
    """Exact kappa(g) with a minimum separator for non-complete graphs.

    >>> vertex_connectivity(build_graph(4, [(0, 1), (1, 2), (2, 3)])).kappa
    1
    """
    return _connectivity(g)


def is_k_connected(g: Graph, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return True
    if g.n <= k:
        return False
    if g.min_degree < k:
        return False
    return _connectivity(g, limit=k).kappa >= k


# ---------------------------------------------------------------------- blocks


@dataclass(frozen=True)
class Block:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def to_record(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]
    cut_vertices: tuple[int, ...]

    def maximum_block(self) -> Block | None:
        """Largest block by vertex count; ties go to the smallest vertex id."""
        if not self.blocks:
            return None
        return min(self.blocks, key=lambda b: (-len(b.vertices), b.vertices[0]))

    def to_record(self) -> dict:
        return {
            "blocks": [b.to_record() for b in self.blocks],
            "cut_vertices": list(self.cut_vertices),
        }


def blocks(g: Graph) -> BlockDecomposition:
    """Block / cut-vertex decomposition (iterative Hopcroft-Tarjan).

    Bridges are two-vertex blocks and isolated vertices are one-vertex blocks.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    found: list[Block] = []
    cuts: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if not g.adj[root]:
            disc[root] = timer
            timer += 1
            found.append(Block((root,), ()))
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.adj[root]))]
        root_children = 0
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(g.adj[w])))
                    if u == root:
                        root_children += 1
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                block_edges = []
                while True:
                    e = edge_stack.pop()
                    block_edges.append(e)
                    if e == (parent, u):
                        break
                verts = sorted({x for e in block_edges for x in e})
                norm = sorted((min(a, b), max(a, b)) for a, b in block_edges)
                found.append(Block(tuple(verts), tuple(norm)))
        if root_children > 1:
            cuts.add(root)
    found.sort(key=lambda b: (b.vertices[0], b.vertices))
    return BlockDecomposition(tuple(found), tuple(sorted(cuts)))


# ------------------------------------------------------------- K4 subdivisions


def has_k4_subdivision(g: Graph) -> bool:
    """Decide whether ``g`` contains a subdivision of K4.

    Uses series-parallel reduction: repeatedly delete vertices of degree at
    most 1 and suppress vertices of degree 2 (merging parallel edges). A
    graph has no K4 subdivision iff this empties it.
    """
    nb = [set(a) for a in g.adj]
    alive = [True] * g.n
    queue = deque(v for v in range(g.n) if len(nb[v]) <= 2)
    while queue:
        v = queue.popleft()
        if not alive[v] or len(nb[v]) > 2:
            continue
        alive[v] = False
        ends = list(nb[v])
        for w in ends:
            nb[w].discard(v)
        nb[v].clear()
        if len(ends) == 2:
            a, b = ends
            if b not in nb[a]:
                nb[a].add(b)
                nb[b].add(a)
        for w in ends:
            if len(nb[w]) <= 2:
                queue.append(w)
    return any(alive)


@dataclass(frozen=True)
class K4Subdivision:
    """Four branch vertices and six internally disjoint paths between them.

    ``paths[i]`` runs from ``a`` to ``b`` for the i-th pair ``a < b`` of
    ``branch`` in lexicographic order.
    """

    branch: tuple[int, int, int, int]
    paths: tuple[tuple[int, ...], ...]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p)

    def verify(self, g: Graph) -> bool:
        if len(set(self.branch)) != 4 or len(self.paths) != 6:
            return False
        pairs = [(a, b) for i, a in enumerate(self.branch) for b in self.branch[i + 1:]]
        interior: set[int] = set()
        for (a, b), p in zip(pairs, self.paths):
            if len(p) < 2 or (p[0], p[-1]) != (a, b):
                return False
            if any(not g.has_edge(x, y) for x, y in zip(p, p[1:])):
                return False
            inner = set(p[1:-1])
            if len(inner) != len(p) - 2 or inner & interior or inner & set(self.branch):
                return False
            interior |= inner
        return True

    def to_record(self) -> dict:
        return {"branch": list(self.branch), "paths": [list(p) for p in self.paths]}


def find_k4_subdivision(g: Graph) -> K4Subdivision | None:
    """Return a K4-subdivision in ``g`` or None if there is none.

    Edges are deleted greedily in lexicographic order while a subdivision
    survives; what remains is exactly one subdivision.
    """
    if not has_k4_subdivision(g):
        return None
    edges = list(g.edges())
    kept = set(edges)
    for e in edges:
        kept.discard(e)
        if not has_k4_subdivision(build_graph(g.n, kept)):
            kept.add(e)
    h = build_graph(g.n, kept)
    branch = tuple(v for v in range(h.n) if h.degree(v) == 3)
    assert len(branch) == 4, "edge-minimal K4 container must be a subdivision"
    by_pair: dict[tuple[int, int], tuple[int, ...]] = {}
    for a in branch:
        for w in h.adj[a]:
            path = _walk_ear(h, a, w)
            if path[0] < path[-1]:
                by_pair[(path[0], path[-1])] = path
    pairs = [(a, b) for i, a in enumerate(branch) for b in branch[i + 1:]]
    return K4Subdivision(branch, tuple(by_pair[p] for p in pairs))  # type: ignore[arg-type]


def _walk_ear(g: Graph, start: int, first: int) -> tuple[int, ...]:
    """Follow degree-2 vertices from ``start`` through ``first`` to a branch."""
    path = [start, first]
    while g.degree(path[-1]) == 2 and path[-1] != start:
        a, b = g.adj[path[-1]]
        path.append(a if b == path[-2] else b)
    return tuple(path)


def minimal_3conn_subdivision(g: Graph) -> Graph | None:
    """Inclusion-minimal induced subgraph that still contains a K4-subdivision.

    Starts from the vertex set of a K4-subdivision witness and drops vertices
    in ascending id order while the property survives. The result carries
    ``origin`` mapping back to ids of ``g``.
    """
    witness = find_k4_subdivision(g)
    if witness is None:
        return None
    keep = set(witness.vertices)
    for v in sorted(keep):
        keep.discard(v)
        if not has_k4_subdivision(g.induced(keep)):
            keep.add(v)
    return g.induced(keep)


# ------------------------------------------------------------------------ ears


@dataclass(frozen=True)
class EarDecomposition:
    ears: tuple[tuple[int, ...], ...]
    branch_vertices: frozenset[int]

    @property
    def n_branch(self) -> int:
        """Number of vertices of degree at least 3."""
        return len(self.branch_vertices)


def _ears(g: Graph) -> tuple[tuple[int, ...], ...] | None:
    """All ears oriented from the smaller end, or None if one closes on itself."""
    found = set()
    for a in range(g.n):
        if g.degree(a) < 3:
            continue
        for w in g.adj[a]:
            path = _walk_ear(g, a, w)
            if path[-1] == a:
                return None
            found.add(path if path[0] < path[-1] else path[::-1])
    return tuple(sorted(found))


def is_subdivision_of_3connected(g: Graph) -> bool:
    """True iff suppressing degree-2 vertices gives a simple 3-connected graph."""
    if g.n < 4 or g.min_degree < 2 or not g.is_connected():
        return False
    branch = [v for v in range(g.n) if g.degree(v) >= 3]
    if len(branch) < 4:
        return False
    ears = _ears(g)
    if ears is None:
        return False
    pairs = [(p[0], p[-1]) for p in ears]
    if len(set(pairs)) != len(pairs):
        return False
    index = {v: i for i, v in enumerate(branch)}
    core = build_graph(len(branch), [(index[a], index[b]) for a, b in pairs])
    return is_k_connected(core, 3)


def ears_and_branch_count(g: Graph) -> EarDecomposition:
    if not is_subdivision_of_3connected(g):
        raise NotASubdivision("graph is not a subdivision of a simple 3-connected graph")
    ears = _ears(g)
    assert ears is not None
    return EarDecomposition(ears, frozenset(v for v in range(g.n) if g.degree(v) >= 3))

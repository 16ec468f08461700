"""Certified constructions: long paths, v-paths, and subtree extension.

Every "pick any" step picks the smallest unused graph vertex, so results are
reproducible. Embeddings are plain ``dict`` objects mapping tree vertices to
graph vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import ceil
from typing import Iterable, Literal, Sequence

from .errors import (
    InsufficientFreshNeighbors,
    InvalidEmbedding,
    NoNeighborOnPath,
    PreconditionViolated,
    SideMismatch,
)
from .graph import Graph
from .trees import TreeShape

Embedding = dict[int, int]
Variant = Literal["i", "ii", "iii"]


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]
    host: Graph = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.vertices)

    def is_valid(self) -> bool:
        vs = self.vertices
        return len(set(vs)) == len(vs) and all(self.host.has_edge(a, b) for a, b in zip(vs, vs[1:]))


def path_degree_requirement(m: int, variant: Variant) -> int:
    return {"i": ceil(m / 2), "ii": m // 2, "iii": m}[variant]


def path_order_bound(m: int, variant: Variant) -> int:
    return {"i": m, "ii": m - 1, "iii": 2 * m}[variant]


def grow_path(g: Graph, m: int, variant: Variant = "i") -> PathWitness:
    """Greedy long path in a bipartite graph of large minimum degree.

    Starts from the lexicographically smallest edge and keeps appending the
    smallest unused neighbour of the tail; when the tail is stuck it grows
    from the head instead. A stuck end has all its neighbours on the path,
    and in a bipartite graph they sit at alternate positions, so the final
    order is at least twice the minimum degree.
    """
    if variant not in ("i", "ii", "iii"):
        raise ValueError(f"unknown variant {variant!r}")
    g.bipartition
    need = path_degree_requirement(m, variant)
    if g.min_degree < need:
        raise PreconditionViolated(
            f"variant {variant} needs min degree >= {need}, found {g.min_degree}"
        )
    first = next(g.edges(), None)
    if first is None:
        return PathWitness(tuple(range(min(g.n, 1))), g)
    path = list(first)
    used = set(path)
    stuck_ends = 0
    while stuck_ends < 2:
        nxt = next((w for w in g.adj[path[-1]] if w not in used), None)
        if nxt is None:
            stuck_ends += 1
            path.reverse()
            continue
        stuck_ends = 0
        path.append(nxt)
        used.add(nxt)
    return PathWitness(tuple(path), g)


def _neighbor_span(g: Graph, p: Sequence[int], v: int) -> tuple[int, int, int]:
    if v in p:
        raise ValueError(f"vertex {v} already lies on the path")
    idx = [i for i, u in enumerate(p) if g.has_edge(v, u)]
    if not idx:
        raise NoNeighborOnPath(f"vertex {v} has no neighbour on the path")
    return idx[0], idx[-1], len(idx)


def v_path_candidates(g: Graph, p: Sequence[int], v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two v-paths ``v v_a .. v_p`` and ``v v_b .. v_1``, each ending at v.

    ``a`` and ``b`` are the first and last positions of v's neighbours on p.
    """
    a, b, _ = _neighbor_span(g, p, v)
    via_first = tuple(reversed(p[a:])) + (v,)
    via_last = tuple(p[: b + 1]) + (v,)
    return via_first, via_last


def _attach(g: Graph, p: PathWitness | Sequence[int]) -> Sequence[int]:
    vs = p.vertices if isinstance(p, PathWitness) else tuple(p)
    if not PathWitness(tuple(vs), g).is_valid():
        raise ValueError("input is not a path of the graph")
    return vs


def attach_v_path_bipartite(g: Graph, p: PathWitness | Sequence[int], v: int) -> PathWitness:
    """Longest of the two v-path candidates; bipartite bound ``k + (p+1)/2``."""
    vs = _attach(g, p)
    g.bipartition
    _, _, k = _neighbor_span(g, vs, v)
    one, two = v_path_candidates(g, vs, v)
    assert len(one) + len(two) >= 2 * k + len(vs) + 1
    return PathWitness(one if len(one) >= len(two) else two, g)


def attach_v_path_general(g: Graph, p: PathWitness | Sequence[int], v: int) -> PathWitness:
    """Same construction without bipartiteness; bound ``(p+k)/2 + 1``."""
    vs = _attach(g, p)
    _, _, k = _neighbor_span(g, vs, v)
    one, two = v_path_candidates(g, vs, v)
    assert len(one) + len(two) >= k + len(vs) + 2
    return PathWitness(one if len(one) >= len(two) else two, g)


# ------------------------------------------------------------ tree extension


def check_embedding(g: Graph, tree: Graph, emb: Embedding, domain: Iterable[int]) -> None:
    """Raise :class:`InvalidEmbedding` unless ``emb`` embeds ``tree[domain]``."""
    dom = set(domain)
    if set(emb) != dom:
        raise InvalidEmbedding("embedding keys differ from the subtree vertex set")
    if len(set(emb.values())) != len(emb):
        raise InvalidEmbedding("embedding is not injective")
    for a in dom:
        if not 0 <= emb[a] < g.n:
            raise InvalidEmbedding(f"graph vertex {emb[a]} out of range")
        for b in tree.adj[a]:
            if b in dom and not g.has_edge(emb[a], emb[b]):
                raise InvalidEmbedding(f"tree edge {a}-{b} is not mapped to a graph edge")


def _check_subtree(tree: Graph, sub: set[int]) -> None:
    if not sub:
        return
    start = min(sub)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in tree.adj[u]:
            if w in sub and w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != sub:
        raise ValueError("subtree vertex set is not connected")


def _check_sides(g: Graph, target: TreeShape, emb: Embedding) -> None:
    tree_side = target.bipartition
    graph_side = g.bipartition
    flips = {tree_side.side(a) ^ graph_side.side(v) for a, v in emb.items()}
    if len(flips) > 1:
        raise SideMismatch("embedding maps one tree side into both graph sides")


def extend_subtree(
    g: Graph,
    target: TreeShape,
    sub: Iterable[int],
    emb: Embedding,
    mode: Literal["bipartite", "general"] = "bipartite",
) -> Embedding:
    """Extend an embedding of subtree ``sub`` to an embedding of the whole tree.

    Requires degree at least ``t`` (``|V(T)|-1`` in general mode) at every
    graph vertex outside the image and at every image vertex that still
    needs tree neighbours. Tree vertices are added in BFS order from the
    subtree, each taking the smallest unused neighbour of its parent's image.
    """
    tree = target.tree
    sub_set = set(sub)
    _check_subtree(tree, sub_set)
    check_embedding(g, tree, emb, sub_set)
    if mode == "bipartite":
        threshold = target.t
        _check_sides(g, target, emb)
    elif mode == "general":
        threshold = target.order - 1
    else:
        raise ValueError(f"unknown mode {mode!r}")
    image = set(emb.values())
    for v in range(g.n):
        if v not in image and g.degree(v) < threshold:
            raise PreconditionViolated(f"vertex {v} outside the image has degree {g.degree(v)} < {threshold}")
    for a, v in emb.items():
        d_sub = sum(1 for b in tree.adj[a] if b in sub_set)
        if d_sub < tree.degree(a) and g.degree(v) < threshold:
            raise PreconditionViolated(f"image vertex {v} has degree {g.degree(v)} < {threshold}")
    out = dict(emb)
    if not out:
        if g.n == 0:
            raise PreconditionViolated("empty graph")
        out[0] = 0
    return _bfs_extend(g, tree, out, sorted(out))


def _bfs_extend(g: Graph, tree: Graph, out: Embedding, frontier: list[int]) -> Embedding:
    used = set(out.values())
    queue = deque(frontier)
    while queue:
        a = queue.popleft()
        for b in tree.adj[a]:
            if b in out:
                continue
            w = next((x for x in g.adj[out[a]] if x not in used), None)
            if w is None:
                raise InsufficientFreshNeighbors(f"graph vertex {out[a]} has no unused neighbour left")
            out[b] = w
            used.add(w)
            queue.append(b)
    return dict(sorted(out.items()))


def extend_leaves(g: Graph, target: TreeShape, leaves: Iterable[int], emb: Embedding) -> Embedding:
    """Attach the missing leaves ``leaves`` to an embedding of ``T - leaves``.

    Only image vertices that still need leaves must have degree at least
    ``t``. Leaves are attached in ascending id order, each to the smallest
    unused neighbour of its parent's image.
    """
    tree = target.tree
    missing = sorted(set(leaves))
    for leaf in missing:
        if tree.degree(leaf) != 1:
            raise ValueError(f"tree vertex {leaf} is not a leaf")
    core = set(range(tree.n)) - set(missing)
    if not core:
        raise ValueError("cannot remove every vertex of the tree")
    _check_subtree(tree, core)
    check_embedding(g, tree, emb, core)
    _check_sides(g, target, emb)
    t = target.t
    for a, v in emb.items():
        if any(b in missing for b in tree.adj[a]) and g.degree(v) < t:
            raise PreconditionViolated(f"image vertex {v} has degree {g.degree(v)} < t={t}")
    return hang_leaves(g, tree, missing, emb)


def hang_leaves(g: Graph, tree: Graph, leaves: Sequence[int], emb: Embedding) -> Embedding:
    """Greedy leaf attachment with no precondition checks (any host graph)."""
    out = dict(emb)
    used = set(out.values())
    for leaf in leaves:
        (parent,) = tree.adj[leaf]
        w = next((x for x in g.adj[out[parent]] if x not in used), None)
        if w is None:
            raise InsufficientFreshNeighbors(f"graph vertex {out[parent]} has no unused neighbour left")
        out[leaf] = w
        used.add(w)
    return dict(sorted(out.items()))

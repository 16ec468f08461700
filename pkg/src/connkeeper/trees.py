"""Caterpillars, spiders and generic trees.

A :class:`TreeShape` wraps a tree graph together with the constructor spec
that produced it. Caterpillars are given by per-spine-vertex pendant counts,
spiders by their leg lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Literal

from .errors import EmptySpec, NotATree, ZeroLengthLeg
from .graph import Bipartition, Graph, build_graph, parse_edge_list

Kind = Literal["caterpillar", "spider", "generic"]


@dataclass(frozen=True)
class TreeShape:
    tree: Graph
    kind: Kind
    spec: tuple[int, ...] = ()
    spine: tuple[int, ...] | None = field(default=None, compare=False)
    center: int | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return self.tree.n

    @property
    def bipartition(self) -> Bipartition:
        return self.tree.bipartition

    @property
    def t(self) -> int:
        return self.tree.bipartition.t

    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.tree.n) if self.tree.degree(v) == 1)

    def label(self) -> str:
        """Compact text form, also accepted by :func:`parse_tree_spec`."""
        if self.kind == "generic":
            return "edges:" + ";".join(f"{u}-{v}" for u, v in self.tree.edges())
        prefix = "cat" if self.kind == "caterpillar" else "spider"
        return f"{prefix}:" + ",".join(map(str, self.spec))

    def to_record(self) -> dict:
        if self.kind == "generic":
            return {"kind": "generic", "spec": [list(e) for e in self.tree.edges()], "n": self.tree.n}
        return {"kind": self.kind, "spec": list(self.spec)}


def _check_tree(g: Graph) -> None:
    if g.n == 0 or g.edge_count != g.n - 1 or not g.is_connected():
        raise NotATree(f"graph on {g.n} vertices with {g.edge_count} edges is not a tree")


def make_caterpillar(pendant_counts: list[int] | tuple[int, ...]) -> TreeShape:
    """Spine ``0..r-1``, then pendants grouped by spine vertex."""
    counts = tuple(pendant_counts)
    if not counts:
        raise EmptySpec("caterpillar needs at least one spine vertex")
    if any(c < 0 for c in counts):
        raise ValueError("pendant counts must be non-negative")
    r = len(counts)
    edges = [(i, i + 1) for i in range(r - 1)]
    nxt = r
    for i, c in enumerate(counts):
        for _ in range(c):
            edges.append((i, nxt))
            nxt += 1
    return TreeShape(build_graph(nxt, edges), "caterpillar", counts, spine=tuple(range(r)))


def make_path(order: int) -> TreeShape:
    return make_caterpillar([0] * order)


def make_spider(leg_lengths: list[int] | tuple[int, ...]) -> TreeShape:
    """Center 0; legs numbered consecutively, leg by leg, outward."""
    legs = tuple(leg_lengths)
    if not legs:
        raise EmptySpec("spider needs at least one leg")
    if any(p < 1 for p in legs):
        raise ZeroLengthLeg("spider legs must have length at least 1")
    edges = []
    nxt = 1
    for p in legs:
        prev = 0
        for _ in range(p):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return TreeShape(build_graph(nxt, edges), "spider", legs, center=0)


@dataclass(frozen=True)
class Recognition:
    tags: frozenset[str]
    spine: tuple[int, ...] | None
    center: int | None
    legs: tuple[tuple[int, ...], ...] | None

    @property
    def leg_lengths(self) -> tuple[int, ...] | None:
        return None if self.legs is None else tuple(len(p) - 1 for p in self.legs)


def _tree_path(g: Graph, a: int, b: int) -> list[int]:
    parent = {a: a}
    stack = [a]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w not in parent:
                parent[w] = u
                stack.append(w)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def _canonical_spine(g: Graph) -> tuple[int, ...] | None:
    """Lexicographically smallest longest path touching every edge, if any."""
    if g.n == 1:
        return (0,)
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    best: tuple[int, ...] | None = None
    for i, a in enumerate(leaves):
        for b in leaves[i + 1:]:
            path = _tree_path(g, a, b)
            on = set(path)
            if not all(u in on or w in on for u, w in g.edges()):
                continue
            cand = min(tuple(path), tuple(path[::-1]))
            if best is None or (-len(cand), cand) < (-len(best), best):
                best = cand
    return best


def recognize(tree: Graph) -> Recognition:
    """Classify a tree; a path is both a caterpillar and a spider."""
    _check_tree(tree)
    tags = set()
    spine = _canonical_spine(tree)
    if spine is not None:
        tags.add("caterpillar")
    hubs = [v for v in range(tree.n) if tree.degree(v) >= 3]
    center = legs = None
    if len(hubs) <= 1:
        tags.add("spider")
        center = hubs[0] if hubs else 0
        legs = tuple(_leg(tree, center, w) for w in tree.adj[center])
    if not tags:
        tags.add("generic")
    return Recognition(frozenset(tags), spine, center, legs)


def _leg(g: Graph, center: int, first: int) -> tuple[int, ...]:
    path = [center, first]
    while g.degree(path[-1]) == 2:
        a, b = g.adj[path[-1]]
        path.append(a if b == path[-2] else b)
    return tuple(path)


def tree_t(tree: Graph) -> int:
    _check_tree(tree)
    return tree.bipartition.t


def tree_from_graph(tree: Graph) -> TreeShape:
    """Wrap an arbitrary tree, keeping its vertex ids."""
    rec = recognize(tree)
    if "caterpillar" in rec.tags:
        kind: Kind = "caterpillar"
    elif "spider" in rec.tags:
        kind = "spider"
    else:
        kind = "generic"
    return TreeShape(tree, kind, (), spine=rec.spine, center=rec.center)


# ------------------------------------------------------------------ enumeration


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def enumerate_caterpillars(max_order: int) -> Iterator[TreeShape]:
    """Every caterpillar with 2..max_order vertices, one per isomorphism class.

    Each is given in stripped form: the spine is the tree minus its leaves
    and end spine vertices carry at least one pendant, so two specs describe
    isomorphic trees iff one is the reverse of the other. Ordered by vertex
    count, then by spec.
    """
    for n in range(2, max_order + 1):
        specs = []
        for r in range(1, n):
            for counts in _compositions(n - r, r):
                if counts[0] < 1 or counts[-1] < 1:
                    continue
                if r == 1 and n > 2 and counts[0] < 2:
                    continue
                if counts <= counts[::-1]:
                    specs.append(counts)
        for counts in sorted(specs):
            yield make_caterpillar(counts)


def _partitions(total: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into parts <= max_part, parts non-increasing."""
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first, *rest)


def enumerate_spiders(max_order: int) -> Iterator[TreeShape]:
    """Every leg multiset with 2..max_order vertices in total.

    Legs are listed ascending; the stream is ordered by leg count, then
    lexicographically by legs.
    """
    specs = []
    for total in range(1, max_order):
        specs.extend(tuple(sorted(p)) for p in _partitions(total, total))
    for legs in sorted(specs, key=lambda s: (len(s), s)):
        yield make_spider(legs)


# --------------------------------------------------------------------- parsing


def parse_tree_spec(text: str) -> TreeShape:
    """Parse ``path:<order>``, ``cat:<c0,c1,...>``, ``spider:<l1,...>``,
    ``edges:<u-v;...>`` or ``file:<edge-list path>``."""
    kind, _, body = text.partition(":")
    if not body:
        raise ValueError(f"bad tree spec {text!r}")
    if kind == "file":
        with open(body, encoding="ascii") as fh:
            g = parse_edge_list(fh.read())
        return tree_from_graph(g)
    if kind == "edges":
        pairs = [tuple(int(x) for x in item.split("-")) for item in body.split(";")]
        n = max(max(p) for p in pairs) + 1
        return tree_from_graph(build_graph(n, pairs))  # type: ignore[arg-type]
    numbers = [int(x) for x in body.split(",")]
    if kind == "path":
        if len(numbers) != 1:
            raise ValueError("path spec takes a single order")
        return make_path(numbers[0])
    if kind in ("cat", "caterpillar"):
        return make_caterpillar(numbers)
    if kind == "spider":
        return make_spider(numbers)
    raise ValueError(f"unknown tree kind {kind!r}")


def tree_from_record(rec: dict) -> TreeShape:
    kind = rec["kind"]
    if kind == "caterpillar":
        return make_caterpillar(rec["spec"])
    if kind == "spider":
        return make_spider(rec["spec"])
    if kind == "generic":
        edges = [tuple(e) for e in rec["spec"]]
        n = rec.get("n", max((max(e) for e in edges), default=0) + 1)
        return tree_from_graph(build_graph(n, edges))  # type: ignore[arg-type]
    raise ValueError(f"unknown tree kind {kind!r}")

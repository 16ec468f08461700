"""Immutable simple undirected graphs on dense integer vertex ids.

Vertices are ``0..n-1``. Every "modification" builds a new graph, so search
code can share graphs freely without copying.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

from .errors import NotBipartite, ParseError, SelfLoop, VertexOutOfRange

Edge = tuple[int, int]


@dataclass(frozen=True)
class Bipartition:
    x: frozenset[int]
    y: frozenset[int]

    def side(self, v: int) -> int:
        """0 if ``v`` is in X, 1 if in Y."""
        return 0 if v in self.x else 1

    @property
    def t(self) -> int:
        return max(len(self.x), len(self.y))


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    # For graphs produced by delete_vertices: origin[new_id] == old_id.
    origin: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(nb) for nb in self.adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    @property
    def min_degree(self) -> int:
        """Minimum degree; 0 for the empty graph."""
        return min((len(nb) for nb in self.adj), default=0)

    def edges(self) -> Iterator[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u < v:
                    yield (u, v)

    @property
    def relabel(self) -> dict[int, int]:
        """Old-id -> new-id map for a graph built by :func:`delete_vertices`."""
        if self.origin is None:
            return {v: v for v in range(self.n)}
        return {old: new for new, old in enumerate(self.origin)}

    @cached_property
    def bipartition(self) -> Bipartition:
        return bipartition(self)

    @cached_property
    def is_bipartite(self) -> bool:
        try:
            self.bipartition
        except NotBipartite:
            return False
        return True

    def is_complete(self) -> bool:
        return all(len(nb) == self.n - 1 for nb in self.adj)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, in order of smallest vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices: Iterable[int]) -> Graph:
        keep = set(vertices)
        return delete_vertices(self, set(range(self.n)) - keep)


def build_graph(n: int, edges: Iterable[Edge]) -> Graph:
    """Build a simple graph on ``n`` vertices; parallel edges are merged."""
    if n < 0:
        raise ValueError("n must be non-negative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        for w in (u, v):
            if not 0 <= w < n:
                raise VertexOutOfRange(w, n)
        if u == v:
            raise SelfLoop(u)
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with side X = 0..a-1 and side Y = a..a+b-1."""
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def bipartition(g: Graph) -> Bipartition:
    """Two-colour ``g`` by BFS.

    Per component the smallest vertex goes to X; components are handled in
    ascending order of their smallest vertex. Raises :class:`NotBipartite`
    carrying an odd cycle.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NotBipartite(_odd_cycle(u, w, parent, depth))
    x = frozenset(v for v in range(g.n) if color[v] == 0)
    return Bipartition(x, frozenset(range(g.n)) - x)


def _odd_cycle(u: int, w: int, parent: list[int], depth: list[int]) -> list[int]:
    left, right = [u], [w]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return left + right[-2::-1]


def delete_vertices(g: Graph, s: Iterable[int]) -> Graph:
    """Induced subgraph on ``V(g) - s``, relabelled densely in id order.

    The result's ``origin`` maps new ids back to ids of ``g``.
    """
    drop = set(s)
    for v in drop:
        if not 0 <= v < g.n:
            raise VertexOutOfRange(v, g.n)
    keep = [v for v in range(g.n) if v not in drop]
    new_id = {old: new for new, old in enumerate(keep)}
    adj = tuple(tuple(new_id[w] for w in g.adj[old] if w in new_id) for old in keep)
    if g.origin is not None:
        keep = [g.origin[v] for v in keep]
    return Graph(len(keep), adj, tuple(keep))


# ---------------------------------------------------------------- edge-list I/O


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` + ``u v`` edge-list format; ``#`` lines are comments."""
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(lineno, f"expected two non-negative integers, got {raw!r}")
        a, b = int(parts[0]), int(parts[1])
        if header is None:
            header = (a, b)
            continue
        n = header[0]
        if a >= n or b >= n:
            raise ParseError(lineno, f"vertex out of range for n={n}")
        if a == b:
            raise ParseError(lineno, f"self-loop at vertex {a}")
        edges.append((a, b))
    if header is None:
        raise ParseError(0, "missing 'n m' header")
    if len(edges) != header[1]:
        raise ParseError(0, f"header announces {header[1]} edges, found {len(edges)}")
    return build_graph(header[0], edges)


def read_graph(path: str | Path) -> Graph:
    path = Path(path)
    text = path.read_text(encoding="ascii")
    if path.suffix == ".json":
        return graph_from_record(json.loads(text))
    return parse_edge_list(text)


def write_graph(g: Graph, path: str | Path) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(dumps_record(graph_to_record(g)), encoding="ascii")
    else:
        path.write_text(format_edge_list(g), encoding="ascii")


# ------------------------------------------------------------ structured records


def graph_to_record(g: Graph, with_bipartition: bool = True) -> dict:
    rec: dict = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if with_bipartition and g.is_bipartite:
        bp = g.bipartition
        rec["bipartition"] = {"x": sorted(bp.x), "y": sorted(bp.y)}
    return rec


def graph_from_record(rec: dict) -> Graph:
    try:
        g = build_graph(int(rec["n"]), [(int(u), int(v)) for u, v in rec["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(0, f"bad graph record: {exc}") from exc
    if "bipartition" in rec:
        bp = Bipartition(frozenset(rec["bipartition"]["x"]), frozenset(rec["bipartition"]["y"]))
        if bp.x | bp.y != frozenset(range(g.n)) or bp.x & bp.y:
            raise ParseError(0, "bipartition does not partition the vertex set")
        if any(bp.side(u) == bp.side(v) for u, v in g.edges()):
            raise ParseError(0, "bipartition has an edge inside one side")
        g.__dict__["bipartition"] = bp
    return g


def dumps_record(rec: object) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(rec, sort_keys=True, indent=2) + "\n"

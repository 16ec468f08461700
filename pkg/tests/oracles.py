"""Independent brute-force oracles used by the tests.

Nothing here imports the search or flow code under test; graphs are plain
``(n, set-of-edges)`` pairs so the oracles cannot share bugs with it.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

from connkeeper.graph import Graph, build_graph


def _edge_set(g: Graph) -> set[frozenset[int]]:
    return {frozenset(e) for e in g.edges()}


def _connected(vertices: list[int], edges: set[frozenset[int]]) -> bool:
    if len(vertices) <= 1:
        return True
    vs = set(vertices)
    seen = {vertices[0]}
    frontier = [vertices[0]]
    while frontier:
        u = frontier.pop()
        for w in vs:
            if w not in seen and frozenset((u, w)) in edges:
                seen.add(w)
                frontier.append(w)
    return seen == vs


def kappa_bruteforce(g: Graph) -> int:
    """Smallest S with G - S disconnected or a single vertex, by subset search."""
    n = g.n
    if n <= 1:
        return 0
    edges = _edge_set(g)
    for size in range(n - 1):
        for s in combinations(range(n), size):
            rest = [v for v in range(n) if v not in s]
            if not _connected(rest, edges):
                return size
    return n - 1


def two_color_sizes(n: int, edges: list[tuple[int, int]]) -> tuple[int, int]:
    """Side sizes of a connected bipartite graph by naive propagation."""
    color = {0: 0}
    changed = True
    while changed:
        changed = False
        for u, v in edges:
            for a, b in ((u, v), (v, u)):
                if a in color and b not in color:
                    color[b] = 1 - color[a]
                    changed = True
    ones = sum(color.values())
    return n - ones, ones


def has_k4_subdivision_bruteforce(g: Graph) -> bool:
    """Try every branch quadruple and route six disjoint paths by backtracking."""
    adj = [set(a) for a in g.adj]
    for quad in combinations(range(g.n), 4):
        if any(len(adj[v]) < 3 for v in quad):
            continue
        pairs = list(combinations(quad, 2))
        if _route(adj, pairs, 0, set(quad)):
            return True
    return False


def _route(adj: list[set[int]], pairs: list[tuple[int, int]], i: int, used: set[int]) -> bool:
    if i == len(pairs):
        return True
    a, b = pairs[i]

    def dfs(u: int, taken: set[int]) -> bool:
        for w in adj[u]:
            if w == b:
                if _route(adj, pairs, i + 1, used | taken):
                    return True
            elif w not in used and w not in taken:
                if dfs(w, taken | {w}):
                    return True
        return False

    return dfs(a, set())


def embeddings_bruteforce(g: Graph, tree: Graph) -> list[tuple[int, ...]]:
    """All injective maps sending tree edges to graph edges (tuple per tree vertex)."""
    edges = _edge_set(g)
    tree_edges = list(tree.edges())
    out = []
    for phi in permutations(range(g.n), tree.n):
        if all(frozenset((phi[a], phi[b])) in edges for a, b in tree_edges):
            out.append(phi)
    return out


def keeper_exists_bruteforce(g: Graph, tree: Graph, k: int) -> bool:
    """Independent keeper verdict: any embedding whose residual has kappa >= k."""
    for phi in embeddings_bruteforce(g, tree):
        image = set(phi)
        keep = [v for v in range(g.n) if v not in image]
        idx = {v: i for i, v in enumerate(keep)}
        residual = build_graph(
            len(keep), [(idx[u], idx[v]) for u, v in g.edges() if u in idx and v in idx]
        )
        if kappa_bruteforce(residual) >= k:
            return True
    return False


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_bipartite(rng: random.Random, a: int, b: int, p: float) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b) if rng.random() < p])


def extensions_bruteforce(g: Graph, tree: Graph, partial: dict[int, int]) -> set[tuple[int, ...]]:
    """Every full embedding of ``tree`` that agrees with ``partial``."""
    edges = _edge_set(g)
    free_tree = [a for a in range(tree.n) if a not in partial]
    free_graph = [v for v in range(g.n) if v not in partial.values()]
    out = set()
    for choice in permutations(free_graph, len(free_tree)):
        phi = dict(partial)
        phi.update(zip(free_tree, choice))
        if all(frozenset((phi[a], phi[b])) in edges for a, b in tree.edges()):
            out.add(tuple(phi[a] for a in range(tree.n)))
    return out

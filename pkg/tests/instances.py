"""Seeded instance builders shared by the unit and acceptance tests."""

from __future__ import annotations

import random

from connkeeper.graph import Graph, build_graph
from connkeeper.keeper import enumerate_embeddings
from connkeeper.trees import TreeShape, enumerate_caterpillars, enumerate_spiders

TREES = [*enumerate_caterpillars(6), *enumerate_spiders(5)]


def connected_bipartite(rng: random.Random, max_n: int = 14, min_degree: int = 1) -> Graph:
    """Random connected bipartite graph with the requested minimum degree."""
    while True:
        a = rng.randint(max(1, min_degree), max(1, max_n // 2))
        b = rng.randint(max(1, min_degree), max(1, max_n - a))
        p = rng.uniform(0.25, 1.0)
        g = build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b) if rng.random() < p])
        if g.is_connected() and g.min_degree >= min_degree:
            return g


def subtree(rng: random.Random, tree: Graph, size: int) -> list[int]:
    """A random connected vertex set of ``size`` tree vertices."""
    start = rng.randrange(tree.n)
    chosen = [start]
    while len(chosen) < size:
        frontier = sorted({w for v in chosen for w in tree.adj[v]} - set(chosen))
        chosen.append(rng.choice(frontier))
    return sorted(chosen)


def extension_instance(rng: random.Random, max_n: int = 10):
    """(graph, tree, subtree vertices, partial embedding); graph min degree >= t."""
    return _instance(rng, max_n, leaves_only=False)


def leaf_instance(rng: random.Random, max_n: int = 10):
    """Like :func:`extension_instance` but the subtree is the tree minus some leaves."""
    return _instance(rng, max_n, leaves_only=True)


def _instance(rng: random.Random, max_n: int, leaves_only: bool):
    while True:
        tree = rng.choice(TREES)
        if 2 * tree.t > max_n:
            continue
        g = connected_bipartite(rng, max_n=max_n, min_degree=tree.t)
        if g.n < tree.order:
            continue
        if leaves_only:
            leaves = [v for v in tree.leaves() if rng.random() < 0.6]
            sub = sorted(set(range(tree.order)) - set(leaves))
            if not sub:
                continue
        else:
            sub = subtree(rng, tree.tree, rng.randint(1, tree.order))
        sub_tree = tree.tree.induced(sub)
        embs = list(_first(enumerate_embeddings(g, TreeShape(sub_tree, "generic")), 50))
        if not embs:
            continue
        phi = rng.choice(embs)
        emb = {sub_tree.origin[c]: v for c, v in phi.items()}
        return g, tree, sub, emb


def _first(it, n):
    for i, x in enumerate(it):
        if i >= n:
            return
        yield x

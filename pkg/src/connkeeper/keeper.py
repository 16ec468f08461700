"""Search for connectivity-keeping subtrees.

Given a host graph ``g``, a tree shape ``T`` and ``k``, look for a copy
``T'`` of ``T`` in ``g`` such that ``g - V(T')`` is still k-connected.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Literal

from .connectivity import is_k_connected, vertex_connectivity
from .constructive import Embedding, check_embedding, extend_leaves, hang_leaves
from .errors import (
    InsufficientFreshNeighbors,
    InvalidEmbedding,
    PreconditionViolated,
    TreeTooLarge,
)
from .graph import Graph, delete_vertices
from .trees import TreeShape, tree_from_record

DEFAULT_BUDGET = 10_000_000

Verdict = Literal["Found", "ProvenNone", "BudgetExhausted"]
Strategy = Literal["bruteforce", "guided", "auto"]


@dataclass(frozen=True)
class KeeperCertificate:
    embedding: Embedding
    residual_kappa: int
    k: int
    tree: TreeShape = field(compare=False)

    def image(self) -> frozenset[int]:
        return frozenset(self.embedding.values())

    def to_record(self) -> dict:
        return {
            "embedding": [[a, v] for a, v in sorted(self.embedding.items())],
            "residual_kappa": self.residual_kappa,
            "k": self.k,
            "tree": self.tree.to_record(),
        }

    @classmethod
    def from_record(cls, rec: dict) -> KeeperCertificate:
        return cls(
            embedding={int(a): int(v) for a, v in rec["embedding"]},
            residual_kappa=int(rec["residual_kappa"]),
            k=int(rec["k"]),
            tree=tree_from_record(rec["tree"]),
        )


@dataclass(frozen=True)
class SearchOutcome:
    verdict: Verdict
    certificate: KeeperCertificate | None
    embeddings_examined: int
    elapsed: float = field(compare=False)
    strategy: str = "bruteforce"

    @property
    def found(self) -> bool:
        return self.verdict == "Found"

    def to_record(self, include_timing: bool = False) -> dict:
        rec: dict = {
            "verdict": self.verdict,
            "strategy": self.strategy,
            "embeddings_examined": self.embeddings_examined,
            "certificate": self.certificate.to_record() if self.certificate else None,
        }
        if include_timing:
            rec["elapsed"] = self.elapsed
        return rec


def _bfs_order(tree: Graph, root: int = 0) -> tuple[list[int], list[int]]:
    order = [root]
    parent = [-1] * tree.n
    seen = {root}
    i = 0
    while i < len(order):
        a = order[i]
        i += 1
        for b in tree.adj[a]:
            if b not in seen:
                seen.add(b)
                parent[b] = a
                order.append(b)
    return order, parent


def _embeddings(
    g: Graph, tree: Graph, min_degree: list[int] | None = None
) -> Iterator[tuple[int, ...]]:
    """Labelled embeddings as tuples indexed by tree vertex.

    Tree vertices are placed in BFS order from vertex 0; each branches over
    graph vertices in ascending id order. ``min_degree[a]`` (default: the
    tree degree of ``a``) prunes graph vertices too small to host ``a``.
    """
    m = tree.n
    if m == 0 or m > g.n:
        return
    if min_degree is None:
        min_degree = [tree.degree(a) for a in range(m)]
    order, parent = _bfs_order(tree)
    phi = [-1] * m
    used = [False] * g.n
    root = order[0]

    def candidates(depth: int) -> Iterator[int]:
        a = order[depth]
        pool = range(g.n) if depth == 0 else g.adj[phi[parent[a]]]
        need = min_degree[a]
        for w in pool:
            if not used[w] and g.degree(w) >= need:
                yield w

    stack = [candidates(0)]
    while stack:
        depth = len(stack) - 1
        a = order[depth]
        if phi[a] != -1:
            used[phi[a]] = False
            phi[a] = -1
        w = next(stack[-1], None)
        if w is None:
            stack.pop()
            continue
        phi[a] = w
        used[w] = True
        if depth + 1 == m:
            yield tuple(phi)
        else:
            stack.append(candidates(depth + 1))
    assert phi[root] == -1


def enumerate_embeddings(g: Graph, t: TreeShape) -> Iterator[Embedding]:
    """Every labelled embedding of ``t`` into ``g`` exactly once, lazily."""
    for phi in _embeddings(g, t.tree):
        yield dict(enumerate(phi))


def _residual_ok(g: Graph, image: frozenset[int], k: int, cache: dict[frozenset[int], bool]) -> bool:
    ok = cache.get(image)
    if ok is None:
        ok = is_k_connected(delete_vertices(g, image), k)
        cache[image] = ok
    return ok


def _certify(g: Graph, t: TreeShape, k: int, emb: Embedding) -> KeeperCertificate:
    residual = delete_vertices(g, emb.values())
    return KeeperCertificate(emb, vertex_connectivity(residual).kappa, k, t)


def brute_force_keeper(
    g: Graph, t: TreeShape, k: int, budget: int | None = None
) -> SearchOutcome:
    """Exhaustive search; the first hit in enumeration order wins."""
    if t.order > g.n:
        raise TreeTooLarge(f"tree of order {t.order} does not fit in {g.n} vertices")
    start = time.perf_counter()
    cache: dict[frozenset[int], bool] = {}
    examined = 0
    for phi in _embeddings(g, t.tree):
        if budget is not None and examined >= budget:
            return SearchOutcome("BudgetExhausted", None, examined, time.perf_counter() - start)
        examined += 1
        if _residual_ok(g, frozenset(phi), k, cache):
            cert = _certify(g, t, k, dict(enumerate(phi)))
            return SearchOutcome("Found", cert, examined, time.perf_counter() - start)
    return SearchOutcome("ProvenNone", None, examined, time.perf_counter() - start)


def _core(t: TreeShape) -> tuple[list[int], list[int]]:
    """Split the tree into a core subtree and the leaves hung on it."""
    tree = t.tree
    if tree.n <= 2:
        return [0], list(range(1, tree.n))
    leaves = [v for v in range(tree.n) if tree.degree(v) == 1]
    core = [v for v in range(tree.n) if tree.degree(v) > 1]
    return core, leaves


def _guided(
    g: Graph, t: TreeShape, k: int, budget: int, cache: dict[frozenset[int], bool]
) -> tuple[KeeperCertificate | None, int]:
    tree = t.tree
    core, leaves = _core(t)
    core_tree = tree.induced(core)
    assert core_tree.origin is not None
    back = core_tree.origin
    # A core vertex must host all its tree neighbours; the ones that receive
    # leaves need degree >= t for the leaf extension to be guaranteed.
    need = []
    for c in range(core_tree.n):
        a = back[c]
        d = tree.degree(a)
        if any(b in leaves for b in tree.adj[a]):
            d = max(d, t.t)
        need.append(d)
    examined = 0
    for phi in _embeddings(g, core_tree, need):
        if examined >= budget:
            break
        examined += 1
        partial = {back[c]: v for c, v in enumerate(phi)}
        try:
            if not leaves:
                emb = partial
            elif g.is_bipartite:
                emb = extend_leaves(g, t, leaves, partial)
            else:
                emb = hang_leaves(g, tree, leaves, partial)
        except (InsufficientFreshNeighbors, PreconditionViolated):
            continue
        if _residual_ok(g, frozenset(emb.values()), k, cache):
            return _certify(g, t, k, emb), examined
    return None, examined


def find_keeper(
    g: Graph,
    t: TreeShape,
    k: int,
    strategy: Strategy = "guided",
    budget: int = DEFAULT_BUDGET,
) -> SearchOutcome:
    """Find a connectivity-keeping copy of ``t``.

    ``guided`` embeds the tree minus its leaves (the spine of a caterpillar,
    the shortened legs of a spider) from each seed vertex in ascending order,
    hangs the leaves with :func:`extend_leaves`, and tests the residual. It
    never returns a bad certificate but may miss solutions, so running out
    of candidates is reported as ``BudgetExhausted``. ``auto`` falls back to
    exhaustive search with the remaining budget.
    """
    if t.order > g.n:
        raise TreeTooLarge(f"tree of order {t.order} does not fit in {g.n} vertices")
    if strategy == "bruteforce":
        return brute_force_keeper(g, t, k, budget)
    if strategy not in ("guided", "auto"):
        raise ValueError(f"unknown strategy {strategy!r}")
    start = time.perf_counter()
    cache: dict[frozenset[int], bool] = {}
    cert, examined = _guided(g, t, k, budget, cache)
    if cert is not None:
        return SearchOutcome("Found", cert, examined, time.perf_counter() - start, "guided")
    if strategy == "guided":
        return SearchOutcome("BudgetExhausted", None, examined, time.perf_counter() - start, "guided")
    rest = brute_force_keeper(g, t, k, max(budget - examined, 0))
    return SearchOutcome(
        rest.verdict,
        rest.certificate,
        examined + rest.embeddings_examined,
        time.perf_counter() - start,
        "bruteforce",
    )


def verify_certificate(g: Graph, k: int, cert: KeeperCertificate) -> bool:
    """Recheck a certificate from scratch against ``g`` and ``k``."""
    try:
        check_embedding(g, cert.tree.tree, cert.embedding, range(cert.tree.order))
    except InvalidEmbedding:
        return False
    kappa = vertex_connectivity(delete_vertices(g, cert.embedding.values())).kappa
    return kappa == cert.residual_kappa and kappa >= k

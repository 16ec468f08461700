"""Instance generation, theorem sweeps and tightness checks."""

from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Literal

from . import __version__
from .connectivity import is_k_connected, vertex_connectivity
from .errors import InfeasibleSpec, TreeTooLarge
from .graph import Graph, build_graph, complete_bipartite, graph_to_record, read_graph
from .keeper import DEFAULT_BUDGET, SearchOutcome, brute_force_keeper, find_keeper
from .trees import TreeShape, enumerate_caterpillars, enumerate_spiders, make_path

log = logging.getLogger(__name__)

Generator = Literal["complete-bipartite", "random-regularish", "supergraph-of-Kkk", "file"]
GENERATORS = ("complete-bipartite", "random-regularish", "supergraph-of-Kkk", "file")

# Theorem tag -> (tree family, connectivity levels). Paths are caterpillars, so
# paths are tested at the caterpillar degree bound k + t rather than k + m.
THEOREMS = {
    "1.3": ("paths", (1, 2, 3)),
    "3.1": ("caterpillars", (3,)),
    "4.1": ("spiders", (2,)),
    "4.2": ("spiders", (3,)),
}

DEFAULT_MAX_SIDE = 9
DEFAULT_MAX_TREE = 7


@dataclass(frozen=True)
class InstanceSpec:
    generator: Generator
    n_x: int
    n_y: int
    k: int
    tree: TreeShape
    seed: int = 0
    path: str | None = None


def hypothesis_holds(g: Graph, k: int, t: int) -> bool:
    """Bipartite, k-connected and minimum degree at least k + t."""
    return g.is_bipartite and g.min_degree >= k + t and is_k_connected(g, k)


def gen_instance(spec: InstanceSpec) -> tuple[Graph, TreeShape]:
    """Build a bipartite host graph satisfying the degree/connectivity hypothesis."""
    need = spec.k + spec.tree.t
    if spec.generator == "file":
        if spec.path is None:
            raise InfeasibleSpec("file generator needs a path")
        g = read_graph(spec.path)
    else:
        if min(spec.n_x, spec.n_y) < need:
            raise InfeasibleSpec(
                f"sides {spec.n_x},{spec.n_y} cannot give minimum degree {need}"
            )
        rng = random.Random(spec.seed)
        if spec.generator == "complete-bipartite":
            g = complete_bipartite(spec.n_x, spec.n_y)
        elif spec.generator == "random-regularish":
            g = _prune_from_complete(spec.n_x, spec.n_y, spec.k, need, rng)
        elif spec.generator == "supergraph-of-Kkk":
            g = _planted_core(spec.n_x, spec.n_y, spec.k, need, rng)
        else:
            raise ValueError(f"unknown generator {spec.generator!r}")
    if not hypothesis_holds(g, spec.k, spec.tree.t):
        raise InfeasibleSpec("graph violates kappa >= k or min degree >= k + t")
    return g, spec.tree


def _prune_from_complete(n_x: int, n_y: int, k: int, need: int, rng: random.Random) -> Graph:
    """Delete random edges of K_{n_x,n_y} while degree and kappa stay in range.

    Stops at a target edge count drawn uniformly from the lower half of the
    range between the degree floor and the complete graph.
    """
    edges = [(i, n_x + j) for i in range(n_x) for j in range(n_y)]
    rng.shuffle(edges)
    floor = max(n_x, n_y) * need
    target = rng.randint(floor, floor + (n_x * n_y - floor) // 2)
    kept = set(edges)
    deg = [n_y] * n_x + [n_x] * n_y
    n = n_x + n_y
    for u, v in edges:
        if len(kept) <= target:
            break
        if deg[u] <= need or deg[v] <= need:
            continue
        kept.discard((u, v))
        if is_k_connected(build_graph(n, kept), k):
            deg[u] -= 1
            deg[v] -= 1
        else:
            kept.add((u, v))
    return build_graph(n, kept)


def _planted_core(n_x: int, n_y: int, k: int, need: int, rng: random.Random, tries: int = 200) -> Graph:
    """A planted K_{need,need} plus ``need`` random edges from every other vertex."""
    n = n_x + n_y
    xs = list(range(n_x))
    ys = list(range(n_x, n))
    for _ in range(tries):
        edges = {(x, y) for x in xs[:need] for y in ys[:need]}
        for x in xs[need:]:
            edges.update((x, y) for y in rng.sample(ys, need))
        for y in ys[need:]:
            edges.update((x, y) for x in rng.sample(xs, need))
        g = build_graph(n, edges)
        if is_k_connected(g, k):
            return g
    raise InfeasibleSpec(f"no {k}-connected planted graph after {tries} draws")


# ---------------------------------------------------------------------- sweeps


def theorem_family(theorem: str, max_tree: int = DEFAULT_MAX_TREE) -> list[TreeShape]:
    family, _ = THEOREMS[theorem]
    if family == "paths":
        return [make_path(m) for m in range(2, max_tree + 1)]
    if family == "caterpillars":
        return list(enumerate_caterpillars(max_tree))
    return list(enumerate_spiders(max_tree))


@dataclass(frozen=True)
class SweepRow:
    index: int
    theorem: str
    k: int
    tree: TreeShape
    generator: str
    n_x: int
    n_y: int
    seed: int
    graph: Graph
    kappa: int
    in_hypothesis: bool
    outcome: SearchOutcome
    exploratory: bool = False
    elapsed: float = field(default=0.0, compare=False)

    @property
    def violation(self) -> bool:
        return self.in_hypothesis and not self.outcome.found and not self.exploratory

    def to_record(self, include_timing: bool = False) -> dict:
        out = self.outcome
        cert = out.certificate
        rec = {
            "index": self.index,
            "theorem": self.theorem,
            "k": self.k,
            "tree": self.tree.label(),
            "t": self.tree.t,
            "generator": self.generator,
            "n_x": self.n_x,
            "n_y": self.n_y,
            "seed": self.seed,
            "graph": graph_to_record(self.graph, with_bipartition=False),
            "min_degree": self.graph.min_degree,
            "kappa": self.kappa,
            "in_hypothesis": self.in_hypothesis,
            "verdict": "THEOREM VIOLATION" if self.violation else out.verdict,
            "search_verdict": out.verdict,
            "strategy": out.strategy,
            "residual_kappa": cert.residual_kappa if cert else None,
            "embedding": [[a, v] for a, v in sorted(cert.embedding.items())] if cert else None,
            "embeddings_examined": out.embeddings_examined,
            "exploratory": self.exploratory,
        }
        if include_timing:
            rec["elapsed"] = round(self.elapsed, 6)
        return rec


@dataclass(frozen=True)
class SweepReport:
    theorem: str
    seed: int
    count: int
    max_side: int
    max_tree: int
    budget: int
    rows: tuple[SweepRow, ...]

    @property
    def counters(self) -> dict[str, int]:
        c = {"found": 0, "proven_none": 0, "budget_exhausted": 0, "violations": 0, "exploratory": 0}
        key = {"Found": "found", "ProvenNone": "proven_none", "BudgetExhausted": "budget_exhausted"}
        for row in self.rows:
            c[key[row.outcome.verdict]] += 1
            c["violations"] += row.violation
            c["exploratory"] += row.exploratory
        return c

    @property
    def ok(self) -> bool:
        return self.counters["violations"] == 0

    def to_record(self, include_timing: bool = False) -> dict:
        return {
            "tool": "connkeeper",
            "version": __version__,
            "theorem": self.theorem,
            "seed": self.seed,
            "count": self.count,
            "caps": {"max_side": self.max_side, "max_tree": self.max_tree, "budget": self.budget},
            "counters": self.counters,
            "rows": [r.to_record(include_timing) for r in self.rows],
        }

    def summary(self) -> str:
        head = f"{'idx':>4} {'k':>2} {'tree':<16} {'gen':<19} {'sides':>5} {'kappa':>5} {'verdict':<18} {'examined':>9}"
        lines = [f"theorem {self.theorem}  seed {self.seed}  connkeeper {__version__}", head]
        for r in self.rows:
            verdict = "THEOREM VIOLATION" if r.violation else r.outcome.verdict
            lines.append(
                f"{r.index:>4} {r.k:>2} {r.tree.label():<16} {r.generator:<19} "
                f"{r.n_x:>2}x{r.n_y:<2} {r.kappa:>5} {verdict:<18} {r.outcome.embeddings_examined:>9}"
            )
        c = self.counters
        lines.append(
            f"found {c['found']}  proven-none {c['proven_none']}  budget-exhausted "
            f"{c['budget_exhausted']}  violations {c['violations']}"
        )
        return "\n".join(lines) + "\n"


def _sweep_row(
    theorem: str, seed: int, index: int, max_side: int, max_tree: int, budget: int, k_override: int | None
) -> SweepRow:
    _, ks = THEOREMS[theorem]
    if k_override is not None:
        ks = (k_override,)
    combos = [(k, tree) for k in ks for tree in theorem_family(theorem, max_tree) if k + tree.t <= max_side]
    if not combos:
        raise InfeasibleSpec(f"no tree of theorem {theorem} fits sides <= {max_side}")
    k, tree = combos[index % len(combos)]
    rng = random.Random(f"{theorem}/{seed}/{index}")
    need = k + tree.t
    n_x = rng.randint(need, max_side)
    n_y = rng.randint(need, max_side)
    generator = rng.choice(("random-regularish", "random-regularish", "supergraph-of-Kkk", "complete-bipartite"))
    inst_seed = rng.getrandbits(64)
    start = time.perf_counter()
    g, _ = gen_instance(InstanceSpec(generator, n_x, n_y, k, tree, inst_seed))  # type: ignore[arg-type]
    kappa = vertex_connectivity(g).kappa
    in_hyp = g.is_bipartite and kappa >= k and g.min_degree >= need
    outcome = find_keeper(g, tree, k, "auto", budget)
    row = SweepRow(
        index, theorem, k, tree, generator, n_x, n_y, inst_seed, g, kappa, in_hyp, outcome,
        exploratory=k >= 4, elapsed=time.perf_counter() - start,
    )
    if row.violation:
        log.error("THEOREM VIOLATION: theorem %s row %d", theorem, index)
    return row


def worker_count() -> int:
    env = os.environ.get("CONNKEEPER_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sweep_theorem(
    theorem: str,
    count: int,
    seed: int = 0,
    max_side: int = DEFAULT_MAX_SIDE,
    max_tree: int = DEFAULT_MAX_TREE,
    budget: int = DEFAULT_BUDGET,
    k: int | None = None,
    workers: int | None = None,
) -> SweepReport:
    """Generate ``count`` in-hypothesis instances and search each for a keeper.

    Rows come back in instance order whatever the worker scheduling.
    ``k >= 4`` sweeps are marked exploratory: a miss there is reported but
    does not count as a violation.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}")
    args = [(theorem, seed, i, max_side, max_tree, budget, k) for i in range(count)]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or count <= 1:
        rows = [_sweep_row(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, count)) as pool:
            rows = list(pool.map(_sweep_row, *zip(*args)))
    return SweepReport(theorem, seed, count, max_side, max_tree, budget, tuple(rows))


# ------------------------------------------------------------------- tightness


def tightness_instance(k: int, tree: TreeShape) -> Graph:
    side = k + tree.t - 1
    return complete_bipartite(side, side)


def tightness_check(k: int, tree: TreeShape) -> bool:
    """True iff K_{k+t-1,k+t-1} has no connectivity-keeping copy of ``tree``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    g = tightness_instance(k, tree)
    if g.n < tree.order:
        raise TreeTooLarge(f"tree of order {tree.order} does not fit in K_{{{g.n // 2},{g.n // 2}}}")
    return brute_force_keeper(g, tree, k).verdict == "ProvenNone"


def tightness_trees(max_order: int) -> list[TreeShape]:
    """Caterpillars and spiders up to ``max_order`` vertices, deduplicated by label."""
    seen = {}
    for tree in (*enumerate_caterpillars(max_order), *enumerate_spiders(max_order)):
        seen.setdefault(tree.label(), tree)
    return list(seen.values())


def tightness_suite(ks: Iterable[int] = (1, 2, 3), max_order: int = 5) -> list[dict]:
    rows = []
    for k in ks:
        for tree in tightness_trees(max_order):
            side = k + tree.t - 1
            if 2 * side < tree.order:
                continue
            outcome = brute_force_keeper(tightness_instance(k, tree), tree, k)
            rows.append({
                "k": k,
                "tree": tree.label(),
                "t": tree.t,
                "host": f"K_{side},{side}",
                "verdict": outcome.verdict,
                "embeddings_examined": outcome.embeddings_examined,
            })
    return rows

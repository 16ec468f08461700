"""Command line interface for connectivity-keeping tree searches.

Exit codes: 0 success / Found / true, 1 ProvenNone / false, 2 budget
exhausted, 3 usage or parse error, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from .connectivity import blocks, vertex_connectivity
from .constructive import extend_leaves, extend_subtree, grow_path
from .errors import (
    ConnKeeperError,
    InsufficientFreshNeighbors,
    InvalidEmbedding,
    PreconditionViolated,
    SideMismatch,
)
from .graph import dumps_record, format_edge_list, graph_to_record, read_graph
from .harness import GENERATORS, THEOREMS, InstanceSpec, gen_instance, sweep_theorem, tightness_check
from .keeper import DEFAULT_BUDGET, KeeperCertificate, find_keeper, verify_certificate
from .trees import parse_tree_spec

EXIT_OK, EXIT_FALSE, EXIT_BUDGET, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3, 4
VERDICT_EXIT = {"Found": EXIT_OK, "ProvenNone": EXIT_FALSE, "BudgetExhausted": EXIT_BUDGET}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args: argparse.Namespace, text: str, record: object) -> None:
    out = dumps_record(record) if args.format == "records" else text
    if getattr(args, "out", None):
        Path(args.out).write_text(out, encoding="ascii")
    else:
        sys.stdout.write(out)


def _parse_embedding(text: str) -> dict[int, int]:
    pairs = {}
    for item in text.split(","):
        a, _, v = item.partition(":")
        pairs[int(a)] = int(v)
    return pairs


def cmd_kappa(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    res = vertex_connectivity(g)
    sep = res.separator
    _emit(args, f"{res.kappa}\n", {"kappa": res.kappa, "separator": sep.to_record() if sep else None})
    return EXIT_OK


def cmd_blocks(args: argparse.Namespace) -> int:
    dec = blocks(read_graph(args.graph))
    lines = [" ".join(map(str, b.vertices)) for b in dec.blocks]
    lines.append("cut vertices: " + " ".join(map(str, dec.cut_vertices)))
    _emit(args, "\n".join(lines) + "\n", dec.to_record())
    return EXIT_OK


def cmd_grow_path(args: argparse.Namespace) -> int:
    p = grow_path(read_graph(args.graph), args.m, args.variant)
    _emit(args, " ".join(map(str, p.vertices)) + "\n", {"path": list(p.vertices), "order": p.order})
    return EXIT_OK


def cmd_extend(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    tree = parse_tree_spec(args.tree)
    emb = _parse_embedding(args.emb)
    if args.leaves is not None:
        leaves = [int(x) for x in args.leaves.split(",") if x]
        full = extend_leaves(g, tree, leaves, emb)
    else:
        full = extend_subtree(g, tree, emb.keys(), emb, args.mode)
    text = " ".join(f"{a}:{v}" for a, v in full.items()) + "\n"
    _emit(args, text, {"embedding": [[a, v] for a, v in full.items()]})
    return EXIT_OK


def cmd_find_keeper(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    tree = parse_tree_spec(args.tree)
    outcome = find_keeper(g, tree, args.k, args.strategy, args.budget)
    cert = outcome.certificate
    if cert is not None:
        text = (
            f"Found  residual kappa {cert.residual_kappa}  embedding "
            + " ".join(f"{a}:{v}" for a, v in sorted(cert.embedding.items()))
            + "\n"
        )
    else:
        text = f"{outcome.verdict} after {outcome.embeddings_examined} embeddings\n"
    record = cert.to_record() if (cert is not None and args.format == "records") else outcome.to_record()
    _emit(args, text, record)
    return VERDICT_EXIT[outcome.verdict]


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    rec = json.loads(Path(args.cert).read_text(encoding="ascii"))
    if "certificate" in rec and "embedding" not in rec:
        rec = rec["certificate"]
    cert = KeeperCertificate.from_record(rec)
    k = cert.k if args.k is None else args.k
    ok = verify_certificate(g, k, cert)
    sys.stdout.write(("valid" if ok else "invalid") + "\n")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_sweep(args: argparse.Namespace) -> int:
    report = sweep_theorem(
        args.theorem, args.count, seed=args.seed, max_side=args.max_side,
        max_tree=args.max_tree, budget=args.budget, k=args.k,
    )
    _emit(args, report.summary(), report.to_record())
    if args.out:
        sys.stdout.write(report.summary().splitlines()[-1] + "\n")
    return EXIT_OK if report.ok else EXIT_FALSE


def cmd_tightness(args: argparse.Namespace) -> int:
    tree = parse_tree_spec(args.tree)
    ok = tightness_check(args.k, tree)
    side = args.k + tree.t - 1
    if ok:
        sys.stdout.write(f"K_{side},{side}: ProvenNone as expected\n")
        return EXIT_OK
    sys.stdout.write(f"K_{side},{side}: a connectivity-keeping copy exists\n")
    return EXIT_FALSE


def cmd_gen(args: argparse.Namespace) -> int:
    tree = parse_tree_spec(args.tree)
    spec = InstanceSpec(args.generator, args.nx, args.ny, args.k, tree, args.seed, args.path)
    g, _ = gen_instance(spec)
    _emit(args, format_edge_list(g), graph_to_record(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="connkeeper", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, graph: bool = True) -> None:
        if graph:
            p.add_argument("graph", help="edge-list file (or .json record)")
        p.add_argument("--format", choices=("text", "records"), default="text")
        p.add_argument("--out", help="write output to this file")

    p = sub.add_parser("kappa", help="exact vertex connectivity")
    common(p)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("blocks", help="block / cut-vertex decomposition")
    common(p)
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("grow-path", help="greedy long path in a bipartite graph")
    common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--variant", choices=("i", "ii", "iii"), default="i")
    p.set_defaults(func=cmd_grow_path)

    p = sub.add_parser("extend", help="extend a partial tree embedding")
    common(p)
    p.add_argument("--tree", required=True)
    p.add_argument("--emb", required=True, help="tree:graph pairs, e.g. 0:3,1:4")
    p.add_argument("--leaves", help="comma-separated missing leaves (leaf extension)")
    p.add_argument("--mode", choices=("bipartite", "general"), default="bipartite")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("find-keeper", help="search for a connectivity-keeping subtree")
    common(p)
    p.add_argument("--tree", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=("guided", "bruteforce", "auto"), default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_find_keeper)

    p = sub.add_parser("verify", help="re-check a keeper certificate")
    p.add_argument("graph")
    p.add_argument("cert", help="certificate record file")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="theorem sweep over generated instances")
    common(p, graph=False)
    p.add_argument("--theorem", choices=sorted(THEOREMS), required=True)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--max-side", type=int, default=9)
    p.add_argument("--max-tree", type=int, default=7)
    p.add_argument("--k", type=int, help="override the theorem's k (k >= 4 is exploratory)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("tightness", help="check K_{k+t-1,k+t-1} has no keeper")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tree", required=True)
    p.set_defaults(func=cmd_tightness)

    p = sub.add_parser("gen", help="generate an in-hypothesis instance")
    common(p, graph=False)
    p.add_argument("--generator", choices=GENERATORS, default="random-regularish")
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--path", help="graph file for --generator file")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (InsufficientFreshNeighbors, AssertionError) as exc:
        sys.stderr.write(f"internal invariant failure: {exc}\n")
        return EXIT_INTERNAL
    except (
        ConnKeeperError, PreconditionViolated, SideMismatch, InvalidEmbedding,
        ValueError, OSError, KeyError, json.JSONDecodeError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

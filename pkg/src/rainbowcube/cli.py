"""Command-line surface: embed, verify, oracle, fuzz, gen, check-tree, bench.

Exit codes: 0 success / all checks pass; 1 internal engine assertion (a
counterexample bundle is dumped when possible); 2 verification mismatch or
fuzz counterexample; 3 unreadable or unparsable input; 4 host minimum
degree below the tree size.  RAINBOW_SEED overrides --seed everywhere.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import gen as genmod
from .embed import embed_rainbow_tree, format_embedding, parse_embedding
from .errors import DegreeTooSmall, FormatError, RainbowCubeError
from .hypercube import format_graph, parse_graph, parse_vertex
from .prng import derive_seed
from .tree import (
    as_spider,
    classify_children,
    deficiency,
    degree_sum_identity,
    enumerate_trees,
    format_tree,
    half_ceil,
    half_floor,
    iota_injection,
    parse_tree,
)
from .verify import cross_check, oracle_find, verify, write_bundle

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_MISMATCH = 2
EXIT_PARSE = 3
EXIT_DEGREE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are invalid input, not mismatches
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str, strict_vertices: bool = False):
    return parse_graph(_read(path), strict_vertices=strict_vertices)


def _load_tree(path: str):
    return parse_tree(_read(path))


def _seed(args) -> int:
    env = os.environ.get("RAINBOW_SEED")
    if env is not None:
        return int(env)
    return args.seed


def cmd_embed(args) -> int:
    try:
        g = _load_graph(args.graph, args.strict_vertices)
        t = _load_tree(args.tree)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        pe = embed_rainbow_tree(g, t, seed=_seed(args), strict=args.strict)
    except DegreeTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGREE
    except RainbowCubeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        if args.bundle_dir:
            write_bundle(args.bundle_dir, g, t)
            print(f"bundle written to {args.bundle_dir}", file=sys.stderr)
        return EXIT_INTERNAL

    if args.verify:
        report = verify(g, t, pe.image, require_path_distinct=True, z_bad=pe.z_bad)
        if not report.ok:
            print(f"internal error: verify failed: {report.first_failure()}", file=sys.stderr)
            if args.bundle_dir:
                write_bundle(args.bundle_dir, g, t, pe)
                print(f"bundle written to {args.bundle_dir}", file=sys.stderr)
            return EXIT_INTERNAL

    text = format_embedding(pe, include_trace=args.trace)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        g = _load_graph(args.graph, args.strict_vertices)
        t = _load_tree(args.tree)
        image, n_edges, dim = parse_embedding(_read(args.embedding))
        z = parse_vertex(args.z_bad, dim) if args.z_bad else None
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = verify(g, t, image, require_path_distinct=args.require_path_distinct, z_bad=z)
    print(report)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_oracle(args) -> int:
    try:
        g = _load_graph(args.graph, args.strict_vertices)
        t = _load_tree(args.tree)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    result = oracle_find(g, t, budget=args.budget, symmetry_reduction=args.symmetry)
    print(f"found={result.found} exhausted={result.exhausted} nodes={result.nodes_explored}")
    return EXIT_OK


def _fuzz_trial(params: tuple) -> tuple[int, tuple[str, ...], str, str]:
    """One seeded trial; returns (trial, mismatches, graph text, tree text)."""
    n, master, trial = params
    seed = derive_seed(master, trial)
    rng = genmod.SplitMix64(seed)
    d = 1 + rng.randrange(n)
    g = genmod.subgraph_min_degree(n, d, rng.next_u64())
    t = genmod.random_tree(rng.randrange(d + 1), rng.next_u64())
    run_oracle = t.n_edges() <= 8 and g.n_vertices() <= 64
    summary = cross_check(g, t, run_oracle=run_oracle)
    return trial, summary.mismatches, format_graph(g), format_tree(t)


def cmd_fuzz(args) -> int:
    master = _seed(args)
    failures = 0
    jobs = max(args.jobs, 1)

    if args.exhaustive:
        hosts = [genmod.cayley_coloring(args.n)] + [
            genmod.refined_cayley(args.n, s, 1 + s % 4) for s in range(20)
        ]
        trees = list(enumerate_trees(min(args.n, 8)))
        checked = 0
        for g in hosts:
            for t in trees:
                summary = cross_check(g, t, run_oracle=args.oracle)
                checked += 1
                for msg in summary.mismatches:
                    failures += 1
                    print(f"counterexample host/tree {checked}: {msg}")
                    if args.bundle_dir:
                        write_bundle(
                            os.path.join(args.bundle_dir, f"case{checked}"),
                            g,
                            t,
                            summary.embedding,
                        )
        print(f"exhaustive: {checked} instances, {failures} counterexamples")
        return EXIT_MISMATCH if failures else EXIT_OK

    params = [(args.n, master, i) for i in range(args.trials)]
    if jobs == 1:
        results = [_fuzz_trial(p) for p in params]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_fuzz_trial, params))
    for trial, mismatches, graph_text, tree_text in results:
        for msg in mismatches:
            failures += 1
            print(f"counterexample trial {trial}: {msg}")
            if args.bundle_dir:
                case_dir = os.path.join(args.bundle_dir, f"trial{trial}")
                os.makedirs(case_dir, exist_ok=True)
                with open(os.path.join(case_dir, "graph.txt"), "w") as fh:
                    fh.write(graph_text)
                with open(os.path.join(case_dir, "tree.txt"), "w") as fh:
                    fh.write(tree_text)
    print(f"fuzz: {args.trials} trials, {failures} counterexamples")
    return EXIT_MISMATCH if failures else EXIT_OK


def cmd_gen(args) -> int:
    params: dict = {}
    if args.kind in ("cayley", "refined_cayley", "greedy_proper", "subgraph_min_degree"):
        if args.n is None:
            print("error: --n required", file=sys.stderr)
            return EXIT_PARSE
        params["n"] = args.n
    if args.kind == "refined_cayley":
        params["splits"] = args.splits
    if args.kind == "subgraph_min_degree":
        if args.min_degree is None:
            print("error: --min-degree required", file=sys.stderr)
            return EXIT_PARSE
        params["d"] = args.min_degree
    if args.kind == "random_tree":
        if args.edges is None:
            print("error: --edges required", file=sys.stderr)
            return EXIT_PARSE
        params["edges"] = args.edges
    if args.kind == "random_spider":
        if not args.legs:
            print("error: --legs required", file=sys.stderr)
            return EXIT_PARSE
        params["legs"] = tuple(int(x) for x in args.legs.split(","))

    spec = genmod.GenSpec(args.kind, _seed(args), params)
    if args.emit_spec:
        print(spec.canonical_line())
    artifact = genmod.generate(spec)
    text = format_tree(artifact) if hasattr(artifact, "parent") else format_graph(artifact)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check_tree(args) -> int:
    try:
        t = _load_tree(args.tree)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    floor, ceil = half_floor(t), half_ceil(t)
    lines = [
        "format=1",
        f"n_vertices={t.n}",
        f"n_edges={t.n_edges()}",
        f"floor_edges={len(floor)}",
        f"ceil_edges={len(ceil)}",
        f"deficiency={deficiency(t)}",
    ]
    shape = as_spider(t) if t.n > 1 else None
    if shape is None:
        lines.append("is_spider=0")
    else:
        lines.append("is_spider=1")
        lines.append(f"legs={len(shape.legs)}")
        lines.append(f"leg_lengths={','.join(str(x) for x in sorted(shape.leg_lengths, reverse=True))}")
        lines.append(f"odd_legs={shape.odd_legs}")
    if t.n > 1:
        cls = classify_children(t)
        lines.append(f"root_leaves={len(cls.leaves)}")
        lines.append(f"root_even_spiders={len(cls.spiders)}")
        lines.append(f"root_rest={len(cls.rest)}")

    internal_ok = True
    iota = iota_injection(t)
    ceil_overlap = set(iota.values()) & ceil
    if len(set(iota.values())) != len(iota) or ceil_overlap or set(iota) != floor:
        internal_ok = False
    lhs, rhs = degree_sum_identity(t)
    lines.append(f"iota_size={len(iota)}")
    lines.append(f"degree_sum_lhs={lhs}")
    lines.append(f"degree_sum_rhs={rhs}")
    if lhs != rhs or deficiency(t) < 0:
        internal_ok = False
    lines.append(f"internal_ok={int(internal_ok)}")
    print("\n".join(lines))
    return EXIT_OK if internal_ok else EXIT_INTERNAL


def cmd_bench(args) -> int:
    master = _seed(args)
    times = []
    for trial in range(args.trials):
        seed = derive_seed(master, trial)
        rng = genmod.SplitMix64(seed)
        d = max(1, args.n - rng.randrange(2))
        g = genmod.subgraph_min_degree(args.n, d, rng.next_u64())
        t = genmod.random_tree(rng.randrange(d + 1), rng.next_u64())
        t0 = time.perf_counter()
        pe = embed_rainbow_tree(g, t)
        times.append(time.perf_counter() - t0)
        report = verify(g, t, pe.image, require_path_distinct=True, z_bad=pe.z_bad)
        if not report.ok:
            print(f"internal error: {report.first_failure()}", file=sys.stderr)
            return EXIT_INTERNAL
    if times:
        ms = [t * 1000 for t in times]
        print(
            f"bench n={args.n} trials={args.trials}: "
            f"mean={sum(ms) / len(ms):.2f}ms min={min(ms):.2f}ms max={max(ms):.2f}ms"
        )
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="rainbowcube")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="embed a rainbow copy of a tree into a host")
    p.add_argument("graph")
    p.add_argument("--strict-vertices", action="store_true",
                   help="reject edges touching undeclared vertices")
    p.add_argument("tree")
    p.add_argument("--out")
    p.add_argument("--trace", action="store_true", help="append the step trace")
    p.add_argument("--verify", action="store_true", help="re-check the output before exiting")
    p.add_argument("--strict", action="store_true", help="enable all counting assertions")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--bundle-dir", default=None)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="certify an embedding file")
    p.add_argument("graph")
    p.add_argument("--strict-vertices", action="store_true",
                   help="reject edges touching undeclared vertices")
    p.add_argument("tree")
    p.add_argument("embedding")
    p.add_argument("--require-path-distinct", action="store_true")
    p.add_argument("--z-bad", default=None, help="blocked vertex as a binary string")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force existence search")
    p.add_argument("graph")
    p.add_argument("--strict-vertices", action="store_true",
                   help="reject edges touching undeclared vertices")
    p.add_argument("tree")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--symmetry", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fuzz", help="randomized engine-vs-oracle cross-checks")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--oracle", action="store_true", help="run the oracle in exhaustive mode")
    p.add_argument("--exhaustive", action="store_true", help="all trees up to n edges x 21 hosts")
    p.add_argument("--bundle-dir", default=None)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("gen", help="write a seeded host or tree")
    p.add_argument("kind", choices=sorted(genmod.KINDS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--splits", type=int, default=2)
    p.add_argument("--min-degree", "-d", type=int, default=None)
    p.add_argument("--edges", "-m", type=int, default=None)
    p.add_argument("--legs", default=None, help="comma-separated leg lengths")
    p.add_argument("--emit-spec", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check-tree", help="halves, deficiency, spider report")
    p.add_argument("tree")
    p.set_defaults(func=cmd_check_tree)

    p = sub.add_parser("bench", help="time seeded embedding runs")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

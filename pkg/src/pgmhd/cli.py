"""Command-line interface.

Every subcommand writes exactly one JSON document to stdout; logs go to
stderr.  Exit codes: 0 success, 1 domain error, 2 I/O error, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import ambiguity, bench, infer, ingest, learn, persist, similar
from .errors import PgmhdError
from .graph import LeveledGraph

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2
EXIT_USAGE = 64

log = logging.getLogger("pgmhd")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(document) -> None:
    json.dump(document, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _bool_flag(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {value!r}")


def _load_model(path: str) -> LeveledGraph:
    return persist.load(path).freeze()


def _split_terms(raw: str) -> list[str]:
    return [t for t in (ingest.normalize_label(p) for p in raw.split("|")) if t]


def _resolve_level(g: LeveledGraph, level: int | None) -> int:
    return g.m - 1 if level is None else level


# -- subcommands ----------------------------------------------------------------


def cmd_train(args) -> int:
    observations: list[ingest.Observation] = []
    stats = ingest.ParseStats()
    levels = None
    for input_path in args.input:
        text = Path(input_path).read_text(encoding="utf-8").splitlines()
        if args.format == "paths":
            file_levels = ingest.paths_level_count(text)
            if levels is None:
                levels = file_levels
            elif levels != file_levels:
                raise PgmhdError(
                    f"{input_path}: declares {file_levels} levels, earlier input had {levels}"
                )
            observations.extend(ingest.parse_paths(text, case_fold=args.case_fold))
        else:
            levels = 2
            for row in ingest.parse_search_log(text, case_fold=args.case_fold, stats=stats):
                observations.extend(ingest.row_to_observations(row))
    for message in stats.messages:
        log.warning("%s", message)
    start = time.perf_counter()
    graph = learn.train_sharded(observations, args.shards, levels)
    elapsed = time.perf_counter() - start
    persist.save(graph, args.out)
    _emit(
        {
            "model": args.out,
            "rows": len(observations),
            "skipped": stats.skipped,
            "nodes": graph.num_nodes,
            "arcs": graph.num_arcs,
            "t": graph.t,
            "elapsed_seconds": round(elapsed, 3),
            "memory_estimate_bytes": graph.memory_estimate(),
        }
    )
    return EXIT_OK


def cmd_merge(args) -> int:
    merged = None
    for model_path in args.models:
        g = persist.load(model_path)
        merged = g if merged is None else merged.merge(g)
    persist.save(merged, args.out)
    _emit(
        {
            "model": args.out,
            "inputs": len(args.models),
            "nodes": merged.num_nodes,
            "arcs": merged.num_arcs,
            "t": merged.t,
        }
    )
    return EXIT_OK


def cmd_classify(args) -> int:
    features = _split_terms(args.features)
    if not features:
        print(f"{args.prog_name}: error: empty feature set", file=sys.stderr)
        return EXIT_USAGE
    g = _load_model(args.model)
    result = infer.classify_instance(
        g,
        features,
        level=_resolve_level(g, args.level),
        smoothing=infer.SmoothingParams(args.m_est, args.p_prior),
        top_k=args.top_k,
        threshold=args.threshold,
    )
    _emit(
        {
            "results": [
                {"label": s.label, "score": s.score, "rank": s.rank}
                for s in result.scores
            ],
            "diagnostics": result.diagnostics,
        }
    )
    return EXIT_OK


def cmd_related(args) -> int:
    g = _load_model(args.model)
    node = g.node(args.term, _resolve_level(g, args.level))
    results = similar.related_terms(g, node, top_k=args.top_k, min_co=args.min_co)
    _emit(
        [
            {"term": r.outcome, "co": r.co, "common_parents": r.common_parents}
            for r in results
        ]
    )
    return EXIT_OK


def cmd_ambiguous(args) -> int:
    g = _load_model(args.model)
    node = g.node(args.term, _resolve_level(g, args.level))
    report = ambiguity.ambiguity_report(
        g, node, tau=args.tau, sim_threshold=args.sim_threshold
    )
    _emit(
        {
            "term": report.term,
            "ambiguous": report.ambiguous,
            "parent_scores": [
                {"parent": label, "npmi": score}
                for label, score in report.parent_scores
            ],
            "senses": [
                {"parents": list(s.parents), "related_terms": list(s.related)}
                for s in report.senses
            ],
        }
    )
    return EXIT_OK


def cmd_stats(args) -> int:
    g = _load_model(args.model)
    _emit(
        {
            "levels": g.m,
            "t": g.t,
            "nodes": g.num_nodes,
            "arcs": g.num_arcs,
            "violations": g.validate(),
        }
    )
    return EXIT_OK


def cmd_bench(args) -> int:
    if min(args.classes, args.terms_per_class, args.rows) < 1 or args.zipf < 0:
        print("pgmhd bench: error: parameters must be positive", file=sys.stderr)
        return EXIT_USAGE
    report = bench.run_bench(
        classes=args.classes,
        terms_per_class=args.terms_per_class,
        rows=args.rows,
        zipf_s=args.zipf,
        seed=args.seed,
        baseline=args.baseline,
        timing=not args.no_timing,
    )
    _emit(report)
    return EXIT_OK


# -- wiring -----------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="pgmhd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model from input files")
    p.add_argument("--input", action="append", required=True)
    p.add_argument("--format", choices=["paths", "searchlog"], required=True)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--case-fold", type=_bool_flag, default=None)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("merge", help="merge trained models")
    p.add_argument("models", nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("classify", help="rank candidate classes for a feature set")
    p.add_argument("--model", required=True)
    p.add_argument("--features", required=True, help="pipe-separated feature labels")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--m-est", type=float, default=1.0)
    p.add_argument("--p-prior", type=float, default=0.1)
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--threshold", type=float, default=0.0)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("related", help="top co-occurrence-related terms")
    p.add_argument("--model", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--min-co", type=float, default=0.0)
    p.set_defaults(func=cmd_related)

    p = sub.add_parser("ambiguous", help="sense-ambiguity report for a term")
    p.add_argument("--model", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--tau", type=float, default=ambiguity.DEFAULT_TAU)
    p.add_argument("--sim-threshold", type=float, default=ambiguity.DEFAULT_SIM_THRESHOLD)
    p.set_defaults(func=cmd_ambiguous)

    p = sub.add_parser("stats", help="model summary")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="sparse-vs-dense benchmark on synthetic data")
    p.add_argument("--classes", type=int, required=True)
    p.add_argument("--terms-per-class", type=int, required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--zipf", type=float, default=1.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--baseline", choices=["dense-nb"], default=None)
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall-clock fields for byte-reproducible reports")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "train" and args.case_fold is None:
        args.case_fold = args.format == "searchlog"
    args.prog_name = f"pgmhd {args.command}"
    try:
        return args.func(args)
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    except PgmhdError as exc:
        log.error("%s", exc)
        return EXIT_DOMAIN
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

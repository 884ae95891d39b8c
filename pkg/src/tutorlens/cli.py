"""Command line front end.

    tutorlens generate --preset demo87 --out-dir work/
    tutorlens ingest --config work/config.json --corpus work/corpus.jsonl
    tutorlens build --corpus-id c1a2... --method xmeans --feature errors-time
    tutorlens serve --port 8080
    tutorlens compare --model-id m9f8... --from-a 2013-01-01 --to-a 2015-12-31 \
        --from-b 2016-01-01 --to-b 2016-12-31 --changed f1t16,f2t37
    tutorlens export --model-id m9f8... --cluster 0 --format svg --out graph.svg

The store root comes from --store, else the TUTORLENS_STORE environment
variable, else ./tutorlens_store.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime
from pathlib import Path

from .export import to_dot, to_svg
from .logio import load_corpus, save_corpus
from .model import load_config, save_config, validate_config
from .stats import compare_periods, comparison_to_dict
from .store import DEFAULT_ROOT, ENV_STORE_ROOT, ModelStore
from .synth import demo_config, synthesize_corpus, synthesize_period_corpus
from .views import filter_layout


def _store_from(args: argparse.Namespace) -> ModelStore:
    root = args.store or os.environ.get(ENV_STORE_ROOT, DEFAULT_ROOT)
    return ModelStore(root)


def _cmd_generate(args: argparse.Namespace) -> int:
    config = demo_config()
    if args.preset == "demo87":
        logs = synthesize_corpus(config, args.students or 87, seed=args.seed)
    elif args.preset == "periods":
        before, after = synthesize_period_corpus(config, seed=args.seed)
        logs = before + after
    else:  # "big": parser restricts the choices
        logs = synthesize_corpus(
            config,
            args.students or 300,
            seed=args.seed,
            profile_weights={"struggling": 0.5, "chaotic": 0.5},
        )

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_config(config, out / "config.json")
    save_corpus(logs, out / "corpus.jsonl")
    n_events = sum(len(log.events) for log in logs)
    print(f"wrote {out / 'config.json'} and {out / 'corpus.jsonl'}")
    print(f"{len(logs)} students, {n_events} events, seed {args.seed}")
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot read config {args.config}: {exc}", file=sys.stderr)
        return 1
    violations = validate_config(config)
    if violations:
        print(f"config {args.config} is invalid:", file=sys.stderr)
        for v in violations:
            print(f"  {v}", file=sys.stderr)
        return 1
    try:
        result = load_corpus(args.corpus)
    except OSError as exc:
        print(f"cannot read corpus {args.corpus}: {exc}", file=sys.stderr)
        return 1
    for problem in result.problems:
        print(f"skipped: {problem}", file=sys.stderr)
    if not result.logs:
        print("corpus holds no usable student logs", file=sys.stderr)
        return 1
    store = _store_from(args)
    corpus_id = store.add_corpus(config, result.logs)
    print(f"corpus {corpus_id}: {len(result.logs)} students, "
          f"{len(result.problems)} skipped lines")
    return 0


def _cmd_build(args: argparse.Namespace) -> int:
    store = _store_from(args)
    try:
        model_id = store.build_model(
            args.corpus_id,
            method=args.method,
            feature=args.feature,
            k=args.k,
            k_min=args.k_min,
            k_max=args.k_max,
            seed=args.seed,
        )
    except (KeyError, ValueError) as exc:
        print(f"build failed: {exc}", file=sys.stderr)
        return 1
    meta = store.model_meta(model_id)
    print(f"model {model_id}: method={meta['method']} feature={meta['feature']} "
          f"k={meta['k']}")
    for c in meta["clusters"]:
        print(f"  cluster {c['index']}: {c['n_students']} students, "
              f"{c['n_states']} states, {c['n_edges']} edges")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(_store_from(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _parse_moment(value: str, end_of_day: bool = False) -> datetime:
    if len(value) == 10 and end_of_day:
        return datetime.fromisoformat(value + "T23:59:59")
    return datetime.fromisoformat(value)


def _cmd_compare(args: argparse.Namespace) -> int:
    store = _store_from(args)
    try:
        logs = store.model_logs(args.model_id)
    except KeyError as exc:
        print(f"compare failed: {exc}", file=sys.stderr)
        return 1
    a0, a1 = _parse_moment(args.from_a), _parse_moment(args.to_a, end_of_day=True)
    b0, b1 = _parse_moment(args.from_b), _parse_moment(args.to_b, end_of_day=True)
    logs_a = [lg for lg in logs if a0 <= lg.started_at <= a1]
    logs_b = [lg for lg in logs if b0 <= lg.started_at <= b1]
    if not logs_a or not logs_b:
        print("a period matched no students", file=sys.stderr)
        return 1
    changed = [c for c in args.changed.split(",") if c] if args.changed else None
    comparison = compare_periods(logs_a, logs_b, changed)
    payload = comparison_to_dict(comparison, min_percent=args.min_percent)

    if args.json:
        print(json.dumps(payload, indent=2))
        return 0

    print(f"period A: {len(logs_a)} students, period B: {len(logs_b)} students")
    print(f"{'action':<10} {'error':<18} {'A':>8} {'B':>8} {'diff':>8}")
    for row in payload["rows"]:
        print(f"{row['action']:<10} {row['error']:<18} "
              f"{row['rate_a']:>8.3f} {row['rate_b']:>8.3f} {row['difference']:>8.3f}")
    if payload["grade_test"]:
        gt = payload["grade_test"]
        print(f"grades (Mann-Whitney U): U={gt['u']:.1f} p={gt['p_value']:.4g}")
    if payload["change_test"]:
        ct = payload["change_test"]
        print(f"changed vs unchanged (Welch t): t={ct['t']:.3f} "
              f"df={ct['df']:.1f} p={ct['p_value']:.4g}")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    store = _store_from(args)
    try:
        graph = store.cluster_layout(args.model_id, args.cluster)
    except KeyError as exc:
        print(f"export failed: {exc}", file=sys.stderr)
        return 1
    graph = filter_layout(graph, args.min_node_freq, args.min_edge_freq)
    text = to_svg(graph) if args.format == "svg" else to_dot(graph)
    Path(args.out).write_text(text, encoding="utf-8")
    print(f"wrote {args.out}: {len(graph.nodes)} nodes, {len(graph.edges)} edges")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tutorlens")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic config and corpus")
    p.add_argument("--preset", default="demo87", choices=["demo87", "periods", "big"])
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--students", type=int, default=None)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("ingest", help="validate and store a corpus")
    p.add_argument("--config", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--store", default=None)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("build", help="cluster a corpus and precompute its graphs")
    p.add_argument("--corpus-id", required=True)
    p.add_argument("--method", default="none", choices=["none", "xmeans", "em"])
    p.add_argument(
        "--feature", default="errors", choices=["errors", "errors-time", "zone-events"]
    )
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--store", default=None)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("serve", help="serve stored models over HTTP")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--store", default=None)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("compare", help="compare two date periods of one model")
    p.add_argument("--model-id", required=True)
    p.add_argument("--from-a", required=True)
    p.add_argument("--to-a", required=True)
    p.add_argument("--from-b", required=True)
    p.add_argument("--to-b", required=True)
    p.add_argument("--changed", default=None, help="comma separated revised action codes")
    p.add_argument("--min-percent", type=float, default=0.0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--store", default=None)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("export", help="render a stored cluster graph")
    p.add_argument("--model-id", required=True)
    p.add_argument("--cluster", type=int, default=0)
    p.add_argument("--format", default="svg", choices=["svg", "dot"])
    p.add_argument("--out", required=True)
    p.add_argument("--min-node-freq", type=float, default=0.0)
    p.add_argument("--min-edge-freq", type=float, default=0.0)
    p.add_argument("--store", default=None)
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line surface: generate, cluster, evaluate, predict, serve.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, engine, evaluation, io
from .core import Dataset


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the CLI contract wants 1
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seedclust", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="emit a synthetic benchmark")
    p.add_argument("--bench", choices=["1d", "2d"], required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed-rng", type=int, default=1,
                   help="rng seed for the seed-label sample (default 1)")

    p = sub.add_parser("cluster", help="run the clustering engine")
    p.add_argument("--data", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--label-column", default=None,
                   help="truth column to exclude from features "
                        "(default: a column literally named 'label', when present)")

    p = sub.add_parser("evaluate", help="score results against truth")
    p.add_argument("--pred", required=True, help="results CSV (id,label,score)")
    p.add_argument("--truth", required=True, help="data CSV with a label column")
    p.add_argument("--label-column", default="label")
    p.add_argument("--out", default=None, help="optional key-value report file")

    p = sub.add_parser("predict", help="assign new points to clusters")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None, help="output CSV (default: stdout)")
    p.add_argument("--label-column", default=None)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--data-dir", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None, help="static UI bundle (default: ./frontend/dist if present)")
    return parser


def _load_data(path: str, label_column: str | None) -> Dataset:
    if label_column is None:
        header = io.peek_header(path)
        if header and "label" in header:
            label_column = "label"
    return io.load_csv(path, label_column=label_column)


def _cmd_generate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.bench == "1d":
        dataset, spec = bench.gen_1d(args.seed)
        fraction, min_per = 0.005, 10
    else:
        dataset, spec = bench.gen_2d(args.seed)
        fraction, min_per = 0.0097, 10
    seeds = bench.sample_seeds(dataset, fraction, min_per, spec.n_mislabelled_seeds, args.seed_rng)
    io.save_dataset_csv(out / "data.csv", dataset)
    bench.save_benchmark_spec(out / "benchspec.txt", spec)
    io.save_seeds(out / "seeds.csv", seeds)
    print(f"wrote {dataset.n} rows to {out / 'data.csv'} ({len(seeds)} seeds)")
    return 0


def _cmd_cluster(args) -> int:
    dataset = _load_data(args.data, args.label_column)
    seeds = io.load_seeds(args.seeds)
    assignment, report = engine.run(dataset, seeds, max_n_iterations=args.max_iter)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.save_results(out / "results.csv", assignment)
    io.save_models(out / "model.json", assignment.models)
    (out / "report.txt").write_text(io.report_to_kv(report), encoding="utf-8")
    print(
        f"converged={report.converged} passes={report.passes} "
        f"ejected={report.ejected_total} absorbed={report.absorbed_total} "
        f"-> {out / 'results.csv'}"
    )
    return 0


def _cmd_evaluate(args) -> int:
    labels, _ = io.load_results(args.pred)
    truth_ds = io.load_csv(args.truth, label_column=args.label_column)
    if truth_ds.truth_labels is None:
        raise ValueError(f"{args.truth}: no label column")
    report = evaluation.evaluate(labels, truth_ds.truth_labels)
    print(evaluation.render_report(report))
    if args.out:
        Path(args.out).write_text(evaluation.report_to_kv(report), encoding="utf-8")
    return 0


def _cmd_predict(args) -> int:
    models = io.load_models(args.model)
    dataset = _load_data(args.infile, args.label_column)
    lines = ["id,label,score"]
    for i in range(dataset.n):
        label, score = engine.assign_new(models, dataset.features[i])
        lines.append(f"{i},{label},{format(score, '.17g')}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    ui_dir = args.ui_dir
    if ui_dir is None:
        candidate = Path("frontend") / "dist"
        ui_dir = str(candidate) if candidate.is_dir() else None
    app = create_app(Path(args.data_dir), ui_dir=Path(ui_dir) if ui_dir else None)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "cluster": _cmd_cluster,
    "evaluate": _cmd_evaluate,
    "predict": _cmd_predict,
    "serve": _cmd_serve,
}


def cli(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli(sys.argv[1:]))


if __name__ == "__main__":
    main()

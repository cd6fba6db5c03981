"""Command-line front end.

Subcommands: ingest (raw file -> canonical events), score (one predictor at
one time), evaluate (the full sampled protocol), sweep (protocol over a window
grid), synth (the synthetic rank-agreement study). Every JSON report embeds a
run manifest (tool version, resolved arguments, input digests) so a result
file identifies the run that made it; CSV outputs written with --out get a
.manifest.json sidecar instead.

Exit codes: 0 success; 2 unreadable or malformed data; 64 usage errors;
65 configuration errors (bad parameter ranges, times outside the data span,
spans too small to sample).
"""

import argparse
import csv
import hashlib
import json
import sys

from . import __version__
from .errors import (
    EmptyDatasetError,
    FormatError,
    NoEligibleNodesError,
    PageRankConvergenceError,
    SpanError,
    TrendlabError,
    UnknownNodeError,
)
from .events import build_history
from .ingest import (
    FORMATS,
    DatasetSpec,
    finalize_report,
    load_canonical,
    merge_reports,
    parse_citation,
    parse_rating,
    parse_wallpost,
    write_canonical,
)
from .predictors import PREDICTOR_NAMES, PredictorParams, compute_scores
from .protocol import (
    AUC_MODES,
    ProtocolConfig,
    SweepSpec,
    plot_table_rows,
    run_protocol,
    run_sweep,
    sweep_table_rows,
)
from .synthetic import rank_agreement_experiment

EXIT_OK = 0
EXIT_DATA = 2
EXIT_USAGE = 64
EXIT_CONFIG = 65

PLOT_TABLE_HEADER = ("predictor", "n", "swept_value", "metric", "mean", "stddev")


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _manifest(command: str, args: argparse.Namespace, inputs: list[str]) -> dict:
    resolved = {k: v for k, v in vars(args).items() if k != "func"}
    return {
        "tool": "trendlab",
        "version": __version__,
        "command": command,
        "args": resolved,
        "inputs": {path: _sha256(path) for path in inputs},
    }


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _int_list(parser: _Parser, flag: str, text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        parser.error(f"{flag} expects a comma-separated integer list, got {text!r}")
    if not values:
        parser.error(f"{flag} must name at least one value")
    return values


# -- subcommands -----------------------------------------------------------------


def cmd_ingest(args, parser: _Parser) -> int:
    if args.format == "citation" and not args.dates:
        parser.error("--format citation requires --dates")

    spec = DatasetSpec(args.format)
    all_events = []
    reports = []
    if args.format == "citation":
        with open(args.dates, "r", encoding="utf-8") as fh:
            date_lines = fh.readlines()
    for path in args.inputs:
        with open(path, "r", encoding="utf-8") as fh:
            if args.format == "rating":
                events, report = parse_rating(fh, spec)
            elif args.format == "wallpost":
                events, report = parse_wallpost(fh, spec)
            elif args.format == "citation":
                events, report = parse_citation(fh, date_lines, spec)
            else:
                from .ingest import read_canonical

                events, report = read_canonical(fh)
        all_events.extend(events)
        reports.append(report)

    merged = finalize_report(all_events, merge_reports(reports))
    write_canonical(all_events, args.out)

    inputs = list(args.inputs) + ([args.dates] if args.dates else [])
    doc = {"manifest": _manifest("ingest", args, inputs)}
    doc.update(merged.to_json())
    _print_json(doc)
    return EXIT_OK


def cmd_score(args, parser: _Parser) -> int:
    events, _ = load_canonical(args.data)
    h = build_history(events)
    if not h.t_min <= args.t <= h.t_max:
        raise SpanError(
            f"t={args.t} is outside the data span [{h.t_min}, {h.t_max}]"
        )
    params = PredictorParams(lam=args.lam, gamma=args.gamma, teleport=args.teleport)
    sv = compute_scores(h, args.predictor, args.t, args.tp, params)

    ranked = sorted(sv.scores.items(), key=lambda kv: (-kv[1], kv[0]))
    lines = ["node,score"] + [f"{node},{score!r}" for node, score in ranked]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        with open(f"{args.out}.manifest.json", "w", encoding="utf-8") as fh:
            json.dump(_manifest("score", args, [args.data]), fh, indent=2)
            fh.write("\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _protocol_config(args, parser: _Parser) -> ProtocolConfig:
    predictors = tuple(p.strip() for p in args.predictors.split(",") if p.strip())
    for p in predictors:
        if p not in PREDICTOR_NAMES:
            parser.error(f"unknown predictor {p!r} (choose from {', '.join(PREDICTOR_NAMES)})")
    params = PredictorParams(lam=args.lam, gamma=args.gamma, teleport=args.teleport)
    return ProtocolConfig(
        t_p=args.tp,
        t_f=args.tf,
        sample_count=args.samples,
        seed=args.seed,
        n_values=_int_list(parser, "--topn", args.topn),
        predictors=predictors,
        params=params,
        auc_mode=args.auc_mode,
    )


def cmd_evaluate(args, parser: _Parser) -> int:
    events, _ = load_canonical(args.data)
    h = build_history(events)
    cfg = _protocol_config(args, parser)
    run = run_protocol(h, cfg)

    table_path = f"{args.out_dir}/evaluate_table.csv"
    _write_csv(table_path, PLOT_TABLE_HEADER, plot_table_rows(run, cfg.t_f))
    outputs = {"table": table_path, "figures": []}
    if not args.no_figures:
        from .figures import render_protocol_figure

        outputs["figures"].append(
            render_protocol_figure(run, f"{args.out_dir}/evaluate_metrics.png")
        )

    doc = {"manifest": _manifest("evaluate", args, [args.data]), "run": run, "outputs": outputs}
    _print_json(doc)
    return EXIT_OK


def cmd_sweep(args, parser: _Parser) -> int:
    events, _ = load_canonical(args.data)
    h = build_history(events)
    cfg = _protocol_config(args, parser)
    axis = {"tf": "future_only", "joint": "joint_past_future"}[args.axis]
    sweep = SweepSpec(axis=axis, values=_int_list(parser, "--values", args.values))
    report = run_sweep(h, cfg, sweep)

    table_path = f"{args.out_dir}/sweep_table.csv"
    _write_csv(table_path, PLOT_TABLE_HEADER, sweep_table_rows(report))
    outputs = {"table": table_path, "figures": []}
    if not args.no_figures:
        from .figures import render_sweep_figures

        outputs["figures"].extend(render_sweep_figures(report, args.out_dir))

    doc = {"manifest": _manifest("sweep", args, [args.data]), "sweep": report, "outputs": outputs}
    _print_json(doc)
    return EXIT_OK


def cmd_synth(args, parser: _Parser) -> int:
    sizes = _int_list(parser, "--sizes", args.sizes)
    if any(s < 2 for s in sizes):
        parser.error(f"--sizes values must be at least 2, got {sorted(sizes)}")
    result = rank_agreement_experiment(sizes, args.population, args.trials, args.seed)

    curves_path = f"{args.out_dir}/tau_curves.csv"
    _write_csv(curves_path, ("size", "trial", "pair", "tau"), result["tau_rows"])
    dist_path = f"{args.out_dir}/distributions.csv"
    _write_csv(
        dist_path, ("size", "variable", "bin_low", "bin_high", "count"), result["dist_rows"]
    )
    outputs = {"tau_curves": curves_path, "distributions": dist_path, "figures": []}
    if not args.no_figures:
        from .figures import render_synth_figure

        outputs["figures"].append(
            render_synth_figure(result, f"{args.out_dir}/synthetic_summary.png")
        )

    doc = {
        "manifest": _manifest("synth", args, []),
        "sizes": sorted(set(sizes)),
        "population": args.population,
        "trials": args.trials,
        "seed": args.seed,
        "tau_means": [
            {"size": size, "pair": pair, "mean": mean}
            for size, pair, mean in result["tau_means"]
        ],
        "outputs": outputs,
    }
    _print_json(doc)
    return EXIT_OK


# -- parser wiring -----------------------------------------------------------------


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--lambda", dest="lam", type=float, default=0.98,
                     help="recency discount of the popularity benchmark")
    sub.add_argument("--gamma", type=float, default=0.06,
                     help="age-decay rate per time unit")
    sub.add_argument("--teleport", type=float, default=0.90,
                     help="link-following probability of the walk benchmark")


def _add_protocol_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--data", required=True, help="canonical event file")
    sub.add_argument("--tp", type=int, default=30, help="past window length")
    sub.add_argument("--tf", type=int, default=30, help="future window length")
    sub.add_argument("--samples", type=int, default=10, help="evaluation times to draw")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--topn", default="50,100,200", help="comma-separated list sizes")
    sub.add_argument("--predictors", default=",".join(PREDICTOR_NAMES),
                     help="comma-separated predictor names")
    sub.add_argument("--auc-mode", choices=AUC_MODES, default="classwise")
    sub.add_argument("--out-dir", default=".", help="where tables and figures go")
    sub.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    _add_param_flags(sub)


def build_parser() -> _Parser:
    parser = _Parser(prog="trendlab",
                     description="Predict and evaluate rising nodes on evolving networks.")
    parser.add_argument("--version", action="version", version=f"trendlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="convert a raw file to canonical events")
    p_ingest.add_argument("--format", required=True, choices=FORMATS)
    p_ingest.add_argument("--in", dest="inputs", nargs="+", required=True,
                          help="one or more raw input files")
    p_ingest.add_argument("--out", required=True, help="canonical output path")
    p_ingest.add_argument("--dates", help="paper dates file (citation format)")
    p_ingest.set_defaults(func=cmd_ingest)

    p_score = sub.add_parser("score", help="rank nodes with one predictor at one time")
    p_score.add_argument("--data", required=True, help="canonical event file")
    p_score.add_argument("--predictor", required=True, choices=PREDICTOR_NAMES)
    p_score.add_argument("--t", type=int, required=True, help="scoring time")
    p_score.add_argument("--tp", type=int, default=30, help="past window length")
    p_score.add_argument("--out", help="write CSV here instead of stdout")
    _add_param_flags(p_score)
    p_score.set_defaults(func=cmd_score)

    p_eval = sub.add_parser("evaluate", help="run the sampled evaluation protocol")
    _add_protocol_flags(p_eval)
    p_eval.set_defaults(func=cmd_evaluate)

    p_sweep = sub.add_parser("sweep", help="evaluate over a grid of window lengths")
    _add_protocol_flags(p_sweep)
    p_sweep.add_argument("--axis", required=True, choices=("tf", "joint"),
                         help="tf: vary the future window; joint: vary both together")
    p_sweep.add_argument("--values", required=True, help="comma-separated window lengths")
    p_sweep.set_defaults(func=cmd_sweep)

    p_synth = sub.add_parser(
        "synth", help="synthetic rank-agreement study of the blends' dominant sides"
    )
    p_synth.add_argument("--sizes", default="10,20,50,100,200,500,1000",
                         help="comma-separated population sizes")
    p_synth.add_argument("--population", type=int, default=1_000_000,
                         help="gain values are drawn uniformly from [1, population]")
    p_synth.add_argument("--trials", type=int, default=20, help="draws per size")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--out-dir", default=".")
    p_synth.add_argument("--no-figures", action="store_true")
    p_synth.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except FormatError as exc:
        print(f"trendlab: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (EmptyDatasetError, UnknownNodeError) as exc:
        print(f"trendlab: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (SpanError, NoEligibleNodesError, PageRankConvergenceError) as exc:
        print(f"trendlab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"trendlab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"trendlab: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except TrendlabError as exc:
        print(f"trendlab: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

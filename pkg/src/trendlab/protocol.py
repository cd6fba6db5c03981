"""Evaluation protocol: sample times from the middle of the data, score, compare.

A run draws ``sample_count`` integer times uniformly from the middle third of
the data span (so every sample has real history behind it and real future
ahead of it), scores the eligible nodes at each time with each configured
predictor, and grades the scores against the realized future gains at several
list sizes. Per-sample reports are aggregated into means and population
standard deviations; samples where a metric is undefined (no newcomers, no
negative class) are excluded from that metric's average and counted.

Sweeps rerun the same protocol over a grid of window lengths, reusing the
same sampled times for every grid point so curves differ only in the windows.

Parallelism: set TRENDLAB_THREADS to evaluate samples concurrently. Results
are collected in sample order and reduced identically regardless of the
thread count, so outputs are byte-stable for a fixed seed.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import SpanError, TrendlabError
from .events import DegreeHistory
from .metrics import (
    EvalReport,
    concordant_discordant,
    novelty_qn,
    precision_at_n,
    top_n,
    auc as auc_metric,
)
from .predictors import PREDICTOR_NAMES, PredictorParams, compute_scores

AUC_MODES = ("classwise", "literal")
NOVELTY_REFERENCES = ("degree", "recent")
THIRD_MODES = ("time", "events")
SWEEP_AXES = ("future_only", "joint_past_future")


@dataclass(frozen=True)
class ProtocolConfig:
    """One evaluation run's worth of settings.

    ``params`` applies to every predictor; ``per_predictor`` overrides it for
    the named ones. ``third_mode`` picks how the middle third is measured:
    "time" splits the time span, "events" splits the event sequence.
    """

    t_p: int = 30
    t_f: int = 30
    sample_count: int = 10
    seed: int = 0
    n_values: tuple[int, ...] = (50, 100, 200)
    predictors: tuple[str, ...] = PREDICTOR_NAMES
    params: PredictorParams = field(default_factory=PredictorParams)
    per_predictor: Mapping[str, PredictorParams] | None = None
    auc_mode: str = "classwise"
    novelty_reference: str = "degree"
    third_mode: str = "time"

    def __post_init__(self):
        if self.t_p < 1 or self.t_f < 1:
            raise ValueError(f"windows must be positive, got t_p={self.t_p} t_f={self.t_f}")
        if self.sample_count < 1:
            raise ValueError(f"sample_count must be at least 1, got {self.sample_count}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError(f"n_values must be positive, got {self.n_values}")
        if not self.predictors:
            raise ValueError("no predictors configured")
        for name in self.predictors:
            if name not in PREDICTOR_NAMES:
                raise ValueError(f"unknown predictor: {name!r}")
        if self.auc_mode not in AUC_MODES:
            raise ValueError(f"auc_mode must be one of {AUC_MODES}, got {self.auc_mode!r}")
        if self.novelty_reference not in NOVELTY_REFERENCES:
            raise ValueError(
                f"novelty_reference must be one of {NOVELTY_REFERENCES}, "
                f"got {self.novelty_reference!r}"
            )
        if self.third_mode not in THIRD_MODES:
            raise ValueError(f"third_mode must be one of {THIRD_MODES}, got {self.third_mode!r}")

    def params_for(self, predictor: str) -> PredictorParams:
        if self.per_predictor and predictor in self.per_predictor:
            return self.per_predictor[predictor]
        return self.params


def thread_count() -> int:
    """Worker cap from TRENDLAB_THREADS; defaults to 1 (serial)."""
    raw = os.environ.get("TRENDLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def sample_times(h: DegreeHistory, cfg: ProtocolConfig) -> list[int]:
    """Draw the evaluation times, uniform over the middle third.

    The interval is [ceil(lo), ceil(hi)) where lo and hi cut the span (or the
    event sequence, in "events" mode) at 1/3 and 2/3. Same seed, same list.
    """
    if h.span < 3:
        raise SpanError(
            f"data span {h.span} is too small to sample from a middle third"
        )
    if cfg.third_mode == "time":
        lo = h.t_min + (h.span + 2) // 3
        hi = h.t_min + (2 * h.span + 2) // 3
    else:
        count = h.num_events
        lo = h.events[count // 3].time
        hi = h.events[(2 * count) // 3].time
    if lo >= hi:
        raise SpanError(f"middle third [{lo}, {hi}) contains no integer times")
    rng = np.random.default_rng(cfg.seed)
    return [int(x) for x in rng.integers(lo, hi, size=cfg.sample_count)]


def evaluate_scores(
    h: DegreeHistory,
    scores: Mapping[str, float],
    predictor: str,
    t: int,
    t_p: int,
    t_f: int,
    n: int,
    auc_mode: str = "classwise",
    novelty_reference: str = "degree",
    seed: int | None = None,
) -> EvalReport:
    """Grade an arbitrary score mapping against the realized future.

    The mapping's keys define the node universe (normally the eligible set at
    t). Exposed separately from ``evaluate_once`` so externally produced
    scores can run through the exact same metric path.
    """
    if not scores:
        raise ValueError("empty score mapping")
    nodes = sorted(scores)
    gains = {o: float(h.future_gain(o, t, t_f)) for o in nodes}
    if novelty_reference == "degree":
        past = {o: float(h.degree_at(o, t)) for o in nodes}
    elif novelty_reference == "recent":
        past = {o: float(h.window_gain(o, t, t_p)) for o in nodes}
    else:
        raise ValueError(f"unknown novelty reference: {novelty_reference!r}")

    pred_top = top_n(scores, n)
    real_top = top_n(gains, n)
    past_top = top_n(past, n)

    real_ids = set(real_top.ids)
    dn = len(set(pred_top.ids) & real_ids)
    newcomers = real_ids - set(past_top.ids)
    ppo = len(set(pred_top.ids) & newcomers)
    pro = len(newcomers)

    precision = precision_at_n(pred_top, real_top, n)
    novelty = novelty_qn(pred_top, real_top, past_top, n)
    auc_value = auc_metric(scores, real_top, n, mode=auc_mode)

    x = [scores[o] for o in nodes]
    y = [gains[o] for o in nodes]
    c, d = concordant_discordant(x, y)
    tau = (c - d) / (c + d) if c + d else 0.0

    return EvalReport(
        predictor=predictor,
        t=t,
        t_p=t_p,
        t_f=t_f,
        n=n,
        precision=precision,
        dn=dn,
        novelty=novelty,
        ppo=ppo,
        pro=pro,
        auc=auc_value,
        tau=tau,
        c=c,
        d=d,
        seed=seed,
        short_list=len(scores) < n,
        clipped_future=t + t_f > h.t_max,
    )


def evaluate_once(
    h: DegreeHistory,
    predictor: str,
    t: int,
    t_p: int,
    t_f: int,
    n: int,
    params: PredictorParams | None = None,
    auc_mode: str = "classwise",
    novelty_reference: str = "degree",
    seed: int | None = None,
) -> EvalReport:
    """Score with one predictor at one time and grade the result."""
    sv = compute_scores(h, predictor, t, t_p, params)
    return evaluate_scores(
        h, sv.scores, predictor, t, t_p, t_f, n,
        auc_mode=auc_mode, novelty_reference=novelty_reference, seed=seed,
    )


# -- aggregation ---------------------------------------------------------------


def aggregate_metric(values: Sequence[float | None]) -> dict:
    """Mean and population std over the defined samples; undefined ones counted.

    All samples undefined leaves mean and std at None rather than NaN.
    """
    defined = [v for v in values if v is not None]
    excluded = len(values) - len(defined)
    if not defined:
        return {"mean": None, "std": None, "count": 0, "excluded": excluded}
    arr = np.asarray(defined, dtype=np.float64)
    return {
        "mean": float(arr.mean()),
        "std": float(arr.std(ddof=0)),
        "count": len(defined),
        "excluded": excluded,
    }


def _evaluate_sample(h, cfg: ProtocolConfig, t: int, t_p: int, t_f: int):
    """All (predictor, n) reports for one sampled time; scores computed once."""
    out: dict[tuple[str, int], EvalReport] = {}
    for name in cfg.predictors:
        sv = compute_scores(h, name, t, t_p, cfg.params_for(name))
        for n in cfg.n_values:
            out[(name, n)] = evaluate_scores(
                h, sv.scores, name, t, t_p, t_f, n,
                auc_mode=cfg.auc_mode,
                novelty_reference=cfg.novelty_reference,
                seed=cfg.seed,
            )
    return out


def _run_protocol_at(
    h: DegreeHistory,
    cfg: ProtocolConfig,
    times: Sequence[int],
    t_p: int,
    t_f: int,
) -> dict:
    """Protocol body with the sampled times fixed by the caller."""

    def job(t: int):
        try:
            return _evaluate_sample(h, cfg, t, t_p, t_f)
        except TrendlabError as exc:
            return exc

    workers = thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(job, times))
    else:
        outcomes = [job(t) for t in times]

    failures = [o for o in outcomes if isinstance(o, TrendlabError)]
    samples = [o for o in outcomes if not isinstance(o, TrendlabError)]
    if not samples:
        raise TrendlabError(f"all {len(times)} samples failed; last error: {failures[-1]}")

    results = []
    for name in cfg.predictors:
        for n in cfg.n_values:
            reports = [s[(name, n)] for s in samples]
            results.append(
                {
                    "predictor": name,
                    "n": n,
                    "precision": aggregate_metric([r.precision for r in reports]),
                    "novelty": aggregate_metric([r.novelty for r in reports]),
                    "auc": aggregate_metric([r.auc for r in reports]),
                    "tau": aggregate_metric([r.tau for r in reports]),
                    "samples": [r.to_json() for r in reports],
                }
            )
    return {
        "t_p": t_p,
        "t_f": t_f,
        "seed": cfg.seed,
        "sample_count": cfg.sample_count,
        "auc_mode": cfg.auc_mode,
        "sample_times": list(times),
        "failed_samples": len(failures),
        "results": results,
    }


def run_protocol(h: DegreeHistory, cfg: ProtocolConfig) -> dict:
    """Full run: draw times, evaluate everything, aggregate."""
    times = sample_times(h, cfg)
    return _run_protocol_at(h, cfg, times, cfg.t_p, cfg.t_f)


# -- window sweeps ---------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    """Grid of window lengths: vary the future window alone, or both together."""

    axis: str
    values: tuple[int, ...]

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ValueError(f"axis must be one of {SWEEP_AXES}, got {self.axis!r}")
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if any(v < 1 for v in self.values):
            raise ValueError(f"sweep values must be positive, got {self.values}")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"sweep values must be strictly ascending, got {self.values}")


def run_sweep(h: DegreeHistory, cfg: ProtocolConfig, sweep: SweepSpec) -> dict:
    """Rerun the protocol per grid value, reusing one draw of sample times.

    On the future_only axis a grid value equal to cfg.t_f reproduces
    ``run_protocol`` exactly (same times, same windows, same path).
    """
    times = sample_times(h, cfg)
    runs = []
    for v in sweep.values:
        if sweep.axis == "future_only":
            t_p, t_f = cfg.t_p, v
        else:
            t_p, t_f = v, v
        runs.append({"value": v, "run": _run_protocol_at(h, cfg, times, t_p, t_f)})
    return {
        "axis": sweep.axis,
        "values": list(sweep.values),
        "seed": cfg.seed,
        "sample_times": list(times),
        "runs": runs,
    }


# -- flat rows for the delimited outputs ----------------------------------------

METRIC_NAMES = ("precision", "novelty", "auc", "tau")


def plot_table_rows(run: dict, swept_value: int) -> list[tuple]:
    """(predictor, n, swept_value, metric, mean, stddev) rows for one run."""
    rows = []
    for cell in run["results"]:
        for metric in METRIC_NAMES:
            agg = cell[metric]
            rows.append(
                (cell["predictor"], cell["n"], swept_value, metric, agg["mean"], agg["std"])
            )
    return rows


def sweep_table_rows(sweep_report: dict) -> list[tuple]:
    """Plot rows for every grid point of a sweep."""
    rows = []
    for entry in sweep_report["runs"]:
        rows.extend(plot_table_rows(entry["run"], entry["value"]))
    return rows

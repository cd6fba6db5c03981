"""End-to-end CLI behavior: round trips, reports, exit codes, determinism."""

import json

import pytest

import test_ingest as fixtures
from conftest import TWO_NODE_EVENTS
from trendlab.ingest import canonical_order, load_canonical, write_canonical


@pytest.fixture
def two_node_file(tmp_path):
    path = tmp_path / "two_node.tsv"
    write_canonical(TWO_NODE_EVENTS, path)
    return str(path)


def _write(path, lines):
    path.write_text("".join(lines), encoding="utf-8")
    return str(path)


# -- ingest ------------------------------------------------------------------------


def test_ingest_rating_round_trip(cli, tmp_path):
    raw = _write(tmp_path / "ratings.dat", fixtures.RATING_LINES)
    out = tmp_path / "events.tsv"
    code, stdout, _ = cli(
        ["ingest", "--format", "rating", "--in", raw, "--out", str(out)]
    )
    assert code == 0
    doc = json.loads(stdout)
    assert doc["accepted"] == 9
    assert doc["skipped_malformed"] == 1
    assert doc["nodes"] == 11
    assert doc["span"] == [0, 11331]
    assert doc["manifest"]["command"] == "ingest"
    assert raw in doc["manifest"]["inputs"]

    events, _ = load_canonical(out)
    assert events == canonical_order(fixtures.RATING_EVENTS)


def test_ingest_citation_round_trip(cli, tmp_path):
    raw = _write(tmp_path / "edges.txt", fixtures.CITATION_LINES)
    dates = _write(tmp_path / "dates.txt", fixtures.CITATION_DATES)
    out = tmp_path / "events.tsv"
    code, stdout, _ = cli(
        ["ingest", "--format", "citation", "--in", raw, "--dates", dates,
         "--out", str(out)]
    )
    assert code == 0
    doc = json.loads(stdout)
    assert doc["accepted"] == 7
    assert doc["dropped_undated"] == 1
    assert doc["span"] == [0, 123]

    events, _ = load_canonical(out)
    assert events == canonical_order(fixtures.CITATION_EVENTS)


def test_ingest_merges_multiple_inputs(cli, tmp_path):
    first = _write(tmp_path / "a.txt", fixtures.WALLPOST_LINES[:5])
    second = _write(tmp_path / "b.txt", fixtures.WALLPOST_LINES[5:])
    out = tmp_path / "events.tsv"
    code, stdout, _ = cli(
        ["ingest", "--format", "wallpost", "--in", first, second, "--out", str(out)]
    )
    assert code == 0
    doc = json.loads(stdout)
    assert doc["accepted"] == 8
    assert doc["dropped_self"] == 1
    assert doc["skipped_malformed"] == 1

    events, _ = load_canonical(out)
    assert events == canonical_order(fixtures.WALLPOST_EVENTS)


def test_ingest_citation_without_dates_is_usage_error(cli, tmp_path):
    raw = _write(tmp_path / "edges.txt", fixtures.CITATION_LINES)
    code, _, stderr = cli(
        ["ingest", "--format", "citation", "--in", raw, "--out", str(tmp_path / "o")]
    )
    assert code == 64
    assert "--dates" in stderr


def test_ingest_missing_file_is_data_error(cli, tmp_path):
    code, _, stderr = cli(
        ["ingest", "--format", "rating", "--in", str(tmp_path / "absent.dat"),
         "--out", str(tmp_path / "o")]
    )
    assert code == 2
    assert "data error" in stderr


def test_ingest_heavily_malformed_file_is_data_error(cli, tmp_path):
    lines = fixtures.RATING_LINES[:6] + ["junk\n", "more junk\n"] + fixtures.RATING_LINES[7:]
    raw = _write(tmp_path / "ratings.dat", lines)
    code, _, stderr = cli(
        ["ingest", "--format", "rating", "--in", raw, "--out", str(tmp_path / "o")]
    )
    assert code == 2
    assert "data error" in stderr


# -- score -------------------------------------------------------------------------


def test_score_indegree_frozen_output(cli, two_node_file):
    code, stdout, _ = cli(
        ["score", "--data", two_node_file, "--predictor", "indegree", "--t", "500"]
    )
    assert code == 0
    assert stdout == "node,score\nb,6.0\na,4.0\n"


def test_score_blend_orders_by_recent_dominance(cli, two_node_file):
    code, stdout, _ = cli(
        ["score", "--data", two_node_file, "--predictor", "rbdm", "--t", "500"]
    )
    assert code == 0
    assert stdout.splitlines() == ["node,score", "a,0.75", "b,0.425"]


def test_score_aged_blend_with_zero_decay_orders_by_degree(cli, two_node_file):
    code, stdout, _ = cli(
        ["score", "--data", two_node_file, "--predictor", "rbndm", "--t", "500",
         "--gamma", "0"]
    )
    assert code == 0
    assert stdout.splitlines() == ["node,score", "b,0.425", "a,0.4"]


def test_score_out_writes_file_and_manifest_sidecar(cli, two_node_file, tmp_path):
    out = tmp_path / "scores.csv"
    code, stdout, _ = cli(
        ["score", "--data", two_node_file, "--predictor", "indegree", "--t", "500",
         "--out", str(out)]
    )
    assert code == 0
    assert stdout == ""
    assert out.read_text() == "node,score\nb,6.0\na,4.0\n"
    manifest = json.loads((tmp_path / "scores.csv.manifest.json").read_text())
    assert manifest["command"] == "score"
    assert manifest["args"]["predictor"] == "indegree"
    digest = manifest["inputs"][two_node_file]
    assert len(digest) == 64 and set(digest) <= set("0123456789abcdef")


def test_score_time_outside_span_is_config_error(cli, two_node_file):
    code, _, stderr = cli(
        ["score", "--data", two_node_file, "--predictor", "indegree", "--t", "900"]
    )
    assert code == 65
    assert "configuration error" in stderr


def test_score_bad_teleport_is_config_error(cli, two_node_file):
    code, _, stderr = cli(
        ["score", "--data", two_node_file, "--predictor", "pagerank", "--t", "500",
         "--teleport", "1.5"]
    )
    assert code == 65


def test_score_unknown_predictor_is_usage_error(cli, two_node_file):
    code, _, _ = cli(
        ["score", "--data", two_node_file, "--predictor", "oracle", "--t", "500"]
    )
    assert code == 64


# -- evaluate ----------------------------------------------------------------------


EVAL_ARGS = ["--tp", "10", "--tf", "10", "--samples", "3", "--seed", "5",
             "--topn", "5,10", "--predictors", "indegree,rbdm,rbndm"]


def test_evaluate_smoke_with_figures(cli, small_file, tmp_path):
    code, stdout, _ = cli(
        ["evaluate", "--data", small_file, "--out-dir", str(tmp_path)] + EVAL_ARGS
    )
    assert code == 0
    doc = json.loads(stdout)
    run = doc["run"]
    assert run["sample_count"] == 3
    assert len(run["sample_times"]) == 3
    assert len(run["results"]) == 3 * 2  # predictors x list sizes

    table = (tmp_path / "evaluate_table.csv").read_text().splitlines()
    assert table[0] == "predictor,n,swept_value,metric,mean,stddev"
    assert len(table) == 1 + 6 * 4  # one row per cell per metric
    assert (tmp_path / "evaluate_metrics.png").read_bytes()[:4] == b"\x89PNG"
    assert doc["outputs"]["figures"] == [str(tmp_path / "evaluate_metrics.png")]


def test_evaluate_is_reproducible_across_runs_and_threads(
    cli, small_file, tmp_path, monkeypatch
):
    argv = ["evaluate", "--data", small_file, "--out-dir", str(tmp_path),
            "--no-figures"] + EVAL_ARGS

    monkeypatch.setenv("TRENDLAB_THREADS", "1")
    code, first_out, _ = cli(argv)
    assert code == 0
    first_table = (tmp_path / "evaluate_table.csv").read_bytes()

    monkeypatch.setenv("TRENDLAB_THREADS", "4")
    code, second_out, _ = cli(argv)
    assert code == 0
    second_table = (tmp_path / "evaluate_table.csv").read_bytes()

    assert first_out == second_out
    assert first_table == second_table


def test_evaluate_unknown_predictor_is_usage_error(cli, small_file):
    code, _, stderr = cli(
        ["evaluate", "--data", small_file, "--predictors", "indegree,magic"]
    )
    assert code == 64
    assert "magic" in stderr


def test_evaluate_bad_topn_is_usage_error(cli, small_file):
    code, _, stderr = cli(["evaluate", "--data", small_file, "--topn", "50,abc"])
    assert code == 64


def test_evaluate_span_too_small_is_config_error(cli, tmp_path):
    path = tmp_path / "tiny.tsv"
    path.write_text("u1\ta\t1\nu2\tb\t2\n")
    code, _, stderr = cli(["evaluate", "--data", str(path), "--no-figures"])
    assert code == 65
    assert "configuration error" in stderr


# -- sweep -------------------------------------------------------------------------


def test_sweep_future_axis_smoke(cli, small_file, tmp_path):
    code, stdout, _ = cli(
        ["sweep", "--data", small_file, "--axis", "tf", "--values", "5,10",
         "--out-dir", str(tmp_path), "--no-figures"] + EVAL_ARGS
    )
    assert code == 0
    doc = json.loads(stdout)
    assert doc["sweep"]["axis"] == "future_only"
    assert doc["sweep"]["values"] == [5, 10]
    assert len(doc["sweep"]["runs"]) == 2
    # both grid points score at the same sampled times
    for entry in doc["sweep"]["runs"]:
        assert entry["run"]["sample_times"] == doc["sweep"]["sample_times"]

    table = (tmp_path / "sweep_table.csv").read_text().splitlines()
    assert table[0] == "predictor,n,swept_value,metric,mean,stddev"
    swept = {row.split(",")[2] for row in table[1:]}
    assert swept == {"5", "10"}


def test_sweep_joint_axis_renders_figures(cli, small_file, tmp_path):
    code, stdout, _ = cli(
        ["sweep", "--data", small_file, "--axis", "joint", "--values", "5,10",
         "--out-dir", str(tmp_path)] + EVAL_ARGS
    )
    assert code == 0
    doc = json.loads(stdout)
    assert doc["sweep"]["axis"] == "joint_past_future"
    for n in (5, 10):
        assert (tmp_path / f"sweep_top{n}.png").read_bytes()[:4] == b"\x89PNG"


def test_sweep_requires_axis(cli, small_file):
    code, _, _ = cli(["sweep", "--data", small_file, "--values", "5"])
    assert code == 64


# -- synth -------------------------------------------------------------------------


def test_synth_smoke(cli, tmp_path):
    code, stdout, _ = cli(
        ["synth", "--sizes", "10,20", "--population", "1000", "--trials", "2",
         "--seed", "0", "--out-dir", str(tmp_path), "--no-figures"]
    )
    assert code == 0
    doc = json.loads(stdout)
    assert doc["sizes"] == [10, 20]
    assert len(doc["tau_means"]) == 2 * 4

    curves = (tmp_path / "tau_curves.csv").read_text().splitlines()
    assert curves[0] == "size,trial,pair,tau"
    assert len(curves) == 1 + 2 * 2 * 4
    dist = (tmp_path / "distributions.csv").read_text().splitlines()
    assert dist[0] == "size,variable,bin_low,bin_high,count"
    assert len(dist) == 1 + 2 * 2 * 20


def test_synth_renders_summary_figure(cli, tmp_path):
    code, _, _ = cli(
        ["synth", "--sizes", "10,20", "--population", "1000", "--trials", "2",
         "--out-dir", str(tmp_path)]
    )
    assert code == 0
    assert (tmp_path / "synthetic_summary.png").read_bytes()[:4] == b"\x89PNG"


def test_synth_rejects_singleton_sizes(cli):
    code, _, stderr = cli(["synth", "--sizes", "1,10"])
    assert code == 64
    assert "at least 2" in stderr


# -- top level ---------------------------------------------------------------------


def test_version_flag(cli):
    code, stdout, _ = cli(["--version"])
    assert code == 0
    assert stdout.startswith("trendlab ")


def test_no_subcommand_is_usage_error(cli):
    code, _, _ = cli([])
    assert code == 64


def test_unknown_subcommand_is_usage_error(cli):
    code, _, _ = cli(["frobnicate"])
    assert code == 64

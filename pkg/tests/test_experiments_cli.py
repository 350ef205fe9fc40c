"""End-to-end tests for the experiment runner and the command line."""

import json

import pandas as pd
import pytest

from locality_lab.cli import EXIT_CHECK, EXIT_OK, EXIT_SCHEMA, main
from locality_lab.config import config_from_mapping
from locality_lab.domain.db import get_session
from locality_lab.domain.repositories import ExperimentRunRepository, TrialRecordRepository
from locality_lab.errors import AcceptanceError
from locality_lab.experiments.runner import run_experiment
from locality_lab.graphs.generators import cycle_graph
from locality_lab.io.graph_file import read_graph, write_graph
from locality_lab.io.reports import read_transcripts


def _report(out_dir):
    return json.loads((out_dir / "report.json").read_text())


def _error(out_dir):
    return json.loads((out_dir / "error.json").read_text())


@pytest.mark.integration
def test_gen_graph_writes_graph_file(tmp_path):
    """Test gen-graph: report, CSV mirror and a readable graph file."""
    out = tmp_path / "gen"
    assert main(["gen-graph", "--graph", "cycle:8", "--out", str(out)]) == EXIT_OK

    report = _report(out)
    assert report["command"] == "gen-graph"
    assert report["status"] == "ok"
    assert report["failed_check"] is None
    summary = report["summary"]
    assert (summary["n"], summary["edges"], summary["girth"]) == (8, 8, 8)
    assert summary["bipartite"] is True
    assert summary["components"] == 1
    assert summary["seed_accounting"]["total_bits"] == 0

    assert read_graph(out / "graph.txt") == cycle_graph(8)
    df = pd.read_csv(out / "report.csv")
    assert list(df.columns) == ["vertex", "degree", "neighbors"]
    assert len(df) == 8


@pytest.mark.integration
def test_reports_are_byte_identical(tmp_path):
    """Same config, different output directories: identical report.json."""
    args = ["run-lca", "--graph", "cycle:8", "--alg", "coloring3", "--trials", "2", "--seed", "7"]
    assert main(args + ["--out", str(tmp_path / "a")]) == EXIT_OK
    assert main(args + ["--out", str(tmp_path / "b"), "--threads", "2"]) == EXIT_OK

    first = (tmp_path / "a" / "report.json").read_bytes()
    assert first == (tmp_path / "b" / "report.json").read_bytes()
    summary = json.loads(first)["summary"]
    assert summary["all_valid"]
    assert [t["trial"] for t in summary["trials"]] == [0, 1]


@pytest.mark.integration
def test_run_lca_transcripts(tmp_path):
    out = tmp_path / "lca"
    assert main(["run-lca", "--graph", "cycle:8", "--alg", "coloring3", "--transcripts", "--out", str(out)]) == EXIT_OK
    records = read_transcripts(out / "transcripts.jsonl")
    assert [r["id"] for r in records] == list(range(8))
    assert all(r["probes"] for r in records)


@pytest.mark.integration
def test_config_file_with_flag_override(tmp_path):
    config = tmp_path / "lab.yaml"
    config.write_text("command: gen-graph\ngraph: cycle:6\nseed: 4\n")
    out = tmp_path / "out"
    assert main(["gen-graph", "--config", str(config), "--graph", "path:5", "--out", str(out)]) == EXIT_OK
    report = _report(out)
    assert report["summary"]["n"] == 5
    assert report["summary"]["girth"] is None
    assert report["seed"] == 4


@pytest.mark.integration
def test_graph_file_input(tmp_path):
    path = write_graph(cycle_graph(9), tmp_path / "c9.txt")
    out = tmp_path / "local"
    assert main(["run-local", "--graph-file", str(path), "--alg", "cole-vishkin", "--out", str(out)]) == EXIT_OK
    verdict = _report(out)["summary"]["verdict"]
    assert verdict == {"problem": "coloring3-cycle", "valid": True, "reason": ""}


@pytest.mark.integration
def test_schema_error_exit_code(tmp_path):
    """A bad graph spec exits 1 with an error.json record."""
    out = tmp_path / "bad"
    assert main(["gen-graph", "--graph", "moebius:8", "--out", str(out)]) == EXIT_SCHEMA
    error = _error(out)
    assert error["status"] == "error"
    assert error["kind"] == "config"
    assert not (out / "report.json").exists()


@pytest.mark.integration
def test_missing_graph_file_exit_code(tmp_path):
    out = tmp_path / "missing"
    assert main(["gen-graph", "--graph-file", str(tmp_path / "absent.txt"), "--out", str(out)]) == EXIT_SCHEMA
    assert _error(out)["kind"] == "FileNotFoundError"


@pytest.mark.integration
def test_malformed_graph_file_exit_code(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("n 3 delta 2\n1 0\n")
    out = tmp_path / "out"
    assert main(["gen-graph", "--graph-file", str(bad), "--out", str(out)]) == EXIT_SCHEMA
    assert _error(out)["kind"] == "graph-format"


@pytest.mark.integration
def test_scale_guard_exit_code(tmp_path):
    """Enumerating S_9 is refused; that is a run-time failure, exit 2."""
    out = tmp_path / "guard"
    args = ["derandomize-search", "--graph", "path:2", "--n-rule", "9", "--alg", "degree", "--out", str(out)]
    assert main(args) == EXIT_CHECK
    assert _error(out)["kind"] == "scale-guard"


@pytest.mark.integration
def test_failed_check_still_writes_reports(tmp_path):
    """The identity family declares no ε, so its k-tuple check fails."""
    out = tmp_path / "perm"
    args = ["perm-test", "--family", "identity", "--n-rule", "5", "--k", "2", "--out", str(out)]
    assert main(args) == EXIT_CHECK
    assert _error(out)["kind"] == "acceptance"

    report = _report(out)
    assert report["status"] == "failed-check"
    assert "exceeds declared" in report["failed_check"]
    assert report["summary"]["quality"]["measured_distance"] == "19/20"


@pytest.mark.integration
def test_perm_test_explicit_family(tmp_path):
    out = tmp_path / "perm"
    assert main(["perm-test", "--family", "explicit", "--n-rule", "4", "--k", "2", "--out", str(out)]) == EXIT_OK
    quality = _report(out)["summary"]["quality"]
    assert quality["within_epsilon"] is True
    assert quality["tuples_checked"] == 12
    assert len(pd.read_csv(out / "report.csv")) == 12


@pytest.mark.integration
def test_perm_test_needs_integer_domain(tmp_path):
    assert main(["perm-test", "--out", str(tmp_path)]) == EXIT_SCHEMA


@pytest.mark.integration
def test_lowerbound_report(tmp_path):
    out = tmp_path / "lb"
    args = ["lowerbound", "--graph", "cycle:9", "--alg", "ball-walker", "--t", "2", "--out", str(out)]
    assert main(args) == EXIT_OK
    summary = _report(out)["summary"]
    assert summary["below_half_girth"] is True
    assert [t["tree"] for t in summary["trees"]] == ["ball-walker-2"]
    assert summary["trees"][0]["equal"] is True
    assert summary["gap"]["alpha_b"] == 9
    assert set(pd.read_csv(out / "report.csv")["verdict"]) == {"equal"}


@pytest.mark.integration
def test_two_path_gap(tmp_path):
    out = tmp_path / "gap"
    assert main(["two-path-gap", "--sizes", "10", "12", "--trials", "2", "--out", str(out)]) == EXIT_OK
    rows = _report(out)["summary"]["rows"]
    assert [r["n"] for r in rows] == [10, 12]
    assert all(r["statefull_max_probes"] == 1 for r in rows)
    assert all(r["stateless_worst_probes"] >= r["n"] / 2 for r in rows)


@pytest.mark.integration
def test_localize_sweeps_sizes(tmp_path):
    """One block of runs per size; seed accounting is checked at every n."""
    out = tmp_path / "loc"
    args = ["localize", "--graph", "cycle:8", "--sizes", "8", "16", "32", "--alg", "degree", "--trials", "3", "--out", str(out)]
    assert main(args) == EXIT_OK
    summary = _report(out)["summary"]
    assert summary["sizes"] == [8, 16, 32]
    per_size = summary["per_size"]
    assert [s["N"] for s in per_size] == [8 ** 4, 16 ** 4, 32 ** 4]
    assert all(s["seed_accounting"]["within_formula"] for s in per_size)
    # k = 4 with 6-bit halves: the three-round bound is vacuous at n = 8
    assert per_size[0]["family_certified"] is False
    assert summary["fitted_constant"] == max(s["run_failure_rate"] * s["n"] for s in per_size)
    assert summary["fitted_constant"] <= summary["max_fitted_constant"] == 10.0
    df = pd.read_csv(out / "report.csv")
    assert list(df.groupby("n").size()) == [3, 3, 3]


@pytest.mark.integration
def test_localize_fails_when_constant_exceeds_ten(tmp_path, monkeypatch):
    """Every run losing a query gives rate 1, so c = max n."""
    from locality_lab.experiments import localization
    from locality_lab.simulation.localizer import run_localized_lca
    from locality_lab.simulation.world import QueryOutcome

    def losing_run(*args, **kwargs):
        report = run_localized_lca(*args, **kwargs)
        report.final.outcomes[0] = QueryOutcome(vertex=0, success=False, failed_probe=0)
        return report

    monkeypatch.setattr(localization, "run_localized_lca", losing_run)
    cfg = config_from_mapping({"command": "localize", "graph": "cycle:8", "alg": "degree", "sizes": [8, 32], "trials": 2})
    with pytest.raises(AcceptanceError):
        run_experiment(cfg, out_dir=tmp_path)
    report = _report(tmp_path)
    assert report["summary"]["fitted_constant"] == 32.0
    assert "c = 32 > 10" in report["failed_check"]


def test_sized_graphs():
    from locality_lab.experiments.base import sized_graphs

    cfg = config_from_mapping({"command": "localize", "graph": "cycle:8", "sizes": [5, 7]})
    assert [g.n for g in sized_graphs(cfg)] == [5, 7]
    assert sized_graphs(config_from_mapping({"command": "localize", "graph": "path:4"}))[0].n == 4
    with pytest.raises(ValueError):
        sized_graphs(config_from_mapping({"command": "localize", "graph": "union:cycle:3+cycle:4", "sizes": [5]}))


@pytest.mark.integration
def test_ledger_records_run_and_trials(tmp_path):
    """Test that --db stores the run and one record per (trial, query)."""
    url = f"sqlite:///{tmp_path / 'ledger.db'}"
    out = tmp_path / "lca"
    args = ["run-lca", "--graph", "cycle:8", "--alg", "coloring3", "--trials", "2", "--db", url, "--out", str(out)]
    assert main(args) == EXIT_OK

    session = get_session(url)
    try:
        runs = ExperimentRunRepository.get_all(session)
        assert len(runs) == 1
        run = runs[0]
        assert (run.command, run.status, run.exit_code) == ("run-lca", "ok", 0)
        assert run.config_hash == _report(out)["config_hash"]
        assert json.loads(run.summary)["all_valid"] is True

        records = TrialRecordRepository.get_by_run(session, run.id)
        assert len(records) == 16
        assert all(r.success for r in records)
    finally:
        session.close()


@pytest.mark.integration
def test_ledger_records_guard_failures(tmp_path):
    url = f"sqlite:///{tmp_path / 'ledger.db'}"
    args = ["derandomize-search", "--graph", "path:2", "--n-rule", "9", "--alg", "degree", "--db", url, "--out", str(tmp_path)]
    assert main(args) == EXIT_CHECK

    session = get_session(url)
    try:
        (run,) = ExperimentRunRepository.get_all(session)
        assert (run.status, run.exit_code) == ("error", 2)
        assert json.loads(run.summary)["kind"] == "scale-guard"
    finally:
        session.close()


@pytest.mark.integration
def test_run_experiment_raises_acceptance_error(tmp_path):
    cfg = config_from_mapping({"command": "perm-test", "family": {"kind": "identity"}, "model": {"n_rule": "5"}})
    with pytest.raises(AcceptanceError):
        run_experiment(cfg, out_dir=tmp_path)
    assert (tmp_path / "report.json").exists()


@pytest.mark.integration
def test_run_experiment_outcome(tmp_path):
    cfg = config_from_mapping({"command": "gen-graph", "graph": "two-path:10:3", "out_dir": str(tmp_path)})
    outcome = run_experiment(cfg)
    assert outcome.out_dir == tmp_path
    assert outcome.run_id is None
    assert outcome.result.summary["n"] == 10
    assert len(outcome.config_hash) == 64


def test_list_algorithms(capsys):
    assert main(["list-algorithms"]) == EXIT_OK
    printed = capsys.readouterr().out
    for alg_id in ("coloring3-cycle", "mis", "two-path-statefull", "triangle-walker"):
        assert alg_id in printed


def test_init_db(tmp_path):
    path = tmp_path / "runs.db"
    assert main(["init-db", "--db", f"sqlite:///{path}"]) == EXIT_OK
    assert path.exists()


def test_unknown_subcommand_exits():
    with pytest.raises(SystemExit):
        main(["solve-everything"])

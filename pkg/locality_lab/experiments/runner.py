"""Experiment runner: dispatch, report files and the optional run ledger."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Type

from locality_lab.config import ExperimentConfig, config_hash, config_to_dict
from locality_lab.errors import AcceptanceError, LabError
from locality_lab.io.reports import canonical_json, write_csv, write_json, write_transcripts

from .base import BaseExperiment, ExperimentResult
from .execution import RunLcaExperiment, RunLocalExperiment, RunPartreeExperiment
from .generation import GenGraphExperiment
from .localization import DerandomizeSearchExperiment, EstimateFailureExperiment, LocalizeExperiment
from .lowerbound import LowerboundExperiment
from .permutation import PermTestExperiment
from .two_path import TwoPathGapExperiment

EXPERIMENTS: Dict[str, Type[BaseExperiment]] = {
    cls.command: cls
    for cls in (
        GenGraphExperiment,
        RunLocalExperiment,
        RunLcaExperiment,
        RunPartreeExperiment,
        LocalizeExperiment,
        EstimateFailureExperiment,
        DerandomizeSearchExperiment,
        LowerboundExperiment,
        PermTestExperiment,
        TwoPathGapExperiment,
    )
}

REPORT_JSON = "report.json"
REPORT_CSV = "report.csv"
TRANSCRIPTS = "transcripts.jsonl"


@dataclass
class RunOutcome:
    command: str
    config_hash: str
    out_dir: Path
    result: ExperimentResult
    run_id: Optional[int] = None


def build_experiment(cfg: ExperimentConfig) -> BaseExperiment:
    if cfg.command not in EXPERIMENTS:
        raise ValueError(f"no experiment for command {cfg.command!r}")
    return EXPERIMENTS[cfg.command](workers=cfg.worker_count())


def assemble_report(cfg: ExperimentConfig, result: ExperimentResult) -> Dict:
    """Report body: no timestamps, so identical configs give identical bytes."""
    summary = dict(result.summary)
    summary.setdefault("seed_accounting", {"algorithm_bits": 0, "family_bits": 0, "total_bits": 0})
    return {
        "command": cfg.command,
        "config": config_to_dict(cfg, runtime=False),
        "config_hash": config_hash(cfg),
        "seed": cfg.seed,
        "status": "failed-check" if result.failed_check else "ok",
        "failed_check": result.failed_check,
        "summary": summary,
    }


def write_reports(cfg: ExperimentConfig, result: ExperimentResult, out_dir: Path) -> Dict[str, Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = {REPORT_JSON: write_json(assemble_report(cfg, result), out_dir / REPORT_JSON)}
    if result.rows:
        write_csv(result.rows, out_dir / REPORT_CSV, result.columns)
        written[REPORT_CSV] = out_dir / REPORT_CSV
    if cfg.transcripts and result.transcripts:
        write_transcripts(result.transcripts, out_dir / TRANSCRIPTS)
        written[TRANSCRIPTS] = out_dir / TRANSCRIPTS
    for name, text in sorted(result.files.items()):
        (out_dir / name).write_text(text, encoding="utf-8")
        written[name] = out_dir / name
    return written


def _record_run(cfg: ExperimentConfig, digest: str, status: str, exit_code: int, summary: Optional[Dict], trials) -> Optional[int]:
    from locality_lab.domain.db import get_session, init_database
    from locality_lab.domain.models import ExperimentRun, TrialRecord
    from locality_lab.domain.repositories import ExperimentRunRepository, TrialRecordRepository

    engine = init_database(cfg.db_url)
    session = get_session(cfg.db_url, engine=engine)
    try:
        run = ExperimentRunRepository.create(
            session,
            ExperimentRun(
                command=cfg.command,
                config_hash=digest,
                seed=str(cfg.seed),
                status=status,
                exit_code=exit_code,
                summary=None if summary is None else canonical_json(summary),
            ),
        )
        if trials:
            TrialRecordRepository.bulk_create(session, [TrialRecord(run_id=run.id, **t) for t in trials])
        print(f"[INFO] Ledger: run {run.id} with {len(trials or [])} trial record(s)")
        return run.id
    finally:
        session.close()


def run_experiment(cfg: ExperimentConfig, out_dir: Optional[str | Path] = None) -> RunOutcome:
    """
    Run one configured experiment and write its reports.

    Reports are written even when a built-in check fails; the failure is then
    raised as AcceptanceError. With a db_url the run and its trial records go
    to the ledger as well, including failed runs.

    Raises:
        AcceptanceError: If the experiment's check did not hold
        LabError: If a guard or budget stopped the run
    """
    target = Path(out_dir or cfg.out_dir)
    digest = config_hash(cfg)
    experiment = build_experiment(cfg)
    print(f"[INFO] {experiment.get_command_name()} (config {digest[:12]}, seed {cfg.seed}, {experiment.workers} worker(s))")
    try:
        result = experiment.run(cfg)
    except LabError as e:
        if cfg.db_url:
            _record_run(cfg, digest, "error", 2, {"kind": e.kind, "message": str(e)}, None)
        raise
    write_reports(cfg, result, target)
    run_id = None
    if cfg.db_url:
        status, code = ("error", 2) if result.failed_check else ("ok", 0)
        run_id = _record_run(cfg, digest, status, code, result.summary, result.trials)
    if result.failed_check:
        print(f"[ERROR] Check failed: {result.failed_check}")
        raise AcceptanceError(result.failed_check)
    print(f"[OK] Reports written to {target}")
    return RunOutcome(command=cfg.command, config_hash=digest, out_dir=target, result=result, run_id=run_id)


def error_record(error: Exception) -> Dict[str, str]:
    return {"status": "error", "kind": getattr(error, "kind", type(error).__name__), "message": str(error)}


def write_error(error: Exception, out_dir: str | Path) -> str:
    """Write error.json and return the same record as compact JSON."""
    record = error_record(error)
    write_json(record, Path(out_dir) / "error.json")
    return json.dumps(record, sort_keys=True)

"""Repository classes for run-ledger access."""

from __future__ import annotations

from typing import List, Optional

from sqlalchemy.orm import Session

from .models import ExperimentRun, TrialRecord


class ExperimentRunRepository:
    """Repository for experiment runs."""

    @staticmethod
    def get_all(session: Session) -> List[ExperimentRun]:
        return session.query(ExperimentRun).order_by(ExperimentRun.id).all()

    @staticmethod
    def get_by_id(session: Session, run_id: int) -> Optional[ExperimentRun]:
        return session.query(ExperimentRun).filter(ExperimentRun.id == run_id).first()

    @staticmethod
    def get_by_config_hash(session: Session, config_hash: str) -> List[ExperimentRun]:
        """All runs of one configuration, oldest first."""
        return (
            session.query(ExperimentRun)
            .filter(ExperimentRun.config_hash == config_hash)
            .order_by(ExperimentRun.id)
            .all()
        )

    @staticmethod
    def create(session: Session, run: ExperimentRun) -> ExperimentRun:
        session.add(run)
        session.commit()
        session.refresh(run)
        return run


class TrialRecordRepository:
    """Repository for per-trial outcomes."""

    @staticmethod
    def get_by_run(session: Session, run_id: int) -> List[TrialRecord]:
        return (
            session.query(TrialRecord)
            .filter(TrialRecord.run_id == run_id)
            .order_by(TrialRecord.trial_index, TrialRecord.query)
            .all()
        )

    @staticmethod
    def failures(session: Session, run_id: int) -> List[TrialRecord]:
        return (
            session.query(TrialRecord)
            .filter(TrialRecord.run_id == run_id, TrialRecord.success.is_(False))
            .all()
        )

    @staticmethod
    def bulk_create(session: Session, records: List[TrialRecord]) -> None:
        session.add_all(records)
        session.commit()

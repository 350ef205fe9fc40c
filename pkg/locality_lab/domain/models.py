"""SQLAlchemy models for the experiment run ledger."""

from __future__ import annotations

from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, ForeignKey, Integer, String, Text
from sqlalchemy.orm import DeclarativeBase, relationship


class Base(DeclarativeBase):
    """Base class for all models."""
    pass


class ExperimentRun(Base):
    """One CLI invocation: command, config identity and outcome."""

    __tablename__ = "experiment_runs"

    id = Column(Integer, primary_key=True, autoincrement=True)
    command = Column(String(40), nullable=False)
    config_hash = Column(String(64), nullable=False, index=True)
    seed = Column(String(40), nullable=False)  # decimal; master seeds may exceed 63 bits
    status = Column(String(20), nullable=False, default="ok")  # ok, error
    exit_code = Column(Integer, nullable=False, default=0)
    summary = Column(Text, nullable=True)  # canonical JSON of the report summary
    created_at = Column(DateTime, nullable=False, default=datetime.utcnow)

    trials = relationship("TrialRecord", back_populates="run", cascade="all, delete-orphan")

    def __repr__(self) -> str:
        return f"<ExperimentRun(id={self.id}, command='{self.command}', hash={self.config_hash[:8]}, status={self.status})>"


class TrialRecord(Base):
    """Outcome of one (trial, query) pair inside a run."""

    __tablename__ = "trial_records"

    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey("experiment_runs.id"), nullable=False)
    trial_index = Column(Integer, nullable=False)
    query = Column(Integer, nullable=False)
    success = Column(Boolean, nullable=False, default=True)
    outcome = Column(String(200), nullable=True)
    g_probes = Column(Integer, nullable=False, default=0)
    h_probes = Column(Integer, nullable=False, default=0)

    run = relationship("ExperimentRun", back_populates="trials")

    def __repr__(self) -> str:
        return f"<TrialRecord(run={self.run_id}, trial={self.trial_index}, query={self.query}, success={self.success})>"

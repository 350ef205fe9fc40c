"""Optional SQLAlchemy run ledger."""

from .db import DEFAULT_DB_URL, create_db_engine, get_session, init_database, reset_database
from .models import Base, ExperimentRun, TrialRecord
from .repositories import ExperimentRunRepository, TrialRecordRepository

__all__ = [
    "DEFAULT_DB_URL",
    "create_db_engine",
    "get_session",
    "init_database",
    "reset_database",
    "Base",
    "ExperimentRun",
    "TrialRecord",
    "ExperimentRunRepository",
    "TrialRecordRepository",
]

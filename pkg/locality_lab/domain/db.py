"""Database initialization and utilities."""

from __future__ import annotations

from sqlalchemy import create_engine
from sqlalchemy.orm import Session, sessionmaker

from .models import Base

DEFAULT_DB_URL = "sqlite:///locality_lab.db"


def create_db_engine(db_url: str = DEFAULT_DB_URL, echo: bool = False):
    """Create SQLAlchemy engine."""
    return create_engine(db_url, echo=echo)


def init_database(db_url: str = DEFAULT_DB_URL, engine=None):
    """Create all ledger tables if missing; returns the engine used."""
    engine = engine or create_db_engine(db_url)
    Base.metadata.create_all(engine)
    print(f"[INFO] Run ledger ready: {db_url}")
    return engine


def get_session(db_url: str = DEFAULT_DB_URL, engine=None) -> Session:
    """Get a new database session."""
    engine = engine or create_db_engine(db_url)
    return sessionmaker(bind=engine)()


def reset_database(db_url: str = DEFAULT_DB_URL) -> None:
    """Drop all tables and recreate (WARNING: deletes all data!)."""
    engine = create_db_engine(db_url)
    Base.metadata.drop_all(engine)
    Base.metadata.create_all(engine)
    print(f"[WARN] Run ledger reset: {db_url}")

"""Report emission: canonical JSON, pandas CSV mirrors and JSONL transcripts."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping

import numpy as np
import pandas as pd


def _default(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (set, frozenset, tuple)):
        return sorted(value) if isinstance(value, (set, frozenset)) else list(value)
    raise TypeError(f"{type(value).__name__} is not JSON serialisable")


def canonical_json(payload: Any) -> str:
    """Sorted keys, 2-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, default=_default) + "\n"


def write_json(payload: Any, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(payload), encoding="utf-8")
    return path


def write_csv(rows: List[Mapping[str, Any]], path: str | Path, columns: Iterable[str] | None = None) -> int:
    """
    Write rows as a flat CSV; returns the number of rows written.

    Column order is `columns` when given, else first-seen key order.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df = pd.DataFrame(list(rows), columns=list(columns) if columns is not None else None)
    df.to_csv(path, index=False)
    return len(df)


def transcript_record(vertex: int, answer: Any, transcript) -> Dict[str, Any]:
    return {"id": vertex, "answer": answer, "probes": transcript.to_records()}


def write_transcripts(records: Iterable[Mapping[str, Any]], path: str | Path) -> int:
    """One JSON object per line, keys sorted; returns the line count."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record, sort_keys=True, default=_default) + "\n")
            count += 1
    return count


def read_transcripts(path: str | Path) -> List[Dict[str, Any]]:
    with Path(path).open("r", encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]

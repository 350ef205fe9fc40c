"""File formats: graph files and experiment reports."""

from .graph_file import format_graph, parse_graph, read_graph, write_graph
from .reports import (
    canonical_json,
    read_transcripts,
    transcript_record,
    write_csv,
    write_json,
    write_transcripts,
)

__all__ = [
    "format_graph",
    "parse_graph",
    "read_graph",
    "write_graph",
    "canonical_json",
    "read_transcripts",
    "transcript_record",
    "write_csv",
    "write_json",
    "write_transcripts",
]

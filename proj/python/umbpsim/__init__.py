"""Trace-driven cache hierarchy simulator with pluggable prefetchers."""

from ._core import (
    TraceRecord,
    compare,
    generate,
    interleave,
    read_trace,
    simulate,
    storage_report,
    write_trace,
)

PREFETCHERS = ("skeleton", "next_line", "stream", "ip_stride", "ampm_lite", "umbp")

__all__ = [
    "TraceRecord",
    "PREFETCHERS",
    "compare",
    "generate",
    "interleave",
    "read_trace",
    "simulate",
    "storage_report",
    "write_trace",
]

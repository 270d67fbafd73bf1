"""
Adapters - External implementations of ports

This package contains implementations of the core ports:
- filesystem.py: Sequence file source and CSV/JSON result sink
- executor.py: Serial / process-pool trial executor
"""
from .filesystem import BUNDLED_SEQUENCE, FileSequenceSource, FilesystemResultSink
from .executor import LocalExecutor

__all__ = [
    "BUNDLED_SEQUENCE",
    "FileSequenceSource",
    "FilesystemResultSink",
    "LocalExecutor",
]

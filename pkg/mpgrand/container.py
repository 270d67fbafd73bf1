"""
Dependency Injection Container

Wires together the hexagonal architecture by creating and injecting dependencies.
"""
from pathlib import Path
from typing import Optional

from .adapters import FileSequenceSource, FilesystemResultSink, LocalExecutor
from .core import (
    CodeService,
    DecodeOneService,
    GateReportService,
    PatternSpaceService,
    SimulationService,
)


class Container:
    """Dependency injection container for the application"""

    def __init__(
        self,
        sequence_file: Optional[str | Path] = None,
        workers: int = 1,
        out_dir: str | Path = ".",
    ):
        # Adapters (infrastructure)
        self.sequence = FileSequenceSource(sequence_file)
        self.executor = LocalExecutor(workers)
        self.sink = FilesystemResultSink(out_dir)

        # Services (use cases)
        self.codes = CodeService(source=self.sequence)

        self.gate_report = GateReportService(codes=self.codes)

        self.simulate = SimulationService(
            codes=self.codes,
            executor=self.executor,
            sink=self.sink
        )

        self.decode_one = DecodeOneService(codes=self.codes)

        self.pattern_space = PatternSpaceService()

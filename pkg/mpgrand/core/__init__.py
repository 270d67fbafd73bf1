"""
Core - Domain logic and ports

This package contains:
- domain.py: Pure domain models
- ports.py: Port interfaces (abstractions for external dependencies)
- gf2.py, polar.py, qam.py, channel.py, pmult.py, grand.py, harness.py:
  the coding, modulation, decoding and simulation algorithms
- services.py: Application services (use cases)
"""
from .domain import (
    BlerPoint,
    ChannelParams,
    Constellation,
    DecodeOutcome,
    DecodeResult,
    DecodeTrace,
    GateCostReport,
    PatternSpace,
    PMultTrace,
    PolarCode,
    ReceivedSymbol,
    ReliabilitySequence,
    RowIndexSets,
    SimConfig,
    SymbolReliability,
    TestErrorPattern,
    TrialOutcome,
    TrialResult,
)
from .ports import ResultSink, SequenceSource, TrialExecutor
from .services import (
    CodeService,
    DecodeOneService,
    GateReportService,
    PatternSpaceService,
    SimulationService,
)

__all__ = [
    # Domain models
    "BlerPoint",
    "ChannelParams",
    "Constellation",
    "DecodeOutcome",
    "DecodeResult",
    "DecodeTrace",
    "GateCostReport",
    "PatternSpace",
    "PMultTrace",
    "PolarCode",
    "ReceivedSymbol",
    "ReliabilitySequence",
    "RowIndexSets",
    "SimConfig",
    "SymbolReliability",
    "TestErrorPattern",
    "TrialOutcome",
    "TrialResult",
    # Ports
    "ResultSink",
    "SequenceSource",
    "TrialExecutor",
    # Services
    "CodeService",
    "DecodeOneService",
    "GateReportService",
    "PatternSpaceService",
    "SimulationService",
]

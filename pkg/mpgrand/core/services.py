"""
Application Services - Use cases that orchestrate domain logic

These are the entry points to the core. They coordinate between
domain models and ports, but contain no infrastructure concerns.
"""
import logging
from typing import Optional

import numpy as np

from .channel import make_channel, transmit, trial_stream
from .domain import (
    SUPPORTED_EXPONENTS,
    SUPPORTED_ORDERS,
    BlerPoint,
    DecodeTrace,
    GateCostReport,
    PatternSpace,
    PolarCode,
    ReliabilitySequence,
    SimConfig,
)
from .gf2 import as_bit_vector, from_hex
from .grand import GrandDecoder, pattern_space
from .harness import run_bler
from .pmult import cost_report, index_rows, pmult
from .polar import build_code, encode
from .ports import ResultSink, SequenceSource, TrialExecutor
from .qam import bits_to_symbols, build_constellation

logger = logging.getLogger(__name__)


class CodeService:
    """Use case: Load the reliability sequence once and build codes on demand"""

    def __init__(self, source: SequenceSource):
        self.source = source
        self._sequence: Optional[ReliabilitySequence] = None
        self._codes: dict[int, PolarCode] = {}

    def sequence(self) -> ReliabilitySequence:
        if self._sequence is None:
            self._sequence = self.source.load()
        return self._sequence

    def execute(self, n: int) -> PolarCode:
        """Return the rate-1/2 code of length 2**n, building it on first use."""
        if n not in self._codes:
            self._codes[n] = build_code(self.sequence(), n)
        return self._codes[n]


class GateReportService:
    """Use case: Gate and depth cost of the parallel multiplier per block length"""

    def __init__(self, codes: CodeService):
        self.codes = codes

    def execute(self, n: int) -> GateCostReport:
        """
        Build the report from the row weights, then run the multiplier once
        and check its measured depth and AND count against the report.
        """
        code = self.codes.execute(n)
        rows = index_rows(code.parity_check)
        report = cost_report(rows, code.N - code.K, code.N)

        trace = pmult(rows, np.ones(code.N, dtype=np.uint8))
        if trace.steps_executed != report.parallel_steps:
            raise RuntimeError(
                f"n={n}: multiplier ran {trace.steps_executed} steps, cost model says {report.parallel_steps}"
            )
        if trace.and_gates != report.and_gates or trace.xor_stages != report.xor_gates:
            raise RuntimeError(f"n={n}: executed gate counts disagree with the cost model")
        return report


class SimulationService:
    """Use case: Run a BLER campaign and persist the results"""

    def __init__(self, codes: CodeService, executor: TrialExecutor, sink: ResultSink):
        self.codes = codes
        self.executor = executor
        self.sink = sink

    def execute(
        self,
        config: SimConfig,
        fmt: str = "csv",
        destination: Optional[str] = None,
    ) -> tuple[list[BlerPoint], str]:
        """
        Run every grid point and write the results.

        Returns:
            (points, path written)
        """
        code = self.codes.execute(config.n)
        points = run_bler(config, code, self.executor)
        path = self.sink.write(points, fmt, config, destination)
        return points, path


class DecodeOneService:
    """Use case: Send one word through the channel and trace its decode"""

    def __init__(self, codes: CodeService):
        self.codes = codes

    def execute(
        self,
        n: int,
        M: int,  # noqa: N803
        S: int,  # noqa: N803
        ebn0_db: float,
        seed: int = 0,
        codeword_hex: Optional[str] = None,
        info_hex: Optional[str] = None,
    ) -> DecodeTrace:
        """
        Transmit ``codeword_hex`` (or the encoding of ``info_hex``; all-zero
        if neither) at ``ebn0_db`` with noise from stream (seed, 0, 0).
        """
        code = self.codes.execute(n)
        if codeword_hex is not None and info_hex is not None:
            raise ValueError("give either a codeword or information bits, not both")
        if codeword_hex is not None:
            transmitted = from_hex(codeword_hex, code.N)
            if pmult(index_rows(code.parity_check), transmitted).syndrome.any():
                raise ValueError(f"{codeword_hex} is not a codeword of the N={code.N} code")
        elif info_hex is not None:
            transmitted = encode(code, from_hex(info_hex, code.K))
        else:
            transmitted = as_bit_vector(np.zeros(code.N, dtype=np.uint8))

        cst = build_constellation(M)
        params = make_channel(M, ebn0_db)
        symbols = bits_to_symbols(transmitted, cst)
        received = transmit(symbols, params, trial_stream(seed, 0, 0))
        result = GrandDecoder(code, cst, S).decode(received)
        return DecodeTrace(
            n=n,
            M=M,
            S=S,
            ebn0_db=ebn0_db,
            seed=seed,
            sigma=params.sigma,
            transmitted=transmitted,
            symbols=symbols,
            received=received,
            result=result,
        )


class PatternSpaceService:
    """Use case: Pattern-space sizes for every supported (N, M) pair"""

    def execute(self, S: int) -> list[PatternSpace]:  # noqa: N803
        return [
            pattern_space(1 << n, M, S)
            for n in SUPPORTED_EXPONENTS
            for M in SUPPORTED_ORDERS
        ]

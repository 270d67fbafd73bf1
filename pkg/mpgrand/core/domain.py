"""
Domain Models - Pure decoding entities

Bits and coordinates live in numpy arrays (one bit per uint8 entry, lattice
coordinates as int64/float64 pairs); dataclasses bundle them with the
metadata every stage needs. No I/O happens here.
"""
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np
import numpy.typing as npt

BitVector = npt.NDArray[np.uint8]
BitMatrix = npt.NDArray[np.uint8]
Points = npt.NDArray[np.int64]  # shape (L, 2), odd-integer lattice
Received = npt.NDArray[np.float64]  # shape (L, 2), lattice units

Point = tuple[int, int]


class ReceivedSymbol(NamedTuple):
    """A noisy sample r = (a, b) in lattice units"""
    a: float
    b: float


@dataclass(frozen=True)
class ReliabilitySequence:
    """Bit-channel indices 0..1023 in ascending reliability"""
    order: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.order)


@dataclass(frozen=True, eq=False)
class PolarCode:
    """A rate-K/N polar code with its generator and parity-check matrices"""
    n: int
    info_set: tuple[int, ...]
    frozen_set: tuple[int, ...]
    generator: BitMatrix  # G_N, N x N
    info_generator: BitMatrix  # G_I, K x N
    parity_check: BitMatrix  # H, (N - K) x N

    @property
    def N(self) -> int:  # noqa: N802
        return 1 << self.n

    @property
    def K(self) -> int:  # noqa: N802
        return len(self.info_set)

    @property
    def rate(self) -> float:
        return self.K / self.N


@dataclass(frozen=True, eq=False)
class Constellation:
    """Square M-QAM on the odd-integer grid with per-axis Gray labels.

    ``points[v]`` is the point whose 2m-bit label has integer value ``v``
    (first m bits select the in-phase amplitude, last m the quadrature one).
    """
    M: int
    m: int
    points: Points  # (M, 2)
    labels: BitMatrix  # (M, 2m), MSB first
    axis_gray: npt.NDArray[np.int64]  # amplitude level -> Gray code

    @property
    def bits_per_symbol(self) -> int:
        return 2 * self.m

    @property
    def max_amplitude(self) -> int:
        return (1 << self.m) - 1


@dataclass(frozen=True)
class SymbolReliability:
    """Likelihood of one received symbol plus its NNE candidate points"""
    likelihood: float
    hard: Point
    candidates: tuple[Point, ...]  # hard first, then horizontal/vertical/diagonal survivors


@dataclass(frozen=True)
class ChannelParams:
    """AWGN operating point; d and sigma are derived by channel.make_channel"""
    M: int
    m: int
    eb: float
    ebn0_db: float
    d: float
    sigma: float  # per-axis deviation in lattice units; 0 only at +inf dB


@dataclass(frozen=True, eq=False)
class RowIndexSets:
    """Positions of the ones in every row of a parity-check matrix.

    ``gather``/``mask`` lay the index sets out as a zero-padded rectangle whose
    width is a power of two, so halving rounds can run on whole arrays.
    """
    index_sets: tuple[npt.NDArray[np.int64], ...]
    weights: npt.NDArray[np.int64]
    cols: int
    gather: npt.NDArray[np.int64]
    mask: npt.NDArray[np.uint8]

    @property
    def rows(self) -> int:
        return len(self.index_sets)

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())


@dataclass(frozen=True)
class PMultTrace:
    """Result of one step-counted parallel multiplication"""
    syndrome: BitVector
    steps_executed: int
    and_gates: int
    xor_stages: int  # sum over rows of the rounds in which that row added
    xor_ops: int  # two-input additions actually performed


@dataclass(frozen=True)
class GateCostReport:
    """Circuit cost of the parallel multiplier for one parity-check matrix"""
    n: int
    rows: int
    cols: int
    and_gates: int
    xor_gates: int
    parallel_steps: int
    max_row_weight: int
    sparsity: float
    xor_ops: int
    heaviest_row: int


@dataclass(frozen=True)
class TestErrorPattern:
    """One candidate index per cut-off symbol; all zeros is the hard decision"""
    __test__ = False  # not a pytest class

    assignment: tuple[int, ...]

    @property
    def substitutions(self) -> int:
        return sum(1 for index in self.assignment if index)


class DecodeOutcome(str, Enum):
    DECODED = "decoded"
    ABANDONED = "abandoned"


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """Decoder output plus the intermediate state a trace needs"""
    outcome: DecodeOutcome
    queries_checked: int
    patterns_valid: int
    modeled_latency_cycles: int
    effective_cutoff: int
    selected: tuple[int, ...]
    reliabilities: tuple[SymbolReliability, ...]
    hard_codeword: BitVector
    hard_valid: bool
    codeword: Optional[BitVector] = None
    info: Optional[BitVector] = None
    winner: Optional[TestErrorPattern] = None
    selected_distance: Optional[float] = None

    @property
    def decoded(self) -> bool:
        return self.outcome is DecodeOutcome.DECODED


@dataclass(frozen=True)
class PatternSpace:
    """Size of the symbol error pattern space for one (N, M, S)"""
    n: int
    N: int
    M: int
    L: int
    cutoff: int
    effective_cutoff: int
    four_candidate_space: int  # 4^L
    five_candidate_space: int  # 5^L, hard point plus four compass neighbours
    tep_budget: int  # 4^S'
    latency_cycles: int


class TrialOutcome(str, Enum):
    SUCCESS = "success"
    MISMATCH = "mismatch"
    ABANDONED = "abandoned"


@dataclass(frozen=True)
class TrialResult:
    outcome: TrialOutcome
    queries_checked: int
    patterns_valid: int
    hard_error: bool  # uncoded hard decisions differ from the codeword


SUPPORTED_EXPONENTS = range(5, 11)
SUPPORTED_ORDERS = (4, 16, 64, 256, 1024, 4096)
DEFAULT_TRIALS = 10_000


@dataclass(frozen=True)
class SimConfig:
    """One BLER campaign: a code, a modulation, a cutoff and an Eb/N0 grid"""
    n: int
    M: int
    S: int
    ebn0_grid: tuple[float, ...]
    trials_per_point: int = DEFAULT_TRIALS
    master_seed: int = 0

    def __post_init__(self):
        if self.n not in SUPPORTED_EXPONENTS:
            raise ValueError(f"n must be in 5..10, got {self.n}")
        if self.M not in SUPPORTED_ORDERS:
            raise ValueError(f"M must be one of {SUPPORTED_ORDERS}, got {self.M}")
        if self.S < 0:
            raise ValueError(f"S must be >= 0, got {self.S}")
        if not self.ebn0_grid:
            raise ValueError("Eb/N0 grid is empty")
        if self.trials_per_point < 1:
            raise ValueError(f"trials_per_point must be >= 1, got {self.trials_per_point}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError(f"master_seed must fit in 64 bits, got {self.master_seed}")

    @property
    def N(self) -> int:  # noqa: N802
        return 1 << self.n


@dataclass
class BlerPoint:
    """Aggregated outcome of all trials at one Eb/N0 value"""
    ebn0_db: float
    trials: int = 0
    successes: int = 0
    mismatches: int = 0
    abandonments: int = 0
    total_queries: int = 0
    total_patterns_valid: int = 0
    hard_block_errors: int = 0

    @property
    def block_errors(self) -> int:
        return self.mismatches + self.abandonments

    @property
    def bler(self) -> float:
        return self.block_errors / self.trials if self.trials else 0.0

    @property
    def uncoded_bler(self) -> float:
        return self.hard_block_errors / self.trials if self.trials else 0.0

    @property
    def mean_queries(self) -> float:
        return self.total_queries / self.trials if self.trials else 0.0

    @property
    def mean_patterns_valid(self) -> float:
        return self.total_patterns_valid / self.trials if self.trials else 0.0


@dataclass(frozen=True, eq=False)
class DecodeTrace:
    """One transmitted word, its channel output and the decoder's result"""
    n: int
    M: int
    S: int
    ebn0_db: float
    seed: int
    sigma: float
    transmitted: BitVector
    symbols: Points
    received: Received
    result: DecodeResult

    @property
    def recovered(self) -> bool:
        return self.result.decoded and bool(np.array_equal(self.result.codeword, self.transmitted))

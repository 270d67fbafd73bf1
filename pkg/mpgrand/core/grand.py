"""
Massive parallel GRAND over M-QAM.

Rank the received symbols by likelihood, keep the S least reliable, try every
combination of their near-neighbour candidates (at most 4^S test error
patterns), syndrome-check all candidate words with the parallel multiplier
and return the valid word closest to the received sequence.
"""
import logging
from functools import lru_cache
from typing import Sequence

import numpy as np
import numpy.typing as npt

from .domain import (
    SUPPORTED_ORDERS,
    BitVector,
    Constellation,
    DecodeOutcome,
    DecodeResult,
    PatternSpace,
    Point,
    PolarCode,
    SymbolReliability,
    TestErrorPattern,
)
from .gf2 import freeze
from .pmult import index_rows, pmult, pmult_batch, syndrome_is_zero
from .polar import CODE_EXPONENTS, extract_info
from .qam import labels_of, reliabilities, symbol_count

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 8

# Candidate words assembled per syndrome batch
TEP_CHUNK = 4096


def latency_model(n: int, S: int) -> int:  # noqa: N803
    """Modeled decode latency in clock cycles: 2n + 2S + 4."""
    return 2 * n + 2 * S + 4


def effective_cutoff(S: int, L: int) -> int:  # noqa: N803
    if S < 0:
        raise ValueError(f"cutoff S must be >= 0, got {S}")
    return min(S, L)


def rank_and_cutoff(
    received: npt.ArrayLike,
    cst: Constellation,
    S: int,  # noqa: N803
) -> tuple[tuple[int, ...], tuple[SymbolReliability, ...]]:
    """Positions of the min(S, L) least reliable symbols, plus every symbol's reliability.

    Ascending likelihood; equal likelihoods keep the lower index first.
    """
    rel = reliabilities(received, cst)
    cutoff = effective_cutoff(S, len(rel))
    scores = np.array([x.likelihood for x in rel], dtype=np.float64)
    order = np.argsort(scores, kind="stable")
    return tuple(int(i) for i in order[:cutoff]), rel


def tep_matrix(counts: Sequence[int]) -> npt.NDArray[np.int64]:
    """All assignments as a (P, len(counts)) array in graded order.

    Fewest substitutions first, lexicographic within a grade, so row 0 is
    always the all-hard pattern.
    """
    return _tep_matrix(tuple(int(c) for c in counts))


@lru_cache(maxsize=256)
def _tep_matrix(counts: tuple[int, ...]) -> npt.NDArray[np.int64]:
    if not counts:
        return freeze(np.zeros((1, 0), dtype=np.int64))
    grids = np.meshgrid(*[np.arange(c, dtype=np.int64) for c in counts], indexing="ij")
    assignments = np.stack([g.ravel() for g in grids], axis=1)
    grade = np.count_nonzero(assignments, axis=1)
    return freeze(assignments[np.argsort(grade, kind="stable")])


def enumerate_teps(candidates: Sequence[Sequence[Point]]) -> list[TestErrorPattern]:
    """Cartesian product of candidate indices over the cut-off symbols."""
    return [TestErrorPattern(tuple(int(x) for x in row)) for row in tep_matrix([len(c) for c in candidates])]


def apply_tep(
    hard_symbols: npt.ArrayLike,
    selected: Sequence[int],
    tep: TestErrorPattern,
    cst: Constellation,
    N: int,  # noqa: N803
    candidates: Sequence[Sequence[Point]],
) -> BitVector:
    """Substitute the chosen candidates and return the 2m*L label bits.

    ``candidates[k]`` is the candidate list of symbol ``selected[k]``.
    Bits past N are padding and come back as zeros.
    """
    symbols = np.array(hard_symbols, dtype=np.int64).reshape(-1, 2)
    for position, choice, options in zip(selected, tep.assignment, candidates):
        symbols[position] = options[choice]
    bits = labels_of(symbols, cst).ravel()
    bits[N:] = 0
    return freeze(bits)


class GrandDecoder:
    """Decoder bound to one code, one constellation and one cutoff.

    Builds the parity-check index sets once so repeated decodes only pay for
    candidate assembly and syndrome checks. With ``incremental`` the decoder
    runs the multiplier on the hard word and on each single-symbol
    substitution, then combines those syndromes by XOR for every pattern;
    otherwise it assembles every candidate word and multiplies each one.
    Both give the same valid set because the syndrome is linear.
    """

    def __init__(
        self,
        code: PolarCode,
        cst: Constellation,
        cutoff: int = DEFAULT_CUTOFF,
        *,
        incremental: bool = False,
    ):
        if cutoff < 0:
            raise ValueError(f"cutoff S must be >= 0, got {cutoff}")
        self.code = code
        self.cst = cst
        self.cutoff = cutoff
        self.incremental = incremental
        self.rows = index_rows(code.parity_check)
        self.symbols = symbol_count(code.N, cst)
        if cutoff > self.symbols:
            logger.warning(
                f"cutoff S={cutoff} exceeds L={self.symbols} symbols for N={code.N}, "
                f"{cst.M}-QAM; using S={self.symbols}"
            )

    @property
    def effective_cutoff(self) -> int:
        return min(self.cutoff, self.symbols)

    def _valid_full(
        self,
        hard_bits: BitVector,
        selected: Sequence[int],
        option_labels: list[npt.NDArray[np.uint8]],
        teps: npt.NDArray[np.int64],
    ) -> npt.NDArray[np.bool_]:
        N = self.code.N  # noqa: N806
        width = self.cst.bits_per_symbol
        valid = np.zeros(teps.shape[0], dtype=bool)
        for start in range(0, teps.shape[0], TEP_CHUNK):
            block = teps[start:start + TEP_CHUNK]
            words = np.broadcast_to(hard_bits, (block.shape[0], hard_bits.size)).copy()
            for k, (position, labels) in enumerate(zip(selected, option_labels)):
                words[:, position * width:(position + 1) * width] = labels[block[:, k]]
            syndromes, _ = pmult_batch(self.rows, words[:, :N])
            valid[start:start + block.shape[0]] = syndrome_is_zero(syndromes)
        return valid

    def _valid_incremental(
        self,
        hard_bits: BitVector,
        selected: Sequence[int],
        option_labels: list[npt.NDArray[np.uint8]],
        teps: npt.NDArray[np.int64],
    ) -> npt.NDArray[np.bool_]:
        N = self.code.N  # noqa: N806
        width = self.cst.bits_per_symbol
        base = np.packbits(pmult(self.rows, hard_bits[:N]).syndrome)
        combined = np.broadcast_to(base, (teps.shape[0], base.size)).copy()
        for k, (position, labels) in enumerate(zip(selected, option_labels)):
            lo, hi = position * width, min((position + 1) * width, N)
            if lo >= hi:
                continue
            deltas = np.zeros((labels.shape[0], N), dtype=np.uint8)
            deltas[:, lo:hi] = (labels ^ hard_bits[position * width:(position + 1) * width])[:, :hi - lo]
            syndromes, _ = pmult_batch(self.rows, deltas)
            combined ^= np.packbits(syndromes, axis=1)[teps[:, k]]
        return ~combined.any(axis=1)

    def decode(self, received: npt.ArrayLike) -> DecodeResult:
        r = np.asarray(received, dtype=np.float64).reshape(-1, 2)
        N = self.code.N  # noqa: N806
        if r.shape[0] * self.cst.bits_per_symbol < N:
            raise ValueError(
                f"{r.shape[0]} symbols carry {r.shape[0] * self.cst.bits_per_symbol} bits, need {N}"
            )
        selected, rel = rank_and_cutoff(r, self.cst, self.cutoff)
        hard = np.array([x.hard for x in rel], dtype=np.int64)
        options = [np.array(rel[i].candidates, dtype=np.int64) for i in selected]
        teps = tep_matrix([len(o) for o in options])

        # Distance of every pattern from per-symbol deltas against the hard sequence
        base = float(((hard - r) ** 2).sum())
        distances = np.full(teps.shape[0], base)
        for k, (position, points) in enumerate(zip(selected, options)):
            delta = ((points - r[position]) ** 2).sum(axis=1) - ((hard[position] - r[position]) ** 2).sum()
            distances += delta[teps[:, k]]

        hard_bits = labels_of(hard, self.cst).ravel()
        option_labels = [labels_of(points, self.cst) for points in options]
        check = self._valid_incremental if self.incremental else self._valid_full
        valid = check(hard_bits, selected, option_labels, teps)

        common = dict(
            queries_checked=int(teps.shape[0]),
            patterns_valid=int(np.count_nonzero(valid)),
            modeled_latency_cycles=latency_model(self.code.n, len(selected)),
            effective_cutoff=len(selected),
            selected=selected,
            reliabilities=rel,
            hard_codeword=freeze(hard_bits[:N].copy()),
            hard_valid=bool(valid[0]),
        )
        if not valid.any():
            return DecodeResult(outcome=DecodeOutcome.ABANDONED, **common)

        winner = int(np.argmin(np.where(valid, distances, np.inf)))
        pattern = TestErrorPattern(tuple(int(x) for x in teps[winner]))
        bits = apply_tep(hard, selected, pattern, self.cst, N, [rel[i].candidates for i in selected])
        codeword = freeze(bits[:N].copy())
        if pmult(self.rows, codeword).syndrome.any():
            raise RuntimeError("selected candidate failed its syndrome re-check")

        symbols = hard.copy()
        for position, choice, points in zip(selected, pattern.assignment, options):
            symbols[position] = points[choice]
        return DecodeResult(
            outcome=DecodeOutcome.DECODED,
            codeword=codeword,
            info=extract_info(self.code, codeword),
            winner=pattern,
            selected_distance=float(((symbols - r) ** 2).sum()),
            **common,
        )


def decode(code: PolarCode, received: npt.ArrayLike, cst: Constellation, S: int = DEFAULT_CUTOFF) -> DecodeResult:  # noqa: N803
    return GrandDecoder(code, cst, S).decode(received)


def pattern_space(N: int, M: int, S: int = DEFAULT_CUTOFF) -> PatternSpace:  # noqa: N803
    """Pattern-space sizes and per-decode budget for one (N, M, S)."""
    n = N.bit_length() - 1
    if N != 1 << n or n not in CODE_EXPONENTS:
        raise ValueError(f"block length must be 32..1024 and a power of two, got {N}")
    if M not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported QAM order {M}; expected one of {SUPPORTED_ORDERS}")
    m = (M.bit_length() - 1) // 2
    L = -(-N // (2 * m))  # noqa: N806
    cutoff = effective_cutoff(S, L)
    return PatternSpace(
        n=n,
        N=N,
        M=M,
        L=L,
        cutoff=S,
        effective_cutoff=cutoff,
        four_candidate_space=4 ** L,
        five_candidate_space=5 ** L,
        tep_budget=4 ** cutoff,
        latency_cycles=latency_model(n, cutoff),
    )

"""
Seeded Monte Carlo BLER campaigns.

Trial t at grid point p draws everything from the stream keyed by
(master_seed, p, t). Trials are grouped into chunks that any executor may
run in any order; per-point totals are integer sums, so the output does not
depend on the worker count.
"""
import csv
import json
import logging
from dataclasses import asdict, dataclass
from typing import Any, Iterable, Optional, TextIO

import numpy as np

from .channel import make_channel, transmit, trial_stream
from .domain import (
    BlerPoint,
    ChannelParams,
    Constellation,
    DecodeOutcome,
    PolarCode,
    SimConfig,
    TrialOutcome,
    TrialResult,
)
from .grand import GrandDecoder, effective_cutoff
from .polar import encode
from .ports import TrialExecutor
from .qam import bits_to_symbols, build_constellation, symbol_count

logger = logging.getLogger(__name__)

# Trials per executor task
CHUNK_TRIALS = 250

CSV_FIELDS = ("ebn0_db", "trials", "block_errors", "mismatches", "abandonments", "bler", "mean_queries")


def run_trial(
    code: PolarCode,
    cst: Constellation,
    params: ChannelParams,
    S: int,  # noqa: N803
    rng: np.random.Generator,
    decoder: Optional[GrandDecoder] = None,
) -> TrialResult:
    """Encode random information bits, send them over AWGN and decode."""
    info = rng.integers(0, 2, size=code.K, dtype=np.uint8)
    codeword = encode(code, info)
    received = transmit(bits_to_symbols(codeword, cst), params, rng)
    result = (decoder or GrandDecoder(code, cst, S)).decode(received)

    if result.outcome is DecodeOutcome.ABANDONED:
        outcome = TrialOutcome.ABANDONED
    elif np.array_equal(result.codeword, codeword):
        outcome = TrialOutcome.SUCCESS
    else:
        outcome = TrialOutcome.MISMATCH
    return TrialResult(
        outcome=outcome,
        queries_checked=result.queries_checked,
        patterns_valid=result.patterns_valid,
        hard_error=not np.array_equal(result.hard_codeword, codeword),
    )


@dataclass(frozen=True)
class TrialChunk:
    """A contiguous run of trials at one grid point"""
    code: PolarCode
    M: int
    S: int
    ebn0_db: float
    master_seed: int
    point: int
    start: int
    stop: int


def run_chunk(chunk: TrialChunk) -> tuple[int, BlerPoint]:
    """Worker entry point; returns (grid point index, partial totals)."""
    cst = build_constellation(chunk.M)
    params = make_channel(chunk.M, chunk.ebn0_db)
    decoder = GrandDecoder(chunk.code, cst, chunk.S, incremental=True)
    partial = BlerPoint(ebn0_db=chunk.ebn0_db)
    for trial in range(chunk.start, chunk.stop):
        rng = trial_stream(chunk.master_seed, chunk.point, trial)
        result = run_trial(chunk.code, cst, params, chunk.S, rng, decoder)
        accumulate(partial, result)
    return chunk.point, partial


def accumulate(point: BlerPoint, result: TrialResult) -> None:
    point.trials += 1
    if result.outcome is TrialOutcome.SUCCESS:
        point.successes += 1
    elif result.outcome is TrialOutcome.MISMATCH:
        point.mismatches += 1
    else:
        point.abandonments += 1
    point.total_queries += result.queries_checked
    point.total_patterns_valid += result.patterns_valid
    point.hard_block_errors += int(result.hard_error)


def merge(into: BlerPoint, partial: BlerPoint) -> None:
    into.trials += partial.trials
    into.successes += partial.successes
    into.mismatches += partial.mismatches
    into.abandonments += partial.abandonments
    into.total_queries += partial.total_queries
    into.total_patterns_valid += partial.total_patterns_valid
    into.hard_block_errors += partial.hard_block_errors


def plan_chunks(config: SimConfig, code: PolarCode, S: int, chunk_trials: int = CHUNK_TRIALS) -> list[TrialChunk]:  # noqa: N803
    chunks = []
    for point, ebn0_db in enumerate(config.ebn0_grid):
        for start in range(0, config.trials_per_point, chunk_trials):
            chunks.append(TrialChunk(
                code=code,
                M=config.M,
                S=S,
                ebn0_db=ebn0_db,
                master_seed=config.master_seed,
                point=point,
                start=start,
                stop=min(start + chunk_trials, config.trials_per_point),
            ))
    return chunks


def run_bler(
    config: SimConfig,
    code: PolarCode,
    executor: Optional[TrialExecutor] = None,
) -> list[BlerPoint]:
    """One BlerPoint per grid value, in grid order."""
    if code.n != config.n:
        raise ValueError(f"code has n={code.n} but the campaign asks for n={config.n}")
    cst = build_constellation(config.M)
    L = symbol_count(code.N, cst)  # noqa: N806
    S = effective_cutoff(config.S, L)  # noqa: N806
    if S < config.S:
        logger.warning(f"cutoff S={config.S} exceeds L={L} symbols; clamped to S={S}")

    points = [BlerPoint(ebn0_db=x) for x in config.ebn0_grid]
    chunks = plan_chunks(config, code, S)
    workers = executor.workers if executor else 1
    logger.info(
        f"simulating N={config.N} M={config.M} S={S} over {len(points)} points, "
        f"{config.trials_per_point} trials each, {len(chunks)} chunks on {workers} worker(s)"
    )
    mapper = executor.map if executor else map
    for index, partial in mapper(run_chunk, chunks):
        merge(points[index], partial)
    for point in points:
        logger.info(f"Eb/N0={point.ebn0_db:g} dB: {point.block_errors}/{point.trials} block errors")
    return points


def point_record(point: BlerPoint) -> dict[str, Any]:
    """Every BlerPoint field, derived rates included."""
    return {
        "ebn0_db": point.ebn0_db,
        "trials": point.trials,
        "successes": point.successes,
        "block_errors": point.block_errors,
        "mismatches": point.mismatches,
        "abandonments": point.abandonments,
        "bler": point.bler,
        "mean_queries": point.mean_queries,
        "mean_patterns_valid": point.mean_patterns_valid,
        "hard_block_errors": point.hard_block_errors,
        "uncoded_bler": point.uncoded_bler,
    }


def config_record(config: SimConfig) -> dict[str, Any]:
    record = asdict(config)
    record["ebn0_grid"] = list(config.ebn0_grid)
    record["N"] = config.N
    return record


def write_results(
    points: Iterable[BlerPoint],
    fmt: str,
    sink: TextIO,
    config: Optional[SimConfig] = None,
) -> None:
    """Write CSV (fixed header, 6 significant digits) or JSON (all fields plus config)."""
    if fmt == "csv":
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for point in points:
            writer.writerow([
                f"{point.ebn0_db:.6g}",
                point.trials,
                point.block_errors,
                point.mismatches,
                point.abandonments,
                f"{point.bler:.6g}",
                f"{point.mean_queries:.6g}",
            ])
    elif fmt == "json":
        document = {
            "config": config_record(config) if config is not None else None,
            "points": [point_record(p) for p in points],
        }
        json.dump(document, sink, indent=2)
        sink.write("\n")
    else:
        raise ValueError(f"unknown result format {fmt!r}; expected 'csv' or 'json'")

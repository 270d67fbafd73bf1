#!/usr/bin/env python3
"""
CLI for mpgrand - codes, gate reports, single decodes and BLER campaigns

Usage:
  mpgrand gates --n 5                              # Gate cost of the N=32 multiplier
  mpgrand gates --all --format json                # All block lengths, JSON
  mpgrand code --n 5 --show-h                      # Info/frozen sets and H
  mpgrand sequence                                 # Validate the reliability sequence
  mpgrand simulate --n 5 --mqam 4 --s 8 --ebn0 0:2:8 --trials 10000 --seed 42
  mpgrand decode-one --n 7 --mqam 16 --ebn0 6 --info 0123456789abcdef
  mpgrand pattern-space --s 8                      # TEP space sizes for every (N, M)

Environment:
  MPGRAND_SEQUENCE_FILE  reliability sequence file (default: bundled copy)
  MPGRAND_WORKERS        default --workers (default: 1)
  LOG_LEVEL              default --log-level (default: WARNING)

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

import argparse
import asyncio
import math
import os
import sys
from typing import Optional

from .container import Container
from .core.domain import DEFAULT_TRIALS, SUPPORTED_EXPONENTS, SUPPORTED_ORDERS
from .core.gf2 import from_hex
from .core.grand import DEFAULT_CUTOFF
from .formatters import (
    format_code,
    format_decode_one,
    format_gates,
    format_gates_json,
    format_pattern_space,
    format_sequence,
    format_simulate,
)
from .handlers import Handlers
from .logs import configure_logging

DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"


def get_sequence_file() -> Optional[str]:
    """Get sequence file path from env; None selects the bundled copy"""
    return os.environ.get("MPGRAND_SEQUENCE_FILE") or None


def get_workers() -> int:
    """Get default worker count from env or use fallback"""
    workers_str = os.environ.get("MPGRAND_WORKERS", str(DEFAULT_WORKERS))
    try:
        return max(1, int(workers_str))
    except ValueError:
        return DEFAULT_WORKERS


def get_log_level() -> str:
    """Get log level from env or use fallback"""
    return os.environ.get("LOG_LEVEL", DEFAULT_LOG_LEVEL)


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def seed_value(text: str) -> int:
    value = non_negative_int(text)
    if value >= 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits, got {value}")
    return value


def ebn0_value(text: str) -> float:
    """A single Eb/N0 in dB; 'inf' selects the noiseless channel."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number of dB, got {text!r}") from None
    if math.isnan(value) or value == -math.inf:
        raise argparse.ArgumentTypeError(f"Eb/N0 must be a number or inf, got {text!r}")
    return value


def ebn0_grid(text: str) -> list[float]:
    """Comma-separated values and inclusive start:step:stop ranges, e.g. '0:2:8' or '0,1.5,3:1:5'."""
    values: list[float] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise argparse.ArgumentTypeError(f"empty entry in Eb/N0 grid {text!r}")
        if ":" in part:
            fields = part.split(":")
            if len(fields) != 3:
                raise argparse.ArgumentTypeError(f"range must be start:step:stop, got {part!r}")
            try:
                start, step, stop = (float(f) for f in fields)
            except ValueError:
                raise argparse.ArgumentTypeError(f"non-numeric range {part!r}") from None
            if not all(math.isfinite(x) for x in (start, step, stop)):
                raise argparse.ArgumentTypeError(f"range bounds must be finite, got {part!r}")
            if step <= 0 or stop < start:
                raise argparse.ArgumentTypeError(f"range needs step > 0 and stop >= start, got {part!r}")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            values.extend(round(start + i * step, 10) for i in range(count))
        else:
            try:
                value = float(part)
            except ValueError:
                raise argparse.ArgumentTypeError(f"non-numeric Eb/N0 value {part!r}") from None
            if not math.isfinite(value):
                raise argparse.ArgumentTypeError(f"grid values must be finite, got {part!r}")
            values.append(value)
    return values


async def gates_command(n: Optional[int], output_format: str, sequence_file: Optional[str]) -> int:
    """Gate cost report"""
    try:
        container = Container(sequence_file=sequence_file)
        handlers = Handlers(container)

        result = await handlers.gates(n=n)

        if output_format == "json":
            print(format_gates_json(result))
        else:
            print(format_gates(result))

        if not result["success"]:
            return 1

        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


async def code_command(n: int, show_h: bool, sequence_file: Optional[str]) -> int:
    """Show one polar code"""
    try:
        container = Container(sequence_file=sequence_file)
        handlers = Handlers(container)

        result = await handlers.code(n=n, show_h=show_h)
        print(format_code(result))

        return 0 if result["success"] else 1
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


async def sequence_command(sequence_file: Optional[str]) -> int:
    """Validate the reliability sequence"""
    try:
        container = Container(sequence_file=sequence_file)
        handlers = Handlers(container)

        result = await handlers.sequence()
        print(format_sequence(result))

        return 0 if result["success"] else 1
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


async def simulate_command(
    n: int,
    M: int,  # noqa: N803
    S: int,  # noqa: N803
    grid: list[float],
    trials: int,
    seed: int,
    workers: int,
    out: Optional[str],
    output_format: str,
    sequence_file: Optional[str],
) -> int:
    """Run a BLER campaign"""
    try:
        container = Container(sequence_file=sequence_file, workers=workers)
        handlers = Handlers(container)

        result = await handlers.simulate(
            n=n,
            M=M,
            S=S,
            ebn0_grid=grid,
            trials=trials,
            seed=seed,
            fmt=output_format,
            out=out,
        )
        print(format_simulate(result))

        if not result["success"]:
            return 1

        return 0
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


async def decode_one_command(
    n: int,
    M: int,  # noqa: N803
    S: int,  # noqa: N803
    ebn0_db: float,
    seed: int,
    codeword_hex: Optional[str],
    info_hex: Optional[str],
    sequence_file: Optional[str],
) -> int:
    """Trace a single decode"""
    try:
        container = Container(sequence_file=sequence_file)
        handlers = Handlers(container)

        result = await handlers.decode_one(
            n=n,
            M=M,
            S=S,
            ebn0_db=ebn0_db,
            seed=seed,
            codeword_hex=codeword_hex,
            info_hex=info_hex,
        )
        print(format_decode_one(result))

        return 0 if result["success"] else 1
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


async def pattern_space_command(S: int) -> int:  # noqa: N803
    """Pattern-space table"""
    try:
        handlers = Handlers(Container())

        result = await handlers.pattern_space(S=S)
        print(format_pattern_space(result))

        return 0 if result["success"] else 1
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    exponents = list(SUPPORTED_EXPONENTS)
    parser = argparse.ArgumentParser(
        prog="mpgrand",
        description="Massive parallel GRAND for 5G polar codes over M-QAM",
    )
    parser.add_argument(
        "--sequence-file",
        default=get_sequence_file(),
        help="Reliability sequence file (default: $MPGRAND_SEQUENCE_FILE or the bundled copy)"
    )
    parser.add_argument(
        "--log-level",
        default=get_log_level(),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="Log level for stderr (default: $LOG_LEVEL or WARNING)"
    )

    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # gates command
    gates_parser = subparsers.add_parser("gates", help="Gate and depth cost of the parallel multiplier")
    which = gates_parser.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=int, choices=exponents, help="Code exponent, N = 2^n (5..10)")
    which.add_argument("--all", action="store_true", help="Every supported n")
    gates_parser.add_argument(
        "--format",
        choices=["text", "json"],
        default="text",
        help="Output format (default: text)"
    )

    # code command
    code_parser = subparsers.add_parser("code", help="Show a polar code and its parity-check matrix")
    code_parser.add_argument("--n", type=int, choices=exponents, required=True, help="Code exponent (5..10)")
    code_parser.add_argument("--show-h", action="store_true", help="Print H row by row")

    # sequence command
    subparsers.add_parser("sequence", help="Validate the reliability sequence file")

    # simulate command
    sim_parser = subparsers.add_parser("simulate", help="Monte Carlo BLER campaign")
    sim_parser.add_argument("--n", type=int, choices=exponents, required=True, help="Code exponent (5..10)")
    sim_parser.add_argument("--mqam", type=int, choices=list(SUPPORTED_ORDERS), required=True, help="QAM order M")
    sim_parser.add_argument("--s", type=non_negative_int, default=DEFAULT_CUTOFF,
                            help=f"Cut-off S, clamped to L (default: {DEFAULT_CUTOFF})")
    sim_parser.add_argument("--ebn0", type=ebn0_grid, required=True,
                            help="Eb/N0 grid in dB: start:step:stop (inclusive) and/or comma-separated values")
    sim_parser.add_argument("--trials", type=positive_int, default=DEFAULT_TRIALS,
                            help=f"Trials per grid point (default: {DEFAULT_TRIALS})")
    sim_parser.add_argument("--seed", type=seed_value, default=0, help="Master seed (default: 0)")
    sim_parser.add_argument("--workers", type=positive_int, default=get_workers(),
                            help="Worker processes; never changes the output (default: $MPGRAND_WORKERS or 1)")
    sim_parser.add_argument("--out", help="Output file (default: bler_N{N}_M{M}_S{S}.csv|json)")
    sim_parser.add_argument("--format", choices=["csv", "json"], default="csv",
                            help="Result file format (default: csv)")

    # decode-one command
    dec_parser = subparsers.add_parser("decode-one", help="Trace one transmit/decode")
    dec_parser.add_argument("--n", type=int, choices=exponents, required=True, help="Code exponent (5..10)")
    dec_parser.add_argument("--mqam", type=int, choices=list(SUPPORTED_ORDERS), required=True, help="QAM order M")
    dec_parser.add_argument("--s", type=non_negative_int, default=DEFAULT_CUTOFF,
                            help=f"Cut-off S (default: {DEFAULT_CUTOFF})")
    dec_parser.add_argument("--ebn0", type=ebn0_value, required=True, help="Eb/N0 in dB, or inf for no noise")
    dec_parser.add_argument("--seed", type=seed_value, default=0, help="Noise seed (default: 0)")
    word = dec_parser.add_mutually_exclusive_group()
    word.add_argument("--codeword", help="Codeword to send, N bits as hex, MSB first")
    word.add_argument("--info", help="Information bits to encode and send, K bits as hex")

    # pattern-space command
    ps_parser = subparsers.add_parser("pattern-space", help="Error pattern space sizes for every (N, M)")
    ps_parser.add_argument("--s", type=non_negative_int, default=DEFAULT_CUTOFF,
                           help=f"Cut-off S (default: {DEFAULT_CUTOFF})")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 2

    configure_logging(args.log_level)

    # Run command
    if args.command == "gates":
        return asyncio.run(gates_command(
            n=None if args.all else args.n,
            output_format=args.format,
            sequence_file=args.sequence_file
        ))
    elif args.command == "code":
        return asyncio.run(code_command(
            n=args.n,
            show_h=args.show_h,
            sequence_file=args.sequence_file
        ))
    elif args.command == "sequence":
        return asyncio.run(sequence_command(sequence_file=args.sequence_file))
    elif args.command == "simulate":
        return asyncio.run(simulate_command(
            n=args.n,
            M=args.mqam,
            S=args.s,
            grid=args.ebn0,
            trials=args.trials,
            seed=args.seed,
            workers=args.workers,
            out=args.out,
            output_format=args.format,
            sequence_file=args.sequence_file
        ))
    elif args.command == "decode-one":
        N = 1 << args.n  # noqa: N806
        try:
            if args.codeword is not None:
                from_hex(args.codeword, N)
            if args.info is not None:
                from_hex(args.info, N // 2)
        except ValueError as e:
            parser.error(str(e))
        return asyncio.run(decode_one_command(
            n=args.n,
            M=args.mqam,
            S=args.s,
            ebn0_db=args.ebn0,
            seed=args.seed,
            codeword_hex=args.codeword,
            info_hex=args.info,
            sequence_file=args.sequence_file
        ))
    elif args.command == "pattern-space":
        return asyncio.run(pattern_space_command(S=args.s))
    else:
        parser.print_help()
        return 2


if __name__ == "__main__":
    sys.exit(main())

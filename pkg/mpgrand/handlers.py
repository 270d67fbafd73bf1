"""
Command Handlers

Shared async handlers that call the hexagonal core and return plain dicts.
Every handler returns {"success": True, ...} or {"success": False, "error": ...}.
"""
import asyncio
import logging
from typing import Any, Optional

import numpy as np

from .container import Container
from .core.domain import SUPPORTED_EXPONENTS, SimConfig
from .core.gf2 import to_hex
from .core.harness import config_record, point_record
from .core.qam import build_constellation, symbol_count
from .reference import REFERENCE_GATES, gate_deltas

logger = logging.getLogger(__name__)


class Handlers:
    """Handlers for CLI commands using dependency injection"""

    def __init__(self, container: Container):
        self.container = container

    async def gates(self, n: Optional[int] = None) -> dict[str, Any]:
        """Gate cost report for one n, or for every supported n when n is None"""
        try:
            exponents = [n] if n is not None else list(SUPPORTED_EXPONENTS)
            reports = []
            for exponent in exponents:
                report = await asyncio.to_thread(self.container.gate_report.execute, exponent)
                reference = REFERENCE_GATES[exponent]
                reports.append({
                    "n": report.n,
                    "N": report.cols,
                    "and_gates": report.and_gates,
                    "xor_gates": report.xor_gates,
                    "sparsity": report.sparsity,
                    "max_row_weight": report.max_row_weight,
                    "steps": report.parallel_steps,
                    "xor_ops": report.xor_ops,
                    "heaviest_row": report.heaviest_row,
                    "rows": report.rows,
                    "reference": {
                        "and_gates": reference.and_gates,
                        "xor_gates": reference.xor_gates,
                        "max_row_weight": reference.max_row_weight,
                        "sparsity_percent": reference.sparsity_percent,
                        "steps": reference.steps,
                    },
                    "deltas": gate_deltas(
                        exponent,
                        report.and_gates,
                        report.xor_gates,
                        report.max_row_weight,
                        report.sparsity,
                        report.parallel_steps,
                    ),
                })
            return {
                "success": True,
                "sequence_file": self.container.sequence.describe(),
                "reports": reports,
            }

        except Exception as e:
            logger.error(f"gates failed: {e}")
            return {
                "success": False,
                "error": f"Failed to build gate report: {str(e)}"
            }

    async def code(self, n: int, show_h: bool = False) -> dict[str, Any]:
        """Code parameters, index sets and parity-check row weights"""
        try:
            code = await asyncio.to_thread(self.container.codes.execute, n)
            h = code.parity_check
            result = {
                "success": True,
                "n": code.n,
                "N": code.N,
                "K": code.K,
                "rate": code.rate,
                "info_set": list(code.info_set),
                "frozen_set": list(code.frozen_set),
                "h_shape": list(h.shape),
                "row_weights": [int(w) for w in h.sum(axis=1)],
            }
            if show_h:
                result["h_rows"] = ["".join("1" if bit else "." for bit in row) for row in h]
            return result

        except Exception as e:
            logger.error(f"code failed: {e}")
            return {
                "success": False,
                "error": f"Failed to build code: {str(e)}"
            }

    async def sequence(self) -> dict[str, Any]:
        """Validate the configured reliability sequence"""
        try:
            seq = await asyncio.to_thread(self.container.codes.sequence)
            return {
                "success": True,
                "path": self.container.sequence.describe(),
                "length": len(seq),
                "first": list(seq.order[:8]),
                "last": list(seq.order[-8:]),
            }

        except Exception as e:
            logger.error(f"sequence failed: {e}")
            return {
                "success": False,
                "error": f"Failed to load reliability sequence: {str(e)}"
            }

    async def simulate(
        self,
        n: int,
        M: int,  # noqa: N803
        S: int,  # noqa: N803
        ebn0_grid: list[float],
        trials: int,
        seed: int = 0,
        fmt: str = "csv",
        out: Optional[str] = None,
    ) -> dict[str, Any]:
        """Run a BLER campaign and write CSV/JSON"""
        try:
            config = SimConfig(
                n=n,
                M=M,
                S=S,
                ebn0_grid=tuple(ebn0_grid),
                trials_per_point=trials,
                master_seed=seed,
            )
            L = symbol_count(config.N, build_constellation(M))  # noqa: N806
            points, path = await asyncio.to_thread(
                self.container.simulate.execute,
                config=config,
                fmt=fmt,
                destination=out,
            )
            return {
                "success": True,
                "path": path,
                "format": fmt,
                "config": config_record(config),
                "L": L,
                "effective_cutoff": min(S, L),
                "clamped": S > L,
                "workers": self.container.executor.workers,
                "points": [point_record(p) for p in points],
            }

        except Exception as e:
            logger.error(f"simulate failed: {e}")
            return {
                "success": False,
                "error": f"Failed to run simulation: {str(e)}"
            }

    async def decode_one(
        self,
        n: int,
        M: int,  # noqa: N803
        S: int,  # noqa: N803
        ebn0_db: float,
        seed: int = 0,
        codeword_hex: Optional[str] = None,
        info_hex: Optional[str] = None,
    ) -> dict[str, Any]:
        """Single transmit/decode with a full trace"""
        try:
            trace = await asyncio.to_thread(
                self.container.decode_one.execute,
                n=n,
                M=M,
                S=S,
                ebn0_db=ebn0_db,
                seed=seed,
                codeword_hex=codeword_hex,
                info_hex=info_hex,
            )
            result = trace.result
            selected = set(result.selected)
            symbols = []
            for index, (sent, received, rel) in enumerate(
                zip(trace.symbols, trace.received, result.reliabilities)
            ):
                symbols.append({
                    "index": index,
                    "sent": [int(v) for v in sent],
                    "received": [float(v) for v in received],
                    "hard": list(rel.hard),
                    "likelihood": rel.likelihood,
                    "candidates": len(rel.candidates),
                    "selected": index in selected,
                })
            return {
                "success": True,
                "n": trace.n,
                "N": 1 << trace.n,
                "M": trace.M,
                "S": trace.S,
                "effective_cutoff": result.effective_cutoff,
                "ebn0_db": trace.ebn0_db,
                "seed": trace.seed,
                "sigma": trace.sigma,
                "transmitted": to_hex(trace.transmitted),
                "hard_decision": to_hex(result.hard_codeword),
                "hard_valid": result.hard_valid,
                "symbols": symbols,
                "selected": list(result.selected),
                "tep_count": result.queries_checked,
                "tep_budget": 4 ** result.effective_cutoff,
                "patterns_valid": result.patterns_valid,
                "outcome": result.outcome.value,
                "winner": list(result.winner.assignment) if result.winner else None,
                "decoded": to_hex(result.codeword) if result.decoded else None,
                "info": to_hex(result.info) if result.decoded else None,
                "selected_distance": result.selected_distance,
                "recovered": trace.recovered,
                "latency_cycles": result.modeled_latency_cycles,
                "hard_bit_errors": int(np.count_nonzero(result.hard_codeword != trace.transmitted)),
            }

        except Exception as e:
            logger.error(f"decode-one failed: {e}")
            return {
                "success": False,
                "error": f"Failed to decode: {str(e)}"
            }

    async def pattern_space(self, S: int) -> dict[str, Any]:  # noqa: N803
        """Pattern-space sizes over every supported (N, M)"""
        try:
            rows = await asyncio.to_thread(self.container.pattern_space.execute, S)
            return {
                "success": True,
                "S": S,
                "rows": [
                    {
                        "n": row.n,
                        "N": row.N,
                        "M": row.M,
                        "L": row.L,
                        "effective_cutoff": row.effective_cutoff,
                        "four_candidate_space": row.four_candidate_space,
                        "five_candidate_space": row.five_candidate_space,
                        "tep_budget": row.tep_budget,
                        "latency_cycles": row.latency_cycles,
                    }
                    for row in rows
                ],
            }

        except Exception as e:
            logger.error(f"pattern-space failed: {e}")
            return {
                "success": False,
                "error": f"Failed to compute pattern space: {str(e)}"
            }

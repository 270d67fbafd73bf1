"""
Published reference figures for the parallel multiplier and decoder latency.

Gate counts below were reported for H matrices whose null-space basis was not
disclosed; ours come from the RREF basis in core.gf2.null_space. The gate
report prints both and the per-cell difference.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class ReferenceGateRow:
    and_gates: int  # total weight W_H
    xor_gates: int
    max_row_weight: int
    sparsity_percent: float  # two decimals as published
    steps: int  # multiplier depth in clock cycles


REFERENCE_GATES: dict[int, ReferenceGateRow] = {
    5: ReferenceGateRow(and_gates=136, xor_gates=49, max_row_weight=16, sparsity_percent=26.56, steps=5),
    6: ReferenceGateRow(and_gates=322, xor_gates=106, max_row_weight=22, sparsity_percent=15.72, steps=6),
    7: ReferenceGateRow(and_gates=984, xor_gates=247, max_row_weight=44, sparsity_percent=12.01, steps=7),
    8: ReferenceGateRow(and_gates=2890, xor_gates=562, max_row_weight=78, sparsity_percent=8.82, steps=8),
    9: ReferenceGateRow(and_gates=8322, xor_gates=1247, max_row_weight=158, sparsity_percent=6.35, steps=9),
    10: ReferenceGateRow(and_gates=24828, xor_gates=2758, max_row_weight=304, sparsity_percent=4.74, steps=10),
}

# Decoder latency bound 2n + 2S + 4 at the recommended cutoff
REFERENCE_CUTOFF = 8
REFERENCE_LATENCY: dict[int, int] = {5: 30, 6: 32, 7: 34, 8: 36, 9: 38, 10: 40}


def gate_deltas(n: int, and_gates: int, xor_gates: int, max_row_weight: int,
                sparsity: float, steps: int) -> dict[str, float]:
    """Our value minus the published one, per column."""
    ref = REFERENCE_GATES[n]
    return {
        "and_gates": and_gates - ref.and_gates,
        "xor_gates": xor_gates - ref.xor_gates,
        "max_row_weight": max_row_weight - ref.max_row_weight,
        "sparsity_percent": round(sparsity * 100 - ref.sparsity_percent, 2),
        "steps": steps - ref.steps,
    }

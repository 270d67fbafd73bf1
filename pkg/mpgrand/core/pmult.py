"""
Step-counted parallel GF(2) matrix-vector multiplication.

One gather step forms every product r_ij = c_j h_ij at once; then each row
halves its list by pairwise XOR until a single value is left, with an odd
leftover passing through unchanged. Rounds run one after another in wall
time, but the counters follow the depth and gate count of the circuit:

    steps = 1 + max_i ceil(log2 W(i))
    AND   = sum_i W(i)
    XOR   = sum_i ceil(log2 W(i))
"""
import numpy as np
import numpy.typing as npt

from .domain import BitMatrix, GateCostReport, PMultTrace, RowIndexSets
from .gf2 import freeze

# Upper bound on the (candidates x rows x width) product tensor per chunk
BATCH_BYTES = 1 << 24


class ZeroRowError(ValueError):
    """Raised when a parity-check row has no ones"""


def ceil_log2(w: int) -> int:
    """ceil(log2 w) for w >= 1"""
    return (int(w) - 1).bit_length()


def index_rows(H: npt.ArrayLike) -> RowIndexSets:  # noqa: N803
    """Index sets of the ones in each row, plus a padded gather layout."""
    h = np.asarray(H)
    if h.ndim != 2 or h.shape[0] == 0 or h.shape[1] == 0:
        raise ValueError(f"expected a non-empty 2-D parity-check matrix, got shape {h.shape}")
    index_sets = tuple(freeze(np.flatnonzero(row).astype(np.int64)) for row in h)
    weights = np.array([s.size for s in index_sets], dtype=np.int64)
    empty = np.flatnonzero(weights == 0)
    if empty.size:
        raise ZeroRowError(f"row {int(empty[0])} of H is all zero")

    width = 1 << ceil_log2(int(weights.max()))
    gather = np.zeros((len(index_sets), width), dtype=np.int64)
    mask = np.zeros((len(index_sets), width), dtype=np.uint8)
    for i, idx in enumerate(index_sets):
        gather[i, :idx.size] = idx
        mask[i, :idx.size] = 1
    return RowIndexSets(
        index_sets=index_sets,
        weights=freeze(weights),
        cols=h.shape[1],
        gather=freeze(gather),
        mask=freeze(mask),
    )


def _execute(rows: RowIndexSets, c: npt.NDArray[np.uint8]) -> tuple[npt.NDArray[np.uint8], int, int, int]:
    """Run the gather step and the halving rounds on a (T, N) batch.

    Returns (syndromes (T, K), steps, xor_stages, xor_ops).
    """
    values = c[:, rows.gather] & rows.mask
    steps = 1
    lengths = rows.weights.copy()
    xor_stages = 0
    xor_ops = 0
    while values.shape[-1] > 1:
        # Padding is zero, so an unpaired element XORs with 0 and passes through
        values = values[..., 0::2] ^ values[..., 1::2]
        xor_stages += int(np.count_nonzero(lengths > 1))
        xor_ops += int((lengths // 2).sum())
        lengths = (lengths + 1) // 2
        steps += 1
    return values[..., 0], steps, xor_stages, xor_ops


def _check_width(rows: RowIndexSets, length: int) -> None:
    if length != rows.cols:
        raise ValueError(f"dimension mismatch: H has {rows.cols} columns, vector has length {length}")


def pmult(rows: RowIndexSets, c: npt.ArrayLike) -> PMultTrace:
    """Syndrome H c^T with executed step and gate counts."""
    v = np.asarray(c, dtype=np.uint8)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D bit vector, got shape {v.shape}")
    _check_width(rows, v.shape[0])
    syndromes, steps, xor_stages, xor_ops = _execute(rows, v[None, :])
    return PMultTrace(
        syndrome=freeze(syndromes[0].copy()),
        steps_executed=steps,
        and_gates=rows.total_weight,
        xor_stages=xor_stages,
        xor_ops=xor_ops,
    )


def pmult_batch(rows: RowIndexSets, C: npt.ArrayLike) -> tuple[BitMatrix, int]:  # noqa: N803
    """Apply pmult to every row of a (T, N) batch; chunked to bound memory.

    Returns (syndromes (T, K), steps per candidate).
    """
    batch = np.asarray(C, dtype=np.uint8)
    if batch.ndim != 2:
        raise ValueError(f"expected a 2-D batch of bit vectors, got shape {batch.shape}")
    _check_width(rows, batch.shape[1])
    per_candidate = max(1, rows.gather.size)
    chunk = max(1, BATCH_BYTES // per_candidate)
    out = np.empty((batch.shape[0], rows.rows), dtype=np.uint8)
    steps = 1 + ceil_log2(int(rows.weights.max()))
    for start in range(0, batch.shape[0], chunk):
        stop = start + chunk
        out[start:stop], steps, _, _ = _execute(rows, batch[start:stop])
    return freeze(out), steps


def cost_report(rows: RowIndexSets, K: int, N: int) -> GateCostReport:  # noqa: N803
    """Gate and depth figures from the row weights alone."""
    depths = [ceil_log2(w) for w in rows.weights]
    return GateCostReport(
        n=N.bit_length() - 1,
        rows=K,
        cols=N,
        and_gates=rows.total_weight,
        xor_gates=sum(depths),
        parallel_steps=1 + max(depths),
        max_row_weight=int(rows.weights.max()),
        sparsity=rows.total_weight / (K * N),
        xor_ops=int((rows.weights - 1).sum()),
        heaviest_row=int(np.argmax(rows.weights)),
    )


def syndrome_is_zero(syndromes: BitMatrix) -> npt.NDArray[np.bool_]:
    """Row-wise zero test for a (T, K) syndrome batch."""
    return ~np.asarray(syndromes, dtype=bool).any(axis=-1)


"""
Square M-QAM on the odd-integer lattice.

Constellation geometry, Gray bit mapping, hard demodulation, the per-symbol
likelihood L(r, s) = sqrt(d1^2 + d2^2) with d = 1 - |s - r| per axis, and the
near-neighbour-error candidates (horizontal, vertical, diagonal neighbour on
the side the received sample leans toward).
"""
from __future__ import annotations

import numpy as np
import numpy.typing as npt

from .domain import (
    SUPPORTED_ORDERS,
    BitMatrix,
    BitVector,
    Constellation,
    Point,
    Points,
    Received,
    SymbolReliability,
)
from .gf2 import freeze


def build_constellation(M: int) -> Constellation:  # noqa: N803
    """2^m x 2^m grid with a reflected Gray code on each axis."""
    if M not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported QAM order {M}; expected one of {SUPPORTED_ORDERS}")
    m = (M.bit_length() - 1) // 2
    side = 1 << m
    levels = np.arange(side, dtype=np.int64)
    amplitudes = 2 * levels - (side - 1)
    axis_gray = levels ^ (levels >> 1)
    level_of_gray = np.argsort(axis_gray)

    values = np.arange(M, dtype=np.int64)
    points = np.stack(
        [amplitudes[level_of_gray[values >> m]], amplitudes[level_of_gray[values & (side - 1)]]],
        axis=1,
    )
    labels = _to_bits(values, 2 * m)
    return Constellation(
        M=M,
        m=m,
        points=freeze(points),
        labels=freeze(labels),
        axis_gray=freeze(axis_gray),
    )


def _to_bits(values: npt.NDArray[np.int64], width: int) -> BitMatrix:
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((values[..., None] >> shifts) & 1).astype(np.uint8)


def in_constellation(points: npt.ArrayLike, cst: Constellation) -> npt.NDArray[np.bool_]:
    """Per-point membership test on the last axis (odd coordinates within the grid)."""
    p = np.asarray(points)
    inside = (np.abs(p) <= cst.max_amplitude) & (np.remainder(p, 2) == 1)
    return inside.all(axis=-1)


def labels_of(points: npt.ArrayLike, cst: Constellation) -> BitMatrix:
    """Gray labels of constellation points, shape (..., 2m)."""
    p = np.asarray(points, dtype=np.int64)
    levels = (p + cst.max_amplitude) // 2
    codes = cst.axis_gray[levels]
    return np.concatenate([_to_bits(codes[..., 0], cst.m), _to_bits(codes[..., 1], cst.m)], axis=-1)


def symbol_count(N: int, cst: Constellation) -> int:  # noqa: N803
    """L = ceil(N / 2m)."""
    return -(-N // cst.bits_per_symbol)


def bits_to_symbols(bits: npt.ArrayLike, cst: Constellation) -> Points:
    """Pad with trailing zeros to a multiple of 2m and map each group to its point."""
    b = np.asarray(bits, dtype=np.int64).ravel()
    width = cst.bits_per_symbol
    count = -(-b.size // width)
    padded = np.zeros(count * width, dtype=np.int64)
    padded[:b.size] = b
    weights = 1 << np.arange(width - 1, -1, -1, dtype=np.int64)
    values = padded.reshape(count, width) @ weights
    return freeze(cst.points[values])


def symbols_to_bits(points: npt.ArrayLike, cst: Constellation, N: int) -> BitVector:  # noqa: N803
    """Concatenate the labels of ``points`` and keep the first N bits."""
    raw = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    member = np.isfinite(raw).all(axis=1) & (raw == np.round(raw)).all(axis=1)
    member[member] = in_constellation(raw[member], cst)
    if not member.all():
        bad = raw[~member][0]
        raise ValueError(f"point ({bad[0]:g}, {bad[1]:g}) is not in the {cst.M}-QAM constellation")
    p = raw.astype(np.int64)
    available = p.shape[0] * cst.bits_per_symbol
    if N > available:
        raise ValueError(f"{p.shape[0]} symbols carry {available} bits, cannot produce {N}")
    return freeze(labels_of(p, cst).ravel()[:N].copy())


def hard_demodulate(r: npt.ArrayLike, cst: Constellation) -> Points:
    """Nearest constellation point: round each axis to the nearest odd integer, then clamp."""
    x = np.asarray(r, dtype=np.float64)
    nearest = 2 * np.floor(x / 2) + 1
    limit = cst.max_amplitude
    return np.clip(nearest, -limit, limit).astype(np.int64)


def likelihood(r: npt.ArrayLike, s: npt.ArrayLike) -> npt.NDArray[np.float64] | float:
    """L(r, s) = sqrt(d1^2 + d2^2), d = 1 - |s - r| per axis.

    Larger is more reliable: sqrt(2) on the point itself, 0 at a decision-region
    corner. Outside the hull d may go negative and is used as is.
    """
    d = 1.0 - np.abs(np.asarray(s, dtype=np.float64) - np.asarray(r, dtype=np.float64))
    value = np.sqrt((d * d).sum(axis=-1))
    return float(value) if np.ndim(value) == 0 else value


def neighbour_table(r: Received, s: Points, cst: Constellation) -> tuple[Points, npt.NDArray[np.bool_]]:
    """All four candidates per symbol, (L, 4, 2), plus an (L, 4) in-grid mask.

    Column order: hard, horizontal, vertical, diagonal. sign(0) counts as +1.
    """
    r = np.asarray(r, dtype=np.float64).reshape(-1, 2)
    s = np.asarray(s, dtype=np.int64).reshape(-1, 2)
    step = 2 * np.where(s - r >= 0, 1, -1)
    horizontal = s - np.stack([step[:, 0], np.zeros_like(step[:, 0])], axis=1)
    vertical = s - np.stack([np.zeros_like(step[:, 1]), step[:, 1]], axis=1)
    diagonal = s - step
    table = np.stack([s, horizontal, vertical, diagonal], axis=1)
    return table, in_constellation(table, cst)


def nne_candidates(r: npt.ArrayLike, s: npt.ArrayLike, cst: Constellation) -> list[Point]:
    """Near-neighbour errors of one symbol that stay inside the constellation."""
    table, valid = neighbour_table(r, s, cst)
    return [(int(x), int(y)) for (x, y), ok in zip(table[0, 1:], valid[0, 1:]) if ok]


def reliability_of(r: npt.ArrayLike, cst: Constellation) -> SymbolReliability:
    return reliabilities(np.asarray(r, dtype=np.float64).reshape(1, 2), cst)[0]


def reliabilities(received: Received, cst: Constellation) -> tuple[SymbolReliability, ...]:
    """SymbolReliability for every received sample, in input order."""
    r = np.asarray(received, dtype=np.float64).reshape(-1, 2)
    hard = hard_demodulate(r, cst)
    scores = np.atleast_1d(likelihood(r, hard))
    table, valid = neighbour_table(r, hard, cst)
    result = []
    for i in range(r.shape[0]):
        candidates = tuple((int(x), int(y)) for (x, y), ok in zip(table[i], valid[i]) if ok)
        result.append(SymbolReliability(
            likelihood=float(scores[i]),
            hard=candidates[0],
            candidates=candidates,
        ))
    return tuple(result)


def average_energy(cst: Constellation) -> float:
    """Mean of A_c^2 + A_s^2 over the grid, 2(M - 1)/3 in lattice units."""
    return float((cst.points.astype(np.float64) ** 2).sum(axis=1).mean())

"""
Dense GF(2) linear algebra on numpy uint8 arrays.

One bit per entry. Products run through float64 BLAS and reduce mod 2, which
is exact while inner dimensions stay far below 2**53. Every public function
returns a read-only array so built matrices can be shared between workers.
"""
from __future__ import annotations

import numpy as np
import numpy.typing as npt

from .domain import BitMatrix, BitVector


def freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_bit_matrix(data: npt.ArrayLike, *, allow_empty_rows: bool = False) -> BitMatrix:
    """Validate and copy ``data`` into a read-only 0/1 matrix.

    Zero columns are always rejected; zero rows only when ``allow_empty_rows``
    (a null space of a full-column-rank matrix is legitimately empty).
    """
    a = np.array(data, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D bit matrix, got shape {a.shape}")
    rows, cols = a.shape
    if cols == 0:
        raise ValueError("bit matrix must have at least one column")
    if rows == 0 and not allow_empty_rows:
        raise ValueError("bit matrix must have at least one row")
    if a.size and (a.min() < 0 or a.max() > 1):
        raise ValueError("bit matrix entries must be 0 or 1")
    return freeze(a.astype(np.uint8))


def as_bit_vector(data: npt.ArrayLike) -> BitVector:
    """Validate and copy ``data`` into a read-only 0/1 vector of length > 0."""
    v = np.array(data, dtype=np.int64)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D bit vector, got shape {v.shape}")
    if v.size == 0:
        raise ValueError("bit vector must have at least one entry")
    if v.min() < 0 or v.max() > 1:
        raise ValueError("bit vector entries must be 0 or 1")
    return freeze(v.astype(np.uint8))


def identity(n: int) -> BitMatrix:
    return freeze(np.eye(n, dtype=np.uint8))


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2)."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape[0]}x{a.shape[1]} times {b.shape[0]}x{b.shape[1]}")
    product = a.astype(np.float64) @ b.astype(np.float64)
    return freeze(np.remainder(product, 2).astype(np.uint8))


def mat_vec(a: BitMatrix, v: BitVector) -> BitVector:
    """Matrix-vector product over GF(2); the sequential reference for pmult."""
    if a.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape[0]}x{a.shape[1]} matrix, vector of length {v.shape[0]}")
    product = a.astype(np.int64) @ v.astype(np.int64)
    return freeze((product & 1).astype(np.uint8))


def rref(a: BitMatrix) -> tuple[BitMatrix, tuple[int, ...], int]:
    """Reduced row echelon form over GF(2).

    Returns (R, pivot columns ascending, rank).
    """
    r = np.array(a, dtype=np.uint8)
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        hits = np.flatnonzero(r[row:, col])
        if hits.size == 0:
            continue
        found = row + int(hits[0])
        if found != row:
            r[[row, found]] = r[[found, row]]
        # Clear the column above and below the pivot in one pass
        others = np.flatnonzero(r[:, col])
        others = others[others != row]
        r[others] ^= r[row]
        pivots.append(col)
        row += 1
    return freeze(r), tuple(pivots), len(pivots)


def rank(a: BitMatrix) -> int:
    return rref(a)[2]


def null_space(a: BitMatrix) -> BitMatrix:
    """Basis of {x : a x^T = 0}, one row per non-pivot column.

    Row k sets its free column to 1 and fills the pivot columns from the
    reduced rows; rows come out in increasing free-column order, so the
    basis is identical on every build.
    """
    r, pivots, rk = rref(a)
    cols = a.shape[1]
    free = np.setdiff1d(np.arange(cols), np.array(pivots, dtype=np.int64))
    h = np.zeros((free.size, cols), dtype=np.uint8)
    h[np.arange(free.size), free] = 1
    if rk:
        h[:, list(pivots)] = r[:rk][:, free].T
    return freeze(h)


def from_hex(text: str, length: int) -> BitVector:
    """Parse ``length`` bits written MSB first as hex (optional 0x prefix)."""
    digits = text.strip().lower()
    if digits.startswith("0x"):
        digits = digits[2:]
    expected = -(-length // 4)
    if len(digits) != expected:
        raise ValueError(f"expected {expected} hex digits for {length} bits, got {len(digits)}")
    if not set(digits) <= set("0123456789abcdef"):
        raise ValueError(f"malformed hex string {text!r}")
    value = int(digits, 16)
    if value >> length:
        raise ValueError(f"hex value {text!r} does not fit in {length} bits")
    shifts = np.arange(length - 1, -1, -1)
    return freeze(np.array([(value >> int(s)) & 1 for s in shifts], dtype=np.uint8))


def to_hex(bits: BitVector) -> str:
    """Inverse of from_hex, zero-padded on the left to whole digits."""
    value = 0
    for bit in np.asarray(bits, dtype=np.uint8):
        value = (value << 1) | int(bit)
    return f"{value:0{-(-len(bits) // 4)}x}"

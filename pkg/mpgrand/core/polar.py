"""
5G NR polar codes built from the universal reliability sequence.

G_N is the n-fold Kronecker power of [[1, 0], [1, 1]]; the K most reliable
positions carry information, the rest are frozen to zero, and H spans the
null space of the information rows of G_N.
"""
import logging
from typing import TextIO

import numpy as np
import numpy.typing as npt

from .domain import BitMatrix, BitVector, PolarCode, ReliabilitySequence
from .gf2 import freeze, as_bit_matrix, as_bit_vector, mat_mul, null_space

logger = logging.getLogger(__name__)

SEQUENCE_LENGTH = 1024
MAX_GENERATOR_EXPONENT = 10
CODE_EXPONENTS = range(5, 11)

_KERNEL = np.array([[1, 0], [1, 1]], dtype=np.uint8)


class SequenceFormatError(ValueError):
    """Raised when a reliability sequence file is not a permutation of 0..1023"""


def load_reliability_sequence(source: TextIO) -> ReliabilitySequence:
    """Parse whitespace/newline-separated decimal indices, validating as we go."""
    order: list[int] = []
    first_seen: dict[int, int] = {}
    line_no = 0
    for line_no, line in enumerate(source, 1):
        for token in line.split():
            try:
                index = int(token, 10)
            except ValueError:
                raise SequenceFormatError(f"line {line_no}: {token!r} is not a decimal integer") from None
            if not 0 <= index < SEQUENCE_LENGTH:
                raise SequenceFormatError(f"line {line_no}: index {index} out of range 0..{SEQUENCE_LENGTH - 1}")
            if index in first_seen:
                raise SequenceFormatError(
                    f"line {line_no}: duplicate index {index} (first seen on line {first_seen[index]})"
                )
            first_seen[index] = line_no
            order.append(index)
    if len(order) != SEQUENCE_LENGTH:
        raise SequenceFormatError(f"line {line_no}: expected {SEQUENCE_LENGTH} entries, found {len(order)}")
    return ReliabilitySequence(order=tuple(order))


def build_generator(n: int) -> BitMatrix:
    """G_N = F^{(x)n}; lower triangular, entry (i, j) set iff j's bits are a subset of i's."""
    if not 1 <= n <= MAX_GENERATOR_EXPONENT:
        raise ValueError(f"generator exponent must be in 1..{MAX_GENERATOR_EXPONENT}, got {n}")
    g = _KERNEL
    for _ in range(n - 1):
        g = np.kron(g, _KERNEL)
    return as_bit_matrix(g)


def select_sets(seq: ReliabilitySequence, N: int, K: int) -> tuple[tuple[int, ...], tuple[int, ...]]:  # noqa: N803
    """Split 0..N-1 into (info, frozen): the K most reliable indices carry information."""
    if N < 1 or N > SEQUENCE_LENGTH or N & (N - 1):
        raise ValueError(f"block length must be a power of two up to {SEQUENCE_LENGTH}, got {N}")
    if not 0 <= K <= N:
        raise ValueError(f"dimension K must be in 0..{N}, got {K}")
    restricted = [index for index in seq.order if index < N]
    frozen = tuple(sorted(restricted[:N - K]))
    info = tuple(sorted(restricted[N - K:]))
    return info, frozen


def build_code(seq: ReliabilitySequence, n: int) -> PolarCode:
    """Rate-1/2 code of length 2**n with H = NullSpace(G_I)."""
    if n not in CODE_EXPONENTS:
        raise ValueError(f"code exponent must be in 5..10 (N = 32..1024), got {n}")
    N = 1 << n  # noqa: N806
    generator = build_generator(n)
    info, frozen = select_sets(seq, N, N // 2)
    info_generator = freeze(generator[list(info)].copy())
    parity_check = null_space(info_generator)

    if mat_mul(info_generator, parity_check.T).any():
        raise RuntimeError(f"parity-check construction failed for N={N}: G_I H^T != 0")

    logger.info(f"built polar code N={N} K={len(info)} H={parity_check.shape[0]}x{parity_check.shape[1]}")
    return PolarCode(
        n=n,
        info_set=info,
        frozen_set=frozen,
        generator=generator,
        info_generator=info_generator,
        parity_check=parity_check,
    )


def polar_transform(u: npt.ArrayLike) -> BitVector:
    """x = u G_N via log2(N) butterfly stages; G_N is its own inverse.

    Works on the last axis, so a (T, N) batch transforms row by row.
    """
    x = np.array(u, dtype=np.uint8)
    size = x.shape[-1]
    half = 1
    while half < size:
        blocks = x.reshape(x.shape[:-1] + (-1, 2, half))
        blocks[..., 0, :] ^= blocks[..., 1, :]
        half *= 2
    return x


def encode(code: PolarCode, info: npt.ArrayLike) -> BitVector:
    """c = u G_N with info bits on the information set and zeros elsewhere."""
    bits = as_bit_vector(info) if np.size(info) else np.zeros(0, dtype=np.uint8)
    if bits.shape[0] != code.K:
        raise ValueError(f"expected {code.K} information bits, got {bits.shape[0]}")
    u = np.zeros(code.N, dtype=np.uint8)
    u[list(code.info_set)] = bits
    return freeze(polar_transform(u))


def extract_info(code: PolarCode, codeword: npt.ArrayLike) -> BitVector:
    """Invert encode: u = c G_N, then read the information positions."""
    c = as_bit_vector(codeword)
    if c.shape[0] != code.N:
        raise ValueError(f"expected a codeword of length {code.N}, got {c.shape[0]}")
    u = polar_transform(c)
    return freeze(u[list(code.info_set)].copy())


def recover_input(code: PolarCode, codeword: npt.ArrayLike) -> BitVector:
    """Full input vector u = c G_N, frozen positions included."""
    c = as_bit_vector(codeword)
    if c.shape[0] != code.N:
        raise ValueError(f"expected a codeword of length {code.N}, got {c.shape[0]}")
    return freeze(polar_transform(c))

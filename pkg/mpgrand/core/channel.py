"""
AWGN at complex baseband, expressed in odd-integer lattice units.

Physical amplitudes are d times the lattice coordinates, with
d = sqrt(3 m Eb / (M - 1)). Dividing the physical noise deviation by d once
here keeps every later stage on a grid of spacing 2.
"""
import math

import numpy as np
import numpy.typing as npt

from .domain import SUPPORTED_ORDERS, ChannelParams, Received


def min_distance(M: int, eb: float = 1.0) -> float:  # noqa: N803
    """Half the minimum distance: d = sqrt(3 m Eb / (M - 1)), m = bits per axis."""
    if M not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported QAM order {M}; expected one of {SUPPORTED_ORDERS}")
    if not eb > 0:
        raise ValueError(f"Eb must be positive, got {eb}")
    m = (M.bit_length() - 1) // 2
    return math.sqrt(3 * m * eb / (M - 1))


def derive_sigma(ebn0_db: float, d: float, eb: float = 1.0) -> float:
    """Per-axis noise deviation in lattice units.

    N0 = Eb / 10^(Eb/N0 / 10); the physical deviation sqrt(N0 / 2) is
    divided by d. +inf dB is the noiseless limit and gives 0.
    """
    if math.isnan(ebn0_db) or ebn0_db == -math.inf:
        raise ValueError(f"Eb/N0 must be a number or +inf, got {ebn0_db}")
    if ebn0_db == math.inf:
        return 0.0
    n0 = eb / 10 ** (ebn0_db / 10)
    return math.sqrt(n0 / 2) / d


def make_channel(M: int, ebn0_db: float, eb: float = 1.0) -> ChannelParams:  # noqa: N803
    d = min_distance(M, eb)
    return ChannelParams(
        M=M,
        m=(M.bit_length() - 1) // 2,
        eb=eb,
        ebn0_db=ebn0_db,
        d=d,
        sigma=derive_sigma(ebn0_db, d, eb),
    )


def trial_stream(master_seed: int, point: int, trial: int) -> np.random.Generator:
    """Counter-based stream for trial ``trial`` of grid point ``point``.

    Streams depend only on the key, so any split of trials across workers
    replays the same noise.
    """
    key = np.random.SeedSequence(master_seed, spawn_key=(point, trial))
    return np.random.Generator(np.random.Philox(key))


def transmit(points: npt.ArrayLike, params: ChannelParams, rng: np.random.Generator) -> Received:
    """r = s + n with n ~ N(0, sigma^2) per coordinate.

    Noise is always drawn, even at sigma = 0, so the stream position after
    transmit does not depend on the operating point.
    """
    s = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    noise = rng.standard_normal(s.shape)
    return s + params.sigma * noise


def energy_per_bit(params: ChannelParams, average_energy: float) -> float:
    """Physical energy per bit for a lattice-unit average symbol energy; equals Eb."""
    return average_energy * params.d ** 2 / (2 * params.m)


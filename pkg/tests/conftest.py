"""Shared fixtures: the bundled sequence, built codes and constellations."""
import pytest

from mpgrand.adapters import BUNDLED_SEQUENCE
from mpgrand.core.polar import build_code, load_reliability_sequence
from mpgrand.core.qam import build_constellation


@pytest.fixture(scope="session")
def sequence():
    with BUNDLED_SEQUENCE.open(encoding="utf-8") as handle:
        return load_reliability_sequence(handle)


@pytest.fixture(scope="session")
def codes(sequence):
    """Codes for every supported n, built once per session."""
    return {n: build_code(sequence, n) for n in range(5, 11)}


@pytest.fixture(scope="session")
def code32(codes):
    return codes[5]


@pytest.fixture(scope="session")
def qam4():
    return build_constellation(4)


@pytest.fixture(scope="session")
def qam16():
    return build_constellation(16)

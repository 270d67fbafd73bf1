"""
Ports - Interfaces for external dependencies

These define HOW the core reaches files and worker processes,
but NOT the implementation details.
"""
from abc import ABC, abstractmethod
from typing import Callable, Iterable, Iterator, Optional, TypeVar

from .domain import BlerPoint, ReliabilitySequence, SimConfig

T = TypeVar("T")
R = TypeVar("R")


class SequenceSource(ABC):
    """Port for loading the reliability sequence"""

    @abstractmethod
    def load(self) -> ReliabilitySequence:
        """Read and validate the sequence"""
        pass

    @abstractmethod
    def describe(self) -> str:
        """Human-readable origin of the sequence (a path, usually)"""
        pass


class ResultSink(ABC):
    """Port for persisting BLER campaign results"""

    @abstractmethod
    def write(
        self,
        points: list[BlerPoint],
        fmt: str,
        config: SimConfig,
        destination: Optional[str] = None,
    ) -> str:
        """Write results, return where they went"""
        pass


class TrialExecutor(ABC):
    """Port for running independent trial chunks"""

    @property
    @abstractmethod
    def workers(self) -> int:
        pass

    @abstractmethod
    def map(self, fn: Callable[[T], R], tasks: Iterable[T]) -> Iterator[R]:
        """Apply fn to every task; results come back in task order"""
        pass

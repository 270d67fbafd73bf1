"""
Trial Executor Adapter

Runs trial chunks in this process or on a process pool. Chunk results are
returned in submission order either way.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

from ..core.ports import TrialExecutor

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class LocalExecutor(TrialExecutor):
    """Serial for one worker, ProcessPoolExecutor otherwise"""

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self._workers = workers

    @property
    def workers(self) -> int:
        return self._workers

    def map(self, fn: Callable[[T], R], tasks: Iterable[T]) -> Iterator[R]:
        if self._workers == 1:
            yield from map(fn, tasks)
            return
        logger.debug(f"starting process pool with {self._workers} workers")
        with ProcessPoolExecutor(max_workers=self._workers) as pool:
            yield from pool.map(fn, tasks)

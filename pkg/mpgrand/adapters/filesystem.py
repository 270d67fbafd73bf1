"""
Filesystem Adapters

Implements SequenceSource and ResultSink on the local filesystem.
"""
import logging
from pathlib import Path
from typing import Optional

from ..core.domain import BlerPoint, ReliabilitySequence, SimConfig
from ..core.harness import write_results
from ..core.polar import load_reliability_sequence
from ..core.ports import ResultSink, SequenceSource

logger = logging.getLogger(__name__)

BUNDLED_SEQUENCE = Path(__file__).resolve().parent.parent / "data" / "reliability_sequence.txt"

RESULT_EXTENSIONS = {"csv": ".csv", "json": ".json"}


class FileSequenceSource(SequenceSource):
    """Reliability sequence read from a text file, one or more indices per line"""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path else BUNDLED_SEQUENCE

    def load(self) -> ReliabilitySequence:
        """Read and validate the sequence file"""
        if not self.path.is_file():
            raise FileNotFoundError(
                f"reliability sequence file not found: {self.path} "
                f"(set MPGRAND_SEQUENCE_FILE or pass --sequence-file)"
            )
        with self.path.open(encoding="utf-8") as handle:
            sequence = load_reliability_sequence(handle)
        logger.info(f"loaded reliability sequence from {self.path}")
        return sequence

    def describe(self) -> str:
        return str(self.path)


class FilesystemResultSink(ResultSink):
    """Writes campaign results under an output directory"""

    def __init__(self, out_dir: str | Path = "."):
        self.out_dir = Path(out_dir)

    def default_name(self, config: SimConfig, fmt: str) -> str:
        """bler_N{N}_M{M}_S{S}.csv or .json"""
        return f"bler_N{config.N}_M{config.M}_S{config.S}{RESULT_EXTENSIONS[fmt]}"

    def write(
        self,
        points: list[BlerPoint],
        fmt: str,
        config: SimConfig,
        destination: Optional[str] = None,
    ) -> str:
        """Write results, return the file path"""
        if fmt not in RESULT_EXTENSIONS:
            raise ValueError(f"unknown result format {fmt!r}; expected 'csv' or 'json'")
        path = Path(destination) if destination else self.out_dir / self.default_name(config, fmt)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            write_results(points, fmt, handle, config)
        logger.info(f"wrote {len(points)} BLER points to {path}")
        return str(path)

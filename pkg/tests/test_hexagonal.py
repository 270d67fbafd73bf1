"""
Minimal tests for hexagonal architecture

Smoke tests that the domain models, adapters, services and container fit together.
"""
import logging
import math

import numpy as np
import pytest

from mpgrand.adapters import BUNDLED_SEQUENCE, FileSequenceSource, FilesystemResultSink, LocalExecutor
from mpgrand.container import Container
from mpgrand.core.domain import BlerPoint, DecodeOutcome, SimConfig
from mpgrand.core.services import CodeService
from mpgrand.logs import DATE_FORMAT, LOG_FORMAT, MillisecondFormatter, configure_logging


class TestDomainModels:
    """Test domain models are simple dataclasses."""

    def test_polar_code_properties(self, code32):
        """N, K and rate derive from n and the info set."""
        assert (code32.N, code32.K, code32.rate) == (32, 16, 0.5)

    def test_empty_bler_point(self):
        """Derived rates are zero before any trial."""
        point = BlerPoint(ebn0_db=1.0)
        assert point.bler == 0.0
        assert point.mean_queries == 0.0
        assert point.uncoded_bler == 0.0

    def test_outcome_values(self):
        assert DecodeOutcome("abandoned") is DecodeOutcome.ABANDONED


class TestAdapters:
    """Filesystem and executor adapters."""

    def test_bundled_sequence_is_default(self):
        source = FileSequenceSource()
        assert source.describe() == str(BUNDLED_SEQUENCE)
        assert len(source.load()) == 1024

    def test_missing_sequence_file(self, tmp_path):
        """The error names both ways to point at a different file."""
        source = FileSequenceSource(tmp_path / "missing.txt")
        with pytest.raises(FileNotFoundError, match="MPGRAND_SEQUENCE_FILE"):
            source.load()

    def test_result_sink_default_name(self, tmp_path):
        sink = FilesystemResultSink(tmp_path / "out")
        config = SimConfig(n=5, M=16, S=8, ebn0_grid=(0.0,))
        path = sink.write([BlerPoint(ebn0_db=0.0)], "csv", config)
        assert path == str(tmp_path / "out" / "bler_N32_M16_S8.csv")
        assert (tmp_path / "out" / "bler_N32_M16_S8.csv").read_text().startswith("ebn0_db,")

    def test_result_sink_explicit_destination(self, tmp_path):
        sink = FilesystemResultSink(tmp_path)
        config = SimConfig(n=5, M=16, S=8, ebn0_grid=(0.0,))
        path = sink.write([], "json", config, str(tmp_path / "nested" / "run.json"))
        assert path.endswith("run.json")
        assert '"points": []' in (tmp_path / "nested" / "run.json").read_text()

    def test_result_sink_rejects_unknown_format(self, tmp_path):
        config = SimConfig(n=5, M=16, S=8, ebn0_grid=(0.0,))
        with pytest.raises(ValueError, match="unknown result format"):
            FilesystemResultSink(tmp_path).write([], "xml", config)

    def test_executor_keeps_order(self):
        assert list(LocalExecutor(1).map(abs, [-3, 1, -2])) == [3, 1, 2]
        assert list(LocalExecutor(2).map(abs, [-3, 1, -2])) == [3, 1, 2]

    def test_executor_needs_a_worker(self):
        with pytest.raises(ValueError):
            LocalExecutor(0)


class TestServices:
    """Use cases wired against real adapters."""

    def test_code_service_loads_sequence_once(self, mocker):
        source = FileSequenceSource()
        spy = mocker.spy(source, "load")
        service = CodeService(source)
        assert service.execute(5) is service.execute(5)
        service.execute(6)
        assert spy.call_count == 1

    def test_gate_report_service(self):
        report = Container().gate_report.execute(5)
        assert (report.and_gates, report.xor_gates, report.parallel_steps) == (136, 49, 5)

    def test_decode_one_defaults_to_zero_word(self):
        trace = Container().decode_one.execute(n=5, M=16, S=2, ebn0_db=math.inf)
        assert not trace.transmitted.any()
        assert trace.sigma == 0.0
        assert trace.recovered

    def test_decode_one_encodes_info(self):
        trace = Container().decode_one.execute(n=5, M=4, S=2, ebn0_db=math.inf, info_hex="ffff")
        assert trace.recovered
        assert trace.result.info.all()

    def test_decode_one_rejects_both_inputs(self):
        with pytest.raises(ValueError, match="not both"):
            Container().decode_one.execute(n=5, M=16, S=2, ebn0_db=0.0, codeword_hex="0" * 8, info_hex="0000")

    def test_decode_one_rejects_non_codeword(self):
        with pytest.raises(ValueError, match="not a codeword"):
            Container().decode_one.execute(n=5, M=16, S=2, ebn0_db=0.0, codeword_hex="00000001")

    def test_decode_one_seed_replays(self):
        service = Container().decode_one
        a = service.execute(n=5, M=16, S=3, ebn0_db=2.0, seed=11)
        b = service.execute(n=5, M=16, S=3, ebn0_db=2.0, seed=11)
        assert np.array_equal(a.received, b.received)
        assert a.result.queries_checked == b.result.queries_checked

    def test_pattern_space_covers_every_pair(self):
        rows = Container().pattern_space.execute(8)
        assert len(rows) == 36
        assert {(r.N, r.M) for r in rows} == {(1 << n, M) for n in range(5, 11) for M in (4, 16, 64, 256, 1024, 4096)}


class TestContainer:
    """Test dependency injection container."""

    def test_container_creates_all_services(self, tmp_path):
        """Test container initializes all dependencies."""
        container = Container(workers=3, out_dir=tmp_path)

        # Check adapters exist
        assert container.sequence is not None
        assert container.executor.workers == 3
        assert container.sink.out_dir == tmp_path

        # Check services exist
        assert container.codes is not None
        assert container.gate_report is not None
        assert container.simulate is not None
        assert container.decode_one is not None
        assert container.pattern_space is not None

    def test_services_share_the_code_cache(self):
        container = Container()
        assert container.gate_report.codes is container.codes
        assert container.simulate.codes is container.codes
        assert container.decode_one.codes is container.codes


class TestHandlers:
    """Test handlers use the container."""

    def test_handlers_initialization(self):
        """Test handlers can be created."""
        from mpgrand.handlers import Handlers

        container = Container()
        handlers = Handlers(container)

        assert handlers.container is container


class TestLogging:
    """Stderr logging setup."""

    def test_millisecond_timestamps(self):
        formatter = MillisecondFormatter(LOG_FORMAT, datefmt=DATE_FORMAT)
        record = logging.LogRecord("x", logging.INFO, __file__, 1, "hello", None, None)
        record.created = 0.25
        assert formatter.format(record) == "[1970/01/01 00:00:00:2500] [INFO] hello"

    def test_unknown_level(self):
        with pytest.raises(ValueError, match="unknown log level"):
            configure_logging("LOUD")

"""
Command line surface: argument parsing, handlers and exit codes
"""
import argparse
import json
import logging
import math

import pytest

from mpgrand.cli import ebn0_grid, ebn0_value, get_workers, main, seed_value
from mpgrand.container import Container
from mpgrand.handlers import Handlers


@pytest.fixture(autouse=True)
def restore_root_logger():
    """main() installs its own stderr handler; put the old ones back."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def handlers(tmp_path):
    return Handlers(Container(out_dir=tmp_path))


class TestArgumentTypes:
    """Custom argparse types."""

    @pytest.mark.parametrize("text,expected", [
        ("0:2:8", [0.0, 2.0, 4.0, 6.0, 8.0]),
        ("0,1.5,3:1:5", [0.0, 1.5, 3.0, 4.0, 5.0]),
        ("0:0.1:0.3", [0.0, 0.1, 0.2, 0.3]),
        ("4", [4.0]),
        ("-2:1:-1", [-2.0, -1.0]),
    ])
    def test_grid(self, text, expected):
        assert ebn0_grid(text) == pytest.approx(expected)

    @pytest.mark.parametrize("text", ["8:2:0", "0:0:8", "0:-1:8", "0:2", "a", "", "1,,2", "inf", "0:1:inf"])
    def test_bad_grid(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            ebn0_grid(text)

    def test_single_value_accepts_inf(self):
        assert ebn0_value("inf") == math.inf
        assert ebn0_value("-3.5") == -3.5

    @pytest.mark.parametrize("text", ["nan", "-inf", "loud"])
    def test_bad_single_value(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            ebn0_value(text)

    def test_seed_range(self):
        assert seed_value(str(2**64 - 1)) == 2**64 - 1
        with pytest.raises(argparse.ArgumentTypeError):
            seed_value(str(2**64))

    def test_workers_from_env(self, monkeypatch):
        monkeypatch.setenv("MPGRAND_WORKERS", "4")
        assert get_workers() == 4
        monkeypatch.setenv("MPGRAND_WORKERS", "many")
        assert get_workers() == 1


class TestHandlers:
    """Async handlers return success/error dicts."""

    @pytest.mark.asyncio
    async def test_gates_single(self, handlers):
        result = await handlers.gates(n=5)
        assert result["success"]
        [report] = result["reports"]
        assert report["steps"] == 5
        assert report["and_gates"] == 136
        assert set(report["deltas"].values()) == {0}

    @pytest.mark.asyncio
    async def test_gates_all(self, handlers):
        result = await handlers.gates()
        assert [r["steps"] for r in result["reports"]] == [5, 6, 7, 8, 9, 10]

    @pytest.mark.asyncio
    async def test_code_with_h(self, handlers):
        result = await handlers.code(n=5, show_h=True)
        assert result["info_set"][0] == 7
        assert result["h_rows"][0] == "1" * 8 + "." * 24
        assert result["row_weights"] == [8] * 15 + [16]

    @pytest.mark.asyncio
    async def test_sequence_missing_file(self, tmp_path):
        result = await Handlers(Container(sequence_file=tmp_path / "nope.txt")).sequence()
        assert not result["success"]
        assert "MPGRAND_SEQUENCE_FILE" in result["error"]

    @pytest.mark.asyncio
    async def test_simulate_writes_file(self, handlers, tmp_path):
        result = await handlers.simulate(n=5, M=256, S=8, ebn0_grid=[math.inf], trials=5)
        assert result["success"]
        assert result["clamped"] and result["effective_cutoff"] == 4
        assert result["path"] == str(tmp_path / "bler_N32_M256_S8.csv")
        assert result["points"][0]["bler"] == 0.0

    @pytest.mark.asyncio
    async def test_simulate_sink_failure(self, handlers, mocker):
        mocker.patch.object(handlers.container.sink, "write", side_effect=OSError("disk full"))
        result = await handlers.simulate(n=5, M=16, S=1, ebn0_grid=[math.inf], trials=1)
        assert not result["success"]
        assert "disk full" in result["error"]

    @pytest.mark.asyncio
    async def test_decode_one_trace(self, handlers):
        result = await handlers.decode_one(n=5, M=16, S=2, ebn0_db=math.inf)
        assert result["success"]
        assert result["outcome"] == "decoded"
        assert result["recovered"]
        assert result["transmitted"] == "00000000"
        assert result["hard_bit_errors"] == 0
        assert len(result["symbols"]) == 8
        assert sum(s["selected"] for s in result["symbols"]) == 2
        assert result["tep_count"] <= result["tep_budget"] == 16
        assert result["latency_cycles"] == 18

    @pytest.mark.asyncio
    async def test_decode_one_bad_codeword(self, handlers):
        result = await handlers.decode_one(n=5, M=16, S=2, ebn0_db=0.0, codeword_hex="00000001")
        assert not result["success"]
        assert "not a codeword" in result["error"]

    @pytest.mark.asyncio
    async def test_pattern_space(self, handlers):
        result = await handlers.pattern_space(S=8)
        row = next(r for r in result["rows"] if (r["N"], r["M"]) == (32, 256))
        assert (row["L"], row["effective_cutoff"], row["latency_cycles"]) == (4, 4, 22)


class TestMain:
    """main() output and exit codes."""

    def test_no_command_prints_help(self, capsys):
        assert main([]) == 2
        assert "usage" in capsys.readouterr().out

    @pytest.mark.parametrize("argv", [
        ["gates", "--n", "4"],
        ["gates"],
        ["simulate", "--n", "5", "--mqam", "16", "--ebn0", "0", "--trials", "0"],
        ["simulate", "--n", "5", "--mqam", "8", "--ebn0", "0"],
        ["simulate", "--n", "5", "--mqam", "16", "--ebn0", "8:2:0"],
        ["decode-one", "--n", "5", "--mqam", "16", "--ebn0", "0", "--info", "zz"],
        ["decode-one", "--n", "5", "--mqam", "16", "--ebn0", "0", "--codeword", "123"],
        ["decode-one", "--n", "5", "--mqam", "16", "--ebn0", "0", "--info", "0000", "--codeword", "00000000"],
        ["pattern-space", "--s", "-1"],
    ])
    def test_usage_errors_exit_2(self, argv):
        with pytest.raises(SystemExit) as excinfo:
            main(argv)
        assert excinfo.value.code == 2

    def test_gates_all_json(self, capsys):
        assert main(["gates", "--all", "--format", "json"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert [r["steps"] for r in rows] == [5, 6, 7, 8, 9, 10]
        assert set(rows[0]) == {
            "n", "N", "and_gates", "xor_gates", "sparsity", "max_row_weight",
            "steps", "xor_ops", "heaviest_row", "reference", "deltas",
        }

    def test_gates_text(self, capsys):
        assert main(["gates", "--n", "5"]) == 0
        out = capsys.readouterr().out
        assert "GATE COST" in out
        assert "VS PUBLISHED" in out

    def test_decode_one_latency(self, capsys):
        assert main(["decode-one", "--n", "7", "--mqam", "1024", "--s", "8", "--ebn0", "inf"]) == 0
        out = capsys.readouterr().out
        assert "LATENCY:     34 cycles" in out
        assert "RECOVERED" in out

    def test_decode_one_latency_uses_clamped_cutoff(self, capsys):
        """N=32 on 256-QAM has four symbols, so S=8 is modeled as S'=4."""
        assert main(["decode-one", "--n", "5", "--mqam", "256", "--s", "8", "--ebn0", "inf"]) == 0
        out = capsys.readouterr().out
        assert "LATENCY:     22 cycles (2n + 2S' + 4, S'=4, requested S=8)" in out

    def test_simulate_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "run.csv"
        code = main([
            "simulate", "--n", "5", "--mqam", "16", "--s", "2", "--ebn0", "0,20",
            "--trials", "10", "--seed", "42", "--out", str(out),
        ])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("ebn0_db,trials,block_errors")
        assert len(lines) == 3
        assert lines[2].startswith("20,10,0,")
        assert f"PATH: {out}" in capsys.readouterr().out

    def test_simulate_output_ignores_worker_count(self, tmp_path):
        """One worker and eight workers write byte-identical files."""
        outputs = {}
        for workers in (1, 8):
            out = tmp_path / f"workers{workers}.json"
            assert main([
                "simulate", "--n", "5", "--mqam", "16", "--s", "2", "--ebn0", "0,4",
                "--trials", "600", "--seed", "42", "--workers", str(workers),
                "--format", "json", "--out", str(out),
            ]) == 0
            outputs[workers] = out.read_bytes()
        assert outputs[1] == outputs[8]
        assert json.loads(outputs[1])["points"][0]["trials"] == 600

    def test_missing_sequence_file_exits_1(self, tmp_path, capsys):
        assert main(["--sequence-file", str(tmp_path / "nope.txt"), "sequence"]) == 1
        assert capsys.readouterr().out.startswith("ERROR:")

    def test_pattern_space_table(self, capsys):
        assert main(["pattern-space", "--s", "8"]) == 0
        assert "SYMBOL ERROR PATTERN SPACE | S=8" in capsys.readouterr().out

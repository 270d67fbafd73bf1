"""
Parallel multiplier: syndromes, executed step counts and gate cost
"""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mpgrand.core.gf2 import as_bit_matrix, identity, mat_mul, mat_vec
from mpgrand.core.pmult import (
    ZeroRowError,
    ceil_log2,
    cost_report,
    index_rows,
    pmult,
    pmult_batch,
    syndrome_is_zero,
)
from mpgrand.reference import REFERENCE_GATES

# (and, xor, max row weight, steps, two-input additions)
GATE_TABLE = {
    5: (136, 49, 16, 5, 120),
    6: (322, 106, 22, 6, 290),
    7: (984, 247, 44, 7, 920),
    8: (2890, 562, 78, 8, 2762),
    9: (8322, 1247, 158, 9, 8066),
    10: (24828, 2758, 304, 10, 24316),
}


def _all_inputs(width):
    values = np.arange(1 << width, dtype=np.uint32)
    return ((values[:, None] >> np.arange(width - 1, -1, -1)) & 1).astype(np.uint8)


class TestSmallMatrices:
    """Hand-checkable cases."""

    def test_ceil_log2(self):
        assert [ceil_log2(w) for w in (1, 2, 3, 4, 5, 16, 17)] == [0, 1, 2, 2, 3, 4, 5]

    def test_identity_needs_one_step(self):
        rows = index_rows(identity(4))
        trace = pmult(rows, [1, 0, 1, 1])
        assert trace.syndrome.tolist() == [1, 0, 1, 1]
        assert trace.steps_executed == 1
        assert trace.and_gates == 4
        assert trace.xor_stages == 0
        assert trace.xor_ops == 0

    def test_all_ones(self):
        """Weight-4 rows: two halving rounds, three additions each."""
        rows = index_rows(np.ones((4, 4), dtype=np.uint8))
        trace = pmult(rows, [1, 1, 1, 1])
        assert trace.syndrome.tolist() == [0, 0, 0, 0]
        assert trace.steps_executed == 3
        assert trace.and_gates == 16
        assert trace.xor_stages == 8
        assert trace.xor_ops == 12
        assert pmult(rows, [1, 1, 1, 0]).syndrome.tolist() == [1, 1, 1, 1]

    def test_odd_weight_leftover_passes_through(self):
        rows = index_rows(as_bit_matrix([[1, 1, 1, 0, 0]]))
        trace = pmult(rows, [1, 0, 1, 1, 1])
        assert trace.syndrome.tolist() == [0]
        assert trace.steps_executed == 3
        assert trace.xor_ops == 2

    def test_zero_row_rejected(self):
        with pytest.raises(ZeroRowError, match="row 1 of H is all zero"):
            index_rows([[1, 0], [0, 0]])

    def test_dimension_mismatch(self):
        rows = index_rows(identity(4))
        with pytest.raises(ValueError, match="dimension mismatch"):
            pmult(rows, [1, 0, 1])
        with pytest.raises(ValueError, match="dimension mismatch"):
            pmult_batch(rows, np.zeros((2, 5), dtype=np.uint8))

    def test_exhaustive_against_matrix_product(self):
        """100 random 4x8 matrices, every one of the 256 inputs."""
        rng = np.random.default_rng(0)
        inputs = _all_inputs(8)
        tested = 0
        while tested < 100:
            h = rng.integers(0, 2, size=(4, 8), dtype=np.uint8)
            if not h.any(axis=1).all():
                continue
            syndromes, _ = pmult_batch(index_rows(h), inputs)
            assert np.array_equal(syndromes, mat_mul(inputs, h.T))
            tested += 1

    def test_syndrome_is_zero(self):
        assert syndrome_is_zero(np.array([[0, 0], [0, 1], [1, 1]])).tolist() == [True, False, False]


class TestCodeMatrices:
    """Parity-check matrices of the polar codes."""

    @pytest.mark.parametrize("n", range(5, 11))
    def test_gate_table(self, codes, n):
        code = codes[n]
        report = cost_report(index_rows(code.parity_check), code.N - code.K, code.N)
        and_gates, xor_gates, max_weight, steps, xor_ops = GATE_TABLE[n]
        assert report.n == n
        assert (report.rows, report.cols) == (code.N // 2, code.N)
        assert report.and_gates == and_gates
        assert report.xor_gates == xor_gates
        assert report.max_row_weight == max_weight
        assert report.parallel_steps == steps
        assert report.xor_ops == xor_ops
        assert report.heaviest_row == code.N // 2 - 1
        assert round(report.sparsity * 100, 2) == REFERENCE_GATES[n].sparsity_percent

    @pytest.mark.parametrize("n", range(5, 11))
    def test_executed_counters_match_report(self, codes, n):
        """Counters depend on H only, never on the input word."""
        code = codes[n]
        rows = index_rows(code.parity_check)
        report = cost_report(rows, code.N - code.K, code.N)
        rng = np.random.default_rng(n)
        traces = [pmult(rows, rng.integers(0, 2, size=code.N, dtype=np.uint8)) for _ in range(3)]
        traces.append(pmult(rows, np.zeros(code.N, dtype=np.uint8)))
        for trace in traces:
            assert trace.steps_executed == report.parallel_steps
            assert trace.and_gates == report.and_gates
            assert trace.xor_stages == report.xor_gates
            assert trace.xor_ops == report.xor_ops

    @pytest.mark.parametrize("n", range(5, 11))
    def test_random_words_match_matrix_product(self, codes, n):
        code = codes[n]
        rows = index_rows(code.parity_check)
        c = np.random.default_rng(100 + n).integers(0, 2, size=(64, code.N), dtype=np.uint8)
        syndromes, steps = pmult_batch(rows, c)
        assert steps == n
        for word, syndrome in zip(c, syndromes):
            assert np.array_equal(syndrome, mat_vec(code.parity_check, word))

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(5, 11))
    def test_ten_thousand_words(self, codes, n):
        code = codes[n]
        c = np.random.default_rng(n).integers(0, 2, size=(10_000, code.N), dtype=np.uint8)
        syndromes, _ = pmult_batch(index_rows(code.parity_check), c)
        assert np.array_equal(syndromes, mat_mul(c, code.parity_check.T))

    def test_codewords_have_zero_syndrome(self, code32):
        rows = index_rows(code32.parity_check)
        syndromes, _ = pmult_batch(rows, code32.info_generator)
        assert syndrome_is_zero(syndromes).all()


class TestLinearity:
    @given(st.data())
    @settings(max_examples=50, deadline=None)
    def test_syndrome_of_sum_is_sum_of_syndromes(self, data):
        h = data.draw(arrays(np.uint8, (5, 12), elements=st.integers(0, 1)))
        h[:, 0] = 1
        a = data.draw(arrays(np.uint8, 12, elements=st.integers(0, 1)))
        b = data.draw(arrays(np.uint8, 12, elements=st.integers(0, 1)))
        rows = index_rows(h)
        assert np.array_equal(pmult(rows, a ^ b).syndrome, pmult(rows, a).syndrome ^ pmult(rows, b).syndrome)

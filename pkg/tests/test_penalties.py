import itertools

import pytest

from helpers import assignments, naive
from qudokit.models import DimensionError, VariableSpace
from qudokit.penalties import (PAIR_KINDS, TQUDO_PAIR_BUILDERS, anti_implication_tqudo, bounded_digits,
                               count_eq_penalty, digit_count, implication_tqudo, non_coincidence_tqudo,
                               non_equality_tqudo, nonzero_count_eq_tqudo, qubo_pair_constraints, squared_linear,
                               weighted_count_eq_penalty, weighted_leq_penalty)

LAM = 2.5


def test_squared_linear_matches_direct_square():
    sp = VariableSpace((3, 4, 2))
    m = squared_linear(sp, {0: 2.0, 2: -1.5}, -1.0, LAM)
    for x in assignments(sp.dims):
        assert naive(m, x) == pytest.approx(LAM * (-1.0 + 2.0 * x[0] - 1.5 * x[2]) ** 2)


class TestCountEq:
    def test_binary_examples(self):
        m = count_eq_penalty(VariableSpace.binary(2), [0, 1], 1, 1.0)
        assert naive(m, (1, 0)) == 0
        assert naive(m, (1, 1)) == 1

    def test_dary_sum(self):
        m = count_eq_penalty(VariableSpace((3, 3)), [0, 1], 4, 1.0)
        assert naive(m, (2, 2)) == 0

    def test_weighted(self):
        m = weighted_count_eq_penalty(VariableSpace((3, 3)), [0, 1], [2, 3], 7, LAM)
        for x in assignments((3, 3)):
            assert naive(m, x) == pytest.approx(LAM * (7 - 2 * x[0] - 3 * x[1]) ** 2)

    def test_rejects_nonpositive_lambda(self):
        with pytest.raises(ValueError):
            count_eq_penalty(VariableSpace.binary(2), [0, 1], 1, 0.0)


class TestSlack:
    def test_bounded_digits_for_five(self):
        assert bounded_digits(5, 2) == [(1, 2), (2, 2), (2, 2)]

    @pytest.mark.parametrize("upper,base", [(u, b) for u in range(0, 40) for b in (2, 3, 4, 5)])
    def test_digits_cover_range(self, upper, base):
        digits = bounded_digits(upper, base)
        reach = {sum(c * v for (c, _), v in zip(digits, vals)) for vals in assignments([d for _, d in digits])}
        assert set(range(upper + 1)) <= reach
        # overshoot stays below one top-digit step
        assert max(reach) < upper + base - 1 or max(reach) == upper
        assert digit_count(upper, base) == len(digits)

    def test_digit_count_formula(self):
        for upper in range(1, 200):
            for base in (2, 3, 5):
                k = 0
                while base ** k < upper + 1:
                    k += 1
                assert digit_count(upper, base) == k

    def test_leq_single_variable(self):
        sp = VariableSpace.binary(1)
        m, slack = weighted_leq_penalty(sp, [0], [1], 1, 2, LAM)
        assert len(slack) == 1 and slack[0].index == 1
        assert naive(m, (0, 1)) == 0
        assert naive(m, (1, 0)) == 0
        assert naive(m, (1, 1)) == LAM

    def test_leq_slack_names(self):
        sp = VariableSpace((3,), ("a",))
        m, slack = weighted_leq_penalty(sp, [0], [2], 3, 2, 1.0)
        assert m.space.names[0] == "a" and len(m.space.names) == 1 + len(slack)


class TestNonzeroCount:
    def test_examples(self):
        sp = VariableSpace((3, 3))
        m = nonzero_count_eq_tqudo(sp, [0, 1], 1, LAM)
        assert naive(m, (2, 0)) == 0
        assert naive(m, (1, 2)) == LAM
        assert naive(m, (0, 0)) == LAM

    def test_target_too_large(self):
        with pytest.raises(ValueError):
            nonzero_count_eq_tqudo(VariableSpace((3, 3)), [0, 1], 3, 1.0)


class TestPairs:
    sp = VariableSpace((3, 3))

    def test_non_coincidence(self):
        m = non_coincidence_tqudo(self.sp, 0, 1, 2, 1, LAM)
        assert naive(m, (2, 1)) == LAM
        assert naive(m, (2, 0)) == 0

    def test_non_equality(self):
        m = non_equality_tqudo(self.sp, 0, 1, 0, 0, LAM)
        assert naive(m, (1, 2)) == LAM
        assert naive(m, (0, 2)) == 0
        assert len(m.entries) == 4

    def test_implication(self):
        m = implication_tqudo(self.sp, 0, 1, 1, 2, LAM)
        assert naive(m, (1, 0)) == LAM
        assert naive(m, (1, 2)) == 0
        assert all(naive(m, (0, b)) == 0 for b in range(3))

    def test_anti_implication(self):
        m = anti_implication_tqudo(self.sp, 0, 1, 1, 2, LAM)
        assert naive(m, (0, 2)) == LAM
        assert naive(m, (0, 1)) == 0
        assert all(naive(m, (1, b)) == 0 for b in range(3))

    def test_value_out_of_range(self):
        with pytest.raises(DimensionError):
            non_coincidence_tqudo(self.sp, 0, 1, 3, 0, 1.0)

    def test_same_variable_rejected(self):
        with pytest.raises(ValueError):
            implication_tqudo(self.sp, 1, 1, 0, 0, 1.0)

    def test_qubo_non_coincidence_is_product(self):
        m = qubo_pair_constraints(VariableSpace.binary(2), "non_coincidence", 0, 1, 1, 1, LAM)
        assert dict(m.quad) == {(0, 1): LAM}
        assert m.offset == 0 and not any(m.linear)

    def test_qubo_implication_expansion(self):
        m = qubo_pair_constraints(VariableSpace.binary(2), "implication", 0, 1, 1, 1, LAM)
        for x in assignments((2, 2)):
            assert naive(m, x) == LAM * x[0] * (1 - x[1])

    @pytest.mark.parametrize("kind,a,b", list(itertools.product(PAIR_KINDS, (0, 1), (0, 1))))
    def test_qubo_matches_tqudo(self, kind, a, b):
        sp = VariableSpace.binary(2)
        q = qubo_pair_constraints(sp, kind, 0, 1, a, b, LAM)
        t = TQUDO_PAIR_BUILDERS[kind](sp, 0, 1, a, b, LAM)
        for x in assignments((2, 2)):
            assert naive(q, x) == naive(t, x)

    def test_qubo_pair_needs_binary(self):
        with pytest.raises(DimensionError):
            qubo_pair_constraints(self.sp, "implication", 0, 1, 1, 1, 1.0)
        with pytest.raises(ValueError):
            qubo_pair_constraints(VariableSpace.binary(2), "nonsense", 0, 1, 1, 1, 1.0)

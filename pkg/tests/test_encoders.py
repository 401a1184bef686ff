import itertools
import math

import pytest

from helpers import assignments, naive
from qudokit.encoders import (encode_hashi, encode_inshi, encode_kakuro, encode_knapsack, encode_peg, encode_queens,
                              encode_tsp, prime_list, prime_separation)
from qudokit.instances import (HashiInstance, InfeasibleInstanceError, InshiInstance, KakuroInstance,
                               KnapsackInstance, PegInstance, PegLayout, Portion, QueensInstance, TspInstance)
from qudokit.solvers import solve_exhaustive
from qudokit.validators import trajectory_from_moves


def zero_set(enc):
    return [x for x in assignments(enc.model.space.dims) if naive(enc.model, x) <= enc.feasibility_threshold]


class TestKnapsack:
    def test_flat_single_item(self):
        enc = encode_knapsack(KnapsackInstance((1,), (1,), (1,), 1), "qubo_flat")
        assert enc.num_vars == 2
        res = solve_exhaustive(enc.model)
        assert res.best_cost == -1
        assert enc.decode(res.best_assignment) == [1]

    def test_two_items_optimum(self):
        enc = encode_knapsack(KnapsackInstance((3, 4), (2, 3), (1, 1), 5), "qudo")
        res = solve_exhaustive(enc.model)
        assert enc.decode(res.best_assignment) == [1, 1]

    def test_qudo_main_variable_dimension(self):
        enc = encode_knapsack(KnapsackInstance((1,), (1,), (4,), 3), "qudo", slack_base=5)
        assert enc.model.space.dims[0] == 5
        assert enc.info["main_vars"] == 1

    @pytest.mark.parametrize("Q", range(1, 33))
    def test_qudo_variable_count(self, Q):
        enc = encode_knapsack(KnapsackInstance((1,), (1,), (1,), Q), "qudo", slack_base=2)
        assert enc.num_vars == 1 + math.ceil(math.log2(Q + 1))

    def test_condensed_count(self):
        enc = encode_knapsack(KnapsackInstance((1, 2), (1, 1), (4, 8), 7), "qubo_condensed")
        assert enc.info["main_vars"] == 3 + 4
        assert enc.model.space.is_binary

    def test_dary_count(self):
        # covering [0, c] needs ceil(log_d(c + 1)) digits: 3 for c = 9, 2 for c = 3 in base 3
        enc = encode_knapsack(KnapsackInstance((1, 2), (1, 1), (9, 3), 8), "qudo_dary", slack_base=3)
        assert enc.info["main_vars"] == 3 + 2
        assert enc.info["slack_vars"] == 2

    def test_variant_preconditions(self):
        with pytest.raises(ValueError):
            encode_knapsack(KnapsackInstance((1,), (1,), (3,), 3), "qubo_condensed")
        with pytest.raises(ValueError):
            encode_knapsack(KnapsackInstance((1,), (1,), (4,), 3), "qudo_dary", slack_base=3)
        with pytest.raises(ValueError):
            encode_knapsack(KnapsackInstance((1,), (1,), (4,), 3), "nope")


class TestHashi:
    def test_pair_single(self):
        enc = encode_hashi(HashiInstance(((0, 0, 1), (0, 3, 1))))
        assert enc.num_vars == 1 and enc.model.space.dims == (3,)
        assert naive(enc.model, (1,)) == 0

    def test_pair_double(self):
        enc = encode_hashi(HashiInstance(((0, 0, 2), (0, 3, 2))))
        assert naive(enc.model, (2,)) == 0
        assert naive(enc.model, (1,)) == 2

    def test_plus_crossing(self):
        inst = HashiInstance(((0, 1, 1), (2, 1, 1), (1, 0, 1), (1, 2, 1)))
        enc = encode_hashi(inst, lam_cross=3.0)
        assert enc.info["crossings"] == [(0, 1)]
        assert naive(enc.model, (1, 1)) == 3.0

    def test_isolated_node(self):
        with pytest.raises(InfeasibleInstanceError):
            encode_hashi(HashiInstance(((0, 0, 1), (1, 1, 1))))


class TestTsp:
    E3 = ((0, 1, 1), (1, 0, 1), (1, 1, 0))

    def test_prime_list(self):
        assert prime_list(6) == [1, 2, 3, 5, 7, 11]

    def test_prime_penalty_examples(self):
        enc = encode_tsp(TspInstance(self.E3), "prime_log", lam=1.0)
        c = enc.constraint_model
        assert naive(c, (0, 1, 2)) == pytest.approx(0, abs=1e-12)
        assert naive(c, (1, 1, 2)) == pytest.approx((math.log2(12) - math.log2(6)) ** 2)
        assert naive(c, (1, 1, 2)) == pytest.approx(1.0)

    def test_variable_counts(self):
        inst = TspInstance(self.E3)
        assert encode_tsp(inst).model.space.dims == (3, 3, 3)
        assert encode_tsp(inst, fix_first=True).model.space.dims == (3, 3)

    def test_fixed_first_decodes_with_zero(self):
        enc = encode_tsp(TspInstance(self.E3), fix_first=True)
        assert enc.decode((2, 1)) == [0, 2, 1]

    def test_pairwise_minimum_is_shortest_tour(self):
        E = ((0, 3, 1, 5), (3, 0, 6, 2), (1, 6, 0, 4), (5, 2, 4, 0))
        enc = encode_tsp(TspInstance(E), "pairwise_delta")
        res = solve_exhaustive(enc.model)
        best = min(sum(E[p[t]][p[(t + 1) % 4]] for t in range(4)) for p in itertools.permutations(range(4)))
        assert res.best_cost == best

    def test_separation_positive(self):
        for V in range(2, 7):
            assert prime_separation(V) > 0

    def test_missing_edge_cost(self):
        inst = TspInstance(((0, None), (1, 0)))
        assert inst.edge_cost(0, 0, 1) == 2.0
        assert TspInstance(((0, None), (1, 0)), missing_edge_cost=9).edge_cost(0, 0, 1) == 9.0


class TestQueens:
    def test_single(self):
        enc = encode_queens(QueensInstance(1))
        assert [x for x in assignments(enc.model.space.dims) if naive(enc.model, x) == 0] == [(0,)]

    def test_four(self):
        enc = encode_queens(QueensInstance(4))
        assert enc.model.space.dims == (4, 4, 4, 4)
        assert sorted(zero_set(enc)) == [(1, 3, 0, 2), (2, 0, 3, 1)]

    def test_adjacent_diagonal(self):
        enc = encode_queens(QueensInstance(4), lam=2.0)
        for a, b in assignments((4, 4)):
            assert naive(enc.model, (0, 1, a, b)) >= 2.0


class TestGrids:
    def test_kakuro_portion(self):
        cells = ((0, 0), (0, 1))
        enc = encode_kakuro(KakuroInstance(cells, (Portion(cells, 3),), (), max_digit=2), 1.5, 2.0)
        assert sorted(enc.decode(x)[(0, 0)] for x in zero_set(enc)) == [1, 2]
        assert naive(enc.model, (0, 0)) == 1.5 + 2.0

    def test_kakuro_empty(self):
        enc = encode_kakuro(KakuroInstance((), (), ()))
        assert enc.num_vars == 0 and enc.model.evaluate(()) == 0

    def test_kakuro_unreachable(self):
        cells = ((0, 0), (0, 1))
        with pytest.raises(InfeasibleInstanceError):
            encode_kakuro(KakuroInstance(cells, (Portion(cells, 2),), (), max_digit=9))

    def test_inshi_single(self):
        enc = encode_inshi(InshiInstance(1, (Portion(((0, 0),), 1),)))
        assert [enc.decode(x) for x in zero_set(enc)] == [[[1]]]

    def test_inshi_two(self):
        regions = (Portion(((0, 0), (0, 1)), 3), Portion(((1, 0),), 2), Portion(((1, 1),), 1))
        enc = encode_inshi(InshiInstance(2, regions))
        assert [enc.decode(x) for x in zero_set(enc)] == [[[1, 2], [2, 1]]]

    def test_inshi_repeat_cost(self):
        enc = encode_inshi(InshiInstance(2, (Portion(((0, 0), (0, 1), (1, 0), (1, 1)), 6),)), lam_rep=4.0)
        assert naive(enc.model, (0, 0, 1, 1)) >= 4.0

    def test_inshi_unreachable(self):
        with pytest.raises(InfeasibleInstanceError):
            encode_inshi(InshiInstance(1, (Portion(((0, 0),), 2),)))


class TestPeg:
    inst = PegInstance(((0, 0), (0, 1), (0, 2)), (0, 2))

    def test_single_jump_trajectory(self):
        enc = encode_peg(self.inst)
        x = trajectory_from_moves(self.inst, [((0, 0), (0, 2))])
        assert naive(enc.model, x) == 0
        for i in range(len(x)):
            y = list(x)
            y[i] ^= 1
            assert naive(enc.model, y) >= 1

    def test_off_board_actions_not_created(self):
        layout = PegLayout.build(self.inst)
        assert set(layout.action_index) == {((0, 0), 0, (0, 2)), ((0, 2), 0, (0, 1))}

    def test_max_order(self):
        # a * (x x (1 - x) - 1)**2 is nominally order 7; folding x**2 = x leaves order 4
        inst = PegInstance(tuple((0, c) for c in range(6)), (0, 1))
        enc = encode_peg(inst)
        assert enc.model.max_order == 4
        assert enc.info["timesteps"] == 5

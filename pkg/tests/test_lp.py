"""Exact simplex tests against hand-solved cone problems."""

from fractions import Fraction as Q

import pytest

from kstab.lp import Infeasible, Unbounded, in_cone, max_shift, solve_equality_lp


class TestSimplex:
    def test_simple_max(self):
        # max x + y st x + 2y = 4, x,y >= 0 -> x=4
        res = solve_equality_lp([[1, 2]], [4], [1, 1])
        assert res.value == 4

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            solve_equality_lp([[1, 1], [1, 1]], [1, 2], [0, 0])

    def test_redundant_rows_ok(self):
        res = solve_equality_lp([[1, 1], [2, 2]], [1, 2], [1, 0])
        assert res.value == 1

    def test_unbounded(self):
        with pytest.raises(Unbounded):
            solve_equality_lp([[1, -1]], [0], [1, 0])


class TestCone:
    def test_membership(self):
        gens = [(1, 0), (0, 1)]
        assert in_cone(gens, (3, 2)) is not None
        assert in_cone(gens, (-1, 2)) is None

    def test_membership_nontrivial(self):
        gens = [(1, 1), (1, -1)]
        coeffs = in_cone(gens, (2, 0))
        assert coeffs == (1, 1)
        assert in_cone(gens, (0, 1)) is None

    def test_empty_generator_list(self):
        assert in_cone([], (0, 0)) == ()
        assert in_cone([], (1, 0)) is None

    def test_max_shift_orthant(self):
        # (3,2) - s(1,1) stays in the positive orthant until s = 2
        res = max_shift((3, 2), (-1, -1), [(1, 0), (0, 1)])
        assert res.value == 2

    def test_max_shift_unbounded(self):
        with pytest.raises(Unbounded):
            max_shift((1, 1), (1, 0), [(1, 0), (0, 1)])

    def test_max_shift_rational_answer(self):
        # (4,-1)-type threshold: 4 - s*1 >= 0 paired against gen (2,1)
        res = max_shift((4, 6), (-2, -1), [(1, 0), (0, 1)])
        assert res.value == 2
        res = max_shift((4, 6), (-3, -1), [(1, 0), (0, 1)])
        assert res.value == Q(4, 3)

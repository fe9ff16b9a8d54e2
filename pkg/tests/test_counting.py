"""Exact lattice counting, expanding-shell search, and the prediction
comparison table."""

import random

import pytest

from cubiclab import count_solutions, smallest_solution, symmetrize
from cubiclab.budget import BudgetExceeded
from cubiclab.counting import (asymptotic_compare, integer_roots_cubic,
                               naive_count)
from conftest import random_poly


class TestIntegerRootsCubic:
    def test_identically_zero(self):
        assert integer_roots_cubic(0, 0, 0, 0) == ("all", None)

    def test_constant(self):
        assert integer_roots_cubic(0, 0, 0, 5) == ("roots", [])

    def test_linear(self):
        assert integer_roots_cubic(0, 0, 3, -6) == ("roots", [2])
        assert integer_roots_cubic(0, 0, 3, -7) == ("roots", [])

    def test_quadratic(self):
        assert integer_roots_cubic(0, 1, -3, 2) == ("roots", [1, 2])
        assert integer_roots_cubic(0, 1, 0, -2) == ("roots", [])
        assert integer_roots_cubic(0, 2, -3, 1) == ("roots", [1])

    def test_cubic(self):
        # (t - 1)(t + 2)(t - 3) = t^3 - 2t^2 - 5t + 6
        assert integer_roots_cubic(1, -2, -5, 6) == ("roots", [-2, 1, 3])
        assert integer_roots_cubic(1, 0, 0, -8) == ("roots", [2])
        assert integer_roots_cubic(1, 0, 0, 2) == ("roots", [])

    def test_zero_constant_term(self):
        assert integer_roots_cubic(1, -1, 0, 0) == ("roots", [0, 1])

    def test_matches_scan(self):
        rng = random.Random(0)
        for _ in range(300):
            a, b, c, d = (rng.randint(-6, 6) for _ in range(4))
            kind, roots = integer_roots_cubic(a, b, c, d)
            scan = [t for t in range(-260, 261)
                    if ((a * t + b) * t + c) * t + d == 0]
            if kind == "all":
                assert len(scan) == 521
            else:
                assert roots == scan


class TestCountSolutions:
    def test_fermat_box(self, fermat):
        res = count_solutions(fermat, 10)
        assert res.count == 61

    def test_single_variable(self):
        phi = symmetrize(1, {(0, 0, 0): 1}, const=1)[0]
        assert count_solutions(phi, 2).count == 1  # x = -1

    def test_watson_empty(self, watson5):
        assert count_solutions(watson5, 8).count == 0

    def test_sample_are_solutions(self, fermat):
        res = count_solutions(fermat, 6)
        assert res.solutions_sample
        for x in res.solutions_sample:
            assert fermat.evaluate(list(x)) == 0
        assert res.count >= len(res.solutions_sample)

    def test_matches_naive_on_random(self):
        rng = random.Random(1)
        degenerate_seen = 0
        for trial in range(50):
            n = rng.randint(1, 4)
            force = trial % 8 == 0
            phi = random_poly(rng, n, force_degenerate_leading=force)
            if phi.c(0, 0, 0) == 0:
                degenerate_seen += 1
            P = rng.randint(1, 12 if n <= 3 else 6)
            assert count_solutions(phi, P).count == naive_count(phi, P)
        assert degenerate_seen >= 5

    def test_box_scaling(self, fermat):
        res = count_solutions(fermat, 5, box=[(-2, 2)] * 3)
        assert res.count == naive_count(fermat, 5, box=[(-2, 2)] * 3)

    def test_budget_guard(self, fermat):
        with pytest.raises(BudgetExceeded):
            count_solutions(fermat, 1000, budget=100)


class TestSmallestSolution:
    def test_sum_thirtysix(self):
        phi = symmetrize(3, {(0, 0, 0): 1, (1, 1, 1): 1, (2, 2, 2): 1},
                         const=-36)[0]
        rep = smallest_solution(phi, 5)
        assert rep.shell == 3
        assert sorted(abs(v) for v in rep.found) == [1, 2, 3]
        assert phi.evaluate(list(rep.found)) == 0

    def test_cube_root(self):
        phi = symmetrize(1, {(0, 0, 0): 1}, const=-8)[0]
        rep = smallest_solution(phi, 5)
        assert rep.found == (2,)

    def test_exhaustion(self):
        phi = symmetrize(1, {(0, 0, 0): 2}, const=1)[0]  # 2x^3 + 1 = 0
        rep = smallest_solution(phi, 20)
        assert rep.found is None
        assert rep.exhausted_to == 20

    def test_origin(self, fermat):
        assert smallest_solution(fermat, 2).found == (0, 0, 0)

    def test_consistent_with_counts(self):
        phi = symmetrize(2, {(0, 0, 0): 1, (1, 1, 1): 1}, const=-9)[0]
        rep = smallest_solution(phi, 4)
        if rep.found is None:
            for s in range(1, 5):
                assert count_solutions(phi, s).count == 0
        else:
            assert count_solutions(phi, rep.shell).count > 0
            if rep.shell > 1:
                assert count_solutions(phi, rep.shell - 1).count == 0


class TestAsymptoticCompare:
    def test_violation_gives_zero_prediction(self):
        phi = symmetrize(1, {(0, 0, 0): 2}, const=1)[0]
        rows = asymptotic_compare(phi, [(-1.0, 1.0)], [3, 5], P0=3, Z=4.0)
        for row in rows:
            assert row["count"] == 0
            assert row["prediction"] == 0.0
            assert row["ratio"] is None

    def test_toy_rows_finite(self, fermat):
        box = [(0.2, 2.2), (0.2, 2.2), (0.2, 2.2)]
        rows = asymptotic_compare(fermat, box, [5, 10], P0=3, Z=4.0,
                                  budget=40_000_000)
        assert [r["P"] for r in rows] == [5, 10]
        for row in rows:
            assert row["prediction"] > 0
            assert row["count"] >= 0

    def test_nested_monotone(self, fermat):
        c1 = count_solutions(fermat, 5).count
        c2 = count_solutions(fermat, 10).count
        assert c2 >= c1

"""Symbolic exponent system: parameter choices, assumption tags, psi
requirements, theorem-scale checks, and threshold orderings."""

from fractions import Fraction

import pytest

from cubiclab import (ExponentSystem, paper_exponents, psi_requirement,
                      solve_parameters, theorem_exponent_check,
                      threshold_profile)
from cubiclab.exponents import present, thresholds


T84 = Fraction(84)


class TestPresent:
    def test_round_half_up(self):
        assert present(Fraction(5212, 17)) == "306.59"
        assert present(Fraction(1, 8)) == "0.13"
        assert present(Fraction(5, 2), places=0) == "3"


class TestParameterChoices:
    def test_headline_exponents(self):
        p = paper_exponents(T84)
        assert p["u"] == Fraction(5212, 17)
        assert p["P0"] == Fraction(9346, 17)
        assert p["P"] == Fraction(69645, 34)
        assert present(p["u"]) == "306.59"
        assert present(p["P0"]) == "549.76"
        assert present(p["P"]) == "2048.38"

    def test_ceiling(self):
        p = paper_exponents(T84)["P"]
        assert -((-p.numerator) // p.denominator) == 2049

    def test_q_linked_to_p(self):
        p = paper_exponents(T84)
        assert p["Q"] == Fraction(11, 9) * p["P"] - Fraction(2 * 84 + 16, 9)


class TestSolveParameters:
    def test_psi_free_chain_passes(self):
        sys_ = solve_parameters(T84)
        assert isinstance(sys_, ExponentSystem)
        assert len(sys_.tags) == 21
        assert sys_.all_pass

    def test_equality_tags_have_zero_slack(self):
        sys_ = solve_parameters(T84)
        by_tag = {t.tag: t for t in sys_.tags}
        for tag in ("M3", "m6", "m10", "m13"):
            assert by_tag[tag].slack == 0

    def test_full_suite_binding_failure(self):
        # with the published (T, psi, delta) one series-cutoff inequality
        # is genuinely infeasible at epsilon = 0: the required P0 exponent
        # exceeds the chosen one by ~34.4.  Everything else passes.
        sys_ = solve_parameters(T84, psi=Fraction("1454.8"),
                                delta=Fraction("2.23"))
        assert sys_.failed() == ["S4"]
        s4 = next(t for t in sys_.tags if t.tag == "S4")
        assert s4.lhs > s4.rhs
        assert Fraction(34) < s4.lhs - s4.rhs < Fraction(35)

    def test_psi_dependent_tags_vacuous_at_infinity(self):
        sys_ = solve_parameters(T84)
        vac = {t.tag for t in sys_.tags if t.lhs is None and t.passes}
        assert {"S1", "S2", "S3", "m4", "m5", "m9", "m12"} == vac

    def test_delta_needed_for_s4(self):
        sys_ = solve_parameters(T84, psi=Fraction("1454.8"))
        s4 = next(t for t in sys_.tags if t.tag == "S4")
        assert s4.passes and "not evaluated" in s4.note

    def test_delta_must_exceed_two(self):
        sys_ = solve_parameters(T84, psi=Fraction("1454.8"), delta=2)
        s4 = next(t for t in sys_.tags if t.tag == "S4")
        assert not s4.passes

    def test_theorem_scale_psi_free(self):
        n = 15
        sys_ = solve_parameters(292 * (n * n - 1), n=n)
        assert sys_.all_pass


class TestPsiRequirement:
    def test_headline_value(self):
        req = psi_requirement(T84)
        assert req["binding"] == "m9"
        assert abs(req["psi_min"] - Fraction("1454.8")) < Fraction(1, 10)
        # closed form of the binding constraint
        e_P = paper_exponents(T84)["P"]
        B = 2 * 84 + 17
        assert req["psi_min"] == (116 * e_P + 91 * B + 130) / 175

    def test_all_minima_below_binding(self):
        req = psi_requirement(T84)
        assert all(v <= req["psi_min"] for v in req["per_tag"].values())


class TestTheoremExponent:
    def test_all_n(self):
        for n in range(14, 101):
            out = theorem_exponent_check(n)
            assert out["ok"]
            assert out["exp_P"] <= Fraction(6407) * n * n

    def test_explicit_value(self):
        out = theorem_exponent_check(14)
        T = Fraction(292) * (14 * 14 - 1)
        assert out["exp_P"] == (373 * (2 * T + 17) + 640) / Fraction(34)


class TestThresholds:
    def test_triple_equality_at_r0(self):
        p = paper_exponents(T84)["P"]
        r0 = thresholds(T84, p, Fraction(0))["R0"]
        t = thresholds(T84, p, r0)
        assert t["phi0"] == t["phi1"] == t["phi2"]
        assert t["phi0"] == Fraction(-802997, 170)

    def test_r1_matches_p0_exponent(self):
        t = thresholds(T84, paper_exponents(T84)["P"], Fraction(0))
        assert t["R1"] == paper_exponents(T84)["P0"]

    def test_profile_ordering(self):
        prof = threshold_profile(T84)
        assert all(row["ordered"] for row in prof["rows"])
        below = [r for r in prof["rows"] if r["r"] < prof["R0"]]
        above = [r for r in prof["rows"] if r["r"] >= prof["R0"]]
        assert below and above

    def test_phi1_monotone_in_r(self):
        p = paper_exponents(T84)["P"]
        v1 = thresholds(T84, p, Fraction(0))["phi1"]
        v2 = thresholds(T84, p, Fraction(10))["phi1"]
        assert v2 - v1 == Fraction(9)  # slope 9/10

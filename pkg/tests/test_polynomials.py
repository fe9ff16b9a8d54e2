"""Core polynomial representation: symmetrization, evaluation, Hessians,
bilinear forms, homogenization, serialization and leading normalization."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from cubiclab import CubicPolynomial, symmetrize, homogenize, transform
from cubiclab.polynomials import (DimensionMismatch, DegreeError,
                                  NormalizationError, normalize_leading,
                                  _extend_to_unimodular)
from conftest import random_poly


# -- strategies -------------------------------------------------------------

def poly_strategy(max_n=4, coeff=4):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        seed = draw(st.integers(0, 2**32 - 1))
        return random_poly(random.Random(seed), n, coeff)
    return build()


def point_for(poly, draw_ints):
    return [draw_ints() for _ in range(poly.n)]


# -- symmetrize -------------------------------------------------------------

class TestSymmetrize:
    def test_cube_monomial_scale_one(self):
        poly, scale = symmetrize(1, {(0, 0, 0): 1})
        assert scale == 1
        assert poly.c(0, 0, 0) == 1

    def test_triple_product_scale_six(self):
        poly, scale = symmetrize(3, {(0, 1, 2): 1})
        assert scale == 6
        assert poly.c(0, 1, 2) == 1
        assert poly.c(2, 1, 0) == 1  # symmetric accessor

    def test_square_times_linear_scale_one(self):
        poly, scale = symmetrize(2, {(0, 0, 1): 3})
        assert scale == 1
        assert poly.c(0, 0, 1) == 1
        assert poly.c(0, 1, 0) == 1

    def test_scale_applies_to_all_parts(self):
        poly, scale = symmetrize(3, {(0, 1, 2): 1}, {(0, 0): 1},
                                 lin=[1, 0, 0], const=5)
        assert scale == 6
        assert poly.q(0, 0) == 6
        assert poly.lin == (6, 0, 0)
        assert poly.const == 30

    def test_degree_rejected(self):
        with pytest.raises(DegreeError):
            symmetrize(2, {(0, 0, 0, 0): 1})
        with pytest.raises(DegreeError):
            symmetrize(2, quad_monomials={(0, 0, 1): 1})

    def test_represents_scaled_input(self):
        # 2 x1 x2 x3 + x1^2 x2 + x2 x3 evaluated against the monomial form
        poly, scale = symmetrize(3, {(0, 1, 2): 2, (0, 0, 1): 1},
                                 {(1, 2): 1})
        rng = random.Random(7)
        for _ in range(20):
            x = [rng.randint(-5, 5) for _ in range(3)]
            direct = 2 * x[0] * x[1] * x[2] + x[0] ** 2 * x[1] + x[1] * x[2]
            assert poly.evaluate(x) == scale * direct


# -- evaluation -------------------------------------------------------------

class TestEvaluate:
    def test_cube_plus_one(self):
        poly, _ = symmetrize(1, {(0, 0, 0): 1}, const=1)
        assert poly.evaluate([2]) == 9

    def test_fermat_point(self, fermat):
        assert fermat.evaluate([3, 4, 5]) == -34

    def test_watson_unit_point(self, watson5):
        # the polynomial is stored at 6x scale; the underlying value is 2
        assert watson5.evaluate([1, 0, 0, 0, 0]) == 6 * 2

    def test_dimension_mismatch(self, fermat):
        with pytest.raises(DimensionMismatch):
            fermat.evaluate([1, 2])

    def test_height_recomputed(self):
        poly = CubicPolynomial(2, cubic={(0, 0, 0): 3}, quad={(0, 1): -7},
                               lin=[1, 0], const=2)
        assert poly.height == 7

    def test_is_form(self, fermat, watson5):
        assert fermat.is_form
        assert not watson5.is_form
        assert watson5.cubic_part().is_form

    @settings(max_examples=60, deadline=None)
    @given(poly_strategy(), st.integers(0, 2**32 - 1))
    def test_decomposition(self, poly, seed):
        rng = random.Random(seed)
        x = [rng.randint(-6, 6) for _ in range(poly.n)]
        parts = (poly.evaluate_cubic(x) + poly.evaluate_quad(x)
                 + sum(l * v for l, v in zip(poly.lin, x)) + poly.const)
        assert poly.evaluate(x) == parts


# -- Hessian and bilinear forms ---------------------------------------------

class TestHessianBilinear:
    def test_single_variable(self):
        poly, _ = symmetrize(1, {(0, 0, 0): 1})
        assert poly.hessian([2]) == [[2]]

    def test_triple_product_unit(self):
        poly, _ = symmetrize(3, {(0, 1, 2): 6})
        assert poly.hessian([1, 0, 0]) == [[0, 0, 0], [0, 0, 1], [0, 1, 0]]

    def test_zero_point(self, fermat):
        assert fermat.hessian([0, 0, 0]) == [[0] * 3 for _ in range(3)]

    def test_bilinear_triple_product(self):
        poly, _ = symmetrize(3, {(0, 1, 2): 6})
        assert poly.bilinear([1, 0, 0], [0, 1, 0]) == [0, 0, 1]
        assert poly.bilinear([0, 0, 0], [0, 0, 0]) == [0, 0, 0]

    @settings(max_examples=100, deadline=None)
    @given(poly_strategy(), st.integers(0, 2**32 - 1))
    def test_bilinear_symmetry_and_hessian_product(self, poly, seed):
        rng = random.Random(seed)
        n = poly.n
        x = [rng.randint(-4, 4) for _ in range(n)]
        y = [rng.randint(-4, 4) for _ in range(n)]
        M = poly.hessian(x)
        Mx_y = [sum(M[i][j] * y[j] for j in range(n)) for i in range(n)]
        assert poly.bilinear(x, y) == Mx_y
        assert poly.bilinear(x, y) == poly.bilinear(y, x)

    @settings(max_examples=60, deadline=None)
    @given(poly_strategy(), st.integers(0, 2**32 - 1))
    def test_hessian_linearity(self, poly, seed):
        rng = random.Random(seed)
        n = poly.n
        x = [rng.randint(-4, 4) for _ in range(n)]
        y = [rng.randint(-4, 4) for _ in range(n)]
        Mx, My = poly.hessian(x), poly.hessian(y)
        Mxy = poly.hessian([a + b for a, b in zip(x, y)])
        assert Mxy == [[Mx[i][j] + My[i][j] for j in range(n)]
                       for i in range(n)]

    @settings(max_examples=100, deadline=None)
    @given(poly_strategy(), st.integers(0, 2**32 - 1))
    def test_euler_identity(self, poly, seed):
        # 3 C(x) = x . grad C(x), with grad C_i = 3 B_i(x, x)
        rng = random.Random(seed)
        C = poly.cubic_part()
        x = [rng.randint(-5, 5) for _ in range(poly.n)]
        B = C.bilinear(x, x)
        grad = C.gradient(x)
        assert grad == [3 * b for b in B]
        assert 3 * C.evaluate(x) == sum(xi * g for xi, g in zip(x, grad))


# -- homogenization ---------------------------------------------------------

class TestHomogenize:
    def test_cube_plus_one(self):
        poly, _ = symmetrize(1, {(0, 0, 0): 1}, const=1)
        F, scale = homogenize(poly)
        assert F.n == 2 and F.is_form
        # x^3 + y^3 (scale 1: no quadratic or linear part to clear)
        assert scale == 1
        assert F.c(0, 0, 0) == 1 and F.c(1, 1, 1) == 1

    def test_cube_plus_linear(self):
        poly, _ = symmetrize(1, {(0, 0, 0): 1}, lin=[3])
        F, scale = homogenize(poly)
        assert scale == 1
        assert F.c(0, 1, 1) == 1  # x y^2 with full-sum multiplicity 3

    def test_scale_three_when_needed(self):
        poly, _ = symmetrize(1, {(0, 0, 0): 1}, lin=[1])
        F, scale = homogenize(poly)
        assert scale == 3

    @pytest.mark.parametrize("seed", range(4))
    def test_specialization_identity(self, watson5, seed):
        F, scale = homogenize(watson5)
        rng = random.Random(seed)
        for _ in range(5):
            x = [rng.randint(-8, 8) for _ in range(5)]
            assert F.evaluate(x + [1]) == scale * watson5.evaluate(x)

    @settings(max_examples=60, deadline=None)
    @given(poly_strategy(), st.integers(0, 2**32 - 1))
    def test_specialization_random(self, poly, seed):
        F, scale = homogenize(poly)
        assert F.is_form
        rng = random.Random(seed)
        x = [rng.randint(-5, 5) for _ in range(poly.n)]
        assert F.evaluate(x + [1]) == scale * poly.evaluate(x)


# -- serialization ----------------------------------------------------------

class TestJson:
    def test_round_trip(self, watson5):
        assert CubicPolynomial.from_json(watson5.to_json()) == watson5

    def test_one_based_indices(self, fermat):
        d = fermat.to_json_dict()
        assert [1, 1, 1, 1] in d["cubic"]
        assert [3, 3, 3, -1] in d["cubic"]

    def test_missing_n_rejected(self):
        with pytest.raises(ValueError):
            CubicPolynomial.from_json_dict({"cubic": []})

    def test_bad_entry_rejected(self):
        with pytest.raises(ValueError):
            CubicPolynomial.from_json_dict({"n": 2, "cubic": [[1, 1, 1]]})


# -- coordinate changes -----------------------------------------------------

class TestNormalize:
    def test_unimodular_extension(self):
        for t in ([2, 3], [1, 0, 0], [6, 10, 15], [-3, 5]):
            U = _extend_to_unimodular(list(t))
            n = len(t)
            assert [U[i][0] for i in range(n)] == list(t)
            from cubiclab.invariants import int_det
            assert abs(int_det(U)) == 1

    def test_transform_identity(self, fermat):
        U = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
        assert transform(fermat, U) == fermat

    @settings(max_examples=40, deadline=None)
    @given(poly_strategy(max_n=3), st.integers(0, 2**32 - 1))
    def test_transform_is_substitution(self, poly, seed):
        rng = random.Random(seed)
        n = poly.n
        # random small unimodular matrix: product of elementary column ops
        U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for _ in range(3):
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                q = rng.randint(-2, 2)
                for r in range(n):
                    U[r][a] += q * U[r][b]
        out = transform(poly, U)
        y = [rng.randint(-4, 4) for _ in range(n)]
        x = [sum(U[i][j] * y[j] for j in range(n)) for i in range(n)]
        assert out.evaluate(y) == poly.evaluate(x)

    def test_normalize_leading(self, fermat):
        out, U = normalize_leading(fermat)
        M = fermat.height
        assert out.c(0, 0, 0) > 0
        assert abs(out.c(0, 0, 0)) >= M / (10 * 3**3)
        rng = random.Random(3)
        y = [rng.randint(-4, 4) for _ in range(3)]
        x = [sum(U[i][j] * y[j] for j in range(3)) for i in range(3)]
        assert out.evaluate(y) == fermat.evaluate(x)

    def test_normalize_failure_reported(self):
        # identically-zero cubic part: no vector can reach the threshold
        poly = CubicPolynomial(2, quad={(0, 0): 5})
        with pytest.raises(NormalizationError):
            normalize_leading(poly)

"""Shared corpus fixtures and helpers.

The four corpus polynomials are small enough for exact exhaustive checks
yet exercise every structural branch: a diagonal form, an inhomogeneous
5-variable polynomial with no small solutions, a diagonal form with a
nontrivial discriminant, and a form whose Hessian degenerates mod 3.
"""

import random

import pytest

from cubiclab import CubicPolynomial, symmetrize


def make_fermat() -> CubicPolynomial:
    """x^3 + y^3 - z^3."""
    poly, scale = symmetrize(3, {(0, 0, 0): 1, (1, 1, 1): 1, (2, 2, 2): -1})
    assert scale == 1
    return poly


def make_watson5() -> CubicPolynomial:
    """Six times Watson's 5-variable polynomial: everywhere locally soluble
    but with no integral zero.  The positive integer scaling (forced by the
    symmetric-tensor storage) preserves the zero set and every congruence
    condition."""
    poly, scale = symmetrize(
        5,
        {(0, 0, 0): 2, (0, 1, 1): 2, (0, 2, 2): 2, (0, 3, 3): 2, (0, 4, 4): 2},
        {(0, 0): -1, (1, 1): -1, (2, 2): -1, (3, 3): -1, (4, 4): -1,
         (0, 1): 1},
        lin=[2, 0, 0, 0, 0],
        const=-1)
    assert scale == 6
    return poly


def make_selmer4() -> CubicPolynomial:
    """x^3 + 2 y^3 + 4 z^3 - w^3."""
    poly, scale = symmetrize(
        4, {(0, 0, 0): 1, (1, 1, 1): 2, (2, 2, 2): 4, (3, 3, 3): -1})
    assert scale == 1
    return poly


def make_triple_product() -> CubicPolynomial:
    """6 x1 x2 x3 - x4^3."""
    poly, scale = symmetrize(4, {(0, 1, 2): 6, (3, 3, 3): -1})
    assert scale == 1
    return poly


@pytest.fixture(scope="session")
def fermat():
    return make_fermat()


@pytest.fixture(scope="session")
def watson5():
    return make_watson5()


@pytest.fixture(scope="session")
def selmer4():
    return make_selmer4()


@pytest.fixture(scope="session")
def triple_product():
    return make_triple_product()


@pytest.fixture(scope="session")
def corpus(fermat, watson5, selmer4, triple_product):
    return {"fermat": fermat, "watson5": watson5, "selmer4": selmer4,
            "triple_product": triple_product}


def random_poly(rng: random.Random, n: int, coeff_bound: int = 5,
                force_degenerate_leading: bool = False) -> CubicPolynomial:
    """Random dense cubic polynomial with symmetric-tensor storage."""
    cubic = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                c = rng.randint(-coeff_bound, coeff_bound)
                if c:
                    cubic[(i, j, k)] = c
    quad = {}
    for i in range(n):
        for j in range(i, n):
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                quad[(i, j)] = c
    lin = [rng.randint(-coeff_bound, coeff_bound) for _ in range(n)]
    const = rng.randint(-coeff_bound, coeff_bound)
    if force_degenerate_leading:
        cubic.pop((0, 0, 0), None)
        if rng.random() < 0.5:
            # degenerate all the way down to linear/constant in x1
            for key in [k for k in cubic if 0 in k]:
                cubic.pop(key)
            quad.pop((0, 0), None)
    return CubicPolynomial(n, cubic=cubic, quad=quad, lin=lin, const=const)

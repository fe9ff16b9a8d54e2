"""Exponential sums: complete Gauss sums S(q, a), their coprime averages
A(q), Weyl sums over scaled boxes, the bilinear counting functions of the
minor-arc analysis, and exact verifiers for the shrinking and bootstrap
lemmas.

Implicit-constant policy: lemmas stated with << become probes that report
ratios; only exact identities and divisibility statements are asserted.
Phases are reduced in exact integer arithmetic whenever the frequency is
rational, so the only floating-point step is the final root of unity.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import fsum, gcd, tau, floor, ceil
import cmath

import numpy as np

from .budget import check_budget
from .nt import ramanujan_sum, nearest_int_distance
from .polynomials import CubicPolynomial
from .local import value_distribution


def _unit_roots(q: int) -> list:
    """e(m/q) for m = 0..q-1 with the upper half mirrored from the lower,
    so root[q - m] is *exactly* the conjugate of root[m] and conjugate
    symmetries of the sums hold to the last bit."""
    roots: list = [None] * q
    for m in range(q // 2 + 1):
        roots[m] = cmath.exp(1j * tau * m / q)
    if q % 2 == 0:
        # e(1/2) = -1 exactly; this root is its own conjugate partner
        roots[q // 2] = complex(-1.0, 0.0)
    for m in range(q // 2 + 1, q):
        roots[m] = roots[q - m].conjugate()
    return roots


# -- Gauss sums -------------------------------------------------------------


@lru_cache(maxsize=256)
def _exact_residue_profile(poly_json: str, q: int) -> tuple:
    """counts[m] = #{r mod q : phi(r) = m mod q}, by pure-Python exact
    evaluation (independent of the numpy grid path)."""
    phi = CubicPolynomial.from_json(poly_json)
    counts = [0] * q
    for r in product(range(q), repeat=phi.n):
        counts[phi.evaluate(r) % q] += 1
    return tuple(counts)


def gauss_sum_direct(phi: CubicPolynomial, q: int, a: int,
                     budget: int | None = None) -> complex:
    """S(q, a) by direct summation over residues (exact Python evaluation)."""
    check_budget(q**phi.n, budget, what=f"Gauss sum mod {q}")
    roots = _unit_roots(q)
    counts = _exact_residue_profile(phi.to_json(), q)
    re = fsum(counts[m] * roots[a * m % q].real for m in range(q))
    im = fsum(counts[m] * roots[a * m % q].imag for m in range(q))
    return complex(re, im)


def gauss_sum_distribution(phi: CubicPolynomial, q: int, a: int,
                           budget: int | None = None) -> complex:
    """S(q, a) via the numpy value-distribution path."""
    cnt = value_distribution(phi, q, budget)
    roots = _unit_roots(q)
    re = fsum(int(cnt[m]) * roots[a * m % q].real for m in range(q))
    im = fsum(int(cnt[m]) * roots[a * m % q].imag for m in range(q))
    return complex(re, im)


def gauss_sum(phi: CubicPolynomial, q: int, a: int,
              budget: int | None = None) -> complex:
    """Cross-checked S(q, a): both evaluation paths must agree to 1e-9
    relative."""
    if gcd(a % q if q > 1 else 0, q) != 1 and q > 1:
        raise ValueError(f"a = {a} not coprime to q = {q}")
    if q == 1:
        return complex(1.0)
    s1 = gauss_sum_direct(phi, q, a, budget)
    s2 = gauss_sum_distribution(phi, q, a, budget)
    scale = max(abs(s1), abs(s2), 1.0)
    if abs(s1 - s2) > 1e-9 * scale:
        raise AssertionError(
            f"Gauss sum paths disagree at q={q}, a={a}: {s1} vs {s2}")
    return s1


def a_of_q_exact(phi: CubicPolynomial, q: int,
                 budget: int | None = None) -> Fraction:
    """A(q) = sum_(a;q)=1 S(q,a)/q^n as an exact rational.

    Summing the coprime phases first gives A(q) = (sum_m counts[m] c_q(m)) /
    q^n with c_q the Ramanujan sum, so the value is rational and exact.
    """
    if q == 1:
        return Fraction(1)
    cnt = value_distribution(phi, q, budget)
    num = sum(int(cnt[m]) * ramanujan_sum(q, m) for m in range(q))
    return Fraction(num, q**phi.n)


def a_of_q(phi: CubicPolynomial, q: int, budget: int | None = None) -> complex:
    """Floating A(q) by summing Gauss sums over coprime numerators."""
    if q == 1:
        return complex(1.0)
    total = 0j
    for a in range(1, q):
        if gcd(a, q) == 1:
            total += gauss_sum_distribution(phi, q, a, budget)
    return total / q**phi.n


# -- Weyl sums --------------------------------------------------------------


def box_lattice_ranges(bounds, P: float) -> list:
    """Integer ranges [ceil(P lo), floor(P hi)] per axis."""
    return [(ceil(P * lo - 1e-12), floor(P * hi + 1e-12)) for lo, hi in bounds]


def weyl_sum(phi: CubicPolynomial, alpha, bounds, P: float = 1.0,
             budget: int | None = None) -> complex:
    """S(alpha) = sum_{x in P.box} e(alpha phi(x)).

    bounds is a list of (lo, hi) per coordinate (the unscaled box).  For
    rational alpha the phase index is computed in exact integers; otherwise
    phases are accumulated in compensated (fsum) summation with documented
    error <= 1e-8 * point count.
    """
    rng = box_lattice_ranges(bounds, P)
    counts = [hi - lo + 1 for lo, hi in rng]
    if any(c <= 0 for c in counts):
        return 0j
    npts = 1
    for c in counts:
        npts *= c
    check_budget(npts, budget, what="Weyl sum lattice")
    rational = isinstance(alpha, Fraction)
    if rational:
        q = alpha.denominator
        a = alpha.numerator
        roots = _unit_roots(q)
        re_parts, im_parts = [], []
        for x in product(*(range(lo, hi + 1) for lo, hi in rng)):
            m = a * phi.evaluate(x) % q
            re_parts.append(roots[m].real)
            im_parts.append(roots[m].imag)
        return complex(fsum(re_parts), fsum(im_parts))
    re_parts, im_parts = [], []
    for x in product(*(range(lo, hi + 1) for lo, hi in rng)):
        ph = (alpha * phi.evaluate(x)) % 1.0
        z = cmath.exp(1j * tau * ph)
        re_parts.append(z.real)
        im_parts.append(z.imag)
    return complex(fsum(re_parts), fsum(im_parts))


def lattice_point_count(bounds, P: float = 1.0) -> int:
    rng = box_lattice_ranges(bounds, P)
    npts = 1
    for lo, hi in rng:
        npts *= max(hi - lo + 1, 0)
    return npts


# -- bilinear counting ------------------------------------------------------


def bilinear_count(C: CubicPolynomial, alpha, h, bound: int, eps,
                   budget: int | None = None) -> int:
    """#{d : |d| <= bound, ||6 alpha B_i(h, d)|| < eps for all i}.

    Exact when alpha and eps are rational (a value landing exactly on 1/2
    counts as distance 1/2 and fails the strict inequality).
    """
    n = C.n
    check_budget((2 * bound + 1) ** n, budget, what="bilinear count")
    M = C.hessian(h)  # B_i(h, d) = (M(h) d)_i
    count = 0
    if isinstance(alpha, Fraction):
        eps = Fraction(eps) if not isinstance(eps, Fraction) else eps
        b = alpha.denominator
        a6 = 6 * alpha.numerator
        for d in product(range(-bound, bound + 1), repeat=n):
            ok = True
            for i in range(n):
                num = a6 * sum(M[i][j] * d[j] for j in range(n)) % b
                # distance to nearest integer of num/b is min(num, b-num)/b
                if min(num, b - num) * eps.denominator >= eps.numerator * b:
                    ok = False
                    break
            count += ok
        return count
    for d in product(range(-bound, bound + 1), repeat=n):
        ok = all(
            nearest_int_distance(6.0 * alpha * sum(M[i][j] * d[j] for j in range(n))) < eps
            for i in range(n))
        count += ok
    return count


# -- shrinking lemma verifier ----------------------------------------------


def shrinking_count(L, a, Z, budget: int | None = None) -> int:
    """N(Z) = #{u : |u| <= a Z, ||(L u)_i|| < a^-1 Z for all i}."""
    n = len(L)
    r = floor(float(a) * float(Z) + 1e-12)
    check_budget((2 * r + 1) ** n, budget, what="shrinking count")
    thresh = float(Z) / float(a)
    count = 0
    for u in product(range(-r, r + 1), repeat=n):
        ok = True
        for i in range(n):
            v = sum(L[i][j] * u[j] for j in range(n))
            if not nearest_int_distance(v) < thresh:
                ok = False
                break
        count += ok
    return count


def shrinking_check(L, a, Z, budget: int | None = None) -> dict:
    """Report N(1) against Z^-n N(Z) (Davenport's shrinking bound)."""
    if not 0 < Z <= 1:
        raise ValueError("need 0 < Z <= 1")
    n = len(L)
    NZ = shrinking_count(L, a, Z, budget)
    N1 = shrinking_count(L, a, 1, budget)
    assert NZ >= 1, "u = 0 is always counted"
    ratio = N1 / (float(Z) ** (-n) * NZ)
    return {"N1": N1, "NZ": NZ, "Z": float(Z), "ratio": ratio}


# -- bootstrap lemma verifier ----------------------------------------------


def bootstrap_check(q: int, a: int, theta: Fraction, X: int, P1: int,
                    m: int) -> dict:
    """Exact instance check of the rational-approximation bootstrap.

    Preconditions: gcd(a, q) = 1, 2qX|theta| <= 1, P1 >= 2q, |m| <= X and
    ||alpha m|| <= 1/P1 with alpha = a/q + theta.  The lemma asserts q | m,
    and m = 0 when additionally X < q or |theta| > 1/(q P1).
    """
    theta = Fraction(theta)
    if gcd(a % q if q > 1 else 0, q) != 1 and q > 1:
        raise ValueError("gcd(a, q) != 1")
    if 2 * q * X * abs(theta) > 1:
        raise ValueError("precondition 2qX|theta| <= 1 fails")
    if P1 < 2 * q:
        raise ValueError("precondition P1 >= 2q fails")
    if abs(m) > X:
        raise ValueError("precondition |m| <= X fails")
    alpha = Fraction(a, q) + theta
    if not nearest_int_distance(alpha * m) <= Fraction(1, P1):
        raise ValueError("precondition ||alpha m|| <= 1/P1 fails")
    zero_regime = X < q or abs(theta) > Fraction(1, q * P1)
    return {"divides": m % q == 0,
            "forced_zero": zero_regime,
            "is_zero": m == 0}


# -- minor-arc probes -------------------------------------------------------


@dataclass(frozen=True)
class MinorArcProbe:
    q: int
    a: int
    theta: float
    R: float            # dyadic scale of q
    phi_scale: float    # dyadic scale of |theta|
    H: int
    kappa: float
    eta: float          # |theta| + 1/(P^2 H M)
    Z: float

    def __post_init__(self):
        if not (0 <= self.a < max(self.q, 1)) or gcd(self.a, self.q) != 1:
            if not (self.q == 1 and self.a == 0):
                raise ValueError("need 0 <= a < q with gcd(a, q) = 1")


def make_probe(q: int, a: int, theta: float, P: float, H: int, M: int,
               kappa: float = 0.0, Z: float = 1.0) -> MinorArcProbe:
    eta = abs(theta) + 1.0 / (P * P * H * M)
    R = 2.0 ** floor(np.log2(q)) if q >= 1 else 1.0
    phs = 2.0 ** floor(np.log2(abs(theta))) if theta else 0.0
    return MinorArcProbe(q=q, a=a % q if q > 1 else 0, theta=theta, R=R,
                         phi_scale=phs, H=H, kappa=kappa, eta=eta, Z=Z)


def weyl_bound_probe(C: CubicPolynomial, q: int, a: int, theta: float,
                     P: int, psi: float, bounds=None,
                     budget: int | None = None) -> dict:
    """|S(alpha)| against the Weyl-differencing right-hand side (epsilon
    dropped, implicit constant unknown: reported, never asserted)."""
    n = C.n
    if bounds is None:
        bounds = [(-1.0, 1.0)] * n
    alpha = Fraction(a, q) + Fraction(theta) if isinstance(theta, Fraction) \
        else a / q + theta
    S = weyl_sum(C, alpha, bounds, P, budget)
    M = max(C.height, 1)
    th = abs(float(theta))
    inner = 1.0 / P**2 + M * q * th + q / P**3
    inner += (1.0 / q) * min(float(M), 1.0 / (th * P**3)) if th else float(M) / q
    inner += float(M) ** (-2.0 * psi)
    rhs = P**n * inner ** (7.0 / 4.0)
    return {"S_abs": abs(S), "rhs": rhs,
            "ratio": abs(S) / rhs if rhs else float("inf")}


# -- lattice-sum vs integral comparison ------------------------------------


def euler_comparison(phi: CubicPolynomial, lam: float, bounds,
                     budget: int | None = None) -> dict:
    """|sum_{x in box} e(lam phi(x)) - integral over the box| for smooth
    phase; the bound K psi^-1 R^(n-1) of the stationary-phase-free regime
    is reported as a ratio (K calibrated by the test suite, frozen there)."""
    from scipy import integrate

    n = phi.n
    S = weyl_sum(phi, lam, bounds, 1.0, budget)

    def f(*x):
        return cmath.exp(1j * tau * lam * phi.evaluate(x))

    if n == 1:
        re, _ = integrate.quad(lambda x: f(x).real, bounds[0][0], bounds[0][1],
                               limit=200)
        im, _ = integrate.quad(lambda x: f(x).imag, bounds[0][0], bounds[0][1],
                               limit=200)
    elif n == 2:
        re, _ = integrate.dblquad(lambda y, x: f(x, y).real,
                                  bounds[0][0], bounds[0][1],
                                  bounds[1][0], bounds[1][1])
        im, _ = integrate.dblquad(lambda y, x: f(x, y).imag,
                                  bounds[0][0], bounds[0][1],
                                  bounds[1][0], bounds[1][1])
    else:
        raise ValueError("comparison implemented for n <= 2 only")
    I = complex(re, im)
    R = max(hi - lo for lo, hi in bounds) / 2.0
    return {"sum": S, "integral": I, "diff": abs(S - I), "R": R}

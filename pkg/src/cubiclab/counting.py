"""Exact lattice counting of phi = 0 in boxes, expanding-shell search for
the smallest solution, and comparison against the circle-method prediction.

The counter enumerates all coordinates but the first and solves the
remaining univariate integer cubic exactly; the degenerate leading cases
(quadratic, linear, constant, identically zero) are handled explicitly,
the last one contributing a full lattice segment.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt
import time

from .budget import check_budget
from .nt import divisors
from .polynomials import CubicPolynomial


def integer_roots_cubic(a: int, b: int, c: int, d: int):
    """Integer roots of a t^3 + b t^2 + c t + d.

    Returns ("all", None) when the polynomial vanishes identically,
    else ("roots", sorted list of distinct integer roots).
    """
    if a == 0 and b == 0 and c == 0:
        return ("all", None) if d == 0 else ("roots", [])
    if a == 0 and b == 0:
        return "roots", ([-d // c] if d % c == 0 else [])
    if a == 0:
        disc = c * c - 4 * b * d
        if disc < 0:
            return "roots", []
        s = isqrt(disc)
        if s * s != disc:
            return "roots", []
        roots = []
        for num in (-c + s, -c - s):
            if num % (2 * b) == 0:
                roots.append(num // (2 * b))
        return "roots", sorted(set(roots))
    if d == 0:
        _, rest = integer_roots_cubic(0, a, b, c)
        return "roots", sorted(set([0] + rest))
    roots = []
    for r in divisors(d):
        for t in (r, -r):
            if ((a * t + b) * t + c) * t + d == 0:
                roots.append(t)
    return "roots", sorted(set(roots))


def _x1_coefficients(phi: CubicPolynomial, y) -> tuple:
    """(a, b, c, d) with phi(t, y) = a t^3 + b t^2 + c t + d."""
    n = phi.n
    a = phi.c(0, 0, 0)
    b = phi.q(0, 0) + 3 * sum(phi.c(0, 0, j) * y[j - 1] for j in range(1, n))
    c = phi.lin[0]
    c += 2 * sum(phi.q(0, j) * y[j - 1] for j in range(1, n))
    c += 3 * sum(phi.c(0, j, k) * y[j - 1] * y[k - 1]
                 for j in range(1, n) for k in range(1, n))
    d = phi.evaluate([0] + list(y))
    return a, b, c, d


@dataclass(frozen=True)
class CountResult:
    P: int
    count: int
    prediction: float | None = None
    solutions_sample: tuple = ()
    elapsed: float = 0.0


def _box_ranges(n: int, P: int, box=None) -> list:
    if box is None:
        return [(-P, P)] * n
    bounds = box.bounds if hasattr(box, "bounds") else list(box)
    from math import ceil, floor
    return [(ceil(P * lo - 1e-12), floor(P * hi + 1e-12)) for lo, hi in bounds]


def count_solutions(phi: CubicPolynomial, P: int, box=None,
                    budget: int | None = None, keep: int = 100) -> CountResult:
    """Exact N(P) over the integer box (default [-P, P]^n)."""
    t0 = time.perf_counter()
    n = phi.n
    rng = _box_ranges(n, P, box)
    lo1, hi1 = rng[0]
    prefix = 1
    for lo, hi in rng[1:]:
        prefix *= max(hi - lo + 1, 0)
    check_budget(prefix, budget, what="solution count")
    count = 0
    sample = []
    for y in product(*(range(lo, hi + 1) for lo, hi in rng[1:])):
        a, b, c, d = _x1_coefficients(phi, y)
        kind, roots = integer_roots_cubic(a, b, c, d)
        if kind == "all":
            seg = max(hi1 - lo1 + 1, 0)
            count += seg
            if len(sample) < keep:
                for t in range(lo1, min(hi1, lo1 + keep) + 1):
                    if len(sample) < keep:
                        sample.append((t, *y))
            continue
        for t in roots:
            if lo1 <= t <= hi1:
                count += 1
                if len(sample) < keep:
                    sample.append((t, *y))
    return CountResult(P=P, count=count, solutions_sample=tuple(sample),
                       elapsed=time.perf_counter() - t0)


def naive_count(phi: CubicPolynomial, P: int, box=None,
                budget: int | None = None) -> int:
    """Reference oracle: full enumeration of the box."""
    rng = _box_ranges(phi.n, P, box)
    npts = 1
    for lo, hi in rng:
        npts *= max(hi - lo + 1, 0)
    check_budget(npts, budget, what="naive count")
    return sum(1 for x in product(*(range(lo, hi + 1) for lo, hi in rng))
               if phi.evaluate(x) == 0)


@dataclass(frozen=True)
class SearchReport:
    found: tuple | None
    shell: int | None
    exhausted_to: int | None


def smallest_solution(phi: CubicPolynomial, max_shell: int,
                      budget: int | None = None,
                      start_shell: int = 0) -> SearchReport:
    """First solution in expanding sup-norm shells (within a shell,
    lexicographically smallest), or certified emptiness up to max_shell."""
    for s in range(start_shell, max_shell + 1):
        found = []
        if s == 0:
            if phi.evaluate([0] * phi.n) == 0:
                return SearchReport(found=(0,) * phi.n, shell=0, exhausted_to=None)
            continue
        res = count_solutions(phi, s, budget=budget, keep=0)
        if res.count == 0:
            continue
        # shell s solutions = solutions in box s with sup-norm exactly s
        for y in product(*([range(-s, s + 1)] * (phi.n - 1))):
            a, b, c, d = _x1_coefficients(phi, y)
            kind, roots = integer_roots_cubic(a, b, c, d)
            cand = range(-s, s + 1) if kind == "all" else \
                [t for t in roots if -s <= t <= s]
            for t in cand:
                x = (t, *y)
                if max(abs(v) for v in x) == s:
                    found.append(x)
        if found:
            return SearchReport(found=min(found), shell=s, exhausted_to=None)
    return SearchReport(found=None, shell=None, exhausted_to=max_shell)


def asymptotic_compare(phi: CubicPolynomial, box, P_list, P0: int, Z: float,
                       budget: int | None = None) -> list:
    """Rows (P, N(P), prediction frak-S(P0) * I(Z) * P^(n-3), ratio).

    Purely diagnostic: the theorem's regime is far beyond enumeration, so
    no assertion is made about the ratios.
    """
    from .local import ncc_certify
    from .majorarcs import singular_series, singular_integral

    n = phi.n
    cert = ncc_certify(phi, P0, budget)
    if cert.status == "violation":
        series_val = Fraction(0)
        integral = {"value": 0.0}
    else:
        series_val = singular_series(phi, P0, mode="euler", budget=budget).value
        integral = singular_integral(phi, box, Z, budget=budget)
    rows = []
    for P in P_list:
        res = count_solutions(phi, P, box=box, budget=budget)
        pred = float(series_val) * integral["value"] * float(P) ** (n - 3)
        rows.append({"P": P, "count": res.count, "prediction": pred,
                     "ratio": res.count / pred if pred else None})
    return rows

"""p-adic solubility machinery: solution counts rho(p^k), non-singular
counts rho*(p^k), Hensel lifting, quantitative lifting levels, and the
necessary-congruence-condition (NCC) certifier.

Counting is exact.  Residue grids are enumerated with numpy (all arithmetic
reduced mod q at every step, so int64 never overflows for the moduli the
budget admits); beyond the budget, rho falls back to a stratified recursion:
each non-singular root mod p contributes p^((k-1)(n-1)) and each singular
root a is rescaled via psi_a(y) = phi(a + p y)/p and counted at level k-1.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

import numpy as np

from .budget import check_budget, BudgetExceeded, enumeration_budget
from .invariants import delta, DeltaInvariant
from .nt import primes_up_to, valuation
from .polynomials import CubicPolynomial, _mult3, _mult2, homogenize


class HenselPreconditionError(ValueError):
    pass


# -- residue grids ----------------------------------------------------------


def _axes(q: int, n: int) -> list:
    return [np.arange(q, dtype=np.int64).reshape((1,) * i + (q,) + (1,) * (n - 1 - i))
            for i in range(n)]


def residue_values(phi: CubicPolynomial, q: int,
                   budget: int | None = None) -> np.ndarray:
    """Array of shape (q,)*n holding phi(x) mod q (x_1 the slowest axis)."""
    n = phi.n
    check_budget(q**n, budget, what=f"residue grid mod {q}")
    X = _axes(q, n)
    acc = np.full((q,) * n, phi.const % q, dtype=np.int64)
    for (i, j, k), c in phi.cubic.items():
        t = (X[i] * X[j]) % q
        t = (t * X[k]) % q
        acc = (acc + t * ((_mult3(i, j, k) * c) % q)) % q
    for (i, j), c in phi.quad.items():
        t = (X[i] * X[j]) % q
        acc = (acc + t * ((_mult2(i, j) * c) % q)) % q
    for i, li in enumerate(phi.lin):
        if li % q:
            acc = (acc + X[i] * (li % q)) % q
    return acc


def gradient_residue(phi: CubicPolynomial, i: int, q: int, X=None) -> np.ndarray:
    """Array of (grad phi)_i mod q over the residue grid."""
    n = phi.n
    if X is None:
        X = _axes(q, n)
    acc = np.full((1,) * n, phi.lin[i] % q, dtype=np.int64)
    for (a, b, c), cc in phi.cubic.items():
        mult = _mult3(a, b, c)
        idx = (a, b, c)
        for pos in range(3):
            if idx[pos] == i:
                u, v = idx[(pos + 1) % 3], idx[(pos + 2) % 3]
                t = (X[u] * X[v]) % q
                acc = (acc + t * ((mult * cc) % q)) % q
    for (a, b), qq in phi.quad.items():
        mlt = _mult2(a, b)
        idx = (a, b)
        for pos in range(2):
            if idx[pos] == i:
                acc = (acc + X[idx[1 - pos]] * ((mlt * qq) % q)) % q
    return np.broadcast_to(acc % q, (q,) * n) if acc.shape != (q,) * n else acc % q


def value_distribution(phi: CubicPolynomial, q: int,
                       budget: int | None = None) -> np.ndarray:
    """counts[m] = #{x mod q : phi(x) = m mod q}; sums to q^n."""
    arr = residue_values(phi, q, budget)
    return np.bincount(arr.ravel(), minlength=q)


def _nonsingular_mask(phi: CubicPolynomial, q: int, mod: int) -> np.ndarray:
    """Boolean grid: some gradient component is nonzero mod `mod`."""
    n = phi.n
    X = _axes(q, n)
    mask = np.zeros((q,) * n, dtype=bool)
    for i in range(n):
        g = gradient_residue(phi, i, q, X)
        mask |= (g % mod) != 0
    return mask


# -- rho / rho* -------------------------------------------------------------


def _psi_rescale(phi: CubicPolynomial, p: int, a: list) -> CubicPolynomial:
    """psi_a(y) = phi(a + p y) / p, integral whenever phi(a) = 0 mod p and
    the gradient vanishes mod p at a."""
    n = phi.n
    val = phi.evaluate(a)
    if val % p:
        raise ValueError("a is not a root mod p")
    grad = phi.gradient(a)
    M = phi.hessian(a)
    cubic = {t: p * p * c for t, c in phi.cubic.items()}
    quad = {}
    for i in range(n):
        for j in range(i, n):
            entry = p * (3 * M[i][j] + phi.q(i, j))
            if entry:
                quad[(i, j)] = entry
    return CubicPolynomial(n, cubic=cubic, quad=quad, lin=grad, const=val // p)


def rho(phi: CubicPolynomial, p: int, k: int, budget: int | None = None,
        max_singular: int = 4096, _depth: int = 0) -> int:
    """Exact #{x mod p^k : phi(x) = 0 mod p^k}."""
    if k == 0:
        return 1
    n = phi.n
    q = p**k
    cap = enumeration_budget(budget)
    if q**n <= cap:
        arr = residue_values(phi, q, budget)
        return int(np.count_nonzero(arr == 0))
    if p**n > cap:
        raise BudgetExceeded(
            f"rho({p}^{k}): even the level-1 grid {p}^{n} exceeds budget {cap}")
    if _depth > 3 * k + 6:
        raise BudgetExceeded("rho stratification recursion too deep")
    vals = residue_values(phi, p, budget)
    sol = vals == 0
    nonsing = _nonsingular_mask(phi, p, p) & sol
    count = int(np.count_nonzero(nonsing)) * p ** ((k - 1) * (n - 1))
    singular = np.argwhere(sol & ~nonsing)
    if len(singular) > max_singular:
        raise BudgetExceeded(
            f"rho({p}^{k}): {len(singular)} singular roots mod {p} "
            f"exceed stratification cap {max_singular}")
    for a in singular:
        psi = _psi_rescale(phi, p, [int(v) for v in a])
        count += rho(psi, p, k - 1, budget, max_singular, _depth + 1)
    return count


def rho_star(phi: CubicPolynomial, p: int, k: int,
             budget: int | None = None) -> int:
    """Non-singular solution count mod p^k.

    For k = 1 this is the paper-standard count of roots with nonzero
    gradient mod p.  For k > 1 we use the Hensel-stable convention: the
    gradient must not vanish mod p^ceil(k/2) (documented choice; the
    source definition is only exercised where Hensel applies).
    """
    n = phi.n
    q = p**k
    check_budget(q**n, budget, what=f"rho* grid mod {q}")
    arr = residue_values(phi, q, budget)
    t = p ** ((k + 1) // 2)
    mask = _nonsingular_mask(phi, q, t)
    return int(np.count_nonzero((arr == 0) & mask))


def local_factor(phi: CubicPolynomial, p: int, k: int,
                 budget: int | None = None) -> Fraction:
    """Exact rational p^(-k(n-1)) * rho(p^k)."""
    return Fraction(rho(phi, p, k, budget), p ** (k * (phi.n - 1)))


# -- Hensel lifting ---------------------------------------------------------


def hensel_lift(phi: CubicPolynomial, p: int, x: list, ell: int,
                target_k: int) -> list:
    """Newton-lift x to a solution mod p^target_k.

    Preconditions (checked, never silently skipped): phi(x) = 0 mod
    p^(2 ell - 1) and the gradient at x is not divisible by p^ell.
    The result y satisfies y = x mod p^ell and phi(y) = 0 mod p^target_k.
    """
    n = phi.n
    if len(x) != n:
        raise ValueError("point dimension mismatch")
    val = phi.evaluate(x)
    pre_mod = p ** (2 * ell - 1)
    if val % pre_mod:
        raise HenselPreconditionError(
            f"phi(x) = {val} is not 0 mod {p}^{2 * ell - 1}")
    grad = phi.gradient(x)
    vs = [valuation(g, p) if g else ell for g in grad]
    v = min(vs)
    if v >= ell:
        raise HenselPreconditionError(
            f"gradient divisible by {p}^{ell} at x")
    y = list(x)
    big = p**target_k
    while True:
        val = phi.evaluate(y)
        if val % big == 0:
            return [c % big for c in y]
        m = valuation(val, p)
        grad = phi.gradient(y)
        vs = [(valuation(g, p) if g else target_k, i)
              for i, g in enumerate(grad)]
        v, i = min(vs)
        if m <= 2 * v:
            raise HenselPreconditionError(
                f"Newton step stalled: v_p(phi) = {m} <= 2 v_p(grad) = {2 * v}")
        a = val // p**m
        b = grad[i] // p**v
        step_mod = p ** (target_k - (m - v)) if target_k > m - v else 1
        s = (-a * pow(b, -1, step_mod)) % step_mod if step_mod > 1 else 0
        y[i] += p ** (m - v) * s


def lifting_level(kind: str, p: int, v_delta: int, n: int) -> int:
    """Quantitative Hensel level: 3 floor(v/(n-9)) + 3 for forms (n >= 10);
    98 or 144 v + 2 for general polynomials (n >= 15)."""
    if kind == "homogeneous":
        if n < 10:
            raise ValueError("homogeneous lifting level needs n >= 10")
        return 3 * (v_delta // (n - 9)) + 3
    if kind == "inhomogeneous":
        if n < 15:
            raise ValueError("inhomogeneous lifting level needs n >= 15")
        return 98 if v_delta == 0 else 144 * v_delta + 2
    raise ValueError(f"unknown kind {kind!r}")


# -- NCC certification ------------------------------------------------------


@dataclass(frozen=True)
class PrimeCertificate:
    p: int
    k: int
    witness: tuple | None         # solution mod p^k, lexicographically first
    grad_valuation: int | None    # min v_p of the gradient at the witness
    hensel_liftable: bool         # gradient nonzero mod p at the witness


@dataclass(frozen=True)
class NCCCertificate:
    status: str                   # certified | violation | degenerate
    P0: int
    primes: tuple = ()
    violation: tuple | None = None  # (p, k) smallest insoluble prime power
    delta_phi: DeltaInvariant | None = None


def _first_root(phi: CubicPolynomial, q: int, budget=None):
    arr = residue_values(phi, q, budget)
    flat = np.flatnonzero(arr.ravel() == 0)
    if not len(flat):
        return None
    return tuple(int(v) for v in np.unravel_index(int(flat[0]), arr.shape))


def ncc_threshold(p: int, P0: int, v_delta: int, ell: int | None) -> int:
    """k(p) = max(floor(log_p P0), 2 ell - 1 when p | Delta and the lifting
    level is available; 1 otherwise)."""
    k = 0
    q = 1
    while q * p <= P0:
        q *= p
        k += 1
    k = max(k, 1)
    if v_delta > 0 and ell is not None:
        k = max(k, 2 * ell - 1)
    return k


def ncc_certify(phi: CubicPolynomial, P0: int,
                budget: int | None = None) -> NCCCertificate:
    """Check solubility of phi = 0 mod p^k(p) for every prime p <= P0.

    Requires Delta(phi) != 0 for the finite thresholds to be meaningful;
    a degenerate phi yields status "degenerate" (unbounded check required).
    A non-singular witness additionally certifies all higher powers of p
    by Hensel lifting.
    """
    form, _scale = homogenize(phi)
    dphi = delta(form)
    if dphi.value == 0:
        return NCCCertificate(status="degenerate", P0=P0, delta_phi=dphi)
    n = phi.n
    certs = []
    for p in primes_up_to(P0):
        v = valuation(dphi.value, p)
        try:
            ell = lifting_level("inhomogeneous", p, v, n)
        except ValueError:
            ell = None  # below the lemma's variable range; log-threshold only
        k = ncc_threshold(p, P0, v, ell)
        # shrink k while the grid is out of budget; the reachable level is
        # still reported honestly via the certificate's k field
        cap = enumeration_budget(budget)
        while k > 1 and (p**k) ** n > cap:
            k -= 1
        w = _first_root(phi, p**k, budget)
        if w is None:
            # find the smallest violating power
            for j in range(1, k + 1):
                if _first_root(phi, p**j, budget) is None:
                    return NCCCertificate(status="violation", P0=P0,
                                          primes=tuple(certs),
                                          violation=(p, j), delta_phi=dphi)
        grad = phi.gradient(list(w))
        gv = min((valuation(g, p) for g in grad if g), default=None)
        certs.append(PrimeCertificate(
            p=p, k=k, witness=w, grad_valuation=gv,
            hensel_liftable=(gv == 0)))
    return NCCCertificate(status="certified", P0=P0, primes=tuple(certs),
                          delta_phi=dphi)


# -- per-prime report -------------------------------------------------------


@dataclass(frozen=True)
class LocalReport:
    p: int
    v_delta: int
    ell: int | None
    k_threshold: int
    rho: dict = field(default_factory=dict)
    rho_star: dict = field(default_factory=dict)
    witness: tuple | None = None


def local_report(phi: CubicPolynomial, p: int, k_max: int, P0: int = 100,
                 budget: int | None = None) -> LocalReport:
    form, _ = homogenize(phi)
    dphi = delta(form)
    v = valuation(dphi.value, p) if dphi.value else 0
    try:
        ell = lifting_level("inhomogeneous", p, v, phi.n)
    except ValueError:
        ell = None
    rhos, stars = {}, {}
    for k in range(1, k_max + 1):
        rhos[k] = rho(phi, p, k, budget)
        try:
            stars[k] = rho_star(phi, p, k, budget)
        except BudgetExceeded:
            break
    return LocalReport(p=p, v_delta=v, ell=ell,
                       k_threshold=ncc_threshold(p, P0, v, ell),
                       rho=rhos, rho_star=stars,
                       witness=_first_root(phi, p, budget))

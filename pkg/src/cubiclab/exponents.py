"""Symbolic bookkeeping for the parameter system of the solubility bound.

Every quantity is tracked as the exact rational exponent of M (the
coefficient height): the arc parameters u, P0, P, Q, the scalars T, psi,
delta, n, and the 21 assumption inequalities (M1-M3, S1-S4, I1, m1-m13).
Inequalities with an epsilon or an implicit constant are evaluated at
epsilon = 0: a tag passes iff its slack is >= 0 (equality-by-choice tags
have slack exactly 0).  |z| is modeled by its exponent 3.75, an explicit
assumption of the model.

psi may be infinite (psi=None): the psi-dependent tags then pass vacuously
and the series cutoff is checked against the psi-free replacement bound
instead (P0 >> M^259 for the T=84 chain, P0 >> M^(876(n^2-1)+7) for
T = 292(n^2-1)).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from decimal import Decimal, ROUND_HALF_UP

Z_EXP = Fraction(15, 4)  # modeled exponent of |z| (= 3.75)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))


def present(x: Fraction, places: int = 2) -> str:
    """Exact-rational to fixed-point string, round half up."""
    d = Decimal(x.numerator) / Decimal(x.denominator)
    return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class TagResult:
    tag: str
    lhs: Fraction | None
    rhs: Fraction | None
    slack: Fraction | None
    passes: bool
    note: str = ""

    def as_dict(self) -> dict:
        return {"tag": self.tag,
                "lhs": str(self.lhs) if self.lhs is not None else None,
                "rhs": str(self.rhs) if self.rhs is not None else None,
                "slack": str(self.slack) if self.slack is not None else None,
                "pass": self.passes, "note": self.note}


@dataclass(frozen=True)
class ExponentSystem:
    T: Fraction
    psi: Fraction | None          # None encodes psi = infinity
    delta: Fraction | None
    n: int
    params: dict                  # name -> Fraction exponent of M
    tags: tuple = ()              # TagResult per assumption
    notes: tuple = ()

    @property
    def all_pass(self) -> bool:
        return all(t.passes for t in self.tags)

    def failed(self) -> list:
        return [t.tag for t in self.tags if not t.passes]


def paper_exponents(T) -> dict:
    """The article's parameter choices as exact exponents of M."""
    T = _frac(T)
    B = 2 * T + 17
    e_u = (28 * B + 32) / 17
    e_P0 = (50 * B + 96) / 17
    e_P = (373 * B + 640) / 34
    e_Q = Fraction(11, 9) * e_P - (2 * T + 16) / 9
    return {"u": e_u, "P0": e_P0, "P": e_P, "Q": e_Q}


def _le(tag, lhs, rhs, note="") -> TagResult:
    slack = rhs - lhs
    return TagResult(tag, lhs, rhs, slack, slack >= 0, note)


def _vacuous(tag, note) -> TagResult:
    return TagResult(tag, None, None, None, True, note)


def solve_parameters(T, psi=None, delta=None, n: int = 14,
                     params: dict | None = None) -> ExponentSystem:
    """Evaluate all 21 assumption tags at the paper's exponent choices.

    psi=None means psi = infinity.  delta is only needed by S1/S4 (the
    general-form series chain); without it those tags are skipped with a
    note rather than guessed.
    """
    T = _frac(T)
    psi = _frac(psi) if psi is not None else None
    delta = _frac(delta) if delta is not None else None
    p = params or paper_exponents(T)
    e_u, e_P0, e_P, e_Q = p["u"], p["P0"], p["P"], p["Q"]
    B = 2 * T + 17
    tags = []
    notes = []

    tags.append(_le("M1", 2 * e_P0 + e_u, 3 * e_P))
    tags.append(_le("M2", e_u + e_P0 + 1 + 2 * Z_EXP, e_P,
                    note=f"|z| modeled as M^{Z_EXP}"))
    tags.append(_le("M3", 3 * e_P0 + e_u, e_P - (Fraction(17, 2) + T),
                    note="equality by construction"))

    if psi is None:
        for t in ("S1", "S2", "S3"):
            tags.append(_vacuous(t, "psi = infinity: vacuous"))
        # replacement series cutoff for the psi-free chain
        if T == 84:
            req = Fraction(259)
        else:
            req = Fraction(876) * (n * n - 1) + 7
        tags.append(TagResult("S4", req, e_P0, e_P0 - req, e_P0 >= req,
                              note="psi-free replacement cutoff P0 >> M^"
                                   + str(req)))
    else:
        if delta is not None:
            s1_mid = 14 / (14 - 6 * delta)
            ok = 0 < s1_mid < 1 + 3 * psi
            tags.append(TagResult("S1", s1_mid, 1 + 3 * psi,
                                  (1 + 3 * psi) - s1_mid, ok,
                                  note="also requires 14/(14-6 delta) > 0"))
        else:
            tags.append(_vacuous("S1", "delta not supplied: not evaluated"))
        tags.append(_le("S2", e_P0, 1 + 3 * psi))
        tags.append(TagResult("S3", Fraction(23), psi, psi - 23, psi >= 23,
                              note="list form psi >= 23; body form 70 <= "
                                   "1+3 psi is equivalent"))
        if delta is not None:
            if delta <= 2:
                tags.append(TagResult("S4", None, None, None, False,
                                      note="needs delta > 2"))
            else:
                req = (84 + 14 * delta / (14 - 6 * delta)) / (delta - 2)
                tags.append(TagResult("S4", req, e_P0, e_P0 - req,
                                      e_P0 >= req))
        else:
            tags.append(_vacuous("S4", "delta not supplied: not evaluated"))

    tags.append(_le("I1", 2 * e_u + 17, e_P))

    tags.append(_le("m1", 2 * e_Q, (n - 3) * e_P - (Fraction(17, 2) + T)))
    tags.append(_le("m2", 2 * T + 17, 8 * e_P))
    tags.append(_le("m3", (2 * T + 16) + 2 * e_Q, 11 * e_P))
    if psi is None:
        tags.append(_vacuous("m4", "psi = infinity: vacuous"))
        tags.append(_vacuous("m5", "psi = infinity: vacuous"))
    else:
        tags.append(_le("m4", 5 * e_P, 13 * psi - 2 * T - 17))
        tags.append(_le("m5", 3 * e_P + 2 * e_Q, 14 * psi - 2 * T - 16))
    tags.append(_le("m6", e_Q, Fraction(11, 9) * e_P - (2 * T + 16) / 9,
                    note="equality by choice of Q"))
    tags.append(_le("m7", Fraction(15, 13) * e_P + (6 * T + 64) / 13, e_Q))
    tags.append(_le("m8", Fraction(91, 9) * B + Fraction(440, 27), e_P))
    if psi is None:
        tags.append(_vacuous("m9", "psi = infinity: vacuous"))
    else:
        tags.append(_le("m9", e_P,
                        (175 * psi - 91 * B - 130) / 116))
    tags.append(_le("m10", Fraction(50, 17) * B + Fraction(96, 17), e_P0,
                    note="equality by choice of P0"))
    tags.append(_le("m11", Fraction(12, 11) * e_P + (234 * B + 503) / 187,
                    e_Q))
    if psi is None:
        tags.append(_vacuous("m12", "psi = infinity: vacuous"))
    else:
        tags.append(_le("m12", 3 * e_P - (Fraction(7, 2) * psi
                                          - (117 * B + 192) / 17), e_Q))
    tags.append(_le("m13", (28 * B + 32) / 17, e_u,
                    note="equality by choice of u"))
    return ExponentSystem(T=T, psi=psi, delta=delta, n=n, params=dict(p),
                          tags=tuple(tags), notes=tuple(notes))


def psi_requirement(T, params: dict | None = None,
                    delta=None) -> dict:
    """Minimal admissible psi across every psi-dependent tag.

    m9 is expected to bind at the paper's exponents; the per-tag minima
    are reported alongside the binding constraint.
    """
    T = _frac(T)
    p = params or paper_exponents(T)
    e_P0, e_P, e_Q = p["P0"], p["P"], p["Q"]
    B = 2 * T + 17
    mins = {
        "m9": (116 * e_P + 91 * B + 130) / 175,
        "m4": (5 * e_P + 2 * T + 17) / 13,
        "m5": (3 * e_P + 2 * e_Q + 2 * T + 16) / 14,
        "m12": Fraction(2, 7) * (3 * e_P - e_Q + (117 * B + 192) / 17),
        "S2": (e_P0 - 1) / 3,
        "S3": Fraction(23),
    }
    if delta is not None:
        d = _frac(delta)
        if 2 < d < Fraction(7, 3):
            mins["S1"] = (14 / (14 - 6 * d) - 1) / 3
    binding = max(mins, key=lambda k: mins[k])
    return {"psi_min": mins[binding], "binding": binding, "per_tag": mins}


def theorem_exponent_check(n: int) -> dict:
    """exp_P at T = 292(n^2 - 1) against the headline bound 6407 n^2."""
    T = Fraction(292) * (n * n - 1)
    e_P = paper_exponents(T)["P"]
    bound = Fraction(6407) * n * n
    return {"n": n, "exp_P": e_P, "bound": bound, "ok": e_P <= bound}


# -- threshold profile ------------------------------------------------------


def thresholds(T, p: Fraction, r: Fraction) -> dict:
    """Exponents of phi_0, phi_1, phi_2 at P = M^p, R = M^r, plus the
    crossover scales R0, R1."""
    T = _frac(T)
    B = 2 * T + 17
    phi0 = -(4 * r + 31 * p + 2 * T + 30) / 15
    phi1 = Fraction(9, 10) * r - 3 * p - (2 * T + Fraction(101, 5))
    phi2 = Fraction(7, 25) * B - Fraction(7, 10) * r - Fraction(43, 25) * p
    R0 = Fraction(4, 5) * p + Fraction(4, 5) * B + 2
    R1 = Fraction(50, 17) * B + Fraction(96, 17)
    return {"phi0": phi0, "phi1": phi1, "phi2": phi2, "R0": R0, "R1": R1}


def threshold_profile(T, p: Fraction | None = None, r_grid=None) -> dict:
    """Table of threshold exponents over a grid of R exponents, with the
    regime classification phi2 <= phi0 <= phi1 iff r >= R0 verified
    exactly at each grid point."""
    T = _frac(T)
    p = p if p is not None else paper_exponents(T)["P"]
    base = thresholds(T, p, Fraction(0))
    R0, R1 = base["R0"], base["R1"]
    if r_grid is None:
        r_grid = [R0 - 10, R0 - 1, R0, R0 + 1, R0 + 10, R1]
    rows = []
    for r in r_grid:
        r = _frac(r)
        t = thresholds(T, p, r)
        if r >= R0:
            regime = "phi2<=phi0<=phi1"
            ordered = t["phi2"] <= t["phi0"] <= t["phi1"]
        else:
            regime = "phi1<=phi0<=phi2"
            ordered = t["phi1"] <= t["phi0"] <= t["phi2"]
        rows.append({"r": r, "phi0": t["phi0"], "phi1": t["phi1"],
                     "phi2": t["phi2"], "regime": regime, "ordered": ordered})
    return {"P_exponent": p, "R0": R0, "R1": R1, "rows": rows}

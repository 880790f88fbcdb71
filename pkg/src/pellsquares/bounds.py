"""Closed-form thresholds as exact predicates.

Each threshold is a PowerTerm: a rational coefficient times a product of
symbol values raised to rational exponents.  Comparisons raise both sides
to the lcm of the exponent denominators and compare integers, so no
floating point is involved anywhere.

Symbols: b, N (= |N_alpha|), n (= sqrt|N_alpha|), d, u, y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as F

from .numeric import factorize, iroot, square_root


@dataclass(frozen=True)
class PowerTerm:
    coefficient: F
    exponents: tuple  # ((symbol, Fraction), ...)
    label: str = ""

    @staticmethod
    def make(coefficient, label="", **exponents):
        exps = tuple(sorted((k, F(v)) for k, v in exponents.items() if F(v) != 0))
        c = F(coefficient)
        if c <= 0:
            raise ValueError("coefficient must be positive")
        t = PowerTerm(c, exps, label)
        if t.lcm_den() > 23:
            raise ValueError("exponent denominators above 23 are not expected")
        return t

    def lcm_den(self) -> int:
        m = 1
        for _, e in self.exponents:
            m = m * e.denominator // math.gcd(m, e.denominator)
        return m

    def power(self, values: dict, m: int) -> F:
        """The term raised to the m-th power (m a multiple of lcm_den)."""
        out = self.coefficient**m
        for sym, e in self.exponents:
            if sym not in values:
                raise KeyError(f"missing value for {sym}")
            em = e * m
            assert em.denominator == 1
            out *= F(values[sym]) ** int(em)
        return out

    def floor(self, values: dict) -> int:
        """floor of the term's real value."""
        m = self.lcm_den()
        p = self.power(values, m)
        return iroot(p.numerator // p.denominator, m)

    def __str__(self):
        parts = [str(self.coefficient)]
        for sym, e in self.exponents:
            parts.append(f"{sym}^({e})")
        return "*".join(parts)


def compare_power(lhs, term: PowerTerm, values: dict) -> int:
    """Sign of (lhs - term) as -1, 0 or 1, exactly.  lhs is a positive rational."""
    lhs = F(lhs)
    if lhs < 0:
        raise ValueError("lhs must be non-negative")
    m = term.lcm_den()
    left = lhs**m
    right = term.power(values, m)
    return (left > right) - (left < right)


def _vals(params) -> dict:
    n = abs(params.n_alpha)
    return {"b": params.b, "N": n, "d": params.d, "u": params.u}


# --- gap principle -------------------------------------------------------------

GAP_COEFF = F(5732, 100)


def gap_holds(y_i, y_j, params) -> bool:
    """y_j > 57.32 d^2 y_i^3 / (b^4 N_alpha^2), exactly."""
    y_i, y_j = F(y_i), F(y_j)
    rhs = GAP_COEFF * params.d**2 * y_i**3 / (params.b**4 * params.n_alpha**2)
    return y_j > rhs


def gap_hypothesis_floor(params):
    """The two quantities y_i must reach for the gap principle to apply.

    Returns (A, B) with A = 4 sqrt(N/d) as a PowerTerm and B = b^2 N/d.
    """
    return (PowerTerm.make(4, N=F(1, 2), d=F(-1, 2)), F(params.b**2 * abs(params.n_alpha), params.d))


def gap_hypothesis_holds(y, params) -> bool:
    a_term, b_val = gap_hypothesis_floor(params)
    return F(y) >= b_val and compare_power(y, a_term, _vals(params)) >= 0


# --- square-free thresholds -----------------------------------------------------

SIX_TERMS = (
    PowerTerm.make(F(19, 100), "0.19 b^(26/11) N^(13/11) / d^(12/11)", b=F(26, 11), N=F(13, 11), d=F(-12, 11)),
    PowerTerm.make(F(1, 10), "b^(8/3) N^(7/6) / (10 d^(7/6))", b=F(8, 3), N=F(7, 6), d=F(-7, 6)),
    PowerTerm.make(F(148, 10), "14.8 b^(4/3) N^(5/3) / d^(1/2)", b=F(4, 3), N=F(5, 3), d=F(-1, 2)),
    PowerTerm.make(F(1633, 100), "16.33 b^2 N^2 / d^(1/2)", b=2, N=2, d=F(-1, 2)),
    PowerTerm.make(4, "4 N / d^(1/2)", N=1, d=F(-1, 2)),
    PowerTerm.make(1, "b^2 N / d", b=2, N=1, d=-1),
)

CONSOLIDATED_TERM = PowerTerm.make(F(1633, 100), "16.33 b^(8/3) N^2 / d^(1/2)", b=F(8, 3), N=2, d=F(-1, 2))


def exceeds_six_terms(y, params) -> bool:
    """True iff y is strictly above every one of the six terms."""
    if F(y) <= 0:
        return False
    v = _vals(params)
    return all(compare_power(y, term, v) > 0 for term in SIX_TERMS)


def six_term_threshold2(params) -> int:
    """floor(2 * max of the six terms).

    For a doubled value y2 = 2y, y exceeds every term iff y2 > this number.
    """
    v = _vals(params)
    v2 = dict(v)
    best = 0
    for term in SIX_TERMS:
        doubled = PowerTerm(term.coefficient * 2, term.exponents, term.label)
        best = max(best, doubled.floor(v2))
    return best


def exceeds_consolidated_term(y, params) -> bool:
    if F(y) <= 0:
        return False
    return compare_power(y, CONSOLIDATED_TERM, _vals(params)) > 0


# --- lower bounds on d ------------------------------------------------------------

# thresholds on d that involve N_alpha; written with n = sqrt|N_alpha|
STEP_TERMS = (
    PowerTerm.make(F(882, 1000), "0.882 N^(2/23) b^(48/23) / u^(44/23)", n=F(4, 23), b=F(48, 23), u=F(-44, 23)),
    PowerTerm.make(F(66, 100), "0.66 N^(1/13) b^(28/13) / u^(24/13)", n=F(2, 13), b=F(28, 13), u=F(-24, 13)),
    PowerTerm.make(F(153, 10), "15.3 N^(4/11) b^(20/11) / u^(24/11)", n=F(8, 11), b=F(20, 11), u=F(-24, 11)),
    PowerTerm.make(17, "17 b^2 N^(1/2) / u^2", n=1, b=2, u=-2),
)

SMALL_D_TERM = PowerTerm.make(12, "12 b^2 / u^2", b=2, u=-2)

ENUM_TERMS = (
    SMALL_D_TERM,
    PowerTerm.make(F(88, 100), "0.88 b^(8/3) / u^(44/21)", b=F(8, 3), u=F(-44, 21)),
    PowerTerm.make(F(64, 100), "0.64 b^(8/3) / u^2", b=F(8, 3), u=-2),
    PowerTerm.make(60, "60 b^(36/7) / u^(24/7)", b=F(36, 7), u=F(-24, 7)),
    PowerTerm.make(85, "85 b^8 / u^4", b=8, u=-4),
)


def _holds(cmp: int, strict: bool) -> bool:
    return cmp > 0 if strict else cmp >= 0


def step_d_bounds(params=None, *, b=None, d=None, u=None, n_alpha=None, strict=True):
    """For each of the four N_alpha-dependent thresholds, whether d exceeds it."""
    if params is not None:
        b, d, u, n_alpha = params.b, params.d, params.u, params.n_alpha
    if n_alpha is None or n_alpha >= 0:
        raise ValueError("N_alpha must be negative")
    n = math.isqrt(-n_alpha)
    vals = {"b": b, "u": u}
    if n * n == -n_alpha:
        vals["n"] = n
        return tuple(_holds(compare_power(d, t, vals), strict) for t in STEP_TERMS)
    # non-square |N_alpha|: substitute n^k = N^(k/2)
    vals["N"] = -n_alpha
    out = []
    for t in STEP_TERMS:
        exps = {("N" if s == "n" else s): (e / 2 if s == "n" else e) for s, e in t.exponents}
        tt = PowerTerm.make(t.coefficient, t.label, **exps)
        out.append(_holds(compare_power(d, tt, vals), strict))
    return tuple(out)


def step_n_limits(b: int, d: int, u: int, strict: bool = True) -> tuple:
    """Largest n for which each step threshold still lies below d.

    The thresholds increase with n = sqrt|N_alpha|, so a threshold holds for
    a tuple exactly when its n is at most the returned limit (-1 if none).
    """
    out = []
    for term in STEP_TERMS:
        m = term.lcm_den()
        e_n = int(dict(term.exponents)["n"] * m)
        # holds iff d^m > coeff^m b^.. u^.. n^e_n, i.e. n^e_n < ratio
        rest = PowerTerm(term.coefficient, tuple((s, e) for s, e in term.exponents if s != "n"))
        ratio = F(d) ** m / rest.power({"b": b, "u": u}, m)
        p, q = ratio.numerator, ratio.denominator
        if strict:
            # n^e q < p  <=>  n^e <= (p-1)//q
            lim = (p - 1) // q
        else:
            lim = p // q
        out.append(iroot(lim, e_n) if lim >= 0 else -1)
    return tuple(out)


def small_d_holds(b: int, d: int, u: int, strict: bool = True) -> bool:
    """Whether d exceeds 12 b^2 / u^2."""
    w = d * u * u - 12 * b * b
    return w > 0 if strict else w >= 0


@dataclass(frozen=True)
class EnumBound:
    b: int
    u: int
    cap: int  # largest integer d with d <= D_{b,u}
    term_index: int  # which of the five terms attains the max
    term: PowerTerm

    def exceeds(self, d) -> bool:
        """d > D_{b,u} exactly."""
        v = {"b": self.b, "u": self.u}
        return all(compare_power(d, t, v) > 0 for t in ENUM_TERMS)


def search_enum_bound(b: int, u: int) -> EnumBound:
    if b < 1 or u < 1:
        raise ValueError("b and u must be positive")
    v = {"b": b, "u": u}
    best_i = 0
    for i in range(1, len(ENUM_TERMS)):
        # compare term i with the current best: t_i > t_best ?
        ti, tb = ENUM_TERMS[i], ENUM_TERMS[best_i]
        m = math.lcm(ti.lcm_den(), tb.lcm_den())
        if ti.power(v, m) > tb.power(v, m):
            best_i = i
    cap = max(t.floor(v) for t in ENUM_TERMS)
    return EnumBound(b, u, cap, best_i, ENUM_TERMS[best_i])


def enum_bound_below(b: int, u: int, limit) -> bool:
    """max of the five terms < limit, exactly."""
    v = {"b": b, "u": u}
    return all(compare_power(limit, t, v) > 0 for t in ENUM_TERMS)


def compute_Ub(b: int) -> int:
    """Smallest u with D_{b,u} < 2."""
    if b < 1:
        raise ValueError("b must be positive")
    # D_{b,u} decreases in u; gallop then bisect
    hi = 1
    while not enum_bound_below(b, hi, 2):
        hi *= 2
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if enum_bound_below(b, mid, 2):
            hi = mid
        else:
            lo = mid
    return hi


# --- arithmetic of b --------------------------------------------------------------


def admissible_b(b: int) -> bool:
    """b = b1*b2 with b1 in {1,5,13,17} and no prime factor of b2 is 1 mod 4."""
    if b < 1:
        raise ValueError("b must be positive")
    for b1 in (1, 5, 13, 17):
        if b % b1:
            continue
        if all(p % 4 != 1 for p, _ in factorize(b // b1)):
            return True
    return False


class PreconditionError(ValueError):
    pass


def b_divisors_all_1mod4(a: int, b: int, d: int) -> bool:
    """Given gcd(a, b^2) squarefree and d b^4 - a^2 a positive square, check
    that every prime factor of b is 1 mod 4."""
    g = math.gcd(a, b * b)
    if any(e > 1 for _, e in factorize(g)):
        raise PreconditionError(f"gcd(a, b^2) = {g} is not squarefree")
    r = d * b**4 - a * a
    if r <= 0 or square_root(r) is None:
        raise PreconditionError(f"d b^4 - a^2 = {r} is not a positive square")
    return all(p % 4 == 1 for p, _ in factorize(b))


# --- growth of the sequence ----------------------------------------------------------

GROWTH_FACTOR_C = F(99, 100)
GROWTH_FACTOR_LOOSE = F(2, 5)  # stated for any d > 1; side conditions unclear


def growth_lower_bound(params, k: int, K: int | None = None, variant: str = "b") -> F:
    """Lower bound for y_k.

    variant "b": ratio du^2 - 3, always valid.
    variant "c": ratio 0.99 du^2, valid when N_eps = 1 or du^2 >= 300.
    variant "loose": ratio 0.4 du^2 (flagged: its side conditions are unclear).
    """
    du2 = params.d * params.u**2
    if variant == "b":
        ratio = F(du2 - 3)
    elif variant == "c":
        if not (params.n_eps == 1 or du2 >= 300):
            raise ValueError("0.99 ratio needs N_eps = 1 or d u^2 >= 300")
        ratio = GROWTH_FACTOR_C * du2
    elif variant == "loose":
        ratio = GROWTH_FACTOR_LOOSE * du2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if k == 0:
        raise ValueError("k must be nonzero")
    if k > 0:
        e = k - 1
    else:
        if K is None:
            raise ValueError("K is needed for negative k")
        e = max(0, K - k)
    base = F(abs(params.n_alpha) * params.u**2, 4 * params.b**2)
    return base * ratio**e

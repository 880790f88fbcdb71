"""Hypergeometric approximations to omega^(1/4) and their arithmetic.

X_{m,n,r}(z) = 2F1(-r-nu, -r; 1-nu; z) with nu = m/n is a polynomial of
degree r.  Evaluated at omega = u / conj(u) in an imaginary quadratic field
and scaled, it gives algebraic integers p_r, q_r with
q_r omega^(1/4) - p_r = R_r small.  p_r and q_r are built exactly in
Q(sqrt t') and only then turned into mpmath numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as F

import mpmath

from .numeric import padic_valuation, square_root, squarefree_core

SCRIPT_D4_LOG = F(168, 100)  # log of the constant D_4 in Q and E
K0 = F(89, 100)
C42 = F(1, 5)
GUARD_BITS = 16


class DomainError(ValueError):
    pass


class PrecisionError(ArithmeticError):
    pass


class NoDecomposition(ValueError):
    pass


# --- exact arithmetic in Q(sqrt t) ------------------------------------------------


@dataclass(frozen=True)
class QuadInt:
    """p + q sqrt(t) with rational p, q."""

    p: F
    q: F
    t: int

    def __post_init__(self):
        object.__setattr__(self, "p", F(self.p))
        object.__setattr__(self, "q", F(self.q))

    def _coerce(self, other):
        if isinstance(other, QuadInt):
            if other.t != self.t:
                raise ValueError("different radicands")
            return other
        return QuadInt(F(other), F(0), self.t)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadInt(self.p + o.p, self.q + o.q, self.t)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.p, -self.q, self.t)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadInt(self.p * o.p + self.t * self.q * o.q, self.p * o.q + self.q * o.p, self.t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = QuadInt(F(1), F(0), self.t)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self):
        return QuadInt(self.p, -self.q, self.t)

    def norm(self) -> F:
        return self.p * self.p - self.t * self.q * self.q

    def is_integral(self) -> bool:
        # (P + Q sqrt t)/2 form covers both Z[sqrt t] and the half-integer order
        p2, q2 = 2 * self.p, 2 * self.q
        if p2.denominator != 1 or q2.denominator != 1:
            return False
        return (self.norm()).denominator == 1

    def to_mp(self):
        s = mpmath.sqrt(mpmath.mpf(self.t)) if self.t > 0 else mpmath.mpc(0, mpmath.sqrt(-self.t))
        return mpmath.mpf(self.p.numerator) / self.p.denominator + (mpmath.mpf(self.q.numerator) / self.q.denominator) * s


# --- polynomial coefficients --------------------------------------------------------


def _check_mn(m: int, n: int):
    if not (0 < m < n) or math.gcd(m, n) != 1:
        raise ValueError(f"need 0 < m < n with gcd(m, n) = 1, got m={m}, n={n}")


def xpoly_coeffs(m: int, n: int, r: int) -> list[F]:
    """Coefficients of X_{m,n,r}, constant term first."""
    _check_mn(m, n)
    if r < 0:
        raise ValueError("r must be non-negative")
    nu = F(m, n)
    out = [F(1)]
    c = F(1)
    for i in range(r):
        # ratio of consecutive terms of 2F1(-r-nu, -r; 1-nu; z)
        c = c * (-r - nu + i) * (-r + i) / ((1 - nu + i) * (i + 1))
        out.append(c)
    return out


def _admissible_m(n: int, ms=None):
    if ms is not None:
        for m in ms:
            _check_mn(m, n)
        return list(ms)
    return [m for m in range(1, n) if math.gcd(m, n) == 1]


def dnr(n: int, r: int, ms=None) -> int:
    """Smallest D with D * X_{m,n,r} integral for every admissible m.

    ms restricts the m considered (default: all m coprime to n).
    """
    den = 1
    for m in _admissible_m(n, ms):
        for c in xpoly_coeffs(m, n, r):
            den = math.lcm(den, c.denominator)
    return den


def shifted_coeffs(m: int, n: int, r: int, D: int | None = None) -> list[int]:
    """Integers A_j with D * X_{m,n,r}(1 - s x) = sum_j A_j s^j x^j."""
    if D is None:
        D = dnr(n, r)
    c = [D * v for v in xpoly_coeffs(m, n, r)]
    assert all(v.denominator == 1 for v in c)
    out = []
    for j in range(r + 1):
        acc = sum(int(c[i]) * math.comb(i, j) for i in range(j, r + 1))
        out.append(acc if j % 2 == 0 else -acc)
    return out


def ndnr(d_prime: int, n: int, r: int, ms=None) -> int:
    """Largest N with (D/N) X_{m,n,r}(1 - sqrt(d') x) in Z[sqrt d'][x] for all m."""
    if d_prime == 0:
        raise ValueError("d' must be nonzero")
    D = dnr(n, r, ms)
    g = 0
    for m in _admissible_m(n, ms):
        for j, a in enumerate(shifted_coeffs(m, n, r, D)):
            g = math.gcd(g, a * d_prime ** (j // 2))
    return g if g else 1


def script_n_sq(d_prime, n: int = 4) -> F:
    """The square of the gain factor N_{d',n}; only n = 4 is supported."""
    if n != 4:
        raise NotImplementedError("only n = 4 is supported")
    if d_prime == 0:
        raise ValueError("d' must be nonzero")
    # N = 2^min(v2(d')/2, v2(4) + 1), so N^2 = 2^min(v2(d'), 6)
    return F(2) ** min(padic_valuation(2, d_prime), 6)


@dataclass(frozen=True)
class GFactor:
    g1: int
    g2: int
    g3: int

    @property
    def g_sq(self) -> F:
        return F(self.g1 * self.g1 * self.g2, self.g3)


def g_factor(u1: int, u2: int, t_prime: int) -> GFactor:
    if u1 == 0 or u2 == 0:
        raise ValueError("u1 and u2 must be nonzero")
    if t_prime >= 0:
        raise ValueError("t' must be negative")
    g1 = math.gcd(u1, u2)
    g2 = math.gcd(u1 // g1, t_prime)
    even = ((u1 - u2) // g1) % 2 == 0
    if t_prime % 4 == 1 and even:
        g3 = 1
    elif t_prime % 4 == 3 and even:
        g3 = 2
    else:
        g3 = 4
    return GFactor(g1, g2, g3)


def d_prime_of(u2: int, t_prime: int, g: GFactor) -> int:
    v = F(u2 * u2 * t_prime) / g.g_sq
    if v.denominator != 1:
        raise ArithmeticError(f"d' = {v} is not an integer")
    return int(v)


# --- numeric approximants ---------------------------------------------------------------


def _mpf(x: F):
    return mpmath.mpf(x.numerator) / x.denominator


@dataclass
class ApproximantTriple:
    r: int
    u1: int
    u2: int
    t_prime: int
    g: GFactor
    d_prime: int
    scriptN_sq: F
    D: int
    N: int
    p_exact: QuadInt  # p_r * g^r, exact
    q_exact: QuadInt  # q_r * g^r, exact
    p: object  # mpc
    q: object
    R: object
    omega: object
    phi: object
    Q: object
    E: object
    ell0: object
    k0: F
    working_bits: int

    def residual(self):
        """|q omega^(1/4) - p - R|, with omega^(1/4) = exp(i phi / 4)."""
        with mpmath.workprec(self.working_bits):
            w4 = mpmath.expjpi(self.phi / (4 * mpmath.pi))
            return abs(self.q * w4 - self.p - self.R)


def _hyp_series(a: F, b: F, c: F, z, tol, max_terms: int = 200000):
    """2F1(a, b; c; z) by direct summation, |z| < 1."""
    total = mpmath.mpc(1)
    term = mpmath.mpc(1)
    k = 0
    while True:
        term = term * _mpf((a + k) * (b + k) / ((c + k) * (k + 1))) * z
        total += term
        k += 1
        if abs(term) < tol * max(1, abs(total)) and k > 2:
            return total, k
        if k >= max_terms:
            raise PrecisionError("hypergeometric series did not converge")


def approximants(u1: int, u2: int, t_prime: int, r: int, precision_bits: int = 256,
                 single_m: bool = False) -> ApproximantTriple:
    """Build (p_r, q_r, R_r) and the quantities Q, E, l0, k0 for one u.

    precision_bits is the absolute accuracy aimed for; the working
    precision is raised by the size of q_r so that the cancellation in
    q_r omega^(1/4) - p_r does not eat the answer.

    single_m takes the denominators D and N from X_{1,4,r} alone instead
    of from both m = 1 and m = 3.  The two-m denominators grow like
    e^(3r), far faster than the constant in Q allows.
    """
    if precision_bits < 128:
        raise ValueError("precision must be at least 128 bits")
    g = g_factor(u1, u2, t_prime)
    dp = d_prime_of(u2, t_prime, g)
    nsq = script_n_sq(dp, 4)
    ms = (1,) if single_m else None
    D = dnr(4, r, ms)
    Nn = ndnr(dp, 4, r, ms)

    u = QuadInt(F(u1, 2), F(u2, 2), t_prime)
    su = u.conj()
    coeffs = xpoly_coeffs(1, 4, r)
    scale = F(D, Nn)
    # sigma(u)^r X(omega) = sum c_i u^i sigma(u)^(r-i); q uses the reversed polynomial
    p_ex = QuadInt(F(0), F(0), t_prime)
    q_ex = QuadInt(F(0), F(0), t_prime)
    upow = [u**i for i in range(r + 1)]
    spow = [su**i for i in range(r + 1)]
    for i, c in enumerate(coeffs):
        p_ex = p_ex + (c * scale) * upow[i] * spow[r - i]
        q_ex = q_ex + (c * scale) * upow[r - i] * spow[i]

    # magnitude of q_r in bits; g^-r can add up to r more (g^2 >= 1/4)
    size_bits = max(int(abs(q_ex.p)).bit_length(), int(abs(q_ex.q)).bit_length() + abs(t_prime).bit_length())
    size_bits += r + 8
    bits = precision_bits + size_bits + GUARD_BITS
    with mpmath.workprec(bits):
        uu = u.to_mp()
        ss = su.to_mp()
        omega = uu / ss
        phi = mpmath.arg(omega)
        z = 1 - omega
        if abs(z) >= 1:
            raise DomainError(f"|omega - 1| = {mpmath.nstr(abs(z), 8)} is not below 1")
        gabs = mpmath.sqrt(_mpf(g.g_sq))
        ginv_r = gabs ** (-r)
        p = p_ex.to_mp() * ginv_r
        q = q_ex.to_mp() * ginv_r

        nu = F(1, 4)
        pref = F(1)
        for j in range(r + 1):
            pref *= (nu + j) / (r + 1 + j)
        tol = mpmath.mpf(2) ** (-(bits + GUARD_BITS))
        hyp, _ = _hyp_series(r + 1 - nu, F(r + 1), F(2 * r + 2), z, tol)
        R14 = (omega - 1) ** (2 * r + 1) * _mpf(pref) * hyp
        R = _mpf(scale) * (ss / gabs) ** r * R14

        d4 = mpmath.exp(_mpf(SCRIPT_D4_LOG))
        gN = gabs * mpmath.sqrt(_mpf(nsq))
        root = abs(abs(mpmath.mpf(u1)) + mpmath.sqrt(mpmath.mpf(u1 * u1 - t_prime * u2 * u2)))
        Q = d4 * root / gN
        E = gN * root / (d4 * u2 * u2 * abs(t_prime))
        ell0 = _mpf(C42) * abs(phi)
    return ApproximantTriple(
        r=r, u1=u1, u2=u2, t_prime=t_prime, g=g, d_prime=dp, scriptN_sq=nsq, D=D, N=Nn,
        p_exact=p_ex, q_exact=q_ex, p=p, q=q, R=R, omega=omega, phi=phi,
        Q=Q, E=E, ell0=ell0, k0=K0, working_bits=bits,
    )


def approximation_lower_bound(Q, E, k0, ell0, q_abs, c, same_fraction: bool = False, max_r: int = 10**6):
    """(r0, lower bound for |q theta - p|) for an approximation built from a sequence of approximants.

    r0 is the smallest positive integer with
    (Q - 1/E) ell0 |q| / (Q - 1) < c E^r0.  same_fraction selects the weaker
    bound used when p/q coincides with p_r0/q_r0.
    """
    Q, E, k0, ell0, q_abs, c = (mpmath.mpf(float(v)) if isinstance(v, F) else mpmath.mpf(v) for v in (Q, E, k0, ell0, q_abs, c))
    if not (Q > 1 and E > 1 and 0 < c < 1 and k0 > 0 and ell0 > 0):
        raise ValueError("need Q, E > 1, 0 < c < 1 and k0, ell0 > 0")
    lhs = (Q - 1 / E) * ell0 * q_abs / (Q - 1)
    r0 = 1
    while not lhs < c * E**r0:
        r0 += 1
        if r0 > max_r:
            raise ValueError("r0 search ran away")
    if same_fraction:
        bound = (1 - c / E) / (k0 * Q ** (r0 + 1))
    else:
        bound = (1 - c) / (k0 * Q**r0)
    return r0, bound


# --- quartic representation ------------------------------------------------------------


def quartic_decompose(x: int, y_root: int, params, k: int, sign: int | None = None):
    """Find (f, r, s, sign) with
    sign * f^2 (x + N_eps^k sqrt(N_alpha)) = (a + sqrt N_alpha)(r + s sqrt c)^4
    and f * y_root = b (r^2 - c s^2), where c = core(N_alpha) and f | b^2.
    """
    n_alpha = params.n_alpha
    if n_alpha >= 0:
        raise ValueError("N_alpha must be negative")
    core = squarefree_core(n_alpha)
    m = square_root(n_alpha // core)
    if m is None or m * m * core != n_alpha:
        raise ValueError("N_alpha / core(N_alpha) must be a square")
    if k == 0:
        raise ValueError("k must be nonzero")
    ne = params.n_eps ** (k % 2)
    lhs_base = QuadInt(F(x), F(ne * m), core)
    alpha_part = QuadInt(F(params.a), F(m), core)
    b = params.b
    b2 = b * b
    signs = (1, -1) if sign is None else (sign,)
    for f in range(1, b2 + 1):
        if b2 % f or (f * y_root) % b:
            continue
        M = f * y_root // b
        target = {sg: lhs_base * (sg * f * f) for sg in signs}
        rmax = math.isqrt(M)
        for r in range(rmax, -rmax - 1, -1):
            rest = M - r * r
            if rest % (-core):
                continue
            s_abs = square_root(rest // (-core))
            if s_abs is None:
                continue
            for s in ((s_abs, -s_abs) if s_abs else (0,)):
                rhs = alpha_part * QuadInt(F(r), F(s), core) ** 4
                for sg in signs:
                    if rhs == target[sg]:
                        return (f, r, s, sg)
    raise NoDecomposition(f"no quartic representation for x={x}, y_root={y_root}")


# --- quantities attached to sequence elements ----------------------------------------------


def element_u_data(params, elem):
    """(u1, u2, t') used for an element: u1 = 2 x_k, u2 = 2 sqrt(N_alpha/core), t' = core."""
    if elem.x2 % 2 or elem.y2 % 2:
        raise ValueError("x_k and y_k must be integers")
    core = squarefree_core(params.n_alpha)
    m = square_root(params.n_alpha // core)
    return elem.x2, 2 * m, core


def gain_product_sq(params, elem) -> F:
    """g^2 * N_{d',4}^2 for the element's (u1, u2, t')."""
    u1, u2, tp = element_u_data(params, elem)
    g = g_factor(u1, u2, tp)
    return g.g_sq * script_n_sq(d_prime_of(u2, tp, g), 4)


def omega_angle(params, elem, k: int | None = None):
    """phi_k with omega_k = (x + s sqrt N)/(x - s sqrt N) = e^(i phi_k), s = N_eps^k."""
    k = elem.k if k is None else k
    s = params.n_eps ** (k % 2)
    n = square_root(-params.n_alpha)
    if n is None:
        raise ValueError("-N_alpha must be a square")
    # x2 = 2x; arg((x + i s n)^2) = 2 atan2(s n, x)
    phi = 2 * mpmath.atan2(mpmath.mpf(2 * s * n), mpmath.mpf(elem.x2))
    if phi > mpmath.pi:
        phi -= 2 * mpmath.pi
    elif phi <= -mpmath.pi:
        phi += 2 * mpmath.pi
    return phi

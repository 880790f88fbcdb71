"""The sequences x_k + y_k*sqrt(d) = alpha * eps**(2k) and alpha * eps**k.

alpha = a + b^2 sqrt(d) and eps = (t + u sqrt(d))/2 is a unit.  When t and
u are both odd the coordinates can be half-integers, so every element is
stored doubled: (2x_k, 2y_k), which is always a pair of integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .numeric import square_root

K_DESCENT_CAP = 10**6


class NonUnit(ValueError):
    pass


class SquareD(ValueError):
    pass


class NonPositive(ValueError):
    pass


@dataclass(frozen=True)
class SequenceParams:
    a: int
    b: int
    d: int
    t: int
    u: int
    n_alpha: int = field(init=False)
    n_eps: int = field(init=False)
    trace2: int = field(init=False)  # (t^2 + d u^2)/2, the trace of eps^2

    def __post_init__(self):
        a, b, d, t, u = self.a, self.b, self.d, self.t, self.u
        for name, v in (("a", a), ("b", b), ("d", d), ("t", t), ("u", u)):
            if not isinstance(v, int) or v <= 0:
                raise NonPositive(f"{name} must be a positive integer, got {v!r}")
        if d < 2 or square_root(d) is not None:
            raise SquareD(f"d = {d} must be a non-square >= 2")
        w = t * t - d * u * u
        if w not in (4, -4):
            raise NonUnit(f"t^2 - d u^2 = {w}, not +-4")
        object.__setattr__(self, "n_alpha", a * a - b**4 * d)
        object.__setattr__(self, "n_eps", w // 4)
        object.__setattr__(self, "trace2", (t * t + d * u * u) // 2)

    @property
    def as_tuple(self):
        return (self.a, self.b, self.d, self.t, self.u)

    @property
    def neg_norm_is_square(self) -> bool:
        return self.n_alpha < 0 and square_root(-self.n_alpha) is not None


def validate_params(a, b, d, t, u) -> SequenceParams:
    return SequenceParams(a, b, d, t, u)


@dataclass(frozen=True)
class SequenceElement:
    k: int
    x2: int
    y2: int

    @property
    def y(self):
        """y_k as an int when it is one, else None."""
        return self.y2 // 2 if self.y2 % 2 == 0 else None


# Elements of Z[sqrt d] are kept as "halved pairs" (X, Y) meaning (X + Y sqrt d)/2.


def _hmul(p, q, d):
    # ((X1 + Y1 s)/2) * ((X2 + Y2 s)/2) = ((X1X2 + d Y1Y2)/2 + (X1Y2 + X2Y1)/2 s)/2
    x = p[0] * q[0] + d * p[1] * q[1]
    y = p[0] * q[1] + p[1] * q[0]
    return (x // 2, y // 2)


def _hpow(base, e, d):
    result = (2, 0)
    while e:
        if e & 1:
            result = _hmul(result, base, d)
        base = _hmul(base, base, d)
        e >>= 1
    return result


def _unit_power(params: SequenceParams, e: int):
    """eps**e as a halved pair; negative e uses the inverse unit."""
    eps = (params.t, params.u)
    if e < 0:
        # eps^-1 = N_eps * conj(eps)
        s = params.n_eps
        eps = (s * params.t, -s * params.u)
        e = -e
    return _hpow(eps, e, params.d)


def _times_alpha(params: SequenceParams, w):
    # alpha = (2a + 2b^2 sqrt d)/2
    return _hmul((2 * params.a, 2 * params.b**2), w, params.d)


def element_at(params: SequenceParams, k: int) -> SequenceElement:
    """(2x_k, 2y_k) for alpha * eps^(2k), by binary powering."""
    x2, y2 = _times_alpha(params, _unit_power(params, 2 * k))
    return SequenceElement(k, x2, y2)


def element_prime_at(params: SequenceParams, k: int) -> SequenceElement:
    """(2x'_k, 2y'_k) for alpha * eps^k."""
    x2, y2 = _times_alpha(params, _unit_power(params, k))
    return SequenceElement(k, x2, y2)


def seeds(params: SequenceParams):
    """Doubled (x, y) at k = -1, 0, 1 from the closed forms."""
    a, b2, d, t, u, c = params.a, params.b**2, params.d, params.t, params.u, params.trace2
    y_plus = b2 * c + a * t * u
    y_minus = b2 * c - a * t * u
    x_plus = a * c + b2 * d * t * u
    x_minus = a * c - b2 * d * t * u
    return (x_minus, y_minus), (2 * a, 2 * b2), (x_plus, y_plus)


def iter_forward(params: SequenceParams, start: int = 0):
    """Yield elements k = start, start+1, ... (start >= 0) via the recurrence."""
    c = params.trace2
    _, e0, e1 = seeds(params)
    prev, cur, k = e0, e1, 0
    if start <= 0:
        yield SequenceElement(0, *e0)
    k = 1
    while True:
        if k >= start:
            yield SequenceElement(k, *cur)
        prev, cur = cur, (c * cur[0] - prev[0], c * cur[1] - prev[1])
        k += 1


def iter_backward(params: SequenceParams):
    """Yield elements k = -1, -2, ... via the recurrence."""
    c = params.trace2
    em1, e0, _ = seeds(params)
    prev, cur, k = e0, em1, -1
    while True:
        yield SequenceElement(k, *cur)
        prev, cur = cur, (c * cur[0] - prev[0], c * cur[1] - prev[1])
        k -= 1


def elements_by_recurrence(params: SequenceParams, k_lo: int, k_hi: int) -> list[SequenceElement]:
    """All elements with k_lo <= k <= k_hi, walking the recurrence from k = 0."""
    out = []
    if k_hi >= 0:
        for e in iter_forward(params, max(k_lo, 0)):
            if e.k > k_hi:
                break
            out.append(e)
    if k_lo < 0:
        back = []
        for e in iter_backward(params):
            if e.k < k_lo:
                break
            if e.k <= k_hi:
                back.append(e)
        out = back[::-1] + out
    return out


def elements_prime_by_recurrence(params: SequenceParams, k_lo: int, k_hi: int):
    """Elements of alpha*eps^k for k_lo..k_hi using y'_{k+1} = t y'_k - N_eps y'_{k-1}."""
    t, s = params.t, params.n_eps
    start = element_prime_at(params, k_lo)
    out = [start]
    if k_hi > k_lo:
        nxt = element_prime_at(params, k_lo + 1)
        out.append(nxt)
        a, b = start, nxt
        for k in range(k_lo + 2, k_hi + 1):
            # eps^2 = t*eps - N_eps
            c = SequenceElement(k, t * b.x2 - s * a.x2, t * b.y2 - s * a.y2)
            out.append(c)
            a, b = b, c
    return out


def compute_K(params: SequenceParams) -> int:
    """Largest negative k with y_k > b^2.

    Needs N_alpha < 0; otherwise y_k turns negative for k -> -infinity.
    """
    if params.n_alpha > 0:
        raise ValueError("K is undefined for N_alpha > 0")
    limit = 2 * params.b**2
    for e in iter_backward(params):
        if e.y2 > limit:
            return e.k
        if -e.k > K_DESCENT_CAP:
            raise RuntimeError("K descent did not terminate; parameters are inconsistent")
    raise AssertionError("unreachable")


def scan_squares(params: SequenceParams, k_lo: int, k_hi: int, use_prime_sequence: bool = False):
    """[(k, root)] for every k in range with y_k (or y'_k) an integer square."""
    if k_lo > k_hi:
        raise ValueError("empty range")
    if use_prime_sequence:
        elems = elements_prime_by_recurrence(params, k_lo, k_hi)
    else:
        elems = elements_by_recurrence(params, k_lo, k_hi)
    hits = []
    for e in elems:
        if e.y2 % 2 == 0:
            r = square_root(e.y2 // 2)
            if r is not None:
                hits.append((e.k, r))
    return hits

"""Pure-Python versions of the compiled search kernels (same API)."""

import math

_SQ64 = 0x202021202030213


def _sqrt_exact(n):
    if n < 0 or not (_SQ64 >> (n & 63)) & 1:
        return -1
    r = math.isqrt(n)
    return r if r * r == n else -1


def trial_factor(n, primes):
    out = []
    m = n
    for p in primes:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    return out, m


def square_window(total, a_lo, a_hi):
    out = []
    for a in range(max(a_lo, 1), a_hi + 1):
        r = _sqrt_exact(total - a * a)
        if r > 0:
            out.append((a, r))
    return out


def count_square_window(total, a_lo, a_hi):
    return sum(1 for a in range(max(a_lo, 1), a_hi + 1) if _sqrt_exact(total - a * a) > 0)


def t_candidates(u, norm, t_lo, t_hi):
    uu = u * u
    return [t for t in range(max(t_lo, 1), t_hi + 1) if t * t - 4 * norm > 0 and (t * t - 4 * norm) % uu == 0]

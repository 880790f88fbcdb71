"""Exact integer primitives: square roots, cores, valuations, factoring.

Everything here works on Python ints and Fractions, so nothing is ever
rounded.  Factoring uses trial division below 10**6 with a Miller-Rabin
test and Pollard's rho for whatever is left over.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache

TRIAL_LIMIT = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def isqrt(n: int) -> int:
    """floor(sqrt(n)) for n >= 0."""
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def square_root(n: int) -> int | None:
    """Return m with m*m == n, or None when n is not a square."""
    if n < 0:
        return None
    # squares mod 64 form a small set; reject most non-squares cheaply
    if (0x202021202030213 >> (n & 63)) & 1 == 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def is_perfect_square(n: int) -> bool:
    return square_root(n) is not None


def iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for x >= 0, k >= 1."""
    if x < 0:
        raise ValueError("iroot of a negative number")
    if k == 1 or x < 2:
        return x
    if k == 2:
        return math.isqrt(x)
    # float guess, then fix up exactly
    try:
        r = int(round(x ** (1.0 / k)))
    except OverflowError:
        r = 1 << -(-x.bit_length() // k)
    if r < 1:
        r = 1
    if r.bit_length() > 50:
        # Newton from above for huge values
        r = 1 << -(-x.bit_length() // k)
        while True:
            s = ((k - 1) * r + x // r ** (k - 1)) // k
            if s >= r:
                break
            r = s
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24 with the fixed bases."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1)
def _small_primes(limit: int = TRIAL_LIMIT) -> tuple:
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit, i)))
    return tuple(i for i in range(limit) if sieve[i])


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        y = rng.randrange(0, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    f = _pollard_rho(n)
    _split_large(f, out)
    _split_large(n // f, out)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorisation of n >= 1 as [(p, e), ...], primes ascending."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    m = n
    for i, p in enumerate(_small_primes()):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
        elif i & 255 == 255 and is_probable_prime(m):
            # a prime cofactor would otherwise cost a full trial run
            break
    if m > 1:
        if m < TRIAL_LIMIT * TRIAL_LIMIT or is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
        else:
            _split_large(m, out)
    return sorted(out.items())


def squarefree_core(n: int) -> int:
    """The squarefree c with n/c a positive square (sign follows n)."""
    if n == 0:
        raise ValueError("core of 0 is undefined")
    c = 1
    for p, e in factorize(abs(n)):
        if e % 2:
            c *= p
    return c if n > 0 else -c


def padic_valuation(p: int, x) -> int:
    """Exponent of the prime p in the nonzero rational x."""
    if p < 2 or not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is undefined")

    def v(m: int) -> int:
        m = abs(m)
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        return e

    return v(x.numerator) - v(x.denominator)


# --- sums of two squares ----------------------------------------------------


def _gmul(z, w):
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


@lru_cache(maxsize=65536)
def gaussian_prime_over(p: int) -> tuple[int, int]:
    """(x, y) with x*x + y*y == p for p == 2 or p == 1 mod 4."""
    if p == 2:
        return (1, 1)
    if p % 4 != 1:
        raise ValueError(f"{p} is not a sum of two squares")
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    r = pow(c, (p - 1) // 4, p)
    # Euclid on (p, r) stops at the first remainder below sqrt(p)
    a, b = p, r
    lim = math.isqrt(p)
    while b > lim:
        a, b = b, a % b
    y = math.isqrt(p - b * b)
    return (b, y)


def two_square_reps(factors) -> list[tuple[int, int]]:
    """All (a, n) with a, n > 0 and a*a + n*n equal to the factored number.

    factors is a mapping or list of (prime, exponent).  Output is sorted
    by a.
    """
    items = factors.items() if isinstance(factors, dict) else factors
    scale = 1
    gens = [(1, 0)]
    for p, e in items:
        if e == 0:
            continue
        if p % 4 == 3:
            if e % 2:
                return []
            scale *= p ** (e // 2)
        elif p == 2:
            # (1+i)^e
            z = (1, 0)
            for _ in range(e):
                z = _gmul(z, (1, 1))
            gens = [_gmul(g, z) for g in gens]
        else:
            x, y = gaussian_prime_over(p)
            pw = [(1, 0)]
            pwc = [(1, 0)]
            for _ in range(e):
                pw.append(_gmul(pw[-1], (x, y)))
                pwc.append(_gmul(pwc[-1], (x, -y)))
            gens = [_gmul(g, _gmul(pw[j], pwc[e - j])) for g in gens for j in range(e + 1)]
    out = set()
    for a, n in gens:
        for _ in range(4):
            if a > 0 and n > 0:
                out.add((a * scale, n * scale))
            a, n = -n, a
    return sorted(out)


def merge_factors(*parts) -> dict:
    out: dict[int, int] = {}
    for part in parts:
        items = part.items() if isinstance(part, dict) else part
        for p, e in items:
            out[p] = out.get(p, 0) + e
    return out

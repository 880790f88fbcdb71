# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Hot loops of the tuple search on machine integers.

Mirrors _kernels_py; callers must keep every value below 2**62.
"""

from libc.math cimport sqrt

cdef unsigned long long SQ64 = 0x202021202030213ULL


cdef inline long long _isqrt(long long n) nogil:
    cdef long long r = <long long>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef inline long long _sqrt_exact(long long n) nogil:
    """Root of n if n is a square, else -1."""
    cdef long long r
    if n < 0 or not ((SQ64 >> (n & 63)) & 1):
        return -1
    r = _isqrt(n)
    return r if r * r == n else -1


def trial_factor(long long n, const int[:] primes):
    """Strip primes p (with p*p <= n) from n; return ([(p, e)], cofactor)."""
    cdef Py_ssize_t i, np_ = primes.shape[0]
    cdef long long p, m = n
    cdef int e
    out = []
    for i in range(np_):
        p = primes[i]
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    return out, m


def square_window(long long total, long long a_lo, long long a_hi):
    """[(a, n)] with a_lo <= a <= a_hi, n > 0 and a*a + n*n == total."""
    cdef long long a, r
    out = []
    if a_lo < 1:
        a_lo = 1
    for a in range(a_lo, a_hi + 1):
        r = _sqrt_exact(total - a * a)
        if r > 0:
            out.append((a, r))
    return out


def count_square_window(long long total, long long a_lo, long long a_hi):
    cdef long long a, c = 0
    if a_lo < 1:
        a_lo = 1
    with nogil:
        for a in range(a_lo, a_hi + 1):
            if _sqrt_exact(total - a * a) > 0:
                c += 1
    return c


def t_candidates(long long u, int norm, long long t_lo, long long t_hi):
    """t in [t_lo, t_hi] with u*u dividing t*t - 4*norm > 0."""
    cdef long long t, uu = u * u, w
    out = []
    if t_lo < 1:
        t_lo = 1
    for t in range(t_lo, t_hi + 1):
        w = t * t - 4 * norm
        if w > 0 and w % uu == 0:
            out.append(t)
    return out

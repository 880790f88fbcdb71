import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pellsquares.numeric import (
    factorize,
    gaussian_prime_over,
    iroot,
    is_perfect_square,
    is_probable_prime,
    isqrt,
    merge_factors,
    padic_valuation,
    square_root,
    squarefree_core,
    two_square_reps,
)


@pytest.mark.parametrize("n, r", [(0, 0), (16, 4), (33203125, 5762), (15, 3)])
def test_isqrt_examples(n, r):
    assert isqrt(n) == r


def test_isqrt_rejects_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=2**512))
def test_isqrt_brackets(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) ** 2


@given(st.integers(min_value=-10, max_value=2**200))
def test_perfect_square_matches_isqrt(n):
    expect = n >= 0 and math.isqrt(n) ** 2 == n
    assert is_perfect_square(n) == expect
    root = square_root(n)
    assert (root is not None) == expect
    if expect:
        assert root * root == n


@pytest.mark.parametrize("n, root", [(390625, 625), (28, None), (0, 0), (1, 1), (2**64 + 1, None)])
def test_square_root_examples(n, root):
    assert square_root(n) == root


@given(st.integers(min_value=0, max_value=2**300), st.integers(min_value=1, max_value=23))
def test_iroot_brackets(x, k):
    r = iroot(x, k)
    assert r**k <= x < (r + 1) ** k


@pytest.mark.parametrize("n, c", [(1, 1), (-28, -7), (50, 2), (-1, -1), (72, 2)])
def test_squarefree_core_examples(n, c):
    assert squarefree_core(n) == c


def test_squarefree_core_zero():
    with pytest.raises(ValueError):
        squarefree_core(0)


@given(st.integers(min_value=-10**12, max_value=10**12).filter(bool))
def test_squarefree_core_property(n):
    c = squarefree_core(n)
    assert (c > 0) == (n > 0)
    q = n // c
    assert q * c == n and q > 0 and math.isqrt(q) ** 2 == q
    assert all(e == 1 for _, e in factorize(abs(c)))


@pytest.mark.parametrize("p, x, v", [(2, 48, 4), (3, 54, 3), (2, Fraction(5, 8), -3), (5, Fraction(-50, 3), 2)])
def test_padic_examples(p, x, v):
    assert padic_valuation(p, x) == v


@pytest.mark.parametrize("p, x", [(4, 8), (2, 0)])
def test_padic_errors(p, x):
    with pytest.raises(ValueError):
        padic_valuation(p, x)


@pytest.mark.parametrize("n, f", [(1, []), (24, [(2, 3), (3, 1)]), (3025, [(5, 2), (11, 2)])])
def test_factorize_examples(n, f):
    assert factorize(n) == f


@settings(max_examples=60)
@given(st.integers(min_value=1, max_value=10**24))
def test_factorize_matches_sympy(n):
    assert factorize(n) == sorted(sympy.factorint(n).items())


def test_factorize_semiprime_beyond_trial_range():
    p, q = 1000003, 998244353
    assert factorize(p * q * q) == [(p, 1), (q, 2)]


@given(st.integers(min_value=-5, max_value=10**6))
def test_primality_matches_sympy(n):
    assert is_probable_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("p", [5, 13, 17, 29, 1000033])
def test_gaussian_prime(p):
    x, y = gaussian_prime_over(p)
    assert x * x + y * y == p


@settings(max_examples=80)
@given(st.integers(min_value=1, max_value=200000))
def test_two_square_reps_brute_force(n):
    expect = []
    for a in range(1, math.isqrt(n) + 1):
        r = square_root(n - a * a)
        if r:
            expect.append((a, r))
    assert two_square_reps(dict(factorize(n))) == expect


def test_two_square_reps_example():
    # 3125 = 5 * 5^4
    assert [a for a, _ in two_square_reps(merge_factors({5: 1}, {5: 4}))] == [10, 25, 38, 41, 50, 55]

import math
from array import array

import pytest
from hypothesis import given, strategies as st

from pellsquares import _kernels_py, kernels
from pellsquares.numeric import _small_primes, factorize

IMPLS = kernels.implementations()
PRIMES = array("i", _small_primes())


def test_compiled_backend_present():
    assert "compiled" in IMPLS, "the Cython extension is not built"


@pytest.mark.parametrize("name", sorted(IMPLS))
@given(st.integers(1, 2**61))
def test_factor_int(name, n):
    assert sorted(kernels.factor_int(n, IMPLS[name]).items()) == factorize(n)


@given(st.integers(1, 10**12), st.integers(1, 3000))
def test_square_window_equivalence(total, span):
    hi = min(math.isqrt(total), span)
    expect = _kernels_py.square_window(total, 1, hi)
    for mod in IMPLS.values():
        assert mod.square_window(total, 1, hi) == expect
        assert mod.count_square_window(total, 1, hi) == len(expect)


@given(st.integers(1, 60), st.sampled_from((-1, 1)), st.integers(1, 10**6), st.integers(0, 5000))
def test_t_candidates_equivalence(u, norm, lo, span):
    expect = _kernels_py.t_candidates(u, norm, lo, lo + span)
    for mod in IMPLS.values():
        assert mod.t_candidates(u, norm, lo, lo + span) == expect


def test_wrappers_fall_back_above_machine_range():
    big = 2**70 + 1
    assert kernels.factor_int(big) == dict(factorize(big))
    assert kernels.t_candidates(1, -1, 2**31, 2**31 + 2) == [2**31, 2**31 + 1, 2**31 + 2]
    total = 5**2 * 2**64
    assert kernels.square_window(total, 2**33, 2**33 + 10) == _kernels_py.square_window(total, 2**33, 2**33 + 10)


def test_trial_factor_cofactor():
    for mod in IMPLS.values():
        found, m = mod.trial_factor(2**5 * 1000003 * 1000033, PRIMES)
        assert found == [(2, 5)] and m == 1000003 * 1000033

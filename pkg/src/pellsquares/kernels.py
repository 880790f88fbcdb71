"""Picks the compiled search kernels when available, else the pure-Python ones.

Set PELLSQUARES_PURE=1 to force the pure-Python versions.
"""

from __future__ import annotations

import os
from array import array

from .numeric import TRIAL_LIMIT, _small_primes, factorize

MACHINE_LIMIT = 1 << 62

if os.environ.get("PELLSQUARES_PURE", "") not in ("", "0"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

        BACKEND = "python"

_PRIMES = None


def _primes():
    global _PRIMES
    if _PRIMES is None:
        _PRIMES = array("i", _small_primes())
    return _PRIMES


def factor_int(n: int, impl=None) -> dict:
    """Factorisation of n >= 1 as {p: e}, using the kernel for small n."""
    impl = impl or _impl
    if n >= MACHINE_LIMIT:
        return dict(factorize(n))
    found, m = impl.trial_factor(n, _primes())
    out = dict(found)
    if m > 1:
        if m < TRIAL_LIMIT * TRIAL_LIMIT:
            out[m] = out.get(m, 0) + 1
        else:
            for p, e in factorize(m):
                out[p] = out.get(p, 0) + e
    return out


def square_window(total: int, a_lo: int, a_hi: int, impl=None):
    impl = impl or _impl
    if total >= MACHINE_LIMIT:
        impl = _kernels_py_module()
    return impl.square_window(total, a_lo, a_hi)


def count_square_window(total: int, a_lo: int, a_hi: int, impl=None):
    impl = impl or _impl
    if total >= MACHINE_LIMIT:
        impl = _kernels_py_module()
    return impl.count_square_window(total, a_lo, a_hi)


def t_candidates(u: int, norm: int, t_lo: int, t_hi: int, impl=None):
    """t in [t_lo, t_hi] with u^2 dividing t^2 - 4 norm > 0."""
    impl = impl or _impl
    if t_hi * t_hi >= MACHINE_LIMIT:
        impl = _kernels_py_module()
    return impl.t_candidates(u, norm, t_lo, t_hi)


def _kernels_py_module():
    from . import _kernels_py

    return _kernels_py


def implementations() -> dict:
    """Every importable backend, keyed by name (for benchmarks and tests)."""
    out = {"python": _kernels_py_module()}
    try:
        from . import _kernels

        out["compiled"] = _kernels
    except ImportError:
        pass
    return out

"""Counting distinct squares in a window of a sequence.

The counts are compared with the conjectured limits, which depend on the
arithmetic of N_alpha.  A finite window is evidence, never proof.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .numeric import factorize, is_probable_prime, square_root, squarefree_core
from .sequences import SequenceParams, elements_by_recurrence, elements_prime_by_recurrence

WINDOW_GUARD = 10**4
DEFAULT_WINDOW = 100

# classes for the y_k sequence and their limits
SQUARE_NORM = "square-norm"
TWO_P_NORM = "2p-norm"
GENERAL = "general"
LIMITS_BASE = {SQUARE_NORM: 2, TWO_P_NORM: 3, GENERAL: 4}

# classes for the y'_k sequence
PRIME_POWER_OR_SQUARE = "prime-power-or-square"
LIMITS_PRIME = {PRIME_POWER_OR_SQUARE: 3, GENERAL: 4}


def norm_class(n_alpha: int) -> str:
    """square-norm, 2p-norm (core(|N|) divides 2p for an odd prime p) or general."""
    m = abs(n_alpha)
    if m == 0:
        raise ValueError("N_alpha must be nonzero")
    if square_root(m) is not None:
        return SQUARE_NORM
    c = squarefree_core(m)
    odd = c // 2 if c % 2 == 0 else c
    if odd == 1 or (odd > 2 and is_probable_prime(odd)):
        return TWO_P_NORM
    return GENERAL


def prime_norm_class(n_alpha: int) -> str:
    m = abs(n_alpha)
    if square_root(m) is not None or len(factorize(m)) == 1:
        return PRIME_POWER_OR_SQUARE
    return GENERAL


@dataclass
class SquareCensus:
    params: SequenceParams
    k_lo: int
    k_hi: int
    prime_sequence: bool
    squares: dict = field(default_factory=dict)  # value -> [k, ...]
    norm_class: str = GENERAL
    limit: int = 4
    even_count: int = 0  # y' only: distinct squares at even k
    odd_count: int = 0

    @property
    def count(self) -> int:
        return len(self.squares)

    @property
    def violation(self) -> bool:
        return self.count > self.limit

    def to_json(self) -> str:
        p = self.params
        return json.dumps({
            "tuple": [p.a, p.b, p.d, p.t, p.u],
            "window": [self.k_lo, self.k_hi],
            "prime_sequence": self.prime_sequence,
            "squares": {str(v): ks for v, ks in sorted(self.squares.items())},
            "count": self.count,
            "class": self.norm_class,
            "limit": self.limit,
            "violation": self.violation,
        })


def square_census(params: SequenceParams, k_lo: int = -DEFAULT_WINDOW, k_hi: int = DEFAULT_WINDOW,
                  prime_sequence: bool = False) -> SquareCensus:
    if k_lo > k_hi:
        raise ValueError("empty window")
    if max(abs(k_lo), abs(k_hi)) > WINDOW_GUARD:
        raise ValueError(f"window exceeds |k| <= {WINDOW_GUARD}")
    if prime_sequence:
        elems = elements_prime_by_recurrence(params, k_lo, k_hi)
        cls = prime_norm_class(params.n_alpha)
        limit = LIMITS_PRIME[cls]
    else:
        elems = elements_by_recurrence(params, k_lo, k_hi)
        cls = norm_class(params.n_alpha)
        limit = LIMITS_BASE[cls]
    census = SquareCensus(params, k_lo, k_hi, prime_sequence, norm_class=cls, limit=limit)
    even, odd = set(), set()
    for e in elems:
        if e.y2 < 0 or e.y2 % 2:
            continue
        y = e.y2 // 2
        if square_root(y) is None:
            continue
        census.squares.setdefault(y, []).append(e.k)
        (even if e.k % 2 == 0 else odd).add(y)
    census.even_count, census.odd_count = len(even), len(odd)
    return census


def palindrome_check(params: SequenceParams, k_max: int) -> bool:
    """Whether y_{-k} == y_{k-1} for every 1 <= k <= k_max."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    elems = elements_by_recurrence(params, -k_max, k_max - 1)
    y = {e.k: e.y2 for e in elems}
    return all(y[-k] == y[k - 1] for k in range(1, k_max + 1))


def alpha_ratio_is_unit(params: SequenceParams) -> bool:
    """Whether alpha / conj(alpha) = alpha^2 / N_alpha is an algebraic integer."""
    a, b2, d, n = params.a, params.b**2, params.d, params.n_alpha
    # alpha^2 / N = (X + Y sqrt d)/2
    X2, Y2 = 2 * (a * a + b2 * b2 * d), 4 * a * b2
    if X2 % n or Y2 % n:
        return False
    X, Y = X2 // n, Y2 // n
    return (X * X - d * Y * Y) % 4 == 0 and (X - Y) % 2 == 0 if d % 4 == 1 else (X % 2 == 0 and Y % 2 == 0)


class ConjectureViolation(RuntimeError):
    """A census exceeded its class limit; the record carries everything needed to rerun it."""

    def __init__(self, records):
        self.records = records
        super().__init__(f"{len(records)} census record(s) exceed the conjectured limit")


def census_batch(tuples, k_lo: int = -DEFAULT_WINDOW, k_hi: int = DEFAULT_WINDOW, prime_sequence: bool = False,
                 jsonl_path=None, violation_path=None, raise_on_violation: bool = True):
    """Census for every tuple, in input order.

    Each record goes to jsonl_path; violating records also go to
    violation_path before ConjectureViolation is raised.
    """
    results = [square_census(p, k_lo, k_hi, prime_sequence) for p in tuples]
    if jsonl_path:
        with open(jsonl_path, "w") as fh:
            for c in results:
                fh.write(c.to_json() + "\n")
    bad = [c for c in results if c.violation]
    if bad and violation_path:
        with open(violation_path, "w") as fh:
            for c in bad:
                fh.write(c.to_json() + "\n")
    if bad and raise_on_violation:
        raise ConjectureViolation(bad)
    return results

"""Exhaustive search for tuples (a, b, d, t, u) that escape the d-bounds.

For each u below U_b, each norm N_eps in {+1, -1} and each t with
u^2 | t^2 - 4 N_eps, d = (t^2 - 4 N_eps)/u^2 runs over the non-squares in
[2, D_{b,u}].  The a with d b^4 - a^2 = n^2 > 0 come from the sums of two
squares representations of d b^4.  A tuple is recorded unless d clears
12 b^2/u^2 and all four N_alpha-dependent bounds; recorded tuples are then
checked for small squares k >= 2 and k <= K-1.
"""

from __future__ import annotations

import hashlib
import math
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import kernels
from .bounds import (
    compute_Ub,
    six_term_threshold2,
    search_enum_bound,
    small_d_holds,
    step_n_limits,
)
from .numeric import merge_factors, square_root, two_square_reps
from .sequences import SequenceParams, iter_backward, iter_forward

PREDICATES = ("escape", "window")
BLOCK_T = 4000
THREADS_ENV = "PELLSQUARES_THREADS"


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for one search run.

    predicate "escape" records tuples that fail the bound conjunction;
    "window" records the complement (the tuples inside the a-range the
    lower bounds for a cut away).  strict picks ">" over ">=" for all five
    d thresholds.
    """

    predicate: str = "escape"
    strict: bool = True
    verify: bool = True
    threads: int = 1
    only_u: int | None = None
    only_norm: int | None = None
    only_t: int | None = None

    def __post_init__(self):
        if self.predicate not in PREDICATES:
            raise ValueError(f"predicate must be one of {PREDICATES}")
        if self.only_norm not in (None, 1, -1):
            raise ValueError("only_norm must be +1 or -1")
        if self.threads < 1:
            raise ValueError("threads must be positive")

    def fingerprint(self) -> str:
        keep = {k: v for k, v in asdict(self).items() if k != "threads"}
        return hashlib.sha256(json.dumps(keep, sort_keys=True).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CandidateTuple:
    a: int
    b: int
    d: int
    t: int
    u: int
    sign: int  # N_eps
    n: int  # sqrt(-N_alpha)

    @property
    def n_alpha(self) -> int:
        return -self.n * self.n

    def params(self) -> SequenceParams:
        return SequenceParams(self.a, self.b, self.d, self.t, self.u)

    def sort_key(self):
        return (self.u, self.sign, self.t, self.a)

    def to_json(self) -> str:
        keys = ("a", "b", "d", "t", "u", "sign", "n")
        return json.dumps({k: str(getattr(self, k)) for k in keys})


@dataclass
class SearchReport:
    b: int
    U_b: int
    D_b: int
    candidate_count: int = 0
    per_u: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    wall_seconds: float = 0.0
    cpu_seconds: float = 0.0
    config_fingerprint: str = ""
    backend: str = kernels.BACKEND

    def csv_header(self) -> str:
        return "b,U_b,D_b,c_b,violations,cpu_seconds"

    def csv_row(self) -> str:
        return f"{self.b},{self.U_b},{self.D_b},{self.candidate_count},{len(self.violations)},{self.cpu_seconds:.2f}"


# --- verification ---------------------------------------------------------------------------


def verify_candidate(tup) -> list:
    """Squares y_k = m^2 with k >= 2 or k <= K-1 lying below the six-term threshold.

    Returns [(k, m)]; an empty list is the expected outcome.
    """
    params = tup.params() if isinstance(tup, CandidateTuple) else tup
    if params.n_alpha >= 0 or square_root(-params.n_alpha) is None:
        raise ValueError("-N_alpha must be a positive square")
    limit = six_term_threshold2(params)
    hits = []
    for e in iter_forward(params, 2):
        if e.y2 > limit:
            break
        if e.y2 % 2 == 0:
            r = square_root(e.y2 // 2)
            if r is not None:
                hits.append((e.k, r))
    b2x2 = 2 * params.b**2
    seen_K = False
    for e in iter_backward(params):
        if not seen_K:
            seen_K = e.y2 > b2x2
            continue
        # e.k <= K - 1 from here on
        if e.y2 > limit:
            break
        if e.y2 % 2 == 0:
            r = square_root(e.y2 // 2)
            if r is not None:
                hits.append((e.k, r))
    return hits


# --- enumeration ------------------------------------------------------------------------------


def _t_max(cap: int, u: int, norm: int) -> int:
    # largest t with (t^2 - 4 norm)/u^2 <= cap
    return math.isqrt(cap * u * u + 4 * norm) if cap * u * u + 4 * norm > 0 else 0


def _blocks(b: int, cfg: SearchConfig):
    """Work units (u, norm, t_lo, t_hi) in canonical order."""
    Ub = compute_Ub(b)
    for u in range(1, Ub):
        if cfg.only_u is not None and u != cfg.only_u:
            continue
        cap = search_enum_bound(b, u).cap
        if cap < 2:
            continue
        for norm in (-1, 1):
            if cfg.only_norm is not None and norm != cfg.only_norm:
                continue
            tmax = _t_max(cap, u, norm)
            if cfg.only_t is not None:
                if cfg.only_t <= tmax:
                    yield (u, norm, cfg.only_t, cfg.only_t)
                continue
            for lo in range(1, tmax + 1, BLOCK_T):
                yield (u, norm, lo, min(tmax, lo + BLOCK_T - 1))


def _b_factors(b: int) -> dict:
    return {p: 4 * e for p, e in kernels.factor_int(b).items()} if b > 1 else {}


def enumerate_block(b: int, block, cfg: SearchConfig):
    """All recorded tuples of one work unit, sorted."""
    u, norm, t_lo, t_hi = block
    cap = search_enum_bound(b, u).cap
    bf = _b_factors(b)
    b4 = b**4
    out = []
    for t in kernels.t_candidates(u, norm, t_lo, t_hi):
        d = (t * t - 4 * norm) // (u * u)
        if d < 2 or d > cap or square_root(d) is not None:
            continue
        reps = two_square_reps(merge_factors(kernels.factor_int(d), bf))
        if not reps:
            continue
        if small_d_holds(b, d, u, cfg.strict):
            n_lim = min(step_n_limits(b, d, u, cfg.strict))
        else:
            n_lim = -1  # nothing is excluded
        for a, n in reps:
            inside = n <= n_lim
            if inside == (cfg.predicate == "window"):
                assert a * a + n * n == d * b4
                out.append(CandidateTuple(a, b, d, t, u, norm, n))
    out.sort(key=CandidateTuple.sort_key)
    return out


def _run_block(args):
    b, block, cfg = args
    t0 = time.process_time()
    tuples = enumerate_block(b, block, cfg)
    violations = []
    if cfg.verify:
        for tup in tuples:
            for k, r in verify_candidate(tup):
                violations.append((tup, k, r))
    return block, tuples, violations, time.process_time() - t0


def enumerate_candidates(b: int, config: SearchConfig | None = None):
    """Yield every recorded tuple for b in (u, sign, t, a) order."""
    cfg = config or SearchConfig(verify=False)
    for block in _blocks(b, cfg):
        yield from enumerate_block(b, block, cfg)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def run_search(b: int, config: SearchConfig | None = None, tuples_path=None, checkpoint_dir=None,
               progress=None) -> SearchReport:
    """Full search for one b; deterministic regardless of thread count.

    checkpoint_dir, when given, keeps one file per finished work unit so an
    interrupted run picks up where it stopped.
    """
    cfg = config or SearchConfig()
    t_wall = time.time()
    Ub = compute_Ub(b)
    report = SearchReport(b=b, U_b=Ub, D_b=search_enum_bound(b, 1).cap, config_fingerprint=cfg.fingerprint())
    blocks = list(_blocks(b, cfg))
    ckpt = Path(checkpoint_dir) if checkpoint_dir else None
    if ckpt:
        ckpt.mkdir(parents=True, exist_ok=True)

    def ckpt_file(block):
        u, norm, lo, hi = block
        return ckpt / f"{cfg.fingerprint()}_b{b}_u{u:05d}_{'p' if norm > 0 else 'm'}_{lo:012d}.json"

    results = {}
    todo = []
    for block in blocks:
        if ckpt and ckpt_file(block).exists():
            data = json.loads(ckpt_file(block).read_text())
            tuples = [CandidateTuple(*row) for row in data["tuples"]]
            viol = [(CandidateTuple(*v[0]), v[1], v[2]) for v in data["violations"]]
            results[block] = (tuples, viol, data["cpu"])
        else:
            todo.append(block)

    def store(block, tuples, viol, cpu):
        results[block] = (tuples, viol, cpu)
        if ckpt:
            rows = [[x.a, x.b, x.d, x.t, x.u, x.sign, x.n] for x in tuples]
            vrows = [[[x.a, x.b, x.d, x.t, x.u, x.sign, x.n], k, r] for x, k, r in viol]
            tmp = ckpt_file(block).with_suffix(".tmp")
            tmp.write_text(json.dumps({"tuples": rows, "violations": vrows, "cpu": cpu}))
            tmp.replace(ckpt_file(block))
        if progress:
            progress(block, len(tuples), len(results), len(blocks))

    jobs = [(b, block, cfg) for block in todo]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            for block, tuples, viol, cpu in pool.map(_run_block, jobs, chunksize=1):
                store(block, tuples, viol, cpu)
    else:
        for job in jobs:
            block, tuples, viol, cpu = _run_block(job)
            store(block, tuples, viol, cpu)

    out = open(tuples_path, "w") if tuples_path else None
    try:
        for block in blocks:
            tuples, viol, cpu = results[block]
            u = block[0]
            report.per_u[u] = report.per_u.get(u, 0) + len(tuples)
            report.candidate_count += len(tuples)
            report.violations.extend(viol)
            report.cpu_seconds += cpu
            if out:
                for tup in tuples:
                    out.write(tup.to_json() + "\n")
    finally:
        if out:
            out.close()
    report.wall_seconds = time.time() - t_wall
    return report


def brute_force_tuples(b: int, u: int, norm: int, t: int, cfg: SearchConfig | None = None):
    """Reference enumeration for one (u, norm, t): scan every a directly."""
    cfg = cfg or SearchConfig()
    cap = search_enum_bound(b, u).cap
    w = t * t - 4 * norm
    if w <= 0 or w % (u * u):
        return []
    d = w // (u * u)
    if d < 2 or d > cap or square_root(d) is not None:
        return []
    total = d * b**4
    out = []
    for a, n in kernels.square_window(total, 1, math.isqrt(total)):
        ok_small = small_d_holds(b, d, u, cfg.strict)
        inside = ok_small and n <= min(step_n_limits(b, d, u, cfg.strict))
        if inside == (cfg.predicate == "window"):
            out.append(CandidateTuple(a, b, d, t, u, norm, n))
    return out

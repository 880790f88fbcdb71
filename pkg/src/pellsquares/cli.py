"""Command line entry point: pellsquares <subcommand> ...

Exit codes: 0 success, 1 error, 2 a search or census found a violation,
64 bad usage.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from . import bounds, census, hypergeom, search
from .sequences import SequenceParams, compute_K, elements_by_recurrence, elements_prime_by_recurrence, scan_squares

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 64

LONG_B = 13  # searches from here on need --confirm-long
STANDARD_B = (5, 13, 17)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    subcommand: str
    options: dict = field(default_factory=dict)

    def fingerprint(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def parse_tuple(text: str) -> SequenceParams:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"tuple must be five integers a,b,d,t,u, got {text!r}")
    if len(vals) != 5:
        raise UsageError(f"tuple must be five integers a,b,d,t,u, got {text!r}")
    try:
        return SequenceParams(*vals)
    except ValueError as exc:
        raise UsageError(str(exc))


def parse_range(text: str):
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"range must look like LO..HI, got {text!r}")
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _emit(line: str, out):
    out.write(line + "\n")


# --- subcommands ----------------------------------------------------------------------------


def cmd_seq(ns, out):
    p = parse_tuple(ns.tuple)
    lo, hi = parse_range(ns.range)
    elems = elements_prime_by_recurrence(p, lo, hi) if ns.prime else elements_by_recurrence(p, lo, hi)
    for e in elems:
        _emit(f"k={e.k} 2x={e.x2} 2y={e.y2}", out)
    return EXIT_OK


def cmd_scan(ns, out):
    p = parse_tuple(ns.tuple)
    lo, hi = parse_range(ns.range)
    for k, r in scan_squares(p, lo, hi, use_prime_sequence=ns.prime):
        _emit(f"k={k} y={r * r} root={r}", out)
    return EXIT_OK


def cmd_census(ns, out):
    p = parse_tuple(ns.tuple)
    lo, hi = parse_range(ns.range)
    try:
        res = census.census_batch([p], lo, hi, ns.prime, jsonl_path=ns.jsonl, violation_path=ns.violations,
                                  raise_on_violation=False)[0]
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(res.to_json(), out)
    if res.violation:
        print("conjectured limit exceeded; keep the record above", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_bounds(ns, out):
    p = parse_tuple(ns.tuple)
    strict = not ns.non_strict
    vals = {"b": p.b, "N": abs(p.n_alpha), "d": p.d, "u": p.u}
    _emit(f"tuple={','.join(map(str, p.as_tuple))} N_alpha={p.n_alpha} N_eps={p.n_eps}", out)
    _emit(f"K={compute_K(p)}", out)
    _emit(f"small_d d>12b^2/u^2: {bounds.small_d_holds(p.b, p.d, p.u, strict)}", out)
    if p.n_alpha < 0:
        holds = bounds.step_d_bounds(p, strict=strict)
        for term, ok in zip(bounds.STEP_TERMS, holds):
            _emit(f"step d>{term.label}: {ok}", out)
    for term in bounds.SIX_TERMS:
        _emit(f"floor({term.label}) = {term.floor(vals)}", out)
    _emit(f"2y threshold (y above all six iff 2y > this) = {bounds.six_term_threshold2(p)}", out)
    eb = bounds.search_enum_bound(p.b, p.u)
    _emit(f"D_(b,u) floor = {eb.cap} from {eb.term.label}", out)
    return EXIT_OK


def cmd_hypgeom(ns, out):
    try:
        tr = hypergeom.approximants(ns.u1, ns.u2, ns.t_prime, ns.r, precision_bits=ns.bits, single_m=ns.single_m)
    except hypergeom.DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    import mpmath

    digits = 20
    rows = [
        ("r", tr.r), ("g^2", tr.g.g_sq), ("d'", tr.d_prime), ("scriptN^2", tr.scriptN_sq),
        ("D", tr.D), ("N", tr.N),
        ("|p|", mpmath.nstr(abs(tr.p), digits)), ("|q|", mpmath.nstr(abs(tr.q), digits)),
        ("|R|", mpmath.nstr(abs(tr.R), digits)), ("residual", mpmath.nstr(tr.residual(), 5)),
        ("phi", mpmath.nstr(tr.phi, digits)), ("Q", mpmath.nstr(tr.Q, digits)),
        ("E", mpmath.nstr(tr.E, digits)), ("ell0", mpmath.nstr(tr.ell0, digits)),
        ("target_bits", ns.bits), ("working_bits", tr.working_bits),
    ]
    for k, v in rows:
        _emit(f"{k} = {v}", out)
    return EXIT_OK


def _progress(block, n, done, total):
    u, norm, lo, hi = block
    print(f"[{done}/{total}] u={u} norm={norm:+d} t={lo}..{hi}: {n}", file=sys.stderr)


def cmd_search(ns, out):
    if ns.b < 1:
        raise UsageError("--b must be positive")
    if ns.b >= LONG_B and not ns.confirm_long:
        raise UsageError(f"b = {ns.b} runs for hours; pass --confirm-long")
    norm = ns.norm
    if ns.sign is not None:
        by_sign = -1 if ns.sign == "+" else 1
        if norm is not None and norm != by_sign:
            raise UsageError("--sign and --norm disagree")
        norm = by_sign
    threads = ns.threads if ns.threads is not None else search.default_threads()
    try:
        cfg = search.SearchConfig(
            predicate=ns.predicate, strict=not ns.non_strict, verify=not ns.no_verify, threads=threads,
            only_u=ns.u, only_norm=norm, only_t=ns.t,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    rep = search.run_search(ns.b, cfg, tuples_path=ns.tuples, checkpoint_dir=ns.checkpoint,
                            progress=_progress if ns.progress else None)
    _emit(f"b = {rep.b}, U_b = {rep.U_b}, D_b = {rep.D_b}, predicate = {cfg.predicate}, "
          f"config = {rep.config_fingerprint}, backend = {rep.backend}", out)
    for tup, k, r in rep.violations:
        _emit(f"square below threshold: tuple=({tup.a},{tup.b},{tup.d},{tup.t},{tup.u}) "
              f"N_eps={tup.sign:+d} k={k} y={r * r}", out)
    _emit(f"c_b = {rep.candidate_count}, violations = {len(rep.violations)}", out)
    _emit(f"wall = {rep.wall_seconds:.2f}s, cpu = {rep.cpu_seconds:.2f}s", out)
    if ns.csv:
        new = not os.path.exists(ns.csv) or os.path.getsize(ns.csv) == 0
        with open(ns.csv, "a") as fh:
            if new:
                fh.write(rep.csv_header() + "\n")
            fh.write(rep.csv_row() + "\n")
    return EXIT_VIOLATION if rep.violations else EXIT_OK


def cmd_table1(ns, out):
    bs = ns.b or list(STANDARD_B)
    _emit("b,U_b,D_b", out)
    for b in bs:
        _emit(f"{b},{bounds.compute_Ub(b)},{bounds.search_enum_bound(b, 1).cap}", out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pellsquares", description=__doc__.splitlines()[0])
    ap.add_argument("--fingerprint", action="store_true", help="print the config hash to stderr")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def tuple_cmd(name, help_, window=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--tuple", required=True, help="a,b,d,t,u")
        if window:
            sp.add_argument("--range", default="-10..10", help="LO..HI (inclusive)")
            sp.add_argument("--prime", action="store_true", help="use alpha*eps^k instead of alpha*eps^(2k)")
        return sp

    tuple_cmd("seq", "print (k, 2x_k, 2y_k)")
    tuple_cmd("scan", "list k with y_k a perfect square")
    sp = tuple_cmd("census", "count distinct squares and compare with the conjectured limit")
    sp.set_defaults(range=f"-{census.DEFAULT_WINDOW}..{census.DEFAULT_WINDOW}")
    sp.add_argument("--jsonl", help="write the census record here")
    sp.add_argument("--violations", help="write violating records here")
    sp = tuple_cmd("bounds", "evaluate every threshold for a tuple", window=False)
    sp.add_argument("--non-strict", action="store_true", help="use >= instead of >")

    sp = sub.add_parser("hypgeom", help="approximant diagnostics for (u1, u2, t', r)")
    sp.add_argument("u1", type=int)
    sp.add_argument("u2", type=int)
    sp.add_argument("t_prime", type=int)
    sp.add_argument("r", type=int)
    sp.add_argument("--bits", type=int, default=256)
    sp.add_argument("--single-m", action="store_true", help="denominators from m = 1 only")

    sp = sub.add_parser("search", help="enumerate and verify candidate tuples for one b")
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--predicate", choices=search.PREDICATES, default="escape")
    sp.add_argument("--non-strict", action="store_true", help="use >= for the d thresholds")
    sp.add_argument("--no-verify", action="store_true", help="count only")
    sp.add_argument("--threads", type=int, default=None, help=f"worker processes (default ${search.THREADS_ENV} or 1)")
    sp.add_argument("--tuples", help="JSONL output of recorded tuples")
    sp.add_argument("--csv", help="append a summary row here")
    sp.add_argument("--checkpoint", help="directory for per-block progress files")
    sp.add_argument("--confirm-long", action="store_true")
    sp.add_argument("--progress", action="store_true")
    sp.add_argument("--u", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--norm", type=int, choices=(-1, 1), help="N_eps")
    sp.add_argument("--sign", choices=("+", "-"), help="the sign in d = (t^2 +- 4)/u^2; + means N_eps = -1")

    sp = sub.add_parser("table1", help="U_b and D_b for the standard b")
    sp.add_argument("--b", type=int, action="append")
    return ap


COMMANDS = {
    "seq": cmd_seq, "scan": cmd_scan, "census": cmd_census, "bounds": cmd_bounds,
    "hypgeom": cmd_hypgeom, "search": cmd_search, "table1": cmd_table1,
}


def _glue_values(argv):
    # "--range -5..5" would otherwise read -5..5 as an option
    argv = list(argv)
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--range" and i + 1 < len(argv):
            out.append(f"--range={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run_cli(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else argv
    try:
        ns = build_parser().parse_args(_glue_values(argv))
        cfg = CliConfig(ns.cmd, {k: v for k, v in vars(ns).items() if k not in ("cmd", "fingerprint", "progress")})
        if ns.fingerprint:
            print(f"config {cfg.fingerprint()}", file=sys.stderr)
        t0 = time.perf_counter()
        code = COMMANDS[ns.cmd](ns, out)
        if ns.cmd == "table1":
            print(f"elapsed {time.perf_counter() - t0:.3f}s", file=sys.stderr)
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main(argv=None):
    sys.exit(run_cli(argv))


if __name__ == "__main__":
    main()

"""Time the compiled search kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat N] [--b 5]

The last section times one restricted search block end to end with each
backend selected through PELLSQUARES_PURE.
"""

import argparse
import os
import subprocess
import sys
import timeit

from pellsquares import kernels


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<40s} {best * 1e3:10.2f} ms")
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--b", type=int, default=5)
    args = ap.parse_args()

    impls = kernels.implementations()
    primes = kernels._primes()
    factor_inputs = list(range(10**9, 10**9 + 2000))
    total = 33203125 * 625  # d b^4 at the largest d for b = 5
    a_hi = 200000

    times = {}
    for name, mod in impls.items():
        print(f"{name}:")
        t = {}
        t["factor"] = bench("trial_factor x2000 near 1e9", lambda: [mod.trial_factor(n, primes) for n in factor_inputs], args.repeat)
        t["window"] = bench(f"square_window a <= {a_hi}", lambda: mod.square_window(total, 1, a_hi), args.repeat)
        t["count"] = bench(f"count_square_window a <= {a_hi}", lambda: mod.count_square_window(total, 1, a_hi), args.repeat)
        t["tcand"] = bench("t_candidates u=7, t <= 2e6", lambda: mod.t_candidates(7, -1, 1, 2 * 10**6), args.repeat)
        times[name] = t

    if "compiled" in times:
        print("speedup (python / compiled):")
        for key in times["python"]:
            print(f"  {key:<10s} {times['python'][key] / times['compiled'][key]:8.1f}x")

    print(f"search --b {args.b} --u 2 --no-verify:")
    for name, pure in (("compiled", "0"), ("python", "1")):
        env = dict(os.environ, PELLSQUARES_PURE=pure)
        cmd = [sys.executable, "-m", "pellsquares.cli", "search", "--b", str(args.b), "--u", "2", "--no-verify"]
        out = subprocess.run(cmd, env=env, capture_output=True, text=True).stdout
        print(f"  {name:<10s} " + " | ".join(line for line in out.splitlines() if line.startswith(("c_b", "wall"))))


if __name__ == "__main__":
    main()

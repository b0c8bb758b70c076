"""Compare the compiled kernels with the pure-numpy fallback.

Each backend runs in its own interpreter because the switch is read at
import time. Sizes default small: the fallback executes the same loops in
plain Python and is orders of magnitude slower.

    python benchmarks/bench_backends.py --text-size 20000 --ops 300
"""
import argparse
import json
import os
import subprocess
import sys

CHILD = """
import json, sys, time
from dynpat import BACKEND
from dynpat.bench import run_bench
args = json.loads(sys.argv[1])
r = run_bench(args["text_size"], args["ops"], args["pattern_size"], args["seed"],
              naive_ops=args["naive_ops"], warmup=True)
print(json.dumps({"backend": BACKEND, "build": r.build_s, "search": r.search_s,
                  "edit_us": r.engine_per_op * 1e6, "naive_us": r.naive_per_op * 1e6,
                  "mismatches": r.mismatches, "counts": r.engine_counts}))
"""


def run(flag, params):
    env = dict(os.environ, DYNPAT_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", CHILD, json.dumps(params)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--text-size", type=int, default=20_000)
    parser.add_argument("--ops", type=int, default=300)
    parser.add_argument("--pattern-size", type=int, default=5_000)
    parser.add_argument("--naive-ops", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    params = {"text_size": args.text_size, "ops": args.ops, "pattern_size": args.pattern_size,
              "seed": args.seed, "naive_ops": args.naive_ops}

    rows = [run("0", params), run("1", params)]
    print(f"text {args.text_size}, pattern {args.pattern_size}, {args.ops} edits")
    print(f"{'backend':8} {'build s':>9} {'search s':>9} {'edit us':>10} {'naive us':>10}")
    for r in rows:
        print(f"{r['backend']:8} {r['build']:9.3f} {r['search']:9.3f} {r['edit_us']:10.1f} {r['naive_us']:10.1f}")
    fast, slow = rows
    print(f"edit speedup of compiled kernels: {slow['edit_us'] / fast['edit_us']:.0f}x")
    same = fast["counts"] == slow["counts"] and not fast["mismatches"] and not slow["mismatches"]
    print("counts identical across backends" if same else "COUNTS DIFFER")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())

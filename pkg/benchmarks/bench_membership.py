"""Compare the compiled and pure-Python membership kernels.

Both kernels run on the same seeded instances; the script fails if any
answer differs.  Usage: python3 benchmarks/bench_membership.py [--instances N]
"""
from __future__ import annotations

import argparse
import random
import sys
import time

from toricglue import _membership_py

try:
    from toricglue import _membership_c
except ImportError:
    _membership_c = None


def make_instances(count: int, seed: int, dim: int, ngeneral: int, scale: int):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        step = rng.randint(2, scale)
        axis = [step] * dim
        general = [[rng.randint(0, scale) for _ in range(dim)] for _ in range(ngeneral)]
        general = [g for g in general if any(g)] or [[1] * dim]
        # half the targets are guaranteed members, half are arbitrary
        if rng.random() < 0.5:
            v = [0] * dim
            for g in general:
                m = rng.randint(0, 6)
                v = [x + m * y for x, y in zip(v, g)]
            v = [x + step * rng.randint(0, 4) for x in v]
        else:
            v = [rng.randint(0, 6 * scale) for _ in range(dim)]
        out.append((general, axis, v))
    return out


def run(kernel, instances):
    start = time.perf_counter()
    answers = [kernel.search(g, a, v) for g, a, v in instances]
    return answers, time.perf_counter() - start


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--instances", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--general", type=int, default=4)
    ap.add_argument("--scale", type=int, default=24)
    args = ap.parse_args(argv)
    if _membership_c is None:
        print("compiled kernel not built; nothing to compare")
        return 1
    instances = make_instances(args.instances, args.seed, args.dim, args.general, args.scale)
    py_ans, py_t = run(_membership_py, instances)
    c_ans, c_t = run(_membership_c, instances)
    mismatches = sum(a != b for a, b in zip(py_ans, c_ans))
    members = sum(a is not None for a in py_ans)
    print(f"instances      {len(instances)} ({members} members)")
    print(f"pure python    {py_t * 1e3:10.1f} ms")
    print(f"cython         {c_t * 1e3:10.1f} ms")
    print(f"speedup        {py_t / max(c_t, 1e-9):10.1f}x")
    print(f"mismatches     {mismatches}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Side-by-side timing of the pure-Python and compiled kernels.

The kernel carries the hot loops of the library: subgroup closure and
enumeration, automorphism search, table transport and stabilizers.
Representative workloads below mirror what the acceptance suite spends
its time on (exhaustive quadratic-form sweeps over small 2-groups).

Usage: python benchmarks/bench_kernels.py
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from braidforge.kernels import pure  # noqa: E402

try:
    from braidforge.kernels import _core as core  # noqa: E402
except ImportError:
    core = None


def strides_of(orders):
    s, out = 1, []
    for m in reversed(orders):
        out.append(s)
        s *= m
    return list(reversed(out))


def workloads():
    out = []

    orders = (4, 4, 4)
    out.append(("add_table Z4^3", lambda k: k.add_table(orders), 5))

    orders5 = (2, 2, 2, 2, 2)
    add5 = pure.add_table(orders5)
    out.append(("subgroups (Z/2)^5 (374)", lambda k: k.all_subgroups(32, add5), 3))

    orders4 = (2, 2, 2, 2)
    add4 = pure.add_table(orders4)
    st4, go4 = strides_of(orders4), list(orders4)
    out.append(
        ("automorphisms (Z/2)^4 (20160)",
         lambda k: k.automorphisms(16, add4, st4, go4, 10 ** 7), 3)
    )

    auts = pure.automorphisms(16, add4, st4, go4, 10 ** 7)
    table = [0, 1, 2, 1, 2, 0, 1, 2, 1, 2, 0, 1, 2, 1, 2, 0]
    out.append(("stabilizer filter x20160", lambda k: k.stabilizer(auts, table), 5))

    def orbit_sweep(k):
        seen = set()
        t = tuple(table)
        for p in auts:
            seen.add(k.apply_perm(p, t))
        return len(seen)

    out.append(("orbit sweep x20160", orbit_sweep, 3))

    orders44 = (4, 4)
    add44 = pure.add_table(orders44)
    ta = [0, 1, 2, 1, 1, 3, 0, 2, 2, 0, 3, 1, 1, 2, 1, 0]
    tb = list(pure.apply_perm(pure.automorphisms(16, add44, [4, 1], [4, 4], 100)[-1], ta))
    out.append(
        ("find_isomorphism Z4^2",
         lambda k: k.find_isomorphism(16, add44, [4, 1], [4, 4], ta, tb), 20)
    )
    return out


def best_of(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rows = []
    for name, fn, reps in workloads():
        tp = best_of(lambda: fn(pure), reps)
        if core is not None:
            tc = best_of(lambda: fn(core), reps)
            assert fn(pure) == fn(core), f"backend mismatch in {name}"
            rows.append((name, tp, tc, tp / tc if tc else float("inf")))
        else:
            rows.append((name, tp, None, None))

    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, tp, tc, ratio in rows:
        if tc is None:
            print(f"{name:<{width}}  {tp * 1e3:>8.2f}ms  {'n/a':>10}  {'':>8}")
        else:
            print(f"{name:<{width}}  {tp * 1e3:>8.2f}ms  {tc * 1e3:>8.2f}ms  {ratio:>7.1f}x")
    if core is None:
        print("\ncompiled kernel not built; run `python setup.py build_ext --inplace`")


if __name__ == "__main__":
    main()

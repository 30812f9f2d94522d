#!/usr/bin/env python3
"""Benchmark the pure-Python kernel against the compiled one.

The hot loops of the whole package are coefficient-vector multiply/reduce and
the accumulating dot product used by matrix products and Verlinde sums; this
script times both backends on those, then one end-to-end verification under
the currently selected backend.

Run:  python benchmarks/bench_kernel.py
"""

import random
import time

from modkit import _kernel as py_kernel

try:
    from modkit import _ckernel as c_kernel
except ImportError:
    c_kernel = None


def rand_value(rng, tab, span=30):
    num = [rng.randint(-span, span) for _ in range(tab.phi)]
    den = rng.randint(1, 12)
    return py_kernel.normalize(num, den)


def bench_mul(kernel, tab, pairs, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for (na, da), (nb, db) in pairs:
            kernel.mul(na, da, nb, db, tab)
    return time.perf_counter() - t0


def bench_dot(kernel, tab, rows, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for (nums_a, dens_a), (nums_b, dens_b) in rows:
            kernel.dot(nums_a, dens_a, nums_b, dens_b, tab)
    return time.perf_counter() - t0


def main():
    rng = random.Random(20240901)
    print(f"{'workload':<34}{'python':>10}{'compiled':>10}{'speedup':>9}")
    for n in (7, 8, 16, 12):
        tab = py_kernel.table(n)
        pairs = [(rand_value(rng, tab), rand_value(rng, tab)) for _ in range(400)]
        rep = 40
        t_py = bench_mul(py_kernel, tab, pairs, rep)
        line = f"mul, conductor {n:>2} (phi={tab.phi})"
        if c_kernel is not None:
            t_c = bench_mul(c_kernel, tab, pairs, rep)
            for (na, da), (nb, db) in pairs[:50]:
                assert py_kernel.mul(na, da, nb, db, tab) == c_kernel.mul(na, da, nb, db, tab)
            print(f"{line:<34}{t_py:>9.3f}s{t_c:>9.3f}s{t_py / t_c:>8.1f}x")
        else:
            print(f"{line:<34}{t_py:>9.3f}s{'-':>10}{'-':>9}")

    for n, length in ((8, 28), (7, 21)):
        tab = py_kernel.table(n)
        rows = []
        for _ in range(200):
            a = [rand_value(rng, tab) for _ in range(length)]
            b = [rand_value(rng, tab) for _ in range(length)]
            rows.append((([v[0] for v in a], [v[1] for v in a]),
                         ([v[0] for v in b], [v[1] for v in b])))
        rep = 20
        t_py = bench_dot(py_kernel, tab, rows, rep)
        line = f"dot, conductor {n}, length {length}"
        if c_kernel is not None:
            t_c = bench_dot(c_kernel, tab, rows, rep)
            for (aa, da), (bb, db) in rows[:20]:
                assert py_kernel.dot(aa, da, bb, db, tab) == c_kernel.dot(aa, da, bb, db, tab)
            print(f"{line:<34}{t_py:>9.3f}s{t_c:>9.3f}s{t_py / t_c:>8.1f}x")
        else:
            print(f"{line:<34}{t_py:>9.3f}s{'-':>10}{'-':>9}")

    from modkit import kernel_backend
    from modkit.families import taft_double, taft_fusion_tensor, taft_J_indices
    from modkit.pipeline import verify_raw
    t0 = time.perf_counter()
    res = verify_raw(taft_double(7), fusion_oracle=taft_fusion_tensor(7),
                     reps=taft_J_indices(7))
    dt = time.perf_counter() - t0
    print(f"\nend-to-end verify taft:d=7 [{kernel_backend} backend]: "
          f"{dt:.2f}s, classification {res.classification}")
    if c_kernel is None:
        print("compiled kernel not available; rebuild with Cython for the comparison")


if __name__ == "__main__":
    main()

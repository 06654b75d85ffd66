#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python fallback.

Runs the three hot operations at verification-sized workloads: building a
member table over a box, sweeping XOR-flip invariance across generators,
and batch triangular solving.  Usage:

    python benchmarks/bench_kernels.py [--coords 16] [--repeat 3]
"""

import argparse
import random
import time

from cascadekit._kernels import available_backends, backend_module


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def workload_entries(n_coords, n_pairs=24, seed=0):
    """Conditions over the low half of the box, as a supported name would have."""
    rng = random.Random(seed)
    entries = []
    low = (1 << (n_coords // 2)) - 1
    for _ in range(n_pairs):
        dmask = rng.getrandbits(n_coords) & low
        # keep domains small: realistic conditions mention a few coordinates
        while bin(dmask).count("1") > 5:
            dmask &= rng.getrandbits(n_coords)
        vmask = rng.getrandbits(n_coords) & dmask
        entries.append((dmask, vmask, 1 << rng.randrange(8)))
    return entries


def flip_masks(n_coords, count=20, seed=1):
    """Flips on the untouched high half: no violations, so sweeps scan everything.

    This is the hot case; a support check that answers "true" cannot exit
    early.
    """
    rng = random.Random(seed)
    high = ((1 << n_coords) - 1) & ~((1 << (n_coords // 2)) - 1)
    return [(rng.getrandbits(n_coords) & high) or (1 << (n_coords - 1)) for _ in range(count)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--coords", type=int, default=16, help="box coordinate count")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    n = args.coords
    entries = workload_entries(n)
    masks = flip_masks(n)
    solve_n = 12
    rng = random.Random(2)
    cols = [(1 << j) | (rng.getrandbits(j) if j else 0) for j in range(solve_n)]

    print(f"workload: {len(entries)} conditions over 2^{n} assignments, "
          f"{len(masks)} flip sweeps, 2^{solve_n} triangular solves")
    header = f"{'operation':<22}" + "".join(f"{b:>14}" for b in available_backends())
    print(header)
    print("-" * len(header))

    timings = {}
    for name in available_backends():
        impl = backend_module(name)
        table = impl.build_table(n, entries)
        timings.setdefault("build_table", {})[name] = bench(
            lambda: impl.build_table(n, entries), args.repeat
        )
        timings.setdefault("flip sweep x20", {})[name] = bench(
            lambda: [impl.flip_violation(table, m) for m in masks], args.repeat
        )
        timings.setdefault("project_member", {})[name] = bench(
            lambda: impl.project_member(table, 1, (1 << (n // 2)) - 1), args.repeat
        )
        timings.setdefault(f"solve all 2^{solve_n}", {})[name] = bench(
            lambda: impl.solve_unit_triangular_all(cols, solve_n), args.repeat
        )

    for op, per_backend in timings.items():
        row = f"{op:<22}"
        for backend in available_backends():
            row += f"{per_backend.get(backend, float('nan')) * 1000:>12.2f}ms"
        print(row)

    if len(available_backends()) == 2:
        print()
        for op, per_backend in timings.items():
            ratio = per_backend["python"] / per_backend["compiled"]
            print(f"{op}: compiled is {ratio:.1f}x the pure backend")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends.

Runs entropy, KL divergence and mutual information over a range of sizes
and prints per-call timings for both backends side by side. The numba
path is warmed up first so JIT compilation is not counted.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import timeit

import numpy as np

from cbr import _kernels


def _make_cases(rng):
    cases = []
    for n in (64, 1024, 16384, 262144):
        p = rng.random(n)
        p /= p.sum()
        q = rng.random(n)
        q /= q.sum()
        cases.append((n, p, q))
    joints = []
    for shape in ((16, 16), (128, 128), (512, 512)):
        j = rng.random(shape)
        j /= j.sum()
        joints.append(j)
    return cases, joints


def _time(fn, repeats):
    per_loop = timeit.repeat(fn, number=1, repeat=repeats)
    return min(per_loop)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    if _kernels.BACKEND != "numba":
        raise SystemExit(
            "active backend is numpy; run without CBR_KERNEL_BACKEND=numpy "
            "to compare against numba"
        )

    rng = np.random.default_rng(0)
    cases, joints = _make_cases(rng)

    # warm up the JIT so compile time stays out of the numbers
    _kernels.entropy_bits(cases[0][1])
    _kernels.kl_bits(cases[0][1], cases[0][2])
    _kernels.mi_bits(joints[0])

    print(f"{'kernel':<12} {'size':>12} {'numba (us)':>12} {'numpy (us)':>12} {'speedup':>8}")
    for n, p, q in cases:
        tb = _time(lambda: _kernels.entropy_bits(p), args.repeats) * 1e6
        tn = _time(lambda: _kernels._np_entropy_bits(p), args.repeats) * 1e6
        print(f"{'entropy':<12} {n:>12} {tb:>12.2f} {tn:>12.2f} {tn / tb:>7.2f}x")
    for n, p, q in cases:
        tb = _time(lambda: _kernels.kl_bits(p, q), args.repeats) * 1e6
        tn = _time(lambda: _kernels._np_kl_bits(p, q), args.repeats) * 1e6
        print(f"{'kl':<12} {n:>12} {tb:>12.2f} {tn:>12.2f} {tn / tb:>7.2f}x")
    for j in joints:
        label = f"{j.shape[0]}x{j.shape[1]}"
        tb = _time(lambda: _kernels.mi_bits(j), args.repeats) * 1e6
        tn = _time(lambda: _kernels._np_mi_bits(j), args.repeats) * 1e6
        print(f"{'mi':<12} {label:>12} {tb:>12.2f} {tn:>12.2f} {tn / tb:>7.2f}x")


if __name__ == "__main__":
    main()

"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each pair of kernels is first checked for identical output, then timed with
the best of --repeat runs. The first numba call is excluded (JIT warm-up).
"""

import argparse
import time

import numpy as np

from rigiditylab import _kernels as K
from rigiditylab.funcdsl import Add
from rigiditylab.randomness import test_level


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    coords = np.arange(2_000_000, dtype=np.uint64)
    cs = test_level(Add(1), 10)
    left = [p for p, _ in cs.pairs]
    right = [q for _, q in cs.pairs]
    seeds = K.np_derive_seeds(42, 100_000)
    tri_l, tri_r = [0, 1, 0, 5, 7, 9], [1, 2, 2, 6, 8, 10]
    return [
        ("random_bits 2e6", lambda: K.np_random_bits(42, coords), lambda: K.nb_random_bits(42, coords)),
        ("derive_seeds 1e6", lambda: K.np_derive_seeds(42, 1_000_000), lambda: K.nb_derive_seeds(42, 1_000_000)),
        (
            "count_agreeing 1e5 x 10 pairs",
            lambda: K.np_count_agreeing(seeds, left, right),
            lambda: K.nb_count_agreeing(seeds, left, right),
        ),
        (
            "count_satisfying V=20",
            lambda: K.np_count_satisfying(20, tri_l, tri_r),
            lambda: K.nb_count_satisfying(20, tri_l, tri_r),
        ),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':32s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}")
    for name, np_fn, nb_fn in cases():
        a, b = np_fn(), nb_fn()  # warm-up doubles as an agreement check
        if not np.array_equal(np.asarray(a), np.asarray(b)):
            raise SystemExit(f"{name}: backends disagree")
        t_np, t_nb = best_of(np_fn, args.repeat), best_of(nb_fn, args.repeat)
        print(f"{name:32s} {t_np * 1e3:11.2f} {t_nb * 1e3:11.2f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()

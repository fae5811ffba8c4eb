"""Compare the compiled and numpy kernels on realistic inputs.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is timed on both backends with identical inputs, and the outputs
are checked to be equal before any timing is reported.
"""
import argparse
import math
import timeit

import numpy as np

from twinwheel import _kernels
from twinwheel.oracle import _small_odd_primes
from twinwheel.propagation import prospective_blocks
from twinwheel.wheel import primorial


def cases():
    lo, count = 10**9 + 1, 1 << 20
    base = _small_odd_primes(math.isqrt(lo + 2 * count) + 1)
    flags = _kernels.python.sieve_odd_block(lo, count, base)
    level7 = np.concatenate(list(prospective_blocks(7)))
    twins7 = np.concatenate(list(prospective_blocks(7, twins=True)))
    offset = 11 * primorial(7)
    return {
        "sieve_odd_block (2^20 odd @1e9)": ("sieve_odd_block", (lo, count, base)),
        "count_twin_flags (2^20 flags)": ("count_twin_flags", (flags,)),
        "extend_block (S_7 -> subset of S_8)": ("extend_block", (level7, offset, 19)),
        "extend_twin_block (S_7 twins)": ("extend_twin_block", (twins7, offset, 19)),
    }


def same(a, b):
    return np.array_equal(a, b) if isinstance(a, np.ndarray) else a == b


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels.compiled is None:
        print("compiled kernels not built; only the numpy backend is available")
    backends = {"numpy": _kernels.python}
    if _kernels.compiled is not None:
        backends["cython"] = _kernels.compiled

    print(f"{'kernel':40s} " + " ".join(f"{name:>12s}" for name in backends) + "     speedup")
    for label, (fn_name, fn_args) in cases().items():
        results, times = {}, {}
        for name, mod in backends.items():
            fn = getattr(mod, fn_name)
            results[name] = fn(*fn_args)
            times[name] = min(timeit.repeat(lambda: fn(*fn_args), number=1, repeat=args.repeat))
        ref = results["numpy"]
        assert all(same(r, ref) for r in results.values()), f"backends disagree on {fn_name}"
        speed = f"{times['numpy'] / times['cython']:9.1f}x" if "cython" in times else ""
        print(f"{label:40s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times.values()) + f"  {speed}")


if __name__ == "__main__":
    main()

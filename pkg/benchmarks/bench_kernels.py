"""Compare the compiled and pure-Python kernels on the three hot paths.

    python benchmarks/bench_kernels.py [--quick]

Each workload runs on both backends; results must agree exactly and the
table reports wall-clock seconds and the speedup.
"""

import argparse
import random
import sys
import time

from patavoid import _pykernels
from patavoid.pattern import parse_pattern, random_doubled_pattern

try:
    from patavoid import _ckernels
except ImportError:
    _ckernels = None


def avoid_run(kernels, text, steps, seed):
    p = parse_pattern(text)
    m = kernels.SuffixMatcher(p.indices, p.k)
    rng = random.Random(seed)
    erased = 0
    for _ in range(steps):
        m.push(rng.randrange(2))
        found = m.suffix_occurrences()
        if found:
            n = len(m)
            start, _ = min(found, key=lambda o: (n - o[0], o[1]))
            erased += n - start
            m.truncate(start)
    return len(m), erased


def search(kernels, text, sigma, depth):
    p = parse_pattern(text)
    return kernels.search_dfs(p.indices, p.k, sigma, depth, 0)[:4]


def sweep(kernels, size_max):
    return kernels.g4_sweep_table(24, size_max, 24, size_max)


def workloads(quick):
    steps = 300 if quick else 2000
    rng = random.Random(8)
    doubled = random_doubled_pattern(rng, 4, 24).text
    yield f"avoid ACBBCBBABCAB n={steps}", lambda k: avoid_run(k, "ACBBCBBABCAB", steps, 1)
    yield f"avoid {doubled} n={steps}", lambda k: avoid_run(k, doubled, steps, 1)
    yield f"avoid ABCCBADD n={steps}", lambda k: avoid_run(k, "ABCCBADD", steps, 1)
    yield "search AABAA sigma=2", lambda k: search(k, "AABAA", 2, 1000)
    if not quick:
        yield "search ABACABA sigma=2", lambda k: search(k, "ABACABA", 2, 1000)
        yield "search AAA sigma=2 depth=3000", lambda k: search(k, "AAA", 2, 3000)
    top = 60 if quick else 99
    yield f"g4 sweep 24..{top}", lambda k: sweep(k, top)


def timed(fn, kernels):
    t0 = time.perf_counter()
    out = fn(kernels)
    return out, time.perf_counter() - t0


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels unavailable; only the pure-Python backend is installed")
        return 1
    print(f"{'workload':48} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in workloads(args.quick):
        py_out, py_t = timed(fn, _pykernels)
        c_out, c_t = timed(fn, _ckernels)
        if py_out != c_out:
            print(f"{name}: backends disagree: {py_out!r} vs {c_out!r}")
            return 1
        print(f"{name:48} {py_t:10.3f} {c_t:10.4f} {py_t / max(c_t, 1e-9):8.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

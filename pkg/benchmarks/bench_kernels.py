"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--reps N]
"""

import argparse
import random
import time

import numpy as np

from intlift.exact import normal_forms as nf


def random_matrix(rng, m, n, span=9):
    return np.array([[rng.randint(-span, span) for _ in range(n)] for _ in range(m)], dtype=object)


def overflow_rate(name, mats):
    """Fraction of inputs the int64 kernel gives up on."""
    ext = {"snf": nf._ext.snf, "hnf": nf._ext.hnf_row, "rank": nf._ext.bareiss_rank}[name]
    bad = 0
    for a in mats:
        try:
            ext(np.array(a.tolist(), dtype=np.int64))
        except OverflowError:
            bad += 1
    return bad / len(mats)


def boundary_matrices(rng, count):
    """Boundary maps of random 2-complexes: sparse, entries in {0, 1, -1}."""
    from intlift.complex import SimplicialInput, from_simplicial

    out = []
    while len(out) < count:
        nv = rng.randint(8, 14)
        facets = {tuple(sorted(rng.sample(range(nv), 3))) for _ in range(rng.randint(10, 30))}
        c = from_simplicial(SimplicialInput(nv, tuple(facets)))
        out.append(c.boundaries[1])
    return out


def clock(fn, mats, backend):
    start = time.perf_counter()
    for a in mats:
        fn(a, backend=backend)
    return (time.perf_counter() - start) / len(mats)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--reps", type=int, default=20)
    args = parser.parse_args()
    if nf._ext is None:
        print("compiled kernels not available; nothing to compare")
        return
    rng = random.Random(0)
    print(f"{'kernel':<6} {'workload':<12} {'python ms':>10} {'cython ms':>10} {'speedup':>8} {'overflow':>9}")
    workloads = [(f"dense {k}x{k}", [random_matrix(rng, k, k) for _ in range(args.reps)]) for k in (4, 8, 16, 24)]
    workloads.append(("boundary", boundary_matrices(rng, args.reps)))
    for label, mats in workloads:
        for name, fn in (("snf", nf.snf), ("hnf", nf.hnf_row), ("rank", nf.integer_rank)):
            for a in mats:  # outputs must agree before timing means anything
                py, cy = fn(a, backend="python"), fn(a, backend="cython")
                if name == "rank":
                    assert py == cy
                else:
                    assert all(np.array_equal(x, y) for x, y in zip(py, cy))
            tp = clock(fn, mats, "python") * 1e3
            tc = clock(fn, mats, "cython") * 1e3
            ov = overflow_rate(name, mats)
            print(f"{name:<6} {label:<12} {tp:>10.3f} {tc:>10.3f} {tp / tc:>7.1f}x {ov:>8.0%}")


if __name__ == "__main__":
    main()

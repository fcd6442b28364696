"""Numba vs pure-numpy timings for the facet-count kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--d 6]

Three workloads: building the per-subset maximal-chain table, a single
facet count, and one census shard (a P class against every labeled Q).
"""

import argparse
import random
import timeit

import numpy as np

from twinchain import _kernels
from twinchain.census import _q_context, comparability_classes
from twinchain.poset import random_poset
from twinchain.twinned import chain_table


def best_of(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=6, help="size of the random posets (<= 8)")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy timings are available")
    rng = random.Random(args.seed)
    d = args.d
    P, Q = random_poset(d, rng, 0.3), random_poset(d, rng, 0.3)
    comp = np.array(P.comp, dtype=np.int64)
    p_off, p_ch = chain_table(P)
    q_off, q_ch = chain_table(Q)

    g, Pc = comparability_classes(5)[len(comparability_classes(5)) // 2]
    _, q_offs, q_chs, _ = _q_context(5, "graphs")
    c_off, c_ch = chain_table(Pc)

    workloads = [
        (f"chain table d={d}", "subset_maximal_chains", (comp,), 20),
        (f"facet count d={d}", "facet_count", (d, p_off, p_ch, q_off, q_ch), 20),
        (f"census shard d=5 ({len(q_offs)} Q)", "facet_counts_batch", (5, c_off, c_ch, q_offs, q_chs), 3),
    ]
    print(f"{'workload':<32}{'numpy':>12}{'numba':>12}{'speedup':>10}")
    for label, name, fargs, number in workloads:
        np_fn = getattr(_kernels, name + "_np")
        t_np = best_of(lambda: np_fn(*fargs), args.repeat, number)
        if _kernels.HAVE_NUMBA:
            nb_fn = getattr(_kernels, name + "_nb")
            nb_fn(*fargs)  # compile outside the timed region
            t_nb = best_of(lambda: nb_fn(*fargs), args.repeat, number)
            print(f"{label:<32}{t_np * 1e3:>10.3f}ms{t_nb * 1e3:>10.3f}ms{t_np / t_nb:>9.1f}x")
        else:
            print(f"{label:<32}{t_np * 1e3:>10.3f}ms{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()

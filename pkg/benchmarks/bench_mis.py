"""Benchmark the compiled MIS kernel against the pure-Python fallback.

Runs both kernels on the same neighbor-mask arrays: conflict graphs of
generated instances plus random bounded-degree graphs.  Usage:

    python3 benchmarks/bench_mis.py [--repeat N]
"""

import argparse
import random
import time

from duomap import _mis_py
from duomap.graphs import build_conflict_graph
from duomap.oracle import GeneratorConfig, gen_random_instance

try:
    from duomap import _mis_core
except ImportError:
    _mis_core = None


def conflict_graph_masks(n, seed):
    cfg = GeneratorConfig(
        n=n, k=2, alphabet_size=max(2, -(-n // 2)), seed=seed, duplication_bias=0.7
    )
    g = build_conflict_graph(gen_random_instance(cfg))
    keys = sorted(g.vertices())
    index = {v: i for i, v in enumerate(keys)}
    masks = [0] * len(keys)
    for v in keys:
        for u in g.neighbors(v):
            masks[index[v]] |= 1 << index[u]
    return masks


def random_masks(n, degree, seed):
    rng = random.Random(seed)
    masks = [0] * n
    for v in range(n):
        while masks[v].bit_count() < degree:
            u = rng.randrange(n)
            if u != v:
                masks[v] |= 1 << u
                masks[u] |= 1 << v
    return masks


def time_kernel(fn, masks, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        result = fn(masks)
    return (time.perf_counter() - t0) / repeat, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    cases = [
        ("conflict n=24", conflict_graph_masks(24, seed=1)),
        ("conflict n=30", conflict_graph_masks(30, seed=6)),
        ("random 40 deg4", random_masks(40, 4, seed=3)),
        ("random 56 deg4", random_masks(56, 4, seed=4)),
        ("random 60 deg5", random_masks(60, 5, seed=5)),
    ]
    header = f"{'case':<16} {'|V|':>4} {'python':>12} {'compiled':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, masks in cases:
        t_py, mask_py = time_kernel(_mis_py.solve_masks, masks, args.repeat)
        if _mis_core is not None:
            t_c, mask_c = time_kernel(_mis_core.solve_masks, masks, args.repeat)
            assert mask_py.bit_count() == mask_c.bit_count(), name
            print(
                f"{name:<16} {len(masks):>4} {t_py * 1e3:>10.2f}ms"
                f" {t_c * 1e3:>10.2f}ms {t_py / t_c:>7.1f}x"
            )
        else:
            print(f"{name:<16} {len(masks):>4} {t_py * 1e3:>10.2f}ms {'n/a':>12} {'n/a':>8}")


if __name__ == "__main__":
    main()

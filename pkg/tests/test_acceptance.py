"""End-to-end acceptance checks.

Each test prints exactly one PASS/FAIL line so the verbose run log doubles
as an acceptance report.  The randomized criteria share one deterministic
1000-instance corpus (seeds 0..999, lengths cycling 4..14, duplication bias
0.9) built once per module.
"""

import time
from collections import Counter

import pytest

from duomap import (
    GeneratorConfig,
    SolverConfig,
    approx_solve,
    brute_force_opt,
    build_conflict_graph,
    find_maximal_series,
    find_squares,
    gen_random_instance,
    run_property_suite,
    shrink_strings,
)

CORPUS_SIZE = 1000
N_MAX = 14
BIAS = 0.9

OPT8_VERTEX_SET = (
    (1, 6), (2, 7), (3, 8), (4, 9), (6, 1), (7, 2), (8, 3), (9, 4),
)
DEG6_VERTICES = {(2, 2), (3, 3), (3, 8), (7, 7), (8, 3), (8, 8)}
OPT9_CONTENTS = ["ab", "bc", "bc", "cd", "cd", "de", "ef", "eh", "gb"]


def _verdict(num, ok, detail):
    line = f"[criterion {num}] {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    assert ok, line


def _corpus_config(idx):
    n = 4 + (idx % (N_MAX - 3))
    alphabet = max(2, (n + 1) // 2, -(-n // 2))
    return GeneratorConfig(
        n=n, k=2, alphabet_size=alphabet, seed=idx, duplication_bias=BIAS
    )


@pytest.fixture(scope="module")
def corpus():
    """(instance, exact solution, optimum, greedy, local_search) per seed,
    plus the wall-clock seconds spent on the exact-vs-oracle part."""
    records = []
    t0 = time.perf_counter()
    for idx in range(CORPUS_SIZE):
        inst = gen_random_instance(_corpus_config(idx))
        exact = approx_solve(inst, SolverConfig(backend="exact"))
        opt = len(brute_force_opt(inst))
        records.append([inst, exact, opt, None, None])
    exact_elapsed = time.perf_counter() - t0
    for rec in records:
        rec[3] = approx_solve(rec[0], SolverConfig(backend="greedy"))
        rec[4] = approx_solve(rec[0], SolverConfig(backend="local_search"))
    return records, exact_elapsed


def _partition_ok(inst, sol):
    pa, pb = sol.partition.blocks_a, sol.partition.blocks_b
    pos = 1
    for s, l in pa:
        if s != pos or l < 1:
            return False
        pos += l
    if pos != inst.n + 1:
        return False
    covered = sorted(x for s, l in pb for x in range(s, s + l))
    if covered != list(range(1, inst.n + 1)):
        return False
    sub_a = Counter(tuple(inst.a[s - 1 : s - 1 + l]) for s, l in pa)
    sub_b = Counter(tuple(inst.b[s - 1 : s - 1 + l]) for s, l in pb)
    if sub_a != sub_b:
        return False
    return len(pa) == inst.n - sol.preserved_count


def test_criterion_1_reference_optimum(opt8):
    t0 = time.perf_counter()
    sol = approx_solve(opt8, SolverConfig(backend="exact"))
    elapsed = time.perf_counter() - t0
    ok = (
        sol.preserved_count == 8
        and sol.independent_set == OPT8_VERTEX_SET
        and elapsed < 1.0
    )
    _verdict(
        1, ok,
        f"exact pipeline preserves {sol.preserved_count}/8 duos with the "
        f"expected vertex set in {elapsed * 1000:.0f}ms",
    )


def test_criterion_2_degree_six_vertices_are_needed(opt8):
    g = build_conflict_graph(opt8)
    assert {v for v in g.vertices() if g.degree(v) == 6} == DEG6_VERTICES
    allowed = set(g.vertices()) - DEG6_VERTICES
    best = len(brute_force_opt(opt8, restrict=allowed))
    ok = best <= 6 < 8
    _verdict(
        2, ok,
        f"best solution avoiding all six degree-6 vertices has {best} <= 6 "
        "duos, below the optimum of 8",
    )


def test_criterion_3_two_square_series_contraction(opt9):
    t0 = time.perf_counter()
    series = find_maximal_series(find_squares(build_conflict_graph(opt9)))
    small, _ = shrink_strings(opt9, series[0])
    sol = approx_solve(opt9, SolverConfig(backend="exact"))
    elapsed = time.perf_counter() - t0
    ok = (
        [s.p for s in series] == [2]
        and (series[0].i, series[0].i_prime, series[0].j, series[0].j_prime)
        == (2, 8, 2, 8)
        and "".join(small.a) == "adefgdehyx"
        and "".join(small.b) == "gdehadxyef"
        and sol.preserved_count == 9
        and sorted("".join(c) for c in sol.contents) == OPT9_CONTENTS
        and elapsed < 1.0
    )
    _verdict(
        3, ok,
        f"series S(2,8;2,8)^2 contracts to adefgdehyx/gdehadxyef and the "
        f"pipeline preserves {sol.preserved_count}/9 duos in {elapsed * 1000:.0f}ms",
    )


def test_criterion_4_exact_pipeline_matches_oracle(corpus):
    records, elapsed = corpus
    agree = sum(1 for _, exact, opt, _, _ in records if exact.preserved_count == opt)
    ok = agree == len(records) and elapsed < 60.0
    _verdict(
        4, ok,
        f"exact pipeline matches the brute-force optimum on {agree}/"
        f"{len(records)} random instances in {elapsed:.1f}s",
    )


def test_criterion_5_structural_property_suite():
    rep = run_property_suite(
        CORPUS_SIZE,
        GeneratorConfig(k=2, seed=0, duplication_bias=BIAS),
        n_max=N_MAX,
    )
    ok = rep.failure_count == 0
    _verdict(
        5, ok,
        f"structural property suite: {rep.failure_count} violations across "
        f"{rep.instances} instances and {len(rep.results)} properties",
    )


def test_criterion_6_kernel_degree_bound(corpus):
    records, _ = corpus
    worst = max(exact.stats.max_deg_g2 for _, exact, _, _, _ in records)
    ok = worst <= 4
    _verdict(
        6, ok,
        f"max degree of the reduced kernel is {worst} <= 4 on every corpus instance",
    )


def test_criterion_7_partitions_valid_for_all_backends(corpus):
    records, _ = corpus
    bad = 0
    for inst, exact, _, greedy, local in records:
        for sol in (exact, greedy, local):
            if not _partition_ok(inst, sol):
                bad += 1
    ok = bad == 0
    _verdict(
        7, ok,
        f"{bad} invalid partitions across {3 * len(records)} backend runs "
        "(tiling, substring multiset, block count = n - preserved)",
    )


def test_criterion_8_local_search_quality(corpus):
    records, _ = corpus
    ratios = []
    for _, _, opt, _, local in records:
        if local.preserved_count > 0:
            ratios.append(opt / local.preserved_count)
        elif opt == 0:
            ratios.append(1.0)
        else:
            ratios.append(float("inf"))
    within = sum(1 for r in ratios if r <= 1.4) / len(ratios)
    worst = max(ratios)
    ok = within >= 0.95 and worst <= 2.0
    _verdict(
        8, ok,
        f"local search is within 1.4x of optimal on {within * 100:.1f}% of "
        f"instances (worst ratio {worst:.2f})",
    )

import random
from itertools import combinations

import pytest

import duomap.mis as mis
from duomap import (
    BudgetError,
    SolverConfig,
    build_conflict_graph,
    compiled_kernel_available,
    kernel_name,
    solve_backend,
    solve_exact,
    solve_greedy,
    solve_local_search,
)
from duomap import _mis_py
from duomap.graphs import ConflictGraph


def _graph(n, edges):
    g = ConflictGraph()
    for idx in range(n):
        g.add_vertex((idx, 0), ("x", "y"))
    for u, v in edges:
        g.add_edge((u, 0), (v, 0))
    return g


def _random_graph(n, density, seed):
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < density]
    return _graph(n, edges)


def _naive_opt_size(g):
    keys = sorted(g.vertices())
    best = 0
    for mask in range(1 << len(keys)):
        picked = [keys[x] for x in range(len(keys)) if mask >> x & 1]
        if len(picked) <= best:
            continue
        if all(v not in g.neighbors(u) for u, v in combinations(picked, 2)):
            best = len(picked)
    return best


def _is_independent_in(g, ind):
    return all(v not in g.neighbors(u) for u, v in combinations(sorted(ind), 2))


def test_exact_matches_naive_enumeration():
    for seed in range(30):
        g = _random_graph(12, 0.25, seed)
        sol = solve_exact(g)
        assert _is_independent_in(g, sol)
        assert len(sol) == _naive_opt_size(g)


def test_exact_star():
    g = _graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert solve_exact(g) == {(1, 0), (2, 0), (3, 0), (4, 0)}


def test_exact_empty_and_singleton():
    assert solve_exact(_graph(0, [])) == set()
    assert solve_exact(_graph(1, [])) == {(0, 0)}


def test_exact_budget():
    g = _random_graph(10, 0.3, seed=1)
    with pytest.raises(BudgetError):
        solve_exact(g, SolverConfig(exact_vertex_limit=5))


def test_greedy_independent_and_maximal():
    for seed in range(20):
        g = _random_graph(14, 0.3, seed)
        sol = solve_greedy(g)
        assert _is_independent_in(g, sol)
        for v in g.vertices():
            assert v in sol or g.neighbors(v) & sol


def test_local_search_five_cycle():
    g = _graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert len(solve_local_search(g)) == 2


def test_local_search_never_worse_than_greedy():
    for seed in range(20):
        g = _random_graph(16, 0.25, seed)
        ls = solve_local_search(g)
        assert _is_independent_in(g, ls)
        assert len(ls) >= len(solve_greedy(g))


def test_local_search_swap_two_config():
    g = _random_graph(16, 0.25, seed=3)
    sol = solve_local_search(g, SolverConfig(local_search_swap_size=2))
    assert _is_independent_in(g, sol)


def test_backends_deterministic(opt8):
    g = build_conflict_graph(opt8)
    for solver in (solve_exact, solve_greedy, solve_local_search):
        runs = {frozenset(solver(g.copy())) for _ in range(3)}
        assert len(runs) == 1


def test_solve_backend_dispatch(opt8):
    g = build_conflict_graph(opt8)
    for name in ("exact", "greedy", "local_search"):
        sol, used = solve_backend(g.copy(), SolverConfig(backend=name))
        assert used == name
    # auto: exact within the limit, local search above it
    _, used = solve_backend(g.copy(), SolverConfig())
    assert used == "exact"
    _, used = solve_backend(g.copy(), SolverConfig(exact_vertex_limit=3))
    assert used == "local_search"


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(backend="simulated_annealing")
    with pytest.raises(ValueError):
        SolverConfig(local_search_swap_size=4)
    with pytest.raises(ValueError):
        SolverConfig(exact_vertex_limit=-1)


def test_pure_python_kernel_agrees_with_compiled():
    if not compiled_kernel_available():
        pytest.skip("compiled kernel not built")
    from duomap import _mis_core

    rng = random.Random(7)
    for n in (10, 20, 35, 50):
        masks = [0] * n
        for u, v in combinations(range(n), 2):
            if rng.random() < 0.15:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
        assert _mis_py.solve_masks(masks).bit_count() == _mis_core.solve_masks(masks).bit_count()


def test_exact_via_forced_python_fallback(opt8, monkeypatch):
    monkeypatch.setattr(mis, "_mis_core", None)
    assert kernel_name() in ("compiled", "python")
    g = build_conflict_graph(opt8)
    sol = solve_exact(g)
    assert _is_independent_in(g, sol)
    assert len(sol) == 8

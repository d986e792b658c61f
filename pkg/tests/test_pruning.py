import pytest

from duomap import (
    GeneratorConfig,
    ReductionError,
    build_conflict_graph,
    eliminate_squares,
    gen_random_instance,
    graph_opt_size,
    prune,
)
from duomap.graphs import ConflictGraph


def _chain(edges, n):
    g = ConflictGraph()
    for idx in range(n):
        g.add_vertex((idx, 0), ("x", "y"))
    for u, v in edges:
        g.add_edge((u, 0), (v, 0))
    return g


def test_prune_requires_square_free(opt8):
    g = build_conflict_graph(opt8)
    with pytest.raises(ReductionError):
        prune(g)


def test_prune_path():
    # path 0-1-2-3: leaves commit one at a time, everything dissolves
    g = _chain([(0, 1), (1, 2), (2, 3)], 4)
    g2, rec = prune(g)
    assert len(g2) == 0
    assert set(rec.chosen) == {(0, 0), (2, 0)}
    assert set(rec.removed_neighbors) == {(1, 0), (3, 0)}


def test_prune_adjacent_leaves_takes_only_one():
    # a single edge is a pair of adjacent leaves; only one may be committed
    g = _chain([(0, 1)], 2)
    g2, rec = prune(g)
    assert len(g2) == 0
    assert rec.chosen == ((0, 0),)
    assert rec.removed_neighbors == ((1, 0),)


def test_prune_cascades_through_re_exposed_leaves():
    # triangle with a pendant: removing the pendant's neighbor turns the
    # remaining edge into a fresh pair of leaves, which the worklist consumes
    g = _chain([(0, 1), (1, 2), (2, 0), (0, 3)], 4)
    g2, rec = prune(g)
    assert rec.chosen == ((3, 0), (1, 0))
    assert rec.removed_neighbors == ((0, 0), (2, 0))
    assert len(g2) == 0


def test_prune_leaves_cycle_untouched():
    g = _chain([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 5)
    g2, rec = prune(g)
    assert rec.chosen == ()
    assert len(g2) == 5
    assert g2.min_degree() == 2


def test_prune_fixpoint_min_degree():
    for seed in range(60):
        cfg = GeneratorConfig(n=13, alphabet_size=7, seed=seed, duplication_bias=0.9)
        g, _ = eliminate_squares(build_conflict_graph(gen_random_instance(cfg)))
        opt_g1 = graph_opt_size(g.copy())
        g2, rec = prune(g)
        if len(g2):
            assert g2.min_degree() >= 2
        assert g2.max_degree() <= 4
        # committed vertices account exactly for the optimum drop
        assert opt_g1 == len(rec.chosen) + graph_opt_size(g2)

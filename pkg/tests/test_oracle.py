import pytest

from duomap import (
    BudgetError,
    GeneratorConfig,
    brute_force_opt,
    counterexample_files,
    gen_random_instance,
    is_independent,
    parse_instance,
    run_property_suite,
    validate,
)
from duomap.oracle import _duo_vertices, graph_opt_size
from duomap.graphs import build_conflict_graph


def test_generator_deterministic():
    cfg = GeneratorConfig(n=12, alphabet_size=7, seed=42, duplication_bias=0.8)
    assert gen_random_instance(cfg) == gen_random_instance(cfg)
    other = GeneratorConfig(n=12, alphabet_size=7, seed=43, duplication_bias=0.8)
    assert gen_random_instance(cfg) != gen_random_instance(other)


def test_generator_respects_constraints():
    for seed in range(50):
        cfg = GeneratorConfig(n=14, alphabet_size=7, seed=seed, duplication_bias=0.9)
        inst = gen_random_instance(cfg)
        assert inst.n == 14
        assert validate(inst, 2) == []


def test_generator_infeasible_config():
    with pytest.raises(ValueError, match="infeasible"):
        gen_random_instance(GeneratorConfig(n=3, k=1, alphabet_size=2))


def test_generator_produces_squares_often():
    from duomap import find_squares

    hits = 0
    for seed in range(100):
        cfg = GeneratorConfig(n=12, alphabet_size=6, seed=seed, duplication_bias=0.9)
        if find_squares(build_conflict_graph(gen_random_instance(cfg))):
            hits += 1
    assert hits >= 40  # repeated substrings must actually occur


def test_brute_force_reference(opt8):
    opt = brute_force_opt(opt8)
    assert len(opt) == 8
    assert is_independent(opt)


def test_brute_force_restrict(opt8):
    allowed = set(_duo_vertices(opt8)) - {(2, 2)}
    restricted = brute_force_opt(opt8, restrict=allowed)
    assert (2, 2) not in restricted
    assert len(restricted) <= 8


def test_brute_force_budget():
    # long instance with heavy duplication blows past the oracle limit
    a = "".join(c * 2 for c in "abcdefghijklmnopqrst")
    inst = parse_instance(a + "\n" + a + "\n")
    with pytest.raises(BudgetError):
        brute_force_opt(inst)


def test_graph_opt_matches_brute_force(opt8, opt9):
    for inst in (opt8, opt9):
        g = build_conflict_graph(inst)
        assert graph_opt_size(g) == len(brute_force_opt(inst))


def test_suite_small_run_passes():
    rep = run_property_suite(30, GeneratorConfig(k=2, seed=5, duplication_bias=0.9), n_max=10)
    assert rep.instances == 30
    assert rep.failure_count == 0
    assert rep.ratio_stats["max"] <= 2.0
    d = rep.to_dict()
    assert d["failures"] == 0
    assert set(d["properties"]) == {name for name in rep.results}
    assert "total failures: 0" in rep.summary()
    assert counterexample_files(rep) == {}


def test_suite_general_checks_for_k3():
    rep = run_property_suite(15, GeneratorConfig(k=3, seed=2, duplication_bias=0.7), n_max=9)
    assert rep.failure_count == 0
    assert rep.ratio_stats == {}


def test_suite_rejects_zero_count():
    with pytest.raises(ValueError):
        run_property_suite(0, GeneratorConfig())

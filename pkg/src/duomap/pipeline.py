"""End-to-end solve: build, contract squares, prune leaves, run a MIS
backend on the kernel, lift back, and reconstruct the common partition."""

import json
import time
from dataclasses import dataclass, replace

from .errors import LiftError, ValidationError
from .graphs import build_conflict_graph, conflicts_oracle, is_independent
from .instance import validate
from .mis import SolverConfig, solve_backend
from .pruning import prune
from .squares import eliminate_squares, lift


@dataclass(frozen=True)
class PipelineStats:
    v_g: int
    v_g1: int
    v_g2: int
    max_deg_g2: int
    series: tuple  # of (i, i_prime, j, j_prime, p)
    backend: str
    seed: int
    elapsed_ms: float
    chosen: int  # vertices committed by leaf pruning
    backend_solution: int  # size of the backend's kernel solution


@dataclass(frozen=True)
class CommonPartition:
    blocks_a: tuple  # of (start, length), tiling A in order
    blocks_b: tuple  # of (start, length), the same substrings tiling B


@dataclass(frozen=True)
class Solution:
    n: int
    k: int
    independent_set: tuple  # sorted (i, j) keys in the original graph
    contents: tuple  # letter content per vertex, aligned with independent_set
    mapping: tuple  # 1-based B-position for each A-position 1..n
    partition: CommonPartition
    stats: PipelineStats

    @property
    def preserved_count(self):
        return len(self.independent_set)


def reconstruct_partition(inst, vertex_set):
    """Extend the vertex constraints to a full letter-preserving bijection
    and cut it into common blocks.

    Unconstrained positions are paired ascending within each letter class.
    Raises LiftError if the vertex constraints are inconsistent (i.e. the
    input was not an independent set).
    """
    n = inst.n
    a_map = {}
    b_map = {}
    for (i, j) in sorted(vertex_set):
        for x, y in ((i, j), (i + 1, j + 1)):
            if a_map.get(x, y) != y or b_map.get(y, x) != x:
                raise LiftError(
                    f"inconsistent position constraints at {x}->{y}; "
                    "input vertex set is not independent"
                )
            a_map[x] = y
            b_map[y] = x
    free_b = {}
    for y in range(1, n + 1):
        if y not in b_map:
            free_b.setdefault(inst.letter_b(y), []).append(y)
    for x in range(1, n + 1):
        if x not in a_map:
            ys = free_b.get(inst.letter_a(x))
            if not ys:
                raise LiftError(f"no free B-position for A-position {x}")
            a_map[x] = ys.pop(0)
    mapping = tuple(a_map[x] for x in range(1, n + 1))

    blocks_a = []
    start = 1
    for x in range(1, n):
        if mapping[x] != mapping[x - 1] + 1:
            blocks_a.append((start, x - start + 1))
            start = x + 1
    if n > 0:
        blocks_a.append((start, n - start + 1))
    blocks_b = sorted((mapping[s - 1], length) for s, length in blocks_a)
    return mapping, CommonPartition(tuple(blocks_a), tuple(blocks_b))


def approx_solve(inst, cfg=None):
    """Run the full degree-reduction pipeline and return a Solution.

    With the exact backend the result is a maximum independent set of the
    original conflict graph (the contraction and pruning steps preserve
    optimality); heuristic backends trade that for scale.
    """
    cfg = cfg or SolverConfig()
    violations = validate(inst, 2)
    if violations:
        raise ValidationError(violations)
    t0 = time.perf_counter()

    g = build_conflict_graph(inst)
    v_g = len(g)
    contents = {v: g.content(v) for v in g.vertices()}

    g1, records = eliminate_squares(g)
    v_g1 = len(g1)
    g2, prune_rec = prune(g1)
    v_g2 = len(g2)
    max_deg_g2 = g2.max_degree()

    kernel_solution, backend_name = solve_backend(g2, cfg)
    sol = set(kernel_solution) | set(prune_rec.chosen)
    for rec in reversed(records):
        before = set(sol)
        sol = lift(sol, rec)
        added = sol - before
        for v in sorted(added):
            for u in sorted(sol):
                if u != v and conflicts_oracle(u, v):
                    raise LiftError(
                        f"lift through series {rec.series} produced conflicting "
                        f"pair {u}, {v}"
                    )
    if not is_independent(sol):
        raise LiftError("final solution is not independent")

    mapping, partition = reconstruct_partition(inst, sol)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    keys = tuple(sorted(sol))
    stats = PipelineStats(
        v_g=v_g,
        v_g1=v_g1,
        v_g2=v_g2,
        max_deg_g2=max_deg_g2,
        series=tuple(
            (r.series.i, r.series.i_prime, r.series.j, r.series.j_prime, r.series.p)
            for r in records
        ),
        backend=backend_name,
        seed=cfg.rng_seed,
        elapsed_ms=round(elapsed_ms, 3),
        chosen=len(prune_rec.chosen),
        backend_solution=len(kernel_solution),
    )
    return Solution(
        n=inst.n,
        k=inst.k,
        independent_set=keys,
        contents=tuple(contents[v] for v in keys),
        mapping=mapping,
        partition=partition,
        stats=stats,
    )


def _content_str(content):
    return "".join(content) if all(len(t) == 1 for t in content) else " ".join(content)


def solution_to_dict(sol):
    return {
        "n": sol.n,
        "k": sol.k,
        "preserved": sol.preserved_count,
        "vertices": [
            {"i": i, "j": j, "content": _content_str(c)}
            for (i, j), c in zip(sol.independent_set, sol.contents)
        ],
        "mapping": list(sol.mapping),
        "blocks_a": [list(b) for b in sol.partition.blocks_a],
        "blocks_b": [list(b) for b in sol.partition.blocks_b],
        "stats": {
            "v_g": sol.stats.v_g,
            "v_g1": sol.stats.v_g1,
            "v_g2": sol.stats.v_g2,
            "max_deg_g2": sol.stats.max_deg_g2,
            "series": [
                {"i": i, "i_prime": i2, "j": j, "j_prime": j2, "p": p}
                for (i, i2, j, j2, p) in sol.stats.series
            ],
            "backend": sol.stats.backend,
            "seed": sol.stats.seed,
            "elapsed_ms": sol.stats.elapsed_ms,
            "chosen": sol.stats.chosen,
            "backend_solution": sol.stats.backend_solution,
        },
    }


def solution_from_dict(d):
    keys = tuple((v["i"], v["j"]) for v in d["vertices"])
    contents = tuple(
        tuple(v["content"]) if " " not in v["content"]
        else tuple(v["content"].split(" "))
        for v in d["vertices"]
    )
    st = d["stats"]
    stats = PipelineStats(
        v_g=st["v_g"],
        v_g1=st["v_g1"],
        v_g2=st["v_g2"],
        max_deg_g2=st["max_deg_g2"],
        series=tuple(
            (s["i"], s["i_prime"], s["j"], s["j_prime"], s["p"])
            for s in st["series"]
        ),
        backend=st["backend"],
        seed=st["seed"],
        elapsed_ms=st["elapsed_ms"],
        chosen=st["chosen"],
        backend_solution=st["backend_solution"],
    )
    return Solution(
        n=d["n"],
        k=d["k"],
        independent_set=keys,
        contents=contents,
        mapping=tuple(d["mapping"]),
        partition=CommonPartition(
            tuple(tuple(b) for b in d["blocks_a"]),
            tuple(tuple(b) for b in d["blocks_b"]),
        ),
        stats=stats,
    )


def report(sol, fmt="text"):
    """Deterministic serialization of a Solution."""
    if fmt == "json":
        return json.dumps(solution_to_dict(sol), indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [
        f"n={sol.n} k={sol.k} preserved={sol.preserved_count}",
        "vertices: " + " ".join(
            f"v({i},{j}):{_content_str(c)}"
            for (i, j), c in zip(sol.independent_set, sol.contents)
        ),
        "mapping: " + " ".join(str(y) for y in sol.mapping),
        "blocks_a: " + " ".join(f"{s}+{l}" for s, l in sol.partition.blocks_a),
        "blocks_b: " + " ".join(f"{s}+{l}" for s, l in sol.partition.blocks_b),
        f"stats: v_g={sol.stats.v_g} v_g1={sol.stats.v_g1} v_g2={sol.stats.v_g2}"
        f" max_deg_g2={sol.stats.max_deg_g2}"
        f" series={';'.join('S(%d,%d;%d,%d)^%d' % (i, i2, j, j2, p) for (i, i2, j, j2, p) in sol.stats.series) or '-'}"
        f" backend={sol.stats.backend} seed={sol.stats.seed}"
        f" elapsed_ms={sol.stats.elapsed_ms}",
    ]
    return "\n".join(lines) + "\n"


def parse_report(text):
    """Parse a JSON report back into a Solution (round-trip of `report`)."""
    return solution_from_dict(json.loads(text))


def strip_timing(sol):
    """Copy of the solution with elapsed_ms zeroed, for byte-stable output."""
    return replace(sol, stats=replace(sol.stats, elapsed_ms=0.0))

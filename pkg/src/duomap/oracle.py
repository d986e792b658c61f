"""Ground-truth oracle, random instance generator, and the structural
property suite.

The brute-force optimum works on the raw conflict graph with definitional
conflict edges and a plain include/exclude search, sharing no code with the
reduction pipeline or the MIS backends, so it can falsify them.
"""

import json
import random
import statistics
from dataclasses import dataclass, field, replace

from .errors import BudgetError
from .graphs import (
    build_conflict_graph,
    conflicts_oracle,
    is_independent,
    neighbors_closed_form,
)
from .instance import Instance, format_instance, validate
from .mis import SolverConfig
from .pipeline import approx_solve
from .pruning import prune
from .squares import contract_series, eliminate_squares, find_maximal_series, find_squares, shrink_strings

ORACLE_VERTEX_LIMIT = 30


def _duo_vertices(inst):
    """Duo-vertex keys by direct duo-content matching (no graph machinery)."""
    keys = []
    for i in range(1, inst.n):
        for j in range(1, inst.n):
            if (
                inst.letter_a(i) == inst.letter_b(j)
                and inst.letter_a(i + 1) == inst.letter_b(j + 1)
            ):
                keys.append((i, j))
    return keys


def _mask_opt(masks):
    """Exhaustive include/exclude search on lowest set bit, pruned only by
    the trivial remaining-count bound.  Returns (size, mask)."""
    best = {"size": 0, "mask": 0}

    def rec(avail, size, mask):
        if size + avail.bit_count() <= best["size"]:
            return
        if not avail:
            best["size"] = size
            best["mask"] = mask
            return
        bit = avail & -avail
        v = bit.bit_length() - 1
        rec(avail & ~bit & ~masks[v], size + 1, mask | bit)
        rec(avail & ~bit, size, mask)

    rec((1 << len(masks)) - 1, 0, 0)
    return best["size"], best["mask"]


def brute_force_opt(inst, restrict=None):
    """A maximum independent set of the full conflict graph G.

    `restrict`, if given, limits the search to that subset of vertex keys
    (used e.g. to probe solutions avoiding all degree-6 vertices).
    """
    keys = _duo_vertices(inst)
    if restrict is not None:
        restrict = set(restrict)
        keys = [k for k in keys if k in restrict]
    if len(keys) > ORACLE_VERTEX_LIMIT:
        raise BudgetError(
            f"{len(keys)} vertices exceed the oracle limit {ORACLE_VERTEX_LIMIT}"
        )
    masks = [0] * len(keys)
    for x, u in enumerate(keys):
        for y in range(x + 1, len(keys)):
            if conflicts_oracle(u, keys[y]):
                masks[x] |= 1 << y
                masks[y] |= 1 << x
    _, mask = _mask_opt(masks)
    return {keys[x] for x in range(len(keys)) if mask >> x & 1}


def graph_opt_size(g):
    """Exhaustive optimum of an arbitrary (possibly reduced) conflict graph,
    using its stored adjacency.  Oracle-side helper for the property suite."""
    keys = sorted(g.vertices())
    if len(keys) > ORACLE_VERTEX_LIMIT:
        raise BudgetError(
            f"{len(keys)} vertices exceed the oracle limit {ORACLE_VERTEX_LIMIT}"
        )
    index = {v: x for x, v in enumerate(keys)}
    masks = [0] * len(keys)
    for v in keys:
        for u in g.neighbors(v):
            masks[index[v]] |= 1 << index[u]
    size, _ = _mask_opt(masks)
    return size


@dataclass(frozen=True)
class GeneratorConfig:
    n: int = 12
    k: int = 2
    alphabet_size: int = 8
    seed: int = 0
    duplication_bias: float = 0.5  # controls repeated-substring (square) density


_ALPHA = "abcdefghijklmnopqrstuvwxyz"


def _letter(idx):
    return _ALPHA[idx] if idx < len(_ALPHA) else f"t{idx}"


def gen_random_instance(cfg):
    """Deterministic random instance, valid under the occurrence bound.

    The bias steers A toward copied substrings (when extending with the
    letter that followed the previous letter's earlier occurrence is legal,
    do so) and steers B toward block-shuffled rather than uniform
    permutations of A.  Both knobs raise the density of repeated duos, which
    is what produces squares; a uniformly shuffled B almost never repeats a
    duo, leaving the contraction machinery unexercised.
    """
    if cfg.alphabet_size * cfg.k < cfg.n:
        raise ValueError(
            f"infeasible: alphabet_size*k = {cfg.alphabet_size * cfg.k} < n = {cfg.n}"
        )
    rng = random.Random(cfg.seed)
    counts = {}
    a = []
    copy_cursor = None  # position in a[] whose letter the current copy run emits
    for t in range(cfg.n):
        letter = None
        if (
            copy_cursor is not None
            and copy_cursor < t
            and counts.get(a[copy_cursor], 0) < cfg.k
            and rng.random() < cfg.duplication_bias
        ):
            letter = a[copy_cursor]
            copy_cursor += 1
        else:
            copy_cursor = None
            # a short fresh prefix first, so copy runs replicate substrings
            # instead of doubling single letters
            if t >= 3 and rng.random() < cfg.duplication_bias:
                starts = [q for q in range(t) if counts.get(a[q], 0) < cfg.k]
                if starts:
                    q = rng.choice(starts)
                    letter = a[q]
                    copy_cursor = q + 1
        if letter is None:
            if len(counts) < cfg.alphabet_size:
                letter = _letter(len(counts))
            else:
                reusable = sorted(x for x, c in counts.items() if c < cfg.k)
                letter = rng.choice(reusable)
        counts[letter] = counts.get(letter, 0) + 1
        a.append(letter)
    if rng.random() < cfg.duplication_bias and cfg.n >= 2:
        # duo-preserving permutation: shuffle a random block partition of A
        m = rng.randint(2, max(2, cfg.n // 3))
        cuts = sorted(rng.sample(range(1, cfg.n), min(m - 1, cfg.n - 1)))
        bounds = [0] + cuts + [cfg.n]
        blocks = [a[lo:hi] for lo, hi in zip(bounds, bounds[1:])]
        rng.shuffle(blocks)
        b = [x for blk in blocks for x in blk]
    else:
        b = list(a)
        rng.shuffle(b)
    return Instance(tuple(a), tuple(b), cfg.k)


# --- property checks -------------------------------------------------------

class _Ctx:
    """Per-instance lazily computed shared state for the checks."""

    def __init__(self, inst):
        self.inst = inst
        self._g = None
        self._opt = None
        self._elim = None  # (g1, records)
        self._pruned = None  # (g2, prune_record, v_g1, opt_g1)

    @property
    def g(self):
        if self._g is None:
            self._g = build_conflict_graph(self.inst)
        return self._g

    @property
    def opt_size(self):
        if self._opt is None:
            self._opt = len(brute_force_opt(self.inst))
        return self._opt

    @property
    def elimination(self):
        if self._elim is None:
            self._elim = eliminate_squares(self.g.copy())
        return self._elim

    @property
    def pruned(self):
        if self._pruned is None:
            g1, _ = self.elimination
            g1c = g1.copy()
            opt_g1 = graph_opt_size(g1c)
            v_g1 = len(g1c)
            g2, rec = prune(g1c)
            self._pruned = (g2, rec, v_g1, opt_g1)
        return self._pruned


def _check_neighbor_formula_agreement(ctx):
    errors = []
    g = ctx.g
    keys = sorted(g.vertices())
    for x, u in enumerate(keys):
        formula = neighbors_closed_form(g, u)
        if formula != g.neighbors(u):
            errors.append(f"stored adjacency of {u} differs from closed form")
        for v in keys[x + 1:]:
            if conflicts_oracle(u, v) != (v in formula):
                errors.append(f"oracle/formula disagreement on {u}, {v}")
    return errors


def _check_diagonal_interpolation(ctx):
    g = ctx.g
    return [
        f"{(i, j)} and {(i + 2, j + 2)} present but {(i + 1, j + 1)} missing"
        for (i, j) in g.vertices()
        if (i + 2, j + 2) in g and (i + 1, j + 1) not in g
    ]


def _check_content_cross_closure(ctx):
    g = ctx.g
    errors = []
    by_content = {}
    for v in g.vertices():
        by_content.setdefault(g.content(v), []).append(v)
    for keys in by_content.values():
        for (i, j) in keys:
            for (h, l) in keys:
                if (h, j) not in g or (i, l) not in g:
                    errors.append(
                        f"content mates {(i, j)}, {(h, l)} lack cross vertices"
                    )
    return errors


def _check_degree_bound(ctx):
    g = ctx.g
    bound = 6 * (ctx.inst.k - 1)
    return [
        f"vertex {v} has degree {g.degree(v)} > {bound}"
        for v in g.vertices()
        if g.degree(v) > bound
    ]


def _check_row_structure(ctx):
    g = ctx.g
    errors = []
    rows = {}
    for (i, j) in g.vertices():
        rows.setdefault(i, set()).add(j)
    for i, js in rows.items():
        if len(js) > 2:
            errors.append(f"row {i} has {len(js)} vertices")
        if len(js) == 2:
            for j2 in rows.get(i + 1, ()):
                if j2 - 1 not in js:
                    errors.append(f"v({i + 1},{j2}) breaks the successor rule")
            for j2 in rows.get(i - 1, ()):
                if j2 + 1 not in js:
                    errors.append(f"v({i - 1},{j2}) breaks the predecessor rule")
    return errors


def _check_square_neighborhoods(ctx):
    g = ctx.g
    errors = []
    for sq in find_squares(g):
        vij = (sq.i, sq.j)
        vij2 = (sq.i, sq.j_prime)
        vi2j = (sq.i_prime, sq.j)
        vi2j2 = (sq.i_prime, sq.j_prime)
        if g.neighbors(vij) != g.neighbors(vi2j2):
            errors.append(f"square {sq.key}: N{vij} != N{vi2j2}")
        if g.neighbors(vij2) != g.neighbors(vi2j):
            errors.append(f"square {sq.key}: N{vij2} != N{vi2j}")
        if g.neighbors(vij) & g.neighbors(vij2):
            errors.append(f"square {sq.key}: diagonal neighborhoods intersect")
        members = set(sq.members)
        for v in g.vertices():
            if v in members:
                continue
            hits = sum(1 for m in members if m in g.neighbors(v))
            if hits not in (0, 2):
                errors.append(f"{v} adjacent to {hits} members of square {sq.key}")
    return errors


def _check_degree6_square_corners(ctx):
    g = ctx.g
    member_of = {}
    for sq in find_squares(g):
        for m in sq.members:
            member_of[m] = sq
    errors = []
    for v in g.vertices():
        if g.degree(v) != 6:
            continue
        sq = member_of.get(v)
        if sq is None:
            errors.append(f"degree-6 vertex {v} is not in a square")
            continue
        i, j = v
        opposite = (
            sq.i_prime if i == sq.i else sq.i,
            sq.j_prime if j == sq.j else sq.j,
        )
        if g.neighbors(v) != g.neighbors(opposite):
            errors.append(f"degree-6 vertex {v} and corner {opposite} differ in N")
    return errors


def _square_free_degree_errors(g, label):
    errors = []
    for v in g.vertices():
        if g.degree(v) == 5:
            if not any(g.degree(u) == 1 for u in g.neighbors(v)):
                errors.append(f"{label}: degree-5 vertex {v} has no degree-1 neighbor")
        if g.degree(v) > 5:
            errors.append(f"{label}: square-free graph has degree-{g.degree(v)} vertex {v}")
    return errors


def _check_degree5_forces_leaf(ctx):
    errors = []
    if not find_squares(ctx.g):
        errors.extend(_square_free_degree_errors(ctx.g, "G"))
    g1, _ = ctx.elimination
    errors.extend(_square_free_degree_errors(g1, "G1"))
    return errors


def _check_consecutive_squares_chain(ctx):
    g = ctx.g
    member_of = {}
    for sq in find_squares(g):
        for m in sq.members:
            member_of[m] = sq
    errors = []
    for v in g.vertices():
        succ = (v[0] + 1, v[1] + 1)
        if succ not in g:
            continue
        sv, ss = member_of.get(v), member_of.get(succ)
        if sv is None or ss is None or sv is ss:
            continue
        if ss.key != (sv.i + 1, sv.i_prime + 1, sv.j + 1, sv.j_prime + 1):
            errors.append(
                f"consecutive vertices {v}, {succ} in non-consecutive squares "
                f"{sv.key}, {ss.key}"
            )
    return errors


def _check_series_substrings(ctx):
    inst = ctx.inst
    errors = []
    for s in find_maximal_series(find_squares(ctx.g)):
        ranges = [
            (inst.a, s.i, s.i + s.p),
            (inst.a, s.i_prime, s.i_prime + s.p),
            (inst.b, s.j, s.j + s.p),
            (inst.b, s.j_prime, s.j_prime + s.p),
        ]
        subs = [tuple(seq[lo - 1:hi]) for seq, lo, hi in ranges]
        if len(set(subs)) != 1:
            errors.append(f"series {s}: substrings differ: {subs}")
        for side, pairs in (
            ("A", [(s.i, s.i + s.p), (s.i_prime, s.i_prime + s.p)]),
            ("B", [(s.j, s.j + s.p), (s.j_prime, s.j_prime + s.p)]),
        ):
            (lo1, hi1), (lo2, hi2) = pairs
            if lo2 <= hi1 and lo1 <= hi2:
                errors.append(f"series {s}: {side}-ranges overlap")
    return errors


def _graphs_isomorphic_under_map(gc, gr, amap, bmap):
    """Compare a contracted graph gc (original labels) against a rebuilt
    graph gr via the position maps."""
    mapped = {}
    for v in gc.vertices():
        mapped[v] = (amap[v[0]], bmap[v[1]])
    if set(mapped.values()) != set(gr.vertices()):
        return "vertex sets differ"
    ec = {frozenset((mapped[u], mapped[v])) for e in gc.edges() for u, v in [tuple(e)]}
    if ec != gr.edges():
        missing = gr.edges() - ec
        extra = ec - gr.edges()
        return f"edge sets differ (missing {sorted(map(sorted, missing))}, extra {sorted(map(sorted, extra))})"
    return None


def _check_contraction_crosscheck(ctx):
    """Per elimination step: contracted graph isomorphic to the graph built
    from the shrunken strings, and OPT drops by exactly 2p."""
    errors = []
    inst = ctx.inst
    g = ctx.g.copy()
    step = 0
    while True:
        squares = find_squares(g)
        if not squares:
            break
        series = find_maximal_series(squares)[0]
        opt_before = graph_opt_size(g)
        rec = contract_series(g, series)
        shrunk, (amap, bmap) = shrink_strings(inst, series)
        rebuilt = build_conflict_graph(shrunk)
        problem = _graphs_isomorphic_under_map(g, rebuilt, amap, bmap)
        if problem:
            errors.append(f"step {step}, series {series}: {problem}")
            break
        opt_after = graph_opt_size(g)
        if opt_before != opt_after + 2 * series.p:
            errors.append(
                f"step {step}: OPT {opt_before} != {opt_after} + 2*{series.p}"
            )
        # continue in shrunken coordinates so series indices stay consistent
        inst = shrunk
        g = rebuilt
        step += 1
    return errors


def _check_prune_and_kernel(ctx):
    g2, rec, _, opt_g1 = ctx.pruned
    errors = []
    if g2.max_degree() > 4:
        errors.append(f"kernel max degree {g2.max_degree()} > 4")
    if len(g2) and g2.min_degree() < 2:
        errors.append(f"kernel min degree {g2.min_degree()} < 2")
    if not is_independent(rec.chosen):
        errors.append("pruning chose a dependent vertex set")
    if opt_g1 != len(rec.chosen) + graph_opt_size(g2):
        errors.append(
            f"OPT(G1)={opt_g1} != |chosen|={len(rec.chosen)} + OPT(G2)"
        )
    return errors


def _check_pipeline_optimal(ctx):
    sol = approx_solve(ctx.inst, SolverConfig(backend="exact"))
    errors = []
    if sol.preserved_count != ctx.opt_size:
        errors.append(
            f"pipeline(exact) = {sol.preserved_count}, oracle OPT = {ctx.opt_size}"
        )
    expected = sol.stats.backend_solution + sol.stats.chosen + 2 * sum(
        p for (_, _, _, _, p) in sol.stats.series
    )
    if sol.preserved_count != expected:
        errors.append(
            f"lift accounting: {sol.preserved_count} != backend "
            f"{sol.stats.backend_solution} + chosen {sol.stats.chosen} + 2*sum(p)"
        )
    return errors


def _check_partitions(ctx):
    errors = []
    inst = ctx.inst
    for backend in ("exact", "greedy", "local_search"):
        sol = approx_solve(inst, SolverConfig(backend=backend))
        blocks_a = sol.partition.blocks_a
        covered = [x for s, length in blocks_a for x in range(s, s + length)]
        if covered != list(range(1, inst.n + 1)):
            errors.append(f"{backend}: A-blocks do not tile A")
        subs_a = sorted(inst.a[s - 1:s - 1 + length] for s, length in blocks_a)
        subs_b = sorted(inst.b[s - 1:s - 1 + length] for s, length in sol.partition.blocks_b)
        covered_b = sorted(
            x for s, length in sol.partition.blocks_b for x in range(s, s + length)
        )
        if covered_b != list(range(1, inst.n + 1)):
            errors.append(f"{backend}: B-blocks do not tile B")
        if subs_a != subs_b:
            errors.append(f"{backend}: block content multisets differ")
        if len(blocks_a) != inst.n - sol.preserved_count:
            errors.append(
                f"{backend}: {len(blocks_a)} blocks != n - preserved "
                f"= {inst.n - sol.preserved_count}"
            )
        if not is_independent(sol.independent_set):
            errors.append(f"{backend}: solution not independent")
    return errors


_K2_CHECKS = [
    ("neighbor_formula_agreement", _check_neighbor_formula_agreement),
    ("diagonal_interpolation", _check_diagonal_interpolation),
    ("content_cross_closure", _check_content_cross_closure),
    ("degree_bound_6k", _check_degree_bound),
    ("row_structure", _check_row_structure),
    ("square_neighborhoods", _check_square_neighborhoods),
    ("degree6_square_corners", _check_degree6_square_corners),
    ("degree5_forces_leaf", _check_degree5_forces_leaf),
    ("consecutive_squares_chain", _check_consecutive_squares_chain),
    ("series_substrings", _check_series_substrings),
    ("contraction_crosscheck", _check_contraction_crosscheck),
    ("prune_and_kernel", _check_prune_and_kernel),
    ("pipeline_exact_optimal", _check_pipeline_optimal),
    ("partition_validity", _check_partitions),
]

_GENERAL_CHECKS = [
    ("neighbor_formula_agreement", _check_neighbor_formula_agreement),
    ("diagonal_interpolation", _check_diagonal_interpolation),
    ("content_cross_closure", _check_content_cross_closure),
    ("degree_bound_6k", _check_degree_bound),
]


@dataclass
class PropertyResult:
    name: str
    passes: int = 0
    failures: int = 0
    counterexamples: list = field(default_factory=list)


@dataclass
class SuiteReport:
    instances: int
    results: dict  # name -> PropertyResult
    ratio_stats: dict  # local-search OPT/SOL statistics

    @property
    def failure_count(self):
        return sum(r.failures for r in self.results.values())

    def to_dict(self):
        return {
            "instances": self.instances,
            "failures": self.failure_count,
            "properties": {
                name: {
                    "passes": r.passes,
                    "failures": r.failures,
                    "counterexamples": r.counterexamples,
                }
                for name, r in self.results.items()
            },
            "ratio_stats": self.ratio_stats,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def summary(self):
        lines = [f"instances: {self.instances}"]
        for name, r in self.results.items():
            status = "ok" if r.failures == 0 else f"FAIL ({r.failures})"
            lines.append(f"  {name}: {r.passes} pass, {status}")
        if self.ratio_stats:
            rs = self.ratio_stats
            lines.append(
                "  local_search OPT/SOL: min %.3f mean %.3f max %.3f, "
                "<=1.4 on %.1f%%" % (
                    rs["min"], rs["mean"], rs["max"], 100 * rs["frac_within_1_4"]
                )
            )
        lines.append(f"total failures: {self.failure_count}")
        return "\n".join(lines) + "\n"


def run_property_suite(count, cfg, n_max=None):
    """Generate `count` instances and evaluate every structural property.

    With `n_max`, instance length cycles over 4..n_max (alphabet sized to
    keep the bound feasible); otherwise cfg.n and cfg.alphabet_size are used
    as-is.  Failures carry a replayable instance and seed.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    checks = _K2_CHECKS if cfg.k == 2 else _GENERAL_CHECKS
    results = {name: PropertyResult(name) for name, _ in checks}
    ratios = []
    for idx in range(count):
        seed = cfg.seed + idx
        icfg = replace(cfg, seed=seed)
        if n_max is not None:
            n = 4 + (idx % (n_max - 3))
            alphabet = max(2, (n + 1) // 2, -(-n // cfg.k))
            icfg = replace(icfg, n=n, alphabet_size=alphabet)
        inst = gen_random_instance(icfg)
        ctx = _Ctx(inst)
        for name, fn in checks:
            try:
                errors = fn(ctx)
            except Exception as exc:  # a crash is a failure with evidence
                errors = [f"exception: {exc!r}"]
            r = results[name]
            if errors:
                r.failures += 1
                if len(r.counterexamples) < 5:
                    r.counterexamples.append(
                        {
                            "seed": seed,
                            "n": inst.n,
                            "a": " ".join(inst.a),
                            "b": " ".join(inst.b),
                            "errors": errors[:5],
                        }
                    )
            else:
                r.passes += 1
        if cfg.k == 2:
            sol = approx_solve(inst, SolverConfig(backend="local_search"))
            opt = len(brute_force_opt(inst))
            if sol.preserved_count > 0:
                ratios.append(opt / sol.preserved_count)
            elif opt == 0:
                ratios.append(1.0)
    ratio_stats = {}
    if ratios:
        ratio_stats = {
            "min": min(ratios),
            "mean": statistics.fmean(ratios),
            "max": max(ratios),
            "frac_within_1_4": sum(1 for r in ratios if r <= 1.4) / len(ratios),
        }
    return SuiteReport(instances=count, results=results, ratio_stats=ratio_stats)


def counterexample_files(report):
    """Instance-file documents for every recorded counterexample, keyed by
    a replayable name.  Writable by the CLI next to the suite report."""
    files = {}
    for name, r in report.results.items():
        for ce in r.counterexamples:
            fname = f"counterexample_{name}_seed{ce['seed']}.duo"
            inst = Instance(tuple(ce["a"].split()), tuple(ce["b"].split()))
            files[fname] = f"# property {name}, seed {ce['seed']}\n" + format_instance(
                inst, mode="token"
            )
    return files

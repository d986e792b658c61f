"""Pluggable maximum-independent-set backends for conflict graphs.

The exact backend runs a bitset branch-and-bound kernel, compiled (Cython)
when the extension built, pure Python otherwise; selection happens at import
time and can be inspected via `compiled_kernel_available()`.  Heuristic
backends (greedy, local search) have no size limit.
"""

import time
from dataclasses import dataclass

from . import _mis_py
from .errors import BudgetError

try:
    from . import _mis_core
except ImportError:  # extension not built; pure fallback
    _mis_core = None

BACKENDS = ("exact", "greedy", "local_search")


def compiled_kernel_available():
    return _mis_core is not None


def kernel_name():
    return "compiled" if _mis_core is not None else "python"


def _kernel_solve(masks):
    if _mis_core is not None and len(masks) <= 64:
        return _mis_core.solve_masks(masks)
    return _mis_py.solve_masks(masks)


@dataclass(frozen=True)
class SolverConfig:
    backend: str | None = None  # None selects exact-or-local by kernel size
    exact_vertex_limit: int = 60
    local_search_swap_size: int = 3
    time_budget: float | None = None  # seconds
    rng_seed: int = 0

    def __post_init__(self):
        if self.backend is not None and self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.exact_vertex_limit < 0:
            raise ValueError("exact_vertex_limit must be >= 0")
        if self.local_search_swap_size not in (2, 3):
            raise ValueError("local_search_swap_size must be 2 or 3")


def _components(g):
    seen = set()
    for start in sorted(g.vertices()):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            for u in g.neighbors(stack.pop()):
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        yield sorted(comp)


def solve_exact(g, cfg=None):
    """Maximum independent set by branch and bound, decomposed over
    connected components.  Raises BudgetError above the vertex limit."""
    cfg = cfg or SolverConfig()
    if len(g) > cfg.exact_vertex_limit:
        raise BudgetError(
            f"graph has {len(g)} vertices, exact limit is {cfg.exact_vertex_limit}"
        )
    result = set()
    for comp in _components(g):
        index = {v: idx for idx, v in enumerate(comp)}
        masks = [0] * len(comp)
        for v in comp:
            for u in g.neighbors(v):
                masks[index[v]] |= 1 << index[u]
        chosen = _kernel_solve(masks)
        result.update(v for v in comp if chosen >> index[v] & 1)
    return result


def solve_greedy(g, cfg=None):
    """Minimum-residual-degree greedy (ties by least (i, j) key)."""
    alive = set(g.vertices())
    result = set()
    while alive:
        v = min(alive, key=lambda u: (sum(1 for w in g.neighbors(u) if w in alive), u))
        result.add(v)
        alive.discard(v)
        alive -= g.neighbors(v)
    return result


def _maximalize(g, ind):
    grew = False
    for v in sorted(g.vertices()):
        if v not in ind and not (g.neighbors(v) & ind):
            ind.add(v)
            grew = True
    return grew


def _try_swap(g, ind, removal_size):
    """Find a (t, t+1) improvement: remove t vertices of `ind`, insert t+1
    outside vertices whose ind-neighborhoods lie within the removed set and
    which are pairwise non-adjacent.  Applies the first improvement found
    (deterministic order) and returns True."""
    candidates = {}
    for v in sorted(g.vertices()):
        if v in ind:
            continue
        inbrs = g.neighbors(v) & ind
        if len(inbrs) <= removal_size:
            candidates[v] = frozenset(inbrs)
    if removal_size == 1:
        removal_sets = sorted(frozenset((w,)) for w in ind)
    else:
        ws = sorted({w for s in candidates.values() for w in s})
        removal_sets = [
            frozenset((w1, w2))
            for idx, w1 in enumerate(ws)
            for w2 in ws[idx + 1:]
        ]
    for removed in removal_sets:
        pool = [v for v, s in candidates.items() if s <= removed]
        if len(pool) <= removal_size:
            continue
        picked = []

        def extend(start):
            if len(picked) == removal_size + 1:
                return True
            for idx in range(start, len(pool)):
                v = pool[idx]
                if any(u in g.neighbors(v) for u in picked):
                    continue
                picked.append(v)
                if extend(idx + 1):
                    return True
                picked.pop()
            return False

        if extend(0):
            ind -= removed
            ind.update(picked)
            return True
    return False


def solve_local_search(g, cfg=None):
    """Greedy start followed by (1,2)- and, for swap size 3, (2,3)-swaps."""
    cfg = cfg or SolverConfig()
    deadline = None
    if cfg.time_budget is not None:
        deadline = time.monotonic() + cfg.time_budget
    ind = set(solve_greedy(g, cfg))
    while True:
        if deadline is not None and time.monotonic() > deadline:
            break
        if _maximalize(g, ind):
            continue
        if _try_swap(g, ind, 1):
            _maximalize(g, ind)
            continue
        if cfg.local_search_swap_size >= 3 and _try_swap(g, ind, 2):
            _maximalize(g, ind)
            continue
        break
    return ind


def solve_backend(g, cfg=None):
    """Dispatch on cfg.backend; None picks exact when the graph fits the
    exact vertex limit and local search otherwise.  Returns (set, name)."""
    cfg = cfg or SolverConfig()
    backend = cfg.backend
    if backend is None:
        backend = "exact" if len(g) <= cfg.exact_vertex_limit else "local_search"
    if backend == "exact":
        return solve_exact(g, cfg), "exact"
    if backend == "greedy":
        return solve_greedy(g, cfg), "greedy"
    return solve_local_search(g, cfg), "local_search"

"""Leaf pruning of the square-free graph down to the max-degree-4 kernel.

Degree-0/1 vertices can always be committed to the solution: taking the
vertex and deleting its neighbor never costs optimality.  Reduction runs
one vertex at a time to a fixpoint (rather than collecting all low-degree
vertices in a single pass, which is unsound when two leaves are adjacent),
in least-(i, j) order for reproducibility.
"""

from dataclasses import dataclass

from .errors import ReductionError
from .squares import find_squares


@dataclass(frozen=True)
class PruneRecord:
    chosen: tuple  # vertices committed to the solution, in pick order
    removed_neighbors: tuple  # vertices deleted as neighbors of chosen ones


def prune(g1):
    """Reduce g1 (mutated in place) to its min-degree-2 kernel G2."""
    if find_squares(g1):
        raise ReductionError("prune requires a square-free graph")
    chosen = []
    removed = []
    low = {v for v in g1.vertices() if g1.degree(v) <= 1}
    while low:
        v = min(low)
        low.discard(v)
        if v not in g1 or g1.degree(v) > 1:
            continue
        chosen.append(v)
        neighbors = list(g1.neighbors(v))
        g1.delete_vertex(v)
        for u in neighbors:
            affected = set(g1.neighbors(u))
            g1.delete_vertex(u)
            removed.append(u)
            low.update(w for w in affected if w in g1 and g1.degree(w) <= 1)
    return g1, PruneRecord(tuple(chosen), tuple(removed))

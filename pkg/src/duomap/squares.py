"""Square detection, series contraction, and solution lifting.

A square S(i,i';j,j') arises when one duo content occurs twice in A (at i
and i') and twice in B (at j and j'): the four cross vertices form a 4-cycle
of conflicts.  Maximal runs of consecutive squares are contracted out of the
graph; the contraction is reversible via ContractionRecord, and `lift` adds
back 2p vertices on the diagonal selected by the anchor vertices present in
the downstream solution.
"""

from dataclasses import dataclass

from .errors import LiftError, ReductionError
from .instance import Instance


@dataclass(frozen=True)
class Square:
    i: int
    i_prime: int  # i < i_prime
    j: int
    j_prime: int  # j < j_prime
    content: tuple

    @property
    def members(self):
        return (
            (self.i, self.j),
            (self.i, self.j_prime),
            (self.i_prime, self.j),
            (self.i_prime, self.j_prime),
        )

    @property
    def key(self):
        return (self.i, self.i_prime, self.j, self.j_prime)


@dataclass(frozen=True)
class SquareSeries:
    """A maximal run of p consecutive squares starting at (i,i';j,j')."""

    i: int
    i_prime: int
    j: int
    j_prime: int
    p: int

    def square_keys(self):
        return [
            (self.i + q, self.i_prime + q, self.j + q, self.j_prime + q)
            for q in range(self.p)
        ]

    def main_a_diagonal(self):
        return [(self.i + q, self.j + q) for q in range(self.p)]

    def main_b_diagonal(self):
        return [(self.i_prime + q, self.j_prime + q) for q in range(self.p)]

    def anti_1_diagonal(self):
        return [(self.i_prime + q, self.j + q) for q in range(self.p)]

    def anti_2_diagonal(self):
        return [(self.i + q, self.j_prime + q) for q in range(self.p)]

    def start_anchor_candidates(self):
        i, i2, j, j2 = self.i, self.i_prime, self.j, self.j_prime
        return ((i - 1, j - 1), (i2 - 1, j2 - 1), (i2 - 1, j - 1), (i - 1, j2 - 1))

    def end_anchor_candidates(self):
        i, i2, j, j2 = self.i, self.i_prime, self.j, self.j_prime
        p = self.p
        return ((i + p, j + p), (i2 + p, j2 + p), (i2 + p, j + p), (i + p, j2 + p))


@dataclass(frozen=True)
class ContractionRecord:
    series: SquareSeries
    main_a: tuple  # deleted main diagonal keys on the (i, j) side
    main_b: tuple  # deleted main diagonal keys on the (i', j') side
    anti_1: tuple  # deleted anti diagonal keys on the (i', j) side
    anti_2: tuple  # deleted anti diagonal keys on the (i, j') side
    start_anchors: tuple  # anchor keys present in V just before contraction
    end_anchors: tuple
    anchor_edges: tuple  # edges added between surviving anchors


def find_squares(g):
    """All squares of the current graph, canonicalized with i < i', j < j'.

    Grouping is by letter content: a square needs a content present at two
    A-rows and two B-columns with all four cross vertices alive.
    """
    by_content = {}
    for key in g.vertices():
        by_content.setdefault(g.content(key), []).append(key)
    squares = []
    for content, keys in by_content.items():
        is_ = sorted({k[0] for k in keys})
        js = sorted({k[1] for k in keys})
        if len(is_) != 2 or len(js) != 2:
            continue
        if all((x, y) in g for x in is_ for y in js):
            squares.append(Square(is_[0], is_[1], js[0], js[1], content))
    return sorted(squares, key=lambda s: s.key)


def find_maximal_series(squares):
    """Partition squares into maximal runs under the +1-shift successor."""
    keys = {s.key for s in squares}
    series = []
    for s in sorted(squares, key=lambda s: s.key):
        i, i2, j, j2 = s.key
        if (i - 1, i2 - 1, j - 1, j2 - 1) in keys:
            continue  # not the start of a run
        p = 1
        while (i + p, i2 + p, j + p, j2 + p) in keys:
            p += 1
        series.append(SquareSeries(i, i2, j, j2, p))
    return series


def _square_exists(g, i, i2, j, j2):
    return all((x, y) in g for x in (i, i2) for y in (j, j2))


def _collapse_maps(series, n=None):
    """Position collapse functions (A and B) induced by removing the series'
    two length-p substrings from each string."""
    i, i2, j, j2, p = series.i, series.i_prime, series.j, series.j_prime, series.p

    def collapse(pos, lo, hi):
        if pos < lo:
            return pos
        if pos < hi:
            return pos - p
        return pos - 2 * p

    def amap(pos):
        return collapse(pos, lo=i, hi=i2)

    def bmap(pos):
        return collapse(pos, lo=j, hi=j2)

    return amap, bmap


def _collapsed_conflict(u, v, amap, bmap):
    """Would u and v conflict after position collapse?  Mirrors
    graphs.conflicts_oracle in the shrunken coordinate system."""
    (ui, uj), (vi, vj) = u, v
    ua = {amap(ui): bmap(uj), amap(ui) + 1: bmap(uj) + 1}
    for x, y in ((amap(vi), bmap(vj)), (amap(vi) + 1, bmap(vj) + 1)):
        if x in ua and ua[x] != y:
            return True
    ub = {bmap(uj): amap(ui), bmap(uj) + 1: amap(ui) + 1}
    for y, x in ((bmap(vj), amap(vi)), (bmap(vj) + 1, amap(vi) + 1)):
        if y in ub and ub[y] != x:
            return True
    return False


def contract_series(g, series):
    """Delete the 4p series vertices from g and reconnect the surviving
    anchors exactly as the string-shrinkage graph would connect them.

    Anchor edges are computed definitionally: two surviving anchors become
    adjacent iff their position mappings conflict in collapsed coordinates.
    This subsumes the two pairs named in the contraction argument plus the
    symmetric ones, and is cross-checked against rebuilding the graph from
    the shrunken strings.
    """
    i, i2, j, j2, p = series.i, series.i_prime, series.j, series.j_prime, series.p
    for key in series.square_keys():
        if not _square_exists(g, key[0], key[1], key[2], key[3]):
            raise ReductionError(f"series member square {key} missing from graph")
    if _square_exists(g, i - 1, i2 - 1, j - 1, j2 - 1):
        raise ReductionError("series has a predecessor square; not maximal")
    if _square_exists(g, i + p, i2 + p, j + p, j2 + p):
        raise ReductionError("series has a successor square; not maximal")

    main_a = series.main_a_diagonal()
    main_b = series.main_b_diagonal()
    anti_1 = series.anti_1_diagonal()
    anti_2 = series.anti_2_diagonal()
    start_anchors = tuple(k for k in series.start_anchor_candidates() if k in g)
    end_anchors = tuple(k for k in series.end_anchor_candidates() if k in g)

    for key in main_a + main_b + anti_1 + anti_2:
        g.delete_vertex(key)

    amap, bmap = _collapse_maps(series)
    added = []
    for u in start_anchors:
        for v in end_anchors:
            if v in g.neighbors(u):
                continue
            if _collapsed_conflict(u, v, amap, bmap):
                g.add_edge(u, v)
                added.append((u, v))

    return ContractionRecord(
        series,
        tuple(main_a),
        tuple(main_b),
        tuple(anti_1),
        tuple(anti_2),
        start_anchors,
        end_anchors,
        tuple(added),
    )


def shrink_strings(inst, series):
    """String-shrinkage counterpart of `contract_series`: remove the four
    identical substrings and return the smaller instance plus the position
    maps (old -> new, surviving positions only).  Used as a test oracle for
    the graph contraction."""
    i, i2, j, j2, p = series.i, series.i_prime, series.j, series.j_prime, series.p
    drop_a = set(range(i, i + p)) | set(range(i2, i2 + p))
    drop_b = set(range(j, j + p)) | set(range(j2, j2 + p))
    new_a = [inst.a[pos - 1] for pos in range(1, inst.n + 1) if pos not in drop_a]
    new_b = [inst.b[pos - 1] for pos in range(1, inst.n + 1) if pos not in drop_b]
    amap_fn, bmap_fn = _collapse_maps(series)
    amap = {pos: amap_fn(pos) for pos in range(1, inst.n + 1) if pos not in drop_a}
    bmap = {pos: bmap_fn(pos) for pos in range(1, inst.n + 1) if pos not in drop_b}
    return Instance(tuple(new_a), tuple(new_b), inst.k), (amap, bmap)


def eliminate_squares(g):
    """Contract maximal series (ascending base index, re-detecting after each
    contraction) until the graph is square-free.  Mutates g; returns it with
    the ordered contraction records."""
    records = []
    while True:
        squares = find_squares(g)
        if not squares:
            break
        series = find_maximal_series(squares)[0]
        records.append(contract_series(g, series))
    return g, records


_MAIN, _ANTI = "main", "anti"


def lift(solution, record):
    """Re-add 2p series vertices to a solution of the contracted graph.

    The diagonal is selected by which anchors the solution contains; the
    anchor edges make the two trigger families mutually exclusive, so seeing
    both signals a contraction bug.
    """
    s = record.series
    i, i2, j, j2, p = s.i, s.i_prime, s.j, s.j_prime, s.p
    main_triggers = {(i - 1, j - 1), (i2 - 1, j2 - 1), (i + p, j + p), (i2 + p, j2 + p)}
    anti_triggers = {(i2 - 1, j - 1), (i - 1, j2 - 1), (i2 + p, j + p), (i + p, j2 + p)}
    sol = set(solution)
    hit_main = sol & main_triggers
    hit_anti = sol & anti_triggers
    if hit_main and hit_anti:
        raise LiftError(
            f"both diagonal triggers present for series {s}: "
            f"main {sorted(hit_main)}, anti {sorted(hit_anti)}"
        )
    if hit_anti:
        added = record.anti_1 + record.anti_2
    else:
        added = record.main_a + record.main_b  # default branch
    return sol | set(added)

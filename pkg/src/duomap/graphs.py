"""Bipartite position graph H and the conflict graph G of duo-vertices.

A duo-vertex (i, j) states that the duo at A-position i is mapped onto the
duo at B-position j, i.e. positions i -> j and i+1 -> j+1.  Two vertices
conflict when those partial mappings disagree on some position; independent
sets of the conflict graph are exactly the sets of simultaneously
preservable duos.
"""

from collections import defaultdict
from dataclasses import dataclass, field


@dataclass(frozen=True)
class BipartiteGraph:
    """Same-letter position pairs e_{i,j} (a_i == b_j), 1-based."""

    edges: frozenset  # of (i, j)
    by_a: dict  # i -> sorted tuple of j
    by_b: dict  # j -> sorted tuple of i


def build_bipartite(inst):
    by_letter_b = defaultdict(list)
    for j in range(1, inst.n + 1):
        by_letter_b[inst.letter_b(j)].append(j)
    edges = set()
    by_a = defaultdict(list)
    by_b = defaultdict(list)
    for i in range(1, inst.n + 1):
        for j in by_letter_b.get(inst.letter_a(i), ()):
            edges.add((i, j))
            by_a[i].append(j)
            by_b[j].append(i)
    return BipartiteGraph(
        frozenset(edges),
        {i: tuple(sorted(js)) for i, js in by_a.items()},
        {j: tuple(sorted(is_)) for j, is_ in by_b.items()},
    )


class ConflictGraph:
    """Mutable conflict graph keyed by permanent (i, j) vertex labels.

    Reductions delete vertices and insert edges but never relabel, so keys
    remain valid identifiers of the original duo-pairs throughout.
    """

    def __init__(self):
        self._content = {}  # (i, j) -> (letter, letter)
        self._adj = {}  # (i, j) -> set of (i, j)
        self._by_i = defaultdict(set)  # i -> set of j
        self._by_j = defaultdict(set)  # j -> set of i

    def add_vertex(self, key, content):
        if key in self._content:
            raise ValueError(f"duplicate vertex {key}")
        self._content[key] = content
        self._adj[key] = set()
        self._by_i[key[0]].add(key[1])
        self._by_j[key[1]].add(key[0])

    def add_edge(self, u, v):
        if u == v:
            raise ValueError("self loop")
        self._adj[u].add(v)
        self._adj[v].add(u)

    def delete_vertex(self, key):
        for u in self._adj.pop(key):
            self._adj[u].discard(key)
        del self._content[key]
        i, j = key
        self._by_i[i].discard(j)
        if not self._by_i[i]:
            del self._by_i[i]
        self._by_j[j].discard(i)
        if not self._by_j[j]:
            del self._by_j[j]

    def __contains__(self, key):
        return key in self._content

    def __len__(self):
        return len(self._content)

    def vertices(self):
        return self._content.keys()

    def content(self, key):
        return self._content[key]

    def neighbors(self, key):
        return self._adj[key]

    def degree(self, key):
        return len(self._adj[key])

    def max_degree(self):
        return max((len(s) for s in self._adj.values()), default=0)

    def min_degree(self):
        return min((len(s) for s in self._adj.values()), default=0)

    def edge_count(self):
        return sum(len(s) for s in self._adj.values()) // 2

    def edges(self):
        return {frozenset((u, v)) for u, s in self._adj.items() for v in s}

    def js_for_i(self, i):
        return self._by_i.get(i, frozenset())

    def is_for_j(self, j):
        return self._by_j.get(j, frozenset())

    def copy(self):
        g = ConflictGraph()
        g._content = dict(self._content)
        g._adj = {k: set(s) for k, s in self._adj.items()}
        g._by_i = defaultdict(set, {i: set(s) for i, s in self._by_i.items()})
        g._by_j = defaultdict(set, {j: set(s) for j, s in self._by_j.items()})
        return g


def build_conflict_graph(inst):
    """Build G with all duo-vertices and conflict edges from the closed-form
    neighbor rule (three shifted column slots plus three shifted row slots)."""
    g = ConflictGraph()
    b_duo_positions = defaultdict(list)
    for j in range(1, inst.n):
        b_duo_positions[(inst.letter_b(j), inst.letter_b(j + 1))].append(j)
    for i in range(1, inst.n):
        content = (inst.letter_a(i), inst.letter_a(i + 1))
        for j in b_duo_positions.get(content, ()):
            g.add_vertex((i, j), content)
    for key in list(g.vertices()):
        for other in neighbors_closed_form(g, key):
            g.add_edge(key, other)
    return g


def neighbors_closed_form(g, key):
    """Neighbors of `key` by the closed-form rule: vertices in B-columns
    j-1, j, j+1 with mismatched A-index, and in A-rows i-1, i, i+1 with
    mismatched B-index.  Valid for freshly built graphs (reductions may
    change adjacency away from this formula)."""
    if key not in g:
        raise KeyError(f"vertex {key} not in graph")
    i, j = key
    out = set()
    for p in (-1, 0, 1):
        for i2 in g.is_for_j(j + p):
            if i2 != i + p:
                out.add((i2, j + p))
        for j2 in g.js_for_i(i + p):
            if j2 != j + p:
                out.add((i + p, j2))
    return out


def conflicts_oracle(u, v):
    """Definitional conflict test: do the two partial position mappings
    disagree on some A-position or some B-position?"""
    if u == v:
        raise ValueError("conflict test needs two distinct vertices")
    (i, j), (h, l) = u, v
    a_map = {i: j, i + 1: j + 1}
    for x, y in ((h, l), (h + 1, l + 1)):
        if x in a_map and a_map[x] != y:
            return True
    b_map = {j: i, j + 1: i + 1}
    for y, x in ((l, h), (l + 1, h + 1)):
        if y in b_map and b_map[y] != x:
            return True
    return False


def is_independent(keys):
    """Pairwise oracle-independence of a set of duo-vertex keys."""
    ks = sorted(keys)
    for idx, u in enumerate(ks):
        for v in ks[idx + 1:]:
            if conflicts_oracle(u, v):
                return False
    return True

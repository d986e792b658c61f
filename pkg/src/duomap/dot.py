"""DOT (Graphviz) export of the bipartite graph and conflict-graph stages."""

from .graphs import build_bipartite, build_conflict_graph
from .pruning import prune
from .squares import eliminate_squares, find_squares


def _esc(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


def bipartite_dot(inst):
    """H with A-row / B-row layout."""
    h = build_bipartite(inst)
    lines = ["graph H {", "  rankdir=TB;"]
    lines.append(
        "  { rank=same; "
        + " ".join(f'a{i} [label="{_esc(inst.letter_a(i))}:{i}"];' for i in range(1, inst.n + 1))
        + " }"
    )
    lines.append(
        "  { rank=same; "
        + " ".join(f'b{j} [label="{_esc(inst.letter_b(j))}:{j}"];' for j in range(1, inst.n + 1))
        + " }"
    )
    for i, j in sorted(h.edges):
        lines.append(f"  a{i} -- b{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def conflict_dot(g):
    """G with vertices labeled v(i,j):content; square members clustered."""
    lines = ["graph G {"]
    clustered = set()
    for idx, sq in enumerate(find_squares(g)):
        lines.append(f"  subgraph cluster_{idx} {{")
        lines.append(f'    label="S({sq.i},{sq.i_prime};{sq.j},{sq.j_prime})";')
        for (i, j) in sorted(sq.members):
            content = "".join(g.content((i, j)))
            lines.append(f'    v{i}_{j} [label="v({i},{j}):{_esc(content)}"];')
            clustered.add((i, j))
        lines.append("  }")
    for (i, j) in sorted(g.vertices()):
        if (i, j) not in clustered:
            content = "".join(g.content((i, j)))
            lines.append(f'  v{i}_{j} [label="v({i},{j}):{_esc(content)}"];')
    for e in sorted(tuple(sorted(e)) for e in g.edges()):
        (i, j), (h, l) = e
        lines.append(f"  v{i}_{j} -- v{h}_{l};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(inst, stage):
    """Render one pipeline stage ('H', 'G', 'G1', 'G2') as DOT text."""
    if stage == "H":
        return bipartite_dot(inst)
    g = build_conflict_graph(inst)
    if stage == "G":
        return conflict_dot(g)
    g1, _ = eliminate_squares(g)
    if stage == "G1":
        return conflict_dot(g1)
    if stage == "G2":
        g2, _ = prune(g1)
        return conflict_dot(g2)
    raise ValueError(f"unknown stage {stage!r}")

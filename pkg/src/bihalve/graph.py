"""Graph pairing the adjacencies of a duplicated genome.

Vertices are the adjacencies.  For every marker there are exactly two edges:
one joining the two adjacencies holding its copies in left position, one for
the right position.  Every vertex has degree one (telomeric) or two, so the
graph splits into cycles and paths, and the component counts give both
halving distances in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .genome import (
    Adjacency,
    Genome,
    MarkerOccurrence,
    adjacencies,
    validate_duplicated,
)


@dataclass(frozen=True)
class GraphComponent:
    kind: str  # "cycle" or "path"
    edges: int
    vertices: tuple[int, ...]  # indices into the adjacency list, sorted

    def is_even(self) -> bool:
        return self.edges % 2 == 0


@dataclass(frozen=True)
class AdjacencyGraph:
    genome: Genome
    vertices: tuple[Adjacency, ...]
    edges: tuple[tuple[int, int, int, str], ...]  # (u, v, marker id, side)
    components: tuple[GraphComponent, ...]
    n: int  # distinct marker count

    @property
    def cycles(self) -> int:
        return sum(1 for c in self.components if c.kind == "cycle")

    @property
    def even_cycles(self) -> int:
        return sum(1 for c in self.components if c.kind == "cycle" and c.is_even())

    @property
    def paths(self) -> int:
        return sum(1 for c in self.components if c.kind == "path")

    @property
    def odd_paths(self) -> int:
        return sum(1 for c in self.components if c.kind == "path" and not c.is_even())


def build_adjacency_graph(g: Genome) -> AdjacencyGraph:
    """Build the graph and its cycle/path decomposition.

    For a valid duplicated genome on n markers the edge count is always 2n.
    For single-linear genomes the decomposition is additionally checked to
    contain only even cycles plus exactly one even path.
    """
    validate_duplicated(g)
    adjs = adjacencies(g)

    left_at: dict[MarkerOccurrence, int] = {}
    right_at: dict[MarkerOccurrence, int] = {}
    for vi, a in enumerate(adjs):
        if a.left is not None:
            left_at[a.left] = vi
        if a.right is not None:
            right_at[a.right] = vi

    ids = sorted({o.id for o in g.occurrences()})
    edges: list[tuple[int, int, int, str]] = []
    for mid in ids:
        o0 = MarkerOccurrence(mid, 0)
        o1 = MarkerOccurrence(mid, 1)
        edges.append((left_at[o0], left_at[o1], mid, "L"))
        edges.append((right_at[o0], right_at[o1], mid, "R"))

    parent = list(range(len(adjs)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _, _ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv

    members: dict[int, list[int]] = {}
    for vi in range(len(adjs)):
        members.setdefault(find(vi), []).append(vi)
    edge_count: dict[int, int] = {}
    for u, _, _, _ in edges:
        r = find(u)
        edge_count[r] = edge_count.get(r, 0) + 1

    comps = []
    for root, verts in members.items():
        e = edge_count.get(root, 0)
        k = len(verts)
        if e == k:
            kind = "cycle"
        elif e == k - 1:
            kind = "path"
        else:
            raise AssertionError("component is neither a cycle nor a path")
        comps.append(GraphComponent(kind, e, tuple(sorted(verts))))
    # paths first, then cycles, shortest first; stable on first vertex
    comps.sort(key=lambda c: (c.kind != "path", c.edges, c.vertices))

    graph = AdjacencyGraph(g, tuple(adjs), tuple(edges), tuple(comps), len(ids))
    assert len(graph.edges) == 2 * graph.n

    single_linear = len(g.chromosomes) == 1 and g.chromosomes[0].is_linear()
    if single_linear:
        assert all(
            c.is_even() for c in graph.components if c.kind == "cycle"
        ), "odd cycle in a single-linear duplicated genome"
        paths = [c for c in graph.components if c.kind == "path"]
        assert len(paths) == 1 and paths[0].is_even(), (
            "single-linear duplicated genome must decompose into one even path"
        )
    return graph


@dataclass(frozen=True)
class HalvingSummary:
    """Component counts and the two halving distances they determine."""

    n: int
    cycles: int
    even_cycles: int
    odd_paths: int
    dcj_halving: int
    bi_halving: int | None  # defined for single-linear genomes only

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "cycles": self.cycles,
            "even_cycles": self.even_cycles,
            "odd_paths": self.odd_paths,
            "d_dcj": self.dcj_halving,
            "d_bi": self.bi_halving,
        }


def halving_summary(g: Genome) -> HalvingSummary:
    """Distances from the component counts.

    The distance to a perfectly duplicated genome is n - EC - floor(OP / 2);
    for a single linear chromosome this simplifies to n - C, and the
    block-interchange distance to a tandem duplication is floor((n - C) / 2).
    """
    graph = build_adjacency_graph(g)
    n, c = graph.n, graph.cycles
    dcj = n - graph.even_cycles - graph.odd_paths // 2
    single_linear = len(g.chromosomes) == 1 and g.chromosomes[0].is_linear()
    bi = (n - c) // 2 if single_linear else None
    return HalvingSummary(n, c, graph.even_cycles, graph.odd_paths, dcj, bi)


def components_text(graph: AdjacencyGraph) -> str:
    """One-line decomposition summary, e.g. ``path(2) cycle(2) cycle(4)``."""
    return " ".join(f"{c.kind}({c.edges})" for c in graph.components)


def export_dot(graph: AdjacencyGraph) -> str:
    """Render the graph as DOT text; vertex and edge order is deterministic."""
    lines = ["graph adjacency_graph {"]
    lines.append(
        f"  // {graph.n} markers, {len(graph.vertices)} adjacencies, "
        f"{len(graph.edges)} edges"
    )
    lines.append(f"  // components: {components_text(graph)}")
    for vi, adj in enumerate(graph.vertices):
        lines.append(f'  v{vi} [label="{adj.label()}"];')
    for u, v, mid, side in graph.edges:
        lines.append(f'  v{u} -- v{v} [label="{mid}{side}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

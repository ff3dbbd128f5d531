"""Multigraphs, apex-weighted graphs, and the transformations the counters need.

Vertices are dense integer ids ``0..n-1``; edge identity is list position, so
every transformation also reports a mapping from surviving new edge indices to
source edge indices.  Self-loops are banned at construction and silently
dropped by contraction (a loop can never belong to a forest).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

X_LABEL = "x"
Z_LABEL = "z"


class GraphFormatError(ValueError):
    """Raised when a graph text document cannot be parsed."""


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph: a vertex count plus an indexed list of edges.

    Parallel edges are allowed and distinguished by index.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop ({u},{v}) not allowed")
            norm.append((u, v) if u < v else (v, u))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def multiplicities(self) -> dict[tuple[int, int], int]:
        """Collapse parallel edges into a multiplicity per vertex pair."""
        out: dict[tuple[int, int], int] = {}
        for e in self.edges:
            out[e] = out.get(e, 0) + 1
        return out

    def incident(self, v: int) -> list[int]:
        """Indices of edges touching vertex v."""
        return [i for i, (a, b) in enumerate(self.edges) if v in (a, b)]

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        uf = _UnionFind(self.n)
        for u, v in self.edges:
            uf.union(u, v)
        root = uf.find(0)
        return all(uf.find(v) == root for v in range(self.n))


@dataclass(frozen=True)
class ApexWeightedGraph:
    """A multigraph with a designated apex whose edges carry weight z.

    The apex must be adjacent to every other vertex.  ``z`` may be left unset
    (``None``) when the graph is built once and queried at several weights;
    per-query weight bounds are enforced by the counters.
    """

    graph: Multigraph
    apex: int
    z: int | None = None

    def __post_init__(self):
        g, a = self.graph, self.apex
        if not (0 <= a < g.n):
            raise ValueError("apex id out of range")
        neighbors = set()
        for u, v in g.edges:
            if u == a:
                neighbors.add(v)
            elif v == a:
                neighbors.add(u)
        if neighbors != set(range(g.n)) - {a}:
            raise ValueError("apex must be adjacent to every other vertex")
        if self.z is not None and self.z < 0:
            raise ValueError("apex weight must be non-negative")

    @property
    def apex_edges(self) -> tuple[int, ...]:
        """Indices of the apex-incident edges."""
        a = self.apex
        return tuple(i for i, (u, v) in enumerate(self.graph.edges) if a in (u, v))

    def with_z(self, z: int) -> "ApexWeightedGraph":
        return replace(self, z=z)

    def without_apex(self) -> tuple[Multigraph, tuple[int, ...]]:
        """The graph with the apex deleted, plus the edge index mapping."""
        return delete_vertex(self.graph, self.apex)


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the two classes; False if a and b were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def add_apex(g: Multigraph) -> ApexWeightedGraph:
    """Add a new vertex adjacent to all existing ones; weight left unset."""
    a = g.n
    edges = list(g.edges) + [(v, a) for v in range(g.n)]
    return ApexWeightedGraph(Multigraph(g.n + 1, edges), apex=a)


def build_G_xz(g: Multigraph, x: int, z: int) -> ApexWeightedGraph:
    """Add x isolated vertices, then an apex with edge weight z."""
    if x < 0:
        raise ValueError("x must be non-negative")
    padded = Multigraph(g.n + x, g.edges)
    return add_apex(padded).with_z(z)


def build_G_pow_z(g: ApexWeightedGraph) -> tuple[Multigraph, tuple[int, ...]]:
    """Replace the weighted apex by z unweighted apices a_1..a_z plus a hub a.

    Each a_i is adjacent to every vertex of the apexless base; the hub a is
    adjacent exactly to a_1..a_z.  Returns the graph and the z hub edge
    indices {a, a_i}.
    """
    z = g.z
    if z is None or z < 1:
        raise ValueError("z must be >= 1 (use the apex-deletion branch for z = 0)")
    base, _ = g.without_apex()
    nb = base.n
    hub = nb + z
    edges = list(base.edges)
    for i in range(z):
        edges.extend((v, nb + i) for v in range(nb))
    first_hub = len(edges)
    edges.extend((nb + i, hub) for i in range(z))
    out = Multigraph(nb + z + 1, edges)
    return out, tuple(range(first_hub, first_hub + z))


def thicken(
    g: Multigraph, labels: Sequence[str], a: int, b: int
) -> tuple[Multigraph, tuple[int, ...]]:
    """Replace each x-labeled edge by a parallel copies and each z-labeled one by b.

    Returns the thickened graph and the mapping new index -> source index.
    """
    if a < 1 or b < 1:
        raise ValueError("thickening factors must be >= 1")
    if len(labels) != g.m:
        raise ValueError("one label per edge required")
    edges: list[tuple[int, int]] = []
    mapping: list[int] = []
    for i, (e, lab) in enumerate(zip(g.edges, labels)):
        lab = lab.lower()
        if lab == X_LABEL:
            copies = a
        elif lab == Z_LABEL:
            copies = b
        else:
            raise ValueError(f"unknown edge label {lab!r}")
        edges.extend([e] * copies)
        mapping.extend([i] * copies)
    return Multigraph(g.n, edges), tuple(mapping)


def delete_edges(g: Multigraph, s: Iterable[int]) -> tuple[Multigraph, tuple[int, ...]]:
    """Remove the edges with the given indices; vertex set unchanged."""
    drop = set(s)
    for i in drop:
        if not (0 <= i < g.m):
            raise IndexError(f"edge index {i} out of range")
    keep = [(e, i) for i, e in enumerate(g.edges) if i not in drop]
    return Multigraph(g.n, [e for e, _ in keep]), tuple(i for _, i in keep)


def delete_vertex(g: Multigraph, v: int) -> tuple[Multigraph, tuple[int, ...]]:
    """Remove vertex v and its incident edges; higher ids shift down by one."""
    if not (0 <= v < g.n):
        raise IndexError(f"vertex {v} out of range")
    edges = []
    mapping = []
    for i, (a, b) in enumerate(g.edges):
        if v in (a, b):
            continue
        edges.append((a - (a > v), b - (b > v)))
        mapping.append(i)
    return Multigraph(g.n - 1, edges), tuple(mapping)


def contract_edge(g: Multigraph, e: int) -> tuple[Multigraph, tuple[int, ...]]:
    """Merge the endpoints of edge e; parallel edges kept, new loops dropped."""
    if not (0 <= e < g.m):
        raise IndexError(f"edge index {e} out of range")
    u, v = g.edges[e]  # u < v; v is removed, merged into u
    edges = []
    mapping = []
    for i, (a, b) in enumerate(g.edges):
        if i == e:
            continue
        a2 = u if a == v else a
        b2 = u if b == v else b
        if a2 == b2:
            continue  # became a loop
        edges.append((a2 - (a2 > v), b2 - (b2 > v)))
        mapping.append(i)
    return Multigraph(g.n - 1, edges), tuple(mapping)


def subset_is_acyclic(g: Multigraph, s: Iterable[int]) -> bool:
    """Union-find verdict: do the edges with the given indices form a forest?"""
    uf = _UnionFind(g.n)
    for i in s:
        u, v = g.edges[i]
        if not uf.union(u, v):
            return False
    return True


def subset_is_tree(g: Multigraph, s: Iterable[int]) -> bool:
    """True iff the edges form one connected acyclic subgraph.

    A tree on k edges touches exactly k+1 vertices; k = 0 is rejected because
    single-vertex trees never arise here.
    """
    idx = list(s)
    if not idx:
        raise ValueError("subset_is_tree requires at least one edge")
    uf = _UnionFind(g.n)
    touched = set()
    for i in idx:
        u, v = g.edges[i]
        touched.update((u, v))
        if not uf.union(u, v):
            return False
    return len(touched) == len(idx) + 1


# --- graph text format -----------------------------------------------------
#
# line 1: "graph <n>"; then zero or more "edge <u> <v>" lines (repetition
# encodes multiplicity); optional final "apex <v> weight <z>".  "#" starts a
# comment.


def parse_graph(text: str) -> Multigraph | ApexWeightedGraph:
    n = None
    edges: list[tuple[int, int]] = []
    apex: tuple[int, int] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "graph":
                if n is not None:
                    raise GraphFormatError(f"line {lineno}: duplicate graph header")
                n = int(parts[1])
                if len(parts) != 2:
                    raise GraphFormatError(f"line {lineno}: malformed graph header")
            elif parts[0] == "edge":
                if n is None:
                    raise GraphFormatError(f"line {lineno}: edge before graph header")
                if len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: malformed edge line")
                edges.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "apex":
                if len(parts) != 4 or parts[2] != "weight":
                    raise GraphFormatError(f"line {lineno}: malformed apex line")
                apex = (int(parts[1]), int(parts[3]))
            else:
                raise GraphFormatError(f"line {lineno}: unknown directive {parts[0]!r}")
        except (ValueError, IndexError) as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise GraphFormatError("missing 'graph <n>' header")
    try:
        g = Multigraph(n, edges)
        if apex is not None:
            return ApexWeightedGraph(g, apex=apex[0], z=apex[1])
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc
    return g


def format_graph(g: Multigraph | ApexWeightedGraph) -> str:
    if isinstance(g, ApexWeightedGraph):
        lines = [f"graph {g.graph.n}"]
        lines += [f"edge {u} {v}" for u, v in g.graph.edges]
        z = 1 if g.z is None else g.z
        lines.append(f"apex {g.apex} weight {z}")
    else:
        lines = [f"graph {g.n}"]
        lines += [f"edge {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"

"""Ground-truth exact counting oracles: matchings, trees, forests, weighted
apex trees, and forest polynomials.

Everything is exact integer arithmetic.  Small instances go through
brute-force subset enumeration; larger multigraphs (e.g. thickened graphs)
use either deletion-contraction on parallel-edge classes or a matrix-tree
dynamic program over vertex subsets.  The strategies cross-check each other
in the verification suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import CapExceededError
from .graphs import ApexWeightedGraph, Multigraph, _UnionFind
from .intpoly import IntPoly

#: Edge count below which the default forest-polynomial strategy enumerates.
ENUM_EDGE_THRESHOLD = 20
#: Subset-count threshold for switching tree counters to the Kirchhoff route.
ENUM_SUBSET_THRESHOLD = 2_000
#: Vertex-count cap for the matrix-tree dynamic program (3^n states).
MATRIX_TREE_VERTEX_CAP = 18


def count_k_matchings(g: Multigraph, k: int) -> int:
    """Number of k-edge subsets that are pairwise vertex-disjoint."""
    if k < 0:
        raise ValueError("k must be non-negative")
    edges = g.edges
    m = len(edges)
    bits = [(1 << u) | (1 << v) for u, v in edges]

    def rec(start: int, used: int, depth: int) -> int:
        if depth == k:
            return 1
        total = 0
        # need k - depth more edges from start..m-1
        for j in range(start, m - (k - depth) + 1):
            if used & bits[j]:
                continue
            total += rec(j + 1, used | bits[j], depth + 1)
        return total

    return rec(0, 0, 0)


# --- weighted matrix-tree machinery -----------------------------------------


def _bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free exact determinant of an integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            piv = next((r for r in range(i + 1, n) if m[r][i] != 0), None)
            if piv is None:
                return 0
            m[i], m[piv] = m[piv], m[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[n - 1][n - 1]


def _weight_matrix(g: Multigraph, edge_weights=None) -> list[list[int]]:
    """Symmetric vertex-pair weight totals (multiplicities times weights)."""
    w = [[0] * g.n for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        wt = 1 if edge_weights is None else edge_weights[i]
        w[u][v] += wt
        w[v][u] += wt
    return w


def _tree_sum_on(verts: tuple[int, ...], w: list[list[int]]) -> int:
    """Weighted spanning-tree sum of the induced subgraph on verts (Kirchhoff)."""
    s = len(verts)
    if s == 1:
        return 1
    lap = [[0] * (s - 1) for _ in range(s - 1)]
    for a in range(s):
        for b in range(a + 1, s):
            wt = w[verts[a]][verts[b]]
            if wt == 0:
                continue
            if a < s - 1:
                lap[a][a] += wt
            if b < s - 1:
                lap[b][b] += wt
            if a < s - 1 and b < s - 1:
                lap[a][b] -= wt
                lap[b][a] -= wt
    return _bareiss_det(lap)


def _tree_subset_sum(g: Multigraph, k: int, w: list[list[int]]) -> int:
    """Sum of weighted spanning-tree counts over all (k+1)-vertex subsets."""
    if k + 1 > g.n:
        return 0
    total = 0
    for verts in combinations(range(g.n), k + 1):
        total += _tree_sum_on(verts, w)
    return total


# --- tree counters -----------------------------------------------------------


def count_k_trees(g: Multigraph, k: int, strategy: str = "auto") -> int:
    """Number of k-edge subsets forming a connected acyclic subgraph.

    k = 0 is rejected: trees are identified with nonempty edge sets here.
    """
    if k < 1:
        raise ValueError("count_k_trees requires k >= 1")
    if strategy == "auto":
        strategy = (
            "enumerate" if math.comb(g.m, k) <= ENUM_SUBSET_THRESHOLD else "kirchhoff"
        )
    if strategy == "enumerate":
        from .graphs import subset_is_tree

        return sum(1 for s in combinations(range(g.m), k) if subset_is_tree(g, s))
    if strategy == "kirchhoff":
        return _tree_subset_sum(g, k, _weight_matrix(g))
    raise ValueError(f"unknown strategy {strategy!r}")


def weighted_tree_sum(
    g: ApexWeightedGraph, k: int, z: int, strategy: str = "auto"
) -> int:
    """Sum over k-edge trees t of z^(number of apex edges in t).

    Trees avoiding the apex contribute z^0 = 1.  The weight is capped by the
    tree size: z <= k is required.
    """
    if k < 1:
        raise ValueError("weighted_tree_sum requires k >= 1")
    if z < 0 or z > k:
        raise ValueError("apex weight must satisfy 0 <= z <= k")
    mg = g.graph
    apex = g.apex
    weights = [z if apex in e else 1 for e in mg.edges]
    if strategy == "auto":
        strategy = (
            "enumerate" if math.comb(mg.m, k) <= ENUM_SUBSET_THRESHOLD else "kirchhoff"
        )
    if strategy == "enumerate":
        from .graphs import subset_is_tree

        total = 0
        for s in combinations(range(mg.m), k):
            if subset_is_tree(mg, s):
                prod = 1
                for i in s:
                    prod *= weights[i]
                total += prod
        return total
    if strategy == "kirchhoff":
        return _tree_subset_sum(mg, k, _weight_matrix(mg, weights))
    raise ValueError(f"unknown strategy {strategy!r}")


# --- forest polynomial --------------------------------------------------------


def _forest_poly_enum(g: Multigraph, cap: int) -> IntPoly:
    """Enumerate forests directly (edges taken in increasing index order)."""
    edges = g.edges
    m = len(edges)
    counts = [0] * (cap + 1)

    def rec(start: int, parent: list[int], depth: int) -> None:
        counts[depth] += 1
        if depth == cap:
            return
        for j in range(start, m):
            u, v = edges[j]
            ru, rv = u, v
            while parent[ru] != ru:
                ru = parent[ru]
            while parent[rv] != rv:
                rv = parent[rv]
            if ru == rv:
                continue
            p2 = parent[:]
            p2[ru] = rv
            rec(j + 1, p2, depth + 1)

    rec(0, list(range(g.n)), 0)
    return IntPoly(counts)


def _forest_poly_delcon(g: Multigraph, cap: int) -> IntPoly:
    """Deletion-contraction on parallel-edge classes:
    F(G) = F(G - e) + mult(e) * x * F(G / e), loops dropped by contraction."""

    def rec(mults: dict[tuple[int, int], int], cap: int) -> list[int]:
        if not mults or cap == 0:
            return [1]
        (u, v), mu = next(iter(mults.items()))
        rest = dict(mults)
        del rest[(u, v)]
        out = rec(rest, cap)
        # contract v into u
        merged: dict[tuple[int, int], int] = {}
        for (a, b), t in rest.items():
            a2 = u if a == v else a
            b2 = u if b == v else b
            if a2 == b2:
                continue
            key = (a2, b2) if a2 < b2 else (b2, a2)
            merged[key] = merged.get(key, 0) + t
        sub = rec(merged, cap - 1)
        out = out + [0] * (len(sub) + 1 - len(out))
        for i, c in enumerate(sub):
            out[i + 1] += mu * c
        return out

    return IntPoly(rec(g.multiplicities(), cap))


def _forest_poly_matrix_tree(g: Multigraph, cap: int) -> IntPoly:
    """Dynamic program over vertex subsets.

    f(S) enumerates forests whose edges stay inside S with every vertex of S
    accounted for (singletons allowed); the component containing the lowest
    vertex of S is a spanning tree of some T with that vertex, counted by the
    weighted matrix-tree theorem.
    """
    n = g.n
    if n > MATRIX_TREE_VERTEX_CAP:
        raise CapExceededError(f"matrix-tree DP capped at {MATRIX_TREE_VERTEX_CAP} vertices")
    w = _weight_matrix(g)
    members = {}
    tree_sum = {}
    for mask in range(1, 1 << n):
        verts = tuple(i for i in range(n) if mask >> i & 1)
        members[mask] = verts
        tree_sum[mask] = _tree_sum_on(verts, w)
    f: dict[int, IntPoly] = {0: IntPoly((1,))}

    def compute(mask: int) -> IntPoly:
        if mask in f:
            return f[mask]
        low = mask & -mask
        acc = IntPoly()
        # T ranges over subsets of mask containing the lowest vertex
        rest = mask ^ low
        sub = rest
        while True:
            t_mask = sub | low
            ts = tree_sum[t_mask]
            if ts:
                size = len(members[t_mask]) - 1
                if size <= cap:
                    tail = compute(mask ^ t_mask)
                    acc = acc + tail.shift_up(size).scale(ts).truncated(cap)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        f[mask] = acc
        return acc

    return compute((1 << n) - 1)


def forest_polynomial(
    g: Multigraph, max_degree: int | None = None, strategy: str = "auto"
) -> IntPoly:
    """Generating polynomial of acyclic edge subsets; coefficient of x^i is the
    number of i-forests.  Coefficients above max_degree are truncated away."""
    bound = max(g.n - 1, 0)
    cap = bound if max_degree is None else min(max_degree, bound)
    if cap < 0:
        return IntPoly()
    if strategy == "auto":
        strategy = "enumerate" if g.m <= ENUM_EDGE_THRESHOLD else "matrix_tree"
    if strategy == "enumerate":
        return _forest_poly_enum(g, cap)
    if strategy == "delcon":
        return _forest_poly_delcon(g, cap)
    if strategy == "matrix_tree":
        return _forest_poly_matrix_tree(g, cap)
    raise ValueError(f"unknown strategy {strategy!r}")


def count_k_forests(g: Multigraph, k: int, strategy: str = "auto") -> int:
    """Number of acyclic k-edge subsets (k = 0 counts the empty forest)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return forest_polynomial(g, max_degree=k, strategy=strategy).coeff(k)


# --- bivariate apex coefficients ---------------------------------------------


def _iter_forests(g: Multigraph, max_size: int):
    """Yield (edge index tuple, component-size multiset) for every forest of g
    with at most max_size edges, singleton components included."""
    edges = g.edges
    m = len(edges)
    n = g.n
    chosen: list[int] = []

    def comp_sizes() -> list[int]:
        uf = _UnionFind(n)
        for i in chosen:
            uf.union(*edges[i])
        sizes: dict[int, int] = {}
        for v in range(n):
            r = uf.find(v)
            sizes[r] = sizes.get(r, 0) + 1
        return list(sizes.values())

    def rec(start: int, parent: list[int]):
        yield tuple(chosen), comp_sizes()
        if len(chosen) == max_size:
            return
        for j in range(start, m):
            u, v = edges[j]
            ru, rv = u, v
            while parent[ru] != ru:
                ru = parent[ru]
            while parent[rv] != rv:
                rv = parent[rv]
            if ru == rv:
                continue
            p2 = parent[:]
            p2[ru] = rv
            chosen.append(j)
            yield from rec(j + 1, p2)
            chosen.pop()

    yield from rec(0, list(range(n)))


def _star_poly(sizes: list[int], max_degree: int) -> IntPoly:
    """Product over components T of (1 + |T| z), truncated."""
    acc = IntPoly((1,))
    for s in sizes:
        acc = acc.mul(IntPoly((1, s)), max_degree=max_degree)
    return acc


@dataclass(frozen=True)
class BivarApexCoeffs:
    """Coefficients c[i, j] = number of forests of the apexed graph with i base
    edges and j apex edges, for i + j <= cap."""

    table: dict[tuple[int, int], int]
    cap: int

    def coeff(self, i: int, j: int) -> int:
        return self.table.get((i, j), 0)

    def row_poly(self, i: int) -> IntPoly:
        degs = [j for (a, j) in self.table if a == i]
        top = max(degs, default=-1)
        return IntPoly(self.coeff(i, j) for j in range(top + 1))


def bivariate_apex_coeffs(g: Multigraph, cap: int | None = None) -> BivarApexCoeffs:
    """Expand F(apexed g; x, z) = sum over forests A of x^|A| * prod (1+|T|z),
    the product running over all components of (V, A) including singletons."""
    if cap is None:
        cap = g.n
    table: dict[tuple[int, int], int] = {}
    for edges_chosen, sizes in _iter_forests(g, min(cap, max(g.n - 1, 0))):
        i = len(edges_chosen)
        star = _star_poly(sizes, cap - i)
        for j, c in enumerate(star.coeffs):
            if c:
                table[(i, j)] = table.get((i, j), 0) + c
    return BivarApexCoeffs(table, cap)


def coefficient_poly_Ck(g: Multigraph, k: int) -> IntPoly:
    """C_k(z) = sum over k-edge forests A of prod over components (1 + |T| z);
    the zero polynomial when no k-forest exists."""
    if k < 0:
        raise ValueError("k must be non-negative")
    acc = IntPoly()
    for edges_chosen, sizes in _iter_forests(g, k):
        if len(edges_chosen) != k:
            continue
        acc = acc + _star_poly(sizes, g.n)
    return acc

"""Oracle-reduction pipelines.

Each pipeline computes a counting quantity by querying an injected oracle on
transformed graphs/matroids, never by touching the target quantity directly.
With the exact counters injected as oracles, every pipeline reproduces brute
force exactly; the traces record each query and enforce that all query
parameters stay bounded by a function of k alone.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations

from .counters import count_k_trees, forest_polynomial, weighted_tree_sum
from .errors import OracleInconsistencyError
from .graphs import (
    ApexWeightedGraph,
    Multigraph,
    X_LABEL,
    Z_LABEL,
    add_apex,
    build_G_pow_z,
    build_G_xz,
    delete_edges,
    thicken,
)
from .intpoly import (
    IntPoly,
    _require_integral,
    binomial,
    divide_by_power,
    evaluate,
    interpolate,
    reconstruct_details,
    shift_sub,
    solve_exact,
)
from .matroid import (
    LinearMatroid,
    count_bases,
    dualize,
    from_incidence,
    normalize,
    truncate,
    verify_truncation,
)

#: Default cap on the subset enumeration done when double-checking a truncation.
DEFAULT_VERIFY_CAP = 200_000


@dataclass(frozen=True)
class OracleCall:
    query: str
    parameter: int
    result: object


@dataclass
class PipelineTrace:
    """Replayable record of a pipeline run: every oracle call plus the named
    intermediate values, with an enforced per-call parameter bound."""

    pipeline: str
    param_bound: int
    oracle_calls: list[OracleCall] = field(default_factory=list)
    intermediates: dict[str, object] = field(default_factory=dict)

    def record(self, query: str, parameter: int, result: object) -> None:
        if parameter > self.param_bound:
            raise AssertionError(
                f"{self.pipeline}: query parameter {parameter} exceeds bound {self.param_bound}"
            )
        self.oracle_calls.append(OracleCall(query, parameter, result))

    def note(self, name: str, value: object) -> None:
        self.intermediates[name] = value

    def to_json(self) -> str:
        return json.dumps(
            {
                "pipeline": self.pipeline,
                "param_bound": self.param_bound,
                "oracle_calls": [
                    {"query": c.query, "parameter": c.parameter, "result": _jsonable(c.result)}
                    for c in self.oracle_calls
                ],
                "intermediates": {k: _jsonable(v) for k, v in self.intermediates.items()},
            },
            indent=2,
        )


def _jsonable(v):
    if isinstance(v, IntPoly):
        return {"coeffs": [str(c) for c in v.coeffs]}
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


# --- exact oracles -------------------------------------------------------------


def exact_wtree_oracle(g: ApexWeightedGraph, k: int) -> int:
    """Ground-truth weighted apex-tree oracle (weight read off the graph)."""
    return weighted_tree_sum(g, k, g.z)


def exact_ktree_oracle(g: Multigraph, k: int) -> int:
    return count_k_trees(g, k)


def exact_forest_prefix_oracle(g: Multigraph, max_degree: int) -> tuple[int, ...]:
    """First max_degree+1 coefficients of the univariate forest polynomial."""
    p = forest_polynomial(g, max_degree=max_degree)
    return tuple(p.coeff(t) for t in range(max_degree + 1))


# --- pipeline 1: k-matchings from weighted apex trees ----------------------------


def matchings_via_wtrees(
    g: Multigraph, k: int, oracle=exact_wtree_oracle
) -> tuple[int, PipelineTrace]:
    """Count k-matchings with an oracle for size-2k weighted apex-tree sums.

    For x = 1..k pad the graph with x isolated vertices, apex it, and evaluate
    the weighted tree sum at apex weights z = 0..2k; interpolation yields
    Q_x(z), whose z^k coefficient F_x counts "fair" trees.  The F_x satisfy a
    nonsingular binomial system in the catchy-tree counts alpha_1..alpha_k,
    and each k-matching corresponds to exactly 2^k maximal catchy trees."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    trace = PipelineTrace("matchings_via_wtrees", param_bound=2 * k)
    if n < 2 * k:
        # a k-matching needs 2k distinct vertices
        trace.note("answer", 0)
        return 0, trace
    fair = []
    for x in range(1, k + 1):
        points = []
        for z in range(2 * k + 1):
            awg = build_G_xz(g, x, z)
            val = oracle(awg, 2 * k)
            trace.record(f"WT(G[x={x},z={z}], {2 * k})", 2 * k, val)
            points.append((z, val))
        q = interpolate(points)
        trace.note(f"Q[x={x}]", q)
        fair.append(q.coeff(k))
    trace.note("fair_tree_counts", fair)
    system = [
        [binomial(x + n - k - gdx, k - gdx) for gdx in range(1, k + 1)]
        for x in range(1, k + 1)
    ]
    trace.note("binomial_system", system)
    alphas = _require_integral(solve_exact(system, fair), "catchy-tree system")
    trace.note("alpha", alphas)
    if alphas[-1] % (1 << k):
        raise OracleInconsistencyError(
            f"alpha_k = {alphas[-1]} is not divisible by 2^{k}"
        )
    answer = alphas[-1] >> k
    trace.note("answer", answer)
    return answer, trace


# --- pipeline 2: weighted apex trees from plain k-tree counts ---------------------


def wtrees_via_ktrees(
    g: ApexWeightedGraph,
    k: int,
    z: int | None = None,
    oracle=exact_ktree_oracle,
    include_apex_avoiding: bool = True,
) -> tuple[int, PipelineTrace]:
    """Weighted apex-tree sum WT_k at integer weight z from a k-tree oracle.

    For z >= 1 the apex is replaced by z parallel apices plus a hub; trees
    through all z hub edges ("convenient" trees) are counted by
    inclusion-exclusion over deleted hub-edge subsets (2^z oracle calls) and
    realize exactly the apex-touching weighted trees.  Apex-avoiding trees
    contribute weight 1 each and need one extra oracle call on the apexless
    graph; `include_apex_avoiding=False` drops that call, returning only the
    apex-touching contribution (which vanishes at z = 0)."""
    if z is None:
        z = g.z
    if z is None:
        raise ValueError("no apex weight given")
    if k < 1 or z < 0 or z > k:
        raise ValueError("need k >= 1 and 0 <= z <= k")
    trace = PipelineTrace("wtrees_via_ktrees", param_bound=k + z)
    base, _ = g.without_apex()
    if z == 0:
        if not include_apex_avoiding:
            trace.note("answer", 0)
            return 0, trace
        val = oracle(base, k)
        trace.record(f"ktrees(G - apex, {k})", k, val)
        trace.note("answer", val)
        return val, trace
    gz, hub_edges = build_G_pow_z(g.with_z(z))
    convenient = 0
    for take in range(z + 1):
        for js in combinations(hub_edges, take):
            deleted = delete_edges(gz, js)[0] if js else gz
            val = oracle(deleted, k + z)
            trace.record(f"ktrees(G^{z} - {len(js)} hub edges, {k + z})", k + z, val)
            convenient += -val if take & 1 else val
    trace.note("convenient_trees", convenient)
    total = convenient
    if include_apex_avoiding:
        corr = oracle(base, k)
        trace.record(f"ktrees(G - apex, {k})", k, corr)
        trace.note("apex_avoiding", corr)
        total += corr
    trace.note("answer", total)
    return total, trace


# --- pipeline 3: k-matchings from forest-polynomial prefixes -----------------------


def matchings_via_forest_prefix(
    g: Multigraph, k: int, oracle=exact_forest_prefix_oracle
) -> tuple[int, PipelineTrace]:
    """Count k-matchings with an oracle for the first 2k+1 forest-polynomial
    coefficients of a multigraph.

    Apex the graph, thicken its original edges a-fold for a = 1..2k+1, and
    read off d(a)_t = sum_i a^i c_{i,t-i}; per-degree Vandermonde systems
    recover the bivariate coefficients c_{i,j} with i + j <= 2k, in particular
    the prefix c_{k,0}..c_{k,k} of C_k(z).  C_k is divisible by (1+z)^(n-2k),
    so the prefix determines it; after substituting z -> y - 1 and dividing by
    y^(n-2k), the constant term is (-1)^k times the k-matching count."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    trace = PipelineTrace("matchings_via_forest_prefix", param_bound=2 * k)
    if n < 2 * k:
        trace.note("answer", 0)
        return 0, trace
    apexed = add_apex(g)
    labels = [X_LABEL] * g.m + [Z_LABEL] * g.n
    d: dict[int, tuple[int, ...]] = {}
    for a in range(1, 2 * k + 2):
        thick, _ = thicken(apexed.graph, labels, a, 1)
        vals = tuple(oracle(thick, 2 * k))
        if len(vals) != 2 * k + 1:
            raise OracleInconsistencyError("prefix oracle returned a wrong-length answer")
        trace.record(f"forest_prefix(thicken(G', {a}, 1), {2 * k})", 2 * k, list(vals))
        d[a] = vals
    c: dict[tuple[int, int], int] = {}
    for t in range(2 * k + 1):
        nodes = range(1, t + 2)
        system = [[a**i for i in range(t + 1)] for a in nodes]
        rhs = [d[a][t] for a in nodes]
        sol = _require_integral(solve_exact(system, rhs), f"degree-{t} coefficient system")
        for i, val in enumerate(sol):
            c[(i, t - i)] = val
    trace.note("c_table", {f"{i},{j}": v for (i, j), v in c.items()})
    prefix = [c[(k, j)] for j in range(k + 1)]
    trace.note("prefix", prefix)
    rec = reconstruct_details(prefix, D=n - k, Dp=n - 2 * k)
    trace.note("C_k", rec.polynomial)
    quotient = divide_by_power(shift_sub(rec.polynomial), n - 2 * k)
    trace.note("shifted_quotient", quotient)
    answer = evaluate(quotient, 0)
    if k & 1:
        answer = -answer
    if answer < 0:
        raise OracleInconsistencyError(f"negative matching count {answer}")
    trace.note("answer", answer)
    return answer, trace


# --- pipeline 4: k-forests from matroid base counts --------------------------------


def exact_base_count_oracle(m: LinearMatroid) -> int:
    return count_bases(m, method="auto")


def forests_via_bases(
    g: Multigraph,
    k: int,
    param: str = "rank",
    oracle=exact_base_count_oracle,
    sigma: int = 40,
    seed: int = 0,
    verify_cap: int = DEFAULT_VERIFY_CAP,
) -> tuple[int, PipelineTrace]:
    """Count k-forests with a base-counting oracle on linear matroids.

    The incidence matroid of g is normalized and k-truncated (rank route), or
    additionally dualized so the queried matroid has nullity k (nullity
    route); its bases are exactly the k-forests.  The trace records the
    truncation field degree, the seed, and — when the instance is small
    enough to enumerate — the truncation-verification verdict."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if param not in ("rank", "nullity"):
        raise ValueError(f"param must be 'rank' or 'nullity', not {param!r}")
    trace = PipelineTrace("forests_via_bases", param_bound=k)
    m = normalize(from_incidence(g))
    r = m.rep.rows
    trace.note("rank", r)
    if r < k:
        trace.note("answer", 0)
        return 0, trace
    t = truncate(m, k, sigma=sigma, seed=seed)
    trace.note("field_degree", t.field.b)
    trace.note("sigma", sigma)
    trace.note("seed", seed)
    verified = None
    if sum(math.comb(m.m, j) for j in range(1, k + 1)) <= verify_cap:
        verified = verify_truncation(m, t, k)
    trace.note("truncation_verified", verified)
    query = t
    if param == "nullity":
        query = dualize(normalize(t))
    count = oracle(query)
    trace.record(f"count_bases({param} route, parameter {k})", k, count)
    trace.note("answer", count)
    return count, trace

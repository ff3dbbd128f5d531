"""Self-verification suites: polynomial round-trips, pipeline-vs-brute-force
agreement, and matroid identities, sized by caller-supplied limits."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .corpus import connected_graphs
from .counters import count_k_forests, count_k_matchings, weighted_tree_sum
from .gf2 import FFMatrix, FieldSpec
from .graphs import add_apex
from .intpoly import (
    IntPoly,
    divide_by_power,
    evaluate,
    interpolate,
    one_plus_z_power,
    reconstruct_from_prefix,
    shift_sub,
    unshift_sub,
)
from .matroid import (
    LinearMatroid,
    count_bases_brute,
    count_bases_fpt,
    dualize,
    enumerate_bases,
    from_incidence,
    normalize,
    truncate,
    verify_truncation,
)
from .pipelines import (
    forests_via_bases,
    matchings_via_forest_prefix,
    matchings_via_wtrees,
    wtrees_via_ktrees,
)

SUITES = ("poly", "pipelines", "matroid")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: int
    failed: int

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _result(suite: str, name: str, failures: list, total: int) -> CheckResult:
    return CheckResult(suite, name, total - len(failures), len(failures))


def suite_poly(trials: int = 200, seed: int = 0, **_: object) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []

    bad = []
    for t in range(trials):
        deg = rng.randint(0, 12)
        p = IntPoly([rng.randint(-50, 50) for _ in range(deg + 1)])
        if unshift_sub(shift_sub(p)).coeffs != p.coeffs:
            bad.append(t)
    out.append(_result("poly", "shift/unshift round-trip", bad, trials))

    bad = []
    for t in range(trials):
        deg = rng.randint(0, 8)
        p = IntPoly([rng.randint(-99, 99) for _ in range(deg + 1)])
        pts = [(a, evaluate(p, a)) for a in range(deg + 1)]
        if interpolate(pts).coeffs != p.coeffs:
            bad.append(t)
    out.append(_result("poly", "interpolation round-trip", bad, trials))

    bad = []
    for t in range(trials):
        dp = rng.randint(0, 14)
        k = rng.randint(0, 6)
        d = dp + k
        if d > 20:
            continue
        poly = IntPoly()
        for i in range(dp, d + 1):
            poly = poly + one_plus_z_power(i).scale(rng.randint(-30, 30))
        prefix = [poly.coeff(j) for j in range(k + 1)]
        if reconstruct_from_prefix(prefix, d, dp).coeffs != poly.coeffs:
            bad.append(t)
    out.append(_result("poly", "prefix reconstruction round-trip", bad, trials))
    return out


def suite_pipelines(max_n: int = 5, kmax: int = 3, **_: object) -> list[CheckResult]:
    graphs = connected_graphs(max_n)
    out = []

    bad = []
    total = 0
    for g in graphs:
        for k in range(1, kmax + 1):
            if g.n < 2 * k:
                continue
            total += 2
            want = count_k_matchings(g, k)
            if matchings_via_wtrees(g, k)[0] != want:
                bad.append(("wtrees", g.edges, k))
            if matchings_via_forest_prefix(g, k)[0] != want:
                bad.append(("prefix", g.edges, k))
    out.append(_result("pipelines", "matching pipelines vs brute force", bad, total))

    bad = []
    total = 0
    for g in graphs:
        awg = add_apex(g)
        for k in range(1, kmax + 1):
            for z in range(0, k + 1):
                total += 1
                if wtrees_via_ktrees(awg, k, z)[0] != weighted_tree_sum(awg, k, z):
                    bad.append((g.edges, k, z))
    out.append(_result("pipelines", "weighted-tree pipeline vs brute force", bad, total))

    bad = []
    total = 0
    for g in graphs:
        for k in range(0, kmax + 1):
            for param in ("rank", "nullity"):
                total += 1
                if forests_via_bases(g, k, param, seed=k)[0] != count_k_forests(g, k):
                    bad.append((g.edges, k, param))
    out.append(_result("pipelines", "forest pipeline vs brute force", bad, total))
    return out


def _random_matroid(rng: random.Random, spec: FieldSpec) -> LinearMatroid:
    r = rng.randint(1, 5)
    m = rng.randint(r, 12)
    data = [[rng.randrange(spec.order) for _ in range(m)] for _ in range(r)]
    return LinearMatroid.from_matrix(FFMatrix.from_rows(spec, data, m))


def suite_matroid(
    max_n: int = 5, trials: int = 200, seed: int = 0, seeds_per_graph: int = 3, **_: object
) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []

    bad = []
    for t in range(trials):
        spec = FieldSpec.default(rng.choice((1, 2)))
        m = normalize(_random_matroid(rng, spec))
        if count_bases_fpt(m) != count_bases_brute(m):
            bad.append(t)
    out.append(_result("matroid", "duplicate-collapsing vs brute base count", bad, trials))

    bad = []
    for t in range(trials):
        spec = FieldSpec.default(rng.choice((1, 2)))
        m = normalize(_random_matroid(rng, spec))
        d = dualize(m)
        comp = {tuple(sorted(set(range(m.m)) - set(b))) for b in enumerate_bases(m)}
        if set(enumerate_bases(d)) != comp:
            bad.append(t)
        elif set(enumerate_bases(dualize(normalize(d)))) != set(enumerate_bases(m)):
            bad.append(t)
    out.append(_result("matroid", "dual bases are exact complements", bad, trials))

    bad = []
    total = 0
    chain_seeds = min(seeds_per_graph, trials)
    for g in connected_graphs(max_n):
        m = normalize(from_incidence(g))
        r = m.rep.rows
        for k in range(1, r + 1):
            for s in range(chain_seeds):
                total += 1
                t = truncate(m, k, seed=rng.randrange(1 << 30))
                if not verify_truncation(m, t, k):
                    bad.append((g.edges, k, s, "verify"))
                elif count_bases_brute(t) != count_k_forests(g, k):
                    bad.append((g.edges, k, s, "count"))
    out.append(_result("matroid", "truncation chain vs forest counts", bad, total))
    return out


def run_suites(which: str, **kwargs: object) -> list[CheckResult]:
    runners = {"poly": suite_poly, "pipelines": suite_pipelines, "matroid": suite_matroid}
    names = SUITES if which == "all" else (which,)
    results: list[CheckResult] = []
    for name in names:
        results.extend(runners[name](**kwargs))
    return results

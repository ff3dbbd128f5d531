import json
from itertools import combinations

import pytest

from forestlab.corpus import connected_graphs
from forestlab.counters import count_k_forests, count_k_matchings, weighted_tree_sum
from forestlab.errors import OracleInconsistencyError
from forestlab.graphs import Multigraph, add_apex
from forestlab.pipelines import (
    forests_via_bases,
    matchings_via_forest_prefix,
    matchings_via_wtrees,
    wtrees_via_ktrees,
)

TRI = Multigraph(3, ((0, 1), (0, 2), (1, 2)))
PATH4 = Multigraph(4, ((0, 1), (1, 2), (2, 3)))
PATH3 = Multigraph(3, ((0, 1), (1, 2)))
K4 = Multigraph(4, tuple(combinations(range(4), 2)))


def test_matchings_via_wtrees_examples():
    assert matchings_via_wtrees(TRI, 1)[0] == 3
    assert matchings_via_wtrees(TRI, 2)[0] == 0
    assert matchings_via_wtrees(PATH4, 2)[0] == 1
    with pytest.raises(ValueError):
        matchings_via_wtrees(TRI, 0)


def test_matchings_via_wtrees_call_budget_and_bound():
    _, trace = matchings_via_wtrees(K4, 2)
    assert len(trace.oracle_calls) == 2 * (2 * 2 + 1)  # k * (2k+1)
    assert all(c.parameter == 4 <= trace.param_bound for c in trace.oracle_calls)


def test_wtrees_via_ktrees_examples_and_budget():
    awg = add_apex(Multigraph(2, ((0, 1),)))
    val, trace = wtrees_via_ktrees(awg, 2, 2)
    assert val == 8 == weighted_tree_sum(awg, 2, 2)
    assert len(trace.oracle_calls) == 2**2 + 1
    val, trace = wtrees_via_ktrees(awg, 1, 1)
    assert val == 3 and len(trace.oracle_calls) == 2**1 + 1
    # z = 0 branch: apex-avoiding trees only, one call
    val, trace = wtrees_via_ktrees(add_apex(TRI), 2, 0)
    assert val == weighted_tree_sum(add_apex(TRI), 2, 0)
    assert len(trace.oracle_calls) == 1
    with pytest.raises(ValueError):
        wtrees_via_ktrees(awg, 1, 2)  # z > k


def test_wtrees_disabled_correction_is_apex_touching_only():
    awg = add_apex(TRI)
    for k in (1, 2, 3):
        for z in range(0, k + 1):
            full, _ = wtrees_via_ktrees(awg, k, z)
            partial, _ = wtrees_via_ktrees(awg, k, z, include_apex_avoiding=False)
            avoiding = weighted_tree_sum(awg, k, 0)
            assert full == partial + avoiding
    assert wtrees_via_ktrees(awg, 2, 0, include_apex_avoiding=False)[0] == 0


def test_composition_with_inner_pipeline():
    for g in (TRI, PATH4, K4):
        for k in (1, 2):
            if g.n < 2 * k:
                continue
            want = count_k_matchings(g, k)
            for corr in (True, False):
                def oracle(awg, kk, corr=corr):
                    return wtrees_via_ktrees(awg, kk, awg.z, include_apex_avoiding=corr)[0]

                assert matchings_via_wtrees(g, k, oracle=oracle)[0] == want


def test_matchings_via_forest_prefix_examples():
    assert matchings_via_forest_prefix(PATH3, 1)[0] == 2
    assert matchings_via_forest_prefix(K4, 2)[0] == 3
    assert matchings_via_forest_prefix(TRI, 2)[0] == 0  # n < 2k early out
    _, trace = matchings_via_forest_prefix(K4, 2)
    assert len(trace.oracle_calls) == 2 * 2 + 1


def test_forest_prefix_pipeline_rejects_bad_oracle():
    from forestlab.pipelines import exact_forest_prefix_oracle

    def liar(g, max_degree):
        # exact everywhere except the triply-thickened query, which breaks the
        # degree-2 Vandermonde system's integrality
        vals = list(exact_forest_prefix_oracle(g, max_degree))
        if max(g.multiplicities().values()) == 3:
            vals[2] += 1
        return vals

    with pytest.raises(OracleInconsistencyError):
        matchings_via_forest_prefix(K4, 2, oracle=liar)

    def short(g, max_degree):
        return exact_forest_prefix_oracle(g, max_degree)[:-1]

    with pytest.raises(OracleInconsistencyError):
        matchings_via_forest_prefix(K4, 2, oracle=short)


def test_forests_via_bases_examples():
    assert forests_via_bases(TRI, 2, "rank")[0] == 3
    assert forests_via_bases(K4, 3, "rank")[0] == 16
    assert forests_via_bases(K4, 3, "nullity")[0] == 16
    assert forests_via_bases(TRI, 3, "rank")[0] == 0  # rank 2 < 3
    assert forests_via_bases(TRI, 3, "nullity")[0] == 0
    assert forests_via_bases(TRI, 0, "rank")[0] == 1
    with pytest.raises(ValueError):
        forests_via_bases(TRI, 1, "cardinality")


def test_forests_via_bases_trace_contents():
    _, trace = forests_via_bases(K4, 2, "nullity", sigma=40, seed=9)
    inter = trace.intermediates
    assert inter["seed"] == 9 and inter["sigma"] == 40
    assert inter["field_degree"] >= 40
    assert inter["truncation_verified"] is True
    assert all(c.parameter <= 2 for c in trace.oracle_calls)


def test_traces_serialize_to_json():
    for _, trace in (
        matchings_via_wtrees(TRI, 1),
        wtrees_via_ktrees(add_apex(TRI), 2, 1),
        matchings_via_forest_prefix(PATH4, 2),
        forests_via_bases(TRI, 2),
    ):
        doc = json.loads(trace.to_json())
        assert doc["pipeline"] == trace.pipeline
        assert len(doc["oracle_calls"]) == len(trace.oracle_calls)


def test_param_bound_is_enforced():
    from forestlab.pipelines import PipelineTrace

    trace = PipelineTrace("t", param_bound=3)
    trace.record("ok", 3, 1)
    with pytest.raises(AssertionError):
        trace.record("too big", 4, 1)


def test_pipelines_agree_with_brute_force_small_corpus():
    for g in connected_graphs(4):
        for k in (1, 2):
            if g.n >= 2 * k:
                want = count_k_matchings(g, k)
                assert matchings_via_wtrees(g, k)[0] == want
                assert matchings_via_forest_prefix(g, k)[0] == want
            assert forests_via_bases(g, k, "rank", seed=k)[0] == count_k_forests(g, k)
            awg = add_apex(g)
            for z in range(0, k + 1):
                assert wtrees_via_ktrees(awg, k, z)[0] == weighted_tree_sum(awg, k, z)

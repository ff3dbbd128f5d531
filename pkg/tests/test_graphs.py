import pytest

from forestlab.graphs import (
    ApexWeightedGraph,
    GraphFormatError,
    Multigraph,
    X_LABEL,
    Z_LABEL,
    add_apex,
    build_G_pow_z,
    build_G_xz,
    contract_edge,
    delete_edges,
    delete_vertex,
    format_graph,
    parse_graph,
    subset_is_acyclic,
    subset_is_tree,
    thicken,
)

TRI = Multigraph(3, ((0, 1), (0, 2), (1, 2)))
PATH4 = Multigraph(4, ((0, 1), (1, 2), (2, 3)))


def test_multigraph_normalizes_and_validates():
    g = Multigraph(3, ((1, 0), (2, 1)))
    assert g.edges == ((0, 1), (1, 2))
    assert g.m == 2
    with pytest.raises(ValueError):
        Multigraph(3, ((0, 0),))  # self-loop
    with pytest.raises(ValueError):
        Multigraph(2, ((0, 2),))  # endpoint out of range


def test_multiplicities_counts_parallel_edges():
    g = Multigraph(3, ((0, 1), (1, 0), (1, 2)))
    assert g.multiplicities() == {(0, 1): 2, (1, 2): 1}


def test_connectivity():
    assert TRI.is_connected()
    assert not Multigraph(4, ((0, 1),)).is_connected()
    assert Multigraph(1, ()).is_connected()


def test_subset_is_acyclic_and_tree():
    # triangle: any two edges are a tree, all three are a cycle
    for pair in ((0, 1), (0, 2), (1, 2)):
        assert subset_is_acyclic(TRI, pair)
        assert subset_is_tree(TRI, pair)
    assert not subset_is_acyclic(TRI, (0, 1, 2))
    assert not subset_is_tree(TRI, (0, 1, 2))
    # two disjoint edges of the path: forest but not a tree
    assert subset_is_acyclic(PATH4, (0, 2))
    assert not subset_is_tree(PATH4, (0, 2))
    with pytest.raises(ValueError):
        subset_is_tree(PATH4, ())


def test_add_apex_connects_everything():
    awg = add_apex(TRI)
    assert awg.apex == 3
    assert awg.graph.n == 4
    assert set(awg.graph.edges) >= {(0, 3), (1, 3), (2, 3)}
    assert len(awg.apex_edges) == 3


def test_apex_weighted_graph_validates_adjacency():
    with pytest.raises(ValueError):
        ApexWeightedGraph(PATH4, apex=0, z=1)  # vertex 0 not adjacent to all


def test_build_G_xz_pads_then_apexes():
    awg = build_G_xz(TRI, x=2, z=5)
    assert awg.graph.n == 6  # 3 original + 2 isolated + apex
    assert awg.z == 5
    # apex adjacent to all five other vertices
    assert sum(1 for e in awg.graph.edges if awg.apex in e) == 5


def test_build_G_pow_z_structure():
    awg = add_apex(TRI).with_z(2)
    gz, hub = build_G_pow_z(awg)
    # 3 base + 2 apices + 1 hub
    assert gz.n == 6
    assert len(hub) == 2
    for i in hub:
        assert 5 in gz.edges[i]  # every hub edge touches the hub vertex
    with pytest.raises(ValueError):
        build_G_pow_z(add_apex(TRI).with_z(0))


def test_thicken_multiplies_classes():
    awg = add_apex(Multigraph(2, ((0, 1),)))
    labels = [X_LABEL] + [Z_LABEL] * 2
    thick, src = thicken(awg.graph, labels, 3, 2)
    assert thick.m == 3 + 2 * 2
    assert sorted(src) == [0, 0, 0, 1, 1, 2, 2]
    with pytest.raises(ValueError):
        thicken(awg.graph, labels, 0, 1)


def test_delete_and_contract():
    g, kept = delete_edges(TRI, (1,))
    assert g.edges == ((0, 1), (1, 2)) and kept == (0, 2)
    g, kept = delete_vertex(PATH4, 0)
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))
    g, kept = contract_edge(TRI, 0)  # contract edge (0,1): loses the parallel loop
    assert g.n == 2 and g.edges == ((0, 1), (0, 1))


def test_graph_text_round_trip():
    for g in (TRI, PATH4, Multigraph(1, ())):
        assert parse_graph(format_graph(g)) == g
    awg = add_apex(TRI).with_z(4)
    back = parse_graph(format_graph(awg))
    assert isinstance(back, ApexWeightedGraph)
    assert back.graph == awg.graph and back.apex == awg.apex and back.z == awg.z


def test_graph_text_errors():
    with pytest.raises(GraphFormatError):
        parse_graph("edge 0 1")
    with pytest.raises(GraphFormatError):
        parse_graph("graph 2\nedge 0 2")
    with pytest.raises(GraphFormatError):
        parse_graph("graph 2\nbogus 1")
    assert parse_graph("graph 2 # comment\nedge 0 1") == Multigraph(2, ((0, 1),))

"""
Тесты поиска миноров: свидетельства, семейства, сверка с полным перебором
"""

from itertools import combinations

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher
from networkx.utils import UnionFind

from data.named_graphs import CONNECTED_BY_ORDER, ELEVEN, F2PRIME, get_named_graph
from utils.graphs import Graph, contract_edge, delete_vertex, has_path_union_form
from utils.minors import MinorSearchTooLarge, family_minor_check, find_minor, is_minor


def named(name: str) -> Graph:
    return get_named_graph(name).graph


def brute_force_minor(pattern: Graph, host: Graph) -> bool:
    """Стянуть каждое подмножество ребер и искать образец как подграф"""
    target = pattern.to_networkx()
    edges = host.sorted_edges()
    for size in range(len(edges) + 1):
        for chosen in combinations(edges, size):
            groups = UnionFind(host.vertices)
            for u, w in chosen:
                groups.union(u, w)
            if len({groups[v] for v in host.vertices}) < pattern.n:
                continue
            quotient = nx.Graph()
            quotient.add_nodes_from({groups[v] for v in host.vertices})
            quotient.add_edges_from((groups[u], groups[w]) for u, w in edges if groups[u] != groups[w])
            if GraphMatcher(quotient, target).subgraph_is_monomorphic():
                return True
    return False


def replay(host: Graph, witness) -> Graph:
    for step in witness.steps:
        if step["op"] == "contract_edge":
            host = contract_edge(host, step["edge"])
        else:
            host = delete_vertex(host, step["vertex"])
    return host


def test_c4_is_minor_of_c5_with_witness():
    witness = find_minor(named("C4"), named("C5"))
    assert witness is not None
    final = replay(named("C5"), witness)
    C4 = named("C4")
    assert all(final.has_edge(witness.mapping[i], witness.mapping[j]) for i, j in C4.edges)
    assert witness.to_list()[-1]["op"] == "embed"


def test_minor_relation_basics():
    assert is_minor(named("K3"), named("C5"))
    assert not is_minor(named("C4"), named("K1_4"))
    assert not is_minor(named("K5"), named("W5"))
    assert is_minor(named("K4"), named("W5"))


def test_search_limit():
    with pytest.raises(MinorSearchTooLarge):
        find_minor(named("K3"), named("P13"))


def test_family_members_of_campstool():
    report = family_minor_check(named("Campstool"), "F2PRIME")
    assert report == {"family": "F2PRIME", "members": ["Campstool"], "has_minor": True}


def test_family_members_are_their_own_minors():
    for name in ELEVEN:
        assert name in family_minor_check(named(name), "ELEVEN")["members"]


def test_witness_replays_for_catalog_graphs():
    C4 = named("C4")
    for name in CONNECTED_BY_ORDER[5]:
        witness = find_minor(C4, named(name))
        if witness is None:
            continue
        final = replay(named(name), witness)
        assert all(final.has_edge(witness.mapping[i], witness.mapping[j]) for i, j in C4.edges)


def test_family_check_matches_brute_force():
    hosts = [name for order in sorted(CONNECTED_BY_ORDER) for name in CONNECTED_BY_ORDER[order]]
    hosts += ["H-tree", "3-sun", "K1_6", "S(2,1,1,1,1)", "S(2,2,1,1)", "S(2,2,2)"]
    for host in hosts:
        H = named(host)
        for family in ("ELEVEN", "F2PRIME"):
            expected = [m for m in (ELEVEN if family == "ELEVEN" else F2PRIME)
                        if brute_force_minor(named(m), H)]
            assert family_minor_check(H, family)["members"] == expected, (host, family)


def test_f2prime_free_iff_path_union_form_up_to_order_7():
    for g in nx.graph_atlas_g()[1:]:
        if not nx.is_connected(g):
            continue
        G = Graph.from_networkx(g)
        assert family_minor_check(G, "F2PRIME")["has_minor"] != has_path_union_form(G), G

"""
Тесты каталога графов порядка <= 5: достижимые списки, построение свидетелей, перепроверка
"""

import pytest
from numpy.testing import assert_allclose

from data.named_graphs import CONNECTED_BY_ORDER, get_named_graph
from database.database import catalog_db
from database.models import CatalogError, compositions
from utils.graphs import Graph
from utils.matrices import OrderedMultiplicityList

OML = OrderedMultiplicityList


def named(name: str) -> Graph:
    return get_named_graph(name).graph


def test_star_triple_needs_no_ssp():
    K14 = named("K1_4")
    assert OML((1, 3, 1)) in catalog_db.attainable(K14, "ANY")
    assert OML((1, 3, 1)) not in catalog_db.attainable(K14, "SSP")
    # Канонический порядок: сначала короткие списки
    assert catalog_db.attainable(K14, "ANY")[0] == OML((1, 3, 1))


def test_cycle_excludes_double_at_both_ends():
    assert OML((2, 1, 2)) not in catalog_db.attainable(named("C5"), "ANY")
    assert OML((2, 2, 1)) in catalog_db.attainable(named("C5"), "SSP")


def test_butterfly_triples_only_without_ssp():
    B = named("Butterfly")
    any_lists = catalog_db.attainable(B, "ANY")
    ssp_lists = catalog_db.attainable(B, "SSP")
    for shape in [(1, 3, 1), (3, 1, 1), (1, 1, 3)]:
        assert OML(shape) in any_lists
        assert OML(shape) not in ssp_lists
    assert OML((3, 2)) not in any_lists


def test_attainable_ignores_labelling():
    C5 = named("C5")
    relabelled = Graph.from_edges(5, [(1, 3), (3, 5), (5, 2), (2, 4), (4, 1)])
    assert catalog_db.attainable(relabelled, "SSP") == catalog_db.attainable(C5, "SSP")


def test_every_connected_graph_has_an_entry():
    for order, names in CONNECTED_BY_ORDER.items():
        for name in names:
            entry = catalog_db.entry(named(name))
            assert entry.order == order
            assert set(entry.ssp) <= set(entry.any)
            assert OML((1,) * order) in entry.ssp


def test_compositions_count():
    assert len(compositions(5)) == 16
    assert OML((2, 2, 1)) in compositions(5)


def test_summary_lists_all_orders():
    summary = catalog_db.summary()
    assert len(summary["orders"]["5"]) == 21
    stars = [row for row in summary["orders"]["5"] if row["graph"] == "K1_4"]
    assert stars[0]["any_only"] == ["1,3,1"]


def test_disconnected_graph_merges_components():
    G = Graph.from_edges(4, [(1, 3), (3, 4), (1, 4)])
    assert OML((2, 1, 1)) in catalog_db.attainable(G, "SSP")
    # Значения разных компонент совпадают только без SSP
    assert OML((3, 1)) in catalog_db.attainable(G, "ANY")
    assert OML((3, 1)) not in catalog_db.attainable(G, "SSP")


def test_orders_above_catalog_rejected():
    with pytest.raises(CatalogError):
        catalog_db.attainable(named("P6"), "ANY")
    with pytest.raises(CatalogError):
        catalog_db.attainable(named("C5"), "SOME")


@pytest.mark.parametrize("graph,shape,target", [
    ("C5", (2, 2, 1), [-2.0, 1.0, 5.0]),
    ("K2_3", (1, 3, 1), [-3.0, 0.0, 5.0]),
    ("Campstool", (1, 2, 2), [-1.0, 0.5, 2.0]),
    ("Butterfly", (2, 1, 2), [-1.0, 0.0, 3.0]),
])
def test_ssp_demos(graph, shape, target):
    G = named(graph)
    result = catalog_db.spectrally_arbitrary_demo(G, OML(shape), target, mode="SSP")
    assert result.converged, result.diagnostics
    assert result.matrix.pattern == G
    expected = [x for x, m in zip(target, shape) for _ in range(m)]
    assert_allclose(result.achieved_spectrum.eigenvalues, expected, atol=1e-6)
    assert result.certificates["SSP"]["holds"]


def test_any_demo_for_butterfly():
    G = named("Butterfly")
    result = catalog_db.spectrally_arbitrary_demo(G, "1,3,1", [-1.0, 2.0, 4.0], mode="ANY")
    assert result.converged, result.diagnostics
    assert result.method == "catalog:butterfly_rank2"
    assert result.matrix.pattern == G
    assert result.achieved_spectrum.oml() == OML((1, 3, 1))


def test_demo_rejects_unattainable_lists():
    with pytest.raises(CatalogError):
        catalog_db.spectrally_arbitrary_demo(named("K1_4"), "1,3,1", mode="SSP")
    with pytest.raises(CatalogError):
        catalog_db.spectrally_arbitrary_demo(named("C5"), "2,2,1", [1.0, 0.0, 2.0])


def test_disconnected_demo():
    G = Graph.from_edges(4, [(1, 3), (3, 4), (1, 4)])
    result = catalog_db.spectrally_arbitrary_demo(G, "2,1,1", [0.0, 1.0, 2.0], mode="SSP")
    assert result.converged, result.diagnostics
    assert result.method == "catalog:direct_sum"
    assert result.matrix.pattern == G


@pytest.mark.parametrize("scope", ["order4", "order5", "minors"])
def test_verify_catalog(scope):
    report = catalog_db.verify_catalog(scope)
    failed = [row for row in report["rows"] if not row["passed"]]
    assert report["holds"], failed
    assert report["passed"] == len(report["rows"]) > 0


def test_verify_unknown_scope():
    with pytest.raises(CatalogError):
        catalog_db.verify_catalog("order6")

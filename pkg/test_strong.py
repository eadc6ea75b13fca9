"""
Тесты сильных свойств: проверочные матрицы, ранговые сертификаты, граница числа ребер
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from data.named_graphs import get_named_graph
from utils.families import build_family
from utils.matrices import OrderedMultiplicityList, PatternedMatrix
from utils.strong import (StrongProperty, has_property, ssp_edge_lower_bound, tangent_space,
                          ts_block_structure_check, tss, verification,
                          verification_rows_commutator)

from conftest import random_graph, random_patterned


def test_tangent_space_shapes():
    A = build_family("M1").matrix
    assert tss(A).data.shape == (15, 10)
    assert tangent_space(A, "smp").data.shape == (15, 10 + 3)
    assert tangent_space(A, "SAP").data.shape == (15, 25)


def test_verification_matches_commutator_rows(rng):
    for _ in range(200):
        n = int(rng.integers(2, 8))
        A = random_patterned(rng, random_graph(rng, n, density=float(rng.uniform(0.2, 0.8))))
        for kind in StrongProperty:
            direct = verification(A, kind).data
            rows = verification_rows_commutator(A, kind).data
            assert direct.shape == rows.shape
            if direct.size:
                assert np.max(np.abs(direct - rows)) <= 1e-12


def test_ts_block_structure(rng):
    for _ in range(100):
        n = int(rng.integers(2, 7))
        A = random_patterned(rng, random_graph(rng, n))
        report = ts_block_structure_check(A, float(rng.normal()))
        assert report["holds"], report
        assert report["max_deviation"] <= 1e-12


def test_complete_graph_has_every_property(rng):
    A = random_patterned(rng, get_named_graph("K4").graph)
    for kind in ("SSP", "SMP", "SAP"):
        certificate = has_property(A, kind)
        assert certificate.holds and certificate.p == 0


def test_zero_matrix_on_two_vertices_fails_ssp():
    A = PatternedMatrix(np.zeros((2, 2)))
    certificate = has_property(A, "SSP")
    assert certificate.p == 1
    assert not certificate.holds


def test_distinct_diagonal_has_ssp():
    A = PatternedMatrix(np.diag([1.0, 2.0, 3.0, 4.0]))
    assert has_property(A, "SSP").holds
    assert has_property(A, "SMP").holds


def test_table_one_witnesses_have_ssp():
    for name in ("C4_TABLE1", "K13_TABLE1"):
        certificate = has_property(build_family(name).matrix, "SSP")
        assert certificate.holds
        assert certificate.sigma_p > 1e-6


def test_b12_has_smp_but_not_ssp():
    B = build_family("B12").matrix
    assert B.pattern.m == 18
    assert ssp_edge_lower_bound(OrderedMultiplicityList((3, 5, 4))) == 19
    assert has_property(B, "SMP").holds
    assert not has_property(B, "SSP").holds


def test_edge_bound_accepts_plain_sequences():
    assert ssp_edge_lower_bound([2, 2, 1]) == 2
    assert ssp_edge_lower_bound([1, 1, 1]) == 0


def test_fixed_rank_tolerance_is_reported():
    A = build_family("M2").matrix
    certificate = has_property(A, "SSP", rank_tol=1e-3)
    assert certificate.threshold == 1e-3
    assert certificate.to_dict()["margin"] == pytest.approx(certificate.sigma_p - 1e-3)


def test_unknown_property_rejected():
    with pytest.raises(ValueError):
        has_property(build_family("M2").matrix, "XYZ")


def test_sap_fails_for_disjoint_zero_blocks():
    # Нулевая матрица 2K1: X = E12 + E21 дает A·X = 0
    assert not has_property(PatternedMatrix(np.zeros((2, 2))), "SAP").holds
    assert has_property(PatternedMatrix(np.eye(2)), "SAP").holds


def test_smp_q_override_matches_clusters():
    A = build_family("M3").matrix
    assert_allclose(verification(A, "SMP").data, verification(A, "SMP", q=3).data)

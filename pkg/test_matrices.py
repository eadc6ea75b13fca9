"""
Тесты матриц с шаблоном: спектр, кластеризация, списки кратностей, факты о деревьях
"""

import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from data.named_graphs import get_named_graph
from utils.families import build_family
from utils.graphs import Graph
from utils.matrices import (OrderedMultiplicityList, PatternedMatrix, MatrixError, cluster_values,
                            extreme_simplicity_check, graph_of, multiplicity, negate, oml,
                            parter_wiener_witness, scale_shift, sign_normalize, spectral_distance,
                            spectrum)

from conftest import random_patterned, random_tree

OML = OrderedMultiplicityList


def test_strict_pattern_mismatch_raises():
    A = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float)
    assert PatternedMatrix(A, pattern=get_named_graph("P3").graph).pattern.m == 2
    with pytest.raises(MatrixError):
        PatternedMatrix(A, pattern=get_named_graph("K3").graph)


def test_non_symmetric_rejected():
    with pytest.raises(MatrixError):
        PatternedMatrix([[0, 1], [2, 0]])


def test_graph_of_uses_zero_tolerance():
    A = np.array([[1.0, 1e-13], [1e-13, 2.0]])
    assert graph_of(A).m == 0
    assert graph_of(A, zero_tol=1e-14).m == 1


def test_clustering_and_oml():
    spec = spectrum(np.diag([2.0, 1.0, 1.0 + 1e-12, 5.0]))
    assert spec.oml() == OML((2, 1, 1))
    assert spec.q == 3
    assert spec.distinct[0] == pytest.approx(1.0)
    # Явный абсолютный допуск объединяет близкие значения
    assert cluster_values([0.0, 0.05, 1.0], cluster_tol=0.1).oml() == OML((2, 1))


def test_multiplicity_of_user_value():
    A = build_family("M2", {"a": 1.0}).matrix
    assert multiplicity(A, -2.0) == 2
    assert multiplicity(A, 2.0) == 1
    assert multiplicity(A, 1.0) == 0


def test_oml_parsing():
    assert OML.parse("2,2,1") == OML.parse("(2,2,1)") == OML.parse("221") == OML((2, 2, 1))
    assert OML.parse("2,2,1").reversed() == OML((1, 2, 2))
    assert OML((1, 3, 1)).order == 5
    with pytest.raises(MatrixError):
        OML.parse("")
    with pytest.raises(MatrixError):
        OML.parse("2,x")


def test_scale_shift_maps_spectrum_and_keeps_pattern():
    A = build_family("M2", {"a": 1.0}).matrix
    B = scale_shift(A, -2.0, 2.0, 0.0, 1.0)
    assert B.pattern == A.pattern
    assert_allclose(spectrum(B).eigenvalues, [0, 0, 0.5, 0.5, 1], atol=1e-12)
    with pytest.raises(MatrixError):
        scale_shift(A, -2.0, 2.0, 1.0, 1.0)


def test_scale_shift_does_not_drop_small_edges():
    A = PatternedMatrix([[0.0, 1e-6], [1e-6, 0.0]])
    assert A.pattern.m == 1
    # Ребро 1e-6 после масштаба 1e-7 оказалось бы ниже ZERO_TOL
    with pytest.raises(MatrixError):
        scale_shift(A, 0.0, 1.0, 0.0, 1e-7)


def test_negate_reverses_oml():
    A = build_family("M5", {"a": 2.0}).matrix
    assert oml(A) == OML((3, 1, 1))
    assert oml(negate(A)) == OML((1, 1, 3))


def test_spectral_distance():
    assert spectral_distance([3, 1, 2], [1, 2, 3.5]) == pytest.approx(0.5)
    with pytest.raises(MatrixError):
        spectral_distance([1, 2], [1])


def test_json_keeps_doubles_exactly(rng):
    A = random_patterned(rng, get_named_graph("Butterfly").graph)
    for form in ("rows", "upper"):
        restored = PatternedMatrix.from_json(json.loads(json.dumps(A.to_json(form))))
        assert restored == A


def test_json_shape_errors():
    with pytest.raises(MatrixError):
        PatternedMatrix.from_json({"n": 2, "rows": [[1, 0]]})
    with pytest.raises(MatrixError):
        PatternedMatrix.from_json({"rows": [[1]]})


def test_random_tree_matrices_have_simple_extremes(rng):
    for _ in range(500):
        T = random_tree(rng, int(rng.integers(2, 9)))
        report = extreme_simplicity_check(random_patterned(rng, T))
        assert report["class"] == "tree"
        assert report["holds"]


def _odd_unicyclic(rng) -> Graph:
    cycle = int(rng.choice([3, 5, 7]))
    edges = [(i, i + 1) for i in range(1, cycle)] + [(1, cycle)]
    n = cycle + int(rng.integers(0, 4))
    edges += [(int(rng.integers(1, v)), v) for v in range(cycle + 1, n + 1)]
    return Graph.from_edges(n, edges)


def test_random_odd_unicyclic_matrices_have_a_simple_extreme(rng):
    for _ in range(500):
        report = extreme_simplicity_check(random_patterned(rng, _odd_unicyclic(rng)))
        assert report["class"] == "odd_unicyclic"
        assert report["holds"]


def test_extreme_check_rejects_other_graphs(rng):
    with pytest.raises(MatrixError):
        extreme_simplicity_check(random_patterned(rng, get_named_graph("C4").graph))


def _star_with_common_eigenvalue(rng, value: float):
    """Обобщенная звезда, у каждой ветви которой есть собственное значение value"""
    branches = int(rng.integers(3, 6))
    lengths = [int(rng.integers(1, 4)) for _ in range(branches)]
    n = 1 + sum(lengths)
    A = np.zeros((n, n))
    A[0, 0] = rng.normal()
    start = 1
    for length in lengths:
        idx = list(range(start, start + length))
        block = np.diag(rng.normal(size=length))
        for a, b in zip(range(length - 1), range(1, length)):
            block[a, b] = block[b, a] = rng.uniform(0.5, 2.0)
        block += (value - np.linalg.eigvalsh(block)[0]) * np.eye(length)
        A[np.ix_(idx, idx)] = block
        A[0, start] = A[start, 0] = rng.uniform(0.5, 2.0)
        start += length
    return PatternedMatrix(A), branches


def test_parter_wiener_vertex_found(rng):
    for _ in range(100):
        A, branches = _star_with_common_eigenvalue(rng, 0.5)
        assert multiplicity(A, 0.5) == branches - 1
        assert parter_wiener_witness(A, 0.5) == 1


def test_parter_wiener_requires_multiple_eigenvalue(rng):
    A = random_patterned(rng, get_named_graph("P4").graph)
    with pytest.raises(MatrixError):
        parter_wiener_witness(A, float(spectrum(A).distinct[0]))


def test_sign_normalize_on_trees(rng):
    for _ in range(20):
        A = random_patterned(rng, random_tree(rng, 7))
        signs, B = sign_normalize(A)
        assert set(np.unique(signs)) <= {-1.0, 1.0}
        assert_allclose(B.entries, np.diag(signs) @ A.entries @ np.diag(signs))
        assert all(B.entries[i - 1, j - 1] > 0 for i, j in B.pattern.edges)
        assert_allclose(spectrum(B).eigenvalues, spectrum(A).eigenvalues, atol=1e-12)


def test_sign_normalize_rejects_two_cycles(rng):
    with pytest.raises(MatrixError):
        sign_normalize(random_patterned(rng, get_named_graph("Dmnd").graph))

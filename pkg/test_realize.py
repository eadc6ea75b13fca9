"""
Тесты конструктивных процедур: Якоби, подъем, присоединение и расщепление вершины
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from data.named_graphs import get_named_graph
from utils.families import build_family
from utils.graphs import Graph
from utils.matrices import OrderedMultiplicityList, PatternedMatrix, spectrum
from utils.realize import (RealizationError, augment, certify, cycle_double_eigenvalue, decontract,
                           isospectral_lift, jacobi_from_spectrum, lambda_bound_check,
                           liberation_feasible, minor_monotone_lift, persymmetric_weights,
                           realize_distinct)
from utils.strong import has_property

from conftest import random_patterned

OML = OrderedMultiplicityList


def named(name: str) -> Graph:
    return get_named_graph(name).graph


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def spread_values(rng, count: int, gap: float = 1e-3) -> list:
    """Случайные различимые значения из (-5, 5) по возрастанию"""
    while True:
        values = np.sort(rng.uniform(-5.0, 5.0, size=count))
        if count < 2 or np.min(np.diff(values)) > gap:
            return [float(x) for x in values]


def test_jacobi_matrix_has_requested_spectrum():
    values = [-1.0, 0.0, 2.0, 5.0, 5.5]
    T = jacobi_from_spectrum(values)
    assert T.pattern == Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    assert_allclose(spectrum(T).eigenvalues, values, atol=1e-10)
    assert np.all(np.diag(T.entries, 1) > 0)
    with pytest.raises(RealizationError):
        jacobi_from_spectrum([1.0, 1.0, 2.0])


def test_persymmetric_jacobi_matrix():
    values = [-2.162, -1.87, -1.859, 0.767]
    T = jacobi_from_spectrum(values, persymmetric_weights(values))
    assert_allclose(spectrum(T).eigenvalues, values, atol=1e-10)
    assert_allclose(T.entries, T.entries[::-1, ::-1], atol=1e-9)
    _, vectors = np.linalg.eigh(T.entries)
    assert_allclose(np.abs(vectors[0]), np.abs(vectors[-1]), atol=1e-8)
    with pytest.raises(RealizationError):
        jacobi_from_spectrum(values, [1.0, 0.0, 1.0, 1.0])


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_cycle_with_double_eigenvalue(rng, n):
    for _ in range(20):
        values = spread_values(rng, n - 1)
        for k in range(1, n):
            result = cycle_double_eigenvalue(n, values, k)
            assert result.converged, (values, k, result.diagnostics)
            assert result.spectral_residual <= 1e-6
            assert result.matrix.pattern == cycle(n)
            assert result.achieved_spectrum.multiplicity_of(values[k - 1], 1e-6) == 2
            assert has_property(result.matrix, "SSP").holds


def test_cycle_with_clustered_values():
    values = [-2.162, -1.87, -1.859, 0.767]
    for k in range(1, 5):
        result = cycle_double_eigenvalue(5, values, k)
        assert result.converged, (k, result.diagnostics)
        assert result.diagnostics["edge_min"] > 1e-6
        assert result.matrix.pattern == cycle(5)


def test_cycle_arguments_checked():
    with pytest.raises(RealizationError):
        cycle_double_eigenvalue(2, [1.0], 1)
    with pytest.raises(RealizationError):
        cycle_double_eigenvalue(5, [1.0, 2.0, 3.0], 1)
    with pytest.raises(RealizationError):
        cycle_double_eigenvalue(4, [1.0, 1.0, 2.0], 1)


def test_augment_preconditions():
    path = PatternedMatrix([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
    with pytest.raises(RealizationError):
        augment(path, 0.5, [1, 2])
    with pytest.raises(RealizationError):
        augment(path, 0.0, [1, 2, 3])
    # Собственный вектор (1, 0, -1) не задевает вершину 2
    with pytest.raises(RealizationError):
        augment(path, 0.0, [1, 2])
    with pytest.raises(RealizationError):
        augment(PatternedMatrix(np.zeros((2, 2))), 0.0, [1, 2, 3])


def test_augment_raises_multiplicity():
    path = PatternedMatrix([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
    result = augment(path, 0.0, [1, 3])
    assert result.converged, result.diagnostics
    assert result.diagnostics["multiplicity_after"] == 2
    assert result.matrix.pattern == Graph.from_edges(4, [(1, 2), (2, 3), (1, 4), (3, 4)])


def test_decontract_triangle_into_square(rng):
    target = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    for _ in range(20):
        A = random_patterned(rng, named("K3"))
        result = decontract(A, 1, [2], [3])
        assert result.converged, result.diagnostics
        assert result.matrix.pattern == target
        expected = np.append(spectrum(A).eigenvalues, result.diagnostics["lambda_used"])
        assert_allclose(result.achieved_spectrum.eigenvalues, np.sort(expected), atol=1e-8)
        assert has_property(result.matrix, "SSP").holds


def test_decontract_pendant_vertex(rng):
    for _ in range(20):
        A = random_patterned(rng, named("P3"))
        result = decontract(A, 3, [2], [])
        assert result.converged, result.diagnostics
        assert result.matrix.pattern == Graph.from_edges(4, [(1, 2), (2, 3), (3, 4)])


def test_decontract_requires_partition(rng):
    A = random_patterned(rng, named("K3"))
    with pytest.raises(RealizationError):
        decontract(A, 1, [2], [2, 3])
    with pytest.raises(RealizationError):
        decontract(A, 1, [2], [3], require="sap")


def test_decontract_rejects_small_lambda(rng):
    A = random_patterned(rng, named("K3"))
    top = float(spectrum(A).eigenvalues[-1])
    with pytest.raises(RealizationError, match="наибольшего собственного значения"):
        decontract(A, 1, [2], [3], lam=top)
    with pytest.raises(RealizationError, match="наибольшего собственного значения"):
        decontract(A, 1, [2], [3], lam=top - 1.0)


def test_decontract_keeping_multiplicities(rng):
    A = random_patterned(rng, named("K3"))
    result = decontract(A, 1, [2], [3], require="smp")
    assert result.converged, result.diagnostics
    assert result.matrix.pattern == Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert result.achieved_spectrum.oml() == OML((1, 1, 1, 1))
    assert result.certificates["SMP"]["holds"]


def test_lambda_bound(rng):
    for _ in range(50):
        n = int(rng.integers(1, 8))
        X = rng.normal(size=(n, n))
        M = X @ X.T + 0.1 * np.eye(n)
        b = rng.normal(size=n)
        report = lambda_bound_check(M, b)
        assert report["holds"]
        assert_allclose(M @ np.array(report["x"]), b, atol=1e-8)
    with pytest.raises(RealizationError):
        lambda_bound_check([[1.0, 0.0], [0.0, -1.0]], [1.0, 1.0])


def test_liberation_feasibility():
    path = PatternedMatrix([[1.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 4.0]])
    check = liberation_feasible(path, "SSP", [(1, 3)])
    assert check.feasible
    assert abs(check.witness[0]) > 0
    assert liberation_feasible(path, "SSP", []).feasible

    zero = PatternedMatrix(np.zeros((2, 2)))
    assert not liberation_feasible(zero, "SSP", [(1, 2)]).feasible
    with pytest.raises(RealizationError):
        liberation_feasible(path, "SSP", [(1, 2)])


def test_isospectral_lift_from_diagonal():
    result = realize_distinct(named("C4"), [4.0, 1.0, 3.0, 2.0])
    assert result.converged, result.diagnostics
    assert result.method == "diagonal_lift"
    assert result.matrix.pattern == named("C4")
    assert_allclose(result.achieved_spectrum.eigenvalues, [1, 2, 3, 4], atol=1e-8)


def test_isospectral_lift_rejects_bad_targets(rng):
    A = random_patterned(rng, named("K3"))
    with pytest.raises(RealizationError):
        isospectral_lift(A, named("P3"))
    with pytest.raises(RealizationError):
        isospectral_lift(A, named("K4"))
    with pytest.raises(RealizationError):
        realize_distinct(named("C4"), [1.0, 1.0, 2.0, 3.0])


def test_smp_lift_of_matrix_without_ssp():
    B = build_family("B12").matrix
    assert has_property(B, "SMP").holds
    assert not has_property(B, "SSP").holds
    assert (1, 3) not in B.pattern.edges
    H = Graph.from_edges(12, sorted(B.pattern.edges | {(1, 3)}))
    with pytest.raises(RealizationError):
        isospectral_lift(B, H, require="ssp")

    result = isospectral_lift(B, H, require="smp")
    assert result.converged, result.diagnostics
    assert result.matrix.pattern == H
    assert result.achieved_spectrum.oml() == OML((3, 5, 4))
    assert result.certificates["SMP"]["holds"]


def test_lift_rejects_sap():
    A = PatternedMatrix(np.diag([1.0, 2.0, 3.0]))
    with pytest.raises(RealizationError):
        isospectral_lift(A, named("P3"), require="sap")


def test_minor_monotone_lift_through_subgraph(rng):
    A = random_patterned(rng, named("K3"))
    result = minor_monotone_lift(A, named("Dmnd"))
    assert result.converged, result.diagnostics
    assert result.matrix.pattern == named("Dmnd")
    assert result.diagnostics["contains_original_spectrum"]


def test_minor_monotone_lift_through_contraction(rng):
    A = random_patterned(rng, named("K3"))
    result = minor_monotone_lift(A, named("C4"))
    assert result.converged, result.diagnostics
    assert result.matrix.pattern == named("C4")
    assert result.diagnostics["contains_original_spectrum"]
    assert any(step["op"] == "contract_edge" for step in result.diagnostics["steps"])


def test_minor_monotone_lift_requires_minor(rng):
    A = random_patterned(rng, named("K4"))
    with pytest.raises(RealizationError):
        minor_monotone_lift(A, named("C5"))


def test_certify_existing_matrix():
    family = build_family("C4_TABLE1")
    ok = certify(family.matrix, named("C4"), family.expected_spectrum, method="check")
    assert ok.converged
    assert ok.certificates["SSP"]["holds"]

    wrong = certify(family.matrix, named("C4"), [-2.0, -1.0, 1.0, 2.0])
    assert not wrong.converged
    assert wrong.spectral_residual > 0.5

    plain = certify(family.matrix.entries, named("C4"), family.expected_spectrum, require=None)
    assert plain.converged and plain.certificates == {}

    with pytest.raises(RealizationError):
        certify(family.matrix, named("K3"), [0.0, 0.0, 0.0])

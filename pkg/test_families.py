"""
Тесты семейств матриц: эталонные спектры, SSP, решатели параметров
"""

from math import sqrt

import numpy as np
import pytest
from numpy.testing import assert_allclose

from data.named_graphs import get_named_graph
from utils.families import (FamilyDomainError, build_family, butterfly_rank2_for_spectrum,
                            complete_for_spectrum, m1_eigenvalues, m1_for_spectrum, m2_for_spectrum,
                            m3_for_spectrum, m4_for_spectrum, m5_for_spectrum, solve_m1, solve_m4,
                            star_for_spectrum, two_point)
from utils.graphs import is_isomorphic
from utils.matrices import OrderedMultiplicityList, spectrum
from utils.strong import has_property

OML = OrderedMultiplicityList

GOLDEN = [
    ("C4_TABLE1", {}, [-sqrt(2), -sqrt(2), sqrt(2), sqrt(2)], (2, 2)),
    ("K13_TABLE1", {"a": 1.0, "b": 1.0}, [(1 - sqrt(13)) / 2, 0, 0, (1 + sqrt(13)) / 2], (1, 2, 1)),
    ("K16_TABLE2", {}, [(-3 - sqrt(21)) / 2, 0, 0, (-3 + sqrt(21)) / 2, 1, 1, 4], (1, 2, 1, 2, 1)),
    ("S21111_TABLE2", {}, [(-3 - sqrt(13)) / 2, 0, 0, (-3 + sqrt(13)) / 2, 2, 2, 5], (1, 2, 1, 2, 1)),
    ("S2211_TABLE2", {}, [-3, 0, 0, 1, 2, 2, 4], (1, 2, 1, 2, 1)),
    ("M2", {"a": 1.0}, [-2, -2, 0, 0, 2], (2, 2, 1)),
    ("M3", {"a": 1.0}, [-2, -2, 0, 2, 2], (2, 1, 2)),
    ("M5", {"a": 1.0}, [0, 0, 0, 5, 5], (3, 2)),
    ("M5", {"a": 2.0}, [0, 0, 0, 5, 8], (3, 1, 1)),
    ("B12", {}, [-4] * 3 + [0] * 5 + [3] * 4, (3, 5, 4)),
    ("CAMPSTOOL_2DOUBLE", {}, [-2, 0, 0, 2, 2], (1, 2, 2)),
    ("HTREE_2DOUBLE", {}, [(1 - sqrt(29)) / 2, 0, 0, 1, 1, (1 + sqrt(29)) / 2], (1, 2, 2, 1)),
    ("SUN3_2DOUBLE", {}, [0, 0, (5 - sqrt(13)) / 2, 2, 2, (5 + sqrt(13)) / 2], (2, 1, 2, 1)),
    ("K3_K3_2DOUBLE", {}, [0, 0, 1, 1, 2, 3], (2, 2, 1, 1)),
]


@pytest.mark.parametrize("name,params,expected,multiplicities", GOLDEN)
def test_golden_spectra(name, params, expected, multiplicities):
    family = build_family(name, params)
    spec = spectrum(family.matrix)
    assert_allclose(spec.eigenvalues, sorted(expected), atol=1e-9)
    assert spec.oml() == OML(multiplicities)
    if family.expected_spectrum is not None:
        assert_allclose(spec.eigenvalues, family.expected_spectrum, atol=1e-9)


@pytest.mark.parametrize("name,params", [
    ("M1", {"t": t}) for t in (0.1, 0.3, 0.5, 0.7, 0.9)
] + [
    ("M2", {"a": a}) for a in (1.0, -0.5, 2.0)
] + [
    ("M3", {"a": a}) for a in (1.0, 0.5, -2.0)
] + [
    ("M4", {"a": 1.0, "b": 1.0, "c": 0.5}),
    ("M4", {"a": 0.0, "b": 1.0, "c": 0.3}),
    ("M5", {"a": 1.0}),
    ("M5", {"a": 5.0}),
    ("S222_2DOUBLE", {}),
    ("K3_K13_2DOUBLE", {}),
    ("K13_K13_2DOUBLE", {}),
])
def test_witnesses_have_ssp_with_margin(name, params):
    certificate = has_property(build_family(name, params).matrix, "SSP")
    assert certificate.holds
    assert certificate.sigma_p > 1e-6


def test_m1_double_eigenvalues():
    family = build_family("M1", {"t": 0.5})
    lam, mu = m1_eigenvalues(0.5)
    assert lam < mu < 0
    assert_allclose(spectrum(family.matrix).eigenvalues, [lam, lam, mu, mu, 0.0], atol=1e-12)
    assert is_isomorphic(family.matrix.pattern, get_named_graph("C5").graph)


def test_family_domain_errors():
    with pytest.raises(FamilyDomainError):
        build_family("M1", {"t": 1.5})
    with pytest.raises(FamilyDomainError):
        build_family("M5", {"a": 0.5})
    with pytest.raises(FamilyDomainError):
        build_family("M2", {"b": 1.0})
    with pytest.raises(FamilyDomainError):
        build_family("NOPE")


def test_solve_m1_hits_ratio():
    t, matrix = solve_m1(-3.0, -1.0)
    assert 0 < t < 1
    assert_allclose(spectrum(matrix).eigenvalues, [-3, -3, -1, -1, 0], atol=1e-9)
    with pytest.raises(FamilyDomainError):
        solve_m1(-1.0, -3.0)


def test_solve_m4_automatic_c():
    family = solve_m4(-3.0, 5.0)
    assert_allclose(spectrum(family.matrix).eigenvalues, [-3, 0, 0, 0, 5], atol=1e-9)
    with pytest.raises(FamilyDomainError):
        solve_m4(1.0, 2.0)


@pytest.mark.parametrize("solver,expected_oml", [
    (m1_for_spectrum, (2, 2, 1)),
    (m2_for_spectrum, (2, 2, 1)),
    (m3_for_spectrum, (2, 1, 2)),
    (m4_for_spectrum, (1, 3, 1)),
    (m5_for_spectrum, (3, 1, 1)),
])
def test_spectrum_recipes(solver, expected_oml):
    family = solver([-2.0, 1.0, 5.0])
    spec = spectrum(family.matrix)
    assert spec.oml() == OML(expected_oml)
    assert_allclose(spec.eigenvalues, family.expected_spectrum, atol=1e-8)
    assert has_property(family.matrix, "SSP").holds


def test_recipes_reject_unordered_targets():
    with pytest.raises(FamilyDomainError):
        m1_for_spectrum([1.0, -2.0, 5.0])


def test_star_recipe_without_smp():
    family = star_for_spectrum(4, [-1.0, 0.5, 3.0])
    spec = spectrum(family.matrix)
    assert spec.oml() == OML((1, 3, 1))
    assert_allclose(spec.eigenvalues, [-1.0, 0.5, 0.5, 0.5, 3.0], atol=1e-12)
    assert not has_property(family.matrix, "SMP").holds
    # Для K1_3 тот же рецепт дает SSP
    assert has_property(star_for_spectrum(3, [-1.0, 0.5, 3.0]).matrix, "SSP").holds


@pytest.mark.parametrize("shape", [(1, 3, 1), (3, 1, 1), (1, 1, 3)])
def test_butterfly_rank2(shape):
    family = butterfly_rank2_for_spectrum([-1.0, 2.0, 4.0], shape)
    spec = spectrum(family.matrix)
    assert spec.oml() == OML(shape)
    assert_allclose(spec.eigenvalues, family.expected_spectrum, atol=1e-9)
    assert is_isomorphic(family.matrix.pattern, get_named_graph("Butterfly").graph)
    assert not has_property(family.matrix, "SMP").holds


def test_two_point_and_complete_blocks():
    family = two_point("M5", [-1.0, 4.0], {"a": 1.0})
    assert_allclose(spectrum(family.matrix).eigenvalues, [-1, -1, -1, 4, 4], atol=1e-9)
    K = complete_for_spectrum(4, [1.0, 3.0], top_simple=False)
    assert_allclose(spectrum(K).eigenvalues, [1, 3, 3, 3], atol=1e-12)
    assert np.all(K.entries != 0)

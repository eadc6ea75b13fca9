"""
Явные семейства матриц с заданным спектром и решатели их параметров
"""

import logging
from dataclasses import dataclass, field
from math import sqrt
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg, optimize

from data.named_graphs import get_named_graph
from .graphs import is_isomorphic
from .matrices import PatternedMatrix, negate, scale_shift

logger = logging.getLogger(__name__)

SQRT2 = sqrt(2.0)


class FamilyDomainError(ValueError):
    """Параметры вне области определения семейства"""


@dataclass
class FamilyMatrix:
    """Экземпляр семейства: имя, параметры и построенная матрица"""
    name: str
    params: Dict[str, float]
    matrix: PatternedMatrix
    graph_name: str
    expected_spectrum: Optional[List[float]] = field(default=None)

    def to_dict(self) -> dict:
        return {
            "family": self.name,
            "params": self.params,
            "graph": self.graph_name,
            "matrix": self.matrix.to_json(),
            "expected_spectrum": self.expected_spectrum,
        }


# ---- Матрицы семейств ----

def _m1(t: float) -> np.ndarray:
    d1 = -t ** 4 + 2 * t ** 3 - t ** 2 - 1
    d3 = -t ** 2 * (t ** 2 - 2 * t + 2)
    u = -(t - 1) * t
    w = -(t - 1) * t ** 2
    s = (t - 1) ** 2 * t ** 2
    return np.array([
        [d1, 0, u, s, 0],
        [0, d1, 0, w, u],
        [u, 0, d3, 0, w],
        [s, w, 0, d3, 0],
        [0, u, w, 0, -2 * s],
    ])


def m1_eigenvalues(t: float) -> Tuple[float, float]:
    """Двойные собственные значения λ(t) < μ(t) < 0 матрицы M1(t)"""
    base = -3 * t ** 4 + 6 * t ** 3 - 4 * t ** 2 - 1
    root = (1 - t) * sqrt(t ** 6 - 2 * t ** 5 + 3 * t ** 4 + 3 * t ** 2 + 2 * t + 1)
    return (base - root) / 2, (base + root) / 2


def _m2(a: float) -> np.ndarray:
    return np.array([
        [-1, 1, -a, 0, 0],
        [1, -1, -a, 0, 0],
        [-a, -a, 2 * a ** 2 - 2, -a, -a],
        [0, 0, -a, 0, 0],
        [0, 0, -a, 0, 0],
    ])


def _m3(a: float) -> np.ndarray:
    return np.array([
        [1, -1, 0, 0, -a],
        [-1, 1, 0, 0, -a],
        [0, 0, -a ** 2, a ** 2, a],
        [0, 0, a ** 2, -a ** 2, a],
        [-a, -a, a, a, 2 - 2 * a ** 2],
    ])


def _m4(a: float, b: float, c: float) -> np.ndarray:
    return np.array([
        [a, 0, b, b, b],
        [0, -a * c ** 2, b * c, b * c, b * c],
        [b, b * c, 0, 0, 0],
        [b, b * c, 0, 0, 0],
        [b, b * c, 0, 0, 0],
    ])


def _m5(a: float) -> np.ndarray:
    return np.array([
        [a ** 2, 0, SQRT2 * a, a, a],
        [0, 1, -SQRT2, 1, 1],
        [SQRT2 * a, -SQRT2, 4, 0, 0],
        [a, 1, 0, 2, 2],
        [a, 1, 0, 2, 2],
    ])


def _b12() -> np.ndarray:
    r = SQRT2
    return np.array([
        [1, -1, 0, 0, 0, -1, r, 0, 0, 0, 0, 0],
        [-1, 1, -1, 0, 0, 0, 0, r, 0, 0, 0, 0],
        [0, -1, 1, -1, 0, 0, 0, 0, r, 0, 0, 0],
        [0, 0, -1, 1, -1, 0, r, 0, 0, 0, 0, 0],
        [0, 0, 0, -1, 1, -1, 0, r, 0, 0, 0, 0],
        [-1, 0, 0, 0, -1, 1, 0, 0, r, 0, 0, 0],
        [r, 0, 0, r, 0, 0, -2, 0, 0, 2, 0, 0],
        [0, r, 0, 0, r, 0, 0, -2, 0, 0, 2, 0],
        [0, 0, r, 0, 0, r, 0, 0, -2, 0, 0, 2],
        [0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 0, 0, 2, 0, 1, 0, 1],
        [0, 0, 0, 0, 0, 0, 0, 0, 2, 1, 1, 0],
    ])


def _star(k: int, a: float, b: float) -> np.ndarray:
    A = np.zeros((k + 1, k + 1))
    A[0, 0] = a
    A[0, 1:] = b
    A[1:, 0] = b
    return A


def _spider_with_diagonal(n: int, edges: List[Tuple[int, int]], weights: Sequence[float],
                          diagonal: Sequence[float]) -> np.ndarray:
    A = np.diag(np.array(diagonal, dtype=float))
    for (i, j), w in zip(edges, weights):
        A[i - 1, j - 1] = A[j - 1, i - 1] = w
    return A


def _butterfly_rank2(s: float, t: float, c: float) -> np.ndarray:
    p = sqrt((1 - c) / 2)
    u = np.array([p, p, 0, 0, sqrt(c)])
    v = np.array([0, 0, p, p, sqrt(c)])
    return s * np.outer(u, u) + t * np.outer(v, v)


def _k1_6() -> np.ndarray:
    A = np.diag([0, 1, 1, 1, 0, 0, 0]).astype(float)
    A[0, 1:] = A[1:, 0] = [1, 1, 1, 2, 2, 2]
    return A


def _s21111() -> np.ndarray:
    return np.array([
        [0, 1, 0, 3, 2, 1, 1],
        [1, 1, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0],
        [3, 0, 0, 2, 0, 0, 0],
        [2, 0, 0, 0, 2, 0, 0],
        [1, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 0],
    ], dtype=float)


def _s2211() -> np.ndarray:
    return np.array([
        [0, 2, 0, 2, 0, 1, SQRT2],
        [2, 1, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0],
        [2, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 1, 1, 0, 0],
        [1, 0, 0, 0, 0, 2, 0],
        [SQRT2, 0, 0, 0, 0, 0, 0],
    ])


def _htree() -> np.ndarray:
    edges = [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)]
    return _spider_with_diagonal(6, edges, [sqrt(3), 1, 1, 1, 1], [-1, 2, 0, 0, 1, 1])


def _sun3() -> np.ndarray:
    eye = np.eye(3)
    return np.block([[eye + np.ones((3, 3)), eye], [eye, eye]])


def _s222() -> np.ndarray:
    edges = [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]
    return _spider_with_diagonal(7, edges, [1] * 6, [0, 1, 1, 1, 1, 1, 1])


def _blocks(*parts: np.ndarray) -> np.ndarray:
    return linalg.block_diag(*parts)


def _s222_cubic_roots() -> List[float]:
    return sorted(np.roots([1, -2, -3, 3]).real.tolist())


def _quadratic_roots(p: float, q: float) -> List[float]:
    """Корни x² + p·x + q (дискриминант неотрицателен)"""
    disc = sqrt(max(p * p - 4 * q, 0.0))
    return [(-p - disc) / 2, (-p + disc) / 2]


_K13_ONE = _star(3, 1.0, 1.0)
_SQRT13, _SQRT21, _SQRT29 = sqrt(13), sqrt(21), sqrt(29)


@dataclass(frozen=True)
class FamilySpec:
    graph: str
    defaults: Dict[str, float]
    build: Callable[..., np.ndarray]
    check: Callable[[Dict[str, float]], Optional[str]]
    spectrum: Optional[Callable[..., List[float]]] = None


def _no_check(_: Dict[str, float]) -> Optional[str]:
    return None


def _check_m1(p):
    return None if 0 < p["t"] < 1 else "M1 требует 0 < t < 1"


def _check_nonzero_a(p):
    return None if p["a"] != 0 else "требуется a != 0"


def _check_m4(p):
    if p["b"] == 0:
        return "M4 требует b != 0"
    if p["c"] in (0, 1, -1):
        return "M4 требует c != 0, ±1"
    return None


def _check_m5(p):
    return None if p["a"] >= 1 else "M5 требует a >= 1"


def _check_star(p):
    if int(p["k"]) != p["k"] or p["k"] < 1:
        return "STAR требует целое k >= 1"
    return None if p["b"] != 0 else "STAR требует b != 0"


def _check_b_nonzero(p):
    return None if p["b"] != 0 else "требуется b != 0"


def _check_rank2(p):
    if p["s"] == 0 or p["t"] == 0:
        return "BUTTERFLY_RANK2 требует s != 0 и t != 0"
    return None if 0 < p["c"] < 1 else "BUTTERFLY_RANK2 требует 0 < c < 1"


FAMILIES: Dict[str, FamilySpec] = {
    "M1": FamilySpec("C5", {"t": 0.5}, lambda t: _m1(t), _check_m1,
                     lambda t: sorted([*m1_eigenvalues(t)] * 2 + [0.0])),
    "M2": FamilySpec("Campstool", {"a": 1.0}, lambda a: _m2(a), _check_nonzero_a,
                     lambda a: [-2.0, -2.0, 0.0, 0.0, 2 * a ** 2]),
    "M3": FamilySpec("Butterfly", {"a": 1.0}, lambda a: _m3(a), _check_nonzero_a,
                     lambda a: sorted([-2 * a ** 2, -2 * a ** 2, 0.0, 2.0, 2.0])),
    "M4": FamilySpec("K2_3", {"a": 1.0, "b": 1.0, "c": 0.5}, lambda a, b, c: _m4(a, b, c), _check_m4,
                     lambda a, b, c: sorted([0.0, 0.0, 0.0] + _quadratic_roots(
                         a * (c ** 2 - 1), -(a ** 2 * c ** 2 + 3 * b ** 2 * (1 + c ** 2))))),
    "M5": FamilySpec("(K4)_e", {"a": 1.0}, lambda a: _m5(a), _check_m5,
                     lambda a: [0.0, 0.0, 0.0, 5.0, 4 + a ** 2]),
    "B12": FamilySpec("", {}, lambda: _b12(), _no_check,
                      lambda: [-4.0] * 3 + [0.0] * 5 + [3.0] * 4),
    "C4_TABLE1": FamilySpec("C4", {}, lambda: np.array([[0, 1, 0, -1], [1, 0, 1, 0],
                                                       [0, 1, 0, 1], [-1, 0, 1, 0]], dtype=float),
                            _no_check, lambda: [-SQRT2, -SQRT2, SQRT2, SQRT2]),
    "K13_TABLE1": FamilySpec("K1_3", {"a": 1.0, "b": 1.0}, lambda a, b: _star(3, a, b), _check_b_nonzero,
                             lambda a, b: sorted([0.0, 0.0] + _quadratic_roots(-a, -3 * b ** 2))),
    "K16_TABLE2": FamilySpec("K1_6", {}, lambda: _k1_6(), _no_check,
                             lambda: [(-3 - _SQRT21) / 2, 0.0, 0.0, (-3 + _SQRT21) / 2, 1.0, 1.0, 4.0]),
    "S21111_TABLE2": FamilySpec("S(2,1,1,1,1)", {}, lambda: _s21111(), _no_check,
                                lambda: [(-3 - _SQRT13) / 2, 0.0, 0.0, (_SQRT13 - 3) / 2, 2.0, 2.0, 5.0]),
    "S2211_TABLE2": FamilySpec("S(2,2,1,1)", {}, lambda: _s2211(), _no_check,
                               lambda: [-3.0, 0.0, 0.0, 1.0, 2.0, 2.0, 4.0]),
    # Матрицы с двумя двойными собственными значениями для остальных минимальных миноров
    "CAMPSTOOL_2DOUBLE": FamilySpec("Campstool", {}, lambda: -_m2(1.0), _no_check,
                                    lambda: [-2.0, 0.0, 0.0, 2.0, 2.0]),
    "HTREE_2DOUBLE": FamilySpec("H-tree", {}, lambda: _htree(), _no_check,
                                lambda: [(1 - _SQRT29) / 2, 0.0, 0.0, 1.0, 1.0, (1 + _SQRT29) / 2]),
    "SUN3_2DOUBLE": FamilySpec("3-sun", {}, lambda: _sun3(), _no_check,
                               lambda: [0.0, 0.0, (5 - _SQRT13) / 2, 2.0, 2.0, (5 + _SQRT13) / 2]),
    "S222_2DOUBLE": FamilySpec("S(2,2,2)", {}, lambda: _s222(), _no_check,
                               lambda: sorted(_s222_cubic_roots() + [0.0, 0.0, 2.0, 2.0])),
    "K3_K3_2DOUBLE": FamilySpec("K3+K3", {}, lambda: _blocks(np.ones((3, 3)), np.ones((3, 3)) / 3 + np.eye(3)),
                                _no_check, lambda: [0.0, 0.0, 1.0, 1.0, 2.0, 3.0]),
    "K3_K13_2DOUBLE": FamilySpec("K3+K1_3", {}, lambda: _blocks(2 * np.ones((3, 3)) / 3 + np.eye(3), _K13_ONE),
                                 _no_check,
                                 lambda: sorted([1.0, 1.0, 3.0, (1 - _SQRT13) / 2, 0.0, 0.0, (1 + _SQRT13) / 2])),
    "K13_K13_2DOUBLE": FamilySpec("K1_3+K1_3", {}, lambda: _blocks(_K13_ONE, _K13_ONE + np.eye(4)), _no_check,
                                  lambda: sorted([(1 - _SQRT13) / 2, 0.0, 0.0, (1 + _SQRT13) / 2,
                                                  (3 - _SQRT13) / 2, 1.0, 1.0, (3 + _SQRT13) / 2])),
    "STAR": FamilySpec("", {"k": 4, "a": 1.0, "b": 1.0}, lambda k, a, b: _star(int(k), a, b), _check_star,
                       lambda k, a, b: sorted([0.0] * (int(k) - 1) + _quadratic_roots(-a, -k * b ** 2))),
    "BUTTERFLY_RANK2": FamilySpec("Butterfly", {"s": 1.0, "t": 2.0, "c": 0.5},
                                  lambda s, t, c: _butterfly_rank2(s, t, c), _check_rank2),
}


def build_family(name: str, params: Optional[Dict[str, float]] = None) -> FamilyMatrix:
    """
    Построить матрицу семейства с данными параметрами.

    Args:
        name: имя семейства (M1..M5, B12, C4_TABLE1, ...)
        params: параметры; отсутствующие берутся по умолчанию

    Returns:
        FamilyMatrix, граф которой изоморфен заявленному графу семейства

    Raises:
        FamilyDomainError: неизвестное семейство или параметры вне области
    """
    key = name.strip().upper()
    if key not in FAMILIES:
        raise FamilyDomainError(f"Неизвестное семейство '{name}' (доступны: {', '.join(FAMILIES)})")
    spec = FAMILIES[key]
    params = dict(params or {})
    unknown = set(params) - set(spec.defaults)
    if unknown:
        raise FamilyDomainError(f"{key}: неизвестные параметры {sorted(unknown)}")
    values = {**spec.defaults, **{k: float(v) for k, v in params.items()}}
    problem = spec.check(values)
    if problem:
        raise FamilyDomainError(f"{key}: {problem}")

    matrix = PatternedMatrix(spec.build(**values))
    graph_name = spec.graph
    if key == "B12":
        graph_name = "H12"
    elif key == "STAR":
        graph_name = f"K1_{int(values['k'])}"
    if graph_name != "H12":
        stated = get_named_graph(graph_name).graph
        if not is_isomorphic(matrix.pattern, stated):
            raise FamilyDomainError(f"{key}: граф матрицы не совпадает с {graph_name} при параметрах {values}")

    expected = spec.spectrum(**values) if spec.spectrum else None
    return FamilyMatrix(key, values, matrix, graph_name, expected)


# ---- Решатели параметров ----

def _ordered(values: Sequence[float], count: int) -> List[float]:
    nu = [float(x) for x in values]
    if len(nu) != count or any(b <= a for a, b in zip(nu, nu[1:])):
        raise FamilyDomainError(f"Нужно {count} строго возрастающих значений, получено {values}")
    return nu


def solve_m1(alpha1: float, alpha2: float) -> Tuple[float, PatternedMatrix]:
    """
    Подобрать t так, что μ(t)/λ(t) = alpha2/alpha1, и отмасштабировать M1(t).

    Args:
        alpha1, alpha2: alpha1 < alpha2 < 0

    Returns:
        (t, матрица со спектром {alpha1, alpha1, alpha2, alpha2, 0})
    """
    if not alpha1 < alpha2 < 0:
        raise FamilyDomainError("solve_m1 требует alpha1 < alpha2 < 0")
    ratio = alpha2 / alpha1

    def gap(t: float) -> float:
        lam, mu = m1_eigenvalues(t)
        return mu / lam - ratio

    lo, hi = 1e-12, 1 - 1e-12
    t = optimize.brentq(gap, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    if abs(gap(t)) >= 1e-12:
        raise FamilyDomainError(f"solve_m1: не удалось достичь отношения {ratio} (остаток {gap(t):.2e})")
    lam, _ = m1_eigenvalues(t)
    scale = alpha1 / lam
    logger.debug(f"🔄 solve_m1: t={t:.15g}, масштаб {scale:.6g}")
    return t, PatternedMatrix(scale * _m1(t))


def _m4_feasible(lam: float, mu: float, c: float) -> bool:
    return (-c ** 4 * lam * mu - c ** 2 * lam ** 2 - c ** 2 * mu ** 2 - lam * mu > 0
            and c ** 6 - c ** 4 - c ** 2 + 1 > 0)


def solve_m4(lam: float, mu: float, c: Optional[float] = None) -> FamilyMatrix:
    """
    M4 со спектром {λ, 0, 0, 0, μ} для λ·μ < 0.

    В автоматическом режиме c = 0.5 уменьшается вдвое до выполнения ограничений.
    """
    if lam * mu >= 0:
        raise FamilyDomainError("solve_m4 требует собственные значения разных знаков")
    if c is None:
        c = 0.5
        for _ in range(60):
            if _m4_feasible(lam, mu, c):
                break
            c /= 2
        else:
            logger.warning(f"⚠️ solve_m4: допустимое c не найдено для λ={lam}, μ={mu}")
            raise FamilyDomainError("solve_m4: не найдено допустимое c")
    elif not _m4_feasible(lam, mu, c):
        raise FamilyDomainError(f"solve_m4: c={c} нарушает ограничения для λ={lam}, μ={mu}")

    a = (-lam - mu) / (c ** 2 - 1)
    b = sqrt(-c ** 4 * lam * mu - c ** 2 * lam ** 2 - c ** 2 * mu ** 2 - lam * mu) / (
        sqrt(3) * sqrt(c ** 6 - c ** 4 - c ** 2 + 1))
    family = build_family("M4", {"a": a, "b": b, "c": c})
    family.expected_spectrum = sorted([lam, 0.0, 0.0, 0.0, mu])
    return family


def _shifted(family: FamilyMatrix, shift: float, targets: Sequence[float]) -> FamilyMatrix:
    if shift:
        family.matrix = PatternedMatrix(family.matrix.entries + shift * np.eye(family.matrix.n))
    family.expected_spectrum = sorted(targets)
    return family


def m1_for_spectrum(nu: Sequence[float]) -> FamilyMatrix:
    """C5, (2,2,1): двойные ν1, ν2 и простое ν3"""
    n1, n2, n3 = _ordered(nu, 3)
    t, matrix = solve_m1(n1 - n3, n2 - n3)
    family = FamilyMatrix("M1", {"t": t}, matrix, "C5")
    return _shifted(family, n3, [n1, n1, n2, n2, n3])


def m2_for_spectrum(nu: Sequence[float]) -> FamilyMatrix:
    """Campstool, (2,2,1)"""
    n1, n2, n3 = _ordered(nu, 3)
    family = build_family("M2", {"a": sqrt((n3 - n2) / (n2 - n1))})
    d = (n2 - n1) / 2
    family.matrix = PatternedMatrix(d * (family.matrix.entries + 2 * np.eye(5)) + n1 * np.eye(5))
    family.expected_spectrum = [n1, n1, n2, n2, n3]
    return family


def m3_for_spectrum(nu: Sequence[float]) -> FamilyMatrix:
    """Butterfly, (2,1,2)"""
    n1, n2, n3 = _ordered(nu, 3)
    family = build_family("M3", {"a": sqrt((n2 - n1) / (n3 - n2))})
    d = (n3 - n2) / 2
    family.matrix = PatternedMatrix(d * family.matrix.entries + n2 * np.eye(5))
    family.expected_spectrum = [n1, n1, n2, n3, n3]
    return family


def m4_for_spectrum(nu: Sequence[float]) -> FamilyMatrix:
    """K2_3, (1,3,1)"""
    n1, n2, n3 = _ordered(nu, 3)
    return _shifted(solve_m4(n1 - n2, n3 - n2), n2, [n1, n2, n2, n2, n3])


def m5_for_spectrum(nu: Sequence[float]) -> FamilyMatrix:
    """(K4)_e, (3,1,1) через a > 1"""
    n1, n2, n3 = _ordered(nu, 3)
    family = build_family("M5", {"a": sqrt(5 * (n3 - n1) / (n2 - n1) - 4)})
    d = (n2 - n1) / 5
    family.matrix = PatternedMatrix(d * family.matrix.entries + n1 * np.eye(5))
    family.expected_spectrum = [n1, n1, n1, n2, n3]
    return family


def star_for_spectrum(k: int, nu: Sequence[float]) -> FamilyMatrix:
    """K1_k, (1, k-1, 1): a = λ + μ, b = sqrt(-λμ/k) после сдвига на ν2"""
    n1, n2, n3 = _ordered(nu, 3)
    lam, mu = n1 - n2, n3 - n2
    family = build_family("STAR", {"k": k, "a": lam + mu, "b": sqrt(-lam * mu / k)})
    return _shifted(family, n2, [n1] + [n2] * (k - 1) + [n3])


def two_point(name: str, nu: Sequence[float], params: Optional[Dict[str, float]] = None) -> FamilyMatrix:
    """Масштаб и сдвиг матрицы с двумя различными собственными значениями"""
    n1, n2 = _ordered(nu, 2)
    family = build_family(name, params)
    eigs = np.linalg.eigvalsh(family.matrix.entries)
    lo, hi = float(eigs[0]), float(eigs[-1])
    family.matrix = scale_shift(family.matrix, lo, hi, n1, n2)
    family.expected_spectrum = sorted(n1 if abs(x - lo) < abs(x - hi) else n2 for x in eigs)
    return family


def complete_for_spectrum(n: int, nu: Sequence[float], top_simple: bool = True) -> PatternedMatrix:
    """K_n: J_n после масштаба и сдвига, (n-1, 1) или (1, n-1)"""
    n1, n2 = _ordered(nu, 2)
    J = np.ones((n, n))
    if top_simple:
        return PatternedMatrix((n2 - n1) / n * J + n1 * np.eye(n))
    return PatternedMatrix((n1 - n2) / n * J + n2 * np.eye(n))


def butterfly_rank2_for_spectrum(nu: Sequence[float], shape: Sequence[int]) -> FamilyMatrix:
    """
    Butterfly без SMP: s·uuᵀ + t·vvᵀ для (1,3,1), (3,1,1) и (1,1,3).
    """
    shape = tuple(shape)
    n1, n2, n3 = _ordered(nu, 3)
    if shape == (1, 1, 3):
        family = butterfly_rank2_for_spectrum([-n3, -n2, -n1], (3, 1, 1))
        family.matrix = negate(family.matrix)
        family.expected_spectrum = [n1, n2, n3, n3, n3]
        return family
    if shape == (1, 3, 1):
        base, lam, mu = n2, n1 - n2, n3 - n2
        c = 0.5
    elif shape == (3, 1, 1):
        base, lam, mu = n1, n2 - n1, n3 - n1
        c = 0.5 * (mu - lam) / (mu + lam)
    else:
        raise FamilyDomainError(f"BUTTERFLY_RANK2 не реализует {shape}")

    total, product = lam + mu, lam * mu / (1 - c ** 2)
    disc = sqrt(total ** 2 - 4 * product)
    s, t = (total + disc) / 2, (total - disc) / 2
    family = build_family("BUTTERFLY_RANK2", {"s": s, "t": t, "c": c})
    family.matrix = PatternedMatrix(family.matrix.entries + base * np.eye(5))
    family.expected_spectrum = sorted([base] * 3 + [base + lam, base + mu])
    return family

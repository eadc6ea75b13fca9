"""
Симметричные матрицы с шаблоном графа, спектры и упорядоченные списки кратностей
"""

import logging
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from .config import Config
from .graphs import Graph, cycle_vertices

logger = logging.getLogger(__name__)

ArrayLike = Union[np.ndarray, Sequence[Sequence[float]]]


class MatrixError(ValueError):
    """Некорректная матрица или нарушение предусловия операции"""


def _as_square(A: ArrayLike) -> np.ndarray:
    data = np.array(A, dtype=float)
    if data.ndim != 2 or data.shape[0] != data.shape[1]:
        raise MatrixError(f"Ожидается квадратная матрица, получена форма {data.shape}")
    if not np.all(np.isfinite(data)):
        raise MatrixError("Матрица содержит нечисловые значения")
    return data


def _check_symmetric(data: np.ndarray):
    scale = max(1.0, float(np.max(np.abs(data)))) if data.size else 1.0
    deviation = float(np.max(np.abs(data - data.T))) if data.size else 0.0
    if deviation > Config.SYMMETRY_TOL * scale:
        raise MatrixError(f"Матрица не симметрична: max|A - Aᵀ| = {deviation:.3e}")


def graph_of(A: ArrayLike, zero_tol: Optional[float] = None) -> Graph:
    """
    Граф симметричной матрицы: ребро ij при i != j и |a_ij| > zero_tol.

    Args:
        A: симметричная матрица
        zero_tol: порог нуля (по умолчанию Config.ZERO_TOL)

    Returns:
        Graph на вершинах 1..n
    """
    data = A.entries if isinstance(A, PatternedMatrix) else _as_square(A)
    _check_symmetric(data)
    tol = Config.ZERO_TOL if zero_tol is None else zero_tol
    rows, cols = np.nonzero(np.triu(np.abs(data) > tol, k=1))
    return Graph.from_edges(data.shape[0], [(i + 1, j + 1) for i, j in zip(rows, cols)])


class PatternedMatrix:
    """
    Вещественная симметричная матрица вместе с ее графом.

    Два режима построения: строгий (передан pattern, граф матрицы обязан с ним
    совпасть) и выводимый (граф считывается с матрицы по zero_tol).
    """

    def __init__(self, entries: ArrayLike, pattern: Optional[Graph] = None,
                 zero_tol: Optional[float] = None):
        data = _as_square(entries)
        _check_symmetric(data)
        upper = np.triu(data)
        data = upper + np.triu(data, k=1).T
        data.setflags(write=False)

        self.zero_tol = Config.ZERO_TOL if zero_tol is None else float(zero_tol)
        self._entries = data
        inferred = graph_of(data, self.zero_tol)
        if pattern is not None:
            if pattern.n != inferred.n or pattern.edges != inferred.edges:
                missing = sorted(pattern.edges - inferred.edges)
                extra = sorted(inferred.edges - pattern.edges)
                raise MatrixError(
                    f"Матрица не соответствует шаблону: нет ребер {missing}, лишние ребра {extra}"
                )
        self.pattern = inferred

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    def principal(self, vertices: Iterable[int]) -> "PatternedMatrix":
        """Главная подматрица на вершинах (нумерация с 1)"""
        keep = [v - 1 for v in sorted(set(vertices))]
        return PatternedMatrix(self._entries[np.ix_(keep, keep)], zero_tol=self.zero_tol)

    def delete(self, v: int) -> "PatternedMatrix":
        """A(v): удаление строки и столбца v"""
        return self.principal(u for u in range(1, self.n + 1) if u != v)

    def permuted(self, order: Sequence[int]) -> "PatternedMatrix":
        """PAPᵀ: новая вершина k+1 соответствует старой вершине order[k]"""
        idx = [v - 1 for v in order]
        if sorted(idx) != list(range(self.n)):
            raise MatrixError("order должен быть перестановкой 1..n")
        return PatternedMatrix(self._entries[np.ix_(idx, idx)], zero_tol=self.zero_tol)

    def direct_sum(self, other: Union["PatternedMatrix", ArrayLike]) -> "PatternedMatrix":
        block = other.entries if isinstance(other, PatternedMatrix) else _as_square(other)
        return PatternedMatrix(linalg.block_diag(self._entries, block), zero_tol=self.zero_tol)

    # ---- JSON ----

    def to_json(self, form: str = "rows") -> dict:
        """Плотная форма или верхний треугольник в лексикографическом порядке (i<=j)"""
        if form == "upper":
            return {"n": self.n, "upper": self._entries[np.triu_indices(self.n)].tolist()}
        return {"n": self.n, "rows": self._entries.tolist()}

    @classmethod
    def from_json(cls, data: dict, pattern: Optional[Graph] = None,
                  zero_tol: Optional[float] = None) -> "PatternedMatrix":
        if "n" not in data:
            raise MatrixError("JSON матрицы должен содержать поле 'n'")
        n = int(data["n"])
        if "rows" in data:
            entries = np.array(data["rows"], dtype=float)
            if entries.shape != (n, n):
                raise MatrixError(f"Поле 'rows' должно иметь форму {n}x{n}, получено {entries.shape}")
        elif "upper" in data:
            upper = np.array(data["upper"], dtype=float)
            if upper.shape != (n * (n + 1) // 2,):
                raise MatrixError(f"Поле 'upper' должно содержать {n * (n + 1) // 2} чисел")
            entries = np.zeros((n, n))
            entries[np.triu_indices(n)] = upper
            entries = entries + np.triu(entries, k=1).T
        else:
            raise MatrixError("JSON матрицы должен содержать 'rows' или 'upper'")
        return cls(entries, pattern=pattern, zero_tol=zero_tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PatternedMatrix):
            return NotImplemented
        return self.pattern == other.pattern and np.array_equal(self._entries, other._entries)

    def __repr__(self) -> str:
        return f"PatternedMatrix(n={self.n}, edges={self.pattern.m})"


def _entries(A: Union[PatternedMatrix, ArrayLike]) -> np.ndarray:
    if isinstance(A, PatternedMatrix):
        return A.entries
    data = _as_square(A)
    _check_symmetric(data)
    return data


@dataclass(frozen=True)
class OrderedMultiplicityList:
    """Кратности различных собственных значений по возрастанию"""

    multiplicities: Tuple[int, ...]

    def __post_init__(self):
        if not self.multiplicities:
            raise MatrixError("Список кратностей не может быть пустым")
        if any(int(m) != m or m < 1 for m in self.multiplicities):
            raise MatrixError(f"Кратности должны быть целыми >= 1: {self.multiplicities}")

    @classmethod
    def of(cls, values: Iterable[int]) -> "OrderedMultiplicityList":
        return cls(tuple(int(m) for m in values))

    @classmethod
    def parse(cls, text: str) -> "OrderedMultiplicityList":
        """'2,2,1', '(2,2,1)' или компактно '221' (только однозначные кратности)"""
        s = text.strip().strip('()[]').replace(' ', '')
        if not s:
            raise MatrixError("Пустой список кратностей")
        if re.fullmatch(r'\d+(,\d+)*', s) and ',' in s:
            return cls.of(s.split(','))
        if re.fullmatch(r'\d+', s):
            return cls.of(s)
        raise MatrixError(f"Некорректный список кратностей: '{text}'")

    @property
    def order(self) -> int:
        return sum(self.multiplicities)

    @property
    def q(self) -> int:
        return len(self.multiplicities)

    def reversed(self) -> "OrderedMultiplicityList":
        return OrderedMultiplicityList(tuple(reversed(self.multiplicities)))

    def key(self) -> str:
        return ','.join(str(m) for m in self.multiplicities)

    def to_list(self) -> List[int]:
        return list(self.multiplicities)

    def __str__(self) -> str:
        return f"({self.key()})"


OML = OrderedMultiplicityList


@dataclass(frozen=True)
class Spectrum:
    """Отсортированные собственные значения и их кластеры (представитель, кратность)"""

    eigenvalues: Tuple[float, ...]
    clusters: Tuple[Tuple[float, int], ...]
    cluster_tol: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def q(self) -> int:
        return len(self.clusters)

    @property
    def distinct(self) -> List[float]:
        return [value for value, _ in self.clusters]

    @property
    def rho(self) -> float:
        return max((abs(x) for x in self.eigenvalues), default=0.0)

    def oml(self) -> OrderedMultiplicityList:
        return OrderedMultiplicityList(tuple(m for _, m in self.clusters))

    def multiplicity_of(self, value: float, tol: Optional[float] = None) -> int:
        tol = self.cluster_tol if tol is None else tol
        return sum(1 for x in self.eigenvalues if abs(x - value) <= tol)

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(f"{x:.15g}") for x in self.eigenvalues],
            "clusters": [{"value": float(f"{v:.15g}"), "multiplicity": m} for v, m in self.clusters],
            "oml": self.oml().to_list(),
            "cluster_tol": self.cluster_tol,
        }


def default_cluster_tol(eigenvalues: Sequence[float]) -> float:
    rho = max((abs(x) for x in eigenvalues), default=0.0)
    return Config.CLUSTER_TOL * max(1.0, rho)


def cluster_values(values: Sequence[float], cluster_tol: Optional[float] = None) -> Spectrum:
    """Жадная кластеризация отсортированных значений по абсолютному зазору"""
    ordered = sorted(float(x) for x in values)
    tol = default_cluster_tol(ordered) if cluster_tol is None else float(cluster_tol)
    groups: List[List[float]] = []
    for x in ordered:
        if groups and x - groups[-1][-1] <= tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    clusters = tuple((float(np.mean(g)), len(g)) for g in groups)
    return Spectrum(eigenvalues=tuple(ordered), clusters=clusters, cluster_tol=tol)


def eigenvalues(A: Union[PatternedMatrix, ArrayLike]) -> np.ndarray:
    data = _entries(A)
    if data.shape[0] == 0:
        return np.zeros(0)
    try:
        return linalg.eigvalsh(data)
    except (linalg.LinAlgError, ValueError) as e:
        raise MatrixError(f"Ошибка вычисления собственных значений: {e}") from e


def spectrum(A: Union[PatternedMatrix, ArrayLike], cluster_tol: Optional[float] = None) -> Spectrum:
    """
    Спектр с кластеризацией.

    Args:
        A: симметричная матрица
        cluster_tol: абсолютный порог зазора; по умолчанию Config.CLUSTER_TOL * max(1, ρ(A))

    Returns:
        Spectrum
    """
    return cluster_values(eigenvalues(A), cluster_tol)


def oml(A: Union[PatternedMatrix, ArrayLike], cluster_tol: Optional[float] = None) -> OrderedMultiplicityList:
    return spectrum(A, cluster_tol).oml()


def multiplicity(A: Union[PatternedMatrix, ArrayLike], value: float, tol: Optional[float] = None) -> int:
    """Число собственных значений с |eig - value| <= tol (значение задано пользователем)"""
    eigs = eigenvalues(A)
    tol = default_cluster_tol(eigs) if tol is None else tol
    return int(np.sum(np.abs(eigs - value) <= tol))


def spectral_distance(achieved: Sequence[float], target: Sequence[float]) -> float:
    """Максимальное отклонение после оптимального сопоставления (сортировкой)"""
    a, b = np.sort(np.asarray(achieved, dtype=float)), np.sort(np.asarray(target, dtype=float))
    if a.shape != b.shape:
        raise MatrixError(f"Спектры разной длины: {a.size} и {b.size}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def scale_shift(A: PatternedMatrix, l1: float, l2: float, m1: float, m2: float) -> PatternedMatrix:
    """
    Масштаб и сдвиг: B = ((m2-m1)/(l2-l1))(A - l1·I) + m1·I.

    Собственное значение λ переходит в ((m2-m1)/(l2-l1))(λ - l1) + m1; шаблон не меняется;
    если масштаб опускает ребро ниже zero_tol, возникает MatrixError.
    """
    if l1 == l2:
        raise MatrixError("scale_shift: l1 и l2 должны различаться")
    if m1 == m2:
        raise MatrixError("scale_shift: m1 и m2 должны различаться (иначе шаблон теряется)")
    if (l1, l2) == (m1, m2):
        return A
    c = (m2 - m1) / (l2 - l1)
    eye = np.eye(A.n)
    return PatternedMatrix(c * (A.entries - l1 * eye) + m1 * eye, pattern=A.pattern, zero_tol=A.zero_tol)


def negate(A: PatternedMatrix) -> PatternedMatrix:
    return PatternedMatrix(-A.entries, pattern=A.pattern, zero_tol=A.zero_tol)


# ---- Факты о деревьях и унициклических графах ----

def parter_wiener_witness(A: PatternedMatrix, value: float,
                          tol: Optional[float] = None) -> Optional[int]:
    """
    Вершина Парте́ра–Винера для кратного собственного значения матрицы дерева.

    Возвращает v, для которой кратность value в A(v) на единицу больше, чем в A,
    и value является собственным значением не менее чем трех ветвей T - v.

    Raises:
        MatrixError: шаблон не дерево или value не кратное собственное значение
    """
    T = A.pattern
    if not T.is_tree():
        raise MatrixError("parter_wiener_witness: граф матрицы должен быть деревом")
    eigs = eigenvalues(A)
    tol = default_cluster_tol(eigs) if tol is None else tol
    mult = int(np.sum(np.abs(eigs - value) <= tol))
    if mult < 2:
        raise MatrixError(f"Значение {value} не является кратным собственным значением (кратность {mult})")

    candidates = sorted(T.vertices, key=lambda v: -T.degree(v))
    for v in candidates:
        if T.degree(v) < 3:
            continue
        if multiplicity(A.delete(v), value, tol) != mult + 1:
            continue
        rest = [u for u in T.vertices if u != v]
        branches = T.induced(rest).components()
        hits = sum(1 for comp in branches
                   if multiplicity(A.principal(rest[k - 1] for k in comp), value, tol) >= 1)
        if hits >= 3:
            return v

    logger.warning(f"⚠️ Вершина Партера–Винера не найдена для λ={value} (вероятно, допуск {tol:.1e})")
    return None


def _classify_for_extremes(G: Graph) -> str:
    if G.is_tree():
        return "tree"
    if G.is_connected() and G.m == G.n and len(cycle_vertices(G)) % 2 == 1:
        return "odd_unicyclic"
    raise MatrixError("Проверка крайних собственных значений применима только к деревьям "
                      "и связным унициклическим графам с нечетным циклом")


def extreme_simplicity_check(A: PatternedMatrix, cluster_tol: Optional[float] = None) -> dict:
    """
    Простота крайних собственных значений: у дерева оба крайних простые,
    у нечетного унициклического хотя бы одно.
    """
    kind = _classify_for_extremes(A.pattern)
    spec = spectrum(A, cluster_tol)
    first, last = spec.clusters[0][1], spec.clusters[-1][1]
    if kind == "tree":
        holds = first == 1 and last == 1
    else:
        holds = first == 1 or last == 1
    report = {
        "class": kind,
        "rule": "both_simple" if kind == "tree" else "one_simple",
        "first_multiplicity": first,
        "last_multiplicity": last,
        "oml": spec.oml().to_list(),
        "cluster_tol": spec.cluster_tol,
        "holds": holds,
    }
    if not holds:
        logger.warning(f"⚠️ Нарушена простота крайних собственных значений: {report}")
    return report


def sign_normalize(A: PatternedMatrix) -> Tuple[np.ndarray, PatternedMatrix]:
    """
    Диагональная ±1 матрица D (вектором) и B = DAD с неотрицательными
    внедиагональными элементами на остовном лесе графа.

    Raises:
        MatrixError: у компоненты графа больше одного цикла
    """
    G = A.pattern
    for comp in G.components():
        if G.induced(comp).cyclomatic_number() > 1:
            raise MatrixError("sign_normalize: каждая компонента должна быть деревом или унициклической")

    data = A.entries
    signs = np.zeros(A.n)
    for comp in G.components():
        root = comp[0]
        signs[root - 1] = 1.0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in sorted(G.neighbors(v)):
                if signs[u - 1] == 0:
                    signs[u - 1] = signs[v - 1] * np.sign(data[v - 1, u - 1])
                    queue.append(u)
    B = PatternedMatrix(signs[:, None] * data * signs[None, :], zero_tol=A.zero_tol)
    return signs, B

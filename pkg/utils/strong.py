"""
Сильные свойства (SSP, SMP, SAP): матрицы касательных пространств,
проверочные матрицы и ранговый критерий
"""

import logging
from dataclasses import asdict, dataclass
from enum import Enum
from math import comb
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from .config import Config
from .matrices import OrderedMultiplicityList, PatternedMatrix, spectrum

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class StrongProperty(str, Enum):
    SSP = "SSP"
    SMP = "SMP"
    SAP = "SAP"

    @classmethod
    def parse(cls, value: Union[str, "StrongProperty"]) -> "StrongProperty":
        if isinstance(value, StrongProperty):
            return value
        try:
            return cls(str(value).strip().upper())
        except ValueError:
            raise ValueError(f"Неизвестное свойство '{value}' (доступны: SSP, SMP, SAP)") from None


def upper_pairs(n: int) -> List[Pair]:
    """Индексы vect: пары (i, j), 1 <= i <= j <= n, лексикографически"""
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def vect(M: np.ndarray) -> np.ndarray:
    return M[np.triu_indices(M.shape[0])]


@dataclass(frozen=True)
class TangentSpaceMatrix:
    kind: StrongProperty
    n: int
    columns: Tuple[object, ...]
    data: np.ndarray

    @property
    def rows(self) -> List[Pair]:
        return upper_pairs(self.n)


@dataclass(frozen=True)
class VerificationMatrix:
    kind: StrongProperty
    nonedges: Tuple[Pair, ...]
    data: np.ndarray

    @property
    def p(self) -> int:
        return len(self.nonedges)


def tss(A: PatternedMatrix) -> TangentSpaceMatrix:
    """Столбец (k, l), k < l: vect(A·K_kl - K_kl·A), K_kl = E_kl - E_lk"""
    M = A.entries
    n = A.n
    columns = [(k, l) for k in range(1, n + 1) for l in range(k + 1, n + 1)]
    data = np.zeros((n * (n + 1) // 2, len(columns)))
    for c, (k, l) in enumerate(columns):
        K = np.zeros((n, n))
        K[k - 1, l - 1], K[l - 1, k - 1] = 1.0, -1.0
        data[:, c] = vect(M @ K - K @ M)
    return TangentSpaceMatrix(StrongProperty.SSP, n, tuple(columns), data)


def tsm(A: PatternedMatrix, q: Optional[int] = None,
        cluster_tol: Optional[float] = None) -> TangentSpaceMatrix:
    """Столбцы SSP, затем vect(A^0), ..., vect(A^(q-1)); q по кластерам спектра"""
    if q is None:
        q = spectrum(A, cluster_tol).q
    base = tss(A)
    powers = []
    P = np.eye(A.n)
    for _ in range(q):
        powers.append(vect(P))
        P = P @ A.entries
    extra = np.column_stack(powers) if powers else np.zeros((base.data.shape[0], 0))
    columns = base.columns + tuple(f"A^{k}" for k in range(q))
    return TangentSpaceMatrix(StrongProperty.SMP, A.n, columns, np.hstack([base.data, extra]))


def tsa(A: PatternedMatrix) -> TangentSpaceMatrix:
    """Столбец (k, l) по всем упорядоченным парам: vect(A·E_kl + E_lk·A)"""
    M = A.entries
    n = A.n
    columns = [(k, l) for k in range(1, n + 1) for l in range(1, n + 1)]
    data = np.zeros((n * (n + 1) // 2, len(columns)))
    for c, (k, l) in enumerate(columns):
        S = np.zeros((n, n))
        S[:, l - 1] += M[:, k - 1]
        S[l - 1, :] += M[k - 1, :]
        data[:, c] = vect(S)
    return TangentSpaceMatrix(StrongProperty.SAP, n, tuple(columns), data)


def tangent_space(A: PatternedMatrix, kind, q: Optional[int] = None,
                  cluster_tol: Optional[float] = None) -> TangentSpaceMatrix:
    kind = StrongProperty.parse(kind)
    if kind is StrongProperty.SSP:
        return tss(A)
    if kind is StrongProperty.SMP:
        return tsm(A, q, cluster_tol)
    return tsa(A)


def verification(A: PatternedMatrix, kind, q: Optional[int] = None,
                 cluster_tol: Optional[float] = None) -> VerificationMatrix:
    """Строки матрицы касательного пространства, отвечающие неребрам (i<j) графа A"""
    ts = tangent_space(A, kind, q, cluster_tol)
    position = {pair: r for r, pair in enumerate(ts.rows)}
    nonedges = tuple(A.pattern.nonedges())
    rows = [position[pair] for pair in nonedges]
    return VerificationMatrix(ts.kind, nonedges, ts.data[rows, :])


def ssp_rows(M: np.ndarray, pairs: Iterable[Pair]) -> np.ndarray:
    """Строки (i, j) матрицы TS_S для произвольной симметричной M: элементы k<l матрицы M·X - X·M"""
    n = M.shape[0]
    iu = np.triu_indices(n, k=1)
    data = []
    for i, j in pairs:
        X = np.zeros((n, n))
        X[i - 1, j - 1] += 1.0
        X[j - 1, i - 1] += 1.0
        data.append((M @ X - X @ M)[iu])
    return np.array(data) if data else np.zeros((0, n * (n - 1) // 2))


def verification_rows_commutator(A: PatternedMatrix, kind, q: Optional[int] = None,
                                 cluster_tol: Optional[float] = None,
                                 rows: Optional[Iterable[Pair]] = None) -> VerificationMatrix:
    """
    Та же проверочная матрица, собранная по строкам через X_ij = E_ij + E_ji:
    SSP: элементы (k, l), k < l, матрицы A·X - X·A;
    SAP: все n² элементов A·X построчно;
    SMP: строка SSP, дополненная элементами (A^k)_ij.

    rows позволяет получить строки для любых пар i <= j (в том числе диагональных).
    """
    kind = StrongProperty.parse(kind)
    M = A.entries
    n = A.n
    pairs = tuple(A.pattern.nonedges()) if rows is None else tuple(rows)

    if kind is StrongProperty.SAP:
        data = []
        for i, j in pairs:
            X = np.zeros((n, n))
            X[i - 1, j - 1] += 1.0
            X[j - 1, i - 1] += 1.0
            data.append((M @ X).reshape(-1))
        matrix = np.array(data) if data else np.zeros((0, n * n))
        return VerificationMatrix(kind, pairs, matrix)

    matrix = ssp_rows(M, pairs)
    if kind is StrongProperty.SMP:
        if q is None:
            q = spectrum(A, cluster_tol).q
        powers = [np.eye(n)]
        for _ in range(q - 1):
            powers.append(powers[-1] @ M)
        extra = np.array([[P[i - 1, j - 1] for P in powers] for i, j in pairs]).reshape(len(pairs), q)
        matrix = np.hstack([matrix, extra])
    return VerificationMatrix(kind, pairs, matrix)


@dataclass(frozen=True)
class PropertyCertificate:
    property: str
    p: int
    columns: int
    sigma_p: Optional[float]
    sigma_1: Optional[float]
    threshold: float
    holds: bool
    margin: Optional[float]

    def to_dict(self) -> dict:
        return asdict(self)


def rank_certificate(kind: StrongProperty, matrix: np.ndarray,
                     rank_tol: Optional[float] = None) -> PropertyCertificate:
    """Полный строчный ранг по сингулярным числам: σ_p > порога"""
    p, cols = matrix.shape
    if p == 0:
        return PropertyCertificate(kind.value, 0, cols, None, None, 0.0, True, None)
    sigma = linalg.svdvals(matrix) if cols else np.zeros(0)
    sigma_1 = float(sigma[0]) if sigma.size else 0.0
    sigma_p = float(sigma[p - 1]) if sigma.size >= p else 0.0
    tol = Config.RANK_TOL if rank_tol is None else rank_tol
    threshold = float(tol) if tol is not None else max(p, cols) * np.finfo(float).eps * sigma_1
    holds = sigma_p > threshold
    return PropertyCertificate(kind.value, p, cols, sigma_p, sigma_1, threshold, holds,
                               sigma_p - threshold)


def has_property(A: PatternedMatrix, kind, rank_tol: Optional[float] = None,
                 q: Optional[int] = None, cluster_tol: Optional[float] = None) -> PropertyCertificate:
    """
    Проверить SSP/SMP/SAP по рангу проверочной матрицы.

    Args:
        A: матрица с шаблоном
        kind: 'SSP', 'SMP' или 'SAP'
        rank_tol: порог для σ_p; по умолчанию max(dims)·eps·σ₁
        q: число различных собственных значений для SMP (иначе по кластерам)

    Returns:
        PropertyCertificate
    """
    kind = StrongProperty.parse(kind)
    ver = verification(A, kind, q, cluster_tol)
    certificate = rank_certificate(kind, ver.data, rank_tol)
    logger.debug(f"📊 {kind.value}: p={certificate.p}, σ_p={certificate.sigma_p}, holds={certificate.holds}")
    return certificate


def ssp_edge_lower_bound(multiplicities: Union[OrderedMultiplicityList, Iterable[int]]) -> int:
    """Нижняя граница числа ребер графа SSP-матрицы: Σ C(m_i, 2)"""
    values = multiplicities.multiplicities if isinstance(multiplicities, OrderedMultiplicityList) else multiplicities
    return sum(comb(int(m), 2) for m in values)


def ts_block_structure_check(A: PatternedMatrix, value: float, tol: float = 1e-12) -> dict:
    """
    Блочная структура TS(A ⊕ [λ]) после переноса столбцов (i, n+1) и строк (j, n+1)
    в конец: [[TS(A), O], [O, A - λI], [0ᵀ, 0ᵀ]].
    """
    n = A.n
    extended = A.direct_sum([[value]])
    ts = tss(extended)

    old_rows = [r for r, (i, j) in enumerate(ts.rows) if j <= n]
    new_rows = [ts.rows.index((j, n + 1)) for j in range(1, n + 1)]
    last_row = [ts.rows.index((n + 1, n + 1))]
    old_cols = [c for c, (k, l) in enumerate(ts.columns) if l <= n]
    new_cols = [ts.columns.index((i, n + 1)) for i in range(1, n + 1)]
    permuted = ts.data[np.ix_(old_rows + new_rows + last_row, old_cols + new_cols)]

    m_old = n * (n - 1) // 2
    expected = np.zeros_like(permuted)
    expected[:len(old_rows), :m_old] = tss(A).data
    expected[len(old_rows):len(old_rows) + n, m_old:] = A.entries - value * np.eye(n)
    deviation = float(np.max(np.abs(permuted - expected))) if permuted.size else 0.0
    return {
        "n": n,
        "lambda": value,
        "max_deviation": deviation,
        "holds": deviation <= tol,
    }

"""
Конструктивные процедуры: матрица Якоби по спектру, изоспектральный подъем,
присоединение вершины, циклы с двойным собственным значением и расщепление вершины
"""

import logging
from dataclasses import dataclass, field
from math import sqrt
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .config import Config
from .graphs import Graph, contract_edge, delete_vertex, find_monomorphism
from .matrices import (OrderedMultiplicityList, PatternedMatrix, Spectrum, cluster_values,
                       default_cluster_tol, eigenvalues, spectral_distance, spectrum)
from .minors import find_minor
from .strong import StrongProperty, has_property, rank_certificate, ssp_rows, verification

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

# Минимальный зазор c_nn - c_{n+1,n+1} при расщеплении вершины
GAP_TOL = 1e-6

# Число уменьшений шага подъема при одном направлении
MIN_HALVINGS = 12
MAX_HALVINGS = 40


class RealizationError(ValueError):
    """Нарушено предусловие конструктивной процедуры"""


@dataclass
class RealizationResult:
    """Результат построения: матрица, спектры, сертификаты и диагностика"""
    matrix: Optional[PatternedMatrix]
    target_spectrum: Spectrum
    achieved_spectrum: Optional[Spectrum]
    spectral_residual: Optional[float]
    certificates: Dict[str, dict]
    iterations: int
    converged: bool
    method: str
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "converged": self.converged,
            "matrix": self.matrix.to_json() if self.matrix is not None else None,
            "graph": self.matrix.pattern.to_json() if self.matrix is not None else None,
            "target_spectrum": self.target_spectrum.to_dict(),
            "achieved_spectrum": self.achieved_spectrum.to_dict() if self.achieved_spectrum else None,
            "spectral_residual": self.spectral_residual,
            "certificates": self.certificates,
            "iterations": self.iterations,
            "diagnostics": self.diagnostics,
        }


def _options(seed, max_iters, max_restarts, spectral_tol) -> Tuple[int, int, int, float]:
    return (Config.SEED if seed is None else int(seed),
            Config.MAX_ITERS if max_iters is None else int(max_iters),
            Config.MAX_RESTARTS if max_restarts is None else int(max_restarts),
            Config.SPECTRAL_TOL if spectral_tol is None else float(spectral_tol))


def _require(require) -> Optional[StrongProperty]:
    if require is None or str(require).lower() == "none":
        return None
    return StrongProperty.parse(require)


# ---- Матрица Якоби ----

def persymmetric_weights(values: Sequence[float]) -> np.ndarray:
    """Веса w_i ~ 1/|Π_{j≠i}(λ_i - λ_j)|: матрица Якоби с ними симметрична относительно побочной диагонали"""
    lam = np.asarray(values, dtype=float)
    w = np.array([1.0 / np.prod(np.abs(lam[i] - np.delete(lam, i))) for i in range(lam.size)])
    return w / w.sum()


def jacobi_from_spectrum(values: Sequence[float],
                         weights: Optional[Sequence[float]] = None) -> PatternedMatrix:
    """
    Неприводимая трехдиагональная матрица с положительной побочной диагональю
    и заданным простым спектром (Ланцош на diag(λ), полная реортогонализация).

    Args:
        values: строго возрастающие значения
        weights: квадраты первых компонент собственных векторов; по умолчанию равные

    Returns:
        PatternedMatrix с графом P_n
    """
    lam = np.asarray(values, dtype=float)
    if lam.ndim != 1 or lam.size == 0:
        raise RealizationError("Нужен непустой список значений")
    if np.any(np.diff(lam) <= 0):
        raise RealizationError(f"Значения должны строго возрастать: {list(values)}")

    n = lam.size
    if weights is None:
        w = np.full(n, 1.0 / n)
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != (n,) or np.any(w <= 0):
            raise RealizationError(f"Нужно {n} положительных весов")
        w = w / w.sum()
    Q = np.zeros((n, n))
    alpha = np.zeros(n)
    beta = np.zeros(max(n - 1, 0))
    Q[:, 0] = np.sqrt(w)
    for j in range(n):
        w = lam * Q[:, j]
        alpha[j] = Q[:, j] @ w
        if j == n - 1:
            break
        w -= alpha[j] * Q[:, j]
        if j > 0:
            w -= beta[j - 1] * Q[:, j - 1]
        for _ in range(2):
            w -= Q[:, :j + 1] @ (Q[:, :j + 1].T @ w)
        beta[j] = np.linalg.norm(w)
        if beta[j] <= np.finfo(float).eps * max(1.0, np.max(np.abs(lam))):
            raise RealizationError("Обрыв процесса Ланцоша: значения слишком близки")
        Q[:, j + 1] = w / beta[j]

    T = np.diag(alpha) + np.diag(beta, 1) + np.diag(beta, -1)
    path = Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])
    return PatternedMatrix(T, pattern=path)


# ---- Освобождение шаблона ----

@dataclass
class LiberationCheck:
    feasible: bool
    kind: str
    liberated: Tuple[Pair, ...]
    witness: Optional[np.ndarray]
    direction: Optional[np.ndarray]
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "property": self.kind,
            "liberated": [list(e) for e in self.liberated],
            "witness": self.witness.tolist() if self.witness is not None else None,
            "reason": self.reason,
        }


def _balance(x: np.ndarray) -> float:
    top = float(np.max(np.abs(x))) if x.size else 0.0
    return float(np.min(np.abs(x))) / top if top > 0 else 0.0


def _liberation_coefficients(projected: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Коэффициенты c в ядре: из решения projected·c = ±1 и случайного c берется более ровный x_H"""
    signs = rng.choice([-1.0, 1.0], size=projected.shape[0])
    candidates = [np.linalg.lstsq(projected, signs, rcond=None)[0],
                  rng.standard_normal(projected.shape[1])]
    return max(candidates, key=lambda c: _balance(projected @ c))


def liberation_feasible(A: PatternedMatrix, kind="SSP", H_edges: Iterable[Pair] = (),
                        rank_tol: Optional[float] = None, seed: Optional[int] = None,
                        q: Optional[int] = None) -> LiberationCheck:
    """
    Существует ли x из образа проверочной матрицы Ψ с носителем ровно на строках H,
    причем строки вне H линейно независимы.

    Args:
        A: матрица с шаблоном
        kind: 'SSP', 'SMP' или 'SAP'
        H_edges: неребра графа A, которые должны стать ребрами

    Returns:
        LiberationCheck со свидетелем x (по строкам неребер) и направлением y (x = Ψy)
    """
    kind = StrongProperty.parse(kind)
    ver = verification(A, kind, q)
    nonedges = ver.nonedges
    liberated = tuple(sorted({(min(i, j), max(i, j)) for i, j in H_edges}))
    unknown = [h for h in liberated if h not in nonedges]
    if unknown:
        raise RealizationError(f"Пары {unknown} уже являются ребрами графа A или вне диапазона")

    Psi = ver.data
    if not liberated:
        return LiberationCheck(True, kind.value, (), np.zeros(len(nonedges)), np.zeros(Psi.shape[1]),
                               "H пусто")

    position = {pair: r for r, pair in enumerate(nonedges)}
    h_rows = [position[h] for h in liberated]
    r_rows = [r for r in range(len(nonedges)) if r not in set(h_rows)]

    if r_rows:
        certificate = rank_certificate(kind, Psi[r_rows], rank_tol)
        if not certificate.holds:
            return LiberationCheck(False, kind.value, liberated, None, None,
                                   "строки вне H линейно зависимы")
        N = linalg.null_space(Psi[r_rows])
    else:
        N = np.eye(Psi.shape[1])
    if N.shape[1] == 0:
        return LiberationCheck(False, kind.value, liberated, None, None, "ядро строк вне H тривиально")

    sigma_1 = float(linalg.svdvals(Psi)[0]) if Psi.size else 0.0
    cutoff = np.sqrt(np.finfo(float).eps) * max(1.0, sigma_1)
    projected = Psi[h_rows] @ N
    dead = [liberated[i] for i, norm in enumerate(np.linalg.norm(projected, axis=1)) if norm <= cutoff]
    if dead:
        return LiberationCheck(False, kind.value, liberated, None, None,
                               f"строки {dead} обнуляются на ядре строк вне H")

    rng = np.random.default_rng(Config.SEED if seed is None else seed)
    c = _liberation_coefficients(projected, rng)
    y = N @ c
    x = Psi @ y
    x[r_rows] = 0.0
    return LiberationCheck(True, kind.value, liberated, x, y)


# ---- Изоспектральная коррекция ----

def _skew(n: int, coefficients: np.ndarray) -> np.ndarray:
    """Σ y_kl (E_kl - E_lk) по парам k<l в лексикографическом порядке"""
    K = np.zeros((n, n))
    K[np.triu_indices(n, k=1)] = coefficients
    return K - K.T


def _conjugate(B: np.ndarray, K: np.ndarray) -> np.ndarray:
    Q = linalg.expm(K)
    C = Q @ B @ Q.T
    return (C + C.T) / 2


def _index(pairs: Sequence[Pair]) -> Tuple[np.ndarray, np.ndarray]:
    return (np.array([i - 1 for i, _ in pairs], dtype=int),
            np.array([j - 1 for _, j in pairs], dtype=int))


def _cluster_projectors(B: np.ndarray, multiplicities: Sequence[int]) -> Tuple[np.ndarray, List[np.ndarray]]:
    """B с усредненными кластерами спектра (по списку кратностей) и спектральные проекторы кластеров"""
    eigs, V = linalg.eigh(B)
    bounds = np.cumsum((0,) + tuple(multiplicities))
    projectors = [V[:, a:b] @ V[:, a:b].T for a, b in zip(bounds, bounds[1:])]
    means = [float(np.mean(eigs[a:b])) for a, b in zip(bounds, bounds[1:])]
    snapped = sum(mean * P for mean, P in zip(means, projectors))
    return (snapped + snapped.T) / 2, projectors


def _correction_rows(B: np.ndarray, pairs: Sequence[Pair], projectors: Sequence[np.ndarray]) -> np.ndarray:
    """Якобиан элементов B на pairs: столбцы поворотов (со знаком шага), затем сдвиги кластеров"""
    J = ssp_rows(B, pairs)
    if not projectors:
        return J
    rows, cols = _index(pairs)
    shifts = np.column_stack([-P[rows, cols] for P in projectors]) if pairs else np.zeros((0, len(projectors)))
    return np.hstack([J, shifts])


def _correction_step(J: np.ndarray, r: np.ndarray, J_keep: Optional[np.ndarray], damping: float) -> np.ndarray:
    """Решение J·δ = r, меньше всего меняющее элементы keep (затухание damping на добавку из ядра J)"""
    step = np.linalg.lstsq(J, r, rcond=None)[0]
    if J_keep is None or J_keep.shape[0] == 0:
        return step
    Z = linalg.null_space(J)
    if Z.shape[1] == 0:
        return step
    system = np.vstack([J_keep @ Z, damping * np.eye(Z.shape[1])])
    rhs = np.concatenate([-(J_keep @ step), np.zeros(Z.shape[1])])
    return step + Z @ np.linalg.lstsq(system, rhs, rcond=None)[0]


def _apply_step(B: np.ndarray, step: np.ndarray, projectors: Sequence[np.ndarray]) -> np.ndarray:
    n = B.shape[0]
    m = n * (n - 1) // 2
    shifted = B + sum(s * P for s, P in zip(step[m:], projectors)) if projectors else B
    return _conjugate(shifted, _skew(n, step[:m]))


def _newton_correct(B: np.ndarray, zero_pairs: Sequence[Pair], max_iters: int, *,
                    keep: Sequence[Pair] = (),
                    multiplicities: Optional[Sequence[int]] = None) -> Tuple[np.ndarray, int, float]:
    """
    Гаусс–Ньютон по кососимметричному параметру: обнулить элементы B на zero_pairs
    подобием B <- e^K B e^-K. С multiplicities значения кластеров спектра тоже
    сдвигаются, и сохраняется только список кратностей. Из всех шагов линейной
    задачи берется тот, что меньше всего меняет элементы keep.
    """
    if not zero_pairs:
        return B, 0, 0.0
    rows, cols = _index(zero_pairs)
    damping = max(1.0, float(np.max(np.abs(B))))
    target = 1e-14 * damping
    projectors: List[np.ndarray] = []
    if multiplicities is not None:
        B, projectors = _cluster_projectors(B, multiplicities)
    residual = float(np.max(np.abs(B[rows, cols])))
    iterations = 0
    while iterations < max_iters and residual > target:
        iterations += 1
        J = _correction_rows(B, zero_pairs, projectors)
        J_keep = _correction_rows(B, keep, projectors) if keep else None
        step = _correction_step(J, B[rows, cols], J_keep, damping)
        t = 1.0
        while True:
            candidate = _apply_step(B, t * step, projectors)
            if multiplicities is not None:
                candidate, candidate_projectors = _cluster_projectors(candidate, multiplicities)
            new_residual = float(np.max(np.abs(candidate[rows, cols])))
            if new_residual < residual or t < 1e-4:
                break
            t /= 2
        if new_residual >= residual:
            break
        B, residual = candidate, new_residual
        if multiplicities is not None:
            projectors = candidate_projectors
    return B, iterations, residual


def _finalize(B: np.ndarray, target: Graph, target_eigs: Sequence[float], *,
              require: Optional[StrongProperty], strict: bool, method: str, iterations: int,
              rank_tol: Optional[float], cluster_tol: Optional[float], spectral_tol: float,
              diagnostics: Optional[Dict[str, Any]] = None,
              target_oml: Optional[OrderedMultiplicityList] = None) -> RealizationResult:
    """
    Строгая проверка шаблона, спектра и сильного свойства.

    С target_oml спектр может сдвигаться: проверяется только список кратностей.
    """
    diagnostics = dict(diagnostics or {})
    B = (B + B.T) / 2
    target_spectrum = cluster_values(target_eigs, cluster_tol)

    nonedges = target.nonedges()
    off_max = 0.0
    if nonedges:
        rows, cols = _index(nonedges)
        off_max = float(np.max(np.abs(B[rows, cols])))
        if strict and off_max <= Config.PATTERN_TOL:
            B[rows, cols] = 0.0
            B[cols, rows] = 0.0
    edges = target.sorted_edges()
    edge_min = float(np.min(np.abs(B[_index(edges)]))) if edges else None
    diagnostics.update(off_pattern_max=off_max, edge_min=edge_min)

    limit = Config.PATTERN_TOL if strict else Config.ZERO_TOL
    pattern_ok = off_max <= limit and (edge_min is None or edge_min > Config.EDGE_TOL)
    diagnostics["pattern_ok"] = pattern_ok
    matrix = PatternedMatrix(B, pattern=target) if pattern_ok else PatternedMatrix(B)

    achieved = spectrum(matrix, target_spectrum.cluster_tol)
    residual = spectral_distance(achieved.eigenvalues, target_spectrum.eigenvalues)

    certificates = {}
    holds = True
    if require is not None:
        q = target_spectrum.q if require is StrongProperty.SMP else None
        certificate = has_property(matrix, require, rank_tol, q=q)
        certificates[require.value] = certificate.to_dict()
        holds = certificate.holds

    if target_oml is not None:
        diagnostics["spectral_drift"] = residual
        spectrum_ok = achieved.oml() == target_oml
    else:
        spectrum_ok = residual <= spectral_tol
    converged = pattern_ok and spectrum_ok and holds
    return RealizationResult(matrix, target_spectrum, achieved, residual, certificates,
                             iterations, converged, method, diagnostics)


def certify(B, target: Graph, target_eigs: Sequence[float], *, require="ssp", strict: bool = True,
            method: str = "", iterations: int = 0, rank_tol: Optional[float] = None,
            cluster_tol: Optional[float] = None, spectral_tol: Optional[float] = None,
            diagnostics: Optional[Dict[str, Any]] = None) -> RealizationResult:
    """
    Проверить готовую матрицу: шаблон графа target, спектр target_eigs и сильное свойство.

    Args:
        B: симметричная матрица (PatternedMatrix или массив)
        target: требуемый граф
        target_eigs: требуемые собственные значения с кратностями
        require: 'ssp', 'smp', 'sap' или None

    Returns:
        RealizationResult (converged=False, если хоть одна проверка не прошла)
    """
    data = B.entries if isinstance(B, PatternedMatrix) else np.array(B, dtype=float)
    if data.shape != (target.n, target.n):
        raise RealizationError(f"Размер матрицы {data.shape} не совпадает с порядком графа {target.n}")
    tol = Config.SPECTRAL_TOL if spectral_tol is None else float(spectral_tol)
    return _finalize(data.copy(), target, target_eigs, require=_require(require), strict=strict,
                     method=method, iterations=iterations, rank_tol=rank_tol,
                     cluster_tol=cluster_tol, spectral_tol=tol, diagnostics=diagnostics)


def _predict(S: np.ndarray, y: np.ndarray, t: float) -> np.ndarray:
    """Шаг вдоль направления y: первая вариация элементов на неребрах равна t·Ψy"""
    n = S.shape[0]
    m = n * (n - 1) // 2
    shifted = S.copy()
    power = np.eye(n)
    for coefficient in y[m:]:
        shifted = shifted + t * coefficient * power
        power = power @ S
    return _conjugate(shifted, _skew(n, -t * y[:m]))


def isospectral_lift(A: PatternedMatrix, G_target: Graph, *, require="ssp", strict: bool = True,
                     seed: Optional[int] = None, max_iters: Optional[int] = None,
                     max_restarts: Optional[int] = None, rank_tol: Optional[float] = None,
                     cluster_tol: Optional[float] = None,
                     spectral_tol: Optional[float] = None) -> RealizationResult:
    """
    Перевести A в S(G_target) ортогональным подобием, не меняя спектр.

    Шаг-предиктор вдоль направления освобождения создает новые ребра,
    корректор Гаусса–Ньютона обнуляет неребра G_target, по возможности не трогая
    новые ребра. Шаг уменьшается вдвое, пока самый малый новый элемент заметно
    больше EDGE_TOL, затем выбирается новое направление. При require='smp'
    собственные значения могут сдвигаться, сохраняется список кратностей.

    Raises:
        RealizationError: граф A не подграф G_target, require='sap' или освобождение невозможно
    """
    if G_target.n != A.n:
        raise RealizationError(f"Порядок графа {G_target.n} не совпадает с порядком матрицы {A.n}")
    if not A.pattern.edges <= G_target.edges:
        extra = sorted(A.pattern.edges - G_target.edges)
        raise RealizationError(f"Граф матрицы не является подграфом целевого: лишние ребра {extra}")
    seed, max_iters, max_restarts, spectral_tol = _options(seed, max_iters, max_restarts, spectral_tol)
    kind = _require(require)
    if kind is StrongProperty.SAP:
        raise RealizationError("Изоспектральный подъем поддерживает require='ssp', 'smp' или none")
    direction = kind or StrongProperty.SSP
    source = spectrum(A, cluster_tol)
    smp = direction is StrongProperty.SMP
    target_oml = source.oml() if smp else None
    q = source.q if smp else None
    finalize = dict(require=kind, strict=strict, rank_tol=rank_tol, cluster_tol=cluster_tol,
                    spectral_tol=spectral_tol, method="isospectral_lift", target_oml=target_oml)

    target_eigs = eigenvalues(A)
    new_edges = sorted(G_target.edges - A.pattern.edges)
    if not new_edges:
        return _finalize(A.entries.copy(), G_target, target_eigs, iterations=0,
                         diagnostics={"restarts": 0, "step": 0.0}, **finalize)

    check = liberation_feasible(A, direction, new_edges, rank_tol=rank_tol, seed=seed, q=q)
    if not check.feasible:
        raise RealizationError(f"Освобождение шаблона невозможно: {check.reason}")

    S = A.entries
    zero_pairs = G_target.nonedges()
    ver = verification(A, direction, q)
    position = {pair: r for r, pair in enumerate(ver.nonedges)}
    Psi = ver.data
    N = linalg.null_space(Psi[[position[p] for p in zero_pairs]]) if zero_pairs else np.eye(Psi.shape[1])
    projected = Psi[[position[h] for h in new_edges]] @ N
    scale = max(1.0, float(np.max(np.abs(target_eigs))))
    multiplicities = target_oml.multiplicities if smp else None
    rng = np.random.default_rng(seed)

    total_iterations = 0
    best: Optional[RealizationResult] = None
    for restart in range(max_restarts):
        c = _liberation_coefficients(projected, rng)
        x_h = projected @ c
        top = float(np.max(np.abs(x_h)))
        if top == 0.0:
            continue
        balance = _balance(x_h)
        y = N @ c / top
        t = 0.05 * scale
        for halving in range(MAX_HALVINGS):
            B, iterations, residual = _newton_correct(_predict(S, y, t), zero_pairs, max_iters,
                                                      keep=new_edges, multiplicities=multiplicities)
            total_iterations += iterations
            result = _finalize(B, G_target, target_eigs, iterations=total_iterations,
                               diagnostics={"restarts": restart, "step": t, "balance": balance,
                                            "newton_residual": residual},
                               **finalize)
            if result.converged:
                logger.debug(f"✅ Подъем на {len(new_edges)} новых ребер: шаг {t:.3g}, перезапусков {restart}")
                return result
            if best is None or (result.diagnostics["edge_min"] or 0.0) > (best.diagnostics["edge_min"] or 0.0):
                best = result
            t /= 2
            if halving + 1 >= MIN_HALVINGS and t * balance <= 10 * Config.EDGE_TOL:
                break

    logger.warning(f"⚠️ Изоспектральный подъем не сошелся за {max_restarts} перезапусков")
    if best is None:
        best = _finalize(S.copy(), G_target, target_eigs, iterations=total_iterations,
                         diagnostics={"restarts": max_restarts}, **finalize)
    best.converged = False
    return best


def realize_distinct(G: Graph, values: Sequence[float], **options) -> RealizationResult:
    """Простой спектр на любом графе: диагональная затравка и подъем"""
    values = sorted(float(x) for x in values)
    if len(values) != G.n:
        raise RealizationError(f"Нужно {G.n} значений, получено {len(values)}")
    if any(b - a <= 0 for a, b in zip(values, values[1:])):
        raise RealizationError("Значения должны быть различными")
    result = isospectral_lift(PatternedMatrix(np.diag(values)), G, **options)
    result.method = "diagonal_lift"
    return result


def place_on_supergraph(A: PatternedMatrix, G: Graph) -> PatternedMatrix:
    """Перенумеровать A так, чтобы ее граф стал остовным подграфом G"""
    mapping = find_monomorphism(A.pattern, G) if A.n == G.n else None
    if mapping is None:
        raise RealizationError("Граф матрицы не вкладывается в G как остовный подграф")
    order = [0] * A.n
    for old, new in mapping.items():
        order[new - 1] = old
    return A.permuted(order)


# ---- Присоединение вершины ----

def augment(A: PatternedMatrix, lam: float, alpha: Iterable[int], *, require="ssp",
            tol: Optional[float] = None, **options) -> RealizationResult:
    """
    Добавить вершину n+1, смежную ровно с α, увеличив кратность λ на единицу.

    Args:
        A: матрица с SSP (с SMP при require='smp')
        lam: собственное значение A кратности k >= 1
        alpha: k+1 вершин; каждая k×k подматрица N[α, :] базиса ядра A - λI невырождена

    Returns:
        RealizationResult с матрицей в S(G + вершина n+1 ~ α)
    """
    rank_tol = options.get("rank_tol")
    smp = _require(require) is StrongProperty.SMP
    needed = StrongProperty.SMP if smp else StrongProperty.SSP
    if not has_property(A, needed, rank_tol).holds:
        raise RealizationError(f"augment требует матрицу с {needed.value}")
    alpha = sorted({int(j) for j in alpha})
    if any(not 1 <= j <= A.n for j in alpha):
        raise RealizationError(f"Вершины α вне диапазона 1..{A.n}: {alpha}")

    eigs, vectors = linalg.eigh(A.entries)
    tol = default_cluster_tol(eigs) if tol is None else tol
    mask = np.abs(eigs - lam) <= tol
    k = int(mask.sum())
    if k == 0:
        raise RealizationError(f"{lam} не является собственным значением A (допуск {tol:.1e})")
    if len(alpha) != k + 1:
        raise RealizationError(f"|α| должно равняться {k + 1} (кратность λ равна {k})")

    N = vectors[:, mask]
    block = N[[j - 1 for j in alpha], :]
    sigma_min = min(float(linalg.svdvals(np.delete(block, r, axis=0))[-1]) for r in range(k + 1))
    if sigma_min <= Config.EDGE_TOL:
        raise RealizationError(
            f"Существует собственный вектор для λ={lam}, носитель которого пересекает α не более чем "
            f"в одной вершине (σ_min={sigma_min:.2e})"
        )

    seed_matrix = A.direct_sum([[lam]])
    target = Graph.from_edges(A.n + 1, list(A.pattern.edges) + [(j, A.n + 1) for j in alpha])
    result = isospectral_lift(seed_matrix, target, require=require, **options)
    result.method = "augment"
    after = None
    if result.achieved_spectrum is not None:
        if smp:
            after = min(result.achieved_spectrum.clusters, key=lambda cluster: abs(cluster[0] - lam))[1]
        else:
            after = result.achieved_spectrum.multiplicity_of(lam, tol)
    result.diagnostics.update(multiplicity_before=k, multiplicity_after=after, hypothesis_sigma_min=sigma_min)
    if result.converged and after != k + 1:
        logger.warning(f"⚠️ augment: кратность λ={lam} после подъема {after}, ожидалось {k + 1}")
        result.converged = False
    return result


def cycle_double_eigenvalue(n: int, values: Sequence[float], k: int, **options) -> RealizationResult:
    """
    Матрица из S(C_n) с SSP, у которой values[k-1] имеет кратность 2, остальные простые.

    Args:
        n: порядок цикла, n >= 3
        values: n-1 строго возрастающих значений
        k: номер удваиваемого значения (с 1)
    """
    if n < 3:
        raise RealizationError("Цикл определен для n >= 3")
    if len(values) != n - 1:
        raise RealizationError(f"Нужно {n - 1} значений, получено {len(values)}")
    if not 1 <= k <= n - 1:
        raise RealizationError(f"k должно быть в диапазоне 1..{n - 1}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise RealizationError(f"Значения должны строго возрастать: {list(values)}")
    path = jacobi_from_spectrum(values, persymmetric_weights(values))
    result = augment(path, float(values[k - 1]), [1, n - 1], **options)
    result.method = "cycle_double_eigenvalue"
    return result


# ---- Расщепление вершины ----

def lambda_bound_check(M: Sequence[Sequence[float]], b: Sequence[float]) -> dict:
    """
    Решить Mx = b для положительно определенной M и проверить
    max|x| <= sqrt(n) / λ_min(M) · max|b|.
    """
    M = np.asarray(M, dtype=float)
    b = np.asarray(b, dtype=float)
    lam_min = float(linalg.eigvalsh(M)[0])
    if lam_min <= 0:
        raise RealizationError(f"M не положительно определена (λ_min = {lam_min:.3e})")
    x = linalg.solve(M, b, assume_a='pos')
    n = b.size
    max_b = float(np.max(np.abs(b))) if n else 0.0
    max_x = float(np.max(np.abs(x))) if n else 0.0
    bound = sqrt(n) / lam_min * max_b
    return {
        "n": n,
        "lambda_min": lam_min,
        "max_x": max_x,
        "max_b": max_b,
        "bound": bound,
        "holds": max_x <= bound * (1 + 1e-12),
        "x": x.tolist(),
    }


def _split_target(G: Graph, v: int, alpha: Iterable[int], beta: Iterable[int]) -> Graph:
    n = G.n
    edges = [e for e in G.edges if v not in e]
    edges += [(v, j) for j in alpha] + [(j, n + 1) for j in beta] + [(v, n + 1)]
    return Graph.from_edges(n + 1, edges)


def _decontract_at(Ap: np.ndarray, target: Graph, alpha: Iterable[int], beta: Iterable[int],
                   lam: float, max_iters: int,
                   multiplicities: Optional[Sequence[int]] = None) -> Tuple[np.ndarray, Dict[str, Any]]:
    """Одна попытка для фиксированного λ; расщепляемая вершина последняя"""
    n = Ap.shape[0]
    d = np.zeros(n)
    d[[j - 1 for j in alpha]] = 1.0
    d[n - 1] = 1.0
    d[[j - 1 for j in beta]] = -1.0
    bound = lambda_bound_check(lam * np.eye(n) - Ap, d * Ap[:, n - 1])
    k = np.array(bound.pop("x"))

    K = np.zeros((n + 1, n + 1))
    K[:n, n] = -k
    K[n, :n] = k
    Q = linalg.expm(K)
    C0 = Q.T @ linalg.block_diag(Ap, [[lam]]) @ Q

    s = sqrt(2.0) / 2
    R = np.eye(n + 1)
    R[n - 1:, n - 1:] = [[s, s], [-s, s]]
    B, iterations, residual = _newton_correct(R @ C0 @ R.T, target.nonedges(), max_iters,
                                               multiplicities=multiplicities)
    C = R.T @ B @ R
    gap = abs(C[n - 1, n - 1] - C[n, n])
    return B, {"lambda": lam, "iterations": iterations, "newton_residual": residual,
               "gap": gap, "bound_check": bound}


def decontract(A: PatternedMatrix, v: int, alpha: Iterable[int], beta: Iterable[int] = (),
               lam: Optional[float] = None, *, require="ssp", strict: bool = True,
               seed: Optional[int] = None, max_iters: Optional[int] = None,
               rank_tol: Optional[float] = None, cluster_tol: Optional[float] = None,
               spectral_tol: Optional[float] = None) -> RealizationResult:
    """
    Расщепить вершину v: v сохраняет соседей α, новая вершина n+1 смежна с β и с v.

    Спектр результата равен spec(A) ∪ {λ} (при require='smp' сохраняется
    только список кратностей); без явного λ перебираются
    λ = 2ρ(A)+1, 2(2ρ(A)+1), ... до 2^DECONTRACT_MAX_DOUBLINGS·(ρ(A)+1).

    Args:
        A: матрица с SSP (или SMP при require='smp')
        v: расщепляемая вершина
        alpha, beta: разбиение окрестности v

    Returns:
        RealizationResult; неудача при всех λ - converged=False с диагностикой
    """
    kind = _require(require)
    if kind not in (StrongProperty.SSP, StrongProperty.SMP):
        raise RealizationError("decontract поддерживает require='ssp' или 'smp'")
    G = A.pattern
    G._check_vertex(v)
    alpha, beta = {int(j) for j in alpha}, {int(j) for j in beta}
    if alpha & beta or (alpha | beta) != set(G.neighbors(v)):
        raise RealizationError(f"α={sorted(alpha)} и β={sorted(beta)} должны разбивать N({v})={sorted(G.neighbors(v))}")
    if not has_property(A, kind, rank_tol).holds:
        raise RealizationError(f"decontract требует матрицу с {kind.value}")
    seed, max_iters, _, spectral_tol = _options(seed, max_iters, None, spectral_tol)

    n = A.n
    order = [u for u in G.vertices if u != v] + [v]
    position = {old: k + 1 for k, old in enumerate(order)}
    permuted = A.permuted(order)
    target_permuted = _split_target(permuted.pattern, n, [position[j] for j in alpha],
                                    [position[j] for j in beta])
    target = _split_target(G, v, alpha, beta)
    back = [position[u] - 1 for u in G.vertices] + [n]

    eigs = eigenvalues(A)
    if lam is not None and eigs.size and float(lam) <= eigs[-1]:
        raise RealizationError(f"λ={lam} должно быть больше наибольшего собственного значения A ({eigs[-1]:.6g})")
    rho = float(np.max(np.abs(eigs))) if eigs.size else 0.0
    if lam is not None:
        schedule = [float(lam)]
    else:
        cap = 2 ** Config.DECONTRACT_MAX_DOUBLINGS * (rho + 1)
        schedule = []
        value = 2 * rho + 1
        while value <= cap:
            schedule.append(value)
            value *= 2

    attempts = []
    last: Optional[RealizationResult] = None
    for value in schedule:
        target_oml = cluster_values(np.append(eigs, value), cluster_tol).oml() if kind is StrongProperty.SMP else None
        B, info = _decontract_at(permuted.entries, target_permuted, [position[j] for j in alpha],
                                 [position[j] for j in beta], value, max_iters,
                                 target_oml.multiplicities if target_oml else None)
        attempts.append(info)
        result = _finalize(B[np.ix_(back, back)], target, np.append(eigs, value), require=kind,
                           strict=strict, method="decontract", iterations=info["iterations"],
                           rank_tol=rank_tol, cluster_tol=cluster_tol, spectral_tol=spectral_tol,
                           diagnostics={"lambda_used": value, "gap": info["gap"]},
                           target_oml=target_oml)
        if result.converged and info["gap"] <= GAP_TOL:
            result.converged = False
        result.diagnostics["attempts"] = attempts
        last = result
        if result.converged:
            logger.info(f"✅ Расщепление вершины {v}: λ={value:.6g}, итераций {info['iterations']}")
            return result
        logger.info(f"🔄 Расщепление вершины {v} при λ={value:.6g} не удалось, увеличиваем λ")

    logger.warning(f"⚠️ Расщепление вершины {v} не сошлось ни при одном λ (численное ограничение)")
    if last is None:
        raise RealizationError("Пустое расписание λ")
    return last


# ---- Монотонность относительно миноров ----

def _fresh_value(existing: Sequence[float]) -> float:
    return (float(np.max(existing)) if len(existing) else 0.0) + 1.0


def _contains_spectrum(big: Sequence[float], small: Sequence[float], tol: float) -> bool:
    pool = sorted(big)
    for x in sorted(small):
        match = next((k for k, y in enumerate(pool) if abs(x - y) <= tol), None)
        if match is None:
            return False
        pool.pop(match)
    return True


def minor_monotone_lift(A: PatternedMatrix, H: Graph, *, require="ssp", **options) -> RealizationResult:
    """
    Перенести матрицу с SSP (с SMP при require='smp') с графа G на граф H,
    содержащий G как минор.

    Свидетельство минора проигрывается в обратном порядке: вложение с новыми
    простыми собственными значениями на лишних вершинах, возвращение удаленных
    вершин, расщепление стянутых ребер; после каждого шага выполняется подъем.
    Спектр результата содержит spec(A); при require='smp' значения могут сдвигаться.
    """
    smp = _require(require) is StrongProperty.SMP
    needed = StrongProperty.SMP if smp else StrongProperty.SSP
    if not has_property(A, needed, options.get("rank_tol")).holds:
        raise RealizationError(f"minor_monotone_lift требует матрицу с {needed.value}")
    witness = find_minor(A.pattern, H)
    if witness is None:
        raise RealizationError("Граф матрицы не является минором H")

    graphs = [H]
    for step in witness.steps:
        if step["op"] == "delete_vertex":
            graphs.append(delete_vertex(graphs[-1], step["vertex"]))
        else:
            graphs.append(contract_edge(graphs[-1], step["edge"]))

    final = graphs[-1]
    eigs = list(eigenvalues(A))
    M = np.zeros((final.n, final.n))
    image = [witness.mapping[i] - 1 for i in A.pattern.vertices]
    M[np.ix_(image, image)] = A.entries
    for u in range(final.n):
        if u not in image:
            M[u, u] = _fresh_value(eigs + list(np.diag(M)))
    log: List[Dict[str, Any]] = [{"op": "embed", "mapping": {str(k): v for k, v in witness.mapping.items()}}]
    result = isospectral_lift(PatternedMatrix(M), final, require=require, **options)
    current = result

    for step, prev in zip(reversed(witness.steps), reversed(graphs[:-1])):
        if not current.converged:
            break
        B = current.matrix
        if step["op"] == "delete_vertex":
            v = step["vertex"]
            keep = [u for u in prev.vertices if u != v]
            M = np.zeros((prev.n, prev.n))
            idx = [u - 1 for u in keep]
            M[np.ix_(idx, idx)] = B.entries
            M[v - 1, v - 1] = _fresh_value(eigenvalues(B))
            current = isospectral_lift(PatternedMatrix(M), prev, require=require, **options)
        else:
            u, w = step["edge"]
            shift = lambda x: x if x < w else x - 1
            own = {shift(x) for x in prev.neighbors(u) if x != w}
            moved = {shift(x) for x in prev.neighbors(w) if x != u} - own
            split = decontract(B, u, own, moved, require=require,
                               **{k: v for k, v in options.items() if k != "max_restarts"})
            if not split.converged:
                current = split
                log.append({**step, "converged": False})
                break
            order = [x if x < w else x - 1 for x in prev.vertices]
            order[w - 1] = B.n + 1
            current = isospectral_lift(split.matrix.permuted(order), prev, require=require, **options)
        log.append({**step, "converged": current.converged})

    current.method = "minor_monotone_lift"
    current.diagnostics["steps"] = log
    if current.converged and current.matrix is not None and not smp:
        contained = _contains_spectrum(current.achieved_spectrum.eigenvalues, eigs, 1e-6 * max(1.0, max(map(abs, eigs))))
        current.diagnostics["contains_original_spectrum"] = contained
        if not contained:
            current.converged = False
    return current

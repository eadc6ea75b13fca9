"""
Модели каталога: загрузка JSON-файла, записи о графах порядка <= 5
и рецепты построения свидетелей
"""

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy import linalg

from data.named_graphs import connected_graphs, get_named_graph
from utils.config import Config
from utils.families import (build_family, butterfly_rank2_for_spectrum, complete_for_spectrum,
                            m1_for_spectrum, m2_for_spectrum, m3_for_spectrum, m4_for_spectrum,
                            m5_for_spectrum, star_for_spectrum, two_point)
from utils.graphs import Graph, canonical_form, contains_spanning_copy
from utils.matrices import OrderedMultiplicityList, PatternedMatrix, negate
from utils.realize import cycle_double_eigenvalue

logger = logging.getLogger(__name__)

OML = OrderedMultiplicityList


class CatalogError(ValueError):
    """Ошибка запроса к каталогу или повреждённый файл каталога"""


def compositions(n: int) -> List[OML]:
    """Все упорядоченные списки кратностей с суммой n"""
    result = []
    for cuts in range(n):
        for points in combinations(range(1, n), cuts):
            bounds = (0,) + points + (n,)
            result.append(OML.of(b - a for a, b in zip(bounds, bounds[1:])))
    return result


# ---- Факты о невозможности ----

def any_fact_reasons(facts: Dict[str, Any], oml: OML) -> List[str]:
    """Причины, по которым список недостижим ни одной матрицей из S(G)"""
    m = oml.multiplicities
    reasons = []
    if "M" in facts and max(m) > facts["M"]:
        reasons.append(f"кратность {max(m)} превышает максимальную кратность M(G)={facts['M']}")
    if "M_plus" in facts and max(m[0], m[-1]) > facts["M_plus"]:
        reasons.append(f"крайняя кратность превышает M₊(G)={facts['M_plus']}")
    if "q" in facts and oml.q < facts["q"]:
        reasons.append(f"различных собственных значений меньше q(G)={facts['q']}")
    extremes = facts.get("extremes")
    if extremes == "tree" and (m[0] > 1 or m[-1] > 1):
        reasons.append("у матриц дерева наименьшее и наибольшее собственные значения простые")
    if extremes == "odd_unicyclic" and m[0] > 1 and m[-1] > 1:
        reasons.append("у матриц нечетного унициклического графа хотя бы одно крайнее значение простое")
    if oml.key() in facts.get("no_pattern", []):
        reasons.append("матрица с двумя собственными значениями и этим шаблоном не существует")
    return reasons


def ssp_fact_reasons(facts: Dict[str, Any], oml: OML) -> List[str]:
    """Дополнительные причины для режима SSP"""
    reasons = []
    if "xi" in facts and max(oml.multiplicities) > facts["xi"]:
        reasons.append(f"кратность {max(oml.multiplicities)} превышает ξ(G)={facts['xi']} (нет SMP)")
    return reasons


@dataclass(frozen=True)
class CatalogEntry:
    """Связный граф каталога с достижимыми списками и сохраненными фактами"""
    name: str
    graph: Graph
    ssp: Tuple[OML, ...]
    any: Tuple[OML, ...]
    facts: Dict[str, Any] = field(default_factory=dict)
    any_recipes: Dict[str, str] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.graph.n

    def impossibility_reasons(self) -> Dict[str, List[str]]:
        """Для каждого недостижимого списка - причины из сохраненных фактов"""
        reasons = {}
        for oml in compositions(self.order):
            if oml in self.any:
                if oml not in self.ssp:
                    reasons[oml.key()] = ["только без SSP: " + r for r in ssp_fact_reasons(self.facts, oml)]
                continue
            reasons[oml.key()] = any_fact_reasons(self.facts, oml)
        return reasons

    def to_dict(self) -> dict:
        return {
            "graph": self.name,
            "order": self.order,
            "graph6": self.graph.to_graph6(),
            "ssp": [oml.to_list() for oml in self.ssp],
            "any_only": [oml.to_list() for oml in self.any if oml not in self.ssp],
            "facts": self.facts,
            "impossible": self.impossibility_reasons(),
        }


class CatalogStore:
    """Чтение и проверка файла каталога"""

    def __init__(self, path: Optional[str] = None):
        self.path = Path(path or Config.CATALOG_PATH)
        self._data: Optional[dict] = None

    def load(self) -> dict:
        if self._data is None:
            try:
                with open(self.path, encoding='utf-8') as f:
                    data = json.load(f)
            except FileNotFoundError:
                raise CatalogError(f"Файл каталога не найден: {self.path}") from None
            except json.JSONDecodeError as e:
                raise CatalogError(f"Файл каталога поврежден: {e}") from e
            for key in ("version", "minimal_subgraphs", "graphs", "witnesses"):
                if key not in data:
                    raise CatalogError(f"В каталоге нет раздела '{key}'")
            self._data = data
            logger.info(f"📊 Каталог {data['version']} загружен: {len(data['graphs'])} графов")
        return self._data

    @property
    def version(self) -> str:
        return self.load()["version"]

    @property
    def max_order(self) -> int:
        return int(self.load().get("max_order", 5))

    def entries(self) -> List[CatalogEntry]:
        result = []
        for raw in self.load()["graphs"]:
            named = get_named_graph(raw["name"])
            if named.graph.n != raw["order"]:
                raise CatalogError(f"{raw['name']}: порядок {named.graph.n} не совпадает с записью {raw['order']}")
            ssp = tuple(OML.parse(s) for s in raw["ssp"])
            extra = tuple(OML.parse(s) for s in raw.get("any_only", []))
            result.append(CatalogEntry(named.name, named.graph, ssp, ssp + extra,
                                       dict(raw.get("facts", {})), dict(raw.get("any_recipes", {}))))
        return result

    def minimal_table(self, order: int) -> Dict[OML, List[Tuple[str, str]]]:
        """Список кратностей -> [(минимальный подграф, рецепт)]; развернутые списки не хранятся"""
        rows = self.load()["minimal_subgraphs"].get(str(order), [])
        return {OML.parse(row["oml"]): [(s["graph"], s["recipe"]) for s in row["subgraphs"]] for row in rows}

    def witnesses(self, scope: Optional[str] = None) -> List[dict]:
        rows = self.load()["witnesses"]
        return [row for row in rows if scope is None or row["scope"] == scope]


class GraphRecords:
    """Поиск графов по изоморфизму и множества достижимых списков"""

    def __init__(self, store: CatalogStore):
        self.store = store
        self._by_form: Optional[Dict[str, CatalogEntry]] = None

    def _index(self) -> Dict[str, CatalogEntry]:
        if self._by_form is None:
            self._by_form = {canonical_form(entry.graph): entry for entry in self.store.entries()}
        return self._by_form

    def all(self) -> List[CatalogEntry]:
        return list(self._index().values())

    def by_order(self, order: int) -> List[CatalogEntry]:
        index = self._index()
        return [index[canonical_form(named.graph)] for named in connected_graphs(order)]

    def lookup(self, G: Graph) -> CatalogEntry:
        """Запись связного графа (нумерация вершин произвольная)"""
        if G.n > self.store.max_order:
            raise CatalogError(f"Каталог охватывает графы порядка <= {self.store.max_order}, получен порядок {G.n}")
        if not G.is_connected():
            raise CatalogError("Запись каталога существует только для связных графов")
        entry = self._index().get(canonical_form(G))
        if entry is None:
            raise CatalogError("Граф не найден в каталоге")
        return entry

    def attainable(self, G: Graph, mode: str = "ANY") -> Set[OML]:
        """
        Достижимые списки кратностей.

        Для несвязного графа списки компонент перемешиваются (SSP: спектры
        компонент не пересекаются; ANY: значения разных компонент могут совпадать).
        """
        mode = mode.upper()
        if mode not in ("ANY", "SSP"):
            raise CatalogError(f"Неизвестный режим '{mode}' (доступны: ANY, SSP)")
        if G.n == 0:
            raise CatalogError("Пустой граф")
        if G.n > self.store.max_order:
            raise CatalogError(f"Каталог охватывает графы порядка <= {self.store.max_order}, получен порядок {G.n}")
        if G.is_connected():
            entry = self.lookup(G)
            return set(entry.ssp if mode == "SSP" else entry.any)

        per_component = [sorted(self.attainable(G.induced(comp), mode), key=lambda o: o.multiplicities)
                         for comp in G.components()]
        result = set()
        for combo in product(*per_component):
            for merged, _ in interleavings([o.multiplicities for o in combo], mode == "ANY"):
                result.add(OML.of(merged))
        return result


def interleavings(lists: Sequence[Sequence[int]],
                  allow_coincide: bool) -> Iterator[Tuple[Tuple[int, ...], List[Tuple[int, ...]]]]:
    """
    Все способы упорядочить различные значения компонент в один спектр.

    Yields:
        (итоговый список, группы): группа - номера компонент, чьи значения совпали
    """
    count = len(lists)

    def walk(pos: Tuple[int, ...], merged: Tuple[int, ...], groups: List[Tuple[int, ...]]):
        remaining = [c for c in range(count) if pos[c] < len(lists[c])]
        if not remaining:
            yield merged, groups
            return
        sizes = range(1, len(remaining) + 1) if allow_coincide else (1,)
        for size in sizes:
            for members in combinations(remaining, size):
                step = list(pos)
                total = 0
                for c in members:
                    total += lists[c][pos[c]]
                    step[c] += 1
                yield from walk(tuple(step), merged + (total,), groups + [members])

    yield from walk(tuple(0 for _ in range(count)), (), [])


# ---- Рецепты свидетелей ----

def _core_size(graph: Graph) -> int:
    return sum(1 for d in graph.degrees() if d > 0)


def _with_rest(block: np.ndarray, nu: Sequence[float], used: Sequence[int]) -> PatternedMatrix:
    rest = [nu[k] for k in range(len(nu)) if k not in set(used)]
    return PatternedMatrix(linalg.block_diag(block, np.diag(rest)) if rest else block)


def _multiple_index(oml: OML, value: Optional[int] = None) -> int:
    parts = oml.multiplicities
    hits = [k for k, m in enumerate(parts) if (m == value if value is not None else m > 1)]
    if len(hits) != 1:
        raise CatalogError(f"Рецепт требует ровно одну кратность{'' if value is None else f' {value}'} в {oml}")
    return hits[0]


def _diagonal(oml: OML, nu: Sequence[float], graph: Graph, **_) -> PatternedMatrix:
    values = [x for x, m in zip(nu, oml.multiplicities) for _ in range(m)]
    return PatternedMatrix(np.diag(values))


def _complete_block(oml: OML, nu: Sequence[float], graph: Graph, **_) -> PatternedMatrix:
    i = _multiple_index(oml)
    size = oml.multiplicities[i] + 1
    if size != _core_size(graph):
        raise CatalogError(f"Блок K{size} не соответствует графу рецепта")
    j = i + 1 if i + 1 < oml.q else i - 1
    block = complete_for_spectrum(size, sorted([nu[i], nu[j]]), top_simple=j > i)
    return _with_rest(block.entries, nu, [i, j])


def _cycle_block(oml: OML, nu: Sequence[float], graph: Graph, seed: Optional[int] = None,
                 **options) -> Optional[PatternedMatrix]:
    i = _multiple_index(oml, 2)
    c = _core_size(graph)
    start = max(0, min(i, oml.q - (c - 1)))
    window = list(range(start, start + c - 1))
    result = cycle_double_eigenvalue(c, [nu[k] for k in window], i - start + 1, seed=seed, **options)
    if not result.converged:
        logger.warning(f"⚠️ Рецепт цикла C{c} не сошелся для {oml}")
        return None
    return _with_rest(result.matrix.entries, nu, window)


def _c4_block(oml: OML, nu: Sequence[float], graph: Graph, **_) -> PatternedMatrix:
    doubles = [k for k, m in enumerate(oml.multiplicities) if m == 2]
    if len(doubles) != 2:
        raise CatalogError(f"Рецепт C4 требует две двойные кратности в {oml}")
    block = two_point("C4_TABLE1", [nu[k] for k in doubles]).matrix
    return _with_rest(block.entries, nu, doubles)


def _star_block(oml: OML, nu: Sequence[float], graph: Graph, **_) -> PatternedMatrix:
    k = _core_size(graph) - 1
    i = _multiple_index(oml, k - 1)
    if not 0 < i < oml.q - 1:
        raise CatalogError(f"Рецепт звезды требует внутреннюю кратность {k - 1} в {oml}")
    block = star_for_spectrum(k, [nu[i - 1], nu[i], nu[i + 1]]).matrix
    return _with_rest(block.entries, nu, [i - 1, i, i + 1])


def _family(solver: Callable) -> Callable[..., PatternedMatrix]:
    return lambda oml, nu, graph, **_: solver(nu).matrix


RECIPES: Dict[str, Callable[..., Optional[PatternedMatrix]]] = {
    "diagonal": _diagonal,
    "complete_block": _complete_block,
    "cycle_block": _cycle_block,
    "c4_block": _c4_block,
    "star_block": _star_block,
    "m1": _family(m1_for_spectrum),
    "m2": _family(m2_for_spectrum),
    "m3": _family(m3_for_spectrum),
    "m4": _family(m4_for_spectrum),
    "m5": _family(m5_for_spectrum),
    "m5_two_point": _family(lambda nu: two_point("M5", nu, {"a": 1.0})),
    "butterfly_rank2": lambda oml, nu, graph, **_: butterfly_rank2_for_spectrum(nu, oml.multiplicities).matrix,
}


class WitnessRecords:
    """Построение матриц-свидетелей по рецептам каталога"""

    def __init__(self, store: CatalogStore):
        self.store = store

    @staticmethod
    def instantiate(recipe: str, oml: OML, nu: Sequence[float], graph: Graph,
                    **options) -> Optional[PatternedMatrix]:
        """
        Матрица рецепта с заданными различными собственными значениями.

        Args:
            recipe: имя рецепта из каталога
            oml: список кратностей
            nu: строго возрастающие значения, по одному на кратность
            graph: граф рецепта (определяет размеры блоков)

        Returns:
            PatternedMatrix или None, если численная процедура не сошлась
        """
        if recipe not in RECIPES:
            raise CatalogError(f"Неизвестный рецепт '{recipe}'")
        if len(nu) != oml.q:
            raise CatalogError(f"Нужно {oml.q} значений для {oml}, получено {len(nu)}")
        return RECIPES[recipe](oml, list(nu), graph, **options)

    def minimal_witness(self, G: Graph, oml: OML, nu: Sequence[float],
                        **options) -> Tuple[str, str, PatternedMatrix]:
        """
        Свидетель на первом минимальном подграфе, который является остовным подграфом G.

        Развернутые списки строятся отрицанием свидетеля для исходного списка.

        Returns:
            (имя подграфа, рецепт, матрица с графом, изоморфным подграфу)
        """
        table = self.store.minimal_table(G.n)
        flipped = False
        if oml not in table:
            if oml.reversed() not in table:
                raise CatalogError(f"Для {oml} нет таблицы минимальных подграфов порядка {G.n}")
            oml, nu, flipped = oml.reversed(), [-x for x in reversed(nu)], True

        for name, recipe in table[oml]:
            sub = get_named_graph(name).graph
            if not contains_spanning_copy(sub, G):
                continue
            matrix = self.instantiate(recipe, oml, nu, sub, **options)
            if matrix is None:
                continue
            return name, recipe, negate(matrix) if flipped else matrix
        raise CatalogError(f"G не содержит ни одного минимального подграфа для {oml}")

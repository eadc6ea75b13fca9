"""
Именованные графы: связные графы порядка <= 5 и семейства запрещенных миноров
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Tuple

from utils.graphs import Graph, GraphError


@dataclass(frozen=True)
class NamedGraph:
    """Граф с фиксированной канонической нумерацией и именем"""
    name: str
    graph: Graph


def _complete(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _path(n: int) -> List[Tuple[int, int]]:
    return [(i, i + 1) for i in range(1, n)]


def _cycle(n: int) -> List[Tuple[int, int]]:
    return _path(n) + [(1, n)]


def _bipartite(a: int, b: int) -> List[Tuple[int, int]]:
    return [(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)]


def _spider(arms: List[int]) -> Tuple[int, List[Tuple[int, int]]]:
    """S(l1,...,lk): центр 1, ветви нумеруются подряд"""
    edges = []
    nxt = 2
    for length in arms:
        prev = 1
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return nxt - 1, edges


# Фиксированные нумерации совпадают с шаблонами матриц каталога
GRAPH_DATA: Dict[str, Tuple[int, List[Tuple[int, int]]]] = {
    "K1": (1, []),
    "K2": (2, [(1, 2)]),
    "P3": (3, _path(3)),
    "K3": (3, _complete(3)),
    "P4": (4, _path(4)),
    "K1_3": (4, _bipartite(1, 3)),
    "Paw": (4, [(1, 2), (1, 3), (2, 3), (3, 4)]),
    "C4": (4, _cycle(4)),
    "Dmnd": (4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]),
    "K4": (4, _complete(4)),
    "P5": (5, _path(5)),
    "S(2,1,1)": _spider([2, 1, 1]),
    "K1_4": (5, _bipartite(1, 4)),
    "L(3,2)": (5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]),
    "Bull": (5, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 5)]),
    "C5": (5, _cycle(5)),
    "Campstool": (5, [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5)]),
    "Bnr": (5, _cycle(4) + [(4, 5)]),
    "Hs": (5, _cycle(4) + [(1, 5), (2, 5)]),
    "Butterfly": (5, [(1, 2), (1, 5), (2, 5), (3, 4), (3, 5), (4, 5)]),
    "K2_3": (5, _bipartite(2, 3)),
    "Dart": (5, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (2, 5)]),
    "Kite": (5, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (1, 5)]),
    "Gem": (5, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (3, 4), (4, 5)]),
    "L(4,1)": (5, _complete(4) + [(4, 5)]),
    "(K4)_e": (5, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (4, 5)]),
    "T5": (5, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]),
    "FHs": (5, _cycle(4) + [(1, 5), (2, 5), (1, 3), (2, 4)]),
    "W5": (5, _cycle(4) + [(1, 5), (2, 5), (3, 5), (4, 5)]),
    "K5-e": (5, [e for e in _complete(5) if e != (4, 5)]),
    "K5": (5, _complete(5)),
    "H-tree": (6, [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)]),
    "3-sun": (6, _complete(3) + [(1, 4), (2, 5), (3, 6)]),
    "K1_6": (7, _bipartite(1, 6)),
    "S(2,1,1,1,1)": _spider([2, 1, 1, 1, 1]),
    "S(2,2,1,1)": _spider([2, 2, 1, 1]),
    "S(2,2,2)": _spider([2, 2, 2]),
}

ALIASES = {
    "camp": "Campstool",
    "bfly": "Butterfly",
    "htree": "H-tree",
    "3sun": "3-sun",
    "diamond": "Dmnd",
    "banner": "Bnr",
    "house": "Hs",
    "fullhouse": "FHs",
    "k4e": "(K4)_e",
    "(k4)e": "(K4)_e",
    "k5minuse": "K5-e",
    "claw": "K1_3",
    "p2": "K2",
    "p1": "K1",
    "c3": "K3",
}

# Связные графы порядка <= 5 в порядке отображения каталога
CONNECTED_BY_ORDER: Dict[int, List[str]] = {
    1: ["K1"],
    2: ["K2"],
    3: ["P3", "K3"],
    4: ["P4", "K1_3", "Paw", "C4", "Dmnd", "K4"],
    5: ["P5", "S(2,1,1)", "K1_4", "L(3,2)", "Bull", "C5", "Campstool", "Bnr", "Hs",
        "Dart", "Gem", "Kite", "Butterfly", "K2_3", "T5", "L(4,1)", "FHs", "K5-e",
        "(K4)_e", "W5", "K5"],
}

# Одиннадцать минимальных миноров; первые шесть образуют F2'
ELEVEN = ["K3+K3", "K3+K1_3", "K1_3+K1_3", "C4", "Campstool", "H-tree",
          "3-sun", "K1_6", "S(2,1,1,1,1)", "S(2,2,1,1)", "S(2,2,2)"]
F2PRIME = ELEVEN[:6]
FAMILIES = {"ELEVEN": ELEVEN, "F2PRIME": F2PRIME}

_LOOKUP = {name.lower(): name for name in GRAPH_DATA}


def _normalize(name: str) -> str:
    s = name.strip().lower().replace(' ', '').replace('−', '-').replace('⊔', '+')
    s = re.sub(r'k_\{(\d+),(\d+)\}', r'k\1_\2', s)
    s = re.sub(r'^k(\d+),(\d+)$', r'k\1_\2', s)
    s = s.replace('k_1,', 'k1_')
    return s


def _single(token: str) -> Graph:
    key = ALIASES.get(token, token)
    canonical = _LOOKUP.get(key.lower())
    if canonical is not None:
        n, edges = GRAPH_DATA[canonical]
        return Graph.from_edges(n, edges)

    match = re.fullmatch(r'(\d+)([a-z(].*)', token)
    if match:
        count, inner = int(match.group(1)), _single(match.group(2))
        result = Graph.empty(0)
        for _ in range(count):
            result = result.disjoint_union(inner)
        return result

    patterns = [
        (r'k(\d+)', lambda a: (int(a), _complete(int(a)))),
        (r'p(\d+)', lambda a: (int(a), _path(int(a)))),
        (r'c(\d+)', lambda a: (int(a), _cycle(int(a)))),
    ]
    for regex, build in patterns:
        m = re.fullmatch(regex, token)
        if m:
            n, edges = build(m.group(1))
            if regex.startswith('c') and n < 3:
                raise GraphError(f"Цикл C{n} не определен")
            return Graph.from_edges(n, edges)

    m = re.fullmatch(r'k(\d+)_(\d+)', token)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return Graph.from_edges(a + b, _bipartite(a, b))

    m = re.fullmatch(r's\((\d+(?:,\d+)*)\)', token)
    if m:
        n, edges = _spider([int(x) for x in m.group(1).split(',')])
        return Graph.from_edges(n, edges)

    raise GraphError(f"Неизвестное имя графа: '{token}'")


def get_named_graph(name: str) -> NamedGraph:
    """
    Построить граф по имени (без учета регистра).

    Args:
        name: имя из каталога, параметрическое имя (K5, P7, C6, K1_4, K_{2,3}, S(2,2,2), 3K1)
              или объединение через '+' / '⊔'

    Returns:
        NamedGraph с детерминированной нумерацией
    """
    normalized = _normalize(name)
    if not normalized:
        raise GraphError("Пустое имя графа")
    graph = Graph.empty(0)
    for token in normalized.split('+'):
        graph = graph.disjoint_union(_single(token))
    return NamedGraph(name=display_name(name), graph=graph)


def display_name(name: str) -> str:
    """Каноническое написание имени (для известных графов)"""
    parts = []
    for token in _normalize(name).split('+'):
        key = ALIASES.get(token, token)
        parts.append(_LOOKUP.get(key.lower(), name.strip() if '+' not in name else token))
    return '+'.join(parts)


def connected_graphs(order: int) -> List[NamedGraph]:
    return [get_named_graph(name) for name in CONNECTED_BY_ORDER.get(order, [])]


def family_members(family: str) -> List[NamedGraph]:
    key = family.strip().upper().replace("'", "PRIME").replace('F2PRIMEPRIME', 'F2PRIME')
    if key not in FAMILIES:
        raise GraphError(f"Неизвестное семейство: '{family}' (доступны: {', '.join(FAMILIES)})")
    return [get_named_graph(name) for name in FAMILIES[key]]

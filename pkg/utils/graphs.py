"""
Графы: хранение, операции миноров, канонические формы и структурные классы
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Некорректный граф или операция над ним"""


def _normalize_edge(i: int, j: int) -> Edge:
    i, j = int(i), int(j)
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Простой неориентированный граф на вершинах 1..n"""

    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"Отрицательное число вершин: {self.n}")
        for i, j in self.edges:
            if i == j:
                raise GraphError(f"Петля в вершине {i}")
            if not (1 <= i < j <= self.n):
                raise GraphError(f"Ребро {(i, j)} вне диапазона 1..{self.n} или не упорядочено")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        """Построить граф, приводя ребра к виду i<j"""
        normalized = set()
        for edge in edges:
            i, j = edge
            if int(i) == int(j):
                raise GraphError(f"Петля в вершине {i}")
            normalized.add(_normalize_edge(i, j))
        return cls(int(n), frozenset(normalized))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, frozenset())

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _adjacency(self) -> Tuple[FrozenSet[int], ...]:
        nbrs = [set() for _ in range(self.n + 1)]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return tuple(frozenset(s) for s in nbrs)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> FrozenSet[int]:
        self._check_vertex(v)
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> List[int]:
        return [len(self._adjacency[v]) for v in self.vertices]

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and _normalize_edge(i, j) in self.edges

    def nonedges(self) -> List[Edge]:
        """Пары i<j без ребра в лексикографическом порядке"""
        return [(i, j) for i in self.vertices for j in range(i + 1, self.n + 1)
                if (i, j) not in self.edges]

    def components(self) -> List[List[int]]:
        """Компоненты связности (каждая отсортирована, упорядочены по минимальной вершине)"""
        seen = set()
        result = []
        for start in self.vertices:
            if start in seen:
                continue
            stack = [start]
            comp = []
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self._adjacency[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            result.append(sorted(comp))
        return result

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def cyclomatic_number(self) -> int:
        """m - n + c; не возрастает при взятии миноров"""
        return self.m - self.n + len(self.components())

    def is_forest(self) -> bool:
        return self.cyclomatic_number() == 0

    def is_tree(self) -> bool:
        return self.is_connected() and self.m == self.n - 1

    def is_path(self) -> bool:
        return self.is_tree() and all(d <= 2 for d in self.degrees())

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Индуцированный подграф с перенумерацией по возрастанию"""
        keep = sorted(set(vertices))
        for v in keep:
            self._check_vertex(v)
        position = {v: k + 1 for k, v in enumerate(keep)}
        edges = [(position[i], position[j]) for i, j in self.edges
                 if i in position and j in position]
        return Graph.from_edges(len(keep), edges)

    def relabel(self, mapping: Dict[int, int]) -> "Graph":
        """Переименовать вершины биекцией old -> new"""
        if sorted(mapping) != list(self.vertices) or sorted(mapping.values()) != list(self.vertices):
            raise GraphError("Перенумерация должна быть перестановкой 1..n")
        return Graph.from_edges(self.n, [(mapping[i], mapping[j]) for i, j in self.edges])

    def disjoint_union(self, other: "Graph") -> "Graph":
        shifted = [(i + self.n, j + self.n) for i, j in other.edges]
        return Graph.from_edges(self.n + other.n, list(self.edges) + shifted)

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges) + [tuple(e) for e in extra])

    def is_spanning_subgraph_of(self, other: "Graph") -> bool:
        """Совпадение вершин и включение ребер без перенумерации"""
        return self.n == other.n and self.edges <= other.edges

    # ---- Конвертация ----

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Вершины networkx-графа нумеруются по порядку обхода g.nodes"""
        position = {v: k + 1 for k, v in enumerate(g.nodes)}
        return cls.from_edges(len(position), [(position[u], position[v]) for u, v in g.edges])

    def to_graph6(self) -> str:
        return nx.to_graph6_bytes(self.to_networkx(), header=False).decode('ascii').strip()

    @classmethod
    def from_graph6(cls, text: str) -> "Graph":
        data = text.strip()
        if data.startswith('>>graph6<<'):
            data = data[len('>>graph6<<'):]
        try:
            g = nx.from_graph6_bytes(data.encode('ascii'))
        except (ValueError, nx.NetworkXError) as e:
            raise GraphError(f"Некорректная строка graph6 '{text}': {e}") from e
        return cls.from_networkx(g)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        if "n" not in data or "edges" not in data:
            raise GraphError("JSON графа должен содержать поля 'n' и 'edges'")
        return cls.from_edges(data["n"], data["edges"])

    def _check_vertex(self, v: int):
        if not (1 <= v <= self.n):
            raise GraphError(f"Вершина {v} вне диапазона 1..{self.n}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


# ---- Операции миноров ----

def delete_vertex(G: Graph, v: int) -> Graph:
    """Удалить вершину v; вершины > v сдвигаются вниз на 1"""
    G._check_vertex(v)
    return G.induced(u for u in G.vertices if u != v)


def delete_edge(G: Graph, e: Iterable[int]) -> Graph:
    i, j = e
    edge = _normalize_edge(i, j)
    if edge not in G.edges:
        raise GraphError(f"{edge} не является ребром графа")
    return Graph(G.n, G.edges - {edge})


def contract_edge(G: Graph, e: Iterable[int]) -> Graph:
    """
    Стянуть ребро {u, w} (u < w): w сливается в u, кратные ребра склеиваются,
    петли отбрасываются, вершины > w сдвигаются вниз на 1.
    """
    i, j = e
    u, w = _normalize_edge(i, j)
    if (u, w) not in G.edges:
        raise GraphError(f"{(u, w)} не является ребром графа")

    def shift(x: int) -> int:
        x = u if x == w else x
        return x - 1 if x > w else x

    edges = set()
    for a, b in G.edges:
        a2, b2 = shift(a), shift(b)
        if a2 != b2:
            edges.add(_normalize_edge(a2, b2))
    return Graph(G.n - 1, frozenset(edges))


# ---- Каноническая форма и изоморфизм ----

def _refine(colors: List[int], nbrs: List[List[int]]) -> List[int]:
    """Уточнение раскраски по мультимножествам цветов соседей (до стабилизации)"""
    classes = len(set(colors))
    while True:
        signatures = [(colors[v], tuple(sorted(colors[u] for u in nbrs[v])))
                      for v in range(len(colors))]
        ranking = {s: k for k, s in enumerate(sorted(set(signatures)))}
        colors = [ranking[s] for s in signatures]
        if len(ranking) == classes:
            return colors
        classes = len(ranking)


def canonical_form(G: Graph) -> str:
    """
    Каноническая строка графа: минимальная строка верхнего треугольника матрицы
    смежности по листьям дерева индивидуализации-уточнения.

    Перебор внутри клетки отсекается, если все вершины клетки являются близнецами
    (их транспозиция является автоморфизмом).
    """
    n = G.n
    if n == 0:
        return "0:"
    nbrs = [[u - 1 for u in G.neighbors(v)] for v in G.vertices]
    adjacency = [set(row) for row in nbrs]

    def certificate(colors: List[int]) -> str:
        order = sorted(range(n), key=colors.__getitem__)
        return ''.join('1' if order[b] in adjacency[order[a]] else '0'
                       for a in range(n) for b in range(a + 1, n))

    def twins(cell: List[int]) -> bool:
        first = cell[0]
        return all(adjacency[first] - {v} == adjacency[v] - {first} for v in cell[1:])

    def search(colors: List[int]) -> str:
        colors = _refine(colors, nbrs)
        cells: Dict[int, List[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            return certificate(colors)
        candidates = target[:1] if twins(target) else target
        best = None
        for v in candidates:
            individualized = [2 * c + 1 for c in colors]
            individualized[v] = 2 * colors[v]
            leaf = search(individualized)
            if best is None or leaf < best:
                best = leaf
        return best

    return f"{n}:{search([0] * n)}"


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.m != H.m or sorted(G.degrees()) != sorted(H.degrees()):
        return False
    return canonical_form(G) == canonical_form(H)


def find_isomorphism(G: Graph, H: Graph) -> Optional[Dict[int, int]]:
    """Биекция V(G) -> V(H), сохраняющая ребра, или None"""
    if not is_isomorphic(G, H):
        return None
    matcher = GraphMatcher(G.to_networkx(), H.to_networkx())
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)


def find_monomorphism(pattern: Graph, host: Graph) -> Optional[Dict[int, int]]:
    """Инъекция V(pattern) -> V(host), переводящая ребра в ребра, или None"""
    if pattern.n > host.n or pattern.m > host.m:
        return None
    matcher = GraphMatcher(host.to_networkx(), pattern.to_networkx())
    for mapping in matcher.subgraph_monomorphisms_iter():
        return {p: h for h, p in mapping.items()}
    return None


def contains_spanning_copy(pattern: Graph, host: Graph) -> bool:
    """Содержит ли host остовный подграф, изоморфный pattern"""
    return pattern.n == host.n and find_monomorphism(pattern, host) is not None


# ---- Структурные классы ----

def is_generalized_star(G: Graph) -> bool:
    """Дерево, в котором не более одной вершины степени >= 3"""
    return G.is_tree() and sum(1 for d in G.degrees() if d >= 3) <= 1


def cycle_vertices(G: Graph) -> List[int]:
    """Вершины единственного цикла связного унициклического графа (обрезка листьев)"""
    if not (G.is_connected() and G.m == G.n):
        raise GraphError("Граф не является связным унициклическим")
    degree = {v: G.degree(v) for v in G.vertices}
    alive = set(G.vertices)
    leaves = [v for v in G.vertices if degree[v] == 1]
    while leaves:
        v = leaves.pop()
        alive.discard(v)
        for u in G.neighbors(v):
            if u in alive:
                degree[u] -= 1
                if degree[u] == 1:
                    leaves.append(u)
    return sorted(alive)


def is_odd_unicyclic(G: Graph) -> bool:
    return G.is_connected() and G.m == G.n and len(cycle_vertices(G)) % 2 == 1


def is_generalized_3sun(G: Graph) -> bool:
    """
    Треугольник с висячими путями в его вершинах: связный унициклический граф
    с циклом длины 3, вершины треугольника степени <= 3, остальные степени <= 2.

    Допускаются пути нулевой длины (K3, Paw), иначе не выполняется
    эквивалентность с отсутствием миноров семейства F2'.
    """
    if not (G.is_connected() and G.m == G.n):
        return False
    triangle = cycle_vertices(G)
    if len(triangle) != 3:
        return False
    return all(G.degree(v) <= (3 if v in triangle else 2) for v in G.vertices)


def has_path_union_form(G: Graph) -> bool:
    """
    G есть дизъюнктное объединение G1 и путей, где G1 есть обобщенная звезда
    или обобщенное 3-солнце.
    """
    exceptional = 0
    for comp in G.components():
        H = G.induced(comp)
        if H.is_path():
            continue
        if not (is_generalized_star(H) or is_generalized_3sun(H)):
            return False
        exceptional += 1
    return exceptional <= 1

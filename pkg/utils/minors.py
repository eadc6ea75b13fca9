"""
Проверка вложения миноров полным перебором удалений и стягиваний
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set

from .config import Config
from .graphs import (Graph, canonical_form, contract_edge, delete_vertex,
                     find_monomorphism)

logger = logging.getLogger(__name__)


class MinorSearchTooLarge(ValueError):
    """Граф-хозяин превышает лимит перебора"""


@dataclass
class MinorWitness:
    """
    Последовательность операций, переводящая хозяина в граф, содержащий
    образец как подграф (шаг 'embed' задает вложение образца).
    """
    steps: List[Dict[str, Any]] = field(default_factory=list)
    mapping: Dict[int, int] = field(default_factory=dict)

    def to_list(self) -> List[Dict[str, Any]]:
        return self.steps + [{"op": "embed", "mapping": {str(k): v for k, v in sorted(self.mapping.items())}}]


class MinorSearch:
    """Поиск модели минора с мемоизацией по каноническим формам"""

    def __init__(self, pattern: Graph, max_vertices: Optional[int] = None):
        self.pattern = pattern
        self.max_vertices = max_vertices or Config.MINOR_MAX_VERTICES
        self._cyclomatic = pattern.cyclomatic_number()
        self._failed: Set[str] = set()
        self.states_visited = 0

    def find(self, host: Graph) -> Optional[MinorWitness]:
        if host.n > self.max_vertices:
            raise MinorSearchTooLarge(
                f"Граф порядка {host.n} превышает лимит {self.max_vertices} для поиска миноров"
            )
        return self._search(host, [])

    def _viable(self, cur: Graph) -> bool:
        return (cur.n >= self.pattern.n and cur.m >= self.pattern.m
                and cur.cyclomatic_number() >= self._cyclomatic)

    def _search(self, cur: Graph, steps: List[Dict[str, Any]]) -> Optional[MinorWitness]:
        if not self._viable(cur):
            return None
        mapping = find_monomorphism(self.pattern, cur)
        if mapping is not None:
            return MinorWitness(steps=list(steps), mapping=mapping)
        if cur.n == self.pattern.n:
            return None

        key = canonical_form(cur)
        if key in self._failed:
            return None
        self._failed.add(key)
        self.states_visited += 1

        for edge in cur.sorted_edges():
            found = self._search(contract_edge(cur, edge),
                                 steps + [{"op": "contract_edge", "edge": list(edge)}])
            if found is not None:
                return found
        for v in reversed(cur.vertices):
            found = self._search(delete_vertex(cur, v),
                                 steps + [{"op": "delete_vertex", "vertex": v}])
            if found is not None:
                return found
        return None


def find_minor(G: Graph, H: Graph, max_vertices: Optional[int] = None) -> Optional[MinorWitness]:
    """
    Найти свидетельство того, что G является минором H.

    Args:
        G: искомый минор
        H: граф-хозяин
        max_vertices: лимит порядка H (по умолчанию Config.MINOR_MAX_VERTICES)

    Returns:
        MinorWitness или None
    """
    search = MinorSearch(G, max_vertices)
    witness = search.find(H)
    logger.debug(f"🔄 Поиск минора: посещено состояний {search.states_visited}")
    return witness


def is_minor(G: Graph, H: Graph, max_vertices: Optional[int] = None) -> bool:
    return find_minor(G, H, max_vertices) is not None


def family_minor_check(G: Graph, family: str = "F2PRIME",
                       max_vertices: Optional[int] = None) -> Dict[str, Any]:
    """
    Какие члены семейства являются минорами G.

    Args:
        G: проверяемый граф
        family: 'ELEVEN' или 'F2PRIME'

    Returns:
        Отчет {"family", "members", "has_minor"}
    """
    from data.named_graphs import family_members

    members = [named.name for named in family_members(family)
               if is_minor(named.graph, G, max_vertices)]
    return {
        "family": family.upper(),
        "members": members,
        "has_minor": bool(members),
    }

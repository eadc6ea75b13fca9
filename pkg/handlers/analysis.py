"""
Обработчики команд анализа: check, oml, spectrum, minor, classify, family-check
"""

import json
import logging
import os
from argparse import Namespace
from typing import Any, Dict, Optional, Tuple

from data.named_graphs import get_named_graph
from database.database import catalog_db
from database.models import CatalogError
from utils.config import Config
from utils.families import build_family
from utils.graphs import (Graph, GraphError, has_path_union_form, is_generalized_3sun,
                          is_generalized_star, is_odd_unicyclic)
from utils.matrices import (MatrixError, PatternedMatrix, extreme_simplicity_check,
                            parter_wiener_witness, spectrum)
from utils.minors import family_minor_check, find_minor
from utils.strong import has_property, ssp_edge_lower_bound

logger = logging.getLogger(__name__)

Reply = Tuple[Dict[str, Any], int]

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2


# ---- Чтение входных данных ----

def _read_source(text: str) -> Tuple[Optional[str], str]:
    """Содержимое файла (если путь существует) или сама строка"""
    if os.path.isfile(text):
        with open(text, encoding='utf-8') as f:
            return text, f.read()
    return None, text


def load_graph(text: str) -> Graph:
    """
    Граф из файла (.g6 / .json), JSON-строки, имени каталога или строки graph6.

    Raises:
        GraphError: строку не удалось разобрать
    """
    path, content = _read_source(text)
    content = content.strip()
    if content.startswith('{'):
        try:
            return Graph.from_json(json.loads(content))
        except json.JSONDecodeError as e:
            raise GraphError(f"Некорректный JSON графа: {e}") from e
    if path is None:
        try:
            return get_named_graph(content).graph
        except GraphError:
            pass
    try:
        return Graph.from_graph6(content.splitlines()[0] if content else content)
    except (GraphError, ValueError, IndexError) as e:
        raise GraphError(f"Не удалось прочитать граф '{text}': {e}") from e


def _parse_params(text: str) -> Dict[str, float]:
    params = {}
    for item in filter(None, text.split(',')):
        key, sep, value = item.partition('=')
        if not sep:
            raise MatrixError(f"Параметр семейства должен иметь вид имя=значение: '{item}'")
        params[key.strip()] = float(value)
    return params


def load_matrix(text: str, pattern: Optional[Graph] = None) -> PatternedMatrix:
    """
    Матрица из JSON-файла, JSON-строки или семейства ('M1', 'M4:a=1,b=2,c=0.5').

    Raises:
        MatrixError / FamilyDomainError: некорректный ввод
    """
    path, content = _read_source(text)
    content = content.strip()
    if content.startswith('{'):
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise MatrixError(f"Некорректный JSON матрицы: {e}") from e
        return PatternedMatrix.from_json(data, pattern=pattern)
    if path is not None:
        raise MatrixError(f"Файл '{path}' не содержит JSON матрицы")
    name, _, params = content.partition(':')
    matrix = build_family(name, _parse_params(params)).matrix
    if pattern is not None:
        return PatternedMatrix(matrix.entries, pattern=pattern)
    return matrix


def parse_values(text: Optional[str]) -> Optional[list]:
    if text is None:
        return None
    try:
        return [float(x) for x in text.split(',') if x.strip()]
    except ValueError as e:
        raise MatrixError(f"Список чисел через запятую ожидался вместо '{text}'") from e


def tolerances(args: Namespace) -> Dict[str, Any]:
    """Допуски, фактически использованные командой"""
    return {
        "rank_tol": args.tol_rank if args.tol_rank is not None else Config.RANK_TOL,
        "cluster_tol": args.tol_cluster if args.tol_cluster is not None else Config.CLUSTER_TOL,
        "cluster_tol_mode": "absolute" if args.tol_cluster is not None else "relative",
        "zero_tol": Config.ZERO_TOL,
        "edge_tol": Config.EDGE_TOL,
        "pattern_tol": Config.PATTERN_TOL,
        "spectral_tol": Config.SPECTRAL_TOL,
        "strict_pattern": args.strict_pattern,
    }


class AnalysisHandlers:
    """Команды, которые только проверяют входные графы и матрицы"""

    @staticmethod
    def check(args: Namespace) -> Reply:
        """Проверить SSP/SMP/SAP (команда check)"""
        pattern = load_graph(args.graph) if args.graph else None
        A = load_matrix(args.matrix, pattern)
        certificate = has_property(A, args.prop or "ssp", args.tol_rank, cluster_tol=args.tol_cluster)
        spec = spectrum(A, args.tol_cluster)
        payload = {
            "command": "check",
            "property": certificate.property,
            "holds": certificate.holds,
            "certificate": certificate.to_dict(),
            "oml": spec.oml().to_list(),
            "graph": A.pattern.to_json(),
            "edges": A.pattern.m,
            "ssp_edge_lower_bound": ssp_edge_lower_bound(spec.oml()),
            "tolerances": tolerances(args),
        }
        status = "✅" if certificate.holds else "❌"
        logger.info(f"{status} {certificate.property}: σ_p={certificate.sigma_p}, порог={certificate.threshold:.3e}")
        return payload, EXIT_OK if certificate.holds else EXIT_FAILS

    @staticmethod
    def oml(args: Namespace) -> Reply:
        """Упорядоченный список кратностей (команда oml)"""
        A = load_matrix(args.matrix)
        spec = spectrum(A, args.tol_cluster)
        return {
            "command": "oml",
            "oml": spec.oml().to_list(),
            "distinct": spec.distinct,
            "tolerances": tolerances(args),
        }, EXIT_OK

    @staticmethod
    def spectrum(args: Namespace) -> Reply:
        """Спектр, простота крайних значений и вершина Партера–Винера (команда spectrum)"""
        A = load_matrix(args.matrix)
        spec = spectrum(A, args.tol_cluster)
        payload = {"command": "spectrum", "spectrum": spec.to_dict(), "tolerances": tolerances(args)}

        G = A.pattern
        if G.is_tree() or is_odd_unicyclic(G):
            payload["extremes"] = extreme_simplicity_check(A, args.tol_cluster)
        if args.value is not None:
            if not G.is_tree():
                raise MatrixError("Вершина Партера–Винера ищется только для матриц деревьев")
            payload["parter_wiener_vertex"] = parter_wiener_witness(A, args.value, args.tol_cluster)

        holds = payload.get("extremes", {}).get("holds", True)
        if "parter_wiener_vertex" in payload:
            holds = holds and payload["parter_wiener_vertex"] is not None
        payload["holds"] = holds
        return payload, EXIT_OK if holds else EXIT_FAILS

    @staticmethod
    def minor(args: Namespace) -> Reply:
        """Является ли первый граф минором второго (команда minor)"""
        G = load_graph(args.minor)
        H = load_graph(args.host)
        witness = find_minor(G, H)
        payload = {
            "command": "minor",
            "is_minor": witness is not None,
            "witness": witness.to_list() if witness else None,
            "mapping": {str(k): v for k, v in witness.mapping.items()} if witness else None,
        }
        return payload, EXIT_OK if witness else EXIT_FAILS

    @staticmethod
    def classify(args: Namespace) -> Reply:
        """Структурная классификация графа и его запись в каталоге (команда classify)"""
        G = load_graph(args.graph)
        f2 = family_minor_check(G, "F2PRIME")
        eleven = family_minor_check(G, "ELEVEN")
        payload = {
            "command": "classify",
            "graph": G.to_json(),
            "graph6": G.to_graph6(),
            "connected": G.is_connected(),
            "tree": G.is_tree(),
            "path": G.is_path(),
            "generalized_star": is_generalized_star(G),
            "generalized_3sun": is_generalized_3sun(G),
            "odd_unicyclic": is_odd_unicyclic(G),
            "path_union_form": has_path_union_form(G),
            "families": {"F2PRIME": f2, "ELEVEN": eleven},
            # Есть ли у связного графа SSP-матрица с двумя (соседними) кратными значениями
            "two_multiples_with_ssp": eleven["has_minor"],
            "consecutive_multiples_with_ssp": f2["has_minor"],
        }
        if G.n <= catalog_db.store.max_order:
            try:
                payload["attainable"] = {
                    mode: [o.to_list() for o in catalog_db.attainable(G, mode)] for mode in ("ANY", "SSP")
                }
            except CatalogError as e:
                logger.warning(f"⚠️ Граф не найден в каталоге: {e}")
        return payload, EXIT_OK

    @staticmethod
    def family_check(args: Namespace) -> Reply:
        """Содержит ли граф минор из семейства (команда family-check)"""
        G = load_graph(args.graph)
        report = family_minor_check(G, args.family)
        payload = {"command": "family-check", **report, "holds": report["has_minor"]}
        return payload, EXIT_OK if report["has_minor"] else EXIT_FAILS

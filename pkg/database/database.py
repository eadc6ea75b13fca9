"""
Основной модуль каталога графов порядка <= 5
"""

import logging
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from scipy import linalg

from data.named_graphs import CONNECTED_BY_ORDER, ELEVEN, F2PRIME, get_named_graph
from utils.config import Config
from utils.families import build_family
from utils.graphs import Graph, contains_spanning_copy, has_path_union_form
from utils.matrices import OrderedMultiplicityList, PatternedMatrix, spectral_distance, spectrum
from utils.minors import family_minor_check
from utils.realize import (RealizationResult, certify, isospectral_lift, place_on_supergraph,
                           realize_distinct)
from utils.strong import has_property, ssp_edge_lower_bound

from .models import (CatalogEntry, CatalogError, CatalogStore, GraphRecords, WitnessRecords,
                     any_fact_reasons, compositions, interleavings, ssp_fact_reasons)

logger = logging.getLogger(__name__)

OML = OrderedMultiplicityList

SCOPES = ("order4", "order5", "minors")

# Опции, которые понимает итоговая проверка матрицы
CERTIFY_OPTIONS = ("strict", "rank_tol", "cluster_tol", "spectral_tol")


def _certify_options(options: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v for k, v in options.items() if k in CERTIFY_OPTIONS}


def _as_oml(value: Union[str, Sequence[int], OML]) -> OML:
    if isinstance(value, OML):
        return value
    if isinstance(value, str):
        return OML.parse(value)
    return OML.of(value)


def _row(row_id: str, check: str, passed: bool, **details) -> dict:
    return {"id": row_id, "check": check, "passed": bool(passed), "details": details}


def _two_multiples(oml: OML) -> bool:
    return sum(1 for m in oml.multiplicities if m > 1) >= 2


def _consecutive_multiples(oml: OML) -> bool:
    m = oml.multiplicities
    return any(a > 1 and b > 1 for a, b in zip(m, m[1:]))


class Catalog:
    """Главный класс для работы с каталогом"""

    def __init__(self, path: Optional[str] = None):
        self.store = CatalogStore(path)
        self.graphs = GraphRecords(self.store)
        self.witnesses = WitnessRecords(self.store)

    # ---- Запросы ----

    def attainable(self, G: Graph, mode: str = "ANY") -> List[OML]:
        """Достижимые списки кратностей в каноническом порядке (по длине, затем лексикографически)"""
        return sorted(self.graphs.attainable(G, mode), key=lambda o: (o.q, o.multiplicities))

    def entry(self, G: Graph) -> CatalogEntry:
        return self.graphs.lookup(G)

    def summary(self) -> Dict[str, Any]:
        """Сводка по порядкам: списки с SSP и списки, достижимые только без SSP"""
        orders = {}
        for order in sorted(CONNECTED_BY_ORDER):
            orders[str(order)] = [
                {
                    "graph": entry.name,
                    "ssp": [o.key() for o in entry.ssp],
                    "any_only": [o.key() for o in entry.any if o not in entry.ssp],
                }
                for entry in self.graphs.by_order(order)
            ]
        return {"version": self.store.version, "orders": orders}

    # ---- Построение свидетелей ----

    @staticmethod
    def _targets(oml: OML, target: Optional[Sequence[float]], seed: Optional[int]) -> List[float]:
        if target is None:
            rng = np.random.default_rng(Config.SEED if seed is None else seed)
            start = rng.uniform(-3.0, 0.0)
            gaps = rng.uniform(0.5, 2.0, size=oml.q - 1)
            return [float(start)] + [float(start + g) for g in np.cumsum(gaps)]
        nu = [float(x) for x in target]
        if len(nu) != oml.q:
            raise CatalogError(f"Нужно {oml.q} различных значений для {oml}, получено {len(nu)}")
        if any(b <= a for a, b in zip(nu, nu[1:])):
            raise CatalogError("Целевые значения должны строго возрастать")
        return nu

    def spectrally_arbitrary_demo(self, G: Graph, oml, target: Optional[Sequence[float]] = None,
                                  mode: str = "SSP", seed: Optional[int] = None,
                                  **options) -> RealizationResult:
        """
        Реализовать список кратностей на G с заданными различными значениями.

        Args:
            G: граф порядка <= 5 (нумерация произвольная)
            oml: список кратностей
            target: различные значения по возрастанию; по умолчанию случайные с seed
            mode: 'SSP' или 'ANY'

        Returns:
            RealizationResult с проверкой шаблона, спектра и (в режиме SSP) свойства

        Raises:
            CatalogError: список недостижим в данном режиме
        """
        oml = _as_oml(oml)
        mode = mode.upper()
        available = self.graphs.attainable(G, mode)
        if oml not in available:
            raise CatalogError(f"Список {oml} недостижим для данного графа в режиме {mode}")
        nu = self._targets(oml, target, seed)
        eigs = [x for x, m in zip(nu, oml.multiplicities) for _ in range(m)]

        if not G.is_connected():
            result = self._disconnected_demo(G, oml, nu, mode, seed, options)
        else:
            entry = self.graphs.lookup(G)
            if oml in entry.ssp:
                result = self._ssp_demo(G, oml, nu, seed, options)
            else:
                recipe = entry.any_recipes.get(oml.key())
                if recipe is None:
                    raise CatalogError(f"Для {entry.name} и {oml} нет рецепта без SSP")
                matrix = self.witnesses.instantiate(recipe, oml, nu, G, seed=seed)
                if matrix is None:
                    raise CatalogError(f"Рецепт {recipe} не сошелся для {entry.name} и {oml}")
                result = certify(place_on_supergraph(matrix, G), G, eigs, require=None,
                                 method=f"catalog:{recipe}", **_certify_options(options))

        self._check_target(result, oml, eigs, options.get("spectral_tol"))
        return result

    def _ssp_demo(self, G: Graph, oml: OML, nu: List[float], seed, options) -> RealizationResult:
        if all(m == 1 for m in oml.multiplicities):
            result = realize_distinct(G, nu, seed=seed, **options)
            result.method = "catalog:diagonal"
            return result
        recipe_options = {k: v for k, v in options.items() if k != "strict"}
        name, recipe, matrix = self.witnesses.minimal_witness(G, oml, nu, seed=seed, **recipe_options)
        result = isospectral_lift(place_on_supergraph(matrix, G), G, require="ssp", seed=seed, **options)
        result.method = f"catalog:{recipe}"
        result.diagnostics["minimal_subgraph"] = name
        return result

    def _disconnected_demo(self, G: Graph, oml: OML, nu: List[float], mode: str, seed,
                           options) -> RealizationResult:
        comps = G.components()
        parts = [G.induced(comp) for comp in comps]
        choices = [sorted(self.graphs.attainable(H, mode), key=lambda o: o.multiplicities) for H in parts]
        for combo in product(*choices):
            for merged, groups in interleavings([o.multiplicities for o in combo], mode == "ANY"):
                if merged != oml.multiplicities:
                    continue
                blocks = []
                for c, H in enumerate(parts):
                    values = [nu[g] for g, members in enumerate(groups) if c in members]
                    res = self.spectrally_arbitrary_demo(H, combo[c], values, mode, seed, **options)
                    if not res.converged:
                        res.diagnostics["component"] = comps[c]
                        return res
                    blocks.append(res.matrix.entries)
                concat = [v for comp in comps for v in comp]
                order = [concat.index(v) + 1 for v in G.vertices]
                B = PatternedMatrix(linalg.block_diag(*blocks)).permuted(order)
                eigs = [x for x, m in zip(nu, oml.multiplicities) for _ in range(m)]
                result = certify(B, G, eigs, require="ssp" if mode == "SSP" else None,
                                 method="catalog:direct_sum", **_certify_options(options))
                result.diagnostics["components"] = [[list(comp), combo[c].key()] for c, comp in enumerate(comps)]
                return result
        raise CatalogError(f"Не найдено разбиение {oml} по компонентам")

    @staticmethod
    def _check_target(result: RealizationResult, oml: OML, eigs: List[float], spectral_tol):
        tol = Config.SPECTRAL_TOL if spectral_tol is None else spectral_tol
        if result.achieved_spectrum is None:
            result.converged = False
            return
        residual = spectral_distance(result.achieved_spectrum.eigenvalues, eigs)
        result.diagnostics["target_residual"] = residual
        result.diagnostics["target_oml"] = oml.to_list()
        if residual > tol or result.achieved_spectrum.oml() != oml:
            result.converged = False

    # ---- Проверка ----

    def verify_catalog(self, scope: str = "order5", seed: Optional[int] = None) -> Dict[str, Any]:
        """
        Перепроверить каталог.

        Args:
            scope: 'order4' (графы порядка <= 4 и свидетели первой таблицы),
                   'order5' (порядок 5, семейства и матрицы с двумя двойными значениями),
                   'minors' (согласованность проверок миноров)
            seed: зерно для случайных целевых спектров

        Returns:
            Отчет {"scope", "rows", "passed", "failed", "holds"}
        """
        scope = scope.lower()
        if scope not in SCOPES:
            raise CatalogError(f"Неизвестная область проверки '{scope}' (доступны: {', '.join(SCOPES)})")
        seed = Config.SEED if seed is None else seed

        rows: List[dict] = []
        if scope == "minors":
            rows.extend(self._verify_minors())
        else:
            orders = [1, 2, 3, 4] if scope == "order4" else [5]
            rows.extend(self._verify_witnesses(scope))
            for order in orders:
                for entry in self.graphs.by_order(order):
                    rows.extend(self._verify_coherence(entry))
                    rows.extend(self._verify_demos(entry, seed))

        failed = [row for row in rows if not row["passed"]]
        for row in failed:
            logger.warning(f"⚠️ {row['id']}: проверка '{row['check']}' не пройдена")
        logger.info(f"📊 Проверка каталога ({scope}): {len(rows) - len(failed)}/{len(rows)}")
        return {
            "scope": scope,
            "version": self.store.version,
            "rows": rows,
            "passed": len(rows) - len(failed),
            "failed": len(failed),
            "holds": not failed,
        }

    def _verify_witnesses(self, scope: str) -> List[dict]:
        rows = []
        for raw in self.store.witnesses(scope):
            family = build_family(raw["family"], raw.get("params"))
            matrix = family.matrix
            spec = spectrum(matrix)
            expected_oml = OML.parse(raw["oml"])
            rows.append(_row(raw["id"], "oml", spec.oml() == expected_oml,
                             expected=expected_oml.to_list(), actual=spec.oml().to_list()))
            if family.expected_spectrum is not None:
                gap = spectral_distance(spec.eigenvalues, family.expected_spectrum)
                rows.append(_row(raw["id"], "spectrum", gap <= 1e-9, residual=gap))
            if "spectrum" in raw:
                gap = spectral_distance(spec.eigenvalues, raw["spectrum"])
                rows.append(_row(raw["id"], "printed_spectrum", gap <= raw.get("spectrum_tol", 1e-9),
                                 residual=gap))
            certificate = has_property(matrix, raw["property"])
            robust = certificate.p == 0 or (certificate.sigma_p or 0.0) > 1e-6
            rows.append(_row(raw["id"], raw["property"].lower(), certificate.holds and robust,
                             certificate=certificate.to_dict()))
            if "fails" in raw:
                failing = has_property(matrix, raw["fails"])
                rows.append(_row(raw["id"], f"no_{raw['fails'].lower()}", not failing.holds,
                                 certificate=failing.to_dict()))
        return rows

    def _verify_coherence(self, entry: CatalogEntry) -> List[dict]:
        rows = []
        name = entry.name
        rows.append(_row(name, "ssp_subset_any", set(entry.ssp) <= set(entry.any)))

        wrong = []
        for oml in compositions(entry.order):
            excluded = bool(any_fact_reasons(entry.facts, oml))
            if excluded == (oml in entry.any):
                wrong.append(oml.key())
            elif oml in entry.any and bool(ssp_fact_reasons(entry.facts, oml)) == (oml in entry.ssp):
                wrong.append(oml.key())
        rows.append(_row(name, "facts_explain_exclusions", not wrong, mismatched=wrong))

        table = self.store.minimal_table(entry.order)
        from_table = set()
        for oml in compositions(entry.order):
            key = oml if oml in table else oml.reversed()
            subgraphs = table.get(key, [])
            if any(contains_spanning_copy(get_named_graph(sub).graph, entry.graph) for sub, _ in subgraphs):
                from_table.add(oml)
        rows.append(_row(name, "minimal_subgraphs", from_table == set(entry.ssp),
                         missing=[o.key() for o in set(entry.ssp) - from_table],
                         extra=[o.key() for o in from_table - set(entry.ssp)]))

        over = [o.key() for o in entry.ssp if ssp_edge_lower_bound(o) > entry.graph.m]
        rows.append(_row(name, "edge_bound", not over, violations=over))
        return rows

    def _verify_demos(self, entry: CatalogEntry, seed: int) -> List[dict]:
        rows = []
        for k, oml in enumerate(entry.any):
            mode = "SSP" if oml in entry.ssp else "ANY"
            try:
                result = self.spectrally_arbitrary_demo(entry.graph, oml, mode=mode, seed=seed + k)
            except (CatalogError, ValueError) as e:
                rows.append(_row(f"{entry.name} {oml}", f"realize_{mode.lower()}", False, error=str(e)))
                continue
            rows.append(_row(f"{entry.name} {oml}", f"realize_{mode.lower()}", result.converged,
                             method=result.method, residual=result.spectral_residual))
        return rows

    def _verify_minors(self) -> List[dict]:
        rows = []
        names = [name for order in sorted(CONNECTED_BY_ORDER) for name in CONNECTED_BY_ORDER[order]]
        for member in ELEVEN:
            G = get_named_graph(member).graph
            report = family_minor_check(G, "ELEVEN")
            rows.append(_row(member, "self_minor", member in report["members"]))
            if member in F2PRIME:
                rows.append(_row(member, "f2prime_self_minor", member in family_minor_check(G)["members"]))

        for name in names + [m for m in ELEVEN if m not in names]:
            G = get_named_graph(name).graph
            f2 = family_minor_check(G, "F2PRIME")
            eleven = family_minor_check(G, "ELEVEN")
            rows.append(_row(name, "f2prime_structure", f2["has_minor"] != has_path_union_form(G),
                             members=f2["members"]))
            rows.append(_row(name, "families_nested", set(f2["members"]) <= set(eleven["members"])))
            if name in names:
                entry = self.graphs.lookup(G)
                rows.append(_row(name, "two_multiples", any(_two_multiples(o) for o in entry.ssp) == eleven["has_minor"],
                                 members=eleven["members"]))
                rows.append(_row(name, "consecutive_multiples",
                                 any(_consecutive_multiples(o) for o in entry.ssp) == f2["has_minor"]))
        return rows


# Создаем экземпляр каталога
catalog_db = Catalog()

"""
Обработчики конструктивных команд: realize, augment, decontract, lift, catalog, verify
"""

import logging
from argparse import Namespace
from typing import Any, Dict

from database.database import catalog_db
from database.models import CatalogError
from utils.graphs import Graph
from utils.matrices import OrderedMultiplicityList
from utils.realize import (RealizationResult, augment, cycle_double_eigenvalue,
                           decontract, isospectral_lift, minor_monotone_lift,
                           place_on_supergraph, realize_distinct)

from .analysis import (EXIT_FAILS, EXIT_OK, Reply, load_graph, load_matrix, parse_values,
                       tolerances)

logger = logging.getLogger(__name__)


def _options(args: Namespace) -> Dict[str, Any]:
    """Опции численных процедур из флагов командной строки"""
    return {
        "seed": args.seed,
        "max_iters": args.max_iters,
        "rank_tol": args.tol_rank,
        "cluster_tol": args.tol_cluster,
        "strict": args.strict_pattern,
    }


def _require(args: Namespace) -> str:
    return args.prop or "ssp"


def _reply(command: str, result: RealizationResult, args: Namespace) -> Reply:
    payload = {"command": command, **result.to_dict(), "tolerances": tolerances(args)}
    if result.converged:
        logger.info(f"✅ {command}: {result.method}, невязка {result.spectral_residual:.2e}")
    else:
        logger.warning(f"⚠️ {command}: построение не сошлось ({result.method})")
    return payload, EXIT_OK if result.converged else EXIT_FAILS


def _is_cycle(G: Graph) -> bool:
    return G.n >= 3 and G.is_connected() and all(d == 2 for d in G.degrees())


class ConstructHandlers:
    """Команды, строящие матрицы и отчеты каталога"""

    @staticmethod
    def realize(args: Namespace) -> Reply:
        """
        Реализовать список кратностей на графе (команда realize).

        Порядок <= 5: рецепты каталога. Больший порядок: различные значения
        на любом графе или одно двойное значение на цикле.
        """
        G = load_graph(args.graph)
        oml = OrderedMultiplicityList.parse(args.oml)
        if oml.order != G.n:
            raise CatalogError(f"Список {oml} задает порядок {oml.order}, а у графа {G.n} вершин")
        target = parse_values(args.spectrum)
        options = _options(args)

        if G.n <= catalog_db.store.max_order:
            mode = (args.mode or "SSP").upper()
            seed = options.pop("seed")
            result = catalog_db.spectrally_arbitrary_demo(G, oml, target, mode=mode, seed=seed, **options)
            return _reply("realize", result, args)

        if target is None or len(target) != oml.q:
            raise CatalogError(f"Для графа порядка {G.n} нужно задать {oml.q} значений через --spectrum")
        if all(m == 1 for m in oml.multiplicities):
            return _reply("realize", realize_distinct(G, target, **options), args)
        doubles = [k for k, m in enumerate(oml.multiplicities) if m > 1]
        if _is_cycle(G) and len(doubles) == 1 and oml.multiplicities[doubles[0]] == 2:
            result = cycle_double_eigenvalue(G.n, target, doubles[0] + 1, **options)
            if result.converged:
                result.matrix = place_on_supergraph(result.matrix, G)
            return _reply("realize", result, args)
        raise CatalogError(f"Нет процедуры для {oml} на графе порядка {G.n} вне каталога")

    @staticmethod
    def augment(args: Namespace) -> Reply:
        """Присоединить вершину к множеству alpha (команда augment)"""
        A = load_matrix(args.matrix)
        alpha = [int(v) for v in parse_values(args.alpha)]
        result = augment(A, args.value, alpha, require=_require(args), **_options(args))
        return _reply("augment", result, args)

    @staticmethod
    def decontract(args: Namespace) -> Reply:
        """Расщепить вершину v на две (команда decontract)"""
        A = load_matrix(args.matrix)
        alpha = [int(v) for v in parse_values(args.alpha)]
        beta = [int(v) for v in parse_values(args.beta or "")]
        options = _options(args)
        result = decontract(A, args.vertex, alpha, beta, args.value, require=_require(args),
                            strict=options["strict"], seed=options["seed"],
                            max_iters=options["max_iters"], rank_tol=options["rank_tol"],
                            cluster_tol=options["cluster_tol"])
        return _reply("decontract", result, args)

    @staticmethod
    def lift(args: Namespace) -> Reply:
        """
        Поднять матрицу на больший граф (команда lift).

        Тот же порядок и надграф: изоспектральный подъем. Иначе граф матрицы
        должен быть минором целевого графа.
        """
        A = load_matrix(args.matrix)
        H = load_graph(args.graph)
        if H.n == A.n and A.pattern.is_spanning_subgraph_of(H):
            result = isospectral_lift(A, H, require=_require(args), **_options(args))
        else:
            result = minor_monotone_lift(A, H, require=_require(args), **_options(args))
        return _reply("lift", result, args)

    @staticmethod
    def catalog(args: Namespace) -> Reply:
        """Запись каталога для графа или сводка по порядкам (команда catalog)"""
        if not args.graph:
            return {"command": "catalog", **catalog_db.summary()}, EXIT_OK

        G = load_graph(args.graph)
        payload: Dict[str, Any] = {"command": "catalog", "version": catalog_db.store.version}
        if G.is_connected():
            payload["entry"] = catalog_db.entry(G).to_dict()
        else:
            payload["components"] = [catalog_db.entry(G.induced(comp)).name for comp in G.components()]
        payload["attainable"] = {
            mode: [o.to_list() for o in catalog_db.attainable(G, mode)] for mode in ("ANY", "SSP")
        }
        return payload, EXIT_OK

    @staticmethod
    def verify(args: Namespace) -> Reply:
        """Перепроверить каталог (команда verify)"""
        report = catalog_db.verify_catalog(args.scope, args.seed)
        payload = {"command": "verify", **report, "tolerances": tolerances(args)}
        return payload, EXIT_OK if report["holds"] else EXIT_FAILS

#!/usr/bin/env python3
"""
IEPG toolkit

Обратная задача собственных значений для графов: сильные свойства SSP/SMP/SAP,
миноры, конструктивные реализации и каталог графов порядка <= 5.

Каждый запуск печатает в stdout ровно один JSON-документ.
Коды выхода: 0 - успех / свойство выполнено, 1 - свойство не выполнено /
построение невозможно или не сошлось, 2 - ошибка использования или ввода.

Версия: 1.0.0
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional

import numpy as np

# Импортируем наши модули
from utils.config import Config
from utils.families import FamilyDomainError
from utils.graphs import GraphError
from utils.matrices import MatrixError
from utils.minors import MinorSearchTooLarge
from utils.realize import RealizationError
from database.models import CatalogError
from handlers.analysis import EXIT_USAGE, AnalysisHandlers
from handlers.construct import ConstructHandlers

logger = logging.getLogger(__name__)

# Ошибки ввода и нарушенные предусловия: код выхода 2
INPUT_ERRORS = (GraphError, MatrixError, FamilyDomainError, RealizationError, CatalogError,
                MinorSearchTooLarge)


class UsageError(ValueError):
    """Некорректные аргументы командной строки"""


class CliParser(argparse.ArgumentParser):
    """ArgumentParser, который не завершает процесс, а сообщает об ошибке исключением"""

    def error(self, message):
        raise UsageError(message)


def setup_logging():
    """Настройка логирования: файл и stderr (stdout занят JSON-ответом)"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if Config.LOG_FILE:
        handlers.insert(0, logging.FileHandler(Config.LOG_FILE, encoding='utf-8'))
    logging.basicConfig(
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        level=getattr(logging, Config.LOG_LEVEL, logging.INFO),
        handlers=handlers,
    )


def _json_default(value: Any):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f"Объект типа {type(value).__name__} не сериализуется в JSON")


def _inline(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False, default=_json_default)


def _nested(value: Any) -> bool:
    items = value.values() if isinstance(value, dict) else value if isinstance(value, list) else ()
    return any(isinstance(item, (dict, list)) for item in items)


def render_text(payload: Any, indent: int = 0) -> str:
    """Текстовое представление ответа (--format text): вложенные блоки с отступами"""
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            if _nested(value) or (isinstance(value, dict) and value):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(value)}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, (dict, list)) and (_nested(item) or isinstance(item, dict)):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_inline(payload)}")
    return "\n".join(lines)


class IepgCli:
    """Командная строка IEPG toolkit"""

    def __init__(self):
        self.parser = self._build_parser()

    @staticmethod
    def _common() -> argparse.ArgumentParser:
        """Флаги, общие для всех подкоманд"""
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--prop", choices=["ssp", "smp", "sap", "none"], type=str.lower,
                            help="сильное свойство (по умолчанию ssp)")
        common.add_argument("--tol-rank", type=float, default=None,
                            help="порог σ_p (по умолчанию max(dims)·eps·σ₁)")
        common.add_argument("--tol-cluster", type=float, default=None,
                            help="абсолютный допуск кластеризации собственных значений")
        common.add_argument("--seed", type=int, default=None, help=f"зерно (по умолчанию {Config.SEED})")
        common.add_argument("--max-iters", type=int, default=None,
                            help=f"итерации корректора (по умолчанию {Config.MAX_ITERS})")
        common.add_argument("--format", choices=["json", "text"], default="json")
        common.add_argument("--strict-pattern", action=argparse.BooleanOptionalAction, default=True,
                            help="обнулять элементы вне шаблона и требовать ненулевые ребра")
        return common

    def _build_parser(self) -> CliParser:
        common = self._common()
        parser = CliParser(prog="iepg", description="Инструменты обратной задачи собственных значений графов")
        sub = parser.add_subparsers(dest="command", parser_class=CliParser)
        sub.required = True

        def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
            command = sub.add_parser(name, parents=[common], help=help_text)
            command.set_defaults(handler=handler)
            return command

        # === АНАЛИЗ ===
        check = add("check", AnalysisHandlers.check, "проверить SSP/SMP/SAP")
        check.add_argument("matrix", help="JSON-файл, JSON-строка или семейство (M4:a=1,b=1,c=0.5)")
        check.add_argument("--graph", help="требуемый граф матрицы")

        add("oml", AnalysisHandlers.oml, "список кратностей").add_argument("matrix")

        spectrum = add("spectrum", AnalysisHandlers.spectrum, "спектр и факты о крайних значениях")
        spectrum.add_argument("matrix")
        spectrum.add_argument("--value", type=float, help="кратное значение для вершины Партера–Винера")

        minor = add("minor", AnalysisHandlers.minor, "проверка минора")
        minor.add_argument("minor", help="искомый минор")
        minor.add_argument("host", help="граф-хозяин")

        add("classify", AnalysisHandlers.classify, "структурная классификация графа").add_argument("graph")

        family = add("family-check", AnalysisHandlers.family_check, "миноры из семейства")
        family.add_argument("graph")
        family.add_argument("--family", default="F2PRIME", help="ELEVEN или F2PRIME")

        # === ПОСТРОЕНИЯ ===
        realize = add("realize", ConstructHandlers.realize, "реализовать список кратностей")
        realize.add_argument("--graph", required=True)
        realize.add_argument("--oml", required=True, help="например 2,2,1")
        realize.add_argument("--spectrum", help="различные значения через запятую")
        realize.add_argument("--mode", choices=["SSP", "ANY"], type=str.upper, default="SSP")

        augment = add("augment", ConstructHandlers.augment, "присоединить вершину")
        augment.add_argument("matrix")
        augment.add_argument("--value", type=float, required=True)
        augment.add_argument("--alpha", required=True, help="вершины через запятую")

        decontract = add("decontract", ConstructHandlers.decontract, "расщепить вершину")
        decontract.add_argument("matrix")
        decontract.add_argument("--vertex", type=int, required=True)
        decontract.add_argument("--alpha", required=True)
        decontract.add_argument("--beta", default="")
        decontract.add_argument("--value", type=float, default=None, help="λ (по умолчанию подбирается)")

        lift = add("lift", ConstructHandlers.lift, "поднять матрицу на надграф или граф с минором")
        lift.add_argument("matrix")
        lift.add_argument("--graph", required=True)

        catalog = add("catalog", ConstructHandlers.catalog, "запись каталога или сводка")
        catalog.add_argument("graph", nargs="?")

        verify = add("verify", ConstructHandlers.verify, "перепроверить каталог")
        verify.add_argument("--scope", choices=["order4", "order5", "minors"], type=str.lower,
                            default="order5")
        return parser

    @staticmethod
    def _emit(payload: Dict[str, Any], fmt: str):
        if fmt == "text":
            print(render_text(payload))
        else:
            print(json.dumps(payload, ensure_ascii=False, indent=2, default=_json_default))

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Разобрать аргументы, выполнить подкоманду и напечатать ответ"""
        fmt = "json"
        try:
            Config.validate()
            args = self.parser.parse_args(argv)
            fmt = args.format
            payload, code = args.handler(args)
        except UsageError as e:
            logger.error(f"❌ Ошибка аргументов: {e}")
            self._emit({"error": str(e), "type": "UsageError"}, fmt)
            return EXIT_USAGE
        except INPUT_ERRORS as e:
            logger.error(f"❌ {type(e).__name__}: {e}")
            self._emit({"error": str(e), "type": type(e).__name__}, fmt)
            return EXIT_USAGE
        except ValueError as e:
            logger.error(f"❌ Некорректный ввод: {e}")
            self._emit({"error": str(e), "type": type(e).__name__}, fmt)
            return EXIT_USAGE

        self._emit(payload, fmt)
        return code


def main(argv: Optional[List[str]] = None) -> int:
    """Точка входа"""
    setup_logging()
    return IepgCli().run(argv)


if __name__ == "__main__":
    sys.exit(main())

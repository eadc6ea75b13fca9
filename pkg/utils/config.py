"""
Конфигурация IEPG toolkit
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Загружаем переменные окружения
load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent


def _float_env(name: str, default: str) -> float:
    return float(os.getenv(name, default))


class Config:
    """Класс конфигурации: все допуски, сиды и лимиты в одном месте"""

    # Численные допуски
    ZERO_TOL = _float_env('IEPG_ZERO_TOL', '1e-12')  # |a_ij| <= ZERO_TOL считается нулем
    CLUSTER_TOL = _float_env('IEPG_CLUSTER_TOL', '1e-8')  # относительно max(1, rho(A))
    # Пустое значение = масштабированный порог max(dims)*eps*sigma_1
    RANK_TOL = float(os.getenv('IEPG_RANK_TOL')) if os.getenv('IEPG_RANK_TOL') else None
    EDGE_TOL = _float_env('IEPG_EDGE_TOL', '1e-8')  # минимальный модуль ребра в реализациях
    PATTERN_TOL = _float_env('IEPG_PATTERN_TOL', '1e-10')  # обнуление вне шаблона (strict)
    SYMMETRY_TOL = _float_env('IEPG_SYMMETRY_TOL', '1e-14')
    SPECTRAL_TOL = _float_env('IEPG_SPECTRAL_TOL', '1e-8')  # допустимое отклонение спектра реализации

    # Воспроизводимость и итерации
    SEED = int(os.getenv('IEPG_SEED', 20240607))
    MAX_ITERS = int(os.getenv('IEPG_MAX_ITERS', 200))
    MAX_RESTARTS = int(os.getenv('IEPG_MAX_RESTARTS', 20))
    DECONTRACT_MAX_DOUBLINGS = int(os.getenv('IEPG_DECONTRACT_MAX_DOUBLINGS', 10))

    # Поиск миноров
    MINOR_MAX_VERTICES = int(os.getenv('IEPG_MINOR_MAX_VERTICES', 12))

    # Каталог и логи
    CATALOG_PATH = os.getenv('IEPG_CATALOG_PATH', str(BASE_DIR / 'data' / 'catalog.json'))
    LOG_FILE = os.getenv('IEPG_LOG_FILE', 'iepg.log')
    LOG_LEVEL = os.getenv('IEPG_LOG_LEVEL', 'INFO').upper()

    @classmethod
    def validate(cls):
        """Валидация конфигурации"""
        for name in ('ZERO_TOL', 'CLUSTER_TOL', 'EDGE_TOL', 'PATTERN_TOL', 'SYMMETRY_TOL',
                     'SPECTRAL_TOL'):
            if getattr(cls, name) <= 0:
                raise ValueError(f"IEPG_{name} должен быть положительным")

        if cls.RANK_TOL is not None and cls.RANK_TOL <= 0:
            raise ValueError("IEPG_RANK_TOL должен быть положительным или пустым")

        for name in ('MAX_ITERS', 'MAX_RESTARTS', 'MINOR_MAX_VERTICES'):
            if getattr(cls, name) < 1:
                raise ValueError(f"IEPG_{name} должен быть не меньше 1")

        if cls.DECONTRACT_MAX_DOUBLINGS < 0:
            raise ValueError("IEPG_DECONTRACT_MAX_DOUBLINGS не может быть отрицательным")

        if not Path(cls.CATALOG_PATH).exists():
            raise ValueError(f"Файл каталога не найден: {cls.CATALOG_PATH}")

        return True

    @classmethod
    def as_dict(cls) -> dict:
        """Текущие значения для встраивания в отчеты"""
        return {
            "zero_tol": cls.ZERO_TOL,
            "cluster_tol": cls.CLUSTER_TOL,
            "rank_tol": cls.RANK_TOL,
            "edge_tol": cls.EDGE_TOL,
            "pattern_tol": cls.PATTERN_TOL,
            "spectral_tol": cls.SPECTRAL_TOL,
            "seed": cls.SEED,
            "max_iters": cls.MAX_ITERS,
            "max_restarts": cls.MAX_RESTARTS,
            "minor_max_vertices": cls.MINOR_MAX_VERTICES,
        }


# Проверяем наличие обязательных параметров при импорте
if __name__ == "__main__":
    try:
        Config.validate()
        print("✅ Конфигурация валидна")
    except ValueError as e:
        print(f"❌ Ошибка конфигурации: {e}")
        print("Убедитесь, что .env файл заполнен по образцу .env.example")

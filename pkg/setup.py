#!/usr/bin/env python3
"""
Скрипт настройки IEPG toolkit
"""

import sys
from pathlib import Path


def create_env_file():
    """Создать .env файл из примера"""
    env_example = Path(".env.example")
    env_file = Path(".env")

    if env_file.exists():
        print("⚠️  .env файл уже существует")
        response = input("Перезаписать? (y/N): ").lower()
        if response != 'y':
            return True

    if not env_example.exists():
        print("❌ Файл .env.example не найден")
        return False

    env_file.write_text(env_example.read_text(encoding='utf-8'), encoding='utf-8')
    print("✅ Создан файл .env")
    return True


def check_catalog():
    """Загрузить каталог и проверить конфигурацию"""
    print("📊 Проверка каталога...")
    try:
        from utils.config import Config
        from database.database import catalog_db

        Config.validate()
        entries = catalog_db.graphs.all()
        print(f"✅ Каталог {catalog_db.store.version}: {len(entries)} связных графов порядка <= "
              f"{catalog_db.store.max_order}")
        return True
    except Exception as e:
        print(f"❌ Ошибка загрузки каталога: {e}")
        return False


def main():
    """Главная функция настройки"""
    print("🎉 Настройка IEPG toolkit")
    print("=" * 40)

    if sys.version_info < (3, 9):
        print("❌ Требуется Python 3.9 или выше")
        print(f"Текущая версия: {sys.version}")
        return False

    print("\n1️⃣ Создание конфигурации...")
    if not create_env_file():
        return False

    print("\n2️⃣ Установка зависимостей...")
    print("Выполните команду: pip install -r requirements.txt")

    print("\n3️⃣ Настройка .env файла (все параметры необязательны):")
    print("• IEPG_SEED - зерно для случайных построений")
    print("• IEPG_RANK_TOL - фиксированный порог ранга (пусто = масштабированный)")
    print("• IEPG_CLUSTER_TOL - относительный допуск кластеризации")
    print("• IEPG_LOG_FILE - файл лога")

    print("\n4️⃣ Проверка каталога...")
    response = input("Загрузить каталог сейчас? (Y/n): ").lower()
    if response != 'n':
        if not check_catalog():
            print("⚠️  Каталог не загружен")

    print("\n✅ Настройка завершена!")
    print("\n🚀 Для полной проверки каталога выполните:")
    print("python main.py verify --scope order5")

    return True


if __name__ == "__main__":
    try:
        success = main()
        sys.exit(0 if success else 1)
    except KeyboardInterrupt:
        print("\n👋 Настройка прервана")
        sys.exit(1)
    except Exception as e:
        print(f"\n❌ Ошибка настройки: {e}")
        sys.exit(1)

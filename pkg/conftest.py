"""
Общие фикстуры тестов
"""

import logging
import os

import numpy as np
import pytest

# Тесты не пишут лог-файл в рабочий каталог
os.environ.setdefault('IEPG_LOG_FILE', '')

from utils.graphs import Graph  # noqa: E402
from utils.matrices import PatternedMatrix  # noqa: E402

logging.basicConfig(level=logging.INFO)


def random_graph(rng: np.random.Generator, n: int, density: float = 0.5) -> Graph:
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < density]
    return Graph.from_edges(n, edges)


def random_patterned(rng: np.random.Generator, G: Graph) -> PatternedMatrix:
    """Случайная матрица из S(G): ребра с модулем не меньше 0.5, случайная диагональ"""
    A = np.diag(rng.normal(size=G.n))
    for i, j in G.edges:
        value = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        A[i - 1, j - 1] = A[j - 1, i - 1] = value
    return PatternedMatrix(A, pattern=G)


def random_tree(rng: np.random.Generator, n: int) -> Graph:
    return Graph.from_edges(n, [(int(rng.integers(1, v)), v) for v in range(2, n + 1)])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)

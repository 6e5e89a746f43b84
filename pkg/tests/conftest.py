# tests/conftest.py

import json
import logging

import numpy as np
import pytest

from pprtopk import exact_solver, mc_engine
from pprtopk.graph import graph_from_edges

# Небольшой сильно связный граф без висячих узлов и петель
FIXTURE_10_EDGES = [
    (0, 1), (0, 2), (0, 3),
    (1, 2), (1, 4),
    (2, 0), (2, 5),
    (3, 6), (3, 7),
    (4, 0), (4, 8),
    (5, 3), (5, 9),
    (6, 1), (6, 0),
    (7, 8), (7, 2),
    (8, 9), (8, 0),
    (9, 4), (9, 5),
]


@pytest.fixture(autouse=True)
def clear_caches():
    """Сбрасывает кеши решателя и RNG-блоков между тестами"""
    exact_solver.clear_cache()
    with mc_engine.block_cache_lock:
        mc_engine.block_cache.clear()
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    # CLI перенастраивает корневой логгер: убираем его обработчики
    for handler in root.handlers[:]:
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.setLevel(level)


@pytest.fixture
def fixture_graph():
    """Граф из 10 узлов, исходящая степень 2-3"""
    return graph_from_edges(10, FIXTURE_10_EDGES)


@pytest.fixture
def two_cycle():
    """0 -> 1 -> 0: при c=0.5 pi = (2/3, 1/3), z_00 = 4/3"""
    return graph_from_edges(2, [(0, 1), (1, 0)])


@pytest.fixture
def singleton():
    """Один узел с петлей"""
    return graph_from_edges(1, [(0, 0)])


@pytest.fixture
def star_graph():
    """
    Звезда вокруг 0 с двумя ветками и пятью изолированными узлами.
    При c=0.3, s=0 истинная корзина top-3 = {0, 1, 2}, pi_1 = pi_2.
    """
    edges = [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 4), (3, 0), (4, 0)]
    return graph_from_edges(10, edges)


@pytest.fixture
def broom_graph():
    """Центр 0 связан в обе стороны с листьями 1..9: возвраты в лист редки"""
    edges = [(0, leaf) for leaf in range(1, 10)] + [(leaf, 0) for leaf in range(1, 10)]
    return graph_from_edges(10, edges)


@pytest.fixture
def barbell_graph():
    """Две клики-звезды на хостах a.org и b.org, соединенные ребром 0 <-> 4"""
    edges = [(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0),
             (4, 5), (4, 6), (4, 7), (5, 4), (6, 4), (7, 4),
             (0, 4), (4, 0)]
    return graph_from_edges(8, edges, host_of=[0, 0, 0, 0, 1, 1, 1, 1], host_names=["a.org", "b.org"])


@pytest.fixture
def random_graphs():
    """50 случайных графов (n <= 200) с висячими узлами и петлями"""
    rng = np.random.default_rng(20240601)
    graphs = []
    for _ in range(50):
        n = int(rng.integers(2, 201))
        edge_count = int(rng.integers(1, 3 * n + 1))
        src = rng.integers(0, n, size=edge_count)
        dst = rng.integers(0, n, size=edge_count)
        graphs.append(graph_from_edges(n, zip(src.tolist(), dst.tolist())))
    return graphs


@pytest.fixture
def write_edges(tmp_path):
    """Пишет файл ребер и возвращает путь"""
    def _write(edges, name="graph.tsv", header=None):
        path = tmp_path / name
        lines = [header] if header else []
        lines += [f"{src}\t{dst}" for src, dst in edges]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)
    return _write


TWO_PERSON_CORPUS = [
    # человек A: музыкант, все страницы ссылаются на один фан-сайт
    {"id": 0, "host": "a1.org", "text": "Jazz guitarist concert album tour", "person": True, "outlinks": [10]},
    {"id": 1, "host": "a2.org", "text": "The guitarist recorded a jazz album", "person": True, "outlinks": [10]},
    {"id": 2, "host": "a3.org", "text": "Concert review: jazz guitarist on tour", "person": True, "outlinks": [10]},
    # человек B: физик, ссылки на страницу факультета
    {"id": 3, "host": "b1.edu", "text": "Professor of quantum physics lecture notes", "person": True, "outlinks": [11]},
    {"id": 4, "host": "b2.edu", "text": "Quantum physics seminar by the professor", "person": True, "outlinks": [11]},
    {"id": 5, "host": "b3.edu", "text": "Physics professor publishes quantum paper", "person": True, "outlinks": [11]},
    {"id": 10, "host": "fans.org", "text": "Jazz fan club: guitarist news, album and concert dates", "outlinks": []},
    {"id": 11, "host": "dept.edu", "text": "Department of physics: quantum research group", "outlinks": []},
]


@pytest.fixture
def corpus_records():
    return [dict(record) for record in TWO_PERSON_CORPUS]


@pytest.fixture
def corpus_file(tmp_path, corpus_records):
    path = tmp_path / "corpus.jsonl"
    path.write_text("\n".join(json.dumps(record) for record in corpus_records) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def fixture_graph_file(write_edges):
    """Файл ребер графа fixture_graph"""
    return write_edges(FIXTURE_10_EDGES, name="fixture_10.tsv")

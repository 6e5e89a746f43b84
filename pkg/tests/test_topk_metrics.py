# tests/test_topk_metrics.py

import numpy as np
import pytest

from pprtopk.exceptions import InvalidParameterError
from pprtopk.models import CurveRow, ReportKind, TopKReport, WalkConfig, WalkMethod
from pprtopk.topk_metrics import (
    compare_baskets,
    convergence_curve,
    relaxation_level,
    satisfies_relaxation,
    write_curve_csv,
)


def _report(ids, kind=ReportKind.LIST):
    return TopKReport(ordered_ids=ids, scores=[1.0 / (i + 1) for i in range(len(ids))], kind=kind, k=len(ids))


class TestCompareBaskets:

    def test_identical(self):
        """Тест совпадающих списков"""
        result = compare_baskets(_report([4, 1, 7]), _report([4, 1, 7]))
        assert result.correct == 3
        assert result.erroneous == 0
        assert result.list_correct_prefix == 3

    def test_same_basket_different_order(self):
        """Тест: корзина верна, порядок нет"""
        result = compare_baskets(_report([4, 1, 7]), _report([1, 4, 7]))
        assert result.correct == 3
        assert result.list_correct_prefix == 0

    def test_partial(self):
        """Тест частично верной корзины"""
        result = compare_baskets(_report([4, 1, 7]), _report([4, 9, 1]))
        assert result.correct == 2
        assert result.erroneous == 1
        assert result.list_correct_prefix == 1

    def test_truncated_estimate(self):
        """Тест: укороченная оценка считается по найденным элементам"""
        truncated = TopKReport(ordered_ids=[4], scores=[1.0], k=3, truncated=True)
        result = compare_baskets(_report([4, 1, 7]), truncated)
        assert result.correct == 1
        assert result.erroneous == 2

    def test_different_k(self):
        """Тест отчетов с разным k"""
        with pytest.raises(InvalidParameterError):
            compare_baskets(_report([1, 2]), _report([1, 2, 3]))

    def test_symmetric_and_prefix_bounded(self):
        """Тест: сравнение симметрично, совпадающий префикс не длиннее числа верных"""
        rng = np.random.default_rng(5)
        for _ in range(200):
            k = int(rng.integers(1, 8))
            first = _report(rng.choice(20, size=k, replace=False).tolist())
            second = _report(rng.choice(20, size=k, replace=False).tolist())

            forward = compare_baskets(first, second)
            backward = compare_baskets(second, first)
            assert forward == backward
            assert forward.list_correct_prefix <= forward.correct <= k
            assert forward.correct + forward.erroneous == k


class TestRelaxation:

    def test_levels(self):
        """Тест ослабления: не более l ошибочных элементов"""
        result = compare_baskets(_report([4, 1, 7, 2]), _report([4, 9, 7, 8]))
        assert relaxation_level(result) == 2
        assert not satisfies_relaxation(result, 1)
        assert satisfies_relaxation(result, 2)
        assert satisfies_relaxation(result, 3)

    def test_exact_basket_is_level_zero(self):
        """Тест: точная корзина удовлетворяет l=0"""
        result = compare_baskets(_report([1, 2]), _report([2, 1]))
        assert satisfies_relaxation(result, 0)

    def test_negative_level(self):
        """Тест отрицательного l"""
        result = compare_baskets(_report([1]), _report([1]))
        with pytest.raises(InvalidParameterError):
            satisfies_relaxation(result, -1)


class TestConvergenceCurve:

    def test_star_graph_curve(self, star_graph):
        """Тест кривой на звезде: при большом m корзина находится всегда"""
        cfg = WalkConfig(damping=0.3, seed_node=0)
        rows = convergence_curve(star_graph, cfg, WalkMethod.END_POINT, 3, [10, 5000], repeats=5, rng_seed=1)

        assert [row.m for row in rows] == [10, 5000]
        assert rows[1].mean_correct == 3.0
        assert rows[1].std_correct == 0.0
        assert 0.0 <= rows[0].mean_correct <= 3.0

    def test_reproducible_and_thread_independent(self, fixture_graph):
        """Тест: одинаковое зерно дает одинаковую кривую при любом числе потоков"""
        cfg = WalkConfig(damping=0.85, seed_node=0)
        single = convergence_curve(fixture_graph, cfg, WalkMethod.COMPLETE_PATH, 3, [50, 500], 4, 9, threads=1)
        parallel = convergence_curve(fixture_graph, cfg, WalkMethod.COMPLETE_PATH, 3, [50, 500], 4, 9, threads=4)
        assert single == parallel

    @pytest.mark.parametrize("grid, repeats", [([], 3), ([0, 10], 3), ([10], 0)])
    def test_invalid_arguments(self, two_cycle, grid, repeats):
        """Тест пустой сетки, m=0 и repeats=0"""
        with pytest.raises(InvalidParameterError):
            convergence_curve(two_cycle, WalkConfig(damping=0.5, seed_node=0), WalkMethod.END_POINT,
                              1, grid, repeats, rng_seed=0)


class TestWriteCurveCsv:

    def test_format(self, tmp_path):
        """Тест заголовка и строк CSV"""
        path = tmp_path / "out" / "curve.csv"
        rows = [CurveRow(m=100, mean_correct=2.5, std_correct=0.5), CurveRow(m=1000, mean_correct=3.0, std_correct=0.0)]

        write_curve_csv(rows, str(path))
        assert path.read_text(encoding="utf-8").splitlines() == [
            "m,mean_correct,std_correct",
            "100,2.5,0.5",
            "1000,3.0,0.0",
        ]

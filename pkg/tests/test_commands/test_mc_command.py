# tests/test_commands/test_mc_command.py

import json

import pytest

from pprtopk.main import main

pytestmark = pytest.mark.integration


def _run(out, graph_file, *extra, threads="1"):
    return main(["--threads", threads, "--out", str(out), "mc", "--graph", graph_file, "--seed", "0",
                 "--damping", "0.85", "--k", "3", *extra])


class TestMcCommand:

    def test_end_point(self, tmp_path, fixture_graph_file):
        """Тест: outcome.json, estimate.json, topk.json и manifest.json"""
        out = tmp_path / "ep"
        assert _run(out, fixture_graph_file, "--m", "2000", "--rng", "5") == 0

        outcome = json.loads((out / "outcome.json").read_text(encoding="utf-8"))
        assert outcome["method"] == "end_point"
        assert outcome["m"] == 2000
        assert sum(outcome["counts"].values()) == 2000

        topk = json.loads((out / "topk.json").read_text(encoding="utf-8"))
        assert len(topk["ordered_ids"]) == 3

        manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["command"] == "mc"
        assert manifest["rng_seeds"] == [5]
        assert not (out / "adaptive.json").exists()

    def test_byte_identical_across_threads(self, tmp_path, fixture_graph_file):
        """Тест: одинаковое зерно дает побайтно одинаковые результаты при разном числе потоков"""
        first, second = tmp_path / "a", tmp_path / "b"
        assert _run(first, fixture_graph_file, "--m", "9000", "--method", "complete-path", "--rng", "3", threads="1") == 0
        assert _run(second, fixture_graph_file, "--m", "9000", "--method", "complete-path", "--rng", "3", threads="4") == 0

        for name in ("outcome.json", "estimate.json", "topk.json"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_adaptive(self, tmp_path, fixture_graph_file):
        """Тест адаптивного режима"""
        out = tmp_path / "adaptive"
        assert _run(out, fixture_graph_file, "--adaptive", "--d", "2", "--batch", "50", "--cap", "5000") == 0

        adaptive = json.loads((out / "adaptive.json").read_text(encoding="utf-8"))
        outcome = json.loads((out / "outcome.json").read_text(encoding="utf-8"))
        assert adaptive["stopped_at_m"] == outcome["m"]
        assert adaptive["stopped_at_m"] <= 5000

    def test_requires_m_or_adaptive(self, tmp_path, fixture_graph_file):
        """Тест: нужно --m или --adaptive"""
        assert _run(tmp_path, fixture_graph_file) == 2

    def test_unknown_method(self, tmp_path, fixture_graph_file):
        """Тест неизвестного метода"""
        assert _run(tmp_path, fixture_graph_file, "--m", "10", "--method", "random") == 2

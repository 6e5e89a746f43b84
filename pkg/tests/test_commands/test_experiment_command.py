# tests/test_commands/test_experiment_command.py

import json

import pytest

from pprtopk.main import main

pytestmark = pytest.mark.integration


class TestExperimentCommand:

    def test_curve_csv(self, tmp_path, fixture_graph_file):
        """Тест: curve.csv со строкой на каждую точку сетки"""
        out = tmp_path / "exp"
        code = main(["--threads", "2", "--out", str(out), "experiment", "--graph", fixture_graph_file,
                     "--seed", "0", "--damping", "0.85", "--k", "3", "--m-grid", "100,1000",
                     "--repeats", "3", "--rng", "4"])
        assert code == 0

        lines = (out / "curve.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "m,mean_correct,std_correct"
        assert [line.split(",")[0] for line in lines[1:]] == ["100", "1000"]

        manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["command"] == "experiment"
        assert manifest["rng_seeds"] == [4]
        assert manifest["parameters"]["m_grid"] == [100, 1000]

    def test_reproducible(self, tmp_path, fixture_graph_file):
        """Тест: повторный запуск дает тот же CSV"""
        args = ["experiment", "--graph", fixture_graph_file, "--seed", "0", "--damping", "0.85", "--k", "2",
                "--m-grid", "200", "--repeats", "4", "--method", "complete-path"]
        assert main(["--out", str(tmp_path / "a"), *args]) == 0
        assert main(["--out", str(tmp_path / "b"), *args]) == 0
        assert (tmp_path / "a" / "curve.csv").read_bytes() == (tmp_path / "b" / "curve.csv").read_bytes()

    def test_invalid_repeats(self, tmp_path, fixture_graph_file):
        """Тест repeats=0"""
        assert main(["--out", str(tmp_path), "experiment", "--graph", fixture_graph_file, "--seed", "0",
                     "--damping", "0.85", "--k", "2", "--m-grid", "100", "--repeats", "0"]) == 2

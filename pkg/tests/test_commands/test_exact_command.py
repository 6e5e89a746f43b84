# tests/test_commands/test_exact_command.py

import json

import pytest

from pprtopk.main import main

pytestmark = pytest.mark.integration


@pytest.fixture
def cycle_file(write_edges):
    return write_edges([(0, 1), (1, 0)])


class TestExactCommand:

    def test_writes_results(self, tmp_path, cycle_file):
        """Тест: ppr.tsv, topk.json и manifest.json"""
        out = tmp_path / "out"
        code = main(["--out", str(out), "exact", "--graph", cycle_file, "--seed", "0", "--damping", "0.5", "--k", "1"])

        assert code == 0
        lines = (out / "ppr.tsv").read_text(encoding="utf-8").splitlines()
        node, score = lines[0].split("\t")
        assert node == "0"
        assert float(score) == pytest.approx(2 / 3, abs=1e-12)

        topk = json.loads((out / "topk.json").read_text(encoding="utf-8"))
        assert topk["ordered_ids"] == [0]

        manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["command"] == "exact"
        assert manifest["parameters"]["damping"] == 0.5
        assert manifest["rng_seeds"] == []

    def test_labels_in_output(self, tmp_path, cycle_file):
        """Тест меток узлов в ppr.tsv и topk.json"""
        labels = tmp_path / "labels.tsv"
        labels.write_text("0\thome\n1\tabout\n", encoding="utf-8")
        out = tmp_path / "out"

        assert main(["--out", str(out), "exact", "--graph", cycle_file, "--seed", "1", "--damping", "0.5",
                     "--k", "2", "--labels", str(labels)]) == 0
        topk = json.loads((out / "topk.json").read_text(encoding="utf-8"))
        assert topk["labels"] == ["about", "home"]
        assert (out / "ppr.tsv").read_text(encoding="utf-8").splitlines()[0].endswith("\thome")

    def test_requires_out(self, cycle_file):
        """Тест: без --out - ошибка использования"""
        assert main(["exact", "--graph", cycle_file, "--seed", "0", "--damping", "0.5", "--k", "1"]) == 2

    @pytest.mark.parametrize("argv", [
        ["exact", "--seed", "0", "--damping", "0.5", "--k", "1"],
        ["exact", "--graph", "g.tsv", "--seed", "x", "--damping", "0.5", "--k", "1"],
        ["unknown-command"],
    ])
    def test_usage_errors(self, argv):
        """Тест ошибок разбора аргументов"""
        assert main(argv) == 2

    def test_invalid_damping(self, tmp_path, cycle_file):
        """Тест c вне (0, 1)"""
        assert main(["--out", str(tmp_path), "exact", "--graph", cycle_file, "--seed", "0",
                     "--damping", "1.5", "--k", "1"]) == 2

    def test_seed_out_of_range(self, tmp_path, cycle_file):
        """Тест стартового узла вне графа"""
        assert main(["--out", str(tmp_path), "exact", "--graph", cycle_file, "--seed", "7",
                     "--damping", "0.5", "--k", "1"]) == 2

    def test_malformed_graph(self, tmp_path):
        """Тест ошибки формата файла графа"""
        path = tmp_path / "bad.tsv"
        path.write_text("0\t1\nbroken\n", encoding="utf-8")
        assert main(["--out", str(tmp_path / "out"), "exact", "--graph", str(path), "--seed", "0",
                     "--damping", "0.5", "--k", "1"]) == 1

    def test_missing_graph_file(self, tmp_path):
        """Тест отсутствующего файла графа"""
        assert main(["--out", str(tmp_path / "out"), "exact", "--graph", str(tmp_path / "none.tsv"),
                     "--seed", "0", "--damping", "0.5", "--k", "1"]) == 1

    def test_invalid_log_level(self, tmp_path, cycle_file):
        """Тест неизвестного уровня логирования"""
        assert main(["--log-level", "LOUD", "--out", str(tmp_path), "exact", "--graph", cycle_file,
                     "--seed", "0", "--damping", "0.5", "--k", "1"]) == 2

    def test_version(self, capsys):
        """Тест --version"""
        assert main(["--version"]) == 0
        assert "pprtopk" in capsys.readouterr().out

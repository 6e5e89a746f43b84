# tests/test_commands/test_bounds_command.py

import json

import pytest

from pprtopk.main import main

pytestmark = pytest.mark.integration


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


class TestBoundsCommand:

    def test_pairwise_exact(self, capsys):
        """Тест bounds pairwise в точном режиме"""
        assert main(["bounds", "pairwise", "--pi-i", "0.3", "--pi-j", "0.2", "--m", "1", "--mode", "exact"]) == 0
        assert _stdout_json(capsys)["probability"] == pytest.approx(0.7, abs=1e-14)

    def test_hit(self, capsys):
        """Тест bounds hit"""
        assert main(["bounds", "hit", "--pi", "0.1", "--r", "3", "--m", "20"]) == 0
        assert _stdout_json(capsys)["probability"] == pytest.approx(0.3231, abs=1e-4)

    def test_order_stats(self, capsys):
        """Тест bounds order-stats в режиме beta"""
        assert main(["bounds", "order-stats", "--p", "0.5", "--s", "1", "--m", "2", "--mode", "beta"]) == 0
        assert _stdout_json(capsys)["probability"] == pytest.approx(0.75)

    def test_mu(self, capsys):
        """Тест bounds mu"""
        assert main(["bounds", "mu", "--pi-tail", "0.2", "--m", "10", "--y", "3"]) == 0
        assert _stdout_json(capsys)["mu_y"] == pytest.approx(0.3233, abs=1e-4)

    def test_variance(self, capsys):
        """Тест bounds variance для Complete Path"""
        assert main(["bounds", "variance", "--method", "complete-path", "--pi-s", "0.6666666666666666",
                     "--pi-k", "0.6666666666666666", "--damping", "0.5", "--m", "100"]) == 0
        report = _stdout_json(capsys)
        assert report["sigma_per_sqrt_m"] == pytest.approx(1 / 3)
        assert report["sigma"] == pytest.approx(1 / 30)

    def test_basket_from_pi(self, capsys):
        """Тест bounds basket по явному вектору pi"""
        assert main(["bounds", "basket", "--pi", "0.5,0.3,0.15,0.05", "--k", "2", "--m", "100"]) == 0
        bound = _stdout_json(capsys)
        assert bound["kind"] == "basket_bonferroni"
        assert 0.0 <= bound["value"] <= 1.0

    def test_list_complete_path_from_graph(self, capsys, fixture_graph_file):
        """Тест bounds list с ковариацией Complete Path по графу"""
        assert main(["bounds", "list", "--graph", fixture_graph_file, "--seed", "0", "--damping", "0.85",
                     "--k", "3", "--m", "1000", "--method", "complete-path"]) == 0
        bound = _stdout_json(capsys)
        assert bound["kind"] == "list_bonferroni"
        assert bound["params"]["n"] == 10

    def test_basket_requires_pi_source(self):
        """Тест: нужен --pi или граф"""
        assert main(["bounds", "basket", "--k", "2", "--m", "100"]) == 2

    def test_tie_is_runtime_error(self):
        """Тест: равенство на границе корзины - код 1"""
        assert main(["bounds", "basket", "--pi", "0.4,0.2,0.2,0.2", "--k", "2", "--m", "100"]) == 1

    def test_recommend_m(self, capsys):
        """Тест bounds recommend-m"""
        assert main(["bounds", "recommend-m", "--a", "0.1", "--epsilon", "0.5", "--alpha", "0.1",
                     "--k", "10", "--pi-next", "0.05"]) == 0
        report = _stdout_json(capsys)
        assert report["recommended_m"] == 296
        assert report["condition_holds"] is True

    def test_em1_and_detection(self, capsys):
        """Тест bounds em1 и detection"""
        assert main(["bounds", "em1", "--pi", "0.4,0.35,0.15,0.1", "--k", "2", "--m", "10000"]) == 0
        assert _stdout_json(capsys)["e_m1"] == pytest.approx(2.0, abs=1e-6)

        assert main(["bounds", "detection", "--pi", "0.4,0.35,0.15,0.1", "--k", "2", "--r", "2",
                     "--j", "3", "--m-grid", "10,100"]) == 0
        rows = _stdout_json(capsys)
        assert [row["m"] for row in rows] == [10, 100]

    def test_covariance_to_out(self, tmp_path, fixture_graph_file):
        """Тест bounds covariance с --out: файл результата и manifest"""
        out = tmp_path / "cov"
        assert main(["--out", str(out), "bounds", "covariance", "--graph", fixture_graph_file, "--seed", "0",
                     "--damping", "0.85", "--i", "1", "--j", "2"]) == 0

        entry = json.loads((out / "covariance.json").read_text(encoding="utf-8"))
        assert (entry["i"], entry["j"], entry["s"]) == (1, 2, 0)
        manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["command"] == "bounds covariance"

    def test_bad_j_star(self, capsys):
        """Тест нечислового --j-star: ошибка использования, код 2"""
        assert main(["bounds", "basket", "--pi", "0.5,0.3,0.15,0.05", "--k", "2", "--m", "100",
                     "--j-star", "foo"]) == 2

    def test_explicit_j_star(self, capsys):
        """Тест явного номера j*"""
        assert main(["bounds", "basket", "--pi", "0.5,0.3,0.15,0.05", "--k", "2", "--m", "100",
                     "--j-star", "3"]) == 0
        assert _stdout_json(capsys)["params"]["j_star"] == 3

    def test_j_star_out_of_range(self):
        """Тест j* вне [k+1, n]"""
        assert main(["bounds", "basket", "--pi", "0.5,0.3,0.15,0.05", "--k", "2", "--m", "100",
                     "--j-star", "9"]) == 2

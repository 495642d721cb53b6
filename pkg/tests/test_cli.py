import json

import pytest

from latentweight import cli
from latentweight.errors import ConsistencyError


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def numeric_fields(doc):
    doc = dict(doc)
    doc.pop("wall_time_s", None)
    return doc


class TestCommands:
    def test_mrf_roundtrip(self, capsys, tmp_path):
        joint = tmp_path / "pair.json"
        code, _, _ = run_cli(capsys, "from-mrf", "pair_mrf", "-o", str(joint))
        assert code == 0
        _, a, _ = run_cli(capsys, "decompose", str(joint), "--workers", "1")
        _, b, _ = run_cli(capsys, "decompose", "pair_mrf_joint", "--workers", "1")
        assert numeric_fields(json.loads(a)) == numeric_fields(json.loads(b))
        assert json.loads(a)["lambda"] == pytest.approx(49 / 60)

    def test_bn_roundtrip(self, capsys, tmp_path):
        joint = tmp_path / "cancer.json"
        assert run_cli(capsys, "from-bn", "cancer_bn", "-o", str(joint))[0] == 0
        assert json.loads(joint.read_text()) == json.loads(
            cli.models.fixture_path("cancer_bn_joint").read_text()
        )

    def test_weight_summary(self, capsys):
        code, out, err = run_cli(capsys, "weight", "pair_mrf_joint", "--summary", "--workers", "1")
        assert code == 0
        assert json.loads(out)["method"] == "EXACT"
        assert "lambda=0.816666667" in err

    def test_certify(self, capsys):
        code, out, _ = run_cli(capsys, "certify", "pair_mrf_joint", "--lambda", "0.8", "--q", "0.047619,0.047619")
        assert code == 0
        assert json.loads(out)["valid"] is True
        _, out, _ = run_cli(capsys, "certify", "pair_mrf_joint", "--lambda", "0.9", "--q", "0.05,0.05")
        assert json.loads(out)["valid"] is False

    def test_marginal_weight(self, capsys):
        _, out, _ = run_cli(capsys, "marginal-weight", "cancer_bn_joint")
        assert json.loads(out)["marginal_weight"] == pytest.approx(0.104, abs=0.002)

    def test_entropy(self, capsys):
        _, out, _ = run_cli(capsys, "entropy", "pair_mrf_joint")
        assert 0 < json.loads(out)["entropy_bits"] < 2

    def test_oracle_and_heuristic(self, capsys):
        _, out, _ = run_cli(capsys, "oracle", "pair_mrf_joint", "--grid", "201")
        assert json.loads(out)["method"] == "ORACLE"
        _, out, _ = run_cli(capsys, "heuristic", "pair_mrf_joint", "--starts", "4", "--seed", "1")
        assert json.loads(out)["lambda"] == pytest.approx(49 / 60, abs=1e-6)

    def test_deterministic(self, capsys):
        _, a, _ = run_cli(capsys, "heuristic", "cycle_mrf_joint", "--starts", "3")
        _, b, _ = run_cli(capsys, "heuristic", "cycle_mrf_joint", "--starts", "3")
        assert numeric_fields(json.loads(a)) == numeric_fields(json.loads(b))


class TestExitCodes:
    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "weight", "no/such/file.json")
        assert code == 1
        assert "no such file" in err

    def test_bad_json_position(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"d": 1,\n "probs": [0.5, 0.5,]}')
        code, _, err = run_cli(capsys, "weight", str(path))
        assert code == 1
        assert f"{path}:2:" in err

    def test_invalid_distribution(self, capsys, tmp_path):
        path = tmp_path / "neg.json"
        path.write_text(json.dumps({"d": 1, "probs": [1.5, -0.5]}))
        code, _, err = run_cli(capsys, "entropy", str(path))
        assert code == 1
        assert "NEGATIVE_MASS" in err

    def test_zero_mass_exact(self, capsys, tmp_path):
        path = tmp_path / "diag.json"
        path.write_text(json.dumps({"d": 2, "probs": [0.5, 0, 0, 0.5]}))
        code, _, err = run_cli(capsys, "weight", str(path))
        assert code == 1
        assert "ZERO_MASS" in err

    def test_consistency_failure(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise ConsistencyError("objective exceeds 1")

        monkeypatch.setattr(cli, "solve_exact", boom)
        code, _, err = run_cli(capsys, "weight", "pair_mrf_joint")
        assert code == 2
        assert "internal error" in err

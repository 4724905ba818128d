import json
import subprocess
import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "oa_polylab.cli", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


def fx(name):
    return str(FIXTURES / name)


class TestNorms:
    def test_text_table(self):
        res = run_cli("norms", fx("element_diag34.json"), "1,2,inf")
        assert res.returncode == 0
        lines = res.stdout.strip().splitlines()
        assert lines[1].split() == ["1", "7"]
        assert lines[2].split() == ["2", "5"]
        assert lines[3].split() == ["inf", "4"]

    def test_json_quasi_norm(self, m2):
        res = run_cli("norms", fx("element_diag34.json"), "0.5", "--format", "json")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        # tau(|x|^(1/2))^2 = (sqrt(3) + sqrt(4))^2
        assert payload["norms"][0]["value"] == pytest.approx((3**0.5 + 2.0) ** 2)

    def test_missing_file_exits_2(self):
        res = run_cli("norms", fx("no_such_file.json"), "1")
        assert res.returncode == 2
        assert "error" in res.stderr

    def test_invalid_exponent_exits_2(self):
        res = run_cli("norms", fx("element_diag34.json"), "1,zero")
        assert res.returncode == 2

    def test_malformed_json_exits_2(self):
        res = run_cli("norms", fx("malformed.json"), "1")
        assert res.returncode == 2


class TestAnalyze:
    def test_representable_polynomial(self):
        res = run_cli(
            "analyze", fx("poly_zeta_m2.json"), fx("algebra_m2.json"),
            "--p", "4", "--format", "json", "--samples", "24",
        )
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        verdict = payload["verdict"]
        assert verdict["oa_sa"] is True
        assert verdict["oa_positive"] is True
        assert verdict["oa_full"] is False
        assert verdict["represented"] is True
        assert payload["report"]["max_residual"] <= 1e-9
        # zeta echoed: nonzero entries present
        entries = payload["report"]["zeta"][0]["blocks"][0]
        assert any(abs(v[0]) + abs(v[1]) > 0.01 for row in entries for v in row)

    def test_non_representable_exits_1(self):
        res = run_cli(
            "analyze", fx("poly_cross_m2.json"), fx("algebra_m2.json"),
            "--p", "4", "--format", "json", "--samples", "24",
        )
        assert res.returncode == 1
        payload = json.loads(res.stdout)
        assert payload["verdict"]["oa_sa"] is False
        assert payload["verdict"]["represented"] is False

    def test_commutative_fully_additive(self):
        res = run_cli(
            "analyze", fx("poly_zeta_c3.json"), fx("algebra_c3.json"),
            "--p", "4", "--format", "json", "--samples", "24",
        )
        assert res.returncode == 0
        assert json.loads(res.stdout)["verdict"]["oa_full"] is True

    def test_inconsistent_algebra_exits_2(self):
        res = run_cli(
            "analyze", fx("poly_zeta_m2.json"), fx("algebra_c3.json"), "--p", "4"
        )
        assert res.returncode == 2

    def test_vector_valued_polynomial(self):
        res = run_cli(
            "analyze", fx("poly_vector_m2.json"), fx("algebra_m2.json"),
            "--p", "6", "--format", "json", "--samples", "16",
        )
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["verdict"]["oa_sa"] is True
        assert payload["verdict"]["represented"] is True
        assert len(payload["report"]["zeta"]) == 2
        assert len(payload["report"]["norms"]["per_coordinate"]) == 2
        assert payload["report"]["norms"]["r"] == pytest.approx(2.0)

    def test_deterministic_json(self, tmp_path):
        out1 = tmp_path / "a1.json"
        out2 = tmp_path / "a2.json"
        for out in (out1, out2):
            res = run_cli(
                "analyze", fx("poly_zeta_m2.json"), fx("algebra_m2.json"),
                "--p", "4", "--format", "json", "--seed", "7", "--out", str(out),
            )
            assert res.returncode == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestVerify:
    def test_single_suite_passes(self):
        res = run_cli(
            "verify", "rigidity", "--seed", "42", "--samples", "30", "--format", "json"
        )
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["passed"] is True
        names = {c["name"] for s in payload["suites"] for c in s["checks"]}
        assert names == {"counterexample", "zero_chain"}

    def test_unknown_suite_exits_2(self):
        res = run_cli("verify", "nosuch")
        assert res.returncode == 2

    def test_unattainable_tolerance_exits_1(self):
        res = run_cli(
            "verify", "metrics", "--samples", "8", "--tol", "pythagoras=1e-30"
        )
        assert res.returncode == 1

    def test_unknown_tolerance_exits_2(self):
        res = run_cli("verify", "metrics", "--samples", "8", "--tol", "bogus=1")
        assert res.returncode == 2


class TestWitness:
    def test_cross_monomial_has_witness(self):
        res = run_cli(
            "witness", fx("poly_cross_m2.json"), fx("algebra_m2.json"),
            "--format", "json",
        )
        assert res.returncode == 0
        witness = json.loads(res.stdout)["witness"]
        assert witness is not None
        assert witness["gadget"] in ("nilpotent-pair", "unitary-rotation")
        assert witness["residual"] > 1e-8

    def test_zero_polynomial_none(self):
        res = run_cli("witness", fx("poly_zero.json"), fx("algebra_m2.json"))
        assert res.returncode == 0
        assert res.stdout.strip() == "none"

    def test_commutative_none(self):
        res = run_cli("witness", fx("poly_zeta_c3.json"), fx("algebra_c3.json"))
        assert res.returncode == 0
        assert res.stdout.strip() == "none"

    def test_malformed_exits_2(self):
        res = run_cli("witness", fx("malformed.json"), fx("algebra_m2.json"))
        assert res.returncode == 2

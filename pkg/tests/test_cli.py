"""Command-line interface: text and JSON output, exit codes, determinism."""

import json

from hilbzeta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_cusp(capsys):
    code, out, _ = run(capsys, "analyze", "cusp")
    assert code == 0
    assert "s=1" in out and "δ=1" in out and "c=(2)" in out and "C=2" in out


def test_analyze_json_deterministic(capsys):
    code, out1, _ = run(capsys, "analyze", "node", "--json")
    code2, out2, _ = run(capsys, "analyze", "node", "--json")
    assert code == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["delta"] == 1 and data["c"] == [1, 1]


def test_zeta_node_q2(capsys):
    code, out, _ = run(capsys, "zeta", "node", "--q", "2")
    assert code == 0
    assert "1 + (t + t^2)/(1-t)^2" in out
    assert "[1, 1, 3, 5]" in out


def test_zeta_interpolated(capsys):
    code, out, _ = run(capsys, "zeta", "cusp", "--primes", "2,3,5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["conjectural"] is True
    assert data["zeta_L"]["den_t"] == 1


def test_strata_json(capsys):
    code, out, _ = run(capsys, "strata", "node", "--q", "2", "--dmax", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert {"d": 2, "a": [1, 1], "count": 1} in data["entries"]


def test_axes_command(capsys):
    code, out, _ = run(capsys, "axes", "--n", "3", "--d", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["class"] == [1, 1, 4]


def test_verify_single_germ(capsys):
    code, out, _ = run(capsys, "verify", "axes:3", "--q", "2", "--dmax", "3")
    assert code == 0
    assert "all checks passed" in out
    assert "FAIL" not in out


def test_verify_all_presets(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    for name in ("node", "cusp", "axes:3", "semigroup:3,4"):
        assert name in out


def test_degenerate_command(capsys):
    code, out, _ = run(capsys, "degenerate", "node", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert data["weight"] == [1, 2]
    assert set(data) >= {"exponent_sets", "delta_source", "delta_monomial", "branches"}


def test_degenerate_rejects_bad_weight(capsys):
    code, _out, err = run(capsys, "degenerate", "node", "--weight", "1,1")
    assert code == 2
    assert "not generic" in err


def test_global_command(tmp_path, capsys):
    config = tmp_path / "curve.json"
    config.write_text(
        json.dumps(
            {
                "smooth": [
                    {"kind": "A1", "punctures": 1},
                    {"kind": "A1", "punctures": 1},
                ],
                "singularities": ["node"],
            }
        )
    )
    code, out, _ = run(capsys, "global", "--config", str(config), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["series"][0] == [1]
    assert data["series"][1] == [-1, 2]  # 2L - 1 points in degree one


def test_global_axes_shortcut(tmp_path, capsys):
    config = tmp_path / "curve.json"
    config.write_text(json.dumps({"smooth": [], "singularities": ["axes:3"]}))
    code, out, _ = run(capsys, "global", "--config", str(config), "--json")
    assert code == 0


def test_germ_from_json_file(tmp_path, capsys):
    germ = tmp_path / "germ.json"
    germ.write_text(
        json.dumps(
            {"branches": 1, "generators": [[[0, 0, 0, 1]], [[0, 0, 0, 0, 1, 1]]]}
        )
    )
    code, out, _ = run(capsys, "analyze", f"@{germ}", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["delta"] == 3 and data["c"] == [6]


def test_exit_code_invalid_input(capsys):
    code, _out, err = run(capsys, "analyze", "no-such-germ")
    assert code == 1
    assert "invalid input" in err


def test_exit_code_guard(capsys):
    code, _out, err = run(capsys, "strata", "axes:3", "--q", "2", "--dmax", "9")
    assert code == 3
    assert "resource guard" in err


def test_zeta_guard_refuses_undersized_cap(capsys):
    # axes:4 assembly needs strata past what the default cap allows
    code, _out, err = run(capsys, "zeta", "axes:4", "--q", "2")
    assert code == 3
    assert "raise --dim-cap" in err
    code, out, _ = run(capsys, "zeta", "axes:4", "--q", "2", "--dim-cap", "32")
    assert code == 0
    assert "[1, 1, 15, 67, 183]" in out


def test_nonstabilizing_germ_is_invalid_input(capsys):
    code, _out, err = run(capsys, "analyze", "semigroup:2,4")
    assert code == 1
    assert "reduced germ" in err


def test_verify_exit_two_on_seeded_fault(monkeypatch, capsys):
    # a failing check anywhere in the suite must flip the exit status to 2
    import hilbzeta.cli as cli_mod
    from hilbzeta.verification import CheckResult, VerifyReport

    def broken_suite(pres, q, d_max, dim_cap):
        return VerifyReport(
            germ=pres.name,
            q=q,
            d_max=0,
            checks=[CheckResult("seeded fault", False, "injected")],
        )

    monkeypatch.setattr(cli_mod, "run_suite", broken_suite)
    code, out, _ = run(capsys, "verify", "node")
    assert code == 2
    assert "VERIFICATION FAILED" in out and "[FAIL]" in out


def test_json_byte_identical(capsys):
    code1, out1, _ = run(capsys, "strata", "cusp", "--q", "3", "--dmax", "3", "--json")
    code2, out2, _ = run(capsys, "strata", "cusp", "--q", "3", "--dmax", "3", "--json")
    assert code1 == code2 == 0
    assert out1 == out2

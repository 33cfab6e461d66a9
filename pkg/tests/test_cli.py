"""Command-line interface: exit codes, JSON output, determinism."""

import json

import pytest

from maxtorus.cli import main


@pytest.fixture()
def examples(tmp_path):
    d = tmp_path / "instances"
    for name in ("hopf", "fulton7", "cp2", "cp1xcp1", "moment-angle-cube"):
        assert main(["example", name, "--dir", str(d)]) == 0
    return d


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# exit-code contract --------------------------------------------------------


def test_validate_fan_ok(examples, capsys):
    code, out, _ = run(capsys, ["validate-fan", str(examples / "cp2.json")])
    assert code == 0
    assert "valid: True" in out and "complete: True" in out


def test_validate_fan_json(examples, capsys):
    code, out, _ = run(capsys, ["--format", "json", "validate-fan", str(examples / "cp2.json")])
    payload = json.loads(out)
    assert code == 0
    assert payload["valid"] and payload["complete"]
    assert all(c["regular"] for c in payload["cones"])


def test_normality_strict_fulton7_fails(examples, capsys):
    code, out, _ = run(capsys, ["normality", str(examples / "fulton7.json")])
    assert code == 1
    assert "not normal" in out


def test_normality_weak_fulton7(examples, capsys):
    code, out, _ = run(
        capsys, ["--format", "json", "normality", "--weak", str(examples / "fulton7.json")]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["mode"] == "weakly normal"
    assert len(payload["certificate"]["b"]) == 7


def test_normality_rejects_incomplete(tmp_path, capsys):
    fan = tmp_path / "orthant.json"
    fan.write_text(json.dumps({"dim": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[1, 2]]}))
    code, _, err = run(capsys, ["normality", str(fan)])
    assert code == 2
    assert "complete fans only" in err


def test_vertices(examples, capsys):
    code, out, _ = run(
        capsys,
        ["--format", "json", "vertices", str(examples / "fulton7.json"), "0,0,0,1,1,1,1"],
    )
    assert code == 0
    payload = json.loads(out)
    values = {tuple(v) for v in payload["vertices"].values()}
    assert values == {
        ("0", "0", "0"),
        ("-1", "0", "0"),
        ("0", "-1", "0"),
        ("0", "0", "-1"),
    }


def test_vertices_bad_b(examples, capsys):
    code, _, err = run(capsys, ["vertices", str(examples / "fulton7.json"), "0,0,bogus"])
    assert code == 2 and "error" in err


def test_validate_construction_ii_hopf(examples, capsys):
    code, out, _ = run(
        capsys,
        [
            "--format",
            "json",
            "validate",
            "II",
            str(examples / "hopf_fan.json"),
            str(examples / "hopf_h.json"),
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"]
    assert payload["descriptor"] == {
        "dim_C_M": 2,
        "dim_T": 3,
        "max_stabilizer_dim": 1,
        "foliation_dim": 1,
        "ineffectivity_dim": 0,
    }


def test_validate_construction_ii_failure_codes(examples, tmp_path, capsys):
    bad = tmp_path / "bad_h.json"
    bad.write_text(
        json.dumps(
            {
                "m": 3,
                "basis": [
                    [
                        {"re": "0", "im": "1"},
                        {"re": "0", "im": "-1"},
                        {"re": "-1", "im": "0"},
                    ]
                ],
            }
        )
    )
    code, out, _ = run(
        capsys,
        ["--format", "json", "validate", "II", str(examples / "hopf_fan.json"), str(bad)],
    )
    assert code == 1
    payload = json.loads(out)
    assert not payload["ok"]
    assert all(f["code"].startswith("COND_") for f in payload["failures"])


def test_validate_construction_i(examples, capsys):
    code, out, _ = run(
        capsys,
        [
            "validate",
            "I",
            str(examples / "moment_angle_cube_complex.json"),
            str(examples / "moment_angle_cube_h.json"),
        ],
    )
    assert code == 0
    assert "valid" in out


def test_dimension_mismatch_is_usage_error(examples, capsys):
    code, _, err = run(
        capsys,
        ["validate", "II", str(examples / "cp2.json"), str(examples / "hopf_h.json")],
    )
    assert code == 2 and "error" in err


def test_lift(examples, capsys):
    code, out, _ = run(
        capsys,
        [
            "--format",
            "json",
            "lift",
            str(examples / "hopf_fan.json"),
            str(examples / "hopf_h.json"),
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ghosts"] == 1 and payload["invariant_factors"] == []
    assert payload["complex"]["vertices"] == 3


def test_foliation(examples, capsys):
    code, out, _ = run(
        capsys, ["--format", "json", "foliation", str(examples / "hopf_h.json")]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["leaf_dim"] == 1 and payload["discrete"]


def test_divisor_hypotheses(examples, capsys):
    code, out, _ = run(
        capsys,
        [
            "--format",
            "json",
            "divisor-hypotheses",
            str(examples / "hopf_complex.json"),
            str(examples / "hopf_h.json"),
        ],
    )
    payload = json.loads(out)
    assert not payload["simply_connected"]
    assert code == 1


def test_tk_check_hopf(examples, capsys):
    code, out, _ = run(
        capsys,
        [
            "--format",
            "json",
            "tk-check",
            str(examples / "hopf_fan.json"),
            str(examples / "hopf_h.json"),
            "--points",
            "5",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"]
    assert payload["summary"]["kernel_dim"] == 2
    assert payload["summary"]["max_angle"] < 1e-6
    assert payload["summary"]["max_cocycle_dev"] < 1e-9


def test_malformed_json_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "trunc.json"
    bad.write_text('{"dim": 2, "rays": [[1, 0]')
    code, _, err = run(capsys, ["validate-fan", str(bad)])
    assert code == 2 and "error" in err


def test_unknown_example(capsys, tmp_path):
    code, _, err = run(capsys, ["example", "nope", "--dir", str(tmp_path)])
    assert code == 2 and "unknown example" in err


# determinism ---------------------------------------------------------------


def test_default_seed_runs_are_byte_identical(examples, capsys):
    argv = [
        "--format",
        "json",
        "tk-check",
        str(examples / "hopf_fan.json"),
        str(examples / "hopf_h.json"),
        "--points",
        "3",
    ]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_seed_flag_accepts_hex(examples, capsys):
    code, out, _ = run(
        capsys,
        ["--seed", "0xA11CE", "--format", "json", "validate-fan", str(examples / "cp2.json")],
    )
    assert code == 0 and json.loads(out)["valid"]


def test_json_output_round_trips(examples, capsys):
    for argv in (
        ["--format", "json", "validate-fan", str(examples / "hopf_fan.json")],
        ["--format", "json", "normality", str(examples / "cp2.json")],
        ["--format", "json", "foliation", str(examples / "hopf_h.json")],
    ):
        _, out, _ = run(capsys, argv)
        json.loads(out)  # must be well-formed

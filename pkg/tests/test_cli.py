import json

import pytest

from hypertrace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_series_solve_krammer_json(capsys):
    code, out = run(
        capsys,
        "series", "solve", "--operator", "krammer", "--init", "1,0",
        "--terms", "5", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["coefficients"][-1] == "-110984489/175784940288"
    # round trip: parse then re-serialize is idempotent
    assert json.loads(json.dumps(payload)) == payload


def test_series_solve_human_mode(capsys):
    code, out = run(
        capsys, "series", "solve", "--operator", "krammer", "--init", "1,0", "--terms", "3",
    )
    assert code == 0
    assert "a_2 = -5/2952" in out


def test_series_audit(capsys):
    code, out = run(
        capsys,
        "series", "audit", "--operator", "krammer", "--init", "1,0",
        "--terms", "120", "--from", "50", "--to", "120", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["unbounded_flag"] is False


def test_hyper_classify(capsys):
    code, out = run(
        capsys, "hyper", "classify", "--a", "1/5,4/5", "--b", "1/2,0", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"] == "finite"
    assert payload["signature"] == [5, 2, 2]


def test_hyper_monodromy(capsys):
    code, out = run(
        capsys, "hyper", "monodromy", "--a", "1/2,1/2", "--b", "1/3,0", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["conductor"] == 6
    assert all(payload["verified"].values())
    assert len(payload["gInf"]) == 2


def test_field_commands(capsys):
    code, out = run(capsys, "field", "trace", "--a", "1/5,4/5", "--b", "1/2,0", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["conductor"] == 10
    assert payload["stabilizer"] == [1, 9]
    assert payload["degree"] == 2
    assert payload["quadratic_subfields"] == [5]
    assert payload["abelian"] is True

    code, out = run(capsys, "field", "adjoint", "--a", "1/2,1/2", "--b", "1/3,0", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["degree"] == 1


def test_midconv_verify(capsys):
    code, out = run(capsys, "midconv", "verify", "--m", "5", "--s", "1", "--t", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert len(payload["matrices"]) == 4


def test_certify_commands(capsys):
    code, out = run(capsys, "certify", "quadratic", "--d", "7", "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"

    code, _ = run(capsys, "certify", "quadratic", "--d", "5", "--json")
    assert code == 1

    code, _ = run(capsys, "certify", "cubic", "--disc", "148")
    assert code == 0
    code, _ = run(capsys, "certify", "cubic", "--disc", "49")
    assert code == 1

    code, _ = run(capsys, "certify", "krammer", "--primes", "3,5")
    assert code == 0
    code, _ = run(capsys, "certify", "krammer", "--primes", "2,3")
    assert code == 1
    code, _ = run(capsys, "certify", "krammer", "--primes", "")
    assert code == 1

    code, _ = run(capsys, "certify", "singularities")
    assert code == 0


def test_enumerate_command(tmp_path, capsys):
    out_file = tmp_path / "rows.jsonl"
    code, out = run(
        capsys,
        "enumerate", "--conductor-max", "6", "--out", str(out_file), "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"] > 0
    lines = out_file.read_text().strip().splitlines()
    assert len(lines) == payload["rows"]
    first = json.loads(lines[0])
    assert set(first) == {"a", "b", "classification", "field", "signature"}


def test_usage_errors(capsys):
    assert main(["bogus"]) == 2
    assert main(["series", "solve", "--operator", "krammer", "--init", "nonsense"]) == 2
    assert main(["series", "solve", "--operator", "hyp", "--init", "1"]) == 2
    # wrong number of initial values for an order-2 operator
    assert main(["series", "solve", "--operator", "krammer", "--init", "1"]) == 2

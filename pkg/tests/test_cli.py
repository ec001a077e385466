import csv
import json

from tauforms import tau_range
from tauforms.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tau_command(capsys):
    code, out, _ = run(capsys, "tau", "--n", "2")
    assert code == 0 and out.strip() == "-24"
    code, out, _ = run(capsys, "tau", "--n", "3", "--strategy", "niebur")
    assert code == 0 and out.strip() == "252"


def test_usage_errors(capsys):
    code, _, _ = run(capsys, "tau", "--n", "2", "--strategy", "nope")
    assert code == 2
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2


def test_tau_table_csv(tmp_path, capsys):
    out_path = tmp_path / "tau.csv"
    code, _, _ = run(capsys, "tau-table", "--max-n", "12", "--out", str(out_path))
    assert code == 0
    with open(out_path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["n", "value"]
    assert rows[1] == ["1", "1"]
    assert rows[2] == ["2", "-24"]
    assert len(rows) == 13
    expected = tau_range(12)
    assert [int(r[1]) for r in rows[1:]] == expected[1:]


def test_tau_table_json(tmp_path, capsys):
    out_path = tmp_path / "tau.json"
    code, _, _ = run(
        capsys, "tau-table", "--max-n", "6", "--out", str(out_path), "--format", "json"
    )
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["values"][0] == [1, 1]
    assert payload["values"][5] == [6, -6048]


def test_sigma_table(tmp_path, capsys):
    out_path = tmp_path / "sigma.csv"
    code, _, _ = run(capsys, "sigma", "--k", "3", "--max-n", "4", "--out", str(out_path))
    assert code == 0
    rows = list(csv.reader(open(out_path)))
    assert rows == [["n", "value"], ["1", "1"], ["2", "9"], ["3", "28"], ["4", "73"]]


def test_verify_single_identity_json(capsys):
    code, out, _ = run(
        capsys, "verify", "--identity", "thm2.3", "--max-n", "100", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["tool-version"]
    assert payload["truncation"] == 100
    (result,) = payload["results"]
    assert result["id"] == "thm2.3"
    assert result["status"] == "verified"
    assert result["failures"] == []
    assert result["first_failure"] is None


def test_verify_unknown_identity(capsys):
    code, _, err = run(capsys, "verify", "--identity", "thm9.9", "--max-n", "10")
    assert code == 2


def test_verify_all_text(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "60")
    assert code == 0
    lines = [l for l in out.splitlines() if l]
    assert len(lines) == 45
    assert sum(1 for l in lines if "audit-flagged" in l) == 2


def test_verify_json_deterministic(capsys):
    args = ("verify", "--identity", "all", "--max-n", "40", "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_threaded_matches_sequential(capsys):
    base = ("verify", "--identity", "all", "--max-n", "40", "--format", "json")
    _, sequential, _ = run(capsys, *base, "--threads", "1")
    _, pooled, _ = run(capsys, *base, "--threads", "4")
    assert pooled == sequential


def test_certify_command(capsys):
    code, out, _ = run(capsys, "certify", "--identity", "thm2.1.i")
    assert code == 0
    assert "thm2.1.i: certified" in out


def test_certify_all(capsys):
    code, out, _ = run(capsys, "certify")
    assert code == 0
    assert out.count("certified") == 43
    assert out.count("audit-flagged") == 2


def test_congruences_command(capsys):
    code, out, _ = run(capsys, "congruences", "--max-n", "200")
    assert code == 0
    assert out.count("verified") == 15


def test_audit_command(capsys):
    code, out, _ = run(capsys, "audit", "--max-n", "60")
    assert code == 0
    assert "audit ok" in out
    assert "eisenstein-leading-coefficient" in out
    assert "bracket-e4-e6-order1" in out
    assert "bracket-e4-e4-order2" in out
    assert "stated -3455/864, fitted -3455/36" in out


def test_decompose_command(capsys):
    code, out, _ = run(
        capsys,
        "decompose",
        "--expr",
        "D(E2)*D(E2)",
        "--weight",
        "8",
        "--trunc",
        "32",
    )
    assert code == 0
    assert json.loads(out) == {"D^2(E4)": "1/5", "D^3(E2)": "2"}


def test_decompose_not_in_space(capsys):
    code, _, err = run(
        capsys, "decompose", "--expr", "E4 + E6", "--weight", "8", "--trunc", "32"
    )
    assert code in (1, 2)


def test_eval_command(capsys):
    code, out, _ = run(capsys, "eval", "--expr", "E4*E6", "--trunc", "6", "--coeff", "1")
    assert code == 0 and out.strip() == "-264"
    code, out, _ = run(capsys, "eval", "--expr", "E12 - E8*E4", "--trunc", "4")
    assert code == 0 and "weight: 12" in out


def test_eval_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "eval", "--expr", "D^(E4)", "--trunc", "8")
    assert code == 2
    assert "offset 2" in err


def test_strategy_disagreement_exit_code(capsys, monkeypatch):
    from tauforms import TauStrategyDisagreement
    import tauforms.cli as cli

    def explode(n, strategy="product"):
        raise TauStrategyDisagreement(2, {"product": -24, "vdp": -23})

    monkeypatch.setattr(cli, "tau", explode)
    code, _, err = run(capsys, "tau", "--n", "2")
    assert code == 3
    assert "internal inconsistency" in err


def test_bench_command(capsys):
    code, out, _ = run(
        capsys, "bench", "--strategies", "vdp,niebur", "--max-n", "64", "--repeat", "1"
    )
    assert code == 0
    assert "vdp" in out and "niebur" in out and "ns/value" in out
    code, _, _ = run(capsys, "bench", "--strategies", "bogus", "--max-n", "8", "--repeat", "1")
    assert code == 2

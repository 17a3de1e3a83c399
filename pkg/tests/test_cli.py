import json

import pytest

from wildram.cli import BAD_INPUT, CERT_FAILED, EXHAUSTED, HYPOTHESIS, OK, main
from wildram.nottingham import i_sequence
from wildram.power_series import Series


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    recs = [json.loads(line) for line in out.splitlines() if line.startswith("{")]
    return code, recs, out


@pytest.fixture(scope="module")
def ex_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("ex")
    assert main(["lubin-tate", "--kind", "ramified", "--p", "3", "--alpha", "1+pi", "--alpha", "1+pi^2",
                 "--precision", "730", "--out", str(d / "ram"), "--format", "records"]) == OK
    assert main(["lubin-tate", "--kind", "unramified", "--p", "3", "--alpha", "1+p", "--alpha", "1+zeta*p",
                 "--alpha", "(1+p)*(1+zeta*p)^3", "--precision", "730", "--out", str(d / "unram"),
                 "--format", "records"]) == OK
    return d


def test_lubin_tate_writes_certified_files(capsys, tmp_path):
    code, recs, _ = run(capsys, "lubin-tate", "--kind", "ramified", "--alpha", "1+pi", "--precision", 243,
                        "--out", tmp_path / "s.series", "--format", "records")
    assert code == OK and recs[0]["certified"] and recs[0]["values"][:2] == [2, 26]
    series, prov = Series.read(tmp_path / "s.series")
    assert series.precision == 243 and prov["kind"] == "ramified" and prov["N"] == "243"

    code, recs, _ = run(capsys, "lubin-tate", "--kind", "unramified", "--alpha", "1+p", "--precision", 81,
                        "--out", tmp_path / "u.series", "--format", "records")
    assert code == OK and recs[0]["values"][:2] == [8, 80]


def test_lubin_tate_alpha_one_is_degenerate(capsys, tmp_path):
    code, recs, _ = run(capsys, "lubin-tate", "--alpha", "1", "--precision", 20, "--out", tmp_path / "x.series",
                        "--format", "records")
    assert code == OK and "degenerate" in recs[0]["warning"]
    series, _ = Series.read(tmp_path / "x.series")
    assert series == Series.identity(series.ring, 20)


def test_lubin_tate_errors(capsys):
    assert main(["lubin-tate", "--alpha", "1+", "--precision", "20"]) == BAD_INPUT
    assert main(["lubin-tate", "--alpha", "2", "--precision", "20"]) == BAD_INPUT
    code, recs, _ = run(capsys, "lubin-tate", "--kind", "unramified", "--alpha", "1+p", "--precision", 200,
                        "--pdigits", 1, "--max-pdigits", 1, "--format", "records")
    assert code == CERT_FAILED and not recs[0]["certified"]


def test_breaks_round_trip(capsys, ex_files):
    code, recs, _ = run(capsys, "breaks", ex_files / "ram" / "sigma_0.series", "--format", "records")
    assert code == OK
    r = recs[0]
    assert r["values"] == [2, 26, 242] and r["sen"] == "pass" and r["class"] == "CharP"
    assert r["provenance"]["alpha"] == "1+pi"


def test_breaks_rank1_oracle(capsys, tmp_path):
    main(["lubin-tate", "--kind", "qp", "--alpha", "1+p", "--precision", "81", "--out", str(tmp_path / "q")])
    capsys.readouterr()
    code, recs, _ = run(capsys, "breaks", tmp_path / "q", "--format", "records")
    assert code == OK and recs[0]["values"] == [2, 8, 26] and recs[0]["class"] == "Char0" and recs[0]["e"] == "2"


def test_breaks_errors(capsys, tmp_path):
    Series.identity(__import__("wildram").FieldSpec(3), 10).write(tmp_path / "id")
    assert main(["breaks", str(tmp_path / "id")]) == BAD_INPUT
    assert "identity automorphism" in capsys.readouterr().err
    assert main(["breaks", str(tmp_path / "missing")]) == BAD_INPUT
    (tmp_path / "junk").write_text("hello\n")
    assert main(["breaks", str(tmp_path / "junk")]) == BAD_INPUT
    main(["lubin-tate", "--alpha", "1+pi", "--precision", "30", "--out", str(tmp_path / "short")])
    capsys.readouterr()
    code, recs, _ = run(capsys, "breaks", tmp_path / "short", "--format", "records")
    assert code == EXHAUSTED and recs[0]["values"] == [2, 26]


def test_classify2_ramified(capsys, ex_files):
    d = ex_files / "ram"
    code, recs, _ = run(capsys, "classify2", d / "sigma_0.series", d / "sigma_1.series", "--format", "records")
    r = recs[0]
    assert code == OK
    assert (r["depth"], r["gamma"], r["class"], r["a"], r["e"]) == (1, ["3", "9"], "Char0", 0, "4")
    assert r["table"]["entries"][:3] == [[2, 3], [8, 9], [26, 27]]


def test_classify2_unramified_and_counterexample(capsys, ex_files):
    d = ex_files / "unram"
    code, recs, _ = run(capsys, "classify2", d / "sigma_0.series", d / "sigma_1.series", "--format", "records")
    r = recs[0]
    assert code == OK and (r["depth"], r["gamma"], r["class"], r["e"]) == (2, ["9", "9"], "Char0", "8")
    code, recs, _ = run(capsys, "classify2", d / "sigma_0.series", d / "sigma_2.series", "--format", "records")
    r = recs[0]
    assert code == HYPOTHESIS and r["depth"] == 2 and r["e"] == "8" and r["hypothesis_flag"]
    assert r["e_filtration"] == ["24"]


def test_classify2_degenerate(capsys, ex_files):
    f = ex_files / "ram" / "sigma_0.series"
    code, recs, _ = run(capsys, "classify2", f, f, "--format", "records")
    assert code == CERT_FAILED and recs[0]["table"]["degenerate"]


def test_phi_command(capsys, tmp_path):
    code, recs, _ = run(capsys, "phi", "--breaks", "2,8", "--p", 3, "--at", 8, "--psi", 4, "--format", "records")
    assert code == OK and recs[0]["phi"] == {"8": "4"} and recs[0]["psi"] == {"4": "8"}
    code, recs, _ = run(capsys, "phi", "--breaks", "2,8,26", "--indices", "3,9,27", "--p", 3, "--at", 26,
                        "--format", "records")
    assert recs[0]["phi"] == {"26": "6"}
    assert main(["phi", "--breaks", "2,8", "--p", "3", "--psi", "-1"]) == BAD_INPUT
    assert main(["phi"]) == BAD_INPUT


def test_sen_command_deterministic(capsys):
    args = ["sen", "--p", "3", "--count", "10", "--precision", "120", "--seed", "5", "--format", "records"]
    code1, recs1, _ = run(capsys, *args)
    code2, recs2, _ = run(capsys, *args)
    assert code1 == code2 == OK and recs1 == recs2
    assert recs1[-1]["checked"] == 10 and recs1[-1]["failed"] == 0


def test_table_format_is_readable(capsys):
    main(["phi", "--breaks", "2,8", "--p", "3", "--at", "8"])
    out = capsys.readouterr().out
    assert out.startswith("[phi]") and "knots" in out

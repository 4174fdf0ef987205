import json
import subprocess
import sys
from fractions import Fraction

import pytest

from runsgf.cli import main, run, table_from_json
from runsgf.models import PatternSpec, ProbModel, round_sig
from runsgf.patterns import distribution


def out(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dist_golden_example(capsys):
    code, text, _ = out(capsys, ["dist", "--ell", "3", "--k", "2,2,3", "--p", "1/6,1/3,1/2", "--n", "17"])
    assert code == 0
    assert text.splitlines()[0] == (
        "F_{3,17}(w) = 0.9939258642 + 0.006071881114 w + 0.000002254704073 w^2"
    )


def test_dist_below_threshold(capsys):
    code, text, _ = out(capsys, ["dist", "--ell", "2", "--k", "1,1", "--p", "1/2,1/2", "--n", "1", "--format", "json"])
    assert code == 0
    assert [v["exact"] for v in json.loads(text)["values"]] == ["1/1"]


def test_dist_small_json(capsys):
    code, text, _ = out(capsys, ["dist", "--ell", "2", "--k", "1,1", "--p", "1/3,2/3", "--n", "2", "--format", "json"])
    obj = json.loads(text)
    assert obj["spec"] == {"ell": 2, "k": [1, 1]}
    assert obj["probs"] == ["1/3", "2/3"]
    assert obj["mode"] == "probability"
    assert [(v["m"], v["exact"]) for v in obj["values"]] == [(0, "7/9"), (1, "2/9")]


def test_dist_bad_sum(capsys):
    code, _, err = out(capsys, ["dist", "--ell", "2", "--k", "1,1", "--p", "1/3,1/3", "--n", "2"])
    assert code == 2
    assert "2/3" in err


def test_dist_rejects_non_terminating(capsys):
    code, _, _ = out(capsys, ["dist", "--ell", "2", "--k", "1,1", "--p", "0.333...,2/3", "--n", "2"])
    assert code == 2


def test_bad_thresholds(capsys):
    assert out(capsys, ["dist", "--ell", "3", "--k", "1,1", "--n", "2"])[0] == 2
    assert out(capsys, ["dist", "--ell", "2", "--k", "1,0", "--n", "2"])[0] == 2


def test_json_roundtrip(capsys):
    code, text, _ = out(capsys, ["dist", "--ell", "3", "--k", "1,2,1", "--p", "0.2,0.3,0.5", "--n", "5:9", "--format", "json"])
    spec, probs = PatternSpec((1, 2, 1)), ProbModel.parse("1/5,3/10,1/2")
    for obj in json.loads(text):
        assert table_from_json(obj) == distribution(spec, probs, obj["n"])


def test_decimals_match_exact(capsys):
    code, text, _ = out(capsys, ["dist", "--ell", "3", "--k", "2,2,3", "--p", "1/6,1/3,1/2", "--n", "17", "--format", "json", "--digits", "6"])
    for v in json.loads(text)["values"]:
        assert v["decimal"] == format(round_sig(Fraction(v["exact"]), 6), "f")


def test_output_deterministic(capsys):
    argv = ["dist", "--ell", "3", "--k", "1,1,2", "--p", "1/4,1/4,1/2", "--n", "0:12", "--format", "csv"]
    assert out(capsys, argv)[1] == out(capsys, argv)[1]


def test_counts(capsys):
    code, text, _ = out(capsys, ["counts", "--ell", "3", "--k", "2,2,3", "--n", "17", "--format", "csv"])
    assert code == 0
    assert text.splitlines() == [
        "n,m,exact,decimal",
        "17,0,128210550,128210550",
        "17,1,929204,929204",
        "17,2,409,409",
    ]
    code, text, _ = out(capsys, ["counts", "--ell", "2", "--k", "1,1", "--n", "2", "--format", "json"])
    assert [v["exact"] for v in json.loads(text)["values"]] == ["3", "1"]
    code, text, _ = out(capsys, ["counts", "--ell", "4", "--k", "1,1,1,1", "--n", "3", "--format", "json"])
    assert [v["exact"] for v in json.loads(text)["values"]] == ["64"]


def test_gf_three_states(capsys):
    code, text, _ = out(capsys, ["gf", "--ell", "3", "--k", "2,2,3", "--p", "1/6,1/3,1/2", "--format", "json"])
    obj = json.loads(text)
    c = Fraction(1, 2592)
    # (1 - z)(1 - z/3) - (w - 1) c z^7
    assert obj["gf"]["G"]["denominator"] == [["1"], ["-4/3"], ["1/3"], [], [], [], [], [str(c), str(-c)]]
    assert obj["gf"]["G"]["numerator"] == [["1"], ["-1/3"]]
    assert obj["recurrence"]["coefficients"] == ["4/3", "-1/3"]


def test_gf_two_state_iid(capsys):
    code, text, _ = out(capsys, ["gf", "--ell", "2", "--k", "1,2", "--format", "json"])
    g = json.loads(text)["gf"]["G"]
    assert g["numerator"] == [["1"]]
    assert g["denominator"] == [["1"], ["-2"], [], ["1", "-1"]]


def test_gf_right_end(capsys):
    code, text, _ = out(capsys, ["gf", "--ell", "2", "--k", "1,2", "--p", "1/3,2/3", "--right-end", "--format", "json"])
    gfs = json.loads(text)["gf"]
    # p1 p2^2 z^3 / ((1 - 2z/3)(1 - z))
    assert gfs["H"]["numerator"] == [[], [], [], ["4/27"]]
    assert gfs["H"]["denominator"] == [["1"], ["-5/3"], ["2/3"]]
    assert gfs["H_complement"]["numerator"] == [[], ["1"], ["-2/3"], ["-4/27"]]


@pytest.mark.parametrize(
    "ell,text",
    [
        (2, "F(n) = F(n-1) + (w-1)*p1^k1*p2^k2*F(n-k)"),
        (3, "F(n) = (1 + p2)*F(n-1) - p2*F(n-2) + (w-1)*p1^k1*p2^k2*p3^k3*F(n-k)"),
        (
            4,
            "F(n) = (1 + p2 + p3)*F(n-1) - (p2 + p3 + p2*p3)*F(n-2) + p2*p3*F(n-3)"
            " + (w-1)*p1^k1*p2^k2*p3^k3*p4^k4*F(n-k)",
        ),
    ],
)
def test_gf_prints_symbolic_recurrence(capsys, ell, text):
    _, printed, _ = out(capsys, ["gf", "--ell", str(ell), "--k", ",".join(["1"] * ell)])
    assert text in printed.splitlines()


def test_expect(capsys):
    code, text, _ = out(capsys, ["expect", "--ell", "3", "--k", "2,2,3", "--p", "1/6,1/3,1/2", "--n", "17", "--principal", "--format", "json"])
    obj = json.loads(text)
    table = distribution(PatternSpec((2, 2, 3)), ProbModel.parse("1/6,1/3,1/2"), 17)
    assert Fraction(obj["exact"]) == table[1] + 2 * table[2]
    assert obj["closed_form_agrees"] is True
    assert Fraction(obj["principal"]["exact"]) == Fraction(1, 2592) * 11 * Fraction(3, 2)
    _, text, _ = out(capsys, ["expect", "--ell", "3", "--k", "2,2,3", "--n", "3", "--format", "json"])
    assert json.loads(text)["exact"] == "0/1"
    _, text, _ = out(capsys, ["expect", "--ell", "3", "--k", "2,2,3", "--n", "20", "--format", "json"])
    assert json.loads(text)["closed_form_agrees"] is True


def test_verify_small(capsys):
    code, text, _ = out(capsys, ["verify", "--max-k", "2", "--max-n", "8", "--probs-per-spec", "1"])
    assert code == 0
    assert text.strip().endswith("ALL CHECKS PASSED")


def test_verify_perturb_fails(capsys):
    code, text, _ = out(capsys, ["verify", "--ells", "2", "--max-k", "1", "--max-n", "6", "--probs-per-spec", "1", "--perturb"])
    assert code == 1
    assert "FAIL oracle" in text and "n=" in text and "m=" in text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "runsgf", "counts", "--ell", "2", "--k", "1,1", "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "A_{2,2}(w) = 3 + 1 w"

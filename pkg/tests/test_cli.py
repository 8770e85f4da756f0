import io
import json
import subprocess
import sys

import pytest

from expdiophantine.cli import run
from expdiophantine.diophantine import SolutionCertificate, VerificationReport
from expdiophantine.ljunggren import LjunggrenSolution
from expdiophantine.pell import PellFundamental


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, [json.loads(line) for line in out.getvalue().splitlines()]


def test_pell():
    out = io.StringIO()
    assert run(["pell", "--d", "6083"], stdout=out) == 0
    assert out.getvalue() == '{"d":"6083","u1":"78","v1":"1"}\n'
    rec = json.loads(out.getvalue())
    PellFundamental(int(rec["d"]), int(rec["u1"]), int(rec["v1"]))


def test_pell_k_and_u():
    assert call("pell", "--d", "2", "--k", "3") == (0, [{"d": "2", "k": "3", "u": "99", "v": "70"}])
    assert call("pell", "--d", "2", "--u", "100") == (0, [{"d": "2", "u": "100", "k": None}])


def test_evaluate():
    code, [rec] = call("evaluate", "--a", "2", "--b", "5", "--n", "1")
    assert code == 0 and rec["x"] == "2"
    assert SolutionCertificate.from_json(rec).z == 2


def test_evaluate_big_values_stay_exact():
    code, [rec] = call("evaluate", "--a", "13", "--b", "239", "--n", "4")
    assert rec["x"] == "9653280"
    SolutionCertificate.from_json(rec)


def test_evaluate_expect_solution():
    code, [rec] = call("evaluate", "--a", "2", "--b", "3", "--n", "1")
    assert code == 0 and rec["solution"] is None
    assert rec["obstruction"]["b_quotient_square"] is False
    code, _ = call("evaluate", "--a", "2", "--b", "3", "--n", "1", "--expect-solution")
    assert code == 1


def test_verify_thm2():
    code, [rec] = call("verify", "--scope", "thm2", "--a-max", "40", "--b-max", "40", "--n-max", "12")
    assert code == 0 and rec["violations"] == []
    VerificationReport.from_json(rec)


def test_verify_shards_do_not_change_bytes():
    outs = []
    for shards in ("1", "2", "8"):
        buf = io.StringIO()
        run(["verify", "--scope", "thm1-case2", "--shards", shards], stdout=buf)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1] == outs[2]


def test_search_and_ljunggren():
    code, recs = call("search", "--a-max", "5", "--b-max", "5", "--n-max", "5")
    assert [(r["a"], r["b"], r["n"], r["x"]) for r in recs] == [("2", "4", "3", "21"), ("2", "5", "1", "2")]
    code, recs = call("ljunggren", "--p", "3", "--y-max", "1000")
    assert [LjunggrenSolution(**{k: int(v) for k, v in r.items()}) for r in recs][1].y == 78


def test_lemmas_and_primitive_divisors():
    code, recs = call("lemmas", "--d", "2", "--lemma", "all")
    assert code == 0 and [r["lemma"] for r in recs] == ["l1", "l3", "carmichael"]
    assert all(r["violations"] == [] for r in recs)
    assert call("primitive-divisors", "--d", "2", "--n", "7") == (0, [{"d": "2", "n": "7", "primes": ["13", "239"]}])


@pytest.mark.parametrize(
    "argv",
    [
        ["pell", "--d", "49"],
        ["lemmas", "--d", "16"],
        ["lemmas", "--lemma", "carmichael", "--d", "2", "--n-max", "5"],
        ["primitive-divisors", "--d", "4", "--n", "3"],
        ["ljunggren", "--p", "4"],
        ["evaluate", "--a", "3", "--b", "3", "--n", "1"],
        ["search", "--a-max", "5", "--b-max", "5", "--n-max", "0"],
        ["search", "--a-max", "5", "--b-max", "5", "--n-max", "2", "--shards", "0"],
        ["verify", "--scope", "thm3"],
        ["verify", "--scope", "thm2", "--a-max", "-3"],
        ["pell", "--d", "1e3"],
        ["pell", "--d", "5", "--unknown", "1"],
        [],
    ],
)
def test_errors_exit_2(argv, capsys):
    assert run(argv, stdout=io.StringIO()) == 2
    err = capsys.readouterr().err
    assert err.count("\n") == 1 and err.startswith("expdioph: error:")


def test_human_format_and_output_file(tmp_path):
    path = tmp_path / "out.jsonl"
    buf = io.StringIO()
    assert run(["pell", "--d", "2", "--output", str(path)], stdout=buf) == 0
    assert path.read_text() == buf.getvalue()
    buf = io.StringIO()
    run(["pell", "--d", "2", "--format", "human"], stdout=buf)
    assert buf.getvalue() == "d=2 u1=3 v1=2\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "expdiophantine", "pell", "--d", "61"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"d": "61", "u1": "1766319049", "v1": "226153980"}

import csv
import io
import json

import pytest

from drinfeld_slopes.algebra import FieldSpec, Poly, charpoly_reciprocal
from drinfeld_slopes.algebra.serialize import matrix_from_json
from drinfeld_slopes.algebra.xpoly import XPoly
from drinfeld_slopes.cli import ConfigError, main, parse_weights


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_parse_weights():
    assert parse_weights("2..5") == [2, 3, 4, 5]
    assert parse_weights("7,3") == [3, 7]
    assert parse_weights("") == [] and parse_weights("9..3") == []
    with pytest.raises(ConfigError):
        parse_weights("1..3")


def test_slopes_csv(capsys):
    code, out = run(capsys, "slopes", "--q", "3", "--level", "gamma1:t", "--k", "2..12", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    ordinary = {int(r["k"]) for r in rows if r["slope_num"] == "0" and r["mult"] == "1"}
    assert ordinary == set(range(2, 13))
    assert {"k": "10", "chi": "", "slope_num": "1", "slope_den": "1", "mult": "1"} in rows


def test_empty_range(capsys):
    code, out = run(capsys, "slopes", "--k", "")
    assert code == 0 and json.loads(out) == []


def test_threads_do_not_change_output(capsys):
    _, a = run(capsys, "slopes", "--k", "3..9", "--threads", "1")
    _, b = run(capsys, "slopes", "--k", "3..9", "--threads", "4")
    assert a == b


def test_config_errors(capsys):
    assert main(["slopes", "--q", "6", "--k", "3"]) == 2
    assert main(["slopes", "--level", "gamma1:1+t", "--k", "3"]) == 2
    assert main(["slopes", "--chi", "5", "--k", "3"]) == 2


def test_dump_matrix_small(capsys):
    code, out = run(capsys, "dump-matrix", "--k", "2", "--Q", "t")
    assert code == 0 and json.loads(out) == [[[1]]]


def test_dump_matrix_weight_ten(capsys):
    F = FieldSpec(3)
    _, out = run(capsys, "dump-matrix", "--k", "10", "--Q", "t")
    M = matrix_from_json(F, json.loads(out))
    _, again = run(capsys, "dump-matrix", "--k", "10", "--Q", "t")
    assert out == again
    lam = Poly.parse(F, "-t-t^3")
    assert XPoly.linear_root(lam).divides(charpoly_reciprocal(M).reversed(M.rows))


def test_verify_family(capsys):
    code, out = run(capsys, "verify", "family", "--k1", "10", "--k2", "19", "--a", "1", "--Q", "t,1+t", "--n", "2", "--nprime", "1")
    reports = json.loads(out)
    assert code == 0
    assert [r["computed"]["valuation"] for r in reports] == [9, 9]


def test_verify_constancy(capsys):
    code, out = run(capsys, "verify", "constancy", "--k", "4", "--kprime", "7", "--n", "1")
    assert code == 0 and json.loads(out)[0]["verdict"] == "PASS"


def test_verify_perturb(capsys):
    code, out = run(capsys, "verify", "perturb", "--seed", "7", "--trials", "30")
    assert code == 0 and all(r["verdict"] == "PASS" for r in json.loads(out))


def test_verify_eldiv_with_characters(capsys):
    code, out = run(capsys, "verify", "eldiv", "--k", "3..6", "--chi", "all", "--level", "gamma0p:t^2")
    assert code == 0 and len(json.loads(out)) == 8


def test_out_file(tmp_path, capsys):
    target = tmp_path / "t.json"
    assert main(["slopes", "--k", "5", "--out", str(target)]) == 0
    assert json.loads(target.read_text())[0]["k"] == 5

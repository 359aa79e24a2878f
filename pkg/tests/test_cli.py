import json
import re

import pytest

from tropmut.cli import dumps, main, parse_job, render_charts, run
from tropmut.errors import NonNegativeLevel, ParseError

E1_JOB = {"s": 1, "f": {"roots": [[-1, 1]]},
          "polytope": [{"point": [0, 0, 1], "level": -1}, {"point": [1, -1, 0], "level": -1},
                       {"point": [-1, 1, 0], "level": -1}, {"point": [-1, 0, -1], "level": -1}],
          "analyses": ["all"]}
E2_JOB = {"s": 2, "f": {"roots": [["-2", 1], ["-1/2", 1]]},
          "polytope": [{"point": [0, 0, 1], "level": -1}, {"point": [1, -1, 0], "level": -1},
                       {"point": [-1, 1, 0], "level": -1}, {"point": [-1, -1, -1], "level": -1}],
          "analyses": ["classgroup", "cox", "complexity", "toricity"]}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="job.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return _write


def test_run_e1():
    rep = run(parse_job(E1_JOB))
    sec = rep["sections"]
    assert sec["classgroup"]["group"] == "Z^3"
    assert sec["complexity"]["complexity"] == 1 and sec["complexity"]["cross_check"] == 1
    assert sec["toricity"]["toric"] is True
    assert sec["cox"]["relations"] == ["w5*w6 - w1 - w4"]
    assert sec["dual-mutation"]["holds"] is True
    assert rep["errors"] == []


def test_run_e2_records_mismatch():
    rep = run(parse_job(E2_JOB))
    sec = rep["sections"]
    assert sec["complexity"]["complexity"] == 2
    assert len(sec["cox"]["generators"]) == 8 and len(sec["cox"]["relations"]) == 2
    assert sec["toricity"]["criterion"] is False and sec["toricity"]["agree"] is False
    assert any("CriterionOracleMismatch" in e for e in rep["errors"])


def test_zero_level_is_validation_error():
    job = json.loads(json.dumps(E1_JOB))
    job["polytope"][0]["level"] = 0
    with pytest.raises(NonNegativeLevel):
        run(parse_job(job))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_job({"s": 1})
    with pytest.raises(ParseError):
        parse_job(dict(E1_JOB, analyses=["nonsense"]))


def test_determinism_and_round_trip():
    a = dumps(run(parse_job(E1_JOB)))
    b = dumps(run(parse_job(E1_JOB)))
    assert a == b
    echo = json.loads(a)["input"]
    again = run(parse_job(echo))
    assert again["input"]["polytope"] == echo["polytope"]


def test_user_order_echo():
    job = dict(E1_JOB, polytope=[E1_JOB["polytope"][k] for k in (3, 0, 2, 1)])
    echo = run(parse_job(job))["input"]
    # stable sort with c >= 0 first: p1, p3, p2 keep their input order, p4 goes last
    assert echo["user_order"] == [2, 3, 4, 1]


def test_rationals_as_strings():
    assert re.search(r'"-1/2"', dumps(run(parse_job(dict(E2_JOB, analyses=["moduli"])))))


def test_render_charts_e1():
    svg = render_charts(parse_job(E1_JOB))
    assert svg.startswith("<?xml") and 'version="1.1"' in svg
    assert svg.count('class="lattice"') == 16
    assert "D3 sink" in svg and "D2 source" in svg
    assert svg.count('class="pl-vertex"') == 8


def test_render_dilated():
    job = parse_job(dict(E1_JOB, dilate=2))
    assert [c["level"] for c in run(job)["input"]["polytope"]] == [-2] * 4
    svg = render_charts(job)
    # Pick: area 14 and 14 boundary points leave 8 interior points, 22 in all
    assert svg.count('class="lattice"') == 2 * 22


def test_main_exit_codes(write, tmp_path, capsys):
    assert main([write(E1_JOB), "--json", str(tmp_path / "out.json")]) == 0
    assert json.loads((tmp_path / "out.json").read_text())["sections"]["classgroup"]["group"] == "Z^3"
    assert main([write(E2_JOB)]) == 4
    assert main([write("{not json")]) == 2
    bad = json.loads(json.dumps(E1_JOB))
    bad["polytope"][0]["level"] = 0
    assert main([write(bad)]) == 3
    err = capsys.readouterr().err
    assert "NonNegativeLevel" in err and "ParseError" in err


def test_main_svg_not_written_on_error(write, tmp_path):
    out = tmp_path / "charts.svg"
    job = dict(E1_JOB, polytope=E1_JOB["polytope"][:1])
    assert main([write(job), "--svg", str(out)]) == 3
    assert not out.exists()
    assert main([write(E1_JOB), "--svg", str(out), "--only", "validate"]) == 0
    assert out.read_text().count('class="lattice"') == 16


def test_main_only_and_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(E1_JOB)))
    assert main(["--stdin", "--only", "complexity"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert list(rep["sections"]) == ["complexity"]


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "schema" in capsys.readouterr().out

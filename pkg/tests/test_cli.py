import json

import pytest

from measloc.cli import main
from measloc.errors import UnknownCommand
from measloc.reports import LawReport, run

HJ = """kind: lattice
name: L
elements: {} {a} {b} {c} {a,b} {a,c} {b,c} {a,b,c}
covers: {}<{a} {}<{b} {}<{c} {a}<{a,b} {a}<{a,c} {b}<{a,b} {b}<{b,c} {c}<{a,c} {c}<{b,c} {a,b}<{a,b,c} {a,c}<{a,b,c} {b,c}<{a,b,c}
---
kind: valuation
on: L
values: {}=0 {a}=1 {b}=-2 {c}=0 {a,b}=-1 {a,c}=1 {b,c}=-2 {a,b,c}=-1
"""


def test_duality_report_all_pass(capsys):
    assert main(["duality-report", "powerset(3)"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "PASS\tchi-iso" in out


def test_hahn_jordan_norm(tmp_path, capsys):
    doc = tmp_path / "v.txt"
    doc.write_text(HJ)
    assert main(["hahn-jordan", str(doc), "--format", "structured"]) == 0
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    norm = next(r for r in rows if r["law"] == "norm")
    assert norm["witness"] == "3"
    assert all(r["status"] != "fail" for r in rows)


def test_proptest_is_deterministic(capsys):
    main(["proptest", "--seed", "7", "--cases", "40"])
    first = capsys.readouterr().out
    main(["proptest", "--seed", "7", "--cases", "40"])
    assert capsys.readouterr().out == first
    assert "seed\tvalue\t7" in first


def test_every_command_runs():
    _, r = run("validate", "chain(3)")
    assert r
    for cmd, src in [("spectrum", "chain(3)"), ("spec", "powerset(2)"),
                     ("ml", "kind: ems\npoints: 0 1\nM: {} {0,1}\nN: {}"),
                     ("roundtrip", "kind: ems\npoints: 0 1\nM: {} {0} {1} {0,1}\nN: {} {0}"),
                     ("roundtrip", "powerset(2)"),
                     ("pentad", "kind: ems\nname: E\npoints: 0 1\nM: {} {0} {1} {0,1}\nN: {}\n---\n"
                                "kind: measure\non: E\nvalues: {}=0 {0}=1 {1}=-1/2+i {0,1}=1/2+i")]:
        _, reports = run(cmd, src)
        assert all(x.status != "fail" for x in reports), (cmd, reports)


def test_errors_exit_nonzero(capsys):
    assert main(["frobnicate", "powerset(1)"]) == 2
    assert main(["validate", "kind: ems\npoints: 0 1\nM: {} {0,1}\nN: {} {0}"]) == 2
    assert "NotSigmaIdeal" in capsys.readouterr().err
    with pytest.raises(UnknownCommand):
        run("frobnicate")


def test_failing_law_exits_one(monkeypatch, capsys):
    import measloc.cli

    def broken(*args, **kwargs):
        return None, [LawReport("unit-iso", "stone-unit", "fail", "{a}")]

    monkeypatch.setattr(measloc.cli, "run", broken)
    assert main(["roundtrip", "powerset(1)"]) == 1
    assert capsys.readouterr().out.startswith("FAIL\tunit-iso")


def test_figures(tmp_path, capsys):
    doc = tmp_path / "v.txt"
    doc.write_text(HJ)
    assert main(["hahn-jordan", str(doc), "--figures", str(tmp_path / "figs")]) == 0
    names = sorted(p.name for p in (tmp_path / "figs").iterdir())
    assert names == ["hahn_jordan_hasse.png", "hahn_jordan_laws.png", "hahn_jordan_negative.png",
                     "hahn_jordan_positive.png", "hahn_jordan_values.png"]


def test_timings_flag(capsys):
    main(["spec", "powerset(1)", "--timings", "--format", "structured"])
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert all("runtime" in r for r in rows)

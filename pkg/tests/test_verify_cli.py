import pytest

from coxchar.cli import main, parse_subset
from coxchar.coxgroup import coxeter_group, normalizer
from coxchar.tables import data_dir
from coxchar.verify import (
    MissingData,
    Record,
    Report,
    emit_report,
    parse_report,
    sample_classes,
    verify_theorem_A,
    verify_theorem_C,
)

L = ("1", "2", "4", "5")


@pytest.fixture
def bad_table(tmp_path):
    text = (data_dir() / "B5-1245.tbl").read_text()
    assert "gen w15 value E(6)" in text
    p = tmp_path / "B5-bad.tbl"
    p.write_text(text.replace("gen w15 value E(6)", "gen w15 value -E(6)"))
    return p


def test_b5_pair_passes():
    r = verify_theorem_C("B5", L, oracle=True)
    assert r.passed and r.exit_code == 0
    assert [x.identity for x in r.records] == ["ThmC-sum", "ThmC-omega", "Oracle-rho", "Oracle-omega"]
    assert r.record("ThmC-sum").checked == len(normalizer(coxeter_group("B5"), L).classes) == 30


def test_solver_route_passes():
    r = verify_theorem_C("B5", L, solve=True)
    assert r.passed


def test_negated_value_fails(bad_table):
    r = verify_theorem_C("B5", L, table=bad_table)
    assert not r.passed and r.exit_code == 1
    rec = r.record("ThmC-sum")
    assert rec.status == "FAIL" and rec.diffs
    assert r.record("ThmC-omega").status == "PASS"
    text = emit_report(r)
    assert "FAIL" in text and "expected" in text


def test_missing_data():
    with pytest.raises(MissingData):
        verify_theorem_C("B5", ("1",))


def test_machine_round_trip(bad_table):
    r = verify_theorem_C("B5", L, table=bad_table)
    out = emit_report(r, "machine")
    back = parse_report(out)
    assert back.records == r.records
    assert emit_report(back, "machine") == out


def test_text_is_deterministic():
    a = emit_report(verify_theorem_C("B5", L))
    b = emit_report(verify_theorem_C("B5", L))
    assert a == b
    r = Report([Record("B5", "{1}", "ThmC-sum", "PASS", 3, seconds=1.5)])
    assert "[1.50s]" in emit_report(r, timings=True)
    assert "s]" not in emit_report(r)


def test_parse_report_rejects_other_text():
    with pytest.raises(ValueError):
        parse_report("hello\n")


def test_sample_classes():
    b = coxeter_group("E6")
    ks = sample_classes(b)
    assert len(ks) == 4 and ks[0] == 0


def test_theorem_a_small():
    for g in ("A2", "B3", "D4"):
        r = verify_theorem_A(g, solve=True)
        assert r.passed, emit_report(r)
        assert {x.identity for x in r.records} == {"ThmA-classes", "ThmA-rho", "ThmA-omega"}


def test_theorem_a_needs_data(tmp_path):
    with pytest.raises(MissingData):
        verify_theorem_A("B3", tables=tmp_path)


def test_parse_subset():
    b = coxeter_group("D5")
    assert parse_subset(b, "S") == b.datum.labels
    assert parse_subset(b, "1',2,3") == ("1'", "2", "3")
    assert parse_subset(b, "1'234") == ("1'", "2", "3", "4")
    b = coxeter_group("B5")
    assert parse_subset(b, "1245") == L
    assert parse_subset(b, "{1 2}") == ("1", "2")


def test_cli_exit_codes(capsys, bad_table, tmp_path):
    assert main(["verify-c", "--group", "B5", "--L", "1,2,4,5"]) == 0
    assert "ThmC-sum" in capsys.readouterr().out
    assert main(["verify-c", "--group", "B5", "--L", "1,2,4,5", "--table", str(bad_table)]) == 1
    assert main(["verify-c", "--group", "B5", "--L", "1,7"]) == 2
    assert main(["verify-c", "--group", "Q5", "--L", "1"]) == 2
    assert main(["verify-c", "--group", "B5", "--L", "1"]) == 2
    assert main(["verify-c", "--group", "B5", "--L", "1245", "--table", str(tmp_path / "none.tbl")]) == 2
    bad = tmp_path / "syntax.tbl"
    bad.write_text("group B 5\nL 1 2 4 5\nclass x rep 1245\ngen 1245 value E(\n")
    assert main(["validate", str(bad)]) == 2
    assert f"{bad}:4:" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(["verify-c", "--group", "B5"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["verify-c", "--group", "B5", "--L", "S", "--table", "x", "--solve"])


def test_cli_machine_output_and_jobs(capsys):
    assert main(["verify-c", "--group", "B5", "--L", "S", "--format", "machine"]) == 0
    one = capsys.readouterr().out
    assert main(["verify-c", "--group", "B5", "--L", "S", "--format", "machine", "--jobs", "2"]) == 0
    two = capsys.readouterr().out
    assert one == two
    rep = parse_report(one)
    assert rep.passed and len(rep.records) == 2


def test_cli_omega(capsys):
    assert main(["omega", "--group", "A2", "--rep", "12"]) == 0
    out = capsys.readouterr().out
    assert "degree 2: -1" in out and "total: 0" in out
    assert main(["omega", "--group", "E6", "--rep", "e", "--top-only", "--format", "machine"]) == 0
    assert capsys.readouterr().out.strip().endswith("\t6\t12320")


def test_cli_validate(capsys):
    assert main(["validate", str(data_dir() / "E6-S.tbl")]) == 0
    assert "5 classes, ok" in capsys.readouterr().out


def test_cli_verify_a(capsys):
    assert main(["verify-a", "--group", "B3", "--solve"]) == 0
    assert main(["verify-a", "--group", "B3", "--tables", str(data_dir())]) == 2

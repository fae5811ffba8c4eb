import csv
import io
import json

from fractions import Fraction

import pytest

from twinwheel.cli import EXIT_INTERNAL, EXIT_OK, EXIT_RANGE, EXIT_USAGE, run
from twinwheel.output import OutputRecord, render_cell, to_decimal


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def rows_json(*argv):
    code, out, _ = call(*argv, "--format", "json")
    assert code == EXIT_OK
    return json.loads(out)


def test_table_three_csv():
    code, out, err = call("table", "--id", "3", "--format", "csv")
    assert code == EXIT_OK and err == ""
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["k"]) for r in rows] == list(range(3, 13))
    assert [int(r["n_twin"]) for r in rows][:3] == [3, 15, 135]
    assert rows[-1]["n_twin"] == "217929355875"
    assert rows[2]["agreement"] == "discrepant:rho_twin"
    assert all(r["schema_version"] == "1" for r in rows)


def test_csv_quoting_and_line_ends():
    _, out, _ = call("generate", "--k", "3", "--twins")
    assert out == '"schema_version","low","high","seq_n"\n"1",11,13,1\n"1",17,19,2\n"1",29,31,4\n'


def test_bounds_json():
    body = rows_json("bounds", "--l", "5")
    assert set(body) == {"schema_version", "command", "rows", "provenance"}
    row = body["rows"][0]
    assert (row["k"], row["bound_floor"], row["actual"]) == (15, 43, 74)


def test_global_flags_before_or_after():
    _, before, _ = call("--format", "json", "counts", "--k", "5")
    _, after, _ = call("counts", "--k", "5", "--format", "json")
    assert before == after and json.loads(before)["rows"][0]["n_pp"] == 480


def test_precision_flag():
    body = rows_json("densities", "--k", "5", "--precision", "6")
    assert body["rows"][0]["rho_twin"] == 0.0584416


def test_table_provenance():
    body = rows_json("table", "--id", "3")
    assert body["provenance"]["table-3"]["5"]["rho_twin"] is False


def test_generate_marks_composites():
    body = rows_json("generate", "--k", "4", "--mark-composites")
    marked = [r["display"] for r in body["rows"] if r["display"].endswith("*")]
    assert marked == ["121*", "143*", "169*", "187*", "209*"]


def test_generate_array():
    _, out, _ = call("generate", "--k", "4", "--array", "--mark-composites")
    lines = out.splitlines()
    assert lines[1] == '"1",11,"Prog1","11","41","71","101","131","-","191"'
    assert lines[8] == '"1",31,"Prog2","31","61","-","121*","151","181","211"'


def test_generate_limit_skips_cap():
    body = rows_json("generate", "--k", "12", "--limit", "3")
    assert [r["value"] for r in body["rows"]] == [41, 43, 47]


def test_tree_formats():
    _, text, _ = call("tree", "--to-k", "3")
    assert text == "(5,7)@2\n  (11,13)@3\n  (17,19)@3\n  (29,31)@3\n"
    _, dot, _ = call("tree", "--to-k", "4", "--format", "dot")
    assert dot.startswith("digraph") and '[label="(191,193)@4"]' in dot
    assert dot.count("->") == 3 + 15


def test_distribution_summary_and_per_subset():
    row = rows_json("distribution", "--k", "5")["rows"][0]
    assert row["pp_holds"] and row["twin_holds"] and row["min_twin_bound"] == 9
    per = rows_json("distribution", "--k", "5", "--per-subset")["rows"]
    assert len(per) == 11 and sum(r["count_twin"] for r in per) == 135


def test_find_twin_above():
    row = rows_json("find-twin-above", "--n", "100")["rows"][0]
    assert row["p_k"] > 100 and (row["witness_low"], row["witness_high"]) == (179, 181)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["bogus"], EXIT_USAGE),
        (["counts"], EXIT_USAGE),
        (["counts", "--k", "0"], EXIT_USAGE),
        (["counts", "--k", "5", "--precision", "40"], EXIT_USAGE),
        (["counts", "--k", "30"], EXIT_RANGE),
        (["generate", "--k", "12"], EXIT_RANGE),
        (["bounds", "--l", "3"], EXIT_RANGE),
        (["bounds", "--l", "8", "--sieve-ceiling", "1000"], EXIT_RANGE),
        (["tree", "--to-k", "1"], EXIT_USAGE),
        (["generate", "--k", "1"], EXIT_USAGE),
    ],
)
def test_exit_codes(argv, code, capsys):
    got, out, err = call(*argv)
    assert got == code
    assert out == "" and err
    capsys.readouterr()


def test_internal_failure_exit_code(monkeypatch):
    from twinwheel import cli

    def boom(args):
        raise AssertionError("broken invariant")

    monkeypatch.setitem(cli.COMMANDS, "counts", boom)
    code, out, err = call("counts", "--k", "3")
    assert code == EXIT_INTERNAL and "broken invariant" in err and out == ""


def test_deterministic_with_cache(tmp_path):
    argv = ("table", "--id", "bounds", "--cache-dir", str(tmp_path), "--format", "json")
    assert call(*argv)[1] == call(*argv)[1]


def test_render_cell():
    assert render_cell(Fraction(1, 3)) == "0.333"
    assert render_cell(Fraction(5, 16)) == "0.312"  # half-even
    assert render_cell(Fraction(1, 10**8)) == "0.00000001"
    assert render_cell(10**30) == str(10**30)
    assert render_cell(True) == "true" and render_cell(None) == ""
    assert to_decimal(2 / 3, 2) == to_decimal(Fraction(2, 3), 2)


def test_output_record_columns_union():
    rec = OutputRecord("x", [{"a": 1}, {"b": "q\"t"}])
    assert rec.to_csv() == '"schema_version","a","b"\n"1",1,\n"1",,"q""t"\n'

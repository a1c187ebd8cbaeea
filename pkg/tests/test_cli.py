import csv
import io
import json
import subprocess
import sys

import pytest

from partindex import checks
from partindex.cli import build_table, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_pass_exit_zero(capsys):
    code, out, _ = run(capsys, "check", "thm1", "--max-n", "20")
    assert code == 0 and out.startswith("[PASS] thm1")


def test_check_fail_exit_one(capsys, monkeypatch):
    monkeypatch.setattr(checks, "check_thm1", lambda n: _failing())
    code, out, _ = run(capsys, "check", "thm1", "--max-n", "3")
    assert code == 1 and "[FAIL]" in out


def _failing():
    r = checks.CheckReport("thm1", {"max_n": 3})
    r.fail(n=2, a=1, b=2)
    return r


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "nope"])
    assert exc.value.code == 2
    assert run(capsys, "scan", "nonneg", "--m", "2")[0] == 2
    assert run(capsys, "check", "cor")[0] == 2
    assert run(capsys, "check", "cor", "--class", "Od", "--d", "0")[0] == 2
    assert run(capsys, "meander", "--top", "3,x", "--bottom", "3")[0] == 2
    assert run(capsys, "meander", "--top", "3", "--bottom", "2")[0] == 2
    assert run(capsys, "expand", "(q;q")[0] == 2


def test_json_flag_either_side(capsys):
    _, a, _ = run(capsys, "--json", "check", "thm1", "--max-n", "5")
    _, b, _ = run(capsys, "check", "thm1", "--max-n", "5", "--json")
    assert json.loads(a) == json.loads(b)
    assert json.loads(a)["status"] == "PASS"


def test_check_cor_and_cnk(capsys):
    assert run(capsys, "check", "cor", "--class", "Od", "--d", "2", "--max-n", "20")[0] == 0
    code, out, _ = run(capsys, "check", "thm-cnk", "--max-q", "6")
    assert code == 0 and "max_q=6" in out
    assert run(capsys, "check", "thm3", "--max-k", "4")[0] == 0


def test_scan_commands(capsys):
    code, out, _ = run(capsys, "scan", "nonneg", "--m", "4", "--max-n", "200")
    assert code == 0 and "NON-FALSIFICATION" in out
    code, out, _ = run(capsys, "scan", "monotone", "--m", "4", "--max-n", "400")
    assert code == 0 and "candidate N(4) = 82" in out


def test_meander_command(capsys, tmp_path):
    svg = tmp_path / "fig.svg"
    tex = tmp_path / "fig.tex"
    code, out, _ = run(capsys, "--json", "meander", "--top", "3|2|1|1", "--bottom", "4,3", "--render", str(svg))
    info = json.loads(out)
    assert code == 0
    assert (info["cycles"], info["paths"], info["index"]) == (0, 2, 1)
    assert info["top_edges"] == [[1, 3], [4, 5]]
    assert svg.read_text().count('class="vertex"') == 7
    run(capsys, "meander", "--top", "2", "--bottom", "2", "--render", str(tex))
    assert tex.read_text().startswith("\\begin{tikzpicture}")


def test_table_eind_csv(capsys):
    code, out, _ = run(capsys, "table", "eind", "--max-n", "10", "--format", "csv", "--out", "-")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 11
    assert list(rows[0]) == ["n", "eind", "signed", "abs"]
    assert rows[1] == {"n": "1", "eind": "-1", "signed": "1", "abs": "1"}


def test_table_census_json_n0(capsys):
    _, out, _ = run(capsys, "table", "census", "--class", "P", "--max-n", "0", "--format", "json")
    data = json.loads(out)
    assert len(data) == 1 and data[0]["o"] == 1 and data[0]["e"] == 0


def test_table_cnk_rows(tmp_path, capsys):
    path = tmp_path / "cnk.csv"
    assert run(capsys, "table", "cnk", "--max-k", "3", "--out", str(path))[0] == 0
    rows = list(csv.DictReader(path.open()))
    assert {int(r["n"]) for r in rows} == set(range(10))


def test_table_output_is_byte_identical():
    a = build_table("census", 15, "csv", "D")
    b = build_table("census", 15, "csv", "D", jobs=2)
    assert a == b


def test_unwritable_destination(capsys):
    code, _, err = run(capsys, "table", "eind", "--max-n", "2", "--out", "/nonexistent-dir/x.csv")
    assert code == 1 and "/nonexistent-dir/x.csv" in err


def test_expand_command(capsys):
    code, out, _ = run(capsys, "expand", "1/(q;q)", "--max-n", "5")
    assert code == 0 and json.loads(out) == {"order": 5, "coeffs": ["1", "1", "2", "3", "5", "7"]}


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "partindex.cli", "check", "thm1", "--max-n", "4"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and "[PASS]" in out.stdout

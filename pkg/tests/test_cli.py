import csv
import io
import subprocess
import sys

import pytest

from mincount import DNA
from mincount.cli import main
from mincount.picount import CSV_HEADER, pi_partition, result_row


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count(capsys):
    assert run(capsys, "count", "-w", "ACACAA", "-k", "16")[:2] == (0, "1043199 969659 1122932\n")
    assert run(capsys, "count", "-w", "TAAAAA", "-k", "31")[:2] == (0, "1 1 1\n")


def test_bounds(capsys):
    assert run(capsys, "bounds", "-w", "ACACAC", "-k", "16")[:2] == (0, "5247521 11534336\n")


def test_exit_codes(capsys):
    assert run(capsys, "count", "-w", "ACACAA", "-k", "5")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["count", "-k", "5"])
    assert exc.value.code == 1
    assert run(capsys, "count", "-w", "ACNA", "-k", "5")[0] == 2
    assert run(capsys, "oracle", "-m", "4", "-k", "15")[0] == 3
    assert run(capsys, "compare", "/nonexistent.csv")[0] == 2


def test_table_matches_library(capsys, tmp_path):
    out = tmp_path / "t.csv"
    assert run(capsys, "table", "-m", "3", "-k", "7", "--out", str(out))[0] == 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in pi_partition(DNA, 3, 7, "both"):
        row = result_row(r)
        w.writerow([row[c] for c in CSV_HEADER])
    assert out.read_text() == buf.getvalue()
    out2 = tmp_path / "t2.csv"
    run(capsys, "table", "-m", "3", "-k", "7", "--threads", "2", "--out", str(out2))
    assert out2.read_bytes() == out.read_bytes()


def test_json_lines(capsys):
    code, out, _ = run(capsys, "table", "-m", "1", "-k", "3", "--format", "json-lines")
    assert code == 0 and out.count("\n") == 4 and '"pi_exact": "' in out


def test_oracle_agrees_with_table(capsys):
    _, brute, _ = run(capsys, "oracle", "-m", "2", "-k", "6")
    _, dp, _ = run(capsys, "table", "-m", "2", "-k", "6", "--mode", "exact")
    brute_rows = list(csv.DictReader(io.StringIO(brute)))
    dp_rows = list(csv.DictReader(io.StringIO(dp)))
    assert all(r["source"] == "brute" for r in brute_rows)
    assert [r["pi_exact"] for r in brute_rows] == [r["pi_exact"] for r in dp_rows]
    assert [r["norm_y"] for r in brute_rows] == [r["norm_y"] for r in dp_rows]


def test_inspect(capsys):
    code, out, _ = run(capsys, "inspect", "-w", "ACACAA")
    assert code == 0
    assert "i_max = 6" in out and "beta_max = min(k - m, 1)" in out
    assert " 6 A   =  >  <  >  <  =" in out


def test_scan_and_compare(capsys, tmp_path):
    fa = tmp_path / "x.fa"
    fa.write_text(">r\nAAACT\n")
    emp = tmp_path / "emp.csv"
    assert run(capsys, "scan", str(fa), "-k", "3", "-m", "2", "--out", str(emp))[0] == 0
    assert "# total_kmers=3" in emp.read_text()
    code, out, _ = run(capsys, "compare", str(emp))
    lines = out.splitlines()
    assert code == 0 and lines[0] == "minimizer,rank_phi,pi_hat,pi_exact,log4_f_hat,log4_f_theory"
    assert [ln.split(",")[:4] for ln in lines[1:]] == [["AA", "15", "2", "7"], ["AC", "14", "1", "7"]]


def test_scan_missing_file(capsys):
    assert run(capsys, "scan", "/nonexistent.fa", "-k", "3", "-m", "2")[0] == 2


def test_regress(capsys):
    code, out, _ = run(capsys, "regress", "-w", "ACACAC", "--k-from", "6", "--k-to", "40")
    assert code == 0 and out.startswith("slope ")
    assert float(out.split()[5]) > 0.99


def test_custom_alphabet(capsys):
    code, out, _ = run(capsys, "count", "--alphabet", "CATG", "--complement", "none", "-w", "GAA", "-k", "5")
    assert (code, out) == (0, "1 1 1\n")


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "mincount.cli", "count", "-w", "ACACAC", "-k", "16"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "6337559 5247521 11534336\n"

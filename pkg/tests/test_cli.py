import io
import subprocess
import sys

import pytest

from conftest import TAU_ROWS, find_inexact_swap, make_example
from rmclass import cli
from rmclass.conjclasses import affine_cells, exhaustive_cells, export_cells, import_cells
from rmclass.group import element_to_text


def run_cli(*args):
    """Invoke the entry point in-process; argparse-level failures also
    surface as an exit code."""
    try:
        return cli.main(list(args))
    except SystemExit as e:
        return e.code


def out_dict(captured):
    """Parse the key=value tokens of the last nonempty output line."""
    line = [ln for ln in captured.strip().splitlines() if ln][-1]
    return dict(tok.split("=", 1) for tok in line.split())


def test_count_basic(capsys):
    assert run_cli("count", "--n", "3", "--s", "3", "--k", "1") == 0
    d = out_dict(capsys.readouterr().out)
    assert d["n"] == "3" and d["s"] == "3" and d["k"] == "1"
    assert d["count"] == "3"
    assert d["provider"] == "canonical"
    assert int(d["cells"]) == len(affine_cells(3))
    assert float(d["elapsed"]) >= 0.0


def test_count_negative_k(capsys):
    assert run_cli("count", "--n", "2", "--s", "2", "--k", "-1") == 0
    assert out_dict(capsys.readouterr().out)["count"] == "5"


def test_count_providers_agree(capsys, tmp_path):
    path = tmp_path / "cells.txt"
    export_cells(affine_cells(3), path)
    results = []
    for extra in (["--provider", "canonical"],
                  ["--provider", "exhaustive"],
                  ["--provider", "import", "--file", str(path)],
                  ["--threads", "2"]):
        assert run_cli("count", "--n", "3", "--s", "3", "--k", "-1", *extra) == 0
        results.append(out_dict(capsys.readouterr().out)["count"])
    assert results == ["10"] * 4


def test_count_usage_errors(capsys):
    assert run_cli("count", "--n", "3", "--s", "4", "--k", "1") == 2
    assert run_cli("count", "--n", "3", "--s", "2", "--k", "2") == 2
    assert run_cli("count", "--n", "11", "--s", "3", "--k", "1") == 2
    assert run_cli("count", "--n", "3", "--s", "3") == 2  # missing --k
    assert run_cli("count", "--n", "5", "--s", "5", "--k", "1",
                   "--provider", "exhaustive") == 2  # too large to enumerate
    assert run_cli("count", "--n", "3", "--s", "3", "--k", "1",
                   "--provider", "import") == 2  # no --file
    assert run_cli("count", "--n", "3", "--s", "3", "--k", "1",
                   "--provider", "import", "--file", "/no/such/file") == 2
    capsys.readouterr()


def test_count_import_wrong_n(capsys, tmp_path):
    path = tmp_path / "cells.txt"
    export_cells(affine_cells(2), path)
    assert run_cli("count", "--n", "3", "--s", "3", "--k", "1",
                   "--provider", "import", "--file", str(path)) == 2
    capsys.readouterr()


def test_verify_small(capsys):
    assert run_cli("verify", "--max-n", "4") == 0
    out = capsys.readouterr().out
    checks = [ln for ln in out.splitlines() if ln.startswith("check ")]
    assert len(checks) == 2
    assert all("status=PASS" in ln for ln in checks)
    assert "table=I n=3 k=1 s=3 expected=3 got=3" in checks[0]
    assert out.strip().splitlines()[-1] == "summary total=2 pass=2 fail=0"


def test_verify_table_filter(capsys):
    assert run_cli("verify", "--max-n", "5", "--table", "I") == 0
    out = capsys.readouterr().out
    assert sum(1 for ln in out.splitlines() if ln.startswith("check ")) == 3
    assert out.strip().splitlines()[-1] == "summary total=3 pass=3 fail=0"


def test_verify_no_matching_rows(capsys):
    assert run_cli("verify", "--max-n", "2") == 2  # nothing to check
    capsys.readouterr()


def test_verify_mismatch_exits_1(capsys, tmp_path):
    oracle = tmp_path / "wrong.txt"
    oracle.write_text("I 3 1 3 4\n")
    assert run_cli("verify", "--max-n", "3", "--oracle-file", str(oracle)) == 1
    out = capsys.readouterr().out
    assert "expected=4 got=3 status=FAIL" in out
    assert out.strip().splitlines()[-1] == "summary total=1 pass=0 fail=1"


def test_verify_oracle_file_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("I 3 1\n")
    assert run_cli("verify", "--max-n", "3", "--oracle-file", str(bad)) == 2
    conflicting = tmp_path / "conflict.txt"
    conflicting.write_text("I 3 1 3 3\nIII 3 1 3 4\n")
    assert run_cli("verify", "--max-n", "3", "--oracle-file", str(conflicting)) == 2
    assert run_cli("verify", "--max-n", "3", "--oracle-file", "/no/such/file") == 2
    assert run_cli("verify", "--max-n", "3", "--table", "XI") == 2
    capsys.readouterr()


def test_classes_roundtrip(capsys, tmp_path):
    out = tmp_path / "canonical.txt"
    assert run_cli("classes", "--n", "3", "--file", str(out)) == 0
    assert import_cells(out) == affine_cells(3)
    out2 = tmp_path / "exhaustive.txt"
    assert run_cli("classes", "--n", "3", "--provider", "exhaustive",
                   "--file", str(out2)) == 0
    assert import_cells(out2) == exhaustive_cells(3)
    capsys.readouterr()


def test_classes_usage_errors(capsys, tmp_path):
    assert run_cli("classes", "--n", "3") == 2  # no output file
    path = tmp_path / "cells.txt"
    export_cells(affine_cells(3), path)
    assert run_cli("classes", "--n", "3", "--provider", "import",
                   "--file", str(path)) == 2
    capsys.readouterr()


def test_tau_from_file(capsys, tmp_path):
    path = tmp_path / "element.txt"
    path.write_text(element_to_text(make_example()))
    assert run_cli("tau", "--s", "3", "--k", "-1", "--file", str(path)) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows == TAU_ROWS


def test_tau_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(element_to_text(make_example())))
    assert run_cli("tau", "--s", "2", "--k", "0") == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert len(rows) == 6 and all(len(r) == 6 for r in rows)


def test_tau_rejects_singular_element(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("2\n11\n11\n00\n"))
    assert run_cli("tau", "--s", "2", "--k", "-1") == 2
    monkeypatch.setattr(sys, "stdin", io.StringIO("not an element"))
    assert run_cli("tau", "--s", "2", "--k", "-1") == 2
    capsys.readouterr()


def test_internal_invariant_failure_exits_3(capsys, tmp_path):
    tampered, s, k = find_inexact_swap(3, affine_cells(3))
    path = tmp_path / "tampered.txt"
    export_cells(tampered, path)
    assert run_cli("count", "--n", "3", "--s", str(s), "--k", str(k),
                   "--provider", "import", "--file", str(path)) == 3
    capsys.readouterr()


def test_unknown_subcommand():
    assert run_cli("frobnicate") == 2
    assert run_cli() == 2


def test_load_oracle_packaged():
    table = cli.load_oracle()
    assert len(table.entries) == 143
    assert table.value(3, 1, 3) == 3
    assert table.value(7, 1, 7) == 63379147320777408548
    with pytest.raises(KeyError):
        table.value(3, 0, 0)


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "rmclass", "count", "--n", "2", "--s", "2",
         "--k", "-1"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "count=5" in proc.stdout
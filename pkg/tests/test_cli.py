import io
import subprocess
import sys
from pathlib import Path

import pytest

from celtic_bracket.cli import RunConfig, UsageError, main

DATA = Path(__file__).parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_bracket_loop():
    assert run("bracket", "--pd", str(DATA / "loop.pd")) == (0, "x\n", "")


def test_bracket_four_foil():
    assert run("bracket", "--pd", str(DATA / "foil4.pd"))[1] == "x^4+4*x^3+7*x^2+4*x\n"


def test_bracket_malformed():
    code, out, err = run("bracket", "--pd", str(DATA / "malformed.pd"))
    assert code == 2 and out == ""
    assert "line 2" in err


def test_bracket_missing_file(tmp_path):
    code, _, err = run("bracket", "--pd", str(tmp_path / "nope.pd"))
    assert code == 2 and "error" in err


def test_bracket_too_many_crossings(tmp_path):
    from celtic_bracket.shadow_core import format_pd, make_foil

    p = tmp_path / "big.pd"
    p.write_text(format_pd(make_foil(31)))
    code, _, err = run("bracket", "--pd", str(p))
    assert code == 2 and "30" in err


@pytest.mark.parametrize("method", ["statesum", "celtic-matrix", "gf", "tangle"])
def test_celtic_methods_agree(method):
    assert run("celtic", "--n", "3", "--method", method)[1] == "x^6+7*x^5+23*x^4+42*x^3+40*x^2+15*x\n"


def test_celtic_guards():
    assert run("celtic", "--n", "9", "--method", "statesum")[0] == 2
    assert run("celtic", "--n", "13")[0] == 2
    assert run("celtic", "--n", "0")[0] == 2


def test_celtic_dump_matrix():
    code, out, _ = run("celtic", "--n", "1", "--dump-matrix")
    assert code == 0
    assert out.splitlines()[-1].startswith("perm: 1->1")


def test_table_csv_two_rows():
    out = run("table", "--n-max", "2")[1]
    assert out.splitlines() == ["1,1,1", "1,2,1", "2,1,4", "2,2,7", "2,3,4", "2,4,1"]


@pytest.mark.parametrize("method", ["celtic-matrix", "gf", "tangle"])
def test_table_golden(method):
    out = run("table", "--n-max", "7", "--method", method, "--format", "csv")[1]
    assert out == (DATA / "table1.golden").read_text()


def test_table_statesum_matches_golden_prefix():
    out = run("table", "--n-max", "4", "--method", "statesum")[1]
    golden = [l for l in (DATA / "table1.golden").read_text().splitlines() if int(l.split(",")[0]) <= 4]
    assert out.splitlines() == golden


def test_table_empty():
    assert run("table", "--n-max", "0") == (0, "", "")


def test_table_guards():
    assert run("table", "--n-max", "13")[0] == 2
    assert run("table", "--n-max", "7", "--method", "statesum")[0] == 2
    assert run("table", "--n-max", "-1")[0] == 2


def test_table_markdown():
    lines = run("table", "--n-max", "2", "--format", "markdown")[1].splitlines()
    assert lines[0] == "| n\\k | 0 | 1 | 2 | 3 | 4 |"
    assert lines[2] == "| 1 | 0 | 1 | 1 |  |  |"
    assert lines[3] == "| 2 | 0 | 4 | 7 | 4 | 1 |"


def test_table_plain():
    assert run("table", "--n-max", "1", "--format", "plain")[1] == "1: x^2+x\n"


def test_barriers_csv():
    out = run("barriers", "--n", "3")[1]
    assert out.splitlines() == ["1,15", "2,40", "3,42", "4,23", "5,7", "6,1"]


def test_barriers_orbits():
    out = run("barriers", "--n", "3", "--components", "1", "--orbits")[1]
    assert out.splitlines() == ["1,15", "orbits k=1: [1, 2, 2, 2, 4, 4]"]


def test_barriers_markdown():
    assert run("barriers", "--n", "2", "--format", "markdown")[1] == "| 2 | 0 | 4 | 7 | 4 | 1 |\n"


def test_barriers_guard():
    assert run("barriers", "--n", "9")[0] == 2


def test_verify_default():
    code, out, err = run("verify")
    assert code == 0 and err == ""
    lines = out.splitlines()
    checks = [l for l in lines if l.startswith(("PASS", "FAIL"))]
    assert len(checks) >= 12
    assert all(l.startswith("PASS") for l in checks)
    assert lines[-1] == f"{len(checks)}/{len(checks)} checks passed"


def test_verify_orbits_n3():
    code, out, _ = run("verify", "--n", "3", "--orbits")
    assert code == 0
    assert "k=1: [1, 2, 2, 2, 4, 4]" in out


def test_verify_fault_injection():
    code, out, err = run("verify", "--n", "2", "--inject-fault")
    assert code == 1
    assert "FAIL" in out
    assert err.strip() == "verify: failed check: tangle = celtic-matrix (n=1..12)"


def test_verify_n_range():
    assert run("verify", "--n", "1")[0] == 2
    assert run("verify", "--n", "9")[0] == 2


def test_unknown_method_rejected():
    with pytest.raises(UsageError):
        RunConfig(command="celtic", n=1, method="magic")
    with pytest.raises(SystemExit):
        run("celtic", "--n", "1", "--method", "magic")


def test_deterministic_output():
    assert run("table", "--n-max", "5", "--method", "tangle") == run("table", "--n-max", "5", "--method", "tangle")
    assert run("verify", "--n", "3") == run("verify", "--n", "3")


def test_exit_zero_iff_empty_stderr():
    for argv in (["table", "--n-max", "3"], ["celtic", "--n", "13"], ["verify", "--n", "2"]):
        code, _, err = run(*argv)
        assert (code == 0) == (err == "")


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "celtic_bracket", "celtic", "--n", "2"],
        capture_output=True, text=True, check=True,
    )
    assert res.stdout == "x^4+4*x^3+7*x^2+4*x\n"

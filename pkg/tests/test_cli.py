import json
import subprocess
import sys

import pytest

from quatcode import __version__
from quatcode.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def strip_timing(obj):
    """Drop wall-clock fields so two reports can be compared."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in ("elapsed", "elapsed_seconds")}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def test_build_small_mds_code(capsys):
    rc, out, _ = run(capsys, "build", "--m", "3", "--u", "2")
    assert rc == 0
    js = json.loads(out)
    assert js["parameters"] == [9, 3, 7] == js["expected"]
    assert js["mds"] and js["reversible"]
    assert js["min_distance"]["method"] == "exhaustive"


def test_build_large_falls_back_to_bounds(capsys):
    rc, out, _ = run(capsys, "build", "--m", "6", "--u", "20")
    assert rc == 0
    js = json.loads(out)
    assert js["min_distance"]["method"] == "analytic"
    assert js["parameters"] == [65, 39, 27]


@pytest.mark.parametrize("argv", [
    ["build", "--m", "0", "--u", "1"],
    ["build", "--m", "2", "--u", "3"],
    ["quaternary", "--h", "5"],
    ["designs", "--h", "2", "--t", "20"],
])
def test_usage_errors_exit_2(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 2 and "error" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["build", "--m", "x", "--u", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["group", "--h", "2", "--threads", "0"])
    assert exc.value.code == 2


def test_resource_limit_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("QUATCODE_BUDGET", "1000")
    rc, _, err = run(capsys, "designs", "--h", "3")
    assert rc == 3 and "resource limit" in err


def test_quaternary_report(capsys):
    rc, out, _ = run(capsys, "quaternary", "--h", "2")
    assert rc == 0
    js = json.loads(out)
    assert js["quaternary_code"]["enumerator"] == "1 + 204z^12 + 51z^16"
    assert js["quaternary_code"]["parameters"] == [17, 4, 12]
    assert js["subfield_code"]["parameters"] == [17, 13, 4]
    assert js["delsarte"]["pass"]


def test_quaternary_h1_records_discrepancy(capsys):
    rc, out, _ = run(capsys, "quaternary", "--h", "1")
    js = json.loads(out)
    assert rc == 0
    assert js["quaternary_code"]["enumerator"] == "1 + 15z^4"
    assert "Singleton" in js["quaternary_code"]["note"]


def test_quaternary_h4_skips_enumeration_by_default(capsys):
    rc, out, _ = run(capsys, "quaternary", "--h", "4")
    js = json.loads(out)
    assert rc == 0
    assert js["quaternary_code"]["weight_distribution"] == "skipped (budget)"


def test_quaternary_csv(capsys):
    rc, out, _ = run(capsys, "quaternary", "--h", "2", "--format", "csv")
    assert rc == 0
    assert out.splitlines() == ["weight,count", "0,1", "12,204", "16,51"]


def test_designs_json_and_csv(capsys, tmp_path):
    path = tmp_path / "d.json"
    rc, _, _ = run(capsys, "designs", "--h", "2", "-o", str(path), "--emit-blocks")
    assert rc == 0
    js = json.loads(path.read_text())
    by_k = {d["k"]: d for d in js["designs"]}
    assert by_k[12]["lambda"] == "22" and len(by_k[12]["blocks"]) == 68
    assert js["assmus_mattson"]["condition_holds"] is False
    rc, out, _ = run(capsys, "designs", "--h", "2", "--format", "csv")
    assert out.splitlines()[0] == "v,k,t,b,lambda"
    assert "17,12,3,68,22" in out.splitlines()


def test_lemmas_command(capsys):
    rc, out, _ = run(capsys, "lemmas", "--h-max", "5")
    assert rc == 0
    assert json.loads(out)["pass"]


def test_group_is_reproducible(capsys):
    rc1, out1, _ = run(capsys, "group", "--h", "2", "--trials", "20", "--seed", "4")
    rc2, out2, _ = run(capsys, "group", "--h", "2", "--trials", "20", "--seed", "4")
    assert rc1 == rc2 == 0
    assert strip_timing(json.loads(out1)) == strip_timing(json.loads(out2))


def test_acceptance_subset(capsys):
    rc, out, err = run(capsys, "acceptance", "--only", "1", "4", "7")
    assert rc == 0, err
    assert err.count("[PASS]") == 3
    assert [c["status"] for c in json.loads(out)["criteria"]] == ["PASS"] * 3


def test_module_entry_point_and_version():
    res = subprocess.run([sys.executable, "-m", "quatcode", "--version"], capture_output=True, text=True)
    assert res.returncode == 0
    assert __version__ in res.stdout

import json
import shutil
import subprocess
import sys

import pytest

from kmarcs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = json.loads(capsys.readouterr().out)
    return code, out


def test_field(capsys):
    code, out = run(capsys, "field", "--m", "5", "--primitive", "--vdd")
    assert code == 0 and out["results"]["modulus"] == "0x25"


def test_field_usage_error(capsys):
    code, out = run(capsys, "field", "--m", "2", "--vdd")
    assert code == 2 and out["results"]["error"] == "usage"


def test_construct_new(capsys, tmp_path):
    path = tmp_path / "a.json"
    code, out = run(capsys, "construct", "new", "--h", "4", "--alpha", "0x2", "--beta", "0x4", "--a", "0", "--b", "0", "--out", str(path))
    r = out["results"]
    assert code == 0 and r["t"] == 4 and r["nucleus"] == ["0x1", "0x0", "0x0"]
    arc = json.loads(path.read_text())
    assert arc["t"] == 4 and len(arc["points"]) == 20 and len(arc["t_secants"]) == 5


def test_construct_vdd(capsys):
    code, out = run(capsys, "construct", "vdd", "--h", "5", "--c", "0")
    assert code == 0 and out["results"]["t"] == 8
    assert out["field"]["modulus"] == "0x25"


def test_construct_lift_and_analyze_round_trip(capsys, tmp_path):
    path = tmp_path / "lift.json"
    code, built = run(capsys, "construct", "lift", "--club", "hminus2", "--h", "4", "--out", str(path))
    assert code == 0 and built["results"]["t"] == 4
    code, an = run(capsys, "analyze", str(path))
    assert code == 0
    for key in ("t", "size", "nucleus", "t_secants", "spectrum"):
        assert an["results"][key] == built["results"][key]
    assert ["0x0", "0x0", "0x1"] in an["results"]["translation_lines"]
    assert an["results"]["direction_clubs"][0]["head_weight"] == 2


def test_analyze_vdd(capsys, tmp_path):
    path = tmp_path / "vdd.json"
    run(capsys, "construct", "vdd", "--h", "4", "--out", str(path))
    code, out = run(capsys, "analyze", str(path))
    r = out["results"]
    assert r["translation_lines"] == [["0x0", "0x1", "0x2"]]
    props = {tuple(p["ell0"]): p for p in r["properties"]}
    assert props[("0x0", "0x0", "0x1")]["property_II"]


def test_analyze_non_translation(capsys, tmp_path):
    path = tmp_path / "nt.json"
    run(capsys, "construct", "new", "--h", "4", "--out", str(path))
    code, out = run(capsys, "analyze", str(path))
    r = out["results"]
    assert r["translation_lines"] == []
    props = {tuple(p["ell0"]): p for p in r["properties"]}
    assert props[("0x0", "0x0", "0x1")]["property_II"]


def test_analyze_hyperoval(capsys, tmp_path):
    path = tmp_path / "ho.json"
    run(capsys, "construct", "hyperoval", "--h", "3", "--n", "1", "--out", str(path))
    code, out = run(capsys, "analyze", "--props", str(path))
    assert code == 0 and out["results"]["t"] == 2 and out["results"]["properties"] is None


def test_analyze_malformed(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, out = run(capsys, "analyze", str(path))
    assert code == 2


def test_analyze_failing_arc(capsys, tmp_path):
    path = tmp_path / "a.json"
    run(capsys, "construct", "new", "--h", "4", "--out", str(path))
    d = json.loads(path.read_text())
    d["points"] = d["points"][:-1]
    path.write_text(json.dumps(d))
    code, out = run(capsys, "analyze", str(path))
    assert code == 3 and out["results"]["size"] == 1


def test_bad_params_exit_2(capsys):
    code, _ = run(capsys, "construct", "new", "--h", "4", "--beta", "0x1")
    assert code == 2
    code, _ = run(capsys, "construct", "new", "--h", "4", "--alpha", "0x99")
    assert code == 2


def test_equiv(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "construct", "new", "--h", "4", "--out", str(a))
    run(capsys, "construct", "new", "--h", "4", "--a", "1", "--b", "1", "--out", str(b))
    code, out = run(capsys, "equiv", str(a), str(b))
    assert code == 0 and out["results"]["equivalent"]


def test_census_clubs(capsys):
    code, out = run(capsys, "census", "clubs", "--q0", "2", "--h", "3")
    assert code == 0 and out["results"]["clubs"] == 126


def test_census_bounds_exit_4(capsys):
    code, out = run(capsys, "census", "clubs", "--h", "6")
    assert code == 4 and out["results"]["error"] == "bounds"


def test_census_triads(capsys):
    code, out = run(capsys, "census", "triads", "--q", "8")
    assert out["results"]["triads"] == 28


def test_census_transliff_threads(capsys, monkeypatch):
    monkeypatch.setenv("KMARC_THREADS", "2")
    code, out = run(capsys, "census", "transliff", "--q", "16")
    assert code == 0 and out["results"]["diagonal"]


def test_bad_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("KMARC_THREADS", "many")
    code, _ = run(capsys, "field", "--m", "4")
    assert code == 2


def test_trace_sys(capsys):
    code, out = run(capsys, "trace-sys", "--m", "4", "--k", "0x1", "--c", "0", "--solve", "--brute")
    r = out["results"]
    assert r["count"] == r["brute_count"] == 8 == len(r["solutions"])


def test_modulus_override(capsys):
    code, out = run(capsys, "construct", "km", "--h", "4", "--i", "2", "--modulus", "0x19")
    assert code == 0 and out["field"]["modulus"] == "0x19" and out["results"]["t"] == 4


def test_construct_gw_and_triad(capsys):
    code, out = run(capsys, "construct", "gw", "--r", "2", "--s", "2", "--variant", "out")
    assert code == 0 and out["results"]["t"] == 8
    code, out = run(capsys, "construct", "triad", "--h", "4")
    assert out["results"]["t"] == 8


def test_reproducible_output(capsys):
    _, a = run(capsys, "construct", "vdd", "--h", "4")
    _, b = run(capsys, "construct", "vdd", "--h", "4")
    a.pop("timing_s"), b.pop("timing_s")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_argparse_error_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["construct", "nosuch"])
    assert e.value.code == 2


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "kmarcs", "field", "--m", "4"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["results"]["modulus"] == "0x13"


@pytest.mark.skipif(shutil.which("kmarcs") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["kmarcs", "census", "clubs", "--h", "7"], capture_output=True, text=True)
    assert p.returncode == 4

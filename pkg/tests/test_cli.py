import json
import subprocess
import sys

from isosing import cli
from isosing.polyring import VarTable, parse_poly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    for name in cli.REGISTRY:
        assert name in out


def test_unknown_check_is_a_usage_error(capsys):
    code, _, err = run(capsys, "verify", "no-such-check")
    assert code == 2
    assert "no-such-check" in err


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_json_schema(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "coulomb-h23", "hilbert-yogh", "--format", "json", "--cache-dir", str(tmp_path))
    assert code == 0
    doc = json.loads(out)
    assert set(doc) >= {"version", "checks", "summary"}
    names = [c["name"] for c in doc["checks"]]
    assert names == ["coulomb-h23", "hilbert-yogh"]
    for c in doc["checks"]:
        assert set(c) >= {"name", "status", "seconds", "detail"}
        assert c["status"] == "PASS"
    hil = doc["checks"][1]
    assert hil["data"]["numerator"] == "1 + 4*t^4 + 4*t^6 + 4*t^8 + t^12"
    assert "corpus_sha256" in hil["artifacts"]


def test_deep_checks_skipped_by_default(capsys):
    code, out, _ = run(capsys, "verify", "all", "--deep=false", "--format", "json")
    doc = json.loads(out)
    status = {c["name"]: c["status"] for c in doc["checks"]}
    assert status["isolatedness-yogh"] == "SKIPPED"
    assert status["coulomb-h23-embedding"] == "SKIPPED"
    assert code == 0


def test_tangent_cone_family(capsys):
    code, out, _ = run(capsys, "verify", "tangent-cone", "--family", "yd", "--dmax", "9", "--format", "json")
    assert code == 0
    (check,) = json.loads(out)["checks"]
    assert check["name"] == "tangent-cone-yd" and check["status"] == "PASS"


def test_budget_exhaustion_is_inconclusive(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "dimension-yogh", "--budget", "5", "--format", "json", "--cache-dir", str(tmp_path))
    (check,) = json.loads(out)["checks"]
    assert check["status"] == "INCONCLUSIVE"
    assert code == 0


def test_coulomb_gen(capsys, tmp_path):
    out_file = tmp_path / "rels.txt"
    code, out, _ = run(capsys, "coulomb", "gen", "--characters", "(1)", "--box", "1", "--out", str(out_file))
    assert code == 0
    lines = [l for l in out_file.read_text().splitlines() if not l.startswith("#")]
    R = VarTable.make(["x", "r_-1", "r_1"])
    assert len(lines) == 1
    rel = parse_poly(lines[0], R)
    assert rel in (parse_poly("r_1*r_-1 - x", R), parse_poly("x - r_1*r_-1", R))


def test_coulomb_gen_rejects_bad_characters(capsys):
    assert run(capsys, "coulomb", "gen", "--characters", "(0,0)")[0] == 2


def test_arrangement_analyze(capsys, tmp_path):
    f = tmp_path / "a3.txt"
    f.write_text("1 -1 0 0\n1 0 -1 0\n1 0 0 -1\n0 1 -1 0\n0 1 0 -1\n0 0 1 -1\n")
    code, out, _ = run(capsys, "arrangement", "analyze", str(f), "--profile", "rank2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rank2_profile"] == [2, 3]
    assert doc["hyperplanes"] == 6


def test_arrangement_missing_file(capsys, tmp_path):
    assert run(capsys, "arrangement", "analyze", str(tmp_path / "nope.txt"))[0] == 2


def test_cache_info_and_clear(capsys, tmp_path):
    run(capsys, "verify", "dimension-yogh", "--cache-dir", str(tmp_path))
    code, out, _ = run(capsys, "cache", "info", "--cache-dir", str(tmp_path))
    assert code == 0 and "cached bases" in out
    code, out, _ = run(capsys, "cache", "clear", "--cache-dir", str(tmp_path))
    assert code == 0
    assert not list(tmp_path.glob("*.gb"))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "isosing", "list"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "relations-g5" in proc.stdout

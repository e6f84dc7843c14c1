import contextlib
import io
import json
from pathlib import Path

from circlecolor.cli import main
from circlecolor.intervals import parse_instance

GOLDEN = Path(__file__).parent / "golden"
C5_FILE = str(GOLDEN / "c5.txt")


def run_cli(args, expect=0):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(args)
    assert code == expect, (args, code)
    return buf.getvalue()


def golden(name: str) -> str:
    return (GOLDEN / name).read_text()


def test_solve_human_golden():
    assert run_cli(["solve", C5_FILE, "--clique"]) == golden("solve.txt")


def test_solve_json_golden():
    out = run_cli(["solve", C5_FILE, "--json", "--no-timing", "--clique"])
    assert out == golden("solve.json")
    payload = json.loads(out)
    assert payload["chi"] == 3
    assert payload["chi_f"] == 2.5
    assert payload["omega"] == 2
    assert payload["schema_version"] == 1
    assert "timings" not in payload


def test_json_repeatable():
    a = run_cli(["solve", C5_FILE, "--json", "--no-timing"])
    b = run_cli(["solve", C5_FILE, "--json", "--no-timing"])
    assert a == b


def test_relax_golden():
    assert run_cli(["relax", C5_FILE, "--json", "--no-timing"]) == golden("relax.json")


def test_mwis_golden():
    assert run_cli(["mwis", C5_FILE, "--json"]) == golden("mwis.json")
    out = run_cli(["mwis", C5_FILE, "--weights", "1,1,1,1,1", "--json"])
    assert out == golden("mwis.json")


def test_stacks_golden():
    out = run_cli(["stacks", C5_FILE, "--height", "2", "--json", "--no-timing"])
    assert out == golden("stacks.json")


def test_gen_golden_and_trivial():
    assert run_cli(["gen", "-n", "5", "--seed", "7", "--count", "2"]) == golden("gen.txt")
    out = run_cli(["gen", "-n", "1", "--seed", "7"])
    assert out.strip().splitlines() == ["1", "1 2"]


def test_export_goldens():
    out = run_cli(["export", C5_FILE, "--formulation", "cg", "--format", "lp"])
    assert out == golden("export_cg.lp")
    assert out == golden("c5_cg.lp")
    assert run_cli(["export", C5_FILE, "--format", "dimacs"]) == golden("export.dimacs")


def test_export_mps_matches_writer_golden():
    out = run_cli(["export", C5_FILE, "--formulation", "cg", "--format", "mps"])
    assert out == golden("c5_cg.mps")


def test_export_to_file_writes_sidecar(tmp_path):
    target = tmp_path / "model.lp"
    run_cli(["export", C5_FILE, "--format", "lp", "-o", str(target)])
    assert target.read_text() == golden("c5_cg.lp")
    meta = json.loads((tmp_path / "model.lp.meta.json").read_text())
    assert meta["metadata"]["formulation"] == "CG"


def test_verify_golden():
    assert run_cli(["verify", "--n-max", "6", "--trials", "5", "--seed", "3"]) == golden("verify.txt")


def test_bench_csv_shape():
    out = run_cli(["bench", "--n", "3,4", "--samples", "4", "--seed", "2"])
    lines = out.strip().splitlines()
    assert lines[0] == "|V|,|E|,Ours,# ω = χ,# χ_f = χ,max. χ - χ_f"
    assert len(lines) == 3
    assert lines[1].startswith("3,") and lines[2].startswith("4,")


def test_solve_writes_certificate(tmp_path):
    cert = tmp_path / "cert.txt"
    run_cli(["solve", C5_FILE, "-o", str(cert)])
    lines = cert.read_text().strip().splitlines()
    assert len(lines) == 5
    assert all(len(ln.split()) == 3 for ln in lines)


def test_stacks_writes_plan(tmp_path):
    plan = tmp_path / "plan.txt"
    run_cli(["stacks", C5_FILE, "--height", "2", "-o", str(plan)])
    rows = [ln.split() for ln in plan.read_text().strip().splitlines()]
    assert sorted(int(v) for row in rows for v in row) == [1, 2, 3, 4, 5]


def test_gen_to_files(tmp_path):
    base = tmp_path / "inst.txt"
    run_cli(["gen", "-n", "4", "--seed", "9", "--count", "3", "-o", str(base)])
    for k in range(3):
        rep = parse_instance((tmp_path / f"inst.txt.{k:03d}").read_text())
        assert rep.n == 4


def test_exit_codes(tmp_path):
    run_cli(["nonsense"], expect=1)
    run_cli(["solve"], expect=1)
    missing = str(tmp_path / "missing.txt")
    run_cli(["solve", missing], expect=2)
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 2\n")
    run_cli(["solve", str(bad)], expect=2)


def test_env_tolerance_honored(monkeypatch):
    monkeypatch.setenv("CIRCLECOLOR_TOL", "1e-8")
    assert run_cli(["relax", C5_FILE]).strip() == "chi_f=2.5"

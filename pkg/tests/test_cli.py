"""Command-line interface: output, exit codes and deterministic JSON."""
import json
import subprocess
import sys


from grkit.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_measure_table(capsys):
    code, out, _ = run(["measure", "K:preproj(2)"], capsys)
    assert code == 0 and "{1,3,5}" in out and "21/32" in out


def test_measure_json(capsys):
    code, out, _ = run(["measure", "W:P_1", "-p", "3", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["measure"] == [1, 3, 4] and data["rational"] == "11/16"
    assert [s["dims"] for s in data["gr_submodules"]] == [[0, 1, 2]]


def test_measure_from_file(tmp_path, capsys):
    from grkit import models
    path = tmp_path / "m.json"
    path.write_text(models.build(models.parse_model_id("H(1)@(1:1)", 2), 2).to_json())
    code, out, _ = run(["measure", str(path), "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["measure"] == [1, 2]


def test_bad_input_exits_1(capsys):
    assert run(["measure", "Q_7"], capsys)[0] == 1
    assert run(["measure", "S_1", "-p", "4"], capsys)[0] == 1
    assert run(["verify", "no-such-suite"], capsys)[0] == 1


def test_universe_and_budget(tmp_path, capsys):
    code, out, _ = run(["universe", "--cap", "1"], capsys)
    assert code == 0 and out.startswith("3 classes")
    out_file = tmp_path / "u.json"
    code, _, _ = run(["universe", "--cap", "3", "--out", str(out_file)], capsys)
    assert code == 0 and len(json.loads(out_file.read_text())["classes"]) == 12
    code, out, _ = run(["universe", "--cap", "3", "--budget", "4"], capsys)
    assert code == 3 and "skipped" in out


def test_orbit(capsys):
    code, out, _ = run(["orbit", "0,1,1", "--format", "json", "--kmin", "-1", "--kmax", "1"], capsys)
    rows = json.loads(out)["orbit"]
    assert code == 0 and [r["vector"] for r in rows] == [[1, 2, 3], [0, 1, 1], [1, 1, 1]]


def test_verify_exit_codes(capsys):
    code, out, _ = run(["verify", "quasi-length-bound", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["counts"]["refuted"] == 0
    code, out, _ = run(["verify", "h-lower-gr", "--amax", "3", "--budget", "100"], capsys)
    assert code == 3


def test_verify_json_is_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        subprocess.run([sys.executable, "-m", "grkit", "verify", "kronecker-quasi-simples", "--format", "json",
                        "--seed", "3", "--out", str(path)], check=False)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0]

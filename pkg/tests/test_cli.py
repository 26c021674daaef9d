import json
import subprocess
import sys
from pathlib import Path

import pytest

from nielsen_lattice import __version__
from nielsen_lattice import matmath as mm
from nielsen_lattice.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def delta_group(n=3):
    g = [[int(i == j) for j in range(11)] for i in range(11)]
    g[10][10] = -1
    return {"mode": "lambday", "generators": [g], "cap": 100}


# ---------------------------------------------------------------- golden files


@pytest.mark.parametrize(
    "case", ["nonreal-delta", "nonreal-twist", "congruence-e8", "kum-translation", "central-extension"]
)
def test_reproduce_golden(case, capsys):
    code, out = run(capsys, "reproduce", case)
    assert code == 0
    assert out == json.loads((GOLDEN / f"{case}.json").read_text())


def test_reproduce_values(capsys):
    _, out = run(capsys, "reproduce", "nonreal-delta", "--n", "3")
    assert out["realizable"] is False and out["witness"]["square"] == -4 and out["witness"]["divisibility"] == 4
    _, out = run(capsys, "reproduce", "central-extension", "--k", "2", "--d", "4")
    assert out["result"] == "no section"
    _, out = run(capsys, "reproduce", "central-extension", "--k", "3", "--d", "6")
    assert out["result"] == "split"


# ---------------------------------------------------------------- exit codes


def test_check_exit_codes(tmp_path, capsys):
    setup = write(tmp_path, "setup.json", {"family": "k3n", "n": 3})
    group = write(tmp_path, "group.json", delta_group())
    code, out = run(capsys, "check", setup, group)
    assert code == 1 and out["witness"]["square"] == -4

    e8 = mm.block_diag(mm.identity(2), mm.scale(mm.identity(8), -1))
    ok = write(tmp_path, "ok.json", {"mode": "gamma2m", "generators": [[list(r) for r in e8]], "cap": 100})
    code, out = run(capsys, "check", setup, ok)
    assert code == 0 and out["realizable"] is True

    capped = write(tmp_path, "capped.json", {**delta_group(), "cap": 2})
    code, _ = run(capsys, "check", setup, capped)
    assert code == 3

    bad = write(tmp_path, "bad.json", {"mode": "direct", "generators": [[[2]]]})
    assert run(capsys, "check", setup, bad)[0] == 2
    assert run(capsys, "check", setup, str(tmp_path / "missing.json"))[0] == 2
    even = write(tmp_path, "even.json", {"family": "k3n", "n": 4})
    assert run(capsys, "check", even, group)[0] == 2
    nomode = write(tmp_path, "nomode.json", {"generators": []})
    assert run(capsys, "check", setup, nomode)[0] == 2
    kum = write(tmp_path, "kum.json", {"family": "kumn", "n": 3, "d": 2})
    assert run(capsys, "check", kum, ok)[0] == 2


def test_usage_error_exit_code(capsys):
    assert main(["reproduce", "no-such-case"]) == 2
    assert main([]) == 2


def test_not_dividing_is_input_error(capsys):
    assert main(["reproduce", "central-extension", "--k", "3", "--d", "4"]) == 2


# ---------------------------------------------------------------- lattice and shell


def test_shell_e8(capsys):
    code, out = run(capsys, "shell", "E8neg", "--target", "-2")
    assert code == 0 and out["count"] == 240 and len(out["vectors"]) == 240


def test_shell_from_file(tmp_path, capsys):
    f = write(tmp_path, "lat.json", {"rank": 2, "gram": [[-2, 0], [0, -4]], "label": "t"})
    code, out = run(capsys, "shell", "--file", f, "--target", "-4")
    assert code == 0 and out["vectors"] == [[0, -1], [0, 1]]


def test_shell_indefinite_is_input_error(capsys):
    assert run(capsys, "shell", "U")[0] == 2


def test_lattice_info(capsys):
    code, out = run(capsys, "lattice", "k3n-x:3")
    assert code == 0 and out["rank"] == 23 and out["signature"] == [3, 20]
    assert out["discriminant"]["invariant_factors"] == [4]
    _, out = run(capsys, "lattice", "U+rank1:-6", "--gram")
    assert out["gram"] == [[0, 1, 0], [1, 0, 0], [0, 0, -6]]
    assert out["discriminant"]["q_values"] == ["11/6"]
    assert run(capsys, "lattice", "nonsense")[0] == 2
    assert run(capsys, "lattice", "rank1:3")[0] == 2


def test_version(capsys):
    code, out = run(capsys, "version")
    assert code == 0 and out == {"version": __version__}


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nielsen_lattice", "version"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["version"] == __version__


def test_help_shows_defaults():
    res = subprocess.run(
        [sys.executable, "-m", "nielsen_lattice", "reproduce", "--help"], capture_output=True, text=True
    )
    assert "(default: 3)" in res.stdout and "(default: 2)" in res.stdout

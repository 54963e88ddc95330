import io
import json
import subprocess
import sys

import pytest

from codepth3 import invariants
from codepth3.cli import main
from codepth3.classify import RationalSeries
from codepth3.pipeline import KEYS, DataTable

from conftest import CLASS_S, FLAGSHIP, FLAGSHIP_GF2, KOSZUL

FLAGSHIP_DATA = """\
c => 3
e => 3
h => 1
m => 5
n => 2
Class => G
p => 0
q => 1
r => 2
                                2
                         (1 + T)
PoincareSeries => ----------------------
                            2     3    4
                  1 - T - 4T  - 2T  + T
                         2    3    4
               2 + 2T - T  - T  + T
BassSeries => ----------------------
                        2     3    4
              1 - T - 4T  - 2T  + T
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_class_command(capsys):
    assert run(capsys, "class", FLAGSHIP) == (0, "G(2)\n", "")
    assert run(capsys, "class", KOSZUL, "--format", "json")[1] == '{"Class": "C(3)"}\n'


def test_data_text_layout(capsys):
    code, out, _ = run(capsys, "data", FLAGSHIP)
    assert code == 0 and out == FLAGSHIP_DATA


def test_data_json_round_trip(capsys):
    code, out, _ = run(capsys, "data", FLAGSHIP, "--format", "json")
    data = json.loads(out)
    assert list(data) == list(KEYS)
    table = DataTable.from_json(data)
    assert str(table.ring_class) == "G(2)"
    assert table.poincare == RationalSeries(0, (1, 2, 1), (1, -1, -4, -2, 1))
    assert table.to_json() == data


def test_list_and_print(capsys):
    _, out, _ = run(capsys, "list", CLASS_S, "--keys", "e,Class,m")
    assert out == "{2, S, 2}\n"
    _, out, _ = run(capsys, "print", FLAGSHIP, "--keys", "e,h,m,n,r")
    assert out == "e=3 h=1 m=5 n=2 r=2 \n"
    _, out, _ = run(capsys, "print", FLAGSHIP, "--keys", "PoincareSeries")
    assert out == "PoincareSeries=(1+T)^2/(1-T-4T^2-2T^3+T^4) \n"
    _, out, _ = run(capsys, "list", FLAGSHIP, "--keys", "q,r", "--format", "json")
    assert json.loads(out) == [1, 2]


def test_input_from_file_and_stdin(capsys, tmp_path, monkeypatch):
    f = tmp_path / "ring.txt"
    f.write_text("FIELD: QQ\nVARS: x, y\nGENS:\n  x^2\n  x*y\n")
    assert run(capsys, "class", str(f))[1] == "S\n"
    monkeypatch.setattr(sys, "stdin", io.StringIO(f.read_text()))
    assert run(capsys, "class", "-")[1] == "S\n"


@pytest.mark.parametrize("argv, code, fragment", [
    (["class", "QQ[x] / (x*y)"], 2, "unknown variable"),
    (["print", FLAGSHIP, "--keys", "e,w"], 2, "unknown key 'w'"),
    (["class", "QQ[x,y] / (x^2 + y)"], 3, "homogeneous"),
    (["class", FLAGSHIP_GF2, "--attempts", "1", "--seed", "2"], 4, "Failed to compute Bass numbers"),
])
def test_exit_codes(capsys, argv, code, fragment):
    got, out, err = run(capsys, *argv)
    assert got == code and out == "" and fragment in err


def test_resource_limit_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(invariants.basic_invariants, "__kwdefaults__", {"step_limit": 1})
    code, _, err = run(capsys, "class", FLAGSHIP)
    assert code == 5 and err.startswith("resource limit")


def test_attempts_must_be_positive(capsys):
    with pytest.raises(SystemExit) as info:
        main(["class", FLAGSHIP, "--attempts", "0"])
    assert info.value.code == 2
    assert "attempts must be at least 1" in capsys.readouterr().err


def test_batch_preserves_order(capsys, tmp_path):
    f = tmp_path / "batch.txt"
    f.write_text("\n".join([FLAGSHIP, "# comment", KOSZUL, "QQ[x] / (y)", CLASS_S]) + "\n")
    code, out, err = run(capsys, "class", "--batch", str(f), "--jobs", "2")
    assert code == 2
    assert out.splitlines() == ["G(2)", "C(3)", "", "S"]
    assert "unknown variable" in err
    code, out, _ = run(capsys, "class", "--batch", str(f), "--jobs", "1", "--format", "json")
    assert [json.loads(x) for x in out.splitlines()] == [
        {"Class": "G(2)"}, {"Class": "C(3)"}, None, {"Class": "S"}]


def test_json_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "codepth3", "data", FLAGSHIP_GF2, "--format", "json", "--seed", "5"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first

import json
import subprocess
import sys

import pytest

from exactsynth.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_synth_text(capsys):
    code, out, _ = run(capsys, "synth", "--gateset", "v-basis", "--q", "1+2*i")
    assert code == 0
    assert out == "GEN V1+\nCENTRAL 1+0*w\n"


def test_synth_json_and_check(capsys):
    code, out, _ = run(capsys, "synth", "--gateset", "v-basis", "--q", "(1+2*i)*(1-2*k)",
                       "--method", "chain", "--check", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["mu"] == 2
    assert [v for k, v in data["word"] if k == "GEN"] == ["V1+", "V3-"]


def test_synth_unitary_rescaled(capsys):
    code, out, _ = run(capsys, "synth", "--gateset", "clifford-t", "--unitary", "1+w/2,-w/2,0,0")
    assert code == 0 and out.startswith("GEN G0\n")
    code, out, _ = run(capsys, "synth", "--gateset", "v-basis", "--q", "(1+2*i)/3", "--format", "json")
    assert code == 0 and json.loads(out)["rescaled_by"] == "3+0*w"


def test_synth_errors(capsys):
    code, _, err = run(capsys, "synth", "--gateset", "v-basis", "--q", "1+i")
    assert code == 2 and "norm not supported in S: prime (2+0*w)" in err
    code, _, err = run(capsys, "synth", "--gateset", "v-basis", "--q", "1+2*")
    assert code == 2 and "cannot parse" in err
    code, _, err = run(capsys, "synth", "--gateset", "fibonacci", "--q", "1")
    assert code == 2 and "not totally definite" in err
    code, _, err = run(capsys, "synth", "--gateset", "nope", "--q", "1")
    assert code == 2 and err.startswith("error: config")
    code, _, err = run(capsys, "synth", "--q", "1")
    assert code == 2


def test_verify(capsys, tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("GEN V1+\nGEN V1+\n")
    code, out, _ = run(capsys, "verify", "--gateset", "v-basis", str(path))
    assert code == 0
    assert out == "quaternion -3 + 4*i\nmu 2\n"
    path.write_text("")
    code, out, _ = run(capsys, "verify", "--gateset", "v-basis", str(path))
    assert out == "quaternion 1\nmu 0\n"
    path.write_text("GEN W9\n")
    code, _, err = run(capsys, "verify", "--gateset", "v-basis", str(path))
    assert code == 2 and "W9" in err


def test_listing_commands(capsys):
    code, out, _ = run(capsys, "generators", "--gateset", "clifford-t", "--format", "json")
    assert code == 0
    code, out, _ = run(capsys, "units", "--gateset", "v-basis")
    assert code == 0 and "R" in out
    code, out, _ = run(capsys, "graph", "--gateset", "v-basis")
    assert code == 0 and "depth 1" in out and "|G(S)| 6" in out


def test_selftest_skips_indefinite(capsys):
    code, out, _ = run(capsys, "selftest", "--gateset", "fibonacci")
    assert code == 0
    assert out.count("SKIPPED") == 8


@pytest.mark.parametrize("name", ["v-basis", "clifford-t"])
def test_selftest_passes(capsys, name):
    code, out, _ = run(capsys, "selftest", "--gateset", name)
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") == 7


def test_console_script_module():
    res = subprocess.run([sys.executable, "-m", "exactsynth.cli", "synth", "--gateset", "v-basis",
                          "--q", "1-2*j"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("GEN V2-")

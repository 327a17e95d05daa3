import shutil
import subprocess
import sys

import pytest

from kirbycalc import cli, constructions, surgery
from kirbycalc.diagram import parse_diagram, serialize


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def make(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return make


def test_construct_cp_invariants(capsys, files):
    code, text, _ = run(capsys, "construct", "cp", "5")
    assert code == 0
    code, out, _ = run(capsys, "invariants", files("c5.kd", text))
    assert code == 0
    assert "euler: 5" in out and "signature: -4" in out and "determinant: 25" in out


def test_construct_arity_and_bad_params(capsys):
    assert run(capsys, "construct", "plug", "1")[0] == 2
    assert run(capsys, "construct", "cp", "x")[0] == 2
    assert run(capsys, "construct", "cp", "1")[0] == 2
    assert run(capsys, "construct", "t2")[0] == 0


def test_output_flag(capsys, tmp_path):
    out = tmp_path / "w.kd"
    assert run(capsys, "construct", "cork", "1", "-o", str(out))[0] == 0
    assert parse_diagram(out.read_text()) == constructions.cork_w(1).hd


def test_homeo_check_self(capsys, files):
    path = files("p.kd", serialize(constructions.plug_ambient(1, 2)))
    code, out, _ = run(capsys, "homeo-check", path, path)
    assert code == 0 and out.strip().endswith("pass")


def test_homeo_check_bare_forms(capsys, files):
    a = files("a.form", "-1,0,0;0,-1,1;0,1,0\n")
    b = files("b.form", "-8,1,1;1,0,0;1,0,-1\n")
    code, out, _ = run(capsys, "homeo-check", a, b)
    assert code == 0 and "Equivalent" in out


def test_homeo_check_plug_pair_fails(capsys, files):
    before = constructions.plug_ambient(1, 2)
    after = surgery.plug_twist(before, "d", "b")
    code, out, _ = run(capsys, "homeo-check", files("x.kd", serialize(before)), files("y.kd", serialize(after)))
    assert code == 1
    assert "represents(-1)" in out and "necessary conditions: fail" in out


def test_form_subcommands(capsys):
    assert run(capsys, "form", "sig", "1,0,0;0,-1,0;0,0,-1")[1].strip() == "-1"
    assert run(capsys, "form", "parity", "0,1;1,0")[1].strip() == "even"
    code, out, _ = run(capsys, "form", "represents", "-8,1;1,-1", "-1")
    assert code == 0 and "(0, 1)" in out
    code, out, _ = run(capsys, "form", "represents", "-8,-3;-3,-2", "-1")
    assert code == 1 and out.startswith("none")
    assert run(capsys, "form", "equiv", "0,1;1,-4", "0,1;1,0")[0] == 0
    assert run(capsys, "form", "equiv", "-8,1;1,-1", "-8,-3;-3,-2")[0] == 1


@pytest.mark.parametrize("argv", [
    ["form", "sig", "1,2;3,4"],
    ["form", "sig", "0,0;0,1"],
    ["form", "equiv", "1"],
    ["form", "represents", "1", "x"],
    ["form", "represents", "1", "1", "--bound", "0"],
    ["form", "equiv", "1", "1", "--budget", "0"],
    ["nonsense"],
    ["invariants", "/no/such/file"],
    ["phi", "-1"],
    ["verify-paper", "--range", "m:0"],
    ["verify-paper", "--range", "q:3"],
])
def test_bad_input_exit_code(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_invalid_diagram_exit_code(capsys, files):
    path = files("bad.kd", "handles 0\ncomponent a framed 0\nlk a a 1\n")
    assert run(capsys, "invariants", path)[0] == 2


def test_apply_empty_script_is_byte_identical(capsys, files):
    text = serialize(constructions.plug_ambient(2, 3))
    src = files("in.kd", text)
    code, out, err = run(capsys, "apply", src, files("empty.ks", ""))
    assert code == 0 and out == text and err == ""


def test_apply_corktwist_twice(capsys, files):
    text = serialize(constructions.attach_external(constructions.cork_w(1), [("e", -2, {"d": 1})]))
    src = files("in.kd", text)
    code, out, err = run(capsys, "apply", src, files("s.ks", "corktwist d k\ncorktwist d k\n"))
    assert code == 0 and err
    assert parse_diagram(out).matrix == parse_diagram(text).matrix
    assert parse_diagram(out).dotted_ids == parse_diagram(text).dotted_ids


def test_apply_failing_move_reports(capsys, files):
    src = files("in.kd", serialize(constructions.cork_w(1).hd))
    code, _, err = run(capsys, "apply", src, files("s.ks", "cancel k d\ncancel k d\n"))
    assert code == 2 and "kirbycalc:" in err


def test_rbd_command(capsys, files):
    src = files("c3.kd", serialize(constructions.cp_chain(3).hd))
    code, out, _ = run(capsys, "rbd", src, "c1,c2")
    assert code == 0 and parse_diagram(out) == constructions.bp_ball(3).hd
    assert run(capsys, "rbd", src, "c2,c1")[0] == 2


def test_phi_command(capsys):
    code, out, _ = run(capsys, "phi", "3")
    assert code == 0
    assert [[int(v) for v in ln.split()] for ln in out.splitlines()] == [[1, 0, 0], [0, 0, 1], [0, -1, 3]]
    out = run(capsys, "phi", "3", "--inverse")[1]
    assert [[int(v) for v in ln.split()] for ln in out.splitlines()] == [[1, 0, 0], [0, 3, -1], [0, 1, 0]]


def test_logt_command(capsys, files):
    hd = constructions.attach_external(constructions.t2xb2_block(), [("x", -1, {"t": 1})])
    src = files("t.kd", serialize(hd))
    code, out, err = run(capsys, "logt", src, "d1,d2,t", "3", "x:0,0,1")
    assert code == 0 and "x: (0, -1, 0)" in err
    assert parse_diagram(out).lk("x", "d2") == -1
    assert run(capsys, "logt", src, "d1,d2", "3")[0] == 2
    assert run(capsys, "logt", src, "d1,d2,t", "3", "x:1,2")[0] == 2


def test_logt_no_externals_is_identity(capsys, files):
    text = serialize(constructions.t2xb2_block().hd)
    code, out, _ = run(capsys, "logt", files("t.kd", text), "d1,d2,t", "2")
    assert code == 0 and parse_diagram(out) == parse_diagram(text)


def test_tb_and_stein(capsys, files):
    saucer = files("saucer.lf", "lcusp 0\nrcusp 0\n")
    trefoil = files("tref.lf", "lcusp 0 / lcusp 1 / cross 2 / cross 2 / cross 2 / rcusp 1 / rcusp 0\n")
    code, out, _ = run(capsys, "tb", saucer)
    assert code == 0 and "tb=-1 rot=0" in out
    assert run(capsys, "stein", f"{saucer}:-2", f"{trefoil}:0")[0] == 0
    code, out, _ = run(capsys, "stein", f"{saucer}:-1")
    assert code == 1 and "fail" in out
    assert run(capsys, "stein", saucer)[0] == 2
    assert run(capsys, "tb", files("bad.lf", "rcusp 0\n"))[0] == 2


def test_verify_paper_default(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0 and out.strip().endswith("all checks pass")
    assert out.count("PASS") == 6


def test_verify_paper_single_instance(capsys):
    code, out, _ = run(capsys, "verify-paper", "--range", "m:1", "n:2")
    assert code == 0


def test_verify_paper_with_broken_builders(capsys):
    from kirbycalc import regression

    builders = regression.default_builders()
    builders.phi_matrix = lambda p: [[1, 0, 0], [0, 0, -1], [0, 1, p]]
    args = cli.build_parser().parse_args(["verify-paper", "--range", "m:1", "n:2"])
    assert cli.cmd_verify_paper(args, builders) == 1
    assert "FAIL phi_p" in capsys.readouterr().out


@pytest.mark.skipif(shutil.which("kirbycalc") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["kirbycalc", "phi", "0"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.split() == ["1", "0", "0", "0", "0", "1", "0", "-1", "0"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "kirbycalc.cli", "form", "parity", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "odd"

import subprocess
import sys

import numpy as np
import pytest
from scipy.stats import special_ortho_group, unitary_group

from cnotsynth.circuit import read_circuit
from cnotsynth.cli import EXIT_BAD_INPUT, EXIT_EXHAUSTED, EXIT_OK, golden_pairs, main
from cnotsynth.linalg import DenseMatrix, write_matrix
from cnotsynth.pauli import Field

C, R = Field.COMPLEX, Field.REAL


def matrix_file(tmp_path, name, data, field=None):
    data = np.asarray(data)
    field = field or (C if np.iscomplexobj(data) else R)
    path = tmp_path / name
    write_matrix(path, DenseMatrix(field, data))
    return str(path)


class TestSynth:
    def test_su4_then_verify(self, tmp_path, capsys):
        target = matrix_file(tmp_path, "u.matrix", unitary_group.rvs(4, random_state=1))
        out = str(tmp_path / "u.circuit")
        assert main(["synth", target, "--field", "C", "--out", out]) == EXIT_OK
        text = capsys.readouterr().out
        assert "status: success" in text and "trotter_steps:" in text
        assert main(["verify", out, target, "--eps", "1e-2"]) == EXIT_OK

    def test_identity_empty_circuit(self, tmp_path):
        target = matrix_file(tmp_path, "id.matrix", np.eye(4, dtype=complex))
        out = tmp_path / "id.circuit"
        assert main(["synth", target, "--out", str(out)]) == EXIT_OK
        assert out.read_text() == "C 2\n"

    def test_real_reflection_uses_ancilla(self, tmp_path, capsys):
        o = special_ortho_group.rvs(4, random_state=4) @ np.diag([-1.0, 1, 1, 1])
        target = matrix_file(tmp_path, "o.matrix", o)
        out = str(tmp_path / "o.circuit")
        assert main(["synth", target, "--field", "R", "--out", out]) == EXIT_OK
        assert "ancilla_used: true" in capsys.readouterr().out
        assert read_circuit(out).width == 3
        assert main(["verify", out, target, "--eps", "1e-2"]) == EXIT_OK
        assert "ancilla: true" in capsys.readouterr().out

    def test_exhaustion(self, tmp_path):
        target = matrix_file(tmp_path, "u.matrix", unitary_group.rvs(4, random_state=2))
        out = str(tmp_path / "u.circuit")
        assert main(["synth", target, "--eps", "1e-9", "--max-steps", "4", "--out", out]) == EXIT_EXHAUSTED

    def test_field_mismatch(self, tmp_path):
        target = matrix_file(tmp_path, "u.matrix", np.eye(2, dtype=complex))
        assert main(["synth", target, "--field", "R", "--out", str(tmp_path / "x")]) == EXIT_BAD_INPUT

    def test_not_unitary(self, tmp_path):
        target = matrix_file(tmp_path, "u.matrix", 2 * np.eye(2, dtype=complex))
        assert main(["synth", target, "--out", str(tmp_path / "x")]) == EXIT_BAD_INPUT

    @pytest.mark.parametrize("text", ["", "C 2\n1 0 0 0\n", "Q 2\n1 0\n0 1\n", "R 2\n1 0\n0 x\n"])
    def test_malformed_matrix(self, tmp_path, text):
        path = tmp_path / "bad.matrix"
        path.write_text(text)
        assert main(["synth", str(path), "--out", str(tmp_path / "x")]) == EXIT_BAD_INPUT

    def test_missing_file(self, tmp_path):
        assert main(["synth", str(tmp_path / "nope"), "--out", str(tmp_path / "x")]) == EXIT_BAD_INPUT

    def test_bad_flags(self):
        assert main(["synth"]) == EXIT_BAD_INPUT
        assert main(["frobnicate"]) == EXIT_BAD_INPUT


class TestVerify:
    def test_empty_vs_identity(self, tmp_path, capsys):
        circ = tmp_path / "e.circuit"
        circ.write_text("R 2\n")
        target = matrix_file(tmp_path, "id.matrix", np.eye(4))
        assert main(["verify", str(circ), target]) == EXIT_OK
        assert "distance: 0.000000e+00" in capsys.readouterr().out

    def test_failure_exit(self, tmp_path):
        circ = tmp_path / "c.circuit"
        circ.write_text("R 2\nCNOT 1 2\n")
        target = matrix_file(tmp_path, "id.matrix", np.eye(4))
        assert main(["verify", str(circ), target]) == EXIT_BAD_INPUT

    def test_malformed_circuit(self, tmp_path):
        circ = tmp_path / "c.circuit"
        circ.write_text("R 2\nCNOT 1 9\n")
        target = matrix_file(tmp_path, "id.matrix", np.eye(4))
        assert main(["verify", str(circ), target]) == EXIT_BAD_INPUT

    def test_field_mismatch(self, tmp_path):
        circ = tmp_path / "c.circuit"
        circ.write_text("C 2\n")
        target = matrix_file(tmp_path, "id.matrix", np.eye(4))
        assert main(["verify", str(circ), target]) == EXIT_BAD_INPUT


class TestAlgebra:
    @pytest.mark.parametrize("n,field,line", [("2", "R", "6 of 6: PASS"), ("1", "R", "1 of 1: PASS"), ("3", "C", "63 of 63: PASS")])
    def test_output(self, n, field, line, capsys):
        assert main(["algebra", "--n", n, "--field", field]) == EXIT_OK
        assert capsys.readouterr().out.strip() == line

    def test_out_of_range(self):
        assert main(["algebra", "--n", "0", "--field", "C"]) == EXIT_BAD_INPUT


class TestExamples:
    def test_goldens_verify(self, tmp_path):
        out = tmp_path / "g"
        assert main(["examples", "--out", str(out)]) == EXIT_OK
        names = sorted(golden_pairs())
        assert sorted(p.stem for p in out.glob("*.circuit")) == names
        for name in names:
            eps = "1e-10" if name.startswith("ladder") else "1e-14"
            assert main(["verify", str(out / f"{name}.circuit"), str(out / f"{name}.matrix"), "--eps", eps]) == EXIT_OK

    def test_ladder_golden_has_four_cnots(self, tmp_path):
        main(["examples", "--out", str(tmp_path / "g")])
        assert read_circuit(tmp_path / "g" / "ladder_exp_XIZY.circuit").cnot_count == 4

    def test_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        main(["examples", "--out", str(a)])
        main(["examples", "--out", str(b)])
        for f in a.iterdir():
            assert f.read_bytes() == (b / f.name).read_bytes()

    def test_non_empty_dir(self, tmp_path):
        (tmp_path / "junk").write_text("x")
        assert main(["examples", "--out", str(tmp_path)]) == EXIT_BAD_INPUT


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "cnotsynth", "algebra", "--n", "2", "--field", "R"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "6 of 6: PASS"


def test_synth_determinism(tmp_path):
    target = matrix_file(tmp_path, "u.matrix", unitary_group.rvs(4, random_state=9))
    outs = [tmp_path / f"{k}.circuit" for k in range(2)]
    for o in outs:
        main(["synth", target, "--out", str(o)])
    assert outs[0].read_bytes() == outs[1].read_bytes()

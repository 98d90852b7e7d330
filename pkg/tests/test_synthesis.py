import numpy as np
import pytest
import scipy.linalg
from scipy.stats import special_ortho_group, unitary_group

from cnotsynth.circuit import CNOT, Exp, Local, Rot
from cnotsynth.errors import DisconnectedComponentError, NotAGeneratorError, NotUnitaryError
from cnotsynth.linalg import pauli_exp, phase_invariant_distance
from cnotsynth.pauli import Field, SignedPauliString, enumerate_basis, to_matrix
from cnotsynth.synthesis import (
    cnot_budget,
    orthogonal_compile,
    pauli_exponential_circuit,
    reduce_to_pivot,
    reversed_cnot_circuit,
    swap_circuit,
    trotter_compile,
)
from cnotsynth.verification import ancilla_restriction_error, evaluate_circuit

from conftest import oracle_evaluate

C, R = Field.COMPLEX, Field.REAL
VBAR = np.eye(4)[[0, 3, 2, 1]]
SWAP = np.eye(4)[[0, 2, 1, 3]]


def s(text, field):
    return SignedPauliString.parse(text, field)


def random_string(n, field, rng):
    basis = enumerate_basis(n, field)
    return basis[rng.integers(len(basis))]


class TestReduceToPivot:
    def test_xizy_target(self):
        word = reduce_to_pivot(s("XIZY", C))
        assert word.pivot == 3
        assert word.ladder_length == 2
        assert all(g.target == 3 for g in word.gates if isinstance(g, CNOT))
        assert sum(isinstance(g, Local) for g in word.gates) <= 4
        assert word.replay() == s("XIZY", C).with_phase(0 if word.sign == 1 else 2)

    def test_real_single_is_empty(self):
        word = reduce_to_pivot(s("IYt", R))
        assert word.gates == () and word.pivot == 1 and word.sign == 1

    def test_real_three_yt(self):
        word = reduce_to_pivot(s("YtYtYt", R))
        assert word.pivot == 2
        assert CNOT(0, 1) in word.gates
        replay = word.replay()
        assert replay.unsigned() == s("YtYtYt", R) and replay.sign == word.sign

    @pytest.mark.parametrize("field", [C, R])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_replay_all_basis(self, field, n):
        for p in enumerate_basis(n, field):
            word = reduce_to_pivot(p)
            assert word.replay() == (p if word.sign == 1 else -p)
            before_ladder = len(word.gates) - word.ladder_length
            assert before_ladder <= 2 * n

    def test_errors(self):
        with pytest.raises(NotAGeneratorError):
            reduce_to_pivot(s("YtYt", R))
        with pytest.raises(ValueError):
            reduce_to_pivot(s("II", C))
        with pytest.raises(ValueError):
            reduce_to_pivot(s("-XZ", C))


class TestPauliExponentialCircuit:
    def test_xizy_four_cnots(self):
        p = s("XIZY", C)
        circ = pauli_exponential_circuit(p, 0.7)
        assert circ.cnot_count == 4
        assert phase_invariant_distance(evaluate_circuit(circ), pauli_exp(p, 0.7)) <= 1e-10

    def test_xizy_closed_form(self):
        p = s("XIZY", C)
        closed = np.cos(0.7) * np.eye(16) + 1j * np.sin(0.7) * to_matrix(p)
        assert np.allclose(oracle_evaluate(pauli_exponential_circuit(p, 0.7)), closed, atol=1e-13)

    @pytest.mark.parametrize("text,field", [("IXI", C), ("IIYt", R), ("Z", C)])
    def test_weight_one_single_gate(self, text, field):
        circ = pauli_exponential_circuit(s(text, field), 0.4)
        assert len(circ) == 1 and isinstance(circ.gates[0], (Exp, Rot))

    def test_real_three_sites(self, rng):
        for _ in range(10):
            p = random_string(3, R, rng)
            circ = pauli_exponential_circuit(p, 0.37)
            assert phase_invariant_distance(evaluate_circuit(circ), pauli_exp(p, 0.37)) <= 1e-10

    @pytest.mark.parametrize("field", [C, R])
    def test_soundness_and_budget(self, field, rng):
        for _ in range(200):
            n = int(rng.integers(1, 6))
            p = random_string(n, field, rng)
            t = float(rng.uniform(-np.pi, np.pi))
            circ = pauli_exponential_circuit(p, t)
            assert phase_invariant_distance(evaluate_circuit(circ), pauli_exp(p, t)) <= 1e-10
            assert circ.cnot_count <= cnot_budget(p)
            if field is C:
                assert circ.cnot_count == 2 * (p.weight - 1)

    def test_real_exact_not_just_up_to_sign(self):
        p = s("XYtZ", R)
        m = evaluate_circuit(pauli_exponential_circuit(p, 1.2)).data
        assert np.allclose(m, pauli_exp(p, 1.2).data, atol=1e-14)


class TestMacros:
    @pytest.mark.parametrize("field", [C, R])
    def test_reversed_cnot_exact(self, field):
        m = evaluate_circuit(reversed_cnot_circuit(field)).data
        assert np.abs(m - VBAR).max() <= 1e-14
        assert {type(g) for g in reversed_cnot_circuit(field)} == {Local, CNOT}
        assert all(g == CNOT(0, 1) for g in reversed_cnot_circuit(field) if isinstance(g, CNOT))

    def test_complex_is_hadamard_sandwich(self):
        h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        hh = np.kron(h, h)
        v = np.eye(4)[[0, 1, 3, 2]]
        assert np.allclose(hh @ v @ hh, VBAR, atol=1e-15)

    def test_printed_real_arrangement_is_not_vbar(self):
        # (Yt Ht (x) Ht) V (Ht Yt (x) Ht) as literally printed is another signed permutation.
        yt = np.array([[0.0, 1.0], [-1.0, 0.0]])
        ht = np.array([[1.0, -1.0], [1.0, 1.0]]) / np.sqrt(2)
        v = np.eye(4)[[0, 1, 3, 2]]
        printed = np.kron(yt @ ht, ht) @ v @ np.kron(ht @ yt, ht)
        assert np.abs(printed - VBAR).max() > 0.5
        fixed = np.kron(ht, yt @ ht) @ v @ np.kron(ht @ yt, ht)
        assert np.abs(fixed - VBAR).max() <= 1e-15

    @pytest.mark.parametrize("field", [C, R])
    def test_reversed_twice_is_identity(self, field):
        c = reversed_cnot_circuit(field)
        assert np.allclose(evaluate_circuit(c + c).data, np.eye(4), atol=1e-14)

    @pytest.mark.parametrize("field", [C, R])
    def test_swap_exact_and_on_basis(self, field):
        m = evaluate_circuit(swap_circuit(field)).data
        assert np.abs(m - SWAP).max() <= 1e-14
        for phi in range(2):
            for psi in range(2):
                ket = np.zeros(4)
                ket[2 * phi + psi] = 1
                out = np.zeros(4)
                out[2 * psi + phi] = 1
                assert np.allclose(m @ ket, out, atol=1e-14)
        assert np.allclose(m @ m, np.eye(4), atol=1e-14)

    @pytest.mark.parametrize("field", [C, R])
    def test_swap_conjugates_xi_to_ix(self, field):
        from cnotsynth.synthesis import conjugate_by_gate

        p = s("XI", field)
        for g in swap_circuit(field):
            p = conjugate_by_gate(p, g)
        assert p == s("IX", field)


class TestTrotter:
    def test_single_term_exact(self):
        u = pauli_exp(s("XZ", C), 0.9)
        rep = trotter_compile(u)
        assert rep.trotter_steps == 1 and rep.achieved_error <= 1e-10 and rep.success

    def test_identity(self):
        rep = trotter_compile(np.eye(4, dtype=complex))
        assert len(rep.circuit) == 0 and rep.achieved_error == 0 and rep.success

    def test_two_term_su4(self):
        gen = 1j * (0.8 * to_matrix(s("XI", C)) + 0.6 * to_matrix(s("ZZ", C)) - 0.5 * to_matrix(s("YX", C)))
        u = scipy.linalg.expm(gen)
        rep = trotter_compile(u, eps=1e-2)
        assert rep.success and rep.trotter_steps > 1
        errs = [e for _, e in rep.error_history]
        assert errs[-1] <= 1e-2
        # first order: doubling n roughly halves the error
        ratios = [a / b for a, b in zip(errs[-4:-1], errs[-3:])]
        assert all(1.6 < r < 2.5 for r in ratios)

    def test_phase_normalization(self, rng):
        u = unitary_group.rvs(4, random_state=3) * np.exp(0.37j)
        rep = trotter_compile(u, eps=1e-2)
        assert rep.success
        assert np.isclose(np.exp(1j * rep.removed_phase * 4), np.linalg.det(u))

    def test_report_matches_reevaluation(self):
        u = unitary_group.rvs(4, random_state=11)
        rep = trotter_compile(u, eps=5e-2)
        again = phase_invariant_distance(oracle_evaluate(rep.circuit), u)
        assert abs(again - rep.achieved_error) <= 1e-12

    def test_second_order(self):
        u = unitary_group.rvs(4, random_state=5)
        first = trotter_compile(u, eps=1e-3)
        second = trotter_compile(u, eps=1e-3, order=2)
        assert second.success and second.trotter_steps < first.trotter_steps

    def test_exhaustion(self):
        u = unitary_group.rvs(4, random_state=7)
        rep = trotter_compile(u, eps=1e-6, max_steps=8)
        assert not rep.success and rep.trotter_steps <= 8
        assert rep.achieved_error == min(e for _, e in rep.error_history) or rep.achieved_error > 1e-6

    def test_real_so4(self):
        o = special_ortho_group.rvs(4, random_state=1)
        rep = trotter_compile(o)
        assert rep.success and rep.circuit.field is R and not rep.ancilla_used

    def test_rejects(self):
        with pytest.raises(NotUnitaryError):
            trotter_compile(2 * np.eye(2, dtype=complex))
        with pytest.raises(DisconnectedComponentError):
            trotter_compile(np.diag([1.0, 1.0, 1.0, -1.0]))


class TestOrthogonalCompile:
    def test_reflection_uses_ancilla(self):
        rep = orthogonal_compile(np.diag([1.0, -1.0]))
        assert rep.ancilla_used and rep.circuit.width == 2 and rep.success
        assert rep.target_dim == 2
        m = evaluate_circuit(rep.circuit)
        for a in (0, 1):
            assert ancilla_restriction_error(m, np.diag([1.0, -1.0]), a) <= rep.achieved_error + 1e-14

    def test_so4_no_ancilla(self):
        rep = orthogonal_compile(special_ortho_group.rvs(4, random_state=2))
        assert not rep.ancilla_used and rep.circuit.width == 2

    @pytest.mark.parametrize("n", [1, 2])
    def test_random_det_minus_one(self, n):
        o = special_ortho_group.rvs(2**n, random_state=n) @ np.diag([-1.0] + [1.0] * (2**n - 1))
        rep = orthogonal_compile(o)
        assert rep.ancilla_used and rep.success and rep.circuit.width == n + 1
        m = evaluate_circuit(rep.circuit)
        off = m.data[: 2**n, 2**n:]
        assert np.linalg.norm(off) <= rep.achieved_error + 1e-12

    def test_det_of_embedding(self, rng):
        for n in (1, 2, 3):
            o = special_ortho_group.rvs(2**n, random_state=int(rng.integers(1000)))
            o[:, 0] *= -1
            assert np.linalg.det(o) == pytest.approx(-1)
            assert np.linalg.det(np.kron(np.eye(2), o)) == pytest.approx(1)

    def test_rejects_non_orthogonal(self):
        with pytest.raises(NotUnitaryError):
            orthogonal_compile(np.array([[1.0, 1.0], [0.0, 1.0]]))

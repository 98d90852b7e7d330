"""Ground truth: dense circuit evaluation, determinant parity, algebra closure."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .circuit import CNOT, Circuit, Exp, Local, Rot, cnot_permutation, embed
from .errors import FieldMismatchError
from .linalg import DenseMatrix, as_dense, optimal_phase, phase_invariant_distance
from .pauli import (
    Field,
    SignedPauliString,
    commutes,
    conjugate_by_cnot,
    conjugate_by_local,
    enumerate_basis,
    local_clifford_names,
    string_multiply,
)

PARITY_TOL = 1e-8
MAX_ALGEBRA_SITES = 6


def evaluate_circuit(circuit: Circuit) -> DenseMatrix:
    """Multiply out a circuit; the first gate ends up as the rightmost factor."""
    field, width = circuit.field, circuit.width
    out = np.eye(2**width, dtype=field.dtype)
    cache: dict = {}
    for gate in circuit.gates:
        op = cache.get(gate)
        if op is None:
            if isinstance(gate, CNOT):
                op = cnot_permutation(width, gate.control, gate.target)
            else:
                op = embed(gate, field, width)
            cache[gate] = op
        if isinstance(gate, CNOT):
            out = out[op]
        else:
            out = op @ out
    return DenseMatrix(field, out)


def determinant_parity_check(circuit: Circuit, tol: float = PARITY_TOL) -> int:
    """Determinant of a real circuit of width >= 2, snapped to +-1.

    An embedded local gate has determinant ``det(g)**(2**(N-1))``, which is +1
    from two rebits on. A C-NOT is a permutation of ``2**(N-2)`` basis pairs:
    an odd permutation (det -1) on exactly two rebits and an even one from
    three rebits on. So the result is +1 for every circuit of width >= 3,
    and ``(-1)**(number of C-NOTs)`` at width 2.
    """
    if circuit.field is not Field.REAL:
        raise FieldMismatchError("determinant parity applies to real circuits")
    if circuit.width < 2:
        raise ValueError("the parity statement needs width >= 2; a single rebit reaches det -1 locally")
    det = float(np.linalg.det(evaluate_circuit(circuit).data))
    snapped = 1 if det > 0 else -1
    if abs(det - snapped) > tol:
        raise ArithmeticError(f"determinant {det!r} is not within {tol} of +-1")
    return snapped


def random_circuit(field: Field | str, width: int, depth: int, rng: np.random.Generator,
                   cnot_fraction: float = 0.4) -> Circuit:
    """Random C-NOT / local circuit; real circuits mix named gates (incl. reflections) and rotations."""
    field = Field.parse(field)
    names = local_clifford_names(field)
    if width == 1 and field is Field.REAL:
        names = tuple(n for n in names if n not in ("X", "Z"))
    circ = Circuit(field, width)
    for _ in range(depth):
        if width > 1 and rng.random() < cnot_fraction:
            c, t = rng.choice(width, size=2, replace=False)
            circ.append(CNOT(int(c), int(t)))
            continue
        site = int(rng.integers(width))
        if rng.random() < 0.5:
            circ.append(Local(site, str(rng.choice(names))))
        elif field is Field.REAL:
            circ.append(Rot(site, float(rng.uniform(-np.pi, np.pi))))
        else:
            circ.append(Exp(site, str(rng.choice(["X", "Y", "Z"])), float(rng.uniform(-np.pi, np.pi))))
    return circ


def restrict_to_ancilla(m, ancilla_state: int) -> DenseMatrix:
    """Block ``<a| M |a>`` of a matrix whose first tensor factor is an ancilla."""
    m = as_dense(m)
    half = m.dim // 2
    sl = slice(ancilla_state * half, (ancilla_state + 1) * half)
    return DenseMatrix(m.field, m.data[sl, sl])


def embed_with_ancilla(target) -> DenseMatrix:
    """``I_2 (x) target``: the ancilla is the leftmost system."""
    target = as_dense(target)
    return DenseMatrix(target.field, np.kron(np.eye(2), target.data))


def _closure_generators(field: Field, n_sites: int) -> list[SignedPauliString]:
    codes = (1, 2, 3) if field is Field.COMPLEX else (2,)
    return [SignedPauliString.single(field, n_sites, s, c) for s in range(n_sites) for c in codes]


def closure_strings(n_sites: int, field: Field | str) -> set[tuple[int, ...]]:
    """Unsigned strings reachable from local generators under the gate set.

    Breadth-first closure under conjugation by every ordered C-NOT pair and
    every named local Clifford on every site, then Lie brackets among the
    collected strings until nothing new appears. Signs are dropped since they
    do not affect the span.
    """
    field = Field.parse(field)
    names = local_clifford_names(field)
    full = len(enumerate_basis(n_sites, field)) if n_sites <= MAX_ALGEBRA_SITES else None
    seen: set[tuple[int, ...]] = set()
    queue: deque[SignedPauliString] = deque()

    def visit(p: SignedPauliString) -> None:
        if p.codes not in seen and any(p.codes):
            seen.add(p.codes)
            queue.append(p.unsigned())

    for g in _closure_generators(field, n_sites):
        visit(g)
    pairs = [(i, j) for i in range(n_sites) for j in range(n_sites) if i != j]
    while True:
        while queue:
            p = queue.popleft()
            for i, j in pairs:
                visit(conjugate_by_cnot(p, i, j))
            for site in range(n_sites):
                for name in names:
                    visit(conjugate_by_local(p, site, name))
        if len(seen) == full:
            break
        # [P, Q] = 2PQ when P and Q anticommute, 0 otherwise.
        current = [SignedPauliString(field, c) for c in sorted(seen)]
        for a_idx, a in enumerate(current):
            for b in current[a_idx + 1:]:
                if not commutes(a, b):
                    visit(string_multiply(a, b))
        if not queue:
            break
    return seen


def generated_algebra_dimension(n_sites: int, field: Field | str) -> int:
    """Dimension of the Lie algebra generated by local gates and C-NOTs.

    Each collected string is a single basis element, so its coefficient
    vector is a unit vector and the rank equals the number of distinct basis
    indices hit. Expected: ``4**N - 1`` (complex) and ``2**(N-1) (2**N - 1)`` (real).
    """
    field = Field.parse(field)
    if not 1 <= n_sites <= MAX_ALGEBRA_SITES:
        raise ValueError(f"n_sites must be in 1..{MAX_ALGEBRA_SITES}")
    index = {p.codes: k for k, p in enumerate(enumerate_basis(n_sites, field))}
    hit = {index[c] for c in closure_strings(n_sites, field)}
    return len(hit)


def expected_algebra_dimension(n_sites: int, field: Field | str) -> int:
    field = Field.parse(field)
    if field is Field.COMPLEX:
        return 4**n_sites - 1
    return 2 ** (n_sites - 1) * (2**n_sites - 1)


@dataclass
class VerificationReport:
    distance: float
    determinant: complex | float
    eps: float
    ancilla: bool

    @property
    def passed(self) -> bool:
        return self.distance <= self.eps

    def lines(self) -> list[str]:
        det = self.determinant
        det_text = f"{det.real:.17g}{det.imag:+.17g}i" if isinstance(det, complex) else f"{det:.17g}"
        return [
            f"distance: {self.distance:.6e}",
            f"determinant: {det_text}",
            f"eps: {self.eps:g}",
            f"ancilla: {str(self.ancilla).lower()}",
            f"result: {'PASS' if self.passed else 'FAIL'}",
        ]


def verify_circuit(circuit: Circuit, target, eps: float = 1e-6) -> VerificationReport:
    """Compare a circuit with a target up to global phase.

    A real circuit one rebit wider than the target is compared against
    ``I (x) target`` (the ancilla construction).
    """
    target = as_dense(target)
    if target.field is not circuit.field:
        raise FieldMismatchError(f"circuit is {circuit.field.name}, target is {target.field.name}")
    ancilla = False
    if circuit.width == target.n_sites + 1 and circuit.field is Field.REAL:
        target = embed_with_ancilla(target)
        ancilla = True
    if circuit.width != target.n_sites:
        raise FieldMismatchError(f"circuit width {circuit.width} does not match target on {target.n_sites} sites")
    m = evaluate_circuit(circuit)
    return VerificationReport(phase_invariant_distance(m, target), m.det(), eps, ancilla)


def ancilla_restriction_error(m, target, ancilla_state: int) -> float:
    """``||<a|M|a> - phi * target||_F`` with ``phi`` the phase that best aligns ``M`` with ``I (x) target``."""
    m = as_dense(m)
    target = as_dense(target, m.field)
    phi = optimal_phase(m.data, embed_with_ancilla(target).data, m.field)
    block = restrict_to_ancilla(m, ancilla_state).data
    return float(np.linalg.norm(block - phi * target.data))

"""Compilation of Pauli exponentials and whole targets into C-NOT + local circuits.

The core move is pivot reduction: a string ``P`` is conjugated by Clifford
locals and a ladder of C-NOTs until only one elementary generator is left on
a single site (the pivot). If the reduction gates ``h_1 .. h_k`` take ``P``
to ``s * E`` then

    exp(t P) = h_1^-1 ... h_k^-1  exp(s t E)  h_k ... h_1

so the circuit is: the reduction gates, one continuous rotation on the
pivot, and the reduction undone in reverse. Arbitrary targets are then
handled by expanding their logarithm in the string basis and Trotterizing.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from .circuit import CNOT, Circuit, Exp, Gate, Local, Rot
from .errors import DisconnectedComponentError, NotAGeneratorError, NotUnitaryError
from .linalg import (
    UNITARY_TOL,
    DenseMatrix,
    as_dense,
    orthogonal_log,
    pauli_expand,
    phase_invariant_distance,
    unitary_log,
)
from .pauli import (
    I_,
    Y_,
    Z_,
    Field,
    SignedPauliString,
    conjugate_by_cnot,
    conjugate_by_local,
    is_real_generator,
    local_clifford_names,
)
from .verification import embed_with_ancilla, evaluate_circuit

log = logging.getLogger(__name__)

DEFAULT_EPS = 1e-2
DEFAULT_MAX_STEPS = 4096


def conjugate_by_gate(p: SignedPauliString, gate: Gate) -> SignedPauliString:
    """``g p g^dagger`` for a C-NOT or named local gate."""
    if isinstance(gate, CNOT):
        return conjugate_by_cnot(p, gate.control, gate.target)
    if isinstance(gate, Local):
        return conjugate_by_local(p, gate.site, gate.name)
    raise TypeError(f"{gate!r} is not a Clifford-like gate")


def elementary_code(field: Field) -> int:
    """Symbol left on the pivot: ``Z`` for qubits, ``Yt`` for rebits."""
    return Z_ if field is Field.COMPLEX else Y_


@dataclass(frozen=True)
class ConjugationWord:
    """Clifford-like gates ``W`` with ``W E W^dagger = sign * target``.

    ``E`` is the elementary generator (``Z`` or ``Yt``) on ``pivot``; the gates
    are in circuit order.
    """

    field: Field
    n_sites: int
    gates: tuple[Gate, ...]
    pivot: int
    sign: int

    def elementary(self) -> SignedPauliString:
        return SignedPauliString.single(self.field, self.n_sites, self.pivot, elementary_code(self.field))

    def replay(self) -> SignedPauliString:
        """Push the elementary string through the word; equals ``sign * target``."""
        p = self.elementary()
        for g in self.gates:
            p = conjugate_by_gate(p, g)
        return p

    @property
    def ladder_length(self) -> int:
        return sum(isinstance(g, CNOT) for g in self.gates)


def _pick_local(p: SignedPauliString, site: int, want: int) -> str:
    for name in local_clifford_names(p.field):
        if conjugate_by_local(p, site, name).codes[site] == want:
            return name
    raise AssertionError(f"no local maps {p.symbols[site]} to code {want}")


def _reduction(p: SignedPauliString) -> tuple[list[Gate], int, SignedPauliString]:
    """Gates (circuit order) taking ``p`` to ``+-E`` on the pivot, the pivot, and the reduced string."""
    if p.phase != 0:
        raise ValueError(f"pivot reduction needs a +1-phase string, got {p}")
    if p.weight == 0:
        raise ValueError("cannot reduce the identity string")
    gates: list[Gate] = []
    q = p

    def apply(g: Gate) -> None:
        nonlocal q
        gates.append(g)
        q = conjugate_by_gate(q, g)

    if p.field is Field.COMPLEX:
        support = [s for s, c in enumerate(p.codes) if c != I_]
        pivot = support[-1]
        for s in support:
            if q.codes[s] != Z_:
                apply(Local(s, _pick_local(q, s, Z_)))
    else:
        if not is_real_generator(p):
            raise NotAGeneratorError(f"{p} has an even number of Yt; exp(t p) is not a rotation")
        ys = [s for s, c in enumerate(p.codes) if c == Y_]
        pivot = ys[-1]
        rest = ys[:-1]
        # Yt (x) Yt -> X (x) Z under one C-NOT (the inverse of the X (x) Z -> Yt (x) Yt move).
        for a, b in zip(rest[::2], rest[1::2]):
            apply(CNOT(a, b))
            if Y_ in (q.codes[a], q.codes[b]):
                raise AssertionError("C-NOT did not clear a Yt pair")
        support = [s for s, c in enumerate(q.codes) if c != I_]
        for s in support:
            if s != pivot and q.codes[s] != Z_:
                apply(Local(s, _pick_local(q, s, Z_)))
    for s in support:
        if s != pivot:
            apply(CNOT(s, pivot))
    if q.unsigned() != SignedPauliString.single(p.field, p.n_sites, pivot, elementary_code(p.field)):
        raise AssertionError(f"reduction of {p} ended at {q}")
    return gates, pivot, q


def reduce_to_pivot(p: SignedPauliString) -> ConjugationWord:
    """Conjugation word generating ``p`` from the elementary generator on a pivot.

    Complex: the pivot is the highest-index non-identity site; each support
    site is turned into ``Z`` by a local Clifford, then a C-NOT ladder from
    every other support site onto the pivot collapses ``Z...Z`` to ``Z``.
    Real: the pivot is the highest-index ``Yt``; the remaining ``Yt`` come in
    pairs and each pair becomes ``X (x) Z`` under one C-NOT, ``X`` is turned
    into ``Z`` by ``Ht``-type rotations, and the same ladder collapses onto
    the pivot's ``Yt``.
    """
    gates, pivot, q = _reduction(p)
    word = tuple(g.inverse() for g in reversed(gates))
    return ConjugationWord(p.field, p.n_sites, word, pivot, q.sign)


def pauli_exponential_circuit(p: SignedPauliString, t: float) -> Circuit:
    """Circuit for ``exp(i t P)`` (complex) or ``exp(t G)`` (real).

    Uses ``2 * (weight - 1)`` C-NOTs for qubits and ``2 * (weight - 1 + pairs)``
    for rebits, where ``pairs`` is the number of non-pivot ``Yt`` pairs.
    A weight-1 string compiles to a single local gate.
    """
    circ = Circuit(p.field, p.n_sites)
    if p.weight == 1 and p.phase == 0:
        site = next(s for s, c in enumerate(p.codes) if c != I_)
        if p.field is Field.COMPLEX:
            circ.append(Exp(site, p.symbols[site], t))
            return circ
        if p.codes[site] == Y_:
            circ.append(Rot(site, t))
            return circ
    gates, pivot, q = _reduction(p)
    circ.extend(gates)
    if p.field is Field.COMPLEX:
        circ.append(Exp(pivot, "Z", q.sign * t))
    else:
        circ.append(Rot(pivot, q.sign * t))
    circ.extend(g.inverse() for g in reversed(gates))
    return circ


def cnot_budget(p: SignedPauliString) -> int:
    """Upper bound on the C-NOT count of :func:`pauli_exponential_circuit`."""
    budget = 2 * (p.weight - 1)
    if p.field is Field.REAL:
        budget += 2 * ((p.codes.count(Y_) - 1) // 2)
    return budget


def reversed_cnot_circuit(field: Field | str) -> Circuit:
    """C-NOT with control on site 1 and target on site 0, from ``CNOT(0, 1)`` and locals.

    Complex: ``(H (x) H) V (H (x) H)``. Real: ``(Ht (x) Yt Ht) V (Ht Yt (x) Ht)``;
    the literal arrangement ``(Yt Ht (x) Ht) V (Ht Yt (x) Ht)`` is a different
    signed permutation, see ``tests/test_synthesis.py``.
    """
    field = Field.parse(field)
    if field is Field.COMPLEX:
        gates = [Local(0, "H"), Local(1, "H"), CNOT(0, 1), Local(0, "H"), Local(1, "H")]
    else:
        # Right factor Ht Yt (x) Ht acts first; Yt is the rightmost, so it is applied first.
        gates = [
            Local(0, "Yt"), Local(0, "Ht"), Local(1, "Ht"),
            CNOT(0, 1),
            Local(0, "Ht"), Local(1, "Ht"), Local(1, "Yt"),
        ]
    return Circuit(field, 2, gates)


def swap_circuit(field: Field | str) -> Circuit:
    """SWAP as ``V Vbar V`` with ``Vbar`` expanded into locals and ``CNOT(0, 1)``."""
    field = Field.parse(field)
    circ = Circuit(field, 2, [CNOT(0, 1)])
    circ.extend(reversed_cnot_circuit(field).gates)
    circ.append(CNOT(0, 1))
    return circ


@dataclass
class SynthesisReport:
    """Outcome of compiling one target."""

    circuit: Circuit
    target_dim: int
    achieved_error: float
    trotter_steps: int
    eps: float
    success: bool
    ancilla_used: bool = False
    removed_phase: float = 0.0
    n_terms: int = 0
    error_history: list[tuple[int, float]] = dc_field(default_factory=list)

    @property
    def cnot_count(self) -> int:
        return self.circuit.cnot_count

    @property
    def local_count(self) -> int:
        return self.circuit.local_count

    @property
    def ancilla_count(self) -> int:
        return int(self.ancilla_used)

    def lines(self) -> list[str]:
        return [
            f"status: {'success' if self.success else 'failed'}",
            f"field: {self.circuit.field.value}",
            f"width: {self.circuit.width}",
            f"target_dim: {self.target_dim}",
            f"achieved_error: {self.achieved_error:.6e}",
            f"eps: {self.eps:g}",
            f"trotter_steps: {self.trotter_steps}",
            f"terms: {self.n_terms}",
            f"cnot_count: {self.cnot_count}",
            f"local_count: {self.local_count}",
            f"ancilla_used: {str(self.ancilla_used).lower()}",
        ]


def trotter_step(terms: list[tuple[SignedPauliString, float]], n_steps: int, n_sites: int,
                 field: Field, order: int = 1) -> Circuit:
    """One Trotter step: the product of term exponentials with angles ``c / n``.

    ``order=2`` gives the symmetric splitting (forward half step, backward half step).
    """
    step = Circuit(field, n_sites)
    if order == 1:
        for p, c in terms:
            step.extend(pauli_exponential_circuit(p, c / n_steps).gates)
    elif order == 2:
        for p, c in terms:
            step.extend(pauli_exponential_circuit(p, c / (2 * n_steps)).gates)
        for p, c in reversed(terms):
            step.extend(pauli_exponential_circuit(p, c / (2 * n_steps)).gates)
    else:
        raise ValueError("order must be 1 or 2")
    return step


def trotter_compile(u, eps: float = DEFAULT_EPS, max_steps: int = DEFAULT_MAX_STEPS, *,
                    field: Field | str | None = None, order: int = 1,
                    tol: float = UNITARY_TOL) -> SynthesisReport:
    """Compile a special unitary / special orthogonal target by product formula.

    The generator ``A = log(U)`` is expanded in the string basis, the terms
    are sorted lexicographically, and ``n`` repetitions of the per-term
    product with angles ``c / n`` are emitted. ``n`` doubles from 1 until the
    measured phase-invariant distance is at most ``eps`` or ``n`` would
    exceed ``max_steps``; in the latter case the best attempt is returned with
    ``success=False``.

    Complex targets are first divided by a ``2**N``-th root of their
    determinant (recorded as ``removed_phase``). Real targets with
    determinant -1 raise :class:`DisconnectedComponentError`.
    """
    target = as_dense(u, field)
    defect = target.unitarity_defect()
    if defect > tol:
        raise NotUnitaryError(f"target is not unitary/orthogonal (defect {defect:.3e})")
    if eps <= 0:
        raise ValueError("eps must be positive")
    n_sites, dim = target.n_sites, target.dim
    removed = 0.0
    if target.field is Field.COMPLEX:
        removed = float(np.angle(np.linalg.det(target.data))) / dim
        normalized = DenseMatrix(Field.COMPLEX, target.data * np.exp(-1j * removed))
        gen = unitary_log(normalized, tol=tol).data
        # det 1 makes tr(log U) a multiple of 2 pi i; drop it (a global phase).
        gen = gen - np.trace(gen) / dim * np.eye(dim)
    else:
        if target.det() < 0:
            raise DisconnectedComponentError(
                "real target has determinant -1, outside the reach of exponentials of "
                "antisymmetric generators; use orthogonal_compile"
            )
        gen = orthogonal_log(target, tol=tol).data
    decomposition = pauli_expand(DenseMatrix(target.field, gen))
    terms = decomposition.sorted_terms()
    history: list[tuple[int, float]] = []

    if not terms:
        circ = Circuit(target.field, n_sites)
        err = phase_invariant_distance(evaluate_circuit(circ), target)
        return SynthesisReport(circ, dim, err, 1, eps, err <= eps, removed_phase=removed,
                               error_history=[(1, err)])

    best = None
    n = 1
    while n <= max_steps:
        step = trotter_step(terms, n, n_sites, target.field, order)
        power = np.linalg.matrix_power(evaluate_circuit(step).data, n)
        err = phase_invariant_distance(DenseMatrix(target.field, power), target)
        history.append((n, err))
        log.debug("trotter n=%d error=%.3e", n, err)
        if best is None or err < best[1]:
            best = (n, err, step)
        if err <= eps:
            break
        n *= 2
    n, _, step = best
    circ = step * n
    achieved = phase_invariant_distance(evaluate_circuit(circ), target)
    return SynthesisReport(
        circuit=circ,
        target_dim=dim,
        achieved_error=achieved,
        trotter_steps=n,
        eps=eps,
        success=achieved <= eps,
        removed_phase=removed,
        n_terms=len(terms),
        error_history=history,
    )


def orthogonal_compile(o, eps: float = DEFAULT_EPS, max_steps: int = DEFAULT_MAX_STEPS, *,
                       order: int = 1, tol: float = UNITARY_TOL) -> SynthesisReport:
    """Compile any orthogonal target, adding one ancilla rebit when ``det = -1``.

    For ``det(O) = -1`` the circuit implements ``I_2 (x) O`` on ``N + 1``
    rebits (ancilla first); ``det(I_2 (x) O) = det(O)**2 = +1`` puts it in the
    connected component. The ancilla is left in its input state up to the
    reported error.
    """
    target = as_dense(o, Field.REAL)
    defect = target.unitarity_defect()
    if defect > tol:
        raise NotUnitaryError(f"target is not orthogonal (defect {defect:.3e})")
    if target.det() > 0:
        return trotter_compile(target, eps, max_steps, order=order, tol=tol)
    report = trotter_compile(embed_with_ancilla(target), eps, max_steps, order=order, tol=tol)
    report.ancilla_used = True
    report.target_dim = target.dim
    return report


def compile_target(u, eps: float = DEFAULT_EPS, max_steps: int = DEFAULT_MAX_STEPS, **kwargs) -> SynthesisReport:
    """Dispatch on field: real targets go through :func:`orthogonal_compile`."""
    target = as_dense(u)
    if target.field is Field.REAL:
        return orthogonal_compile(target, eps, max_steps, **kwargs)
    return trotter_compile(target, eps, max_steps, **kwargs)

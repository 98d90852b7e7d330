"""Circuit IR: C-NOTs plus single-site gates on a register of fixed width.

Gates are immutable and hashable, so evaluators can cache their dense
embeddings. Site indices are 0-based in Python and 1-based in the text
format::

    C 4
    CNOT 1 4
    LOCAL 3 RY+
    LOCAL 4 EXP Z 0.69999999999999996
    R 2
    LOCAL 1 ROT -1.5707963267948966
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import FieldMismatchError, MalformedFileError
from .pauli import SITE_MATRICES, SYMBOLS, Field, LocalCliffordGate, local_clifford_names


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int

    def inverse(self) -> "CNOT":
        return self

    @property
    def sites(self) -> tuple[int, ...]:
        return (self.control, self.target)


@dataclass(frozen=True)
class Local:
    """A named Clifford-like single-site gate (see :class:`LocalCliffordGate`)."""

    site: int
    name: str

    def inverse(self) -> "Local":
        # Local names are unique across the two fields.
        for fld in Field:
            if self.name in local_clifford_names(fld):
                return Local(self.site, LocalCliffordGate(fld, self.name).inverse().name)
        raise ValueError(f"unknown local gate {self.name!r}")

    @property
    def sites(self) -> tuple[int, ...]:
        return (self.site,)


@dataclass(frozen=True)
class Exp:
    """Complex single-site exponential ``exp(i * angle * P)`` for ``P`` in X, Y, Z."""

    site: int
    axis: str
    angle: float

    def __post_init__(self):
        if self.axis not in ("X", "Y", "Z"):
            raise ValueError(f"axis must be X, Y or Z, got {self.axis!r}")

    def inverse(self) -> "Exp":
        return Exp(self.site, self.axis, -self.angle)

    @property
    def sites(self) -> tuple[int, ...]:
        return (self.site,)


@dataclass(frozen=True)
class Rot:
    """Real planar rotation ``exp(angle * Yt) = [[cos, sin], [-sin, cos]]``."""

    site: int
    angle: float

    def inverse(self) -> "Rot":
        return Rot(self.site, -self.angle)

    @property
    def sites(self) -> tuple[int, ...]:
        return (self.site,)


Gate = Union[CNOT, Local, Exp, Rot]


def local_matrix(gate: Gate, field: Field) -> np.ndarray:
    """The 2x2 matrix of a single-site gate."""
    if isinstance(gate, Local):
        return LocalCliffordGate(field, gate.name).matrix
    if isinstance(gate, Exp):
        p = SITE_MATRICES[Field.COMPLEX][SYMBOLS[Field.COMPLEX].index(gate.axis)]
        return np.cos(gate.angle) * np.eye(2) + 1j * np.sin(gate.angle) * p
    if isinstance(gate, Rot):
        c, s = np.cos(gate.angle), np.sin(gate.angle)
        return np.array([[c, s], [-s, c]])
    raise TypeError(f"{gate!r} is not a single-site gate")


def cnot_permutation(width: int, control: int, target: int) -> np.ndarray:
    """Row permutation of the C-NOT: basis index ``b`` maps to ``b ^ tbit`` when the control bit is set."""
    idx = np.arange(2**width)
    cbit = 1 << (width - 1 - control)
    tbit = 1 << (width - 1 - target)
    return np.where(idx & cbit, idx ^ tbit, idx)


def embed(gate: Gate, field: Field, width: int) -> np.ndarray:
    """Dense ``2**width`` matrix of a gate acting on the full register."""
    if isinstance(gate, CNOT):
        perm = cnot_permutation(width, gate.control, gate.target)
        return np.eye(2**width, dtype=field.dtype)[perm]
    g = local_matrix(gate, field)
    return np.kron(np.kron(np.eye(2**gate.site), g), np.eye(2 ** (width - gate.site - 1))).astype(field.dtype)


def is_reflection(gate: Gate, field: Field) -> bool:
    return isinstance(gate, Local) and field is Field.REAL and LocalCliffordGate(field, gate.name).determinant < 0


@dataclass
class Circuit:
    """Ordered gate list over a register of ``width`` systems.

    The first gate in the list is applied first, so it is the rightmost factor
    of the evaluated matrix product.
    """

    field: Field
    width: int
    gates: list[Gate] = dc_field(default_factory=list)

    def __post_init__(self):
        self.field = Field.parse(self.field)
        if self.width < 1:
            raise ValueError("circuit width must be >= 1")
        gates, self.gates = list(self.gates), []
        self.extend(gates)

    def _check(self, gate: Gate) -> None:
        for s in gate.sites:
            if not 0 <= s < self.width:
                raise IndexError(f"site {s} out of range for width {self.width}")
        if isinstance(gate, CNOT):
            if gate.control == gate.target:
                raise ValueError("C-NOT control and target must differ")
        elif isinstance(gate, Local):
            if gate.name not in local_clifford_names(self.field):
                raise FieldMismatchError(f"{gate.name!r} is not a {self.field.name} local gate")
            if self.width == 1 and is_reflection(gate, self.field):
                raise ValueError("determinant -1 locals are only admitted on registers of width >= 2")
        elif isinstance(gate, Exp):
            if self.field is not Field.COMPLEX:
                raise FieldMismatchError("EXP gates belong to complex circuits; use ROT for rebits")
        elif isinstance(gate, Rot):
            if self.field is not Field.REAL:
                raise FieldMismatchError("ROT gates belong to real circuits; use EXP for qubits")
        else:
            raise TypeError(f"not a gate: {gate!r}")

    def append(self, gate: Gate) -> None:
        self._check(gate)
        self.gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.field is not self.field or other.width != self.width:
            raise FieldMismatchError("can only concatenate circuits of the same field and width")
        out = Circuit(self.field, self.width)
        out.gates = self.gates + other.gates
        return out

    def __mul__(self, times: int) -> "Circuit":
        out = Circuit(self.field, self.width)
        out.gates = self.gates * times
        return out

    def inverse(self) -> "Circuit":
        out = Circuit(self.field, self.width)
        out.gates = [g.inverse() for g in reversed(self.gates)]
        return out

    @property
    def cnot_count(self) -> int:
        return sum(isinstance(g, CNOT) for g in self.gates)

    @property
    def local_count(self) -> int:
        return len(self.gates) - self.cnot_count

    def counts(self) -> dict[str, int]:
        """Gate counts keyed by kind (``CNOT``, ``LOCAL``, ``EXP``, ``ROT``)."""
        out = {"CNOT": 0, "LOCAL": 0, "EXP": 0, "ROT": 0}
        for g in self.gates:
            out[_KIND[type(g)]] += 1
        return out

    def to_text(self) -> str:
        return format_circuit(self)

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        return parse_circuit(text)


_KIND = {CNOT: "CNOT", Local: "LOCAL", Exp: "EXP", Rot: "ROT"}


def _num(x: float) -> str:
    return f"{x:.17g}"


def format_gate(g: Gate) -> str:
    if isinstance(g, CNOT):
        return f"CNOT {g.control + 1} {g.target + 1}"
    if isinstance(g, Local):
        return f"LOCAL {g.site + 1} {g.name}"
    if isinstance(g, Exp):
        return f"LOCAL {g.site + 1} EXP {g.axis} {_num(g.angle)}"
    return f"LOCAL {g.site + 1} ROT {_num(g.angle)}"


def format_circuit(c: Circuit) -> str:
    return "\n".join([f"{c.field.value} {c.width}", *map(format_gate, c.gates)]) + "\n"


def _parse_gate(tokens: list[str], lineno: int) -> Gate:
    def site(tok: str) -> int:
        return int(tok) - 1

    try:
        if tokens[0] == "CNOT" and len(tokens) == 3:
            return CNOT(site(tokens[1]), site(tokens[2]))
        if tokens[0] == "LOCAL":
            if len(tokens) == 3:
                return Local(site(tokens[1]), tokens[2])
            if len(tokens) == 5 and tokens[2] == "EXP":
                return Exp(site(tokens[1]), tokens[3], float(tokens[4]))
            if len(tokens) == 4 and tokens[2] == "ROT":
                return Rot(site(tokens[1]), float(tokens[3]))
    except ValueError as exc:
        raise MalformedFileError(f"line {lineno}: {exc}") from None
    raise MalformedFileError(f"line {lineno}: cannot parse gate {' '.join(tokens)!r}")


def parse_circuit(text: str) -> Circuit:
    lines = [(k, ln.split()) for k, ln in enumerate(text.splitlines(), start=1)]
    lines = [(k, t) for k, t in lines if t and not t[0].startswith("#")]
    if not lines:
        raise MalformedFileError("empty circuit file")
    k, head = lines[0]
    if len(head) != 2:
        raise MalformedFileError(f"line {k}: bad header; expected 'C width' or 'R width'")
    try:
        fld, width = Field.parse(head[0]), int(head[1])
        circ = Circuit(fld, width)
        for k, toks in lines[1:]:
            circ.append(_parse_gate(toks, k))
    except MalformedFileError:
        raise
    except (ValueError, IndexError) as exc:
        raise MalformedFileError(f"line {k}: {exc}") from None
    return circ


def read_circuit(path) -> Circuit:
    with open(path) as fh:
        return parse_circuit(fh.read())


def write_circuit(path, c: Circuit) -> None:
    with open(path, "w") as fh:
        fh.write(format_circuit(c))

"""Signed Pauli strings over the complex and the real single-site alphabets.

Complex sites carry one of ``I, X, Y, Z``. Real sites carry one of
``I, X, Yt, Z`` where ``Yt = [[0, 1], [-1, 0]]`` is the antisymmetric
generator of planar rotations; it is its own symbol and never a phase
times ``Y``, so real strings only ever need the phases ``+1`` and ``-1``.

Site codes are small integers (``0=I, 1=X, 2=Y|Yt, 3=Z``); the phase is
stored as the exponent ``k`` of ``i**k``.

Every symbolic rule here (site products, commutation, C-NOT and local
conjugation) is derived once at import time from the dense 2x2 / 4x4
matrices, so the tables cannot disagree with the matrix semantics. The
C-NOT is ``V|i>|j> = |i>|i xor j>`` with the control on the left.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldMismatchError

I_, X_, Y_, Z_ = 0, 1, 2, 3

_PHASES = (1, 1j, -1, -1j)


class Field(enum.Enum):
    """Scalar field of a register: qubits (complex) or rebits (real)."""

    COMPLEX = "C"
    REAL = "R"

    @property
    def dtype(self) -> type:
        return np.complex128 if self is Field.COMPLEX else np.float64

    @classmethod
    def parse(cls, value: "Field | str") -> "Field":
        if isinstance(value, Field):
            return value
        key = str(value).strip().upper()
        aliases = {"C": cls.COMPLEX, "COMPLEX": cls.COMPLEX, "R": cls.REAL, "REAL": cls.REAL}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown field {value!r}; expected C or R") from None


SYMBOLS = {
    Field.COMPLEX: ("I", "X", "Y", "Z"),
    Field.REAL: ("I", "X", "Yt", "Z"),
}

_SQ2 = 1 / np.sqrt(2)

SITE_MATRICES = {
    Field.COMPLEX: (
        np.eye(2, dtype=complex),
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ),
    Field.REAL: (
        np.eye(2),
        np.array([[0.0, 1.0], [1.0, 0.0]]),
        np.array([[0.0, 1.0], [-1.0, 0.0]]),
        np.array([[1.0, 0.0], [0.0, -1.0]]),
    ),
}

CNOT_MATRIX = np.eye(4)[[0, 1, 3, 2]]


def _complex_quarter(axis: int, sign: int) -> np.ndarray:
    # exp(sign * i*pi/4 * P) = (I + sign*i*P) / sqrt(2)
    eye, p = SITE_MATRICES[Field.COMPLEX][0], SITE_MATRICES[Field.COMPLEX][axis]
    return (eye + sign * 1j * p) * _SQ2


_HT = np.array([[1.0, -1.0], [1.0, 1.0]]) * _SQ2
_YT = SITE_MATRICES[Field.REAL][Y_]

# Named single-site gates that map every site symbol to +- a site symbol.
# Each entry: name -> (matrix, name of the inverse gate).
_LOCAL_GATES: dict[Field, dict[str, tuple[np.ndarray, str]]] = {
    Field.COMPLEX: {
        "H": (np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2, "H"),
        "RX+": (_complex_quarter(X_, +1), "RX-"),
        "RX-": (_complex_quarter(X_, -1), "RX+"),
        "RY+": (_complex_quarter(Y_, +1), "RY-"),
        "RY-": (_complex_quarter(Y_, -1), "RY+"),
        "RZ+": (_complex_quarter(Z_, +1), "RZ-"),
        "RZ-": (_complex_quarter(Z_, -1), "RZ+"),
    },
    Field.REAL: {
        "Ht": (_HT, "Htd"),
        "Htd": (_HT.T.copy(), "Ht"),
        "Yt": (_YT, "Ytd"),
        "Ytd": (_YT.T.copy(), "Yt"),
        "X": (SITE_MATRICES[Field.REAL][X_], "X"),
        "Z": (SITE_MATRICES[Field.REAL][Z_], "Z"),
    },
}


def _snap(m: np.ndarray) -> np.ndarray:
    """Round a matrix whose entries should be in {0, +-1, +-i}."""
    snapped = np.round(m.real) + 1j * np.round(m.imag)
    if np.abs(snapped - m).max() > 1e-12:
        raise AssertionError("matrix is not a signed monomial of units")
    return snapped


def _decompose_single(m: np.ndarray, field: Field) -> tuple[int, int]:
    """Write a 2x2 matrix as i**k * SITE_MATRICES[field][code]."""
    m = _snap(np.asarray(m, dtype=complex))
    for code, s in enumerate(SITE_MATRICES[field]):
        for k, ph in enumerate(_PHASES):
            if np.array_equal(m, ph * s):
                return k, code
    raise AssertionError(f"not a signed {field.name.lower()} site operator:\n{m}")


def _decompose_pair(m: np.ndarray, field: Field) -> tuple[int, int, int]:
    """Write a 4x4 matrix as i**k * (S_a kron S_b)."""
    m = _snap(np.asarray(m, dtype=complex))
    mats = SITE_MATRICES[field]
    for a, b in itertools.product(range(4), repeat=2):
        base = np.kron(mats[a], mats[b])
        for k, ph in enumerate(_PHASES):
            if np.array_equal(m, ph * base):
                return k, a, b
    raise AssertionError("not a signed two-site string")


def _build_tables():
    product, anticommute, cnot, local, square = {}, {}, {}, {}, {}
    for field in Field:
        mats = SITE_MATRICES[field]
        product[field] = {
            (a, b): _decompose_single(mats[a] @ mats[b], field)
            for a, b in itertools.product(range(4), repeat=2)
        }
        anticommute[field] = {
            (a, b): not np.allclose(mats[a] @ mats[b], mats[b] @ mats[a])
            for a, b in itertools.product(range(4), repeat=2)
        }
        square[field] = tuple(_PHASES[product[field][(a, a)][0]] for a in range(4))
        cnot[field] = {
            (a, b): _decompose_pair(CNOT_MATRIX @ np.kron(mats[a], mats[b]) @ CNOT_MATRIX.T, field)
            for a, b in itertools.product(range(4), repeat=2)
        }
        local[field] = {
            name: tuple(_decompose_single(g @ mats[a] @ g.conj().T, field) for a in range(4))
            for name, (g, _) in _LOCAL_GATES[field].items()
        }
    return product, anticommute, cnot, local, square


_PRODUCT, _ANTICOMMUTE, _CNOT_TABLE, _LOCAL_TABLE, _SQUARE = _build_tables()


@dataclass(frozen=True)
class SiteOp:
    """A single-site symbol of either alphabet."""

    field: Field
    code: int

    def __post_init__(self):
        if self.code not in range(4):
            raise ValueError(f"site code must be in 0..3, got {self.code}")

    @property
    def symbol(self) -> str:
        return SYMBOLS[self.field][self.code]

    @property
    def matrix(self) -> np.ndarray:
        return SITE_MATRICES[self.field][self.code].copy()

    @property
    def square_sign(self) -> int:
        """``+1`` if the operator squares to the identity, ``-1`` if to ``-I`` (real ``Yt``)."""
        return int(_SQUARE[self.field][self.code].real)


@dataclass(frozen=True)
class LocalCliffordGate:
    """A named single-site gate whose conjugation permutes site symbols up to sign.

    Complex: ``H`` and the quarter-turn exponentials ``RX+ = exp(+i pi/4 X)``,
    ``RX-``, ``RY+``, ``RY-``, ``RZ+``, ``RZ-``. Real: the rotation ``Ht``
    (exchanges ``X`` and ``Z`` up to sign), ``Yt``, their transposes ``Htd`` and
    ``Ytd``, and the reflections ``X`` and ``Z`` (determinant -1).
    """

    field: Field
    name: str

    def __post_init__(self):
        object.__setattr__(self, "field", Field.parse(self.field))
        if self.name not in _LOCAL_GATES[self.field]:
            raise ValueError(
                f"{self.name!r} is not a {self.field.name.lower()} local gate; "
                f"choose from {sorted(_LOCAL_GATES[self.field])}"
            )

    @property
    def matrix(self) -> np.ndarray:
        return _LOCAL_GATES[self.field][self.name][0].copy()

    def inverse(self) -> "LocalCliffordGate":
        return LocalCliffordGate(self.field, _LOCAL_GATES[self.field][self.name][1])

    @property
    def determinant(self) -> int:
        return int(round(np.linalg.det(self.matrix).real))

    def conjugate_code(self, code: int) -> tuple[int, int]:
        """Return ``(k, code')`` with ``g S g^dagger = i**k S'``."""
        return _LOCAL_TABLE[self.field][self.name][code]


def local_clifford_names(field: Field) -> tuple[str, ...]:
    return tuple(_LOCAL_GATES[Field.parse(field)])


_TOKEN = {
    Field.COMPLEX: re.compile(r"I|X|Y|Z"),
    Field.REAL: re.compile(r"Yt|I|X|Z"),
}
_PHASE_PREFIX = {"+": 0, "+i": 1, "-": 2, "-i": 3, "": 0}
_PHASE_TEXT = ("+", "+i", "-", "-i")


@dataclass(frozen=True)
class SignedPauliString:
    """``i**phase`` times a tensor product of site operators.

    Site 0 is the leftmost tensor factor (most significant bit of the
    computational-basis index).
    """

    field: Field
    codes: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, "field", Field.parse(self.field))
        object.__setattr__(self, "codes", tuple(int(c) for c in self.codes))
        object.__setattr__(self, "phase", int(self.phase) % 4)
        if not self.codes:
            raise ValueError("a Pauli string needs at least one site")
        if any(c not in range(4) for c in self.codes):
            raise ValueError(f"site codes must be in 0..3, got {self.codes}")
        if self.field is Field.REAL and self.phase % 2:
            raise ValueError("real strings only carry the phases +1 and -1")

    @classmethod
    def from_symbols(cls, field: Field | str, symbols: Sequence[str], phase: int = 0):
        field = Field.parse(field)
        lookup = {s: c for c, s in enumerate(SYMBOLS[field])}
        try:
            return cls(field, tuple(lookup[s] for s in symbols), phase)
        except KeyError as exc:
            raise ValueError(f"unknown {field.name.lower()} symbol {exc.args[0]!r}") from None

    @classmethod
    def single(cls, field: Field | str, n_sites: int, site: int, code: int, phase: int = 0):
        """The string with ``code`` at ``site`` and identities elsewhere."""
        codes = [I_] * n_sites
        codes[site] = code
        return cls(Field.parse(field), tuple(codes), phase)

    @classmethod
    def identity(cls, field: Field | str, n_sites: int):
        return cls(Field.parse(field), (I_,) * n_sites)

    @classmethod
    def parse(cls, text: str, field: Field | str) -> "SignedPauliString":
        """Parse ``+XIZY``, ``-iXZ`` or (real) ``-XYtZ``."""
        field = Field.parse(field)
        m = re.fullmatch(r"\s*([+-]i?)?([A-Za-z]+)\s*", text)
        if m is None:
            raise ValueError(f"cannot parse Pauli string {text!r}")
        prefix, body = m.group(1) or "", m.group(2)
        phase = _PHASE_PREFIX[prefix]
        symbols, pos = [], 0
        while pos < len(body):
            tok = _TOKEN[field].match(body, pos)
            if tok is None:
                raise ValueError(f"bad symbol at position {pos} of {body!r} for field {field.value}")
            symbols.append(tok.group(0))
            pos = tok.end()
        return cls.from_symbols(field, symbols, phase)

    def __str__(self) -> str:
        return _PHASE_TEXT[self.phase] + "".join(SYMBOLS[self.field][c] for c in self.codes)

    @property
    def n_sites(self) -> int:
        return len(self.codes)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(SYMBOLS[self.field][c] for c in self.codes)

    @property
    def site_ops(self) -> tuple[SiteOp, ...]:
        return tuple(SiteOp(self.field, c) for c in self.codes)

    @property
    def weight(self) -> int:
        return sum(c != I_ for c in self.codes)

    @property
    def coefficient(self) -> complex:
        return _PHASES[self.phase]

    @property
    def sign(self) -> int:
        """The phase as ``+1``/``-1``; raises for ``+-i``."""
        if self.phase % 2:
            raise ValueError(f"{self} has an imaginary phase")
        return 1 - self.phase

    def unsigned(self) -> "SignedPauliString":
        return SignedPauliString(self.field, self.codes, 0)

    def with_phase(self, phase: int) -> "SignedPauliString":
        return SignedPauliString(self.field, self.codes, phase)

    def __neg__(self) -> "SignedPauliString":
        return SignedPauliString(self.field, self.codes, self.phase + 2)

    def __mul__(self, other: "SignedPauliString") -> "SignedPauliString":
        return string_multiply(self, other)

    def to_matrix(self) -> np.ndarray:
        return to_matrix(self)

    @cached_property
    def _monomial(self) -> tuple[np.ndarray, np.ndarray]:
        # Every site matrix has one nonzero per row: row b -> column b ^ x.
        xmask = 0
        vals = np.ones(1, dtype=complex)
        for code in self.codes:
            m = SITE_MATRICES[self.field][code]
            x = 1 if code in (X_, Y_) else 0
            xmask = (xmask << 1) | x
            vals = np.kron(vals, np.array([m[0, x], m[1, 1 ^ x]], dtype=complex))
        cols = np.arange(vals.size) ^ xmask
        vals = vals * self.coefficient
        if self.field is Field.REAL:
            vals = vals.real
        return cols, vals


def _check_pair(a: SignedPauliString, b: SignedPauliString) -> None:
    if a.field is not b.field:
        raise FieldMismatchError(f"cannot combine {a.field.name} and {b.field.name} strings")
    if a.n_sites != b.n_sites:
        raise FieldMismatchError(f"length mismatch: {a.n_sites} vs {b.n_sites}")


def string_multiply(a: SignedPauliString, b: SignedPauliString) -> SignedPauliString:
    """Product ``a @ b`` with the accumulated phase."""
    _check_pair(a, b)
    table = _PRODUCT[a.field]
    phase = a.phase + b.phase
    codes = []
    for x, y in zip(a.codes, b.codes):
        k, c = table[(x, y)]
        phase += k
        codes.append(c)
    return SignedPauliString(a.field, tuple(codes), phase)


def commutes(a: SignedPauliString, b: SignedPauliString) -> bool:
    """True iff ``ab == ba``: the number of anticommuting site pairs is even."""
    _check_pair(a, b)
    table = _ANTICOMMUTE[a.field]
    return sum(table[(x, y)] for x, y in zip(a.codes, b.codes)) % 2 == 0


def _check_site(p: SignedPauliString, site: int) -> None:
    if not 0 <= site < p.n_sites:
        raise IndexError(f"site {site} out of range for {p.n_sites} sites")


def conjugate_by_cnot(p: SignedPauliString, control: int, target: int) -> SignedPauliString:
    """Return ``V p V^dagger`` for the C-NOT with the given (0-based) control and target."""
    _check_site(p, control)
    _check_site(p, target)
    if control == target:
        raise ValueError("control and target must differ")
    k, c, t = _CNOT_TABLE[p.field][(p.codes[control], p.codes[target])]
    codes = list(p.codes)
    codes[control], codes[target] = c, t
    return SignedPauliString(p.field, tuple(codes), p.phase + k)


def conjugate_by_local(
    p: SignedPauliString, site: int, gate: LocalCliffordGate | str
) -> SignedPauliString:
    """Return ``g p g^dagger`` for a named local gate acting on ``site``."""
    _check_site(p, site)
    if isinstance(gate, str):
        gate = LocalCliffordGate(p.field, gate)
    if gate.field is not p.field:
        raise FieldMismatchError(f"{gate.name} is a {gate.field.name} gate, string is {p.field.name}")
    k, c = gate.conjugate_code(p.codes[site])
    codes = list(p.codes)
    codes[site] = c
    return SignedPauliString(p.field, tuple(codes), p.phase + k)


def is_real_generator(p: SignedPauliString) -> bool:
    """True iff the real string has an odd number of ``Yt`` (i.e. is antisymmetric)."""
    if p.field is not Field.REAL:
        raise FieldMismatchError("is_real_generator only applies to real strings")
    return p.codes.count(Y_) % 2 == 1


def enumerate_basis(n_sites: int, field: Field | str) -> list[SignedPauliString]:
    """Lie-algebra basis strings (phase +1) in lexicographic symbol order.

    Complex: all ``4**N - 1`` non-identity strings, a basis of su(2^N) after
    multiplying by ``i``. Real: the ``2**(N-1) * (2**N - 1)`` strings with an
    odd number of ``Yt``, a basis of so(2^N).
    """
    field = Field.parse(field)
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    out = []
    for codes in itertools.product(range(4), repeat=n_sites):
        if field is Field.COMPLEX:
            keep = any(codes)
        else:
            keep = codes.count(Y_) % 2 == 1
        if keep:
            out.append(SignedPauliString(field, codes))
    return out


def to_matrix(p: SignedPauliString) -> np.ndarray:
    """Dense ``2**N x 2**N`` matrix (real dtype for real strings)."""
    mats = SITE_MATRICES[p.field]
    out = np.ones((1, 1), dtype=p.field.dtype)
    for code in p.codes:
        out = np.kron(out, mats[code])
    if p.field is Field.REAL:
        return out * p.sign
    return out * p.coefficient


def parse_strings(texts: Iterable[str], field: Field | str) -> list[SignedPauliString]:
    return [SignedPauliString.parse(t, field) for t in texts]

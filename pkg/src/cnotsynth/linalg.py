"""Field-tagged dense matrices and the Lie-group / Lie-algebra kernels on them.

Covers closed-form Pauli exponentials, principal logarithms of unitary and
special-orthogonal matrices, expansion of generators in the Pauli bases and
the global-phase-invariant distance used to accept compiled circuits.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np
import scipy.linalg

from .errors import (
    BranchCutWarning,
    DisconnectedComponentError,
    FieldMismatchError,
    MalformedFileError,
    NotAGeneratorError,
    NotUnitaryError,
)
from .pauli import Field, SignedPauliString, enumerate_basis, is_real_generator

UNITARY_TOL = 1e-9
DROP_TOL = 1e-12
BRANCH_TOL = 1e-8
MAX_SITES = 10


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    """A square ``2**N x 2**N`` matrix tagged with its field.

    The array is copied to the field's dtype on construction and made
    read-only. Real matrices refuse complex data with a nonzero imaginary part.
    """

    field: Field
    data: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        fld = Field.parse(self.field)
        arr = np.array(self.data)
        if fld is Field.REAL and np.iscomplexobj(arr):
            if np.abs(arr.imag).max(initial=0.0) > 0:
                raise FieldMismatchError("real matrix has nonzero imaginary part")
            arr = arr.real
        arr = np.array(arr, dtype=fld.dtype)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"matrix must be square, got shape {arr.shape}")
        dim = arr.shape[0]
        if dim < 1 or dim & (dim - 1):
            raise ValueError(f"dimension must be a power of two, got {dim}")
        if dim > 2**MAX_SITES:
            raise ValueError(f"dimension {dim} exceeds 2**{MAX_SITES}")
        arr.setflags(write=False)
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "data", arr)

    @classmethod
    def identity(cls, field: Field | str, n_sites: int) -> "DenseMatrix":
        return cls(Field.parse(field), np.eye(2**n_sites))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def n_sites(self) -> int:
        return self.dim.bit_length() - 1

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __repr__(self) -> str:
        return f"DenseMatrix(field={self.field.value}, dim={self.dim})"

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        other = as_dense(other, self.field)
        if other.dim != self.dim:
            raise FieldMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return DenseMatrix(self.field, self.data @ other.data)

    def adjoint(self) -> "DenseMatrix":
        return DenseMatrix(self.field, self.data.conj().T)

    def kron(self, other: "DenseMatrix") -> "DenseMatrix":
        other = as_dense(other, self.field)
        return DenseMatrix(self.field, np.kron(self.data, other.data))

    def det(self) -> complex | float:
        d = np.linalg.det(self.data)
        return float(d) if self.field is Field.REAL else complex(d)

    def unitarity_defect(self) -> float:
        """``||M^dagger M - I||_F``."""
        return float(np.linalg.norm(self.data.conj().T @ self.data - np.eye(self.dim)))

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        return self.unitarity_defect() <= tol


def as_dense(obj, field: Field | str | None = None) -> DenseMatrix:
    """Coerce an array or :class:`DenseMatrix` to a :class:`DenseMatrix`.

    Plain arrays get their field from ``field`` if given, otherwise from the
    dtype (complex dtype -> complex field, anything else -> real field).
    """
    if isinstance(obj, DenseMatrix):
        if field is not None and Field.parse(field) is not obj.field:
            raise FieldMismatchError(f"expected a {Field.parse(field).name} matrix, got {obj.field.name}")
        return obj
    arr = np.asarray(obj)
    if field is None:
        field = Field.COMPLEX if np.iscomplexobj(arr) else Field.REAL
    return DenseMatrix(Field.parse(field), arr)


def _require_unitary(m: DenseMatrix, tol: float) -> None:
    defect = m.unitarity_defect()
    if defect > tol:
        kind = "orthogonal" if m.field is Field.REAL else "unitary"
        raise NotUnitaryError(f"matrix is not {kind}: ||M^T M - I||_F = {defect:.3e} > {tol:.1e}")


def pauli_exp(p: SignedPauliString, t: float) -> DenseMatrix:
    """Closed-form exponential of a basis string.

    Complex: ``exp(i t P) = cos(t) I + i sin(t) P`` (``P**2 = I``).
    Real: ``exp(t G) = cos(t) I + sin(t) G`` (``G**2 = -I`` for odd-``Yt`` strings).
    """
    if p.phase != 0:
        raise ValueError(f"pauli_exp needs a +1-phase string, got {p}")
    mat = p.to_matrix()
    eye = np.eye(mat.shape[0])
    if p.field is Field.COMPLEX:
        return DenseMatrix(p.field, np.cos(t) * eye + 1j * np.sin(t) * mat)
    if not is_real_generator(p):
        raise NotAGeneratorError(f"{p} has an even number of Yt and is not antisymmetric")
    return DenseMatrix(p.field, np.cos(t) * eye + np.sin(t) * mat)


def unitary_log(u, tol: float = UNITARY_TOL) -> DenseMatrix:
    """Principal logarithm of a unitary matrix.

    Returns anti-Hermitian ``A`` with ``expm(A) == U`` and eigenphases in
    ``(-pi, pi]``. Uses the complex Schur form, which is diagonal for normal
    matrices and gives an orthonormal eigenbasis even for repeated
    eigenvalues. An eigenvalue at ``-1`` is resolved to phase ``+pi`` with a
    :class:`BranchCutWarning`.
    """
    u = as_dense(u, Field.COMPLEX) if not isinstance(u, DenseMatrix) else u
    if u.field is not Field.COMPLEX:
        u = DenseMatrix(Field.COMPLEX, u.data)
    _require_unitary(u, tol)
    t, q = scipy.linalg.schur(u.data, output="complex")
    lam = np.diag(t)
    phases = np.angle(lam)
    phases[phases <= -np.pi] = np.pi
    near = np.abs(lam + 1) < BRANCH_TOL
    if near.any():
        phases[near] = np.pi
        warnings.warn(
            f"{int(near.sum())} eigenvalue(s) at the -1 branch point; using phase +pi",
            BranchCutWarning,
            stacklevel=2,
        )
    a = (q * (1j * phases)) @ q.conj().T
    a = 0.5 * (a - a.conj().T)
    return DenseMatrix(Field.COMPLEX, a)


def orthogonal_log(o, tol: float = UNITARY_TOL) -> DenseMatrix:
    """Antisymmetric logarithm of a special orthogonal matrix.

    The real Schur form of an orthogonal matrix is block diagonal with 2x2
    rotation blocks and 1x1 blocks equal to +-1. Each rotation block yields an
    angle in ``(-pi, pi]``; the ``-1`` entries (an even number when the
    determinant is +1) are paired in index order into rotations by ``pi``,
    which is a branch choice and is reported with a :class:`BranchCutWarning`.
    """
    o = as_dense(o, Field.REAL)
    _require_unitary(o, tol)
    if o.det() < 0:
        raise DisconnectedComponentError(
            "determinant -1: no real logarithm exists; use orthogonal_compile, "
            "which embeds the target as I (x) O on one extra rebit"
        )
    t, q = scipy.linalg.schur(o.data, output="real")
    d = o.dim
    gen = np.zeros((d, d))
    minus = []
    branch = 0
    i = 0
    while i < d:
        if i + 1 < d and t[i + 1, i] != 0.0:
            cos = 0.5 * (t[i, i] + t[i + 1, i + 1])
            sin = 0.5 * (t[i, i + 1] - t[i + 1, i])
            theta = np.arctan2(sin, cos)
            if np.pi - abs(theta) < BRANCH_TOL:
                branch += 1
            gen[i, i + 1], gen[i + 1, i] = theta, -theta
            i += 2
        else:
            if t[i, i] < 0:
                minus.append(i)
            i += 1
    for a, b in zip(minus[::2], minus[1::2]):
        gen[a, b], gen[b, a] = np.pi, -np.pi
        branch += 1
    if branch:
        warnings.warn(
            f"{branch} rotation plane(s) at angle pi; canonical pairing chosen",
            BranchCutWarning,
            stacklevel=2,
        )
    a = q @ gen @ q.T
    return DenseMatrix(Field.REAL, 0.5 * (a - a.T))


@dataclass(frozen=True)
class GeneratorDecomposition:
    """Coordinates of a Lie-algebra element in the Pauli basis.

    Complex: ``A = sum_P c_P (i P)``. Real: ``A = sum_G c_G G``.
    Keys are +1-phase basis strings; coefficients are real.
    """

    field: Field
    n_sites: int
    terms: dict[SignedPauliString, float]

    def sorted_terms(self) -> list[tuple[SignedPauliString, float]]:
        """Terms in lexicographic order of their site symbols (``I < X < Y < Z``)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].codes)

    def to_matrix(self) -> DenseMatrix:
        d = 2**self.n_sites
        out = np.zeros((d, d), dtype=self.field.dtype)
        rows = np.arange(d)
        unit = 1j if self.field is Field.COMPLEX else 1.0
        for p, c in self.terms.items():
            cols, vals = p._monomial
            out[rows, cols] += unit * c * vals
        return DenseMatrix(self.field, out)


def pauli_expand(a, field: Field | str | None = None, drop_tol: float = DROP_TOL,
                 tol: float = UNITARY_TOL) -> GeneratorDecomposition:
    """Expand a traceless anti-Hermitian (complex) or antisymmetric (real) matrix.

    Coefficients are ``Im tr(P^dagger A) / 2**N`` (complex, i.e.
    ``Re tr((iP)^dagger A) / 2**N``) and ``tr(G^T A) / 2**N`` (real). Terms with
    ``|c| <= drop_tol`` are omitted.
    """
    a = as_dense(a, field)
    arr = a.data
    d = a.dim
    scale = max(1.0, float(np.linalg.norm(arr)))
    if np.linalg.norm(arr + arr.conj().T) > tol * scale:
        kind = "anti-Hermitian" if a.field is Field.COMPLEX else "antisymmetric"
        raise NotAGeneratorError(f"matrix is not {kind}")
    if abs(np.trace(arr)) > tol * scale:
        raise NotAGeneratorError(f"matrix is not traceless (trace {np.trace(arr):.3e})")
    rows = np.arange(d)
    terms = {}
    for p in enumerate_basis(a.n_sites, a.field):
        cols, vals = p._monomial
        inner = np.sum(np.conj(vals) * arr[rows, cols])
        c = float(inner.imag if a.field is Field.COMPLEX else inner.real) / d
        if abs(c) > drop_tol:
            terms[p] = c
    return GeneratorDecomposition(a.field, a.n_sites, terms)


def phase_invariant_distance(u, w) -> float:
    """Frobenius distance minimized over a global phase.

    Complex: ``min_phi ||U - e^{i phi} W||_F``, equal to
    ``sqrt(2 dim - 2 |tr(W^dagger U)|)`` for unitaries; computed directly as a
    norm at the optimal phase for numerical stability. Real: minimum over
    ``+1`` and ``-1``.
    """
    u = as_dense(u)
    w = as_dense(w, u.field) if not isinstance(w, DenseMatrix) else w
    if u.field is not w.field:
        raise FieldMismatchError(f"field mismatch: {u.field.name} vs {w.field.name}")
    if u.dim != w.dim:
        raise FieldMismatchError(f"dimension mismatch: {u.dim} vs {w.dim}")
    return _distance(u.data, w.data, u.field)


def optimal_phase(u: np.ndarray, w: np.ndarray, field: Field) -> complex | float:
    """The phase ``phi`` minimizing ``||U - phi W||_F`` (``+-1`` for real)."""
    inner = np.vdot(w, u)  # tr(W^dagger U)
    if field is Field.REAL:
        return 1.0 if inner.real >= 0 else -1.0
    mag = abs(inner)
    return inner / mag if mag > 0 else 1.0


def _distance(u: np.ndarray, w: np.ndarray, field: Field) -> float:
    return float(np.linalg.norm(u - optimal_phase(u, w, field) * w))


# Matrix text format: header "C 4" / "R 8", then one row per line. Complex
# entries are written as two tokens (real part, imaginary part).

def _num(x: float) -> str:
    return f"{x:.17g}"


def format_matrix(m: DenseMatrix) -> str:
    lines = [f"{m.field.value} {m.dim}"]
    for row in m.data:
        if m.field is Field.COMPLEX:
            tokens = [t for z in row for t in (_num(z.real), _num(z.imag))]
        else:
            tokens = [_num(x) for x in row]
        lines.append(" ".join(tokens))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> DenseMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MalformedFileError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise MalformedFileError(f"bad header {lines[0]!r}; expected 'C dim' or 'R dim'")
    try:
        fld = Field.parse(head[0])
        dim = int(head[1])
    except ValueError as exc:
        raise MalformedFileError(f"bad header {lines[0]!r}: {exc}") from None
    if dim < 1 or dim & (dim - 1):
        raise MalformedFileError(f"dimension {dim} is not a power of two")
    if len(lines) - 1 != dim:
        raise MalformedFileError(f"expected {dim} rows, found {len(lines) - 1}")
    width = 2 * dim if fld is Field.COMPLEX else dim
    rows = []
    for k, ln in enumerate(lines[1:], start=2):
        tokens = ln.split()
        if len(tokens) != width:
            raise MalformedFileError(f"line {k}: expected {width} entries, found {len(tokens)}")
        try:
            vals = np.array([float(t) for t in tokens])
        except ValueError:
            raise MalformedFileError(f"line {k}: non-numeric entry") from None
        rows.append(vals[0::2] + 1j * vals[1::2] if fld is Field.COMPLEX else vals)
    return DenseMatrix(fld, np.array(rows))


def read_matrix(path) -> DenseMatrix:
    with open(path) as fh:
        return parse_matrix(fh.read())


def write_matrix(path, m: DenseMatrix) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(as_dense(m)))

"""Synthesis of qubit and rebit transformations from C-NOT and single-site gates."""
from .circuit import CNOT, Circuit, Exp, Local, Rot, parse_circuit, read_circuit, write_circuit
from .errors import (
    BranchCutWarning,
    DisconnectedComponentError,
    FieldMismatchError,
    MalformedFileError,
    NotAGeneratorError,
    NotUnitaryError,
    SynthesisError,
)
from .linalg import (
    DenseMatrix,
    GeneratorDecomposition,
    as_dense,
    orthogonal_log,
    parse_matrix,
    pauli_exp,
    pauli_expand,
    phase_invariant_distance,
    read_matrix,
    unitary_log,
    write_matrix,
)
from .pauli import (
    Field,
    LocalCliffordGate,
    SignedPauliString,
    SiteOp,
    commutes,
    conjugate_by_cnot,
    conjugate_by_local,
    enumerate_basis,
    is_real_generator,
    string_multiply,
    to_matrix,
)
from .synthesis import (
    ConjugationWord,
    SynthesisReport,
    compile_target,
    orthogonal_compile,
    pauli_exponential_circuit,
    reduce_to_pivot,
    reversed_cnot_circuit,
    swap_circuit,
    trotter_compile,
)
from .verification import (
    determinant_parity_check,
    evaluate_circuit,
    generated_algebra_dimension,
    verify_circuit,
)

__version__ = "0.1.0"

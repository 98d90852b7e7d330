"""Exception and warning types raised across the package."""


class SynthesisError(Exception):
    """Base class for all package errors."""


class FieldMismatchError(SynthesisError, ValueError):
    """Operands belong to different fields (complex vs. real) or have mismatched sizes."""


class NotUnitaryError(SynthesisError, ValueError):
    """A matrix failed the unitarity / orthogonality admission check."""


class NotAGeneratorError(SynthesisError, ValueError):
    """A matrix or string is not an element of the expected Lie algebra."""


class DisconnectedComponentError(SynthesisError, ValueError):
    """Real target with determinant -1: unreachable by exponentials or by
    C-NOT plus local circuits on the same register. Use
    :func:`cnotsynth.synthesis.orthogonal_compile`, which adds an ancilla rebit.
    """


class MalformedFileError(SynthesisError, ValueError):
    """A matrix or circuit text file could not be parsed."""


class BranchCutWarning(RuntimeWarning):
    """A logarithm hit the -1 branch point and a canonical branch was chosen."""

"""Exception hierarchy shared by the whole package.

Math-level failures (singular matrices, gauge preconditions, refused
degenerate inputs) are kept separate from parse-level failures so the CLI
can map them to distinct exit codes.
"""


class WilcError(Exception):
    """Base class for all package errors."""


class MathError(WilcError):
    """A computation was refused or is impossible; CLI exit code 3."""


class ParseError(WilcError):
    """A spec file or expression failed to parse; CLI exit code 2."""


class RingMismatch(MathError):
    """Operands live in different coefficient rings."""


class SingularMatrix(MathError):
    """Matrix with identically vanishing determinant was inverted."""


class SingularForm(MathError):
    """A form required to be invertible is identically zero/singular."""


class NotMonic(MathError):
    """Operator has non-unit leading coefficient and auto-normalize is off."""


class SingularLeading(MathError):
    """Leading coefficient is not invertible, so it cannot be normalized."""


class NotOperGauge(MathError):
    """The closed reparametrization law needs a_1 = 0."""


class ConstantMap(MathError):
    """A reparametrization must be a nonconstant rational map."""


class DegenerateWronskian(MathError):
    """Solution tuple has identically vanishing Wronskian."""


class NonConstantCoefficients(MathError):
    """Hilbert-style constant-coefficient invariants need D-constant input."""


class UnsupportedOrder(MathError):
    """Requested invariant is not defined for this operator order."""


class PochhammerZero(MathError):
    """A Pochhammer denominator in the h_m extraction vanishes (monic limit)."""


class ZeroWeight(MathError):
    """Maurer-Cartan connections need a nonzero declared weight."""


class ZeroEccentricity(MathError):
    """Siegel covariant raising needs eccentricity e != 0."""


class WeightMismatch(MathError):
    """Declared weights are inconsistent with the requested operation."""


class InhomogeneousForm(MathError):
    """A weight-homogeneous quasimodular value was required."""


class DegenerateJ(MathError):
    """det(CZ + D) vanishes identically for the supplied matrix."""


class IndexRange(MathError):
    """A covariant index k or derivative order is out of range."""


class SpecSyntax(ParseError):
    """Syntax error in an operator spec file, with position information."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class UndeclaredRing(ParseError):
    """Coefficients appeared before a ring declaration, or an unknown ring."""


class CoefficientOutOfRange(ParseError):
    """Operator order or coefficient index outside the allowed range."""

"""Exception hierarchy for the dynir package.

Every contract violation raises a named subclass of DynirError so callers
can catch the whole family or a specific condition.
"""


class DynirError(Exception):
    """Base class for all dynir errors."""


# --- field construction ---------------------------------------------------

class CompositeCharacteristic(DynirError):
    """The requested characteristic is not prime."""


class DegreeZero(DynirError):
    """A tower step was requested with degree < 1."""


class BadModulus(DynirError):
    """A tower modulus is not monic or not irreducible."""


class FieldMismatch(DynirError):
    """Operands belong to different fields or incompatible tower levels."""


class DivisionByZero(DynirError, ZeroDivisionError):
    """Division or inversion of the zero element."""


class EvenCharacteristic(DynirError):
    """Operation requires odd characteristic."""


class CharacteristicThree(DynirError):
    """Operation is undefined in characteristic three."""


class ExponentSharesCharacteristic(DynirError):
    """Power-residue exponent r is divisible by the characteristic."""


# --- polynomial ring ------------------------------------------------------

class ZeroPolynomial(DynirError):
    """The zero polynomial is not a valid argument here."""


class ConstantPolynomial(DynirError):
    """A nonconstant polynomial is required."""


class ZeroScale(DynirError):
    """Affine conjugation requires a nonzero scale factor."""


class VanishingDerivative(DynirError):
    """Discriminant of an inseparable polynomial was requested."""


class ReducibleG(DynirError):
    """The outer polynomial of a composition test must be irreducible."""


# --- unicritical tests ----------------------------------------------------

class CharacteristicDividesDegree(DynirError):
    """Critical-point detection needs gcd(degree, characteristic) = 1."""


class NotCentered(DynirError):
    """Polynomial is not of the centered shape a*x^d + c."""


class HypothesisFailure(DynirError):
    """Field cardinality fails a congruence hypothesis of the criterion."""


class PreviousIterateReducible(DynirError):
    """A step test was invoked although the previous iterate is reducible."""


# --- cubic tests ----------------------------------------------------------

class CharacteristicLEQ3(DynirError):
    """Cubic criteria require characteristic > 3."""


class BothCoefficientsZero(DynirError):
    """The cubic x^3 has no meaningful residue test."""


class InseparableDerivative(DynirError):
    """Critical points are undefined: the derivative vanishes."""


class SquareRootMissing(DynirError):
    """The square condition failed, so the required square root is absent."""


class TowerBuildFailure(DynirError):
    """A tower level could not be built: the previous iterate is reducible."""


class ConstantDerivative(DynirError):
    """The parity criterion needs a nonconstant derivative."""


# --- linearized polynomials -----------------------------------------------

class MalformedShape(DynirError):
    """Polynomial is not of the shape a_p*x^p - a_1*x - a_0."""


class ReducibleInput(DynirError):
    """Operation requires an irreducible input polynomial."""


class NoWitnessA(DynirError):
    """No element A with A^(p-1) = a_1 exists in the field."""


class ExcludedG(DynirError):
    """The seed polynomial x +/- 2 is excluded from the tower family."""


# --- cli ------------------------------------------------------------------

class UnknownFamily(DynirError):
    """Unknown search family name."""

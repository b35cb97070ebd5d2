"""Exception hierarchy shared by all frobranch modules."""


class FrobranchError(Exception):
    """Base class for all errors raised by this package."""


class CompositeCharacteristic(FrobranchError):
    """The requested characteristic is not a prime number."""


class ReducibleModulus(FrobranchError):
    """The modulus supplied for a field extension is not irreducible."""


class FieldMismatch(FrobranchError):
    """Two operands belong to different coefficient fields."""


class ZeroPolynomial(FrobranchError):
    """An operation that requires a nonzero polynomial received zero."""


class NotOneDimensional(FrobranchError):
    """The Hilbert function failed to stabilize within the degree cap."""


class NoReductionFound(FrobranchError):
    """No linear form multiplies the graded pieces onto each other, even
    after scalar extension up to the configured degree."""

    def __init__(self, s_max: int):
        super().__init__(f"no linear reduction found with scalar extension degree <= {s_max}")
        self.s_max = s_max


class PowerVanishes(FrobranchError):
    """The tested power of the linear form is zero in the quotient ring."""


class DegreeCapExceeded(FrobranchError):
    """A Frobenius-power probe would exceed the configured total-degree cap."""


class NotSquarefree(FrobranchError):
    """A polynomial that must be squarefree has a repeated factor."""


class DimensionCapExceeded(FrobranchError):
    """The ambient dimension exceeds the configured cap for cone geometry."""


class BasisNotClosed(FrobranchError):
    """The candidate Hilbert basis does not generate every enumerated
    saturation point; the enumeration box was too small."""


class NotFNilpotentRing(FrobranchError):
    """A tight-closure shortcut was requested for a ring whose F-nilpotency
    report is not FNilpotent."""


class CapExceeded(FrobranchError):
    """An exponent search cap is too small to certify the answer."""


class FieldTooLarge(FrobranchError):
    """The extension field is too large for the dense table-driven kernels."""


class ParseError(FrobranchError):
    """Input text could not be parsed; carries the offending position."""

    def __init__(self, position: int, expected: str):
        super().__init__(f"parse error at position {position}: expected {expected}")
        self.position = position
        self.expected = expected


class UnsupportedMode(FrobranchError):
    """The requested analysis mode does not exist."""

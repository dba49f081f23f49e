"""Exception hierarchy shared by all gwtrop modules."""


class GWTropError(Exception):
    """Base class for every error raised by gwtrop."""


class FieldError(GWTropError):
    pass


class ZeroElement(FieldError):
    """A unit was required but zero was given."""


class FieldMismatch(FieldError):
    """Operands live over different fields, or a value is not representable."""


class UnsupportedField(FieldError):
    pass


class DegenerateForm(GWTropError):
    """A symmetric bilinear form has zero determinant."""


class GeometryError(GWTropError):
    pass


class DimensionUnsupported(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


class SingularMatrix(GeometryError):
    pass


class NonTransverse(GWTropError):
    """The hypersurfaces do not meet tropically transversely.

    Perturbing the lifts usually fixes this.
    """


class CharacteristicDividesMultiplicity(NonTransverse):
    pass


class NotACorner(GWTropError):
    pass


class SingularSystem(GWTropError):
    pass


class NonEtale(GWTropError):
    pass


class InputError(GWTropError):
    """Malformed problem file or command-line value."""

"""Exception hierarchy shared by all urncalc modules."""


class UrnError(ValueError):
    """Base class for all domain errors raised by urncalc."""


class SingularMatrix(UrnError):
    pass


class DimensionMismatch(UrnError):
    pass


class NotSubMultiset(UrnError):
    pass


class NotFullSupport(UrnError):
    pass


class EmptyMultiset(UrnError):
    pass


class Overdraw(UrnError):
    pass


class DomainMismatch(UrnError):
    pass


class NotOnSimplex(UrnError):
    pass


class NotNormalised(UrnError):
    """A signed distribution or density whose total mass is not exactly 1."""


class DegreeTooSmall(UrnError):
    pass


class IndexOutOfRange(UrnError):
    pass


class IdentityViolation(AssertionError):
    """An identity that must hold exactly failed; signals an implementation bug."""


class SumNotConstant(IdentityViolation):
    pass

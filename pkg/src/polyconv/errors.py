"""Exception types shared across the package."""


class PolyconvError(Exception):
    """Base class for all polyconv errors."""


class BackendMismatchError(PolyconvError):
    """Arithmetic attempted between scalars of different backends."""


class NonTerminatingSeriesError(PolyconvError):
    """No numerator parameter of a pFq is a nonpositive integer."""


class DenominatorPoleError(PolyconvError):
    """A denominator Pochhammer of a terminating pFq vanishes before the
    series terminates."""


class NonIntegerGapError(PolyconvError):
    """Gamma-quotient arguments cannot be paired with integer gaps."""


class GammaPoleError(PolyconvError):
    """A gamma quotient has an unmatched pole at a nonpositive integer."""


class IndexOutOfRangeError(PolyconvError):
    """An index argument lies outside its documented range."""


class IndexContractError(PolyconvError):
    """A piecewise formula was called outside its validity region."""


class MissingDataError(PolyconvError):
    """A generic basis table lacks a required entry."""


class FamilyMismatchError(PolyconvError):
    """Two series that must share a polynomial family do not."""

"""Dual-backend scalar arithmetic and combinatorial primitives.

Every coefficient in this package is a :class:`Scalar`: either an exact
rational (arbitrary-size integers, the default) or a binary float of
declared precision backed by mpmath.  The backends never mix silently;
combining scalars from different backends raises
:class:`~polyconv.errors.BackendMismatchError`.  Plain ``int`` and
``Fraction`` operands are coerced, since they are exact in both backends.

On top of the scalar type sit the primitives every coefficient formula is
built from: rising factorials (Pochhammer symbols), terminating generalized
hypergeometric sums, and gamma-quotient reduction to Pochhammer products so
the rational backend never needs a transcendental gamma.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import (
    BackendMismatchError,
    DenominatorPoleError,
    GammaPoleError,
    NonIntegerGapError,
    NonTerminatingSeriesError,
)


class RationalBackend:
    """Exact arithmetic over ``fractions.Fraction`` (closed, no rounding)."""

    name = "rational"

    def make(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.backend == self:
                return value
            raise BackendMismatchError(
                f"cannot reinterpret {value.backend.name} scalar as rational; "
                "convert explicitly"
            )
        if isinstance(value, (int, Fraction)):
            return Scalar(self, Fraction(value))
        if isinstance(value, str):
            return Scalar(self, Fraction(value))
        raise TypeError(f"cannot build a rational scalar from {value!r}")

    def zero(self) -> "Scalar":
        return Scalar(self, Fraction(0))

    def one(self) -> "Scalar":
        return Scalar(self, Fraction(1))

    def __eq__(self, other):
        return isinstance(other, RationalBackend)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalBackend()"


class FloatBackend:
    """Binary floats of fixed precision (bits); operations round to it."""

    def __init__(self, precision: int = 256):
        if precision < 53:
            raise ValueError("float backend precision must be at least 53 bits")
        self.precision = precision

    @property
    def name(self) -> str:
        return f"float:{self.precision}"

    def make(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.backend == self:
                return value
            if isinstance(value.value, Fraction):
                return self._from_fraction(value.value)
            raise BackendMismatchError(
                f"cannot reinterpret {value.backend.name} scalar at precision "
                f"{self.precision}; convert explicitly"
            )
        if isinstance(value, int):
            with mpmath.workprec(self.precision):
                return Scalar(self, mpmath.mpf(value))
        if isinstance(value, Fraction):
            return self._from_fraction(value)
        if isinstance(value, str):
            return self._from_fraction(Fraction(value))
        raise TypeError(f"cannot build a float scalar from {value!r}")

    def _from_fraction(self, fr: Fraction) -> "Scalar":
        with mpmath.workprec(self.precision):
            return Scalar(self, mpmath.mpf(fr.numerator) / fr.denominator)

    def zero(self) -> "Scalar":
        return Scalar(self, mpmath.mpf(0))

    def one(self) -> "Scalar":
        return Scalar(self, mpmath.mpf(1))

    def __eq__(self, other):
        return isinstance(other, FloatBackend) and other.precision == self.precision

    def __hash__(self):
        return hash(("float", self.precision))

    def __repr__(self):
        return f"FloatBackend({self.precision})"


RATIONAL = RationalBackend()


class Scalar:
    """A number in a fixed backend.  Immutable and hashable."""

    __slots__ = ("backend", "value")

    def __init__(self, backend, value):
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- coercion ---------------------------------------------------------

    def _other(self, other):
        """Return the raw backend value of `other`, or None if unsupported."""
        if isinstance(other, Scalar):
            if other.backend != self.backend:
                raise BackendMismatchError(
                    f"mixed-backend arithmetic: {self.backend.name} with "
                    f"{other.backend.name}"
                )
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if isinstance(self.backend, RationalBackend):
                return other
            return self.backend.make(other).value
        return None

    def _binop(self, other, op):
        v = self._other(other)
        if v is None:
            return NotImplemented
        if isinstance(self.backend, FloatBackend):
            with mpmath.workprec(self.backend.precision):
                return Scalar(self.backend, op(self.value, v))
        return Scalar(self.backend, op(self.value, v))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: b / a)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if isinstance(self.backend, FloatBackend):
            with mpmath.workprec(self.backend.precision):
                return Scalar(self.backend, self.value ** exponent)
        return Scalar(self.backend, self.value ** exponent)

    def __neg__(self):
        return Scalar(self.backend, -self.value)

    def __abs__(self):
        return Scalar(self.backend, abs(self.value))

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar) and other.backend != self.backend:
            return False
        try:
            v = self._other(other)
        except BackendMismatchError:
            return False
        if v is None:
            return NotImplemented
        return self.value == v

    def __lt__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self.value < v

    def __le__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self.value <= v

    def __gt__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self.value > v

    def __ge__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self.value >= v

    def __hash__(self):
        return hash((self.backend, self.value))

    def __bool__(self):
        return self.value != 0

    # -- conversions ------------------------------------------------------

    def is_integer(self) -> bool:
        if isinstance(self.value, Fraction):
            return self.value.denominator == 1
        return mpmath.isint(self.value)

    def as_fraction(self) -> Fraction:
        """Exact rational value (every binary float is a dyadic rational)."""
        if isinstance(self.value, Fraction):
            return self.value
        sign, man, exp, _ = self.value._mpf_
        fr = Fraction(man) * Fraction(2) ** exp
        return -fr if sign else fr

    def to_backend(self, backend) -> "Scalar":
        """Explicit conversion; rational -> float rounds, float -> rational
        is exact."""
        if backend == self.backend:
            return self
        return backend.make(self.as_fraction())

    def __float__(self):
        return float(self.value)

    def __str__(self):
        if isinstance(self.value, Fraction):
            return str(self.value)
        dps = int(self.backend.precision * 0.30103) + 3
        return mpmath.nstr(self.value, dps)

    def __repr__(self):
        return f"Scalar({self.backend.name}, {self})"


def as_scalar(value, backend=RATIONAL) -> Scalar:
    """Coerce ints, Fractions, strings, or scalars into `backend`."""
    return backend.make(value)


def _backend_of(*values):
    for v in values:
        if isinstance(v, Scalar):
            return v.backend
    return RATIONAL


def as_integer(value):
    """The exact integer a value represents, or None.

    Works for ints, integral Fractions, integral rational scalars, and
    integral binary floats (dyadic, so the test is exact).
    """
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else None
    if isinstance(value, Scalar):
        if isinstance(value.value, Fraction):
            v = value.value
            return v.numerator if v.denominator == 1 else None
        return int(value.value) if mpmath.isint(value.value) else None
    return None


# ---------------------------------------------------------------------------
# rising factorials and factorials
# ---------------------------------------------------------------------------


def pochhammer(z, n: int) -> Scalar:
    """Rising factorial (z)_n = z (z+1) ... (z+n-1), with (z)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer order must be nonnegative")
    backend = _backend_of(z)
    z = backend.make(z)
    acc = backend.one()
    for step in range(n):
        acc = acc * (z + step)
    return acc


def factorial(n: int) -> int:
    return math.factorial(n)


def gamma_quotient(top, gap: int) -> Scalar:
    """Gamma(top) / Gamma(top + gap) for an integer gap, as a Pochhammer
    product.

    Raises GammaPoleError when the quotient itself has a pole (numerator
    gamma at a nonpositive integer not cancelled by the denominator).
    A pole in the denominator gamma alone yields an exact zero.
    """
    backend = _backend_of(top)
    top = backend.make(top)
    if gap >= 0:
        den = pochhammer(top, gap)
        if den == 0:
            raise GammaPoleError(
                f"gamma quotient pole: ({top})_{gap} vanishes"
            )
        return backend.one() / den
    return pochhammer(top + gap, -gap)


# ---------------------------------------------------------------------------
# terminating generalized hypergeometric series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PFQSpec:
    """Parameters of a terminating pFq evaluated at `argument`."""

    numerator_params: tuple
    denominator_params: tuple
    argument: Scalar


def hyp_pfq_terminating(spec: PFQSpec) -> Scalar:
    """Sum a terminating pFq term by term with a running-term ratio.

    The series must terminate: some numerator parameter is a nonpositive
    integer -t, and the sum runs over k = 0..t.  A denominator parameter
    hitting zero before termination raises DenominatorPoleError.
    """
    backend = _backend_of(spec.argument, *spec.numerator_params,
                          *spec.denominator_params)
    x = backend.make(spec.argument)
    nums = [backend.make(a) for a in spec.numerator_params]
    dens = [backend.make(b) for b in spec.denominator_params]

    t = None
    for a in nums:
        ia = as_integer(a)
        if ia is not None and ia <= 0 and (t is None or -ia < t):
            t = -ia
    if t is None:
        raise NonTerminatingSeriesError(
            "no numerator parameter is a nonpositive integer"
        )
    for b in dens:
        ib = as_integer(b)
        if ib is not None and ib <= 0 and -ib <= t - 1:
            raise DenominatorPoleError(
                f"denominator parameter {b} vanishes at k = {-ib} <= {t - 1}"
            )

    one = backend.one()
    term = one
    total = one
    for k in range(t):
        for a in nums:
            term = term * (a + k)
        for b in dens:
            term = term / (b + k)
        term = term * x / (k + 1)
        total = total + term
    return total


def hyp_pfq(numerator_params, denominator_params, argument) -> Scalar:
    """Convenience wrapper building a PFQSpec."""
    backend = _backend_of(argument, *numerator_params, *denominator_params)
    return hyp_pfq_terminating(
        PFQSpec(tuple(numerator_params), tuple(denominator_params),
                backend.make(argument))
    )


# ---------------------------------------------------------------------------
# gamma-quotient reduction
# ---------------------------------------------------------------------------


def _fraction_part_key(s: Scalar):
    if isinstance(s.value, Fraction):
        v = s.value
        return v - math.floor(v)
    return s.value - mpmath.floor(s.value)


def gamma_ratio(num, den) -> Scalar:
    """prod Gamma(num_i) / prod Gamma(den_i), reduced exactly.

    Arguments are paired between numerator and denominator so that each
    pair differs by an integer; each pair then reduces to a Pochhammer
    product.  NonIntegerGapError is raised when no full pairing exists.
    An uncancelled numerator pole raises GammaPoleError; a denominator
    pole alone makes the whole quotient exactly zero.
    """
    backend = _backend_of(*num, *den)
    nums = [backend.make(u) for u in num]
    dens = [backend.make(v) for v in den]
    if len(nums) != len(dens):
        raise NonIntegerGapError(
            "gamma quotient needs equally many numerator and denominator "
            "arguments to pair"
        )

    groups = {}
    for u in nums:
        groups.setdefault(_fraction_part_key(u), [[], []])[0].append(u)
    for v in dens:
        groups.setdefault(_fraction_part_key(v), [[], []])[1].append(v)

    pairs = []
    for key, (us, vs) in groups.items():
        if len(us) != len(vs):
            raise NonIntegerGapError(
                f"cannot pair gamma arguments with integer gaps "
                f"(fractional class {key} is unbalanced)"
            )
        us.sort(reverse=True)
        vs.sort(reverse=True)
        pairs.extend(zip(us, vs))

    factors = []
    saw_zero = False
    for u, v in pairs:
        gap = as_integer(u - v)
        if gap is None:
            raise NonIntegerGapError(f"gamma arguments {u} and {v} differ by "
                                     "a non-integer")
        if gap >= 0:
            p = pochhammer(v, gap)
            if p == 0:
                saw_zero = True
            else:
                factors.append((p, False))
        else:
            p = pochhammer(u, -gap)
            if p == 0:
                raise GammaPoleError(
                    f"unmatched gamma pole at nonpositive integer: "
                    f"Gamma({u}) / Gamma({v})"
                )
            factors.append((p, True))
    if saw_zero:
        return backend.zero()
    out = backend.one()
    for p, invert in factors:
        out = out / p if invert else out * p
    return out


def log10_abs(s: Scalar) -> float:
    """log10 |s| as a machine float; -inf for zero.  Exact-integer logs are
    used for rationals so huge magnitudes cannot overflow."""
    if s == 0:
        return float("-inf")
    if isinstance(s.value, Fraction):
        v = abs(s.value)
        return (math.log10(v.numerator) - math.log10(v.denominator))
    with mpmath.workprec(s.backend.precision):
        return float(mpmath.log10(abs(s.value)))

"""Real and complex ball arithmetic with guaranteed containment.

A :class:`RealBall` encloses a set of reals, a :class:`ComplexBall` encloses
the rectangle ``re × im``.  Containment is the contract every operation
honours: for all member points of the inputs, the exact result of the
operation is a member of the output.

Internally a ball is stored as a pair of dyadic endpoints (mpmath raw mpf
values) and all kernels come from ``mpmath.libmp``, whose interval functions
round outward.  Midpoint and radius are exact dyadic rationals derived from
the endpoints, so serialization is reproducible.

The complex logarithm is the principal branch (``-pi < arg <= pi``); balls
that straddle the cut raise :class:`~holopos.errors.BranchCutError` instead
of silently widening.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath.libmp import (
    from_int,
    from_man_exp,
    from_rational,
    from_str,
    fzero,
    fone,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_eq,
    mpf_ge,
    mpf_gt,
    mpf_le,
    mpf_lt,
    mpf_mul,
    mpf_neg,
    mpf_shift,
    mpf_sign,
    mpf_sub,
    round_ceiling,
    round_floor,
    to_rational,
    to_str,
)
from mpmath.libmp.libmpi import (
    mpi_add,
    mpi_atan,
    mpi_cos_sin,
    mpi_div,
    mpi_exp,
    mpi_log,
    mpi_mul,
    mpi_neg,
    mpi_pi,
    mpi_pow_int,
    mpi_sqrt,
    mpi_square,
    mpi_sub,
)

from .errors import BranchCutError, DomainError
from .precision import get_precision

__all__ = [
    "RealBall",
    "ComplexBall",
    "ball_arith",
    "contains_zero",
    "pi_ball",
    "euler_gamma_ball",
]

_F = round_floor
_C = round_ceiling


def _fr_to_mpf(x: Fraction, prec: int, rnd) -> tuple:
    """Directed conversion Fraction -> raw mpf (exact for dyadic x)."""
    q = x.denominator
    if q & (q - 1) == 0:  # power of two: exact
        return from_man_exp(x.numerator, -(q.bit_length() - 1))
    return from_rational(x.numerator, q, prec, rnd)


def _mpf_to_fr(x: tuple) -> Fraction:
    p, q = to_rational(x)
    return Fraction(int(p), int(q))


def _half_sum(a: tuple, b: tuple) -> tuple:
    return mpf_shift(mpf_add(a, b, 0), -1)


class RealBall:
    """Enclosure ``[lo, hi]`` of a real number, with dyadic endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: tuple, hi: tuple):
        self.lo = lo
        self.hi = hi

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_fraction(x, rad=None) -> "RealBall":
        x = Fraction(x)
        prec = get_precision()
        b = RealBall(_fr_to_mpf(x, prec, _F), _fr_to_mpf(x, prec, _C))
        if rad:
            r = Fraction(rad)
            b = RealBall(
                mpf_sub(b.lo, _fr_to_mpf(r, prec, _C), prec, _F),
                mpf_add(b.hi, _fr_to_mpf(r, prec, _C), prec, _C),
            )
        return b

    @staticmethod
    def from_int(n: int) -> "RealBall":
        m = from_int(n)
        return RealBall(m, m)

    @staticmethod
    def from_midrad_str(mid: str, rad: str = "0") -> "RealBall":
        prec = get_precision()
        lo = from_str(mid, prec, _F)
        hi = from_str(mid, prec, _C)
        r = mpf_abs(from_str(rad, prec, _C))
        return RealBall(mpf_sub(lo, r, prec, _F), mpf_add(hi, r, prec, _C))

    @staticmethod
    def parse(text: str) -> "RealBall":
        """Parse ``"mid ± rad"`` (or ``"mid +/- rad"`` or a bare number)."""
        for sep in ("±", "+/-"):
            if sep in text:
                mid, rad = text.split(sep)
                return RealBall.from_midrad_str(mid.strip(), rad.strip())
        return RealBall.from_midrad_str(text.strip())

    @staticmethod
    def zero() -> "RealBall":
        return RealBall(fzero, fzero)

    @staticmethod
    def one() -> "RealBall":
        return RealBall(fone, fone)

    # -- exact views ---------------------------------------------------

    @property
    def midpoint(self) -> Fraction:
        return _mpf_to_fr(_half_sum(self.lo, self.hi))

    @property
    def radius(self) -> Fraction:
        return _mpf_to_fr(_half_sum(self.hi, mpf_neg(self.lo)))

    def lower(self) -> Fraction:
        return _mpf_to_fr(self.lo)

    def upper(self) -> Fraction:
        return _mpf_to_fr(self.hi)

    @property
    def mpi(self) -> tuple:
        return (self.lo, self.hi)

    # -- predicates -----------------------------------------------------

    def contains_zero(self) -> bool:
        return mpf_le(self.lo, fzero) and mpf_ge(self.hi, fzero)

    def contains_fraction(self, x) -> bool:
        x = Fraction(x)
        return self.lower() <= x <= self.upper()

    def contains(self, other: "RealBall") -> bool:
        return mpf_le(self.lo, other.lo) and mpf_ge(self.hi, other.hi)

    def overlaps(self, other: "RealBall") -> bool:
        return not (mpf_lt(self.hi, other.lo) or mpf_lt(other.hi, self.lo))

    def is_positive(self) -> bool:
        """Certainly > 0."""
        return mpf_gt(self.lo, fzero)

    def is_negative(self) -> bool:
        return mpf_lt(self.hi, fzero)

    def is_nonnegative(self) -> bool:
        return mpf_ge(self.lo, fzero)

    def is_exact(self) -> bool:
        return mpf_eq(self.lo, self.hi)

    def is_zero(self) -> bool:
        """Exactly the point zero (not merely containing it)."""
        return mpf_eq(self.lo, fzero) and mpf_eq(self.hi, fzero)

    def lt(self, other: "RealBall") -> bool:
        """Certainly less than."""
        return mpf_lt(self.hi, other.lo)

    def gt(self, other: "RealBall") -> bool:
        return mpf_gt(self.lo, other.hi)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _as_real(other)
        if other is NotImplemented:
            return NotImplemented
        return RealBall(*mpi_add(self.mpi, other.mpi, get_precision()))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_real(other)
        if other is NotImplemented:
            return NotImplemented
        return RealBall(*mpi_sub(self.mpi, other.mpi, get_precision()))

    def __rsub__(self, other):
        other = _as_real(other)
        if other is NotImplemented:
            return NotImplemented
        return RealBall(*mpi_sub(other.mpi, self.mpi, get_precision()))

    def __mul__(self, other):
        other = _as_real(other)
        if other is NotImplemented:
            return NotImplemented
        return RealBall(*mpi_mul(self.mpi, other.mpi, get_precision()))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_real(other)
        if other is NotImplemented:
            return NotImplemented
        if other.contains_zero():
            raise DomainError("division by a ball containing zero")
        return RealBall(*mpi_div(self.mpi, other.mpi, get_precision()))

    def __rtruediv__(self, other):
        other = _as_real(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __neg__(self):
        return RealBall(*mpi_neg(self.mpi, get_precision()))

    def __abs__(self):
        if self.is_nonnegative():
            return self
        if mpf_le(self.hi, fzero):
            return -self
        # straddles zero
        hi = self.hi if mpf_ge(self.hi, mpf_neg(self.lo)) else mpf_neg(self.lo)
        return RealBall(fzero, hi)

    def square(self) -> "RealBall":
        return RealBall(*mpi_square(self.mpi, get_precision()))

    def sqrt(self) -> "RealBall":
        if mpf_lt(self.lo, fzero):
            raise DomainError("sqrt of a ball containing negatives")
        return RealBall(*mpi_sqrt(self.mpi, get_precision()))

    def log(self) -> "RealBall":
        if mpf_le(self.lo, fzero):
            raise DomainError("log requires a strictly positive ball")
        return RealBall(*mpi_log(self.mpi, get_precision()))

    def exp(self) -> "RealBall":
        return RealBall(*mpi_exp(self.mpi, get_precision()))

    def atan(self) -> "RealBall":
        return RealBall(*mpi_atan(self.mpi, get_precision()))

    def cos_sin(self) -> tuple:
        c, s = mpi_cos_sin(self.mpi, get_precision())
        return RealBall(*c), RealBall(*s)

    def pow_int(self, n: int) -> "RealBall":
        if n < 0 and self.contains_zero():
            raise DomainError("negative power of a ball containing zero")
        return RealBall(*mpi_pow_int(self.mpi, int(n), get_precision()))

    def __pow__(self, n):
        if isinstance(n, int):
            return self.pow_int(n)
        return NotImplemented

    def pow(self, e) -> "RealBall":
        """x**e for a real exponent (Fraction or RealBall); requires x > 0
        unless e is an integer."""
        if isinstance(e, int) or (isinstance(e, Fraction) and e.denominator == 1):
            return self.pow_int(int(e))
        e = e if isinstance(e, RealBall) else RealBall.from_fraction(Fraction(e))
        return (self.log() * e).exp()

    def min_with(self, other: "RealBall") -> "RealBall":
        lo = self.lo if mpf_le(self.lo, other.lo) else other.lo
        hi = self.hi if mpf_le(self.hi, other.hi) else other.hi
        return RealBall(lo, hi)

    def max_with(self, other: "RealBall") -> "RealBall":
        lo = self.lo if mpf_ge(self.lo, other.lo) else other.lo
        hi = self.hi if mpf_ge(self.hi, other.hi) else other.hi
        return RealBall(lo, hi)

    def union(self, other: "RealBall") -> "RealBall":
        lo = self.lo if mpf_le(self.lo, other.lo) else other.lo
        hi = self.hi if mpf_ge(self.hi, other.hi) else other.hi
        return RealBall(lo, hi)

    def intersect(self, other: "RealBall") -> "RealBall":
        if not self.overlaps(other):
            raise DomainError("empty intersection")
        lo = self.lo if mpf_ge(self.lo, other.lo) else other.lo
        hi = self.hi if mpf_le(self.hi, other.hi) else other.hi
        return RealBall(lo, hi)

    def widen(self, rad: Fraction) -> "RealBall":
        prec = get_precision()
        r = _fr_to_mpf(Fraction(rad), prec, _C)
        return RealBall(mpf_sub(self.lo, r, prec, _F), mpf_add(self.hi, r, prec, _C))

    def abs_upper(self) -> Fraction:
        """Exact dyadic upper bound for |x| over the ball."""
        a = mpf_abs(self.lo)
        b = mpf_abs(self.hi)
        return _mpf_to_fr(a if mpf_ge(a, b) else b)

    def abs_lower(self) -> Fraction:
        if self.contains_zero():
            return Fraction(0)
        a = mpf_abs(self.lo)
        b = mpf_abs(self.hi)
        return _mpf_to_fr(a if mpf_le(a, b) else b)

    # -- formatting -------------------------------------------------------

    def midrad_str(self, dps: int = 15) -> str:
        mid = _half_sum(self.lo, self.hi)
        rad = _half_sum(self.hi, mpf_neg(self.lo))
        prec = max(get_precision(), 64)
        mid_s = to_str(mid, dps)
        # account for the decimal rounding of the midpoint in the printed radius
        back = from_str(mid_s, prec + 16, _F)
        slack = mpf_abs(mpf_sub(mid, back, prec, _C))
        rad_out = mpf_mul(mpf_add(rad, slack, prec, _C), from_str("1.001", 32, _C), 32, _C)
        rad_s = to_str(rad_out, 3)
        return f"{mid_s} ± {rad_s}"

    def __repr__(self):
        return f"[{self.midrad_str()}]"


def _as_real(x):
    if isinstance(x, RealBall):
        return x
    if isinstance(x, int):
        return RealBall.from_int(x)
    if isinstance(x, Fraction):
        return RealBall.from_fraction(x)
    return NotImplemented


def pi_ball() -> RealBall:
    return RealBall(*mpi_pi(get_precision()))


# 50 decimal digits of the Euler-Mascheroni constant, enclosed outward.
_EULER_GAMMA_DEC = "0.57721566490153286060651209008240243104215933593992"


def euler_gamma_ball() -> RealBall:
    prec = max(get_precision(), 192)
    lo = from_str(_EULER_GAMMA_DEC, prec, _F)
    hi = from_str(_EULER_GAMMA_DEC, prec, _C)
    eps = from_man_exp(1, -160)  # covers the truncated decimal tail
    return RealBall(mpf_sub(lo, eps, prec, _F), mpf_add(hi, eps, prec, _C))


class ComplexBall:
    """Rectangle enclosure ``re × im`` of a complex number."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealBall, im: RealBall | None = None):
        self.re = re
        self.im = im if im is not None else RealBall.zero()

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_fraction(re, im=0) -> "ComplexBall":
        return ComplexBall(RealBall.from_fraction(re), RealBall.from_fraction(im))

    @staticmethod
    def from_int(n: int) -> "ComplexBall":
        return ComplexBall(RealBall.from_int(n), RealBall.zero())

    @staticmethod
    def zero() -> "ComplexBall":
        return ComplexBall(RealBall.zero(), RealBall.zero())

    @staticmethod
    def one() -> "ComplexBall":
        return ComplexBall(RealBall.one(), RealBall.zero())

    # -- predicates -------------------------------------------------------

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def overlaps(self, other: "ComplexBall") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def contains(self, other: "ComplexBall") -> bool:
        return self.re.contains(other.re) and self.im.contains(other.im)

    def is_exact(self) -> bool:
        return self.re.is_exact() and self.im.is_exact()

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real_line(self) -> bool:
        return self.im.is_exact() and self.im.contains_zero()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexBall(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexBall(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexBall(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return NotImplemented
        if other.contains_zero():
            raise DomainError("division by a ball containing zero")
        den = other.re.square() + other.im.square()
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexBall((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return ComplexBall(-self.re, -self.im)

    def conj(self) -> "ComplexBall":
        return ComplexBall(self.re, -self.im)

    def scale_real(self, x: RealBall) -> "ComplexBall":
        return ComplexBall(self.re * x, self.im * x)

    def __abs__(self) -> RealBall:
        return (self.re.square() + self.im.square()).sqrt()

    def abs_upper(self) -> Fraction:
        return abs(self).abs_upper()

    def abs_lower(self) -> Fraction:
        return abs(self).abs_lower()

    def arg(self) -> RealBall:
        """Enclosure of the principal argument; raises BranchCutError when
        the rectangle straddles the cut (-inf, 0]."""
        re, im = self.re, self.im
        if re.is_positive():
            return (im / re).atan()
        if im.is_positive():
            # upper half plane: arg = pi/2 - atan(re/im)
            half_pi = pi_ball() * Fraction(1, 2)
            return half_pi - (re / im).atan()
        if im.is_negative():
            half_pi = pi_ball() * Fraction(1, 2)
            return -half_pi + (re / (-im)).atan()
        if im.is_exact() and im.contains_zero() and re.is_negative():
            # exactly on the negative real axis: principal value +pi
            return pi_ball()
        if self.contains_zero():
            raise DomainError("argument of a ball containing zero")
        raise BranchCutError("rectangle straddles the branch cut (-inf, 0]")

    def log(self) -> "ComplexBall":
        return ComplexBall(abs(self).log(), self.arg())

    def exp(self) -> "ComplexBall":
        r = self.re.exp()
        c, s = self.im.cos_sin()
        return ComplexBall(r * c, r * s)

    def sqrt(self) -> "ComplexBall":
        return self.pow(Fraction(1, 2))

    def pow_int(self, n: int) -> "ComplexBall":
        n = int(n)
        if n == 0:
            return ComplexBall.one()
        if n < 0:
            return ComplexBall.one() / self.pow_int(-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __pow__(self, n):
        if isinstance(n, int):
            return self.pow_int(n)
        return NotImplemented

    def pow(self, e) -> "ComplexBall":
        """z**e via exp(e log z), principal branch, for rational/real e."""
        if isinstance(e, int) or (isinstance(e, Fraction) and e.denominator == 1):
            return self.pow_int(int(e))
        if isinstance(e, Fraction):
            e = ComplexBall.from_fraction(e)
        elif isinstance(e, RealBall):
            e = ComplexBall(e, RealBall.zero())
        return (self.log() * e).exp()

    def union(self, other: "ComplexBall") -> "ComplexBall":
        return ComplexBall(self.re.union(other.re), self.im.union(other.im))

    def widen(self, rad: Fraction) -> "ComplexBall":
        return ComplexBall(self.re.widen(rad), self.im.widen(rad))

    # -- formatting ----------------------------------------------------------

    def midrad_str(self, dps: int = 15) -> str:
        return f"({self.re.midrad_str(dps)}) + ({self.im.midrad_str(dps)})i"

    def __repr__(self):
        return f"[{self.midrad_str()}]"


def _as_complex(x):
    if isinstance(x, ComplexBall):
        return x
    if isinstance(x, RealBall):
        return ComplexBall(x, RealBall.zero())
    if isinstance(x, int):
        return ComplexBall.from_int(x)
    if isinstance(x, Fraction):
        return ComplexBall.from_fraction(x)
    if isinstance(x, complex) and x.imag == 0 and float(x.real).is_integer():
        return ComplexBall.from_int(int(x.real))
    return NotImplemented


def contains_zero(a) -> bool:
    """True iff 0 lies in the enclosure of ``a``."""
    return a.contains_zero()


_BINARY = {"add", "sub", "mul", "div"}


def ball_arith(op: str, a, b=None):
    """Functional dispatcher over ball operations.

    ``op`` is one of ``add, sub, mul, div, log, power, abs``; ``a`` and ``b``
    are balls (``power`` takes an exponent for ``b``).
    """
    if op in _BINARY:
        if b is None:
            raise TypeError(f"{op} needs two operands")
        return {"add": lambda: a + b, "sub": lambda: a - b,
                "mul": lambda: a * b, "div": lambda: a / b}[op]()
    if op == "log":
        return a.log()
    if op == "abs":
        return abs(a)
    if op == "power":
        if b is None:
            raise TypeError("power needs an exponent")
        return a.pow(b)
    raise ValueError(f"unknown operation {op!r}")

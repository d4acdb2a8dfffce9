"""Exact algebraic numbers: root isolation, refinement, Q(zeta) arithmetic.

An :class:`AlgebraicNumber` is an irreducible integer polynomial together
with an isolating box containing exactly one of its roots.  Real roots are
isolated with Sturm sequences on exact rationals; the handful of non-real
roots a leading coefficient may have are isolated through sympy's certified
``CRootOf`` intervals.  Irreducible factors come from sympy's integer
polynomial factorization.

:class:`NumberField` provides exact arithmetic in Q(zeta) as polynomials
modulo the minimal polynomial; it is what makes singularity classification
decisions exact rather than numeric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import polys
from .balls import ComplexBall, RealBall
from .precision import get_precision, precision

__all__ = [
    "AlgebraicNumber",
    "isolate_real_roots",
    "all_roots",
    "refine",
    "NumberField",
    "NFElement",
]


def _factor_int_poly(coeffs: list[int]) -> list[list[int]]:
    """Distinct irreducible integer factors (content dropped), low-first."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x)
    _, factors = poly.factor_list()
    out = []
    for f, _mult in factors:
        cs = [int(c) for c in reversed(f.all_coeffs())]
        if len(cs) > 1:
            out.append(cs)
    return out


class AlgebraicNumber:
    """A root of an irreducible integer polynomial, pinned by an isolating box.

    ``interval`` is an exact rational pair (lo, hi) for real roots;
    non-real roots carry an exact rational box (re_lo, re_hi, im_lo, im_hi).
    """

    __slots__ = ("minpoly", "interval", "box", "_sturm")

    def __init__(self, minpoly: list[int], interval=None, box=None):
        self.minpoly = [int(c) for c in polys.trim(minpoly)]
        self.interval = interval
        self.box = box
        self._sturm = None

    # -- basic structure -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def is_real(self) -> bool:
        return self.interval is not None

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        return Fraction(-self.minpoly[0], self.minpoly[1])

    @staticmethod
    def from_fraction(x) -> "AlgebraicNumber":
        x = Fraction(x)
        return AlgebraicNumber(
            [-x.numerator, x.denominator], interval=(x, x)
        )

    def __repr__(self):
        if self.is_rational:
            return f"AlgebraicNumber({self.as_fraction()})"
        if self.is_real:
            lo, hi = self.interval
            return f"AlgebraicNumber(deg {self.degree}, ~{float((lo + hi) / 2):.6g})"
        return f"AlgebraicNumber(deg {self.degree}, box {self.box})"

    def same_as(self, other: "AlgebraicNumber") -> bool:
        """Exact equality test."""
        if self.minpoly != other.minpoly:
            return False
        if self.is_real and other.is_real:
            a, b = self.interval
            c, d = other.interval
            if b < c or d < a:
                # disjoint intervals can still hold the same root only if empty
                return self._root_in(max(a, c), min(b, d)) and other._root_in(
                    max(a, c), min(b, d)
                )
            lo, hi = max(a, c), min(b, d)
            return self._root_in(lo, hi) and other._root_in(lo, hi)
        if (not self.is_real) and (not other.is_real):
            b1, b2 = self.box, other.box
            ov = (
                max(b1[0], b2[0]) <= min(b1[1], b2[1])
                and max(b1[2], b2[2]) <= min(b1[3], b2[3])
            )
            if not ov:
                return False
            # refine both until the boxes either separate or nest
            s, o = self, other
            for _ in range(64):
                b1, b2 = s.box, o.box
                if (
                    b1[1] < b2[0] or b2[1] < b1[0]
                    or b1[3] < b2[2] or b2[3] < b1[2]
                ):
                    return False
                if (
                    b2[0] <= b1[0] and b1[1] <= b2[1]
                    and b2[2] <= b1[2] and b1[3] <= b2[3]
                ):
                    return True
                o = o.refined_box()
                s = s.refined_box()
            return True
        return False

    # -- real-root machinery ---------------------------------------------------

    def _chain(self):
        if self._sturm is None:
            sq = [Fraction(c) for c in self.minpoly]
            self._sturm = polys.sturm_chain(sq)
        return self._sturm

    def _root_in(self, lo: Fraction, hi: Fraction) -> bool:
        if lo > hi:
            return False
        return polys.count_real_roots(None, lo, hi, chain=self._chain()) == 1

    def _sign_at(self, x: Fraction) -> int:
        v = polys.evaluate([Fraction(c) for c in self.minpoly], x)
        return 0 if v == 0 else (1 if v > 0 else -1)

    def refine_interval(self, width: Fraction) -> tuple:
        """Shrink the real isolating interval below ``width`` by bisection."""
        lo, hi = self.interval
        if lo == hi:
            return self.interval
        slo, shi = self._sign_at(lo), self._sign_at(hi)
        # move endpoints off the root if a degenerate sign shows up
        while slo == 0:
            lo -= width
            slo = self._sign_at(lo)
        while shi == 0:
            hi += width
            shi = self._sign_at(hi)
        while hi - lo > width:
            mid = (lo + hi) / 2
            sm = self._sign_at(mid)
            if sm == 0:
                # rational root hit exactly
                lo = hi = mid
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
        self.interval = (lo, hi)
        return self.interval

    def refined_box(self) -> "AlgebraicNumber":
        """One refinement step of the complex isolating box (sympy-backed)."""
        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(self.minpoly)), x)
        for root in poly.all_roots():
            if root.is_real:
                continue
            itv = root._get_interval()
            ax, bx = Fraction(str(itv.ax)), Fraction(str(itv.bx))
            ay, by = Fraction(str(itv.ay)), Fraction(str(itv.by))
            b = self.box
            if ax <= b[1] and b[0] <= bx and ay <= b[3] and b[2] <= by:
                itv = itv.refine()
                nb = (
                    Fraction(str(itv.ax)),
                    Fraction(str(itv.bx)),
                    Fraction(str(itv.ay)),
                    Fraction(str(itv.by)),
                )
                out = AlgebraicNumber(self.minpoly, box=nb)
                return out
        return self

    # -- ball views ------------------------------------------------------------

    def ball(self, target_radius: Fraction | None = None):
        """RealBall (real roots) or ComplexBall enclosure, radius <= target."""
        if target_radius is None:
            target_radius = Fraction(1, 2 ** (get_precision() + 8))
        target_radius = Fraction(target_radius)
        if target_radius <= 0:
            raise ValueError("target_radius must be positive")
        if self.is_real:
            lo, hi = self.refine_interval(target_radius)
            return RealBall.from_fraction(lo).union(RealBall.from_fraction(hi))
        a: AlgebraicNumber = self
        for _ in range(4096):
            b = a.box
            if b[1] - b[0] <= target_radius and b[3] - b[2] <= target_radius:
                break
            a = a.refined_box()
        b = a.box
        self.box = b
        re = RealBall.from_fraction(b[0]).union(RealBall.from_fraction(b[1]))
        im = RealBall.from_fraction(b[2]).union(RealBall.from_fraction(b[3]))
        return ComplexBall(re, im)

    def cball(self, target_radius: Fraction | None = None) -> ComplexBall:
        b = self.ball(target_radius)
        if isinstance(b, RealBall):
            return ComplexBall(b, RealBall.zero())
        return b


def refine(alpha: AlgebraicNumber, target_radius):
    """Enclosure of ``alpha`` with radius at most ``target_radius``."""
    return alpha.ball(Fraction(target_radius))


def _isolate_factor_real(factor: list[int]) -> list[AlgebraicNumber]:
    """Isolate the real roots of one irreducible integer polynomial."""
    if len(factor) == 2:
        return [AlgebraicNumber.from_fraction(Fraction(-factor[0], factor[1]))]
    fpoly = [Fraction(c) for c in factor]
    chain = polys.sturm_chain(fpoly)
    bound = polys.root_bound(fpoly)
    total = polys.count_real_roots(None, -bound, bound, chain=chain)
    out: list[AlgebraicNumber] = []

    def split(lo, hi, count):
        if count == 0:
            return
        if count == 1:
            out.append(AlgebraicNumber(factor, interval=(lo, hi)))
            return
        mid = (lo + hi) / 2
        while polys.evaluate(fpoly, mid) == 0:
            mid = (mid + hi) / 2
        left = polys.count_real_roots(None, lo, mid, chain=chain)
        split(lo, mid, left)
        split(mid, hi, count - left)

    split(-bound, bound, total)
    return out


def isolate_real_roots(p) -> list[AlgebraicNumber]:
    """Distinct real roots of a nonzero rational polynomial, isolated.

    Returned boxes are pairwise disjoint; each carries the irreducible
    minimal polynomial of its root.
    """
    coeffs = [Fraction(c) for c in polys.trim(list(p))]
    if not coeffs:
        raise ValueError("zero polynomial")
    _, prim = polys.content_primitive(coeffs)
    if len(prim) <= 1:
        return []
    roots: list[AlgebraicNumber] = []
    for factor in _factor_int_poly(prim):
        roots.extend(_isolate_factor_real(factor))
    roots.sort(key=lambda a: a.interval[0])
    # refine until pairwise disjoint
    changed = True
    while changed:
        changed = False
        for a, b in zip(roots, roots[1:]):
            if a.interval[1] >= b.interval[0]:
                w = (a.interval[1] - a.interval[0]) / 4 or Fraction(1, 1 << 30)
                a.refine_interval(w)
                b.refine_interval(w)
                changed = True
    return roots


def all_roots(p) -> list[AlgebraicNumber]:
    """All distinct complex roots (real ones first, then conjugate pairs)."""
    coeffs = [Fraction(c) for c in polys.trim(list(p))]
    _, prim = polys.content_primitive(coeffs)
    roots = isolate_real_roots(prim)
    x = sympy.Symbol("x")
    for factor in _factor_int_poly(prim):
        poly = sympy.Poly(list(reversed(factor)), x)
        for root in poly.all_roots():
            if root.is_real:
                continue
            itv = root._get_interval()
            box = (
                Fraction(str(itv.ax)),
                Fraction(str(itv.bx)),
                Fraction(str(itv.ay)),
                Fraction(str(itv.by)),
            )
            roots.append(AlgebraicNumber(factor, box=box))
    return roots


# ---------------------------------------------------------------------------
# Number fields Q(zeta)
# ---------------------------------------------------------------------------


class NumberField:
    """Q(zeta) for an algebraic zeta, elements as polynomials mod minpoly."""

    def __init__(self, generator: AlgebraicNumber):
        self.generator = generator
        self.minpoly = [Fraction(c) for c in generator.minpoly]
        self.degree = generator.degree
        lead = self.minpoly[-1]
        self._monic = [c / lead for c in self.minpoly]

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.field is not self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, (int, Fraction)):
            return NFElement(self, [Fraction(value)])
        if isinstance(value, (list, tuple)):
            return NFElement(self, [Fraction(c) for c in value])
        raise TypeError(f"cannot coerce {value!r}")

    def gen(self) -> "NFElement":
        if self.degree == 1:
            return self(self.generator.as_fraction())
        return NFElement(self, [Fraction(0), Fraction(1)])

    def zero(self) -> "NFElement":
        return NFElement(self, [])

    def one(self) -> "NFElement":
        return NFElement(self, [Fraction(1)])

    def _reduce(self, coeffs: list[Fraction]) -> list[Fraction]:
        coeffs = polys.trim(list(coeffs))
        d = self.degree
        while len(coeffs) - 1 >= d:
            k = len(coeffs) - 1 - d
            c = coeffs[-1]
            for i in range(d + 1):
                coeffs[k + i] -= c * self._monic[i]
            coeffs = polys.trim(coeffs)
        return coeffs

    def gen_ball(self, prec_bits: int | None = None):
        bits = prec_bits if prec_bits is not None else get_precision()
        return self.generator.ball(Fraction(1, 1 << (bits + 8)))


@dataclass(frozen=True, eq=False)
class NFElement:
    field: NumberField
    coeffs: list  # Fractions, low-first, reduced mod minpoly

    def __post_init__(self):
        object.__setattr__(self, "coeffs", self.field._reduce(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def as_fraction(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) > 1:
            raise ValueError("not rational")
        return self.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, NFElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, polys.add(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, polys.sub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, polys.sub(o.coeffs, self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, polys.mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        return NFElement(self.field, [-c for c in self.coeffs])

    def inverse(self) -> "NFElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[x] against the minimal polynomial
        a = list(self.field._monic)
        b = list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = polys.divmod_exact(a, b)
            if not r:
                break
            s0, s1 = s1, polys.sub(s0, polys.mul(q, s1))
            a, b = b, r
        if polys.degree(b) != 0:
            raise ZeroDivisionError("element not invertible (non-trivial gcd)")
        inv = polys.scale(s1, 1 / b[0])
        return NFElement(self.field, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def ball(self, prec_bits: int | None = None):
        """Enclosure of the element as a RealBall/ComplexBall."""
        bits = prec_bits if prec_bits is not None else get_precision()
        with precision(max(bits, get_precision())):
            g = self.field.gen_ball(bits)
            if not self.coeffs:
                return RealBall.zero() if isinstance(g, RealBall) else ComplexBall.zero()
            acc = (
                RealBall.from_fraction(self.coeffs[-1])
                if isinstance(g, RealBall)
                else ComplexBall.from_fraction(self.coeffs[-1])
            )
            for c in reversed(self.coeffs[:-1]):
                acc = acc * g + (
                    RealBall.from_fraction(c)
                    if isinstance(g, RealBall)
                    else ComplexBall.from_fraction(c)
                )
            return acc

    def __repr__(self):
        return f"NF{self.coeffs}"

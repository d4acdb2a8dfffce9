"""Exact linear recurrence and differential operators.

Operators carry dense polynomial coefficients over Q (lowest degree first).
Everything here is exact: sequence unrolling, the recurrence <-> ODE
substitution calculus, singular point location, and the Fuchs-criterion
classification (ordinary / regular singular / apparent / irregular), the
latter decided by exact linear algebra over Q(zeta).

The theta-form ``w^s L = sum_j w^j q_j(theta)`` computed here (theta = w
d/dw at the expansion point) is also the engine behind the Frobenius series
construction in :mod:`holopos.localsol`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import polys
from .algebraic import AlgebraicNumber, NFElement, NumberField, all_roots
from .errors import IrregularError, LeadingZeroError, ParseError

__all__ = [
    "RecOp",
    "DiffOp",
    "SingularityReport",
    "parse_operator",
    "serialize_operator",
    "rec_to_diffop",
    "diffop_to_rec",
    "unroll",
    "singular_points",
    "indicial_polynomial",
    "classify_point",
    "theta_form",
    "falling_factorial_poly",
    "shifted_coeffs",
]


def _parse_poly(values, where) -> list[Fraction]:
    try:
        return polys.trim([Fraction(v) for v in values])
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad rational coefficient: {exc}", where) from None


@dataclass(frozen=True)
class RecOp:
    """sum_k r_k(n) d_{n+k} = 0 with polynomial r_k; r_order != 0."""

    coeffs: tuple  # tuple of tuples of Fraction, k = 0..order

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(tuple(c) for c in self.coeffs)
        )
        if not self.coeffs or not polys.trim(list(self.coeffs[-1])):
            raise ValueError("leading recurrence coefficient must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> list[Fraction]:
        return list(self.coeffs[k])


@dataclass(frozen=True)
class DiffOp:
    """sum_k c_k(z) F^(k) = 0 with polynomial c_k; c_order != 0."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(tuple(c) for c in self.coeffs)
        )
        if not self.coeffs or not polys.trim(list(self.coeffs[-1])):
            raise ValueError("leading ODE coefficient must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> list[Fraction]:
        return list(self.coeffs[k])

    def leading(self) -> list[Fraction]:
        return list(self.coeffs[-1])


@dataclass
class SingularityReport:
    point: AlgebraicNumber
    kind: str  # ordinary | regular_singular | apparent | irregular
    indicial_roots: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def parse_operator(text: str):
    """Parse the operator JSON; returns a RecOp or a DiffOp."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return operator_from_obj(obj)


def operator_from_obj(obj) -> RecOp | DiffOp:
    if not isinstance(obj, dict):
        raise ParseError("operator file must contain a JSON object")
    kind = obj.get("kind")
    if kind not in ("recurrence", "ode"):
        raise ParseError(f"unknown operator kind {kind!r}")
    variable = obj.get("variable", "n" if kind == "recurrence" else "z")
    if (kind == "recurrence") != (variable == "n"):
        raise ParseError(f"variable {variable!r} inconsistent with kind {kind!r}")
    raw = obj.get("coeffs")
    if not isinstance(raw, list) or not raw:
        raise ParseError("empty coefficient list")
    coeffs = [_parse_poly(c, f"coeffs[{i}]") for i, c in enumerate(raw)]
    if not polys.trim(coeffs[-1]):
        raise ParseError("leading coefficient is identically zero")
    cls = RecOp if kind == "recurrence" else DiffOp
    return cls(tuple(tuple(c) for c in coeffs))


def operator_to_obj(op: RecOp | DiffOp) -> dict:
    kind = "recurrence" if isinstance(op, RecOp) else "ode"
    return {
        "kind": kind,
        "variable": "n" if kind == "recurrence" else "z",
        "coeffs": [[str(c) for c in polys.trim(list(p))] or ["0"] for p in op.coeffs],
    }


def serialize_operator(op: RecOp | DiffOp) -> str:
    return json.dumps(operator_to_obj(op), sort_keys=True, indent=1)


# ---------------------------------------------------------------------------
# Unrolling
# ---------------------------------------------------------------------------


def unroll(rec: RecOp, initial, N: int) -> list[Fraction]:
    """Exact terms d_0..d_N; given initial terms are verified against the
    recurrence where windows overlap them."""
    r = rec.order
    terms = [Fraction(v) for v in initial]
    if len(terms) < r:
        raise ValueError(f"need at least {r} initial terms, got {len(terms)}")
    lead = rec.coeff(r)
    for n in range(0, max(0, N + 1 - r)):
        acc = Fraction(0)
        for k in range(r):
            acc += polys.evaluate(rec.coeff(k), Fraction(n)) * terms[n + k]
        ln = polys.evaluate(lead, Fraction(n))
        if n + r < len(terms):
            if ln * terms[n + r] + acc != 0:
                raise ValueError(f"given initial terms violate the recurrence at n={n}")
            continue
        if ln == 0:
            raise LeadingZeroError(n)
        terms.append(-acc / ln)
    return terms[: N + 1]


# ---------------------------------------------------------------------------
# Conversions (substitution calculus n <-> theta, shift <-> z^-1)
# ---------------------------------------------------------------------------


def falling_factorial_poly(k: int) -> list[int]:
    """theta (theta-1) ... (theta-k+1), low-first integer coefficients."""
    p = [1]
    for i in range(k):
        p = polys.sub(polys.mul(p, [0, 1]), polys.scale(p, i))
    return p


def _to_falling_basis(p: list[Fraction]) -> list[Fraction]:
    """Coefficients s_t with p(x) = sum_t s_t x(x-1)...(x-t+1)
    (Newton forward differences)."""
    out = []
    cur = list(p)
    t = 0
    fact = 1
    while cur:
        out.append(polys.evaluate(cur, Fraction(0)) / fact)
        cur = polys.trim(polys.sub(polys.shift(cur, Fraction(1)), cur))
        t += 1
        fact *= t
    return polys.trim(out)


def _normalize_diff_coeffs(coeffs: list[list[Fraction]]) -> list[list[Fraction]]:
    coeffs = [polys.trim(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero operator")
    # common power of z
    g = min((next(i for i, c in enumerate(p) if c != 0) for p in coeffs if p), default=0)
    coeffs = [p[g:] if p else p for p in coeffs]
    # common rational content
    num_gcd, den_lcm = 0, 1
    for p in coeffs:
        for c in p:
            num_gcd = Fraction(c).numerator if num_gcd == 0 else _gcd(num_gcd, Fraction(c).numerator)
            den_lcm = _lcm(den_lcm, Fraction(c).denominator)
    if num_gcd:
        scale = Fraction(den_lcm, abs(num_gcd))
        coeffs = [[c * scale for c in p] for p in coeffs]
    return coeffs


def _gcd(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b)


def rec_to_diffop(rec: RecOp) -> DiffOp:
    """Differential operator annihilating the generating function of every
    solution sequence.  Sound, with no minimality guarantee."""
    K = rec.order
    # L0 = sum_k z^(K-k) r_k(theta - k); the inhomogeneous part coming from
    # the d_p with p < k has degree <= K-1, so D^K L0 annihilates Sum d_n z^n.
    coeffs: list[list[Fraction]] = []

    def put(t, m, c):
        while len(coeffs) <= t:
            coeffs.append([])
        p = coeffs[t]
        while len(p) <= m:
            p.append(Fraction(0))
        p[m] += c

    for k in range(K + 1):
        rk = [Fraction(c) for c in rec.coeff(k)]
        shifted = polys.shift(rk, Fraction(-k))  # r_k(theta - k)
        for t, s in enumerate(_to_falling_basis(shifted)):
            if s:
                put(t, K - k + t, s)  # z^(K-k) * theta^(t) = z^(K-k+t) D^t

    # compose with D^K
    for _ in range(K):
        new: list[list[Fraction]] = [[] for _ in range(len(coeffs) + 1)]
        for t, p in enumerate(coeffs):
            new[t] = polys.add(new[t], polys.derivative(p))
            new[t + 1] = polys.add(new[t + 1], p)
        coeffs = new

    return DiffOp(tuple(tuple(c) for c in _normalize_diff_coeffs(coeffs)))


def diffop_to_rec(op: DiffOp) -> RecOp:
    """Recurrence satisfied by the power-series coefficients of every
    analytic solution of ``op``."""
    shifts: dict[int, list[Fraction]] = {}
    for k in range(op.order + 1):
        for m, c in enumerate(op.coeff(k)):
            if c == 0:
                continue
            s = k - m
            # factor (n-m+1)(n-m+2)...(n-m+k) as a polynomial in n
            p = [Fraction(c)]
            for i in range(1, k + 1):
                p = polys.mul(p, [Fraction(i - m), Fraction(1)])
            shifts[s] = polys.add(shifts.get(s, []), p)
    shifts = {s: polys.trim(p) for s, p in shifts.items() if polys.trim(p)}
    smin, smax = min(shifts), max(shifts)
    coeffs = []
    for s in range(smin, smax + 1):
        p = shifts.get(s, [])
        coeffs.append(polys.shift(p, Fraction(-smin)) if p else [])
    # integer-normalize
    den = 1
    for p in coeffs:
        for c in p:
            den = _lcm(den, c.denominator)
    g = 0
    for p in coeffs:
        for c in p:
            g = _gcd(g, c.numerator * den // c.denominator)
    coeffs = [[c * den / g for c in p] for p in coeffs] if g else coeffs
    return RecOp(tuple(tuple(p) for p in coeffs))


def apply_diffop_to_poly(op: DiffOp, p: list[Fraction]) -> list[Fraction]:
    """Exact image of a polynomial under the operator."""
    out: list[Fraction] = []
    d = list(p)
    for k in range(op.order + 1):
        out = polys.add(out, polys.mul(op.coeff(k), d))
        d = polys.derivative(d)
    return out


# ---------------------------------------------------------------------------
# Local structure at a point
# ---------------------------------------------------------------------------


def singular_points(op: DiffOp) -> list[AlgebraicNumber]:
    """Distinct roots of the leading coefficient, as isolated algebraic numbers."""
    lead = op.leading()
    if polys.degree(lead) < 1:
        return []
    return all_roots(lead)


def shifted_coeffs(op: DiffOp, zeta: AlgebraicNumber):
    """(field, [c_k(w + zeta)]) with coefficients in Q(zeta)."""
    nf = NumberField(zeta)
    g = nf.gen()
    out = []
    for k in range(op.order + 1):
        pk = [nf(c) for c in op.coeff(k)]
        out.append(polys.shift(pk, g) if pk else [])
    return nf, out


def theta_form(pcoeffs):
    """Rewrite sum_k p_k(w) D^k as w^(-s) sum_j w^j q_j(theta).

    Returns ``(s, qlist)``; ``qlist[j]`` is the theta-polynomial q_j,
    low-first, over the coefficient ring of ``pcoeffs``.
    """
    terms: dict[int, dict[int, object]] = {}
    for k, pk in enumerate(pcoeffs):
        ff = falling_factorial_poly(k)
        for m, c in enumerate(pk):
            if polys._is_zero(c):
                continue
            acc = terms.setdefault(m - k, {})
            for t, f in enumerate(ff):
                if f:
                    acc[t] = acc.get(t, 0) + c * f
    # drop exactly-zero accumulations
    terms = {
        j: acc
        for j, acc in terms.items()
        if any(not polys._is_zero(v) for v in acc.values())
    }
    if not terms:
        raise ValueError("zero operator")
    smin = min(terms)
    jmax = max(terms)
    qlist = []
    for j in range(smin, jmax + 1):
        acc = terms.get(j, {})
        deg = max(acc) if acc else -1
        qlist.append(polys.trim([acc.get(t, 0) for t in range(deg + 1)]))
    return -smin, qlist


def _vanishing_order(p, zeta_elem, nf) -> int:
    """Order of vanishing at zeta of a rational polynomial (NF-exact)."""
    cur = polys.trim([nf(c) for c in p])
    if not cur:
        return -1  # identically zero
    order = 0
    while cur:
        # synthetic division by (w - zeta); the final accumulator is p(zeta)
        acc = nf.zero()
        quot = []
        for c in reversed(cur):
            acc = acc * zeta_elem + c
            quot.append(acc)
        if not acc.is_zero():
            return order
        quot.reverse()
        cur = polys.trim(quot[1:])
        order += 1
    return order


def indicial_polynomial(op: DiffOp, zeta: AlgebraicNumber):
    """Indicial polynomial at zeta, as a list of NFElement (low-first, monic
    up to a constant); raises IrregularError when the Fuchs criterion fails."""
    nf, pk = shifted_coeffs(op, zeta)
    s, qlist = theta_form(pk)
    q0 = qlist[0]
    if polys.degree(q0) < op.order:
        raise IrregularError(f"irregular singular point (indicial degree {polys.degree(q0)} < {op.order})")
    return nf, q0


def _rational_roots_with_mult(q0, nf) -> tuple[dict, list]:
    """Rational roots (with multiplicity) of a theta-polynomial over Q(zeta).

    Returns (roots: {Fraction: mult}, remaining_factor over NF).
    A rational nu is a root iff every rational component polynomial of q0
    vanishes at nu, so the candidates are roots of the component gcd.
    """
    deg_field = nf.degree
    comps: list[list[Fraction]] = []
    for i in range(deg_field):
        comp = [ (c.coeffs[i] if i < len(c.coeffs) else Fraction(0)) if isinstance(c, NFElement) else (Fraction(c) if i == 0 else Fraction(0)) for c in q0 ]
        comp = polys.trim(comp)
        if comp:
            comps.append(comp)
    g = comps[0]
    for c in comps[1:]:
        g = polys.poly_gcd(g, c)
    roots: dict[Fraction, int] = {}
    rem = list(q0)
    if polys.degree(g) >= 1:
        _, prim = polys.content_primitive(g)
        for r in all_roots(prim):
            if not r.is_rational:
                continue
            val = r.as_fraction()
            mult = 0
            while True:
                # synthetic division of rem by (theta - val)
                acc = nf.zero()
                quot = []
                for c in reversed(rem):
                    acc = acc * nf(val) + nf(c)
                    quot.append(acc)
                if not acc.is_zero():
                    break
                quot.reverse()
                rem = polys.trim([nf(c) for c in quot[1:]])
                mult += 1
            if mult:
                roots[val] = mult
    return roots, rem


def _apparent_check(nf, s, qlist, int_roots: list[int]) -> bool:
    """Exact log-free Frobenius run: True iff a full analytic basis exists."""
    roots = sorted(int_roots)
    top = roots[-1]
    J = len(qlist) - 1
    q0 = qlist[0]

    def q_at(j: int, m: int) -> NFElement:
        if j > J:
            return nf.zero()
        acc = nf.zero()
        for c in reversed(qlist[j]):
            acc = acc * nf(m) + nf(c)
        return acc

    for start in roots:
        coeffs: dict[int, NFElement] = {start: nf.one()}
        for n in range(start + 1, top + 1 + J):
            rhs = nf.zero()
            for j in range(1, min(J, n - start) + 1):
                c = coeffs.get(n - j)
                if c is not None and not c.is_zero():
                    rhs = rhs + q_at(j, n - j) * c
            q0n = q_at(0, n)
            if q0n.is_zero():
                if not rhs.is_zero():
                    return False  # a logarithm is forced
                coeffs[n] = nf.zero()  # free slot; any choice spans the basis
            else:
                coeffs[n] = -rhs / q0n
    return True


def classify_point(op: DiffOp, zeta: AlgebraicNumber) -> SingularityReport:
    """Fuchs classification with an exact apparent-singularity decision."""
    nf, pk = shifted_coeffs(op, zeta)
    lead_ord = _vanishing_order(op.leading(), nf.gen(), nf)
    if lead_ord == 0:
        return SingularityReport(zeta, "ordinary",
                                 [AlgebraicNumber.from_fraction(i) for i in range(op.order)])
    s, qlist = theta_form(pk)
    q0 = qlist[0]
    if polys.degree(q0) < op.order:
        return SingularityReport(zeta, "irregular", [])
    rational_roots, remainder = _rational_roots_with_mult(q0, nf)
    indicial: list[AlgebraicNumber] = [
        AlgebraicNumber.from_fraction(v) for v in sorted(rational_roots)
    ]
    # non-rational indicial roots: only representable when the reduced factor
    # has rational coefficients
    extra_deg = polys.degree(remainder)
    if extra_deg >= 1:
        if all((isinstance(c, NFElement) and c.is_rational) or isinstance(c, (int, Fraction)) for c in remainder):
            rat = [c.as_fraction() if isinstance(c, NFElement) else Fraction(c) for c in remainder]
            indicial.extend(all_roots(rat))
        # else: leave them unlisted; such points are regular singular anyway

    total_rational = sum(rational_roots.values())
    candidates = sorted(rational_roots)
    is_apparent = (
        total_rational == op.order
        and all(v.denominator == 1 and v >= 0 for v in candidates)
        and all(rational_roots[v] == 1 for v in candidates)
        and _apparent_check(nf, s, qlist, [int(v) for v in candidates])
    )
    kind = "apparent" if is_apparent else "regular_singular"
    return SingularityReport(zeta, kind, indicial)

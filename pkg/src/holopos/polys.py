"""Dense univariate polynomial helpers.

Polynomials are plain lists of coefficients, lowest degree first.  The
arithmetic helpers are duck-typed: they work for ``Fraction``, number-field
elements and balls alike, as long as the coefficients support ``+``/``*``.
Division, gcd and Sturm sequences are restricted to ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def trim(p: list) -> list:
    while p and _is_zero(p[-1]):
        p = p[:-1]
    return p


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    z = getattr(c, "is_zero", None)
    if z is not None:
        return c.is_zero()
    return False


def degree(p: list) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    return len(trim(p)) - 1


def add(p: list, q: list) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: list, q: list) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if _is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def scale(p: list, c) -> list:
    return trim([a * c for a in p])


def evaluate(p: list, x):
    """Horner evaluation; returns 0 for the empty polynomial."""
    if not p:
        return 0
    acc = p[-1]
    for c in reversed(p[:-1]):
        acc = acc * x + c
    return acc


def derivative(p: list) -> list:
    return trim([p[i] * i for i in range(1, len(p))])


def shift(p: list, c) -> list:
    """Taylor shift p(x + c) by repeated synthetic division."""
    p = list(p)
    n = len(p)
    out = []
    for _ in range(n):
        # divide p by (x - (-c)) i.e. evaluate remainder at -(-c)=... we shift by c:
        # synthetic division of p(x) by (x) after substitution x -> x + c
        rem = p[-1]
        newp = [p[-1]]
        for coeff in reversed(p[:-1]):
            rem = rem * c + coeff
            newp.append(rem)
        newp.reverse()
        out.append(newp[0])
        p = newp[1:]
        if not p:
            break
    return trim(out)


def divmod_exact(p: list, q: list):
    """Polynomial division over a field (Fraction coefficients)."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(trim(p))
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(0, len(p) - dq)
    while len(p) - 1 >= dq and p:
        k = len(p) - 1 - dq
        c = p[-1] / lead
        quot[k] = c
        for i in range(len(q)):
            p[k + i] -= c * q[i]
        p = trim(p)
    return trim(quot), trim(p)


def poly_gcd(p: list, q: list) -> list:
    """Monic gcd over Q."""
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_exact(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def squarefree_part(p: list) -> list:
    p = trim(p)
    if len(p) <= 1:
        return p
    g = poly_gcd(p, derivative(p))
    q, _ = divmod_exact(p, g)
    return q


def content_primitive(p: list):
    """(content, primitive integer polynomial) of a Fraction polynomial."""
    p = trim(p)
    if not p:
        return Fraction(0), []
    denom = 1
    for c in p:
        denom = denom * Fraction(c).denominator // gcd(denom, Fraction(c).denominator)
    ints = [int(Fraction(c) * denom) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    sign = 1 if ints[-1] > 0 else -1
    g *= sign
    return Fraction(g, denom), [c // g for c in ints]


def sturm_chain(p: list) -> list:
    """Sturm chain of a squarefree Fraction polynomial."""
    chain = [trim(p), derivative(p)]
    while degree(chain[-1]) > 0:
        _, r = divmod_exact(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def sign_variations(chain: list, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = evaluate(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: list, a: Fraction, b: Fraction, chain=None) -> int:
    """Number of distinct real roots of squarefree p in (a, b]."""
    if chain is None:
        chain = sturm_chain(p)
    return sign_variations(chain, a) - sign_variations(chain, b)


def root_bound(p: list) -> Fraction:
    """Cauchy bound: all complex roots have modulus < 1 + max |a_i/a_n|."""
    p = trim(p)
    if len(p) <= 1:
        return Fraction(1)
    lead = abs(Fraction(p[-1]))
    m = max(abs(Fraction(c)) for c in p[:-1]) / lead
    return 1 + m

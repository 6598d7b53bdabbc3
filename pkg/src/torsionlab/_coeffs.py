"""Coefficient tables shared by the compiled and pure-Python kernels.

The Debye polynomials u_k(t), v_k(t) of the uniform large-order expansion of
I_nu(nu z) are generated exactly with rational arithmetic and then rounded.
"""

from __future__ import annotations

from fractions import Fraction

DEBYE_TERMS = 14


def _deriv(poly):
    return [k * c for k, c in enumerate(poly)][1:] or [Fraction(0)]


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _add(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def debye_polynomials(count: int = DEBYE_TERMS):
    """Return exact coefficient lists (index = power of t) for u_0..u_{count-1}
    and v_0..v_{count-1}."""
    half = Fraction(1, 2)
    u = [[Fraction(1)]]
    for _ in range(count - 1):
        prev = u[-1]
        # 1/2 t^2 (1 - t^2) u'
        first = _mul([Fraction(0), Fraction(0), half, Fraction(0), -half], _deriv(prev))
        # 1/8 * integral_0^t (1 - 5 s^2) u(s) ds
        integrand = _mul([Fraction(1), Fraction(0), Fraction(-5)], prev)
        integral = [Fraction(0)] + [c / (k + 1) for k, c in enumerate(integrand)]
        second = [c / 8 for c in integral]
        u.append(_trim(_add(first, second)))
    v = [[Fraction(1)]]
    for k in range(1, count):
        inner = _add([c * half for c in u[k - 1]], _mul([Fraction(0), Fraction(1)], _deriv(u[k - 1])))
        corr = _mul([Fraction(0), Fraction(-1), Fraction(0), Fraction(1)], inner)
        v.append(_trim(_add(u[k], corr)))
    return u, v


def _trim(poly):
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def debye_float_tables(count: int = DEBYE_TERMS):
    u, v = debye_polynomials(count)
    return [[float(c) for c in p] for p in u], [[float(c) for c in p] for p in v]

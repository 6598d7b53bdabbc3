"""Special functions: log-gamma, digamma, Riemann and Hurwitz zeta, Bessel J and I,
zeros of Bessel-type root families, and low-order uniform expansion coefficients.

Every function here is pure and safe to call from several threads.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache

from ._backend import kernels
from .errors import DomainError, PoleError

EULER_GAMMA = 0.57721566490153286061
HALF_LOG_2PI = 0.91893853320467274178
MIN_JPRIME_ORDER = 1e-9

__all__ = [
    "ZeroFamily",
    "gamma_ln",
    "digamma",
    "riemann_zeta",
    "hurwitz_zeta",
    "bessel_j",
    "bessel_i",
    "log_bessel_h",
    "zero",
    "zeros",
    "zero_lower_bound",
    "uniform_expansion_coeffs",
    "bernoulli",
]


class ZeroFamily(str, enum.Enum):
    """Root families: J, J', G+ = J/2 + zJ' and G- = -J/2 + zJ'."""

    JZero = "JZero"
    JPrimeZero = "JPrimeZero"
    GPlusZero = "GPlusZero"
    GMinusZero = "GMinusZero"

    @property
    def code(self) -> int:
        return _FAMILY_CODES[self]


_FAMILY_CODES = {
    ZeroFamily.JZero: 0,
    ZeroFamily.JPrimeZero: 1,
    ZeroFamily.GPlusZero: 2,
    ZeroFamily.GMinusZero: 3,
}


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * b[k]
        b.append(-acc / (m + 1))
    return tuple(b)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (with B_1 = -1/2)."""
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    return _bernoulli_table(max(n, 32))[n] if n <= 32 else _bernoulli_table(n)[n]


# ---------------------------------------------------------------------------
# Gamma and digamma
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _zeta_integers(kmax: int = 60) -> tuple:
    return tuple([0.0, 0.0] + [hurwitz_zeta(float(k), 1.0) for k in range(2, kmax + 1)])


def _lgamma1p_series(z: float) -> float:
    """log Gamma(1 + z) for |z| <= 1/2 via its Taylor series at z = 0."""
    zk = _zeta_integers()
    terms = [-EULER_GAMMA * z]
    p = -z  # becomes (-z)^k * (-1)^k = z^k (-1)^k after each update
    for k in range(2, len(zk)):
        p *= -z
        t = zk[k] * p / k
        terms.append(t)
        if abs(t) < 1e-18 * abs(terms[0]) and k > 4:
            break
    return math.fsum(terms)


def _stirling_lgamma(x: float) -> float:
    terms = [(x - 0.5) * math.log(x), -x, HALF_LOG_2PI]
    x2 = x * x
    xp = x
    for k in range(1, 11):
        terms.append(float(bernoulli(2 * k)) / (2 * k * (2 * k - 1) * xp))
        xp *= x2
    return math.fsum(terms)


def gamma_ln(x: float) -> float:
    """Natural log of Gamma(x) for real x > 0."""
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"gamma_ln requires finite x > 0, got {x}")
    if x < 0.5:
        return gamma_ln(x + 1.0) - math.log(x)
    if x < 1.5:
        return _lgamma1p_series(x - 1.0)
    if x < 2.5:
        z = x - 2.0
        return _lgamma1p_series(z) + math.log1p(z)
    if x >= 10.0:
        return _stirling_lgamma(x)
    shift = math.ceil(10.0 - x)
    prod = 1.0
    for j in range(shift):
        prod *= x + j
    return _stirling_lgamma(x + shift) - math.log(prod)


def digamma(x: float) -> float:
    """psi(x) = d/dx log Gamma(x); real x that is not a non-positive integer."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("digamma requires finite x")
    if x <= 0.0:
        if x == math.floor(x):
            raise PoleError(f"digamma has a pole at {x}")
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    terms = []
    while x < 10.0:
        terms.append(-1.0 / x)
        x += 1.0
    terms.append(math.log(x))
    terms.append(-0.5 / x)
    x2 = x * x
    xp = x2
    for k in range(1, 11):
        terms.append(-float(bernoulli(2 * k)) / (2 * k * xp))
        xp *= x2
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# Zeta functions (Euler-Maclaurin with fixed cut N and Bernoulli tail)
# ---------------------------------------------------------------------------

_EM_BERNOULLI_TERMS = 10


def _em_hurwitz(s: float, a: float, derivative: bool) -> float:
    # a short head for s < 0 limits cancellation in the growing partial sum
    n_cut = 10 if s < 0.0 else max(50, int(s) + 10)
    big = n_cut + a
    logb = math.log(big)
    if derivative:
        terms = [-math.log(n + a) * (n + a) ** (-s) for n in range(n_cut)]
        tail = big ** (1.0 - s)
        terms.append(-logb * tail / (s - 1.0) - tail / (s - 1.0) ** 2)
        terms.append(-0.5 * logb * big ** (-s))
    else:
        terms = [(n + a) ** (-s) for n in range(n_cut)]
        terms.append(big ** (1.0 - s) / (s - 1.0))
        terms.append(0.5 * big ** (-s))
    # Bernoulli corrections: B_2k/(2k)! * (s)_{2k-1} * big^{-s-2k+1}
    poch = s  # rising factorial (s)_{2k-1}
    dpoch = 1.0  # its s-derivative
    fact = 2.0
    for k in range(1, _EM_BERNOULLI_TERMS + 1):
        if k > 1:
            for j in (2 * k - 3, 2 * k - 2):
                dpoch = dpoch * (s + j) + poch
                poch *= s + j
            fact *= (2 * k - 1) * (2 * k)
        coef = float(bernoulli(2 * k)) / fact
        powv = big ** (-s - 2 * k + 1)
        if derivative:
            terms.append(coef * powv * (dpoch - logb * poch))
        else:
            terms.append(coef * poch * powv)
    return math.fsum(terms)


def hurwitz_zeta(s: float, a: float, derivative: bool = False) -> float:
    """Hurwitz zeta sum_{n>=0} (n+a)^{-s}, analytically continued in s.

    ``derivative=True`` returns the derivative in s. Supported for s >= -3.
    """
    s = float(s)
    a = float(a)
    if not a > 0.0:
        raise DomainError(f"hurwitz_zeta requires a > 0, got {a}")
    if s == 1.0:
        raise PoleError("zeta has a simple pole at s = 1")
    if s < -3.0:
        raise DomainError("hurwitz_zeta supports s >= -3")
    return _em_hurwitz(s, a, derivative)


def riemann_zeta(s: float, derivative: bool = False) -> float:
    """Riemann zeta(s) (or zeta'(s) with ``derivative=True``) for real s != 1."""
    s = float(s)
    if s == 1.0:
        raise PoleError("zeta has a simple pole at s = 1")
    if s >= -1.0:
        return _em_hurwitz(s, 1.0, derivative)
    # reflection: zeta(s) = chi(s) zeta(1-s)
    half = 0.5 * math.pi * s
    base = math.exp(s * math.log(2.0 * math.pi) - math.log(math.pi) + gamma_ln(1.0 - s))
    sin_h = 0.0 if s == math.floor(s) and int(s) % 2 == 0 else math.sin(half)
    chi = base * sin_h
    z1 = riemann_zeta(1.0 - s)
    if not derivative:
        return chi * z1
    dchi = base * ((math.log(2.0 * math.pi) - digamma(1.0 - s)) * sin_h + 0.5 * math.pi * math.cos(half))
    return dchi * z1 - chi * riemann_zeta(1.0 - s, derivative=True)


# ---------------------------------------------------------------------------
# Bessel functions
# ---------------------------------------------------------------------------

def _check_bessel_args(nu, x):
    nu = float(nu)
    x = float(x)
    if not (nu >= 0.0 and math.isfinite(nu)):
        raise DomainError(f"order must be finite and >= 0, got {nu}")
    if not (x >= 0.0 and math.isfinite(x)):
        raise DomainError(f"argument must be finite and >= 0, got {x}")
    return nu, x


def bessel_j(nu: float, x: float, derivative: bool = False) -> float:
    """J_nu(x), or dJ_nu/dx when ``derivative`` is set."""
    nu, x = _check_bessel_args(nu, x)
    j, jp = kernels.jv_jvp(nu, x)
    return jp if derivative else j


def bessel_i(nu: float, x: float, derivative: bool = False, log_scaled: bool = False) -> float:
    """I_nu(x), or its x-derivative.

    With ``log_scaled`` the natural log is returned, which never overflows.
    Otherwise an ``OverflowError`` is raised when the value exceeds the
    double range.
    """
    nu, x = _check_bessel_args(nu, x)
    if x == 0.0:
        if derivative:
            val = 0.5 if nu == 1.0 else (math.inf if 0.0 < nu < 1.0 else 0.0)
        else:
            val = 1.0 if nu == 0.0 else 0.0
        return math.log(val) if log_scaled and val > 0 else (-math.inf if log_scaled else val)
    li, lip = kernels.iv_log(nu, x)
    out = lip if derivative else li
    if log_scaled:
        return out
    if out > 709.78:
        raise OverflowError(f"I_{nu}({x}) overflows; request log_scaled=True")
    return math.exp(out)


def log_bessel_h(sign: int, nu: float, x: float) -> float:
    """log of H(x) = sign * I_nu(x)/2 + x I_nu'(x) for x > 0.

    For ``sign = -1`` the order must exceed 1/2 so that H stays positive.
    """
    nu, x = _check_bessel_args(nu, x)
    if x == 0.0:
        raise DomainError("log_bessel_h needs x > 0")
    if sign < 0 and nu <= 0.5:
        raise DomainError("H with minus sign requires order > 1/2")
    li, lip = kernels.iv_log(nu, x)
    ratio = x * math.exp(lip - li)
    return li + math.log(ratio + (0.5 if sign > 0 else -0.5))


# ---------------------------------------------------------------------------
# Zeros
# ---------------------------------------------------------------------------

def _family(family) -> ZeroFamily:
    try:
        return ZeroFamily(family)
    except ValueError:
        raise DomainError(f"unknown zero family {family!r}") from None


def zero_lower_bound(family, nu: float) -> float:
    """Lower bound for the first positive zero of the family at order nu."""
    return kernels.lower_bound(_family(family).code, float(nu))


def zeros(family, nu: float, count: int | None = None, upto: float | None = None) -> list:
    """Consecutive positive zeros, either the first ``count`` or all up to ``upto``.

    Zeros are strictly increasing, each confirmed by a sign change; failures
    raise ``ZeroFinderError`` with the offending bracket.
    """
    fam = _family(family)
    nu = float(nu)
    if nu < 0.0:
        raise DomainError("order must be >= 0")
    if fam is ZeroFamily.JPrimeZero and 0.0 < nu < MIN_JPRIME_ORDER:
        # j'_{nu,1} ~ sqrt(2 nu) sits within rounding of its lower bound
        raise DomainError(f"J' zeros need order 0 or >= {MIN_JPRIME_ORDER}, got {nu}")
    if count is None and upto is None:
        raise DomainError("give count or upto")
    n = -1 if count is None else int(count)
    xmax = math.inf if upto is None else float(upto)
    return kernels.find_zeros(fam.code, nu, n, xmax)


def zero(family, nu: float, k: int) -> float:
    """k-th positive zero (k >= 1)."""
    if int(k) < 1:
        raise DomainError("zero index k starts at 1")
    return zeros(family, nu, count=int(k))[-1]


# ---------------------------------------------------------------------------
# Uniform expansion coefficients
# ---------------------------------------------------------------------------

def uniform_expansion_coeffs(kind: str, p: float) -> list:
    """First corrections of the uniform large-order expansions, as functions of p = (1+z^2)^{-1/2}.

    kind ``I``: [U1] for I_nu(nu z); ``Iprime``: [V1] for I_nu'(nu z);
    ``Hplus`` / ``Hminus``: [W1, W2] for the combinations +/- I/2 + zI'.
    """
    p2 = p * p
    if kind == "I":
        return [p / 8.0 - 5.0 * p * p2 / 24.0]
    if kind == "Iprime":
        return [-3.0 * p / 8.0 + 7.0 * p * p2 / 24.0]
    if kind == "Hplus":
        return [p / 8.0 + 7.0 * p * p2 / 24.0,
                -7.0 * p2 / 128.0 + 79.0 * p2 * p2 / 192.0 - 455.0 * p2 ** 3 / 1152.0]
    if kind == "Hminus":
        return [-7.0 * p / 8.0 + 7.0 * p * p2 / 24.0,
                -23.0 * p2 / 128.0 + 119.0 * p2 * p2 / 192.0 - 455.0 * p2 ** 3 / 1152.0]
    raise DomainError(f"unknown expansion kind {kind!r}")

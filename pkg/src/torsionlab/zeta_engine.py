"""Analytic continuation machinery for the cone zeta determinants.

Contents:

* ``simple_bessel_zeta``: value and derivative at s = 0 of
  z(s) = sum_k (j_{nu,k}^2 / l^2 + q^2)^{-s}.
* ``PLambdaExpansion`` / ``phi_transform``: the coefficient functions of the
  uniform large-order expansion, written as sums of c (1 - lambda)^{-a}, and
  their Mellin-contour transforms Phi(s) = sum c Gamma(s+a) / (Gamma(a) s).
* ``t4_difference``: value and derivative at zero of the difference of two
  double zeta functions decomposed over a common simple sequence.
* ``circle_Z_difference`` / ``sphere_Z_difference``: the two instances used
  by the cone pipelines.
* ``zeta_sp_sphere`` and ``F_zero``: the S^2 eigenvalue zeta function and the
  continuation F(0, nu), each by two independent routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from scipy.integrate import quad

from . import specfun
from .errors import ConsistencyError, DomainError, PoleError
from .specfun import EULER_GAMMA, bernoulli, digamma, gamma_ln, hurwitz_zeta, riemann_zeta

F_ZERO_TOLERANCE = 5e-7


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

class SimpleZetaValues(NamedTuple):
    at0: float
    deriv_at0: float


class ZDifference(NamedTuple):
    at0: float
    deriv_at0: float


@dataclass(frozen=True)
class MeromorphicValue:
    """Laurent data of a function with at most a simple pole at ``location``."""

    residue: float
    finite_part: float
    location: float = 0.0


@dataclass(frozen=True)
class PLambdaExpansion:
    """sum_a c_a (1 - lambda)^{-a} + constant, with distinct exponents a > 0."""

    terms: tuple = ()
    constant: float = 0.0

    def __post_init__(self):
        merged: dict = {}
        for c, a in self.terms:
            a = float(a)
            if not a > 0.0:
                raise DomainError(f"expansion exponents must be positive, got {a}")
            merged[a] = merged.get(a, 0.0) + float(c)
        object.__setattr__(self, "terms", tuple((c, a) for a, c in sorted(merged.items()) if c != 0.0))
        object.__setattr__(self, "constant", float(self.constant))

    def __call__(self, lam: float) -> float:
        if not lam < 1.0:
            raise DomainError("expansion evaluated only for lambda < 1")
        return math.fsum([c * (1.0 - lam) ** (-a) for c, a in self.terms] + [self.constant])

    def __add__(self, other: "PLambdaExpansion") -> "PLambdaExpansion":
        return PLambdaExpansion(self.terms + other.terms, self.constant + other.constant)

    def __neg__(self) -> "PLambdaExpansion":
        return PLambdaExpansion(tuple((-c, a) for c, a in self.terms), -self.constant)

    def __sub__(self, other: "PLambdaExpansion") -> "PLambdaExpansion":
        return self + (-other)

    def scale(self, k: float) -> "PLambdaExpansion":
        return PLambdaExpansion(tuple((k * c, a) for c, a in self.terms), k * self.constant)


@dataclass(frozen=True)
class DecompositionConfig:
    """Parameters of a decomposition of a double sequence over a simple sequence U.

    Only exponents sigma at which zeta(s, U) has a pole contribute; the
    finite part of zeta(s, U) at the pole may be left as ``None`` when its
    coefficient is known to vanish.
    """

    power: float
    length: int
    sigmas: tuple
    pole: float
    pole_residue: float
    pole_finite_part: float | None = field(default=None)

    def __post_init__(self):
        if not self.power > 0:
            raise DomainError("power must be positive")
        if list(self.sigmas) != sorted(self.sigmas):
            raise DomainError("exponent list must be increasing")


def circle_config(nu: float) -> DecompositionConfig:
    """U = {nu n}: zeta(s, U) = nu^{-s} zeta(s), simple pole at s = 1."""
    return DecompositionConfig(2.0, 2, (-1, 0, 1), 1.0, 1.0 / nu, (EULER_GAMMA + math.log(nu)) / nu)


def sphere_config(nu: float) -> DecompositionConfig:
    """U = {(2n+1) : mu_n}: simple pole at s = 2 with residue 2/nu^2; finite part unused."""
    return DecompositionConfig(2.0, 3, (-1, 0, 1, 2), 2.0, 2.0 / (nu * nu), None)


# ---------------------------------------------------------------------------
# Simple Bessel zeta
# ---------------------------------------------------------------------------

def simple_bessel_zeta(nu: float, q: float, l: float) -> SimpleZetaValues:
    """Value and derivative at s = 0 of sum_k (j_{nu,k}^2/l^2 + q^2)^{-s}."""
    if not nu >= 0.0:
        raise DomainError("order must be >= 0")
    if not l > 0.0:
        raise DomainError("length must be positive")
    if not q >= 0.0:
        raise DomainError("q must be >= 0")
    at0 = -0.5 * (nu + 0.5)
    if q == 0.0:
        deriv = -(0.5 * math.log(math.pi) + (nu + 0.5) * math.log(l) - (nu - 0.5) * math.log(2.0) - gamma_ln(nu + 1.0))
    else:
        log_i = specfun.bessel_i(nu, l * q, log_scaled=True)
        deriv = -(0.5 * math.log(2.0 * math.pi * l) + log_i - nu * math.log(q))
    return SimpleZetaValues(at0, deriv)


# ---------------------------------------------------------------------------
# Phi transform
# ---------------------------------------------------------------------------

class PhiTransform:
    """Phi(s) = sum_a c_a Gamma(s+a) / (Gamma(a) s) with its Laurent data at 0."""

    def __init__(self, expansion: PLambdaExpansion):
        self.expansion = expansion
        self.at_zero = MeromorphicValue(
            math.fsum(c for c, _ in expansion.terms),
            math.fsum(c * digamma(a) for c, a in expansion.terms),
            0.0,
        )

    def __call__(self, s: float) -> float:
        if s == 0.0:
            raise PoleError("Phi is evaluated away from s = 0; use .at_zero")
        out = []
        for c, a in self.expansion.terms:
            if s + a <= 0.0:
                raise DomainError("Phi evaluated only where s + a > 0")
            out.append(c * math.exp(gamma_ln(s + a) - gamma_ln(a)) / s)
        return math.fsum(out)


def phi_transform(expansion: PLambdaExpansion) -> PhiTransform:
    return PhiTransform(expansion)


def circle_phi_pair() -> tuple:
    """Coefficient functions of order 1/(nu n) for the sequences of J and J' zeros."""
    phi = PLambdaExpansion(((-1.0 / 8.0, 0.5), (5.0 / 24.0, 1.5)), -1.0 / 12.0)
    phi_hat = PLambdaExpansion(((3.0 / 8.0, 0.5), (-7.0 / 24.0, 1.5)), -1.0 / 12.0)
    return phi, phi_hat


def sphere_phi2_pair() -> tuple:
    """Coefficient functions of order 1/mu_n^2 for the sequences of G+ and G- zeros."""
    plus = PLambdaExpansion(((1.0 / 16.0, 1.0), (-3.0 / 8.0, 2.0), (7.0 / 16.0, 3.0)), -1.0 / 8.0)
    minus = PLambdaExpansion(((9.0 / 16.0, 1.0), (-7.0 / 8.0, 2.0), (7.0 / 16.0, 3.0)), -1.0 / 8.0)
    return plus, minus


# ---------------------------------------------------------------------------
# Difference assembly
# ---------------------------------------------------------------------------

def t4_difference(config: DecompositionConfig, a00_diff: float, a01_diff: float, a01_deriv_diff: float,
                  phi_diff: MeromorphicValue) -> ZDifference:
    """Value and derivative at 0 of zeta(s, S1) - zeta(s, S2).

    ``a00_diff``, ``a01_diff``, ``a01_deriv_diff`` are the differences of the
    regular parts A_{0,0}(0), A_{0,1}(0), A_{0,1}'(0); ``phi_diff`` is the
    Laurent data of the difference of the Phi functions for the exponent at
    the pole of zeta(s, U).
    """
    ru = config.pole_residue
    k = config.power
    at0 = -a01_diff + phi_diff.residue * ru / k
    terms = [-a00_diff, -a01_deriv_diff, EULER_GAMMA / k * phi_diff.residue * ru, phi_diff.finite_part * ru / k]
    if phi_diff.residue != 0.0:
        if config.pole_finite_part is None:
            raise DomainError("finite part of zeta(s, U) at its pole is required when Phi has a pole")
        terms.append(phi_diff.residue * config.pole_finite_part)
    return ZDifference(at0, math.fsum(terms))


def circle_Z_difference(nu: float) -> ZDifference:
    """Z(0) - Zhat(0) and Z'(0) - Zhat'(0) for the J and J' zero sequences of orders nu n."""
    if not nu >= 1.0:
        raise DomainError("nu must be >= 1")
    phi, phi_hat = circle_phi_pair()
    dphi = phi_transform(phi - phi_hat).at_zero
    # A_{0,0} agree; A_{0,1} differ by (1/2) nu^{-2s} zeta(2s)
    z0 = riemann_zeta(0.0)
    dz0 = riemann_zeta(0.0, derivative=True)
    a01 = 0.5 * z0
    a01_deriv = 0.5 * (-2.0 * math.log(nu) * z0 + 2.0 * dz0)
    return t4_difference(circle_config(nu), 0.0, a01, a01_deriv, dphi)


def sphere_Z_difference(nu: float, tol: float = F_ZERO_TOLERANCE) -> ZDifference:
    """Z_+(0) - Z_-(0) and its derivative for the G+ and G- zero sequences of orders mu_n."""
    if not nu >= 1.0:
        raise DomainError("nu must be >= 1")
    plus, minus = sphere_phi2_pair()
    dphi = phi_transform(plus - minus).at_zero
    # A_{0,1,+} = A_{0,1,-}; A_{0,0,+} - A_{0,0,-} = F(0, nu)
    return t4_difference(sphere_config(nu), F_zero(nu, tol), 0.0, 0.0, dphi)


# ---------------------------------------------------------------------------
# zeta(s, Sp_+ of the Laplacian on S^2) = sum (2n+1) (n(n+1))^{-s}
# ---------------------------------------------------------------------------

def _binom_real(x: float, j: int) -> float:
    out = 1.0
    for i in range(j):
        out *= (x - i) / (i + 1)
    return out


def zeta_sp_sphere(s: float) -> float:
    """sum_{n>=1} (2n+1) (n(n+1))^{-s}, continued to s >= -1 (pole at s = 1).

    Expanding (n(n+1))^{-s} = ((n+1/2)^2 - 1/4)^{-s} binomially gives
    2 sum_j C(-s, j) (-1/4)^j zeta_H(2s+2j-1, 3/2).
    """
    s = float(s)
    if s == 1.0:
        raise PoleError("zeta(s, Sp) has a simple pole at s = 1")
    if s < -1.0:
        raise DomainError("zeta_sp_sphere supports s >= -1")
    terms = []
    for j in range(0, 400):
        arg = 2.0 * s + 2 * j - 1.0
        if arg == 1.0:
            # binomial vanishes where zeta_H has its pole; the product tends to -(-1/4)^j / j
            t = -((-0.25) ** j) / j
        else:
            c = _binom_real(-s, j)
            t = 0.0 if c == 0.0 else 2.0 * c * (-0.25) ** j * hurwitz_zeta(arg, 1.5)
        terms.append(t)
        if j > 2 and abs(t) < 1e-18 * max(1.0, abs(math.fsum(terms))):
            break
    return math.fsum(terms)


def _plana_integrand_sin(y: float) -> float:
    if y == 0.0:
        return 6.0 * 4.0 ** -0.25 * 0.75 / (2.0 * math.pi)
    theta = math.atan2(3.0 * y, 2.0 - y * y)
    return 6.0 * (y ** 4 + 5.0 * y * y + 4.0) ** -0.25 * math.sin(0.5 * theta) / math.expm1(2.0 * math.pi * y)


def _plana_integrand_cos(y: float) -> float:
    if y == 0.0:
        return -4.0 * 4.0 ** -0.25 / (2.0 * math.pi)
    theta = math.atan2(3.0 * y, 2.0 - y * y)
    return -4.0 * y * (y ** 4 + 5.0 * y * y + 4.0) ** -0.25 * math.cos(0.5 * theta) / math.expm1(2.0 * math.pi * y)


def zeta_sp_sphere_half_plana() -> float:
    """zeta(1/2, Sp) from the Plana summation formula.

    With g(x) = (2x+3)((x+1)(x+2))^{-1/2}, g(0)/2 + int_0^inf g = -5 sqrt(2)/4,
    and the two oscillatory integrals on [0, 10] carry the correction; the
    tail beyond y = 10 is below e^{-20 pi}.
    """
    i_sin, _ = quad(_plana_integrand_sin, 0.0, 10.0, epsabs=1e-14, epsrel=1e-13, limit=200)
    i_cos, _ = quad(_plana_integrand_cos, 0.0, 10.0, epsabs=1e-14, epsrel=1e-13, limit=200)
    return math.fsum([-1.25 * math.sqrt(2.0), i_sin, i_cos])


# ---------------------------------------------------------------------------
# F(0, nu)
# ---------------------------------------------------------------------------

def _sp_bound(m: int, nu: float, zsp: float) -> float:
    return (2 * m + 1) * nu ** (-(2 * m + 1)) * abs(zsp) * 4.0 ** (-m)


def F_zero_series(nu: float) -> float:
    """F(0, nu) from the double series in zeta(k+j+1/2, Sp), leading term by Plana."""
    terms = [zeta_sp_sphere_half_plana() / nu]
    for m in range(1, 61):
        zsp = zeta_sp_sphere(m + 0.5)
        if _sp_bound(m, nu, zsp) < 1e-13:
            break
        for k in range(0, m + 1):
            j = m - k
            coef = _binom_real(-k - 0.5, j) / ((2 * k + 1) * 4.0 ** k * 4.0 ** j)
            terms.append(coef * zsp / nu ** (2 * m + 1))
    return math.fsum(terms)


def _r_part(mu: float) -> float:
    """log((2mu+1)/(2mu-1)) - 1/mu, computed without cancellation."""
    x = 0.5 / mu
    if x < 0.1:
        x2 = x * x
        acc = []
        p = x * x2
        k = 1
        while True:
            t = 2.0 * p / (2 * k + 1)
            acc.append(t)
            if t < 1e-18 * acc[0]:
                break
            p *= x2
            k += 1
        return math.fsum(acc)
    return math.log((2.0 * mu + 1.0) / (2.0 * mu - 1.0)) - 1.0 / mu


def F_zero_subtraction(nu: float, head: int = 2000) -> float:
    """F(0, nu) by splitting log((2mu+1)/(2mu-1)) = 1/mu + r(mu).

    The r-part converges at s = 0 and is summed directly with an
    Euler-Maclaurin tail; the 1/mu part is continued term by term with
    zeta(j+1/2, Sp) from the Hurwitz-binomial route.
    """
    def mu(x):
        return math.sqrt(nu * nu * x * (x + 1.0) + 0.25)

    def g(x):
        return (2.0 * x + 1.0) * _r_part(mu(x))

    head_sum = math.fsum(g(float(n)) for n in range(1, head + 1))
    big = float(head)
    integral, _ = quad(g, big, math.inf, epsabs=1e-16, epsrel=1e-13, limit=200)
    h = 1e-2 * big
    g1 = (g(big + h) - g(big - h)) / (2.0 * h)
    tail = integral - 0.5 * g(big) - float(bernoulli(2)) / 2.0 * g1
    r_total = head_sum + tail

    inv = [zeta_sp_sphere(0.5) / nu]
    for j in range(1, 80):
        t = _binom_real(-0.5, j) * 4.0 ** (-j) * nu ** (-1 - 2 * j) * zeta_sp_sphere(j + 0.5)
        inv.append(t)
        if abs(t) < 1e-18:
            break
    return math.fsum(inv) + r_total


def F_zero_methods(nu: float) -> tuple:
    if not nu >= 1.0:
        raise DomainError("nu must be >= 1")
    return F_zero_series(nu), F_zero_subtraction(nu)


def F_zero(nu: float, tol: float = F_ZERO_TOLERANCE) -> float:
    """F(0, nu), the continuation to s = 0 of
    sum (2n+1) mu_n^{-2s} log((2 mu_n + 1)/(2 mu_n - 1)).

    Both routes are evaluated; if they differ by more than ``tol`` a
    ``ConsistencyError`` is raised. The subtraction route is returned.
    """
    series, subtraction = F_zero_methods(nu)
    if not abs(series - subtraction) <= tol:
        raise ConsistencyError(
            f"F(0, {nu}): series {series!r} and subtraction {subtraction!r} differ by {abs(series - subtraction):.3e}"
        )
    return subtraction


def F_one_single_coefficient_rearrangement(s: float = 0.0) -> float:
    """The single-coefficient rearrangement of F(s, 1),
    (1-2s) zeta'(2s) + sum_k C(1-2s, 2k+1) zeta'(2s+2k) / 2^{2k+1}.

    Kept as a diagnostic: against the binomial expansion it misses an overall
    factor 2 (and weights the k >= 1 terms by 2^{-2k-1} instead of 4^{-k}),
    so at s = 0 it gives zeta'(0) = -log(2 pi)/2 instead of F(0, 1).
    """
    terms = [(1.0 - 2.0 * s) * riemann_zeta(2.0 * s, derivative=True)]
    for k in range(1, 40):
        c = _binom_real(1.0 - 2.0 * s, 2 * k + 1)
        if c == 0.0:
            continue
        terms.append(c * riemann_zeta(2.0 * s + 2 * k, derivative=True) / 2.0 ** (2 * k + 1))
    return math.fsum(terms)


def F_one_rearrangement(s: float = 0.0) -> float:
    """F(s, 1) = 2 sum_{k>=0} C(1-2s, 2k+1) zeta'(2s+2k) / 4^k.

    Expanding (2n +/- 1)^{1-2s} around 2n gives this series with an overall
    factor 2 and weight 4^{-k}; at s = 0 only k = 0 survives and
    F(0, 1) = 2 zeta'(0) = -log(2 pi).
    """
    terms = [2.0 * (1.0 - 2.0 * s) * riemann_zeta(2.0 * s, derivative=True)]
    for k in range(1, 60):
        c = _binom_real(1.0 - 2.0 * s, 2 * k + 1)
        if c == 0.0:
            continue
        t = 2.0 * c * riemann_zeta(2.0 * s + 2 * k, derivative=True) / 4.0 ** k
        terms.append(t)
        if abs(t) < 1e-18:
            break
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# Gamma functions of the single sequences
# ---------------------------------------------------------------------------

def log_gamma_sequence(case: str, n: int, lam: float, nu: float = 1.0) -> float:
    """log Gamma(-lambda, S_n / u_n^2) = -log prod_k (1 + (-lambda) u_n^2 / z_k^2)
    in closed form, for lambda < 0.

    Cases: ``circle_S`` (zeros of J_{nu n}), ``circle_Shat`` (J'_{nu n}),
    ``sphere_Splus`` / ``sphere_Sminus`` (G+/- at order mu_n).
    """
    if not lam < 0.0:
        raise DomainError("lambda must be negative")
    if int(n) != n or n < 1:
        raise DomainError("band index n must be >= 1")
    root = math.sqrt(-lam)
    if case in ("circle_S", "circle_Shat"):
        u = nu * n
        common = u * math.log(u) - u * math.log(2.0) - gamma_ln(u + 1.0)
        if case == "circle_S":
            return -specfun.bessel_i(u, u * root, log_scaled=True) + u * math.log(root) + common
        return -specfun.bessel_i(u, u * root, derivative=True, log_scaled=True) + (u - 1.0) * math.log(root) + common
    if case in ("sphere_Splus", "sphere_Sminus"):
        sign = 1 if case == "sphere_Splus" else -1
        u = math.sqrt(nu * nu * n * (n + 1) + 0.25)
        return (-specfun.log_bessel_h(sign, u, u * root) + u * math.log(root) + u * math.log(u)
                - u * math.log(2.0) - gamma_ln(u) + math.log1p(sign * 0.5 / u))
    raise DomainError(f"unknown sequence case {case!r}")


def sequence_family(case: str) -> tuple:
    """(zero family, order rule) behind a ``log_gamma_sequence`` case."""
    return {
        "circle_S": (specfun.ZeroFamily.JZero, "nu*n"),
        "circle_Shat": (specfun.ZeroFamily.JPrimeZero, "nu*n"),
        "sphere_Splus": (specfun.ZeroFamily.GPlusZero, "mu_n"),
        "sphere_Sminus": (specfun.ZeroFamily.GMinusZero, "mu_n"),
    }[case]

"""Analytic torsion of discs and cones, boundary anomalies and cross-checks.

Every log-torsion is reported as a ``TorsionReport`` whose ``breakdown``
lists the additive pieces; ``log_value`` is their compensated sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import chain_torsion
from .errors import DomainError, UnsupportedGeometryError
from .geometry import ConeGeometry, disc, sin_of_angle, unit_sphere_volume
from .zeta_engine import F_ZERO_TOLERANCE, F_zero, circle_Z_difference, simple_bessel_zeta, sphere_Z_difference

BOUNDARY_CONDITIONS = ("abs", "rel")


def _check_bc(bc: str) -> None:
    if bc not in BOUNDARY_CONDITIONS:
        raise DomainError(f"boundary condition must be 'abs' or 'rel', got {bc!r}")


def _harmonic(p: int) -> Fraction:
    return sum((Fraction(1, n) for n in range(1, p + 1)), Fraction(0))


def _odd_harmonic(p: int) -> Fraction:
    return sum((Fraction(1, 2 * n - 1) for n in range(1, p + 1)), Fraction(0))


def euler_characteristic_sphere(d: int) -> int:
    return 2 if d % 2 == 0 else 0


@dataclass(frozen=True)
class TorsionReport:
    breakdown: dict
    method: str
    geometry: ConeGeometry
    bc: str
    log_value: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "log_value", math.fsum(self.breakdown.values()))

    def negated(self, bc: str) -> "TorsionReport":
        return TorsionReport({k: -v for k, v in self.breakdown.items()}, self.method, self.geometry, bc)

    def with_bc(self, bc: str) -> "TorsionReport":
        return TorsionReport(dict(self.breakdown), self.method, self.geometry, bc)

    def as_dict(self) -> dict:
        return {
            "geometry": self.geometry.as_dict(),
            "bc": self.bc,
            "method": self.method,
            "log_torsion": self.log_value,
            "breakdown": dict(self.breakdown),
        }


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def analytic_torsion_disc(m: int, l: float = 1.0, rank: int = 1) -> TorsionReport:
    """log T of D^m_l with absolute boundary conditions."""
    geom = disc(m, l, rank)
    if m == 1:
        terms = {"length": 0.5 * rank * math.log(l), "log2": 0.5 * rank * math.log(2.0)}
        return TorsionReport(terms, "closed_form", geom, "abs")
    terms = {"volume": 0.5 * rank * math.log(geom.volume)}
    if m % 2 == 1:
        p = (m + 1) // 2
        terms["log2"] = 0.5 * rank * math.log(2.0)
        terms["harmonic_sum"] = 0.25 * rank * float(_harmonic(p - 1))
    else:
        p = m // 2
        terms["harmonic_sum"] = 0.5 * p * rank * float(_odd_harmonic(p))
    return TorsionReport(terms, "closed_form", geom, "abs")


def analytic_torsion_cone_circle(alpha: float, l: float = 1.0, bc: str = "abs", rank: int = 1) -> TorsionReport:
    """log T of the cone over the circle; the relative value is minus the absolute one."""
    _check_bc(bc)
    geom = ConeGeometry(1, alpha, l, rank)
    a = geom.sin_alpha
    terms = {"volume": 0.5 * rank * math.log(math.pi * l * l * a), "boundary": 0.5 * rank * a}
    report = TorsionReport(terms, "closed_form", geom, "abs")
    return report if bc == "abs" else report.negated("rel")


def analytic_torsion_cone_sphere(alpha: float, l: float = 1.0, bc: str = "abs", rank: int = 1,
                                 tol: float = F_ZERO_TOLERANCE) -> TorsionReport:
    """log T of the cone over S^2, equal for both boundary conditions."""
    _check_bc(bc)
    geom = ConeGeometry(2, alpha, l, rank)
    a = geom.sin_alpha
    terms = {
        "volume": 0.5 * rank * math.log(4.0 * l ** 3 / 3.0),
        "F_term": -0.5 * rank * F_zero(geom.nu, tol),
        "boundary": 0.25 * rank * a * a,
    }
    return TorsionReport(terms, "closed_form", geom, bc)


# ---------------------------------------------------------------------------
# Spectral pipelines
# ---------------------------------------------------------------------------

def pipeline_circle(alpha: float, l: float = 1.0, bc: str = "abs", rank: int = 1) -> TorsionReport:
    """log T of the cone over the circle assembled from the zeta determinants.

    t'(0) = 1/2 z'(0,0,0,l) - 1/2 z'(0,1,0,l) + (Z(0) - Zhat(0)) log l^2 + Z'(0) - Zhat'(0),
    where the two simple zetas carry the n = 0 modes and Z, Zhat the bands of
    orders nu n, n >= 1.
    """
    _check_bc(bc)
    geom = ConeGeometry(1, alpha, l, rank)
    z0 = simple_bessel_zeta(0.0, 0.0, l).deriv_at0
    z1 = simple_bessel_zeta(1.0, 0.0, l).deriv_at0
    diff = circle_Z_difference(geom.nu)
    terms = {
        "order0_zeta": 0.5 * rank * z0,
        "order1_zeta": -0.5 * rank * z1,
        "log_l2": rank * diff.at0 * math.log(l * l),
        "Z_difference": rank * diff.deriv_at0,
    }
    report = TorsionReport(terms, "pipeline", geom, "abs")
    return report if bc == "abs" else report.negated("rel")


def pipeline_sphere(alpha: float, l: float = 1.0, bc: str = "abs", rank: int = 1,
                    tol: float = F_ZERO_TOLERANCE) -> TorsionReport:
    """log T of the cone over S^2 assembled from the zeta determinants.

    t'(0) = -1/2 z'(0,1/2,0,l) - 1/2 z'(0,3/2,0,l)
            + 1/2 (Z_+(0) - Z_-(0)) log l^2 + 1/2 (Z_+'(0) - Z_-'(0)).
    """
    _check_bc(bc)
    geom = ConeGeometry(2, alpha, l, rank)
    zh = simple_bessel_zeta(0.5, 0.0, l).deriv_at0
    z3h = simple_bessel_zeta(1.5, 0.0, l).deriv_at0
    diff = sphere_Z_difference(geom.nu, tol)
    terms = {
        "order_half_zeta": -0.5 * rank * zh,
        "order_three_halves_zeta": -0.5 * rank * z3h,
        "log_l2": 0.5 * rank * diff.at0 * math.log(l * l),
        "Z_difference": 0.5 * rank * diff.deriv_at0,
    }
    return TorsionReport(terms, "pipeline", geom, bc)


def analytic_torsion(geom: ConeGeometry, bc: str = "abs", method: str = "closed",
                     tol: float = F_ZERO_TOLERANCE) -> TorsionReport:
    """Dispatch on geometry: discs of any dimension, cones over S^1 and S^2."""
    _check_bc(bc)
    if method not in ("closed", "pipeline"):
        raise DomainError(f"method must be 'closed' or 'pipeline', got {method!r}")
    n, a, l, r = geom.n, geom.alpha, geom.l, geom.rank
    if n == 1:
        fn = analytic_torsion_cone_circle if method == "closed" else pipeline_circle
        return fn(a, l, bc, r)
    if n == 2:
        fn = analytic_torsion_cone_sphere if method == "closed" else pipeline_sphere
        return fn(a, l, bc, r, tol)
    if not geom.is_disc:
        raise UnsupportedGeometryError(f"cones are supported over S^1 and S^2 only, got S^{n}")
    if method == "pipeline":
        raise UnsupportedGeometryError("the spectral pipeline covers dimensions 2 and 3")
    if bc != "abs":
        raise UnsupportedGeometryError("disc closed forms are stated for absolute boundary conditions")
    return analytic_torsion_disc(geom.dim, l, r)


# ---------------------------------------------------------------------------
# Anomaly boundary terms
# ---------------------------------------------------------------------------

def anomaly_bm(m: int, alpha: float = math.pi / 2.0, rank: int = 1) -> float:
    """Boundary anomaly log T - log tau from the Bruening-Ma formula (absolute bc)."""
    if int(m) != m or m < 2:
        raise UnsupportedGeometryError("anomaly formulas need dimension m >= 2")
    a = sin_of_angle(alpha)
    if m % 2 == 1:
        if a != 1.0:
            raise UnsupportedGeometryError("odd-dimensional anomaly is available for discs only")
        p = (m + 1) // 2
        chi = euler_characteristic_sphere(2 * p - 2)
        return 0.25 * rank * chi * (math.log(2.0) + 0.5 * float(_harmonic(p - 1)))
    p = m // 2
    if a == 1.0:
        return 0.5 * p * rank * float(_odd_harmonic(p))
    if m == 2:
        return 0.5 * rank * a
    raise UnsupportedGeometryError("even-dimensional cone anomaly is available for m = 2 only")


def df_integral(p: int, alpha: float, l: float = 1.0) -> float:
    """Closed-form value of the boundary transgression integral in dimension 2p."""
    a = sin_of_angle(alpha)
    vol = unit_sphere_volume(2 * p - 1) * (l * a) ** (2 * p - 1)
    pref = (-1) ** (p + 1) * math.factorial(2 * p) * vol / (
        (4.0 * math.pi) ** p * l ** (2 * p - 1) * math.factorial(p) * a ** (2 * p - 2))
    s = math.fsum((-1) ** k * a ** (2 * k) / (2 * k + 1) * math.comb(p - 1, k) for k in range(p))
    return pref * s


def anomaly_df(m: int, alpha: float = math.pi / 2.0, rank: int = 1) -> float:
    """Boundary anomaly from the Dai-Fang formula (absolute bc)."""
    if int(m) != m or m < 2:
        raise UnsupportedGeometryError("anomaly formulas need dimension m >= 2")
    if m % 2 == 1:
        if sin_of_angle(alpha) != 1.0:
            raise UnsupportedGeometryError("odd-dimensional anomaly is available for discs only")
        p = (m + 1) // 2
        return 0.25 * rank * euler_characteristic_sphere(2 * p - 2) * math.log(2.0)
    return 0.5 * rank * df_integral(m // 2, alpha)


@dataclass(frozen=True)
class LemmaDfCheck:
    p: int
    value: Fraction
    pi_exponent: Fraction
    unbalanced_pi_exponent: Fraction
    factorial_ratio: Fraction
    ok: bool


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def lemma_df_identity(p: int) -> LemmaDfCheck:
    """Exact evaluation of the normalisation chain of the Dai-Fang boundary integral.

    Each factor is split as (rational) * pi^(exponent). The normalising
    constant is taken as (-1)^{p(2p-1)} / pi^{(2p-1)/2}; with the exponent
    (2p+1)/2 the chain would leave a stray 1/pi, recorded in
    ``unbalanced_pi_exponent``. The length l cancels, so it is set to 1.
    """
    if int(p) != p or not 1 <= p <= 10:
        raise DomainError("p must be an integer in 1..10")
    sign_c = (-1) ** (p * (2 * p - 1))
    dfact = _double_factorial(2 * p - 1)
    rational = (
        Fraction(sign_c)
        * Fraction(2 ** (p - 1), dfact)
        * Fraction((-1) ** p * p * math.factorial(2 * p - 1), 2 ** (p - 1) * 2 ** p)
        * Fraction(2, math.factorial(p - 1))
    )
    # pi powers: c_B, 1/sqrt(pi), Vol(S^{2p-1}) ~ pi^p
    exponent = -Fraction(2 * p - 1, 2) - Fraction(1, 2) + p
    unbalanced = -Fraction(2 * p + 1, 2) - Fraction(1, 2) + p
    ratio = Fraction(math.factorial(2 * p - 1), math.factorial(p - 1) * dfact)
    ok = rational == p and exponent == 0 and ratio == 2 ** (p - 1)
    return LemmaDfCheck(p, rational, exponent, unbalanced, ratio, ok)


# ---------------------------------------------------------------------------
# Cross-consistency
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AnomalyComparison:
    bm_value: float | None
    df_value: float | None
    dimension: int
    geometry: ConeGeometry


@dataclass(frozen=True)
class ConsistencyReport:
    comparison: AnomalyComparison
    bc: str
    log_T_closed: float
    log_T_pipeline: float | None
    log_tau: float
    residual_bm: float | None
    residual_df: float | None

    def as_dict(self) -> dict:
        c = self.comparison
        return {
            "geometry": c.geometry.as_dict(),
            "bc": self.bc,
            "log_T_closed": self.log_T_closed,
            "log_T_pipeline": self.log_T_pipeline,
            "log_rs_torsion": self.log_tau,
            "anomaly_bm": c.bm_value,
            "anomaly_df": c.df_value,
            "residual_bm": self.residual_bm,
            "residual_df": self.residual_df,
        }


def _optional(fn, *args):
    try:
        return fn(*args)
    except UnsupportedGeometryError:
        return None


def consistency_report(geom: ConeGeometry, bc: str = "abs", tol: float = F_ZERO_TOLERANCE) -> ConsistencyReport:
    """log T by every available route, log tau, both anomalies and the residuals
    log T - log tau - anomaly.

    Relative anomalies follow from the absolute ones by duality: the factor is
    (-1)^{m-1}, matching log T_rel = (-1)^{m-1} log T_abs.
    """
    _check_bc(bc)
    m = geom.dim
    if m < 2:
        raise UnsupportedGeometryError("consistency report needs dimension m >= 2")
    if geom.n in (1, 2):
        closed = analytic_torsion(geom, bc, "closed", tol).log_value
        pipeline = analytic_torsion(geom, bc, "pipeline", tol).log_value
    else:
        if bc != "abs":
            raise UnsupportedGeometryError("disc closed forms are stated for absolute boundary conditions")
        closed = analytic_torsion(geom, bc, "closed", tol).log_value
        pipeline = None
    tau = chain_torsion.rs_torsion_closed(geom, bc)
    sign = 1.0 if bc == "abs" or m % 2 == 1 else -1.0
    bm = _optional(anomaly_bm, m, geom.alpha, geom.rank)
    df = _optional(anomaly_df, m, geom.alpha, geom.rank)
    bm = None if bm is None else sign * bm
    df = None if df is None else sign * df
    res_bm = None if bm is None else closed - tau - bm
    res_df = None if df is None else closed - tau - df
    return ConsistencyReport(AnomalyComparison(bm, df, m, geom), bc, closed, pipeline, tau, res_bm, res_df)

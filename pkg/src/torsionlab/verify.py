"""Self-check suites run by ``torsionlab verify``.

Each check returns a residual and its tolerance; checks are listed in a
fixed order and reported in that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import _backend, chain_torsion, spectrum, specfun, torsion, zeta_engine
from .geometry import ConeGeometry, disc

SUITES = ("specfun", "spectra", "engine", "torsion")
LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    description: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Check:
    check_id: str
    suite: str
    description: str
    fn: Callable  # () -> (residual, tolerance) or (residual, tolerance, passed, detail)

    def run(self) -> CheckResult:
        try:
            out = self.fn()
        except Exception as exc:  # a crashing check is a failed check
            return CheckResult(self.check_id, self.description, math.nan, math.nan, False, f"{type(exc).__name__}: {exc}")
        if len(out) == 2:
            res, tol = out
            return CheckResult(self.check_id, self.description, res, tol, bool(res <= tol))
        res, tol, ok, detail = out
        return CheckResult(self.check_id, self.description, res, tol, bool(ok), detail)


_CHECKS: list = []


def check(check_id: str, suite: str, description: str):
    def deco(fn):
        _CHECKS.append(Check(check_id, suite, description, fn))
        return fn
    return deco


# ---------------------------------------------------------------------------
# Shared oracles
# ---------------------------------------------------------------------------

def mcmahon_offset(family) -> float:
    """c in z_k ~ pi (k + c) for large k, as a function of the order nu: c = nu/2 + offset."""
    return -0.25 if specfun.ZeroFamily(family) == specfun.ZeroFamily.JZero else -0.75


def truncated_log_product(family, order: float, x: float, count: int, tail: bool = True) -> float:
    """sum_k log(1 + x / z_k^2) over the first ``count`` zeros, plus the
    1/z^2 tail estimate x / (pi^2 (K + c + 1/2)) when ``tail`` is set."""
    zs = specfun.zeros(family, order, count=count)
    s = math.fsum(math.log1p(x / (z * z)) for z in zs)
    if tail:
        c = order / 2.0 + mcmahon_offset(family)
        s += x / (math.pi ** 2 * (count + c + 0.5))
    return s


def bessel_product_error(nu: float, x: float, count: int) -> float:
    """Relative error of (x/2)^nu / Gamma(nu+1) prod_{k<=K} (1 + x^2/j_k^2) against I_nu(x)."""
    log_prod = truncated_log_product("JZero", nu, x * x, count, tail=False)
    log_i = specfun.bessel_i(nu, x, log_scaled=True)
    pref = nu * math.log(x / 2.0) - specfun.gamma_ln(nu + 1.0)
    return abs(math.expm1(pref + log_prod - log_i))


def sp_sphere_direct(s: float, head: int = 20000) -> float:
    """sum (2n+1)(n(n+1))^{-s} by direct summation with an Euler-Maclaurin tail."""
    from scipy.integrate import quad

    def f(x):
        return (2.0 * x + 1.0) * (x * (x + 1.0)) ** (-s)

    body = math.fsum(f(float(n)) for n in range(1, head + 1))
    big = float(head)
    integral, _ = quad(f, big, math.inf, epsabs=1e-17, epsrel=1e-14)
    h = 1e-2 * big
    d1 = (f(big + h) - f(big - h)) / (2.0 * h)
    return body + integral - 0.5 * f(big) - d1 / 12.0


# ---------------------------------------------------------------------------
# specfun
# ---------------------------------------------------------------------------

@check("specfun.gamma", "specfun", "log Gamma(1/2) = log sqrt(pi), log Gamma(10) = log 9!")
def _():
    return max(abs(specfun.gamma_ln(0.5) - 0.5 * math.log(math.pi)),
               abs(specfun.gamma_ln(10.0) - math.log(362880.0))), 1e-13


@check("specfun.digamma", "specfun", "psi(1) = -gamma, psi(1/2) = -gamma - 2 log 2")
def _():
    g = specfun.EULER_GAMMA
    return max(abs(specfun.digamma(1.0) + g), abs(specfun.digamma(0.5) + g + 2 * math.log(2.0))), 1e-13


@check("specfun.riemann", "specfun", "zeta(2), zeta(-1), zeta'(0)")
def _():
    return max(abs(specfun.riemann_zeta(2.0) - math.pi ** 2 / 6.0),
               abs(specfun.riemann_zeta(-1.0) + 1.0 / 12.0),
               abs(specfun.riemann_zeta(0.0, derivative=True) + 0.5 * LOG_2PI)), 1e-13


@check("specfun.hurwitz", "specfun", "zeta_H(2, 3/2) = pi^2/2 - 4")
def _():
    return abs(specfun.hurwitz_zeta(2.0, 1.5) - (math.pi ** 2 / 2.0 - 4.0)), 1e-13


@check("specfun.zeros", "specfun", "j_{0,1}, j'_{1,1}, j_{1/2,k} = k pi")
def _():
    errs = [abs(specfun.zero("JZero", 0.0, 1) - 2.404825557695773),
            abs(specfun.zero("JPrimeZero", 1.0, 1) - 1.8411837813406593)]
    errs += [abs(z - (k + 1) * math.pi) / ((k + 1) * math.pi)
             for k, z in enumerate(specfun.zeros("JZero", 0.5, count=200))]
    return max(errs), 1e-13


@check("specfun.backends", "specfun", "compiled and pure-Python kernels give the same zeros")
def _():
    if _backend.compiled is None:
        return 0.0, 0.0, True, "compiled backend not built; skipped"
    worst = 0.0
    for code, nu in ((0, 0.0), (1, 3.7), (2, 2.5), (3, 6.5)):
        a = _backend.pure.find_zeros(code, nu, 60, math.inf)
        b = _backend.compiled.find_zeros(code, nu, 60, math.inf)
        worst = max(worst, max(abs(x - y) / y for x, y in zip(a, b)))
    return worst, 1e-12


@check("specfun.bessel_product", "specfun", "truncated product over 10^4 zeros reproduces I_nu")
def _():
    worst = 0.0
    monotone = True
    for nu in (0.0, 1.0, 2.5):
        for x in (0.5, 2.0, 5.0):
            errs = [bessel_product_error(nu, x, k) for k in (100, 1000, 10000)]
            monotone &= errs[0] > errs[1] > errs[2]
            worst = max(worst, errs[-1])
    return worst, 1e-3, worst <= 1e-3 and monotone, "" if monotone else "error not decreasing in K"


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

@check("spectra.duality", "spectra", "bands of degree q (abs) equal bands of degree dim-q (rel)")
def _():
    bad = 0
    for section, top in (("circle", 2), ("sphere", 3)):
        for q in range(top + 1):
            if spectrum.spectrum(section, q, "abs").multiset() != spectrum.spectrum(section, top - q, "rel").multiset():
                bad += 1
    return float(bad), 0.0


@check("spectra.alternating", "spectra", "alternating band multiset cancels for both cones and both bc")
def _():
    left = sum(len(spectrum.alternating_multiset(s, bc)) for s in ("circle", "sphere") for bc in ("abs", "rel"))
    return float(left), 0.0


@check("spectra.circle_first", "spectra", "circle q=0 abs: first eigenvalue j'_{1,1}^2 with multiplicity 2")
def _():
    rows = spectrum.enumerate_eigenvalues(spectrum.cone_circle_spectrum(0, "abs"), 40.0)
    first = rows[0]
    ok = first.multiplicity == 2
    return abs(first.value - 1.8411837813406593 ** 2), 1e-12, ok and abs(first.value - 3.389957) < 1e-5, first.band


@check("spectra.sphere_first", "spectra", "sphere q=0 abs: first band G- at order mu_1 = 3/2")
def _():
    rows = spectrum.enumerate_eigenvalues(spectrum.cone_sphere_spectrum(0, "abs"), 40.0)
    first = rows[0]
    return abs(first.order - 1.5), 1e-15, first.band == "G-(mu_n)" and abs(first.order - 1.5) < 1e-15, first.band


# ---------------------------------------------------------------------------
# engine
# ---------------------------------------------------------------------------

@check("engine.phi1", "engine", "Phi_1, Phi-hat_1: residue 1/12, finite parts (5-g)/12 - log2/6, -(7+g)/12 - log2/6")
def _():
    g = specfun.EULER_GAMMA
    phi, phi_hat = zeta_engine.circle_phi_pair()
    a = zeta_engine.phi_transform(phi).at_zero
    b = zeta_engine.phi_transform(phi_hat).at_zero
    return max(abs(a.residue - 1 / 12), abs(b.residue - 1 / 12),
               abs(a.finite_part - ((5 - g) / 12 - math.log(2) / 6)),
               abs(b.finite_part - (-(7 + g) / 12 - math.log(2) / 6))), 1e-12


@check("engine.phi2", "engine", "Phi_2,+ - Phi_2,-: residue 0, finite part 1/2")
def _():
    plus, minus = zeta_engine.sphere_phi2_pair()
    v = zeta_engine.phi_transform(plus - minus).at_zero
    return max(abs(v.residue), abs(v.finite_part - 0.5)), 1e-12


@check("engine.P0", "engine", "every built-in expansion vanishes at lambda = 0")
def _():
    exps = list(zeta_engine.circle_phi_pair()) + list(zeta_engine.sphere_phi2_pair())
    return max(abs(e(0.0)) for e in exps), 1e-15


@check("engine.circle_Z", "engine", "Z(0) - Zhat(0) = 1/4 and Z' - Zhat' at nu = 1, 2")
def _():
    d1 = zeta_engine.circle_Z_difference(1.0)
    d2 = zeta_engine.circle_Z_difference(2.0)
    return max(abs(d1.at0 - 0.25), abs(d2.at0 - 0.25),
               abs(d1.deriv_at0 - (0.5 * LOG_2PI + 0.5)),
               abs(d2.deriv_at0 - (-0.5 * math.log(2) + 0.5 * LOG_2PI + 0.25))), 1e-12


@check("engine.simple_zeta_at0", "engine", "z(0, nu, q, l) = -(nu + 1/2)/2 on a grid")
def _():
    worst = 0.0
    for nu in (0.0, 0.5, 1.0, 2.5):
        for q in (0.0, 0.7, 3.0):
            for l in (0.5, 1.0, 2.0):
                worst = max(worst, abs(zeta_engine.simple_bessel_zeta(nu, q, l).at0 + 0.5 * (nu + 0.5)))
    return worst, 0.0


@check("engine.simple_zeta_product", "engine", "z'(0) difference identity against the truncated product")
def _():
    worst = 0.0
    for nu in (0.0, 1.0, 2.5):
        for q, qp in ((0.5, 1.5), (1.0, 0.0)):
            l = 1.3
            lhs = zeta_engine.simple_bessel_zeta(nu, q, l).deriv_at0 - zeta_engine.simple_bessel_zeta(nu, qp, l).deriv_at0
            rhs = -(truncated_log_product("JZero", nu, (l * q) ** 2, 10000)
                    - truncated_log_product("JZero", nu, (l * qp) ** 2, 10000))
            worst = max(worst, abs(lhs - rhs))
    return worst, 1e-5


@check("engine.sp_half", "engine", "zeta(1/2, Sp): Plana form vs Hurwitz-binomial continuation")
def _():
    return abs(zeta_engine.zeta_sp_sphere_half_plana() - zeta_engine.zeta_sp_sphere(0.5)), 1e-6


@check("engine.sp_direct", "engine", "zeta(s, Sp) at s = 2, 3 against direct summation")
def _():
    return max(abs(zeta_engine.zeta_sp_sphere(s) - sp_sphere_direct(s)) for s in (2.0, 3.0)), 1e-12


@check("engine.F1_oracle", "engine", "F(0, 1) by subtraction = -log(2 pi)")
def _():
    return abs(zeta_engine.F_zero_subtraction(1.0) + LOG_2PI), 1e-8


@check("engine.F_dual", "engine", "F(0, nu): series and subtraction agree for nu in {1, 1.5, 2, 5}")
def _():
    worst = 0.0
    for nu in (1.0, 1.5, 2.0, 5.0):
        a, b = zeta_engine.F_zero_methods(nu)
        worst = max(worst, abs(a - b))
    return worst, 5e-7


@check("engine.F1_rearrangement", "engine",
       "single-coefficient rearrangement of F(s, 1) gives -log(2 pi)/2 at s = 0, not F(0, 1): discrepancy flagged")
def _():
    f1 = zeta_engine.F_zero_subtraction(1.0)
    single = zeta_engine.F_one_single_coefficient_rearrangement(0.0)
    corrected = zeta_engine.F_one_rearrangement(0.0)
    gap = abs(single - f1)
    detected = abs(single + 0.5 * LOG_2PI) < 1e-12 and gap > 0.1 and abs(corrected - f1) < 1e-8
    detail = (f"DISCREPANCY: rearranged series = {single:.15g}, F(0,1) = {f1:.15g}, "
              f"gap = {gap:.15g} (= log(2 pi)/2); factor-2 corrected series = {corrected:.15g}")
    return abs(corrected - f1), 1e-8, detected, detail


@check("engine.log_gamma_sequence", "engine", "closed-form log Gamma(-lambda, S_n) vs canonical product over 10^3 zeros")
def _():
    worst = 0.0
    for case in ("circle_S", "circle_Shat", "sphere_Splus", "sphere_Sminus"):
        fam, rule = zeta_engine.sequence_family(case)
        for n in (1, 3):
            u = float(n) if rule == "nu*n" else spectrum.mu_n(1.0, n)
            for lam in (-1.0, -4.0):
                closed = zeta_engine.log_gamma_sequence(case, n, lam)
                prod = -truncated_log_product(fam, u, -lam * u * u, 1000)
                worst = max(worst, abs(closed - prod))
    return worst, 1e-6


# ---------------------------------------------------------------------------
# torsion
# ---------------------------------------------------------------------------

@check("torsion.D2", "torsion", "D^2: closed form and pipeline equal log(pi)/2 + 1/2")
def _():
    target = 0.5 * math.log(math.pi) + 0.5
    return max(abs(torsion.analytic_torsion_disc(2).log_value - target),
               abs(torsion.pipeline_circle(math.pi / 2).log_value - target)), 1e-10


@check("torsion.circle_grid", "torsion", "cone over S^1: pipeline vs closed form, abs + rel = 0")
def _():
    worst = 0.0
    for a in (math.pi / 6, math.pi / 4, math.pi / 3):
        for l in (1.0, 3.0):
            c = torsion.analytic_torsion_cone_circle(a, l, "abs").log_value
            p = torsion.pipeline_circle(a, l, "abs").log_value
            r = torsion.analytic_torsion_cone_circle(a, l, "rel").log_value
            worst = max(worst, abs(c - p), abs(c + r))
    return worst, 1e-10


@check("torsion.D3", "torsion", "D^3 pipeline = log(4 pi/3)/2 + log(2)/2 + 1/4")
def _():
    target = 0.5 * math.log(4 * math.pi / 3) + 0.5 * math.log(2) + 0.25
    return abs(torsion.pipeline_sphere(math.pi / 2).log_value - target), 1e-7


@check("torsion.sphere_grid", "torsion", "cone over S^2: pipeline vs closed form")
def _():
    worst = 0.0
    for a, l in ((math.pi / 2, 1.0), (math.pi / 4, 1.0), (math.pi / 3, 2.0)):
        worst = max(worst, abs(torsion.pipeline_sphere(a, l).log_value - torsion.analytic_torsion_cone_sphere(a, l).log_value))
    return worst, 1e-7


@check("torsion.lemma_df", "torsion", "boundary-integral normalisation and factorial identity, p = 1..10")
def _():
    bad = [p for p in range(1, 11) if not torsion.lemma_df_identity(p).ok]
    return float(len(bad)), 0.0


@check("torsion.anomaly_bm", "torsion", "log T - log tau - BM anomaly vanishes on D^2, D^3 and three circle cones")
def _():
    geoms = [disc(2), disc(3)] + [ConeGeometry(1, a, 1.0) for a in (math.pi / 6, math.pi / 4, math.pi / 3)]
    return max(abs(torsion.consistency_report(g).residual_bm) for g in geoms), 1e-10


@check("torsion.D3_df", "torsion", "D^3: Dai-Fang residual is 1/4 (counterexample)")
def _():
    r = torsion.consistency_report(disc(3)).residual_df
    return abs(r - 0.25), 1e-10, abs(r - 0.25) <= 1e-10, f"residual_df = {r:.15g}"


@check("torsion.D2_bm_df", "torsion", "D^2: Bruening-Ma and Dai-Fang anomalies agree")
def _():
    rep = torsion.consistency_report(disc(2))
    return abs(rep.comparison.bm_value - rep.comparison.df_value), 1e-10


@check("torsion.reidemeister", "torsion", "cellular torsion equals Vol^{+-1/2}")
def _():
    worst = 0.0
    for g in (disc(2), disc(3), ConeGeometry(1, math.pi / 6, 2.0), ConeGeometry(2, math.pi / 4, 1.5, 2)):
        for bc in ("abs", "rel"):
            cx, hb = chain_torsion.cone_cw_complex(g, bc)
            worst = max(worst, abs(chain_torsion.reidemeister_torsion(cx, hb) - chain_torsion.rs_torsion_closed(g, bc)))
    return worst, 1e-12


@check("torsion.rank_linearity", "torsion", "log-torsions scale linearly with rank")
def _():
    worst = 0.0
    for r in (2, 3):
        worst = max(worst,
                    abs(torsion.analytic_torsion_disc(3, 1.5, r).log_value - r * torsion.analytic_torsion_disc(3, 1.5).log_value),
                    abs(torsion.pipeline_circle(math.pi / 4, 2.0, "abs", r).log_value
                        - r * torsion.pipeline_circle(math.pi / 4, 2.0).log_value))
    return worst, 1e-12


def checks_for(suite: str) -> list:
    if suite == "all":
        return list(_CHECKS)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [c for c in _CHECKS if c.suite == suite]


def run_suite(suite: str) -> list:
    return [c.run() for c in checks_for(suite)]

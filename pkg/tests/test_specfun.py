import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from torsionlab import specfun
from torsionlab._coeffs import debye_polynomials
from torsionlab.errors import DomainError, PoleError, ZeroFinderError
from torsionlab.specfun import ZeroFamily

from conftest import rel_err

mp.mp.dps = 30


# --- gamma, digamma, zeta ---------------------------------------------------

@pytest.mark.parametrize("x", [1e-3, 0.1, 0.5, 0.99, 1.0, 1.7, 2.5, 3.3, 9.9, 10.0, 47.5, 1234.5])
def test_gamma_ln_matches_mpmath(x):
    assert abs(specfun.gamma_ln(x) - float(mp.loggamma(x))) <= 1e-14 * max(1.0, abs(float(mp.loggamma(x))))


@pytest.mark.parametrize("x", [0.05, 0.5, 1.0, 2.2, 7.0, 15.0, 300.0, -0.5, -2.3])
def test_digamma_matches_mpmath(x):
    assert abs(specfun.digamma(x) - float(mp.digamma(x))) <= 1e-13 * max(1.0, abs(float(mp.digamma(x))))


@given(st.floats(0.05, 50.0))
@settings(max_examples=60, deadline=None)
def test_gamma_recurrence(x):
    assert abs(specfun.gamma_ln(x + 1.0) - specfun.gamma_ln(x) - math.log(x)) < 2e-13 * max(1.0, abs(specfun.gamma_ln(x + 1)))


@pytest.mark.parametrize("s", [-3.0, -2.5, -1.0, -0.5, 0.0, 0.5, 1.5, 2.0, 3.5, 10.0, 40.0])
def test_riemann_zeta_and_derivative(s):
    assert abs(specfun.riemann_zeta(s) - float(mp.zeta(s))) <= 1e-13 * max(1.0, abs(float(mp.zeta(s))))
    d = float(mp.zeta(s, 1, 1))
    assert abs(specfun.riemann_zeta(s, derivative=True) - d) <= 1e-12 * max(1.0, abs(d))


@pytest.mark.parametrize("s,a", [(2.0, 1.5), (-1.0, 1.5), (-3.0, 0.25), (0.5, 1.5), (3.5, 2.0), (0.0, 0.7), (7.5, 1.5)])
def test_hurwitz_zeta_and_derivative(s, a):
    assert abs(specfun.hurwitz_zeta(s, a) - float(mp.zeta(s, a))) <= 1e-13 * max(1.0, abs(float(mp.zeta(s, a))))
    d = float(mp.zeta(s, a, 1))
    assert abs(specfun.hurwitz_zeta(s, a, derivative=True) - d) <= 1e-12 * max(1.0, abs(d))


def test_zeta_errors():
    with pytest.raises(PoleError):
        specfun.riemann_zeta(1.0)
    with pytest.raises(PoleError):
        specfun.hurwitz_zeta(1.0, 0.5)
    with pytest.raises(DomainError):
        specfun.hurwitz_zeta(2.0, 0.0)
    with pytest.raises(DomainError):
        specfun.hurwitz_zeta(-4.0, 1.0)


def test_bernoulli_exact():
    assert specfun.bernoulli(2) == Fraction(1, 6)
    assert specfun.bernoulli(12) == Fraction(-691, 2730)
    assert specfun.bernoulli(3) == 0


# --- Bessel ---------------------------------------------------------------

GRID = [(0.0, 0.3), (0.0, 7.0), (0.5, 2.0), (1.0, 1.0), (2.5, 24.0), (3.0, 30.0), (10.0, 5.0),
        (17.3, 40.0), (60.0, 61.0), (200.0, 150.0), (0.25, 900.0), (45.5, 1e4)]


@pytest.mark.parametrize("nu,x", GRID)
def test_bessel_j_matches_mpmath(kernels, nu, x):
    j, jp = kernels.jv_jvp(nu, x)
    ref, refp = float(mp.besselj(nu, x)), float(mp.besselj(nu, x, derivative=1))
    scale = max(abs(ref), abs(refp), 1e-300)
    assert abs(j - ref) <= 1e-11 * scale
    assert abs(jp - refp) <= 1e-11 * scale


@pytest.mark.parametrize("nu,x", [(0.0, 0.5), (1.0, 3.0), (2.5, 40.0), (10.0, 200.0), (30.0, 5.0),
                                  (0.5, 700.0), (14.9, 80.0), (15.0, 80.0), (100.0, 1e3), (3.0, 2000.0)])
def test_bessel_i_log_matches_mpmath(kernels, nu, x):
    li, lip = kernels.iv_log(nu, x)
    assert abs(li - float(mp.log(mp.besseli(nu, x)))) <= 1e-12 * max(1.0, abs(li))
    assert abs(lip - float(mp.log(mp.besseli(nu, x, derivative=1)))) <= 1e-12 * max(1.0, abs(lip))


def test_bessel_public_wrappers():
    assert specfun.bessel_j(0.0, 0.0) == 1.0
    assert abs(specfun.bessel_i(1.0, 2.0) - float(mp.besseli(1, 2))) < 1e-14
    with pytest.raises(OverflowError):
        specfun.bessel_i(0.0, 1000.0)
    assert abs(specfun.bessel_i(0.0, 1000.0, log_scaled=True) - float(mp.log(mp.besseli(0, 1000)))) < 1e-11
    with pytest.raises(DomainError):
        specfun.bessel_j(-1.0, 1.0)


@given(st.floats(0.0, 40.0), st.floats(0.1, 60.0))
@settings(max_examples=80, deadline=None)
def test_bessel_wronskian(nu, x):
    # J_nu J_{nu+1}' ... use the recurrence J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu via J' = J_{nu-1} - nu J / x
    j, jp = specfun.bessel_j(nu, x), specfun.bessel_j(nu, x, derivative=True)
    j1 = specfun.bessel_j(nu + 1.0, x)
    # J_{nu+1} = (nu/x) J_nu - J_nu'
    scale = max(abs(j), abs(jp), abs(j1), 1e-12)
    assert abs(j1 - (nu / x * j - jp)) <= 5e-11 * scale * max(1.0, nu / x)


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("nu,x", [(1.5, 0.7), (2.5, 3.0), (7.2, 30.0)])
def test_log_bessel_h(sign, nu, x):
    ref = sign * 0.5 * mp.besseli(nu, x) + x * mp.besseli(nu, x, derivative=1)
    assert abs(specfun.log_bessel_h(sign, nu, x) - float(mp.log(ref))) < 1e-12


# --- zeros ------------------------------------------------------------------

@pytest.mark.parametrize("fam,mpfun", [(ZeroFamily.JZero, 0), (ZeroFamily.JPrimeZero, 1)])
@pytest.mark.parametrize("nu", [0.0, 1.0, 2.5, 12.0, 50.0])
def test_zeros_match_mpmath(kernels, fam, mpfun, nu):
    zs = kernels.find_zeros(fam.code, nu, 12, math.inf)
    ks = range(1, 13)
    if fam == ZeroFamily.JPrimeZero and nu == 0.0:
        ks = range(2, 14)  # mpmath counts z = 0 as the first zero of J_0'
    ref = [float(mp.besseljzero(nu, k, derivative=mpfun)) for k in ks]
    assert max(rel_err(a, b) for a, b in zip(zs, ref)) < 1e-13


@pytest.mark.parametrize("sign,fam", [(1, ZeroFamily.GPlusZero), (-1, ZeroFamily.GMinusZero)])
@pytest.mark.parametrize("nu", [0.5, 1.5, 2.5, 9.5, 33.0])
def test_g_zeros_are_roots(sign, fam, nu):
    zs = specfun.zeros(fam, nu, count=20)
    for z in zs:
        f = lambda x: sign * 0.5 * mp.besselj(nu, x) + x * mp.besselj(nu, x, derivative=1)
        root = float(mp.findroot(f, z))
        assert rel_err(z, root) < 1e-13


def test_zero_scan_does_not_skip():
    # for nu = 1/2 the J zeros are exactly k pi
    zs = specfun.zeros(ZeroFamily.JZero, 0.5, upto=1000.0)
    assert len(zs) == int(1000.0 / math.pi)
    assert max(abs(z - (k + 1) * math.pi) for k, z in enumerate(zs)) < 1e-11


@given(st.sampled_from(list(ZeroFamily)), st.floats(0.5, 80.0))
@settings(max_examples=40, deadline=None)
def test_zero_properties(fam, nu):
    zs = specfun.zeros(fam, nu, count=25)
    assert zs[0] > specfun.zero_lower_bound(fam, nu)
    assert all(b > a for a, b in zip(zs, zs[1:]))
    # spacing tends to pi
    assert abs((zs[-1] - zs[-2]) - math.pi) < 0.5


@given(st.one_of(st.just(0.0), st.floats(1e-9, 60.0)))
@settings(max_examples=40, deadline=None)
def test_interlacing(nu):
    j = specfun.zeros(ZeroFamily.JZero, nu, count=15)
    jp = specfun.zeros(ZeroFamily.JPrimeZero, nu, count=15)
    if nu == 0.0:
        # J_0' = -J_1 has zeros j_{1,k}, which interlace the other way
        assert all(a < b for a, b in zip(j, jp))
    else:
        assert all(a < b for a, b in zip(jp, j))
        assert all(a < b for a, b in zip(j, jp[1:]))


def test_zeros_upto_and_count_agree(kernels):
    a = kernels.find_zeros(1, 4.0, -1, 80.0)
    b = kernels.find_zeros(1, 4.0, len(a), math.inf)
    assert a == b


def test_zero_errors():
    with pytest.raises(DomainError):
        specfun.zeros("nope", 1.0, count=3)
    with pytest.raises(DomainError):
        specfun.zeros(ZeroFamily.JZero, 1.0)
    with pytest.raises(DomainError):
        specfun.zero(ZeroFamily.JZero, 1.0, 0)
    with pytest.raises(DomainError):
        specfun.zeros(ZeroFamily.JPrimeZero, 1e-12, count=1)
    e = ZeroFinderError("failed", family="JZero", order=1.0, index=3, bracket=(1.0, 2.0), values=(0.1, 0.2))
    assert "bracket=(1.0, 2.0)" in str(e)


def test_backends_agree_on_values():
    from torsionlab import _backend
    if _backend.compiled is None:
        pytest.skip("compiled backend not built")
    for nu, x in GRID:
        a, b = _backend.pure.jv_jvp(nu, x), _backend.compiled.jv_jvp(nu, x)
        assert max(abs(a[0] - b[0]), abs(a[1] - b[1])) <= 1e-14 * max(abs(a[0]), abs(a[1]), 1e-300)
    for k in range(4):
        za = _backend.pure.find_zeros(k, 7.25, 200, math.inf)
        zb = _backend.compiled.find_zeros(k, 7.25, 200, math.inf)
        assert max(rel_err(x, y) for x, y in zip(za, zb)) < 1e-13


# --- uniform expansion coefficients ------------------------------------------

def test_debye_polynomials_exact():
    u, v = debye_polynomials(3)
    f = Fraction
    assert u[1] == [0, f(1, 8), 0, f(-5, 24)]
    assert v[1] == [0, f(-3, 8), 0, f(7, 24)]
    assert u[2] == [0, 0, f(9, 128), 0, f(-77, 192), 0, f(385, 1152)]
    assert v[2] == [0, 0, f(-15, 128), 0, f(33, 64), 0, f(-455, 1152)]


def _debye_poly(coeffs, t):
    return sum(float(c) * t ** k for k, c in enumerate(coeffs))


@pytest.mark.parametrize("p", [0.1, 0.45, 0.8, 1.0])
def test_uniform_coefficients_from_debye(p):
    u, v = debye_polynomials(3)
    u1, u2, v1, v2 = (_debye_poly(c, p) for c in (u[1], u[2], v[1], v[2]))
    assert abs(specfun.uniform_expansion_coeffs("I", p)[0] - u1) < 1e-15
    assert abs(specfun.uniform_expansion_coeffs("Iprime", p)[0] - v1) < 1e-15
    # +/- I/2 + z I' = z I' (1 +/- p u...): W1 = V1 +/- p/2, W2 = V2 +/- p U1 / 2
    for kind, sign in (("Hplus", 1), ("Hminus", -1)):
        w1, w2 = specfun.uniform_expansion_coeffs(kind, p)
        assert abs(w1 - (v1 + sign * p / 2)) < 1e-15
        assert abs(w2 - (v2 + sign * p * u1 / 2)) < 1e-15


@pytest.mark.parametrize("lam", [-0.5, -3.0, 0.0, 0.3])
def test_phi_expansions_follow_from_uniform_coefficients(lam):
    from torsionlab import zeta_engine
    p = 1.0 / math.sqrt(1.0 - lam)
    phi, phi_hat = zeta_engine.circle_phi_pair()
    assert abs(phi(lam) + specfun.uniform_expansion_coeffs("I", p)[0] + 1 / 12) < 1e-15
    assert abs(phi_hat(lam) + specfun.uniform_expansion_coeffs("Iprime", p)[0] + 1 / 12) < 1e-15
    plus, minus = zeta_engine.sphere_phi2_pair()
    for kind, expn in (("Hplus", plus), ("Hminus", minus)):
        w1, w2 = specfun.uniform_expansion_coeffs(kind, p)
        assert abs(expn(lam) - (-w2 + 0.5 * w1 * w1 - 0.125)) < 1e-14


@pytest.mark.parametrize("nu,z", [(30.0, 0.5), (80.0, 2.0), (200.0, 1.0)])
def test_uniform_expansion_reproduces_log_i(nu, z):
    # log I_nu(nu z) ~ nu eta - log sqrt(2 pi nu) - log(1+z^2)/4 + U1/nu + (U2 - U1^2/2)/nu^2
    p = 1.0 / math.sqrt(1.0 + z * z)
    eta = math.sqrt(1.0 + z * z) + math.log(z / (1.0 + math.sqrt(1.0 + z * z)))
    u, _ = debye_polynomials(3)
    u1, u2 = _debye_poly(u[1], p), _debye_poly(u[2], p)
    approx = nu * eta - 0.5 * math.log(2 * math.pi * nu) - 0.25 * math.log1p(z * z) + u1 / nu + (u2 - u1 * u1 / 2) / nu ** 2
    assert abs(approx - specfun.bessel_i(nu, nu * z, log_scaled=True)) < 2.0 / nu ** 3

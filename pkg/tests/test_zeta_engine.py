import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from torsionlab import specfun, zeta_engine as ze
from torsionlab.errors import ConsistencyError, DomainError, PoleError

from conftest import LOG_2PI

G = specfun.EULER_GAMMA

# 25-digit values from an mpmath evaluation of the subtraction route, frozen.
F_GOLDEN = {
    1.0: -1.837877066409345483560659,
    2.0: -0.8878421511619515993856917,
    math.sqrt(2.0): -1.270483704796429390204136,
    1.5: -1.194723946884353906915557,
    5.0: -0.3515477275429061715908869,
}
ZETA_SP_HALF = -1.754292303485306436258977


# --- simple Bessel zeta ----------------------------------------------------

@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 3.25])
@pytest.mark.parametrize("q", [0.0, 0.4, 5.0])
@pytest.mark.parametrize("l", [0.3, 1.0, 2.0])
def test_simple_zeta_value_at_zero_exact(nu, q, l):
    assert ze.simple_bessel_zeta(nu, q, l).at0 == -0.5 * (nu + 0.5)


def test_simple_zeta_limit_formulas():
    v = ze.simple_bessel_zeta(0.0, 0.0, 1.0).deriv_at0
    assert abs(v + math.log(math.sqrt(math.pi) * math.sqrt(2.0))) < 1e-15
    # nu = 1/2: zeros k pi / l, so z'(0) = log(2 l) from zeta_R
    for l in (1.0, 2.5):
        assert abs(ze.simple_bessel_zeta(0.5, 0.0, l).deriv_at0 + math.log(2 * l)) < 1e-14
    # q -> 0 continuity
    a = ze.simple_bessel_zeta(1.5, 1e-7, 1.3).deriv_at0
    assert abs(a - ze.simple_bessel_zeta(1.5, 0.0, 1.3).deriv_at0) < 1e-12


def _log_product(nu, x, K):
    zs = specfun.zeros("JZero", nu, count=K)
    s = math.fsum(math.log1p(x / (z * z)) for z in zs)
    return s + x / (math.pi ** 2 * (K + nu / 2 + 0.25))


@pytest.mark.parametrize("nu", [0.0, 1.0, 2.5])
@pytest.mark.parametrize("q,qp", [(0.5, 1.5), (2.0, 0.0), (3.0, 1.0)])
@pytest.mark.parametrize("l", [1.0])
def test_simple_zeta_difference_identity(nu, q, qp, l):
    lhs = ze.simple_bessel_zeta(nu, q, l).deriv_at0 - ze.simple_bessel_zeta(nu, qp, l).deriv_at0
    rhs = -(_log_product(nu, (l * q) ** 2, 10000) - _log_product(nu, (l * qp) ** 2, 10000))
    assert abs(lhs - rhs) <= 1e-5


def test_simple_zeta_errors():
    with pytest.raises(DomainError):
        ze.simple_bessel_zeta(-1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        ze.simple_bessel_zeta(1.0, 0.0, 0.0)


# --- expansions and Phi -----------------------------------------------------

def test_expansion_validation():
    with pytest.raises(DomainError):
        ze.PLambdaExpansion(((1.0, 0.0),))
    e = ze.PLambdaExpansion(((1.0, 0.5), (2.0, 0.5)), 0.0)
    assert e.terms == ((3.0, 0.5),)
    with pytest.raises(DomainError):
        e(1.0)


def test_builtin_expansions_vanish_at_zero():
    for e in ze.circle_phi_pair() + ze.sphere_phi2_pair():
        assert abs(e(0.0)) < 1e-15


def test_phi_values():
    phi, phi_hat = ze.circle_phi_pair()
    a, b = ze.phi_transform(phi).at_zero, ze.phi_transform(phi_hat).at_zero
    assert abs(a.residue - 1 / 12) <= 1e-12 and abs(b.residue - 1 / 12) <= 1e-12
    assert abs(a.finite_part - ((5 - G) / 12 - math.log(2) / 6)) <= 1e-12
    assert abs(b.finite_part - (-(7 + G) / 12 - math.log(2) / 6)) <= 1e-12
    plus, minus = ze.sphere_phi2_pair()
    d = plus - minus
    assert d.terms == ((-0.5, 1.0), (0.5, 2.0))
    v = ze.phi_transform(d).at_zero
    assert abs(v.residue) <= 1e-12 and abs(v.finite_part - 0.5) <= 1e-12
    assert ze.phi_transform(ze.PLambdaExpansion()).at_zero == ze.MeromorphicValue(0.0, 0.0)


@pytest.mark.parametrize("s", [0.3, 1.0, 2.7, -0.2])
def test_phi_closed_forms(s):
    phi, phi_hat = ze.circle_phi_pair()
    ref = math.gamma(s + 0.5) * (1 + 5 * s) / (12 * math.sqrt(math.pi) * s)
    assert abs(ze.phi_transform(phi)(s) - ref) < 1e-13 * max(1, abs(ref))
    ref_hat = math.gamma(s + 0.5) * (1 - 7 * s) / (12 * math.sqrt(math.pi) * s)
    assert abs(ze.phi_transform(phi_hat)(s) - ref_hat) < 1e-13 * max(1, abs(ref_hat))
    plus, minus = ze.sphere_phi2_pair()
    assert abs(ze.phi_transform(plus - minus)(s) - 0.5 * math.gamma(s + 1)) < 1e-13


def test_phi_laurent_data_matches_numerical_limit():
    phi, _ = ze.circle_phi_pair()
    t = ze.phi_transform(phi)
    eps = 1e-6
    # Phi(s) = r/s + f + O(s)
    sym = 0.5 * (t(eps) + t(-eps))
    assert abs(sym - t.at_zero.finite_part) < 1e-9
    assert abs(0.5 * eps * (t(eps) - t(-eps)) - t.at_zero.residue) < 1e-9
    with pytest.raises(PoleError):
        t(0.0)


_exp_terms = st.lists(st.tuples(st.floats(-3, 3), st.sampled_from([0.5, 1.0, 1.5, 2.0, 2.5, 3.0])), max_size=4)


@given(_exp_terms, _exp_terms, st.floats(0.05, 4.0))
@settings(max_examples=80, deadline=None)
def test_phi_linearity(t1, t2, s):
    a, b = ze.PLambdaExpansion(tuple(t1)), ze.PLambdaExpansion(tuple(t2))
    lhs = ze.phi_transform(a + b)(s)
    rhs = ze.phi_transform(a)(s) + ze.phi_transform(b)(s)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))
    la, lb, lab = (ze.phi_transform(x).at_zero for x in (a, b, a + b))
    assert abs(lab.residue - la.residue - lb.residue) <= 1e-12
    assert abs(lab.finite_part - la.finite_part - lb.finite_part) <= 1e-12


# --- assembly ----------------------------------------------------------------

@pytest.mark.parametrize("nu", [1.0, 2.0, math.sqrt(2.0), 7.0])
def test_circle_difference(nu):
    d = ze.circle_Z_difference(nu)
    assert d.at0 == 0.25
    assert abs(d.deriv_at0 - (-0.5 * math.log(nu) + 0.5 * LOG_2PI + 0.5 / nu)) <= 1e-13


def test_circle_difference_examples():
    assert abs(ze.circle_Z_difference(1.0).deriv_at0 - (0.5 * LOG_2PI + 0.5)) <= 1e-13
    assert abs(ze.circle_Z_difference(2.0).deriv_at0 - (-0.5 * math.log(2) + 0.5 * LOG_2PI + 0.25)) <= 1e-13
    with pytest.raises(DomainError):
        ze.circle_Z_difference(0.5)


def test_sphere_difference():
    for nu in (1.0, 2.0):
        d = ze.sphere_Z_difference(nu)
        assert d.at0 == 0.0
        assert abs(d.deriv_at0 - (-F_GOLDEN[nu] + 0.5 / nu ** 2)) < 1e-12


def test_t4_needs_finite_part_only_when_phi_has_a_pole():
    cfg = ze.sphere_config(1.0)
    assert cfg.pole_finite_part is None
    ze.t4_difference(cfg, 0.0, 0.0, 0.0, ze.MeromorphicValue(0.0, 0.5))
    with pytest.raises(DomainError):
        ze.t4_difference(cfg, 0.0, 0.0, 0.0, ze.MeromorphicValue(0.1, 0.5))


def test_config_validation():
    with pytest.raises(DomainError):
        ze.DecompositionConfig(0.0, 2, (0, 1), 1.0, 1.0)
    with pytest.raises(DomainError):
        ze.DecompositionConfig(2.0, 2, (1, 0), 1.0, 1.0)


# --- zeta(s, Sp) and F(0, nu) -----------------------------------------------------

def test_zeta_sp_sphere_values():
    mp.mp.dps = 25
    for s in (2.0, 3.0, 1.5):
        ref = float(mp.nsum(lambda n: (2 * n + 1) * (n * (n + 1)) ** (-s), [1, mp.inf]))
        assert abs(ze.zeta_sp_sphere(s) - ref) <= 1e-12
    assert abs(ze.zeta_sp_sphere(2.0) - 1.0) <= 1e-13
    assert abs(ze.zeta_sp_sphere(0.0) + 2.0 / 3.0) <= 1e-13


@pytest.mark.parametrize("N", [3, 7, 20])
def test_zeta_sp_sphere_at_zero_by_euler_maclaurin(N):
    # sum_{n<N} f(n) + int_N^inf f + f(N)/2 - sum_k B_2k/(2k)! f^(2k-1)(N), continued to s = 0:
    # f(x) = 2x + 1, int_N^inf f -> -N(N+1), f' = 2 and higher derivatives vanish
    head = math.fsum(2 * n + 1 for n in range(1, N))
    em = head - N * (N + 1) + 0.5 * (2 * N + 1) - float(specfun.bernoulli(2)) / 2 * 2.0
    assert abs(ze.zeta_sp_sphere(0.0) - em) < 1e-13


def test_zeta_sp_half_dual():
    a = ze.zeta_sp_sphere(0.5)
    b = ze.zeta_sp_sphere_half_plana()
    assert abs(a - b) <= 1e-6
    assert abs(a - ZETA_SP_HALF) <= 1e-13 and abs(b - ZETA_SP_HALF) <= 1e-13


def test_zeta_sp_errors():
    with pytest.raises(PoleError):
        ze.zeta_sp_sphere(1.0)
    with pytest.raises(DomainError):
        ze.zeta_sp_sphere(-2.0)


@pytest.mark.parametrize("nu", sorted(F_GOLDEN))
def test_F_zero_golden_and_dual(nu):
    series, sub = ze.F_zero_methods(nu)
    assert abs(series - sub) <= 5e-7
    assert abs(sub - F_GOLDEN[nu]) <= 1e-12
    assert abs(ze.F_zero(nu) - F_GOLDEN[nu]) <= 1e-12


def test_F_zero_at_one_is_minus_log_2pi():
    assert abs(ze.F_zero_subtraction(1.0) + LOG_2PI) <= 1e-8


def test_F_zero_decays():
    vals = [abs(ze.F_zero(nu)) for nu in (5.0, 20.0, 100.0)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 0.02


def test_F_zero_consistency_error():
    with pytest.raises(ConsistencyError):
        ze.F_zero(1.5, tol=1e-30)
    with pytest.raises(DomainError):
        ze.F_zero(0.9)


def test_F_one_rearrangements():
    single = ze.F_one_single_coefficient_rearrangement(0.0)
    assert abs(single + 0.5 * LOG_2PI) < 1e-12
    assert abs(ze.F_one_rearrangement(0.0) + LOG_2PI) < 1e-12
    # where the original series converges, the corrected rearrangement reproduces it
    s = 1.5
    mp.mp.dps = 20
    direct = float(mp.nsum(lambda n: (2 * n + 1) * (n + 0.5) ** (-2 * s) * mp.log((2 * n + 2) / (2 * n)), [1, mp.inf]))
    assert abs(ze.F_one_rearrangement(s) - direct) < 1e-12
    assert abs(ze.F_one_single_coefficient_rearrangement(s) - direct) > 0.1


# --- log Gamma of the single sequences ---------------------------------------------------

def _product(family, order, x, K):
    zs = specfun.zeros(family, order, count=K)
    c = order / 2 - (0.25 if family == "JZero" else 0.75)
    return -(math.fsum(math.log1p(x / (z * z)) for z in zs) + x / (math.pi ** 2 * (K + c + 0.5)))


@pytest.mark.parametrize("case,family", [("circle_S", "JZero"), ("circle_Shat", "JPrimeZero"),
                                         ("sphere_Splus", "GPlusZero"), ("sphere_Sminus", "GMinusZero")])
@pytest.mark.parametrize("n,lam,nu", [(1, -1.0, 1.0), (2, -0.3, 1.0), (1, -2.0, 2.0)])
def test_log_gamma_sequence_vs_product(case, family, n, lam, nu):
    u = nu * n if case.startswith("circle") else math.sqrt(nu * nu * n * (n + 1) + 0.25)
    closed = ze.log_gamma_sequence(case, n, lam, nu)
    errs = [abs(closed - _product(family, u, -lam * u * u, K)) for K in (10, 100, 1000)]
    assert errs[2] <= 1e-6
    assert errs[0] > errs[1] > errs[2]
    assert ze.sequence_family(case)[0].value == family


def test_log_gamma_sequence_small_lambda_and_errors():
    for case in ("circle_S", "circle_Shat", "sphere_Splus", "sphere_Sminus"):
        assert abs(ze.log_gamma_sequence(case, 2, -1e-12)) < 1e-10
    with pytest.raises(DomainError):
        ze.log_gamma_sequence("circle_S", 1, 0.5)
    with pytest.raises(DomainError):
        ze.log_gamma_sequence("torus", 1, -1.0)
    with pytest.raises(DomainError):
        ze.log_gamma_sequence("circle_S", 0, -1.0)

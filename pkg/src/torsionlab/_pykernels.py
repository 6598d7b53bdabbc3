"""Pure-Python Bessel kernels.

This module is the reference twin of the compiled ``_ckernels`` extension.
Both expose the same functions with identical algorithms:

* ``jv_jvp(nu, x)``: J_nu(x) and its x-derivative.
* ``iv_log(nu, x)``: natural logs of I_nu(x) and I_nu'(x), for x > 0.
* ``family_eval(kind, nu, x)``: value and derivative of the root family
  ``kind`` (0 = J, 1 = J', 2 = G+ = J/2 + xJ', 3 = G- = -J/2 + xJ').
* ``lower_bound(kind, nu)``: a proven lower bound for the first positive zero.
* ``find_zeros(kind, nu, count, xmax)``: consecutive positive zeros.
"""

from __future__ import annotations

import math

from ._coeffs import debye_float_tables
from .errors import ZeroFinderError

EPS = 1e-16
FPMIN = 1e-30
MAXIT = 100000
DEBYE_MIN_ORDER = 15.0
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
FAMILY_NAMES = ("JZero", "JPrimeZero", "GPlusZero", "GMinusZero")

_U_TABLE, _V_TABLE = debye_float_tables()


# ---------------------------------------------------------------------------
# J_nu
# ---------------------------------------------------------------------------

def _j_series(nu, x):
    t = math.exp(nu * math.log(0.5 * x) - math.lgamma(nu + 1.0))
    q = -0.25 * x * x
    s = t
    c = 0.0  # Kahan compensation for s
    sp = nu * t / x
    cp = 0.0
    k = 0
    while True:
        k += 1
        t *= q / (k * (nu + k))
        y = t - c
        tmp = s + y
        c = (tmp - s) - y
        s = tmp
        yp = t * (2 * k + nu) / x - cp
        tmp = sp + yp
        cp = (tmp - sp) - yp
        sp = tmp
        if k * (nu + k) > -q and abs(t) <= EPS * abs(s) and abs(t * (2 * k + nu) / x) <= EPS * abs(sp):
            break
        if k > 5000:
            break
    return s, sp


def _hankel_pq(nu, x):
    """Hankel asymptotic sums P, Q. Returns (P, Q, converged)."""
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    term = 1.0
    last = 1.0
    k = 1
    while k < 400:
        term *= (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if term == 0.0:
            return p, q, True
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q += sign * term
        else:
            p += sign * term
        a = abs(term)
        if a <= EPS * (abs(p) + abs(q)):
            return p, q, True
        if a > last and k > 2 * nu:
            return p, q, False
        last = a
        k += 1
    return p, q, False


def _j_hankel_single(nu, x, cx, sx):
    p, q, ok = _hankel_pq(nu, x)
    phase = (0.5 * nu + 0.25) * math.pi
    cp, sp = math.cos(phase), math.sin(phase)
    cchi = cx * cp + sx * sp
    schi = sx * cp - cx * sp
    return math.sqrt(2.0 / (math.pi * x)) * (p * cchi - q * schi), ok


def _j_hankel(nu, x):
    """J and J' for x >= max(25, nu).

    Hankel's expansion at the two lowest orders sharing the fractional part
    of nu, then forward recurrence in the order, which is stable while the
    order stays below x.
    """
    cx, sx = math.cos(x), math.sin(x)
    n = int(nu)
    mu = nu - n
    jm, ok0 = _j_hankel_single(mu, x, cx, sx)
    j, ok1 = _j_hankel_single(mu + 1.0, x, cx, sx)
    if not (ok0 and ok1):
        return 0.0, 0.0, False
    order = mu + 1.0
    for _ in range(n):
        jm, j = j, (2.0 * order / x) * j - jm
        order += 1.0
    # jm = J_nu, j = J_{nu+1}
    return jm, nu / x * jm - j, True


def _j_steed(nu, x):
    """Steed continued fractions (CF1 for J'/J, CF2 for (J'+iY')/(J+iY)).

    Valid for x >= 2.
    """
    nl = max(0, int(nu - x + 1.5))
    xmu = nu - nl
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / math.pi
    isign = 1
    h = nu * xi
    if h < FPMIN:
        h = FPMIN
    b = xi2 * nu
    d = 0.0
    c = h
    for _ in range(MAXIT):
        b += xi2
        d = b - d
        if abs(d) < FPMIN:
            d = FPMIN
        c = b - 1.0 / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = c * d
        h = delta * h
        if d < 0.0:
            isign = -isign
        if abs(delta - 1.0) < EPS:
            break
    else:
        raise ArithmeticError(f"CF1 did not converge for nu={nu}, x={x}")
    rjl = isign * FPMIN
    rjpl = h * rjl
    rjl1 = rjl
    rjp1 = rjpl
    fact = nu * xi
    for _ in range(nl):
        rjtemp = fact * rjl + rjpl
        fact -= xi
        rjpl = fact * rjtemp - rjl
        rjl = rjtemp
        if abs(rjl) > 1e250:
            rjl *= 1e-250
            rjpl *= 1e-250
            rjl1 *= 1e-250
            rjp1 *= 1e-250
    if rjl == 0.0:
        rjl = EPS
    f = rjpl / rjl
    a = 0.25 - xmu2
    p = -0.5 * xi
    q = 1.0
    br = 2.0 * x
    bi = 2.0
    fact = a * xi / (p * p + q * q)
    cr = br + q * fact
    ci = bi + p * fact
    den = br * br + bi * bi
    dr = br / den
    di = -bi / den
    dlr = cr * dr - ci * di
    dli = cr * di + ci * dr
    temp = p * dlr - q * dli
    q = p * dli + q * dlr
    p = temp
    for i in range(2, MAXIT):
        a += 2 * (i - 1)
        bi += 2.0
        dr = a * dr + br
        di = a * di + bi
        if abs(dr) + abs(di) < FPMIN:
            dr = FPMIN
        fact = a / (cr * cr + ci * ci)
        cr = br + cr * fact
        ci = bi - ci * fact
        if abs(cr) + abs(ci) < FPMIN:
            cr = FPMIN
        den = dr * dr + di * di
        dr /= den
        di /= -den
        dlr = cr * dr - ci * di
        dli = cr * di + ci * dr
        temp = p * dlr - q * dli
        q = p * dli + q * dlr
        p = temp
        if abs(dlr - 1.0) + abs(dli) < EPS:
            break
    else:
        raise ArithmeticError(f"CF2 did not converge for nu={nu}, x={x}")
    gam = (p - f) / q
    rjmu = math.sqrt(w / ((p - f) * gam + q))
    rjmu = math.copysign(rjmu, rjl)
    fact = rjmu / rjl
    return rjl1 * fact, rjp1 * fact


def jv_jvp(nu, x):
    if x == 0.0:
        if nu == 0.0:
            return 1.0, 0.0
        if nu == 1.0:
            return 0.0, 0.5
        return 0.0, (math.inf if nu < 1.0 else 0.0)
    if x * x <= 6.0 * (nu + 1.0):
        return _j_series(nu, x)
    if x >= 25.0 and x >= nu:
        j, jp, ok = _j_hankel(nu, x)
        if ok:
            return j, jp
    return _j_steed(nu, x)


# ---------------------------------------------------------------------------
# I_nu on a log scale
# ---------------------------------------------------------------------------

def _i_series_log(nu, x):
    lt0 = nu * math.log(0.5 * x) - math.lgamma(nu + 1.0)
    q = 0.25 * x * x
    r = 1.0
    s = 1.0
    sp = nu / x
    k = 0
    while True:
        k += 1
        r *= q / (k * (nu + k))
        s += r
        sp += r * (2 * k + nu) / x
        if k * (nu + k) > q and r <= EPS * s:
            break
    return lt0 + math.log(s), lt0 + math.log(sp)


def _i_asym_sum(nu, x):
    mu = 4.0 * nu * nu
    s = 1.0
    term = 1.0
    last = 1.0
    for k in range(1, 400):
        term *= -(mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        s += term
        a = abs(term)
        if a <= EPS * abs(s):
            return s, True
        if a > last and k > 2 * nu:
            return s, False
        last = a
    return s, False


def _i_debye_log(nu, x):
    z = x / nu
    w = math.sqrt(1.0 + z * z)
    t = 1.0 / w
    eta = w + math.log(z / (1.0 + w))
    su = 0.0
    sv = 0.0
    scale = 1.0
    for k in range(len(_U_TABLE)):
        uk = 0.0
        for c in reversed(_U_TABLE[k]):
            uk = uk * t + c
        vk = 0.0
        for c in reversed(_V_TABLE[k]):
            vk = vk * t + c
        su += uk * scale
        sv += vk * scale
        scale /= nu
    base = nu * eta - 0.5 * math.log(2.0 * math.pi * nu)
    return base - 0.5 * math.log(w) + math.log(su), base + 0.5 * math.log(w) - math.log(z) + math.log(sv)


def iv_log(nu, x):
    if nu >= DEBYE_MIN_ORDER:
        return _i_debye_log(nu, x)
    if x > 30.0 + nu * nu:
        s0, ok0 = _i_asym_sum(nu, x)
        s1, ok1 = _i_asym_sum(nu + 1.0, x)
        if ok0 and ok1:
            li = x - 0.5 * math.log(2.0 * math.pi * x) + math.log(s0)
            return li, li + math.log(s1 / s0 + nu / x)
    return _i_series_log(nu, x)


# ---------------------------------------------------------------------------
# Root families and zeros
# ---------------------------------------------------------------------------

def family_eval(kind, nu, x):
    j, jp = jv_jvp(nu, x)
    if kind == 0:
        return j, jp
    if kind == 1:
        return jp, -jp / x - (1.0 - nu * nu / (x * x)) * j
    if kind == 2:
        return 0.5 * j + x * jp, 0.5 * jp - (x - nu * nu / x) * j
    if kind == 3:
        return -0.5 * j + x * jp, -0.5 * jp - (x - nu * nu / x) * j
    raise ValueError(f"unknown root family {kind}")


def lower_bound(kind, nu):
    if kind == 0:
        return nu
    if kind == 1:
        return math.sqrt(nu * (nu + 2.0))
    if nu > 0.5:
        return math.sqrt(nu * nu - 0.25)
    return 0.0


def _refine(kind, nu, a, fa, b, fb):
    """Safeguarded Newton iteration on a sign-change bracket [a, b]."""
    if fa < 0.0:
        xl, xh = a, b
    else:
        xl, xh = b, a
    rts = 0.5 * (a + b)
    dxold = abs(b - a)
    dx = dxold
    f, df = family_eval(kind, nu, rts)
    for _ in range(200):
        if f == 0.0:
            return rts
        if ((rts - xh) * df - f) * ((rts - xl) * df - f) > 0.0 or abs(2.0 * f) > abs(dxold * df):
            dxold = dx
            dx = 0.5 * (xh - xl)
            rts = xl + dx
        else:
            dxold = dx
            dx = f / df
            rts -= dx
        if abs(dx) <= 2e-15 * max(1.0, abs(rts)):
            return rts
        f, df = family_eval(kind, nu, rts)
        if f < 0.0:
            xl = rts
        else:
            xh = rts
    raise ZeroFinderError("refinement did not converge", FAMILY_NAMES[kind], nu, None, (a, b), (fa, fb))


def _scan(kind, nu, start, fstart, step, limit):
    """Step forward from ``start`` until the sign changes or ``limit`` is passed.

    Returns (a, fa, b, fb) or None.
    """
    a, fa = start, fstart
    while a < limit:
        b = a + step
        fb = family_eval(kind, nu, b)[0]
        if fa == 0.0:
            return a, fa, a, fa
        if (fa < 0.0) != (fb < 0.0) or fb == 0.0:
            return a, fa, b, fb
        a, fa = b, fb
    return None


def _verify(kind, nu, z, index):
    d = 1e-11 * max(1.0, z)
    fl = family_eval(kind, nu, z - d)[0]
    fr = family_eval(kind, nu, z + d)[0]
    if fl == 0.0 or fr == 0.0 or (fl < 0.0) != (fr < 0.0):
        return
    raise ZeroFinderError("no sign change across refined zero", FAMILY_NAMES[kind], nu, index, (z - d, z + d), (fl, fr))


def find_zeros(kind, nu, count, xmax):
    """First ``count`` zeros (count < 0 means unlimited) that are <= ``xmax``."""
    if kind < 0 or kind > 3:
        raise ValueError(f"unknown root family {kind}")
    zeros = []
    if count == 0:
        return zeros
    step = 0.5
    x0 = max(lower_bound(kind, nu), 1e-6)
    f0 = family_eval(kind, nu, x0)[0]
    if f0 == 0.0:
        x0 += 1e-6
        f0 = family_eval(kind, nu, x0)[0]
    limit = xmax if math.isfinite(xmax) else x0 + 100.0 + 10.0 * nu
    while count < 0 or len(zeros) < count:
        k = len(zeros) + 1
        br = None
        if len(zeros) >= 2:
            d = zeros[-1] - zeros[-2]
            pred = zeros[-1] + d
            if len(zeros) >= 3:
                pred += d - (zeros[-2] - zeros[-3])
            a = max(pred - 0.3 * d, zeros[-1] + 0.05 * d)
            b = pred + 0.3 * d
            fa = family_eval(kind, nu, a)[0]
            fb = family_eval(kind, nu, b)[0]
            if (fa < 0.0) != (fb < 0.0) or fa == 0.0 or fb == 0.0:
                # make sure the bracket holds only the next zero
                fl = family_eval(kind, nu, zeros[-1] + 0.05 * d)[0]
                if a == zeros[-1] + 0.05 * d or (fl < 0.0) == (fa < 0.0):
                    br = (a, fa, b, fb)
            if br is None:
                s = zeros[-1] + 0.05 * d
                lim = max(xmax, s) + step if math.isfinite(xmax) else s + 50.0 * max(d, math.pi)
                br = _scan(kind, nu, s, family_eval(kind, nu, s)[0], min(step, 0.25 * d), lim)
        else:
            if zeros:
                s = zeros[-1] + 0.05
                fs = family_eval(kind, nu, s)[0]
            else:
                s, fs = x0, f0
            lim = max(xmax, s) + step if math.isfinite(xmax) else s + limit
            br = _scan(kind, nu, s, fs, step, lim)
        if br is None:
            if math.isfinite(xmax):
                break
            raise ZeroFinderError("no sign change found while scanning", FAMILY_NAMES[kind], nu, k,
                                  (zeros[-1] if zeros else x0, lim), None)
        a, fa, b, fb = br
        if a > xmax:
            break
        z = a if fa == 0.0 else (b if fb == 0.0 else _refine(kind, nu, a, fa, b, fb))
        if z > xmax:
            break
        if zeros and z <= zeros[-1]:
            raise ZeroFinderError("zeros not strictly increasing", FAMILY_NAMES[kind], nu, k, (a, b), (fa, fb))
        _verify(kind, nu, z, k)
        zeros.append(z)
    return zeros

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Bessel kernels; line-for-line twin of ``_pykernels``."""

from libc.math cimport sqrt, log, exp, cos, sin, lgamma, fabs, copysign, M_PI, INFINITY, isfinite

from ._coeffs import debye_float_tables
from .errors import ZeroFinderError

cdef double EPS = 1e-16
cdef double FPMIN = 1e-30
cdef int MAXIT = 100000
DEBYE_MIN_ORDER = 15.0
FAMILY_NAMES = ("JZero", "JPrimeZero", "GPlusZero", "GMinusZero")

DEF MAXTERMS = 32
DEF MAXDEG = 100

cdef double _U[MAXTERMS][MAXDEG]
cdef double _V[MAXTERMS][MAXDEG]
cdef int _ULEN[MAXTERMS]
cdef int _VLEN[MAXTERMS]
cdef int _NTERMS = 0


def _load_tables():
    global _NTERMS
    u, v = debye_float_tables()
    _NTERMS = len(u)
    for k in range(_NTERMS):
        _ULEN[k] = len(u[k])
        _VLEN[k] = len(v[k])
        for i, c in enumerate(u[k]):
            _U[k][i] = c
        for i, c in enumerate(v[k]):
            _V[k][i] = c


_load_tables()


cdef struct Pair:
    double a
    double b
    int ok


cdef Pair _j_series(double nu, double x) nogil:
    cdef double t = exp(nu * log(0.5 * x) - lgamma(nu + 1.0))
    cdef double q = -0.25 * x * x
    cdef double s = t, c = 0.0, sp = nu * t / x, cp = 0.0
    cdef double y, tmp, yp
    cdef int k = 0
    cdef Pair r
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
        if k * (nu + k) > -q and fabs(t) <= EPS * fabs(s) and fabs(t * (2 * k + nu) / x) <= EPS * fabs(sp):
            break
        if k > 5000:
            break
    r.a = s
    r.b = sp
    r.ok = 1
    return r


cdef Pair _hankel_pq(double nu, double x) nogil:
    cdef double mu = 4.0 * nu * nu
    cdef double p = 1.0, q = 0.0, term = 1.0, last = 1.0, sign, a
    cdef int k = 1
    cdef Pair r
    r.ok = 0
    while k < 400:
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x)
        if term == 0.0:
            r.ok = 1
            break
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q += sign * term
        else:
            p += sign * term
        a = fabs(term)
        if a <= EPS * (fabs(p) + fabs(q)):
            r.ok = 1
            break
        if a > last and k > 2 * nu:
            break
        last = a
        k += 1
    r.a = p
    r.b = q
    return r


cdef Pair _j_hankel_single(double nu, double x, double cx, double sx) nogil:
    cdef Pair pq = _hankel_pq(nu, x)
    cdef double phase = (0.5 * nu + 0.25) * M_PI
    cdef double cp = cos(phase), sp = sin(phase)
    cdef double cchi = cx * cp + sx * sp
    cdef double schi = sx * cp - cx * sp
    cdef Pair r
    r.a = sqrt(2.0 / (M_PI * x)) * (pq.a * cchi - pq.b * schi)
    r.ok = pq.ok
    return r


cdef Pair _j_hankel(double nu, double x) nogil:
    cdef double cx = cos(x), sx = sin(x)
    cdef int n = <int>nu
    cdef double mu = nu - n
    cdef Pair r0 = _j_hankel_single(mu, x, cx, sx)
    cdef Pair r1 = _j_hankel_single(mu + 1.0, x, cx, sx)
    cdef Pair r
    cdef double jm = r0.a, j = r1.a, order = mu + 1.0, tmp
    cdef int i
    r.ok = r0.ok and r1.ok
    if not r.ok:
        r.a = 0.0
        r.b = 0.0
        return r
    for i in range(n):
        tmp = (2.0 * order / x) * j - jm
        jm = j
        j = tmp
        order += 1.0
    r.a = jm
    r.b = nu / x * jm - j
    return r


cdef Pair _j_steed(double nu, double x) nogil:
    cdef int nl = <int>(nu - x + 1.5)
    if nu - x + 1.5 < 0.0:
        nl = 0
    cdef double xmu = nu - nl, xmu2, xi, xi2, w, h, b, d, c, delta
    cdef int isign = 1, it, i
    cdef Pair r
    r.ok = 0
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / M_PI
    h = nu * xi
    if h < FPMIN:
        h = FPMIN
    b = xi2 * nu
    d = 0.0
    c = h
    for it in range(MAXIT):
        b += xi2
        d = b - d
        if fabs(d) < FPMIN:
            d = FPMIN
        c = b - 1.0 / c
        if fabs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = c * d
        h = delta * h
        if d < 0.0:
            isign = -isign
        if fabs(delta - 1.0) < EPS:
            r.ok = 1
            break
    if not r.ok:
        return r
    cdef double rjl = isign * FPMIN
    cdef double rjpl = h * rjl
    cdef double rjl1 = rjl, rjp1 = rjpl
    cdef double fact = nu * xi, rjtemp
    for i in range(nl):
        rjtemp = fact * rjl + rjpl
        fact -= xi
        rjpl = fact * rjtemp - rjl
        rjl = rjtemp
        if fabs(rjl) > 1e250:
            rjl *= 1e-250
            rjpl *= 1e-250
            rjl1 *= 1e-250
            rjp1 *= 1e-250
    if rjl == 0.0:
        rjl = EPS
    cdef double f = rjpl / rjl
    cdef double a = 0.25 - xmu2
    cdef double p = -0.5 * xi, q = 1.0, br = 2.0 * x, bi = 2.0
    cdef double cr, ci, den, dr, di, dlr, dli, temp, gam, rjmu
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
    r.ok = 0
    for i in range(2, MAXIT):
        a += 2 * (i - 1)
        bi += 2.0
        dr = a * dr + br
        di = a * di + bi
        if fabs(dr) + fabs(di) < FPMIN:
            dr = FPMIN
        fact = a / (cr * cr + ci * ci)
        cr = br + cr * fact
        ci = bi - ci * fact
        if fabs(cr) + fabs(ci) < FPMIN:
            cr = FPMIN
        den = dr * dr + di * di
        dr /= den
        di /= -den
        dlr = cr * dr - ci * di
        dli = cr * di + ci * dr
        temp = p * dlr - q * dli
        q = p * dli + q * dlr
        p = temp
        if fabs(dlr - 1.0) + fabs(dli) < EPS:
            r.ok = 1
            break
    if not r.ok:
        return r
    gam = (p - f) / q
    rjmu = sqrt(w / ((p - f) * gam + q))
    rjmu = copysign(rjmu, rjl)
    fact = rjmu / rjl
    r.a = rjl1 * fact
    r.b = rjp1 * fact
    return r


cdef Pair _jv(double nu, double x) nogil:
    cdef Pair r
    r.ok = 1
    if x == 0.0:
        r.a = 1.0 if nu == 0.0 else 0.0
        if nu == 0.0:
            r.b = 0.0
        elif nu == 1.0:
            r.b = 0.5
        else:
            r.b = INFINITY if nu < 1.0 else 0.0
        return r
    if x * x <= 6.0 * (nu + 1.0):
        return _j_series(nu, x)
    if x >= 25.0 and x >= nu:
        r = _j_hankel(nu, x)
        if r.ok:
            return r
    return _j_steed(nu, x)


cdef Pair _jv_checked(double nu, double x) except *:
    cdef Pair r = _jv(nu, x)
    if not r.ok:
        raise ArithmeticError(f"continued fraction did not converge for nu={nu}, x={x}")
    return r


def jv_jvp(double nu, double x):
    cdef Pair r = _jv_checked(nu, x)
    return r.a, r.b


# ---------------------------------------------------------------------------

cdef Pair _i_series_log(double nu, double x) nogil:
    cdef double lt0 = nu * log(0.5 * x) - lgamma(nu + 1.0)
    cdef double q = 0.25 * x * x, rr = 1.0, s = 1.0, sp = nu / x
    cdef int k = 0
    cdef Pair r
    while True:
        k += 1
        rr *= q / (k * (nu + k))
        s += rr
        sp += rr * (2 * k + nu) / x
        if k * (nu + k) > q and rr <= EPS * s:
            break
    r.a = lt0 + log(s)
    r.b = lt0 + log(sp)
    r.ok = 1
    return r


cdef Pair _i_asym_sum(double nu, double x) nogil:
    cdef double mu = 4.0 * nu * nu, s = 1.0, term = 1.0, last = 1.0, a
    cdef int k
    cdef Pair r
    r.ok = 0
    for k in range(1, 400):
        term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x)
        s += term
        a = fabs(term)
        if a <= EPS * fabs(s):
            r.ok = 1
            break
        if a > last and k > 2 * nu:
            break
        last = a
    r.a = s
    return r


cdef Pair _i_debye_log(double nu, double x) nogil:
    cdef double z = x / nu
    cdef double w = sqrt(1.0 + z * z)
    cdef double t = 1.0 / w
    cdef double eta = w + log(z / (1.0 + w))
    cdef double su = 0.0, sv = 0.0, scale = 1.0, uk, vk, base
    cdef int k, i
    cdef Pair r
    for k in range(_NTERMS):
        uk = 0.0
        for i in range(_ULEN[k] - 1, -1, -1):
            uk = uk * t + _U[k][i]
        vk = 0.0
        for i in range(_VLEN[k] - 1, -1, -1):
            vk = vk * t + _V[k][i]
        su += uk * scale
        sv += vk * scale
        scale /= nu
    base = nu * eta - 0.5 * log(2.0 * M_PI * nu)
    r.a = base - 0.5 * log(w) + log(su)
    r.b = base + 0.5 * log(w) - log(z) + log(sv)
    r.ok = 1
    return r


cdef Pair _iv_log(double nu, double x) nogil:
    cdef Pair s0, s1, r
    cdef double li
    if nu >= 15.0:
        return _i_debye_log(nu, x)
    if x > 30.0 + nu * nu:
        s0 = _i_asym_sum(nu, x)
        s1 = _i_asym_sum(nu + 1.0, x)
        if s0.ok and s1.ok:
            li = x - 0.5 * log(2.0 * M_PI * x) + log(s0.a)
            r.a = li
            r.b = li + log(s1.a / s0.a + nu / x)
            r.ok = 1
            return r
    return _i_series_log(nu, x)


def iv_log(double nu, double x):
    cdef Pair r = _iv_log(nu, x)
    return r.a, r.b


# ---------------------------------------------------------------------------

cdef Pair _family(int kind, double nu, double x) except *:
    cdef Pair jj = _jv_checked(nu, x)
    cdef Pair r
    cdef double j = jj.a, jp = jj.b
    r.ok = 1
    if kind == 0:
        r.a = j
        r.b = jp
    elif kind == 1:
        r.a = jp
        r.b = -jp / x - (1.0 - nu * nu / (x * x)) * j
    elif kind == 2:
        r.a = 0.5 * j + x * jp
        r.b = 0.5 * jp - (x - nu * nu / x) * j
    elif kind == 3:
        r.a = -0.5 * j + x * jp
        r.b = -0.5 * jp - (x - nu * nu / x) * j
    else:
        raise ValueError(f"unknown root family {kind}")
    return r


def family_eval(int kind, double nu, double x):
    cdef Pair r = _family(kind, nu, x)
    return r.a, r.b


cpdef double lower_bound(int kind, double nu):
    if kind == 0:
        return nu
    if kind == 1:
        return sqrt(nu * (nu + 2.0))
    if nu > 0.5:
        return sqrt(nu * nu - 0.25)
    return 0.0


cdef double _val(int kind, double nu, double x) except *:
    return _family(kind, nu, x).a


cdef double _refine(int kind, double nu, double a, double fa, double b, double fb) except *:
    cdef double xl, xh, rts, dxold, dx, f, df
    cdef Pair v
    cdef int it
    if fa < 0.0:
        xl = a
        xh = b
    else:
        xl = b
        xh = a
    rts = 0.5 * (a + b)
    dxold = fabs(b - a)
    dx = dxold
    v = _family(kind, nu, rts)
    f = v.a
    df = v.b
    for it in range(200):
        if f == 0.0:
            return rts
        if ((rts - xh) * df - f) * ((rts - xl) * df - f) > 0.0 or fabs(2.0 * f) > fabs(dxold * df):
            dxold = dx
            dx = 0.5 * (xh - xl)
            rts = xl + dx
        else:
            dxold = dx
            dx = f / df
            rts -= dx
        if fabs(dx) <= 2e-15 * max(1.0, fabs(rts)):
            return rts
        v = _family(kind, nu, rts)
        f = v.a
        df = v.b
        if f < 0.0:
            xl = rts
        else:
            xh = rts
    raise ZeroFinderError("refinement did not converge", FAMILY_NAMES[kind], nu, None, (a, b), (fa, fb))


cdef int _scan(int kind, double nu, double start, double fstart, double step, double limit, double* out) except -1:
    cdef double a = start, fa = fstart, b, fb
    while a < limit:
        b = a + step
        fb = _val(kind, nu, b)
        if fa == 0.0:
            out[0] = a
            out[1] = fa
            out[2] = a
            out[3] = fa
            return 1
        if (fa < 0.0) != (fb < 0.0) or fb == 0.0:
            out[0] = a
            out[1] = fa
            out[2] = b
            out[3] = fb
            return 1
        a = b
        fa = fb
    return 0


cdef void _verify(int kind, double nu, double z, int index) except *:
    cdef double d = 1e-11 * max(1.0, z)
    cdef double fl = _val(kind, nu, z - d)
    cdef double fr = _val(kind, nu, z + d)
    if fl == 0.0 or fr == 0.0 or (fl < 0.0) != (fr < 0.0):
        return
    raise ZeroFinderError("no sign change across refined zero", FAMILY_NAMES[kind], nu, index, (z - d, z + d), (fl, fr))


def find_zeros(int kind, double nu, long count, double xmax):
    """First ``count`` zeros (count < 0 means unlimited) that are <= ``xmax``."""
    if kind < 0 or kind > 3:
        raise ValueError(f"unknown root family {kind}")
    zeros = []
    if count == 0:
        return zeros
    cdef double step = 0.5
    cdef double x0 = max(lower_bound(kind, nu), 1e-6)
    cdef double f0 = _val(kind, nu, x0)
    cdef double limit, d, pred, a, b, fa, fb, fl, s, fs, lim, z, last, prev, prev2
    cdef double br[4]
    cdef int found
    cdef long n = 0
    cdef long k
    if f0 == 0.0:
        x0 += 1e-6
        f0 = _val(kind, nu, x0)
    limit = xmax if isfinite(xmax) else x0 + 100.0 + 10.0 * nu
    last = 0.0
    prev = 0.0
    prev2 = 0.0
    while count < 0 or n < count:
        k = n + 1
        found = 0
        if n >= 2:
            d = last - prev
            pred = last + d
            if n >= 3:
                pred += d - (prev - prev2)
            a = max(pred - 0.3 * d, last + 0.05 * d)
            b = pred + 0.3 * d
            fa = _val(kind, nu, a)
            fb = _val(kind, nu, b)
            if (fa < 0.0) != (fb < 0.0) or fa == 0.0 or fb == 0.0:
                fl = _val(kind, nu, last + 0.05 * d)
                if a == last + 0.05 * d or (fl < 0.0) == (fa < 0.0):
                    br[0] = a
                    br[1] = fa
                    br[2] = b
                    br[3] = fb
                    found = 1
            if not found:
                s = last + 0.05 * d
                lim = (max(xmax, s) + step) if isfinite(xmax) else (s + 50.0 * max(d, M_PI))
                found = _scan(kind, nu, s, _val(kind, nu, s), min(step, 0.25 * d), lim, br)
        else:
            if n > 0:
                s = last + 0.05
                fs = _val(kind, nu, s)
            else:
                s = x0
                fs = f0
            lim = (max(xmax, s) + step) if isfinite(xmax) else (s + limit)
            found = _scan(kind, nu, s, fs, step, lim, br)
        if not found:
            if isfinite(xmax):
                break
            raise ZeroFinderError("no sign change found while scanning", FAMILY_NAMES[kind], nu, k,
                                  (last if n else x0, lim), None)
        a = br[0]
        fa = br[1]
        b = br[2]
        fb = br[3]
        if a > xmax:
            break
        if fa == 0.0:
            z = a
        elif fb == 0.0:
            z = b
        else:
            z = _refine(kind, nu, a, fa, b, fb)
        if z > xmax:
            break
        if n > 0 and z <= last:
            raise ZeroFinderError("zeros not strictly increasing", FAMILY_NAMES[kind], nu, k, (a, b), (fa, fb))
        _verify(kind, nu, z, k)
        zeros.append(z)
        prev2 = prev
        prev = last
        last = z
        n += 1
    return zeros

"""Hodge-Laplacian spectra on cones over S^1 and S^2.

Each degree's spectrum is a union of bands. A band is a root family (J, J',
G+ or G-) evaluated at an order that is either fixed or depends on the
angular index n, with a multiplicity that is constant or 2n+1. Eigenvalues
are squared zeros divided by l^2; zero modes never appear.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import specfun
from .errors import DomainError
from .specfun import ZeroFamily

FIXED = "fixed"
NU_N = "nu*n"
MU_N = "mu_n"

ZeroSource = Callable[[ZeroFamily, float, float], list]


def mu_n(nu: float, n: int) -> float:
    """sqrt(nu^2 n(n+1) + 1/4), the effective order on the cone over S^2."""
    return math.sqrt(nu * nu * n * (n + 1) + 0.25)


@dataclass(frozen=True)
class SpectralBand:
    family: ZeroFamily
    rule: str
    fixed_order: Fraction | None = None
    multiplicity: str = "1"  # "1", "2" or "2n+1"

    def order(self, nu: float, n: int) -> float:
        if self.rule == FIXED:
            return float(self.fixed_order)
        if self.rule == NU_N:
            return nu * n
        return mu_n(nu, n)

    def count(self, n: int) -> int:
        if self.multiplicity == "2n+1":
            return 2 * n + 1
        return int(self.multiplicity)

    @property
    def label(self) -> str:
        fam = {ZeroFamily.JZero: "J", ZeroFamily.JPrimeZero: "J'",
               ZeroFamily.GPlusZero: "G+", ZeroFamily.GMinusZero: "G-"}[self.family]
        if self.rule == FIXED:
            return f"{fam}({self.fixed_order})"
        return f"{fam}({self.rule})"


@dataclass(frozen=True)
class SpectrumDescriptor:
    section: str
    degree: int
    bc: str
    nu: float
    l: float
    bands: tuple

    def multiset(self) -> Counter:
        return Counter(self.bands)


def _fixed(fam, order):
    return SpectralBand(fam, FIXED, Fraction(order), "1")


_J, _JP, _GP, _GM = ZeroFamily.JZero, ZeroFamily.JPrimeZero, ZeroFamily.GPlusZero, ZeroFamily.GMinusZero

_CIRCLE_ABS = {
    0: (_fixed(_J, 1), SpectralBand(_JP, NU_N, None, "2")),
    1: (_fixed(_J, 0), _fixed(_J, 1), SpectralBand(_J, NU_N, None, "2"), SpectralBand(_JP, NU_N, None, "2")),
    2: (_fixed(_J, 0), SpectralBand(_J, NU_N, None, "2")),
}

_S = "2n+1"
_SPHERE_ABS = {
    0: (SpectralBand(_GM, MU_N, None, _S), _fixed(_J, Fraction(3, 2))),
    1: (_fixed(_J, Fraction(3, 2)), SpectralBand(_J, MU_N, None, _S), SpectralBand(_GP, MU_N, None, _S),
        SpectralBand(_GM, MU_N, None, _S)),
    2: (_fixed(_J, Fraction(1, 2)), SpectralBand(_J, MU_N, None, _S), SpectralBand(_GP, MU_N, None, _S),
        SpectralBand(_J, MU_N, None, _S)),
    3: (SpectralBand(_J, MU_N, None, _S), _fixed(_J, Fraction(1, 2))),
}


def _check(q, bc, top, nu, l):
    if bc not in ("abs", "rel"):
        raise DomainError(f"boundary condition must be 'abs' or 'rel', got {bc!r}")
    if int(q) != q or not 0 <= q <= top:
        raise DomainError(f"degree must be an integer in 0..{top}, got {q}")
    if not nu >= 1.0:
        raise DomainError(f"nu = 1/sin(alpha) must be >= 1, got {nu}")
    if not l > 0.0:
        raise DomainError(f"length must be positive, got {l}")


def cone_circle_spectrum(q: int, bc: str, nu: float = 1.0, l: float = 1.0) -> SpectrumDescriptor:
    _check(q, bc, 2, nu, l)
    src = q if bc == "abs" else 2 - q
    return SpectrumDescriptor("circle", int(q), bc, float(nu), float(l), _CIRCLE_ABS[src])


def cone_sphere_spectrum(q: int, bc: str, nu: float = 1.0, l: float = 1.0) -> SpectrumDescriptor:
    _check(q, bc, 3, nu, l)
    src = q if bc == "abs" else 3 - q
    return SpectrumDescriptor("sphere", int(q), bc, float(nu), float(l), _SPHERE_ABS[src])


def spectrum(section: str, q: int, bc: str, nu: float = 1.0, l: float = 1.0) -> SpectrumDescriptor:
    if section == "circle":
        return cone_circle_spectrum(q, bc, nu, l)
    if section == "sphere":
        return cone_sphere_spectrum(q, bc, nu, l)
    raise DomainError(f"section must be 'circle' or 'sphere', got {section!r}")


def alternating_multiset(section: str, bc: str) -> dict:
    """Signed band counts sum_q (-1)^q [bands in degree q]; empty when the
    alternating sum cancels band by band."""
    top = 2 if section == "circle" else 3
    acc: dict = {}
    for q in range(top + 1):
        for band in spectrum(section, q, bc).bands:
            acc[band] = acc.get(band, 0) + (-1) ** q
    return {b: c for b, c in acc.items() if c}


def _default_source(family, order, upto):
    return specfun.zeros(family, order, upto=upto)


@dataclass(frozen=True)
class Eigenvalue:
    value: float
    multiplicity: int
    band: str
    n: int
    k: int
    order: float


def enumerate_eigenvalues(d: SpectrumDescriptor, cutoff: float, zero_source: ZeroSource | None = None) -> list:
    """All eigenvalues <= cutoff, sorted ascending (ties broken by band label, n, k)."""
    if not cutoff >= 0.0:
        raise DomainError("cutoff must be non-negative")
    source = zero_source or _default_source
    xmax = math.sqrt(cutoff) * d.l
    rows = []
    for band in d.bands:
        n = 0 if band.rule == FIXED else 1
        while True:
            order = band.order(d.nu, n)
            # zeros grow with the order, so once the first-zero bound passes
            # the window no later index contributes
            if specfun.zero_lower_bound(band.family, order) > xmax:
                break
            for k, z in enumerate(source(band.family, order, xmax), start=1):
                rows.append(Eigenvalue(z * z / (d.l * d.l), band.count(n), band.label, n, k, order))
            if band.rule == FIXED:
                break
            n += 1
    rows.sort(key=lambda e: (e.value, e.band, e.n, e.k))
    return rows


def counting_function(d: SpectrumDescriptor, cutoff: float, zero_source: ZeroSource | None = None) -> int:
    """Number of eigenvalues <= cutoff counted with multiplicity."""
    return sum(e.multiplicity for e in enumerate_eigenvalues(d, cutoff, zero_source))

"""Geometries: the disc D^m_l and the cone C_alpha S^n of length l over a
sphere of radius sin(alpha), optionally twisted by an orthogonal
representation of dimension ``rank``."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .specfun import gamma_ln

# Angles whose sine is known in closed form. Snapping these keeps
# nu = 1/sin(alpha) exact for the literals users actually type (pi/6 -> 2).
_EXACT_SINES = (
    (math.pi / 2.0, 1.0),
    (math.pi / 3.0, math.sqrt(3.0) / 2.0),
    (math.pi / 4.0, math.sqrt(0.5)),
    (math.pi / 6.0, 0.5),
)


def sin_of_angle(alpha: float) -> float:
    for ref, val in _EXACT_SINES:
        if abs(alpha - ref) <= 4e-16 * ref:
            return val
    return math.sin(alpha)


def unit_sphere_volume(n: int) -> float:
    """Volume of the round unit sphere S^n."""
    return 2.0 * math.exp(0.5 * (n + 1) * math.log(math.pi) - gamma_ln(0.5 * (n + 1)))


@dataclass(frozen=True)
class ConeGeometry:
    n: int
    alpha: float
    l: float = 1.0
    rank: int = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"sphere dimension must be a non-negative integer, got {self.n}")
        if not (0.0 < self.alpha <= math.pi / 2.0 + 1e-15):
            raise DomainError(f"angle must lie in (0, pi/2], got {self.alpha}")
        if not (self.l > 0.0 and math.isfinite(self.l)):
            raise DomainError(f"length must be positive, got {self.l}")
        if int(self.rank) != self.rank or self.rank < 1:
            raise DomainError(f"rank must be a positive integer, got {self.rank}")

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def sin_alpha(self) -> float:
        return sin_of_angle(self.alpha)

    @property
    def nu(self) -> float:
        return 1.0 / self.sin_alpha

    @property
    def volume(self) -> float:
        return cone_volume(self.n, self.alpha, self.l)

    @property
    def is_disc(self) -> bool:
        return self.sin_alpha == 1.0

    def as_dict(self) -> dict:
        return {"n": self.n, "dim": self.dim, "alpha": self.alpha, "length": self.l, "rank": self.rank}


def disc(m: int, l: float = 1.0, rank: int = 1) -> ConeGeometry:
    """The disc D^m_l, i.e. the cone of angle pi/2 over S^{m-1}."""
    if int(m) != m or m < 1:
        raise DomainError(f"disc dimension must be >= 1, got {m}")
    return ConeGeometry(int(m) - 1, math.pi / 2.0, l, rank)


def cone_volume(n: int, alpha: float, l: float) -> float:
    return l ** (n + 1) * sin_of_angle(alpha) ** n * unit_sphere_volume(n) / (n + 1)

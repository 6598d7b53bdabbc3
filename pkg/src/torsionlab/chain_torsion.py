"""Reidemeister torsion of finite real chain complexes, and the cellular
complex of a cone over a sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import qr

from .errors import RankError
from .geometry import ConeGeometry

HOMOLOGY_TOL = 1e-9


@dataclass(frozen=True)
class FiniteChainComplex:
    """Real chain complex C_0 <- C_1 <- ... <- C_top with preferred bases.

    ``boundaries[q]`` is the matrix of d_q : C_q -> C_{q-1}, shape
    (dims[q-1], dims[q]); ``boundaries[0]`` is ignored.
    """

    dims: tuple
    boundaries: tuple = field(repr=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        mats = [np.zeros((0, dims[0]))]
        for q in range(1, len(dims)):
            m = np.asarray(self.boundaries[q], dtype=float).reshape(dims[q - 1], dims[q])
            mats.append(m)
        object.__setattr__(self, "boundaries", tuple(mats))
        for q in range(2, len(dims)):
            comp = mats[q - 1] @ mats[q]
            if comp.size and np.max(np.abs(comp)) > 1e-12:
                raise RankError("boundary of boundary is not zero", degree=q)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary(self, q: int) -> np.ndarray:
        if 1 <= q <= self.top:
            return self.boundaries[q]
        rows = self.dims[q - 1] if 0 <= q - 1 <= self.top else 0
        cols = self.dims[q] if 0 <= q <= self.top else 0
        return np.zeros((rows, cols))

    def tensor(self, rank: int) -> "FiniteChainComplex":
        eye = np.eye(rank)
        return FiniteChainComplex(tuple(d * rank for d in self.dims),
                                  tuple(np.kron(b, eye) for b in self.boundaries))


@dataclass(frozen=True)
class GradedHomologyBasis:
    """Representative cycles; ``vectors[q]`` has shape (dims[q], betti_q)."""

    vectors: tuple = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(np.asarray(v, dtype=float) for v in self.vectors))

    def tensor(self, rank: int) -> "GradedHomologyBasis":
        eye = np.eye(rank)
        return GradedHomologyBasis(tuple(np.kron(v, eye) for v in self.vectors))


def _as_columns(v, rows: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim == 1:
        v = v.reshape(rows, -1) if rows else np.zeros((0, 0))
    if v.shape[0] != rows:
        raise RankError(f"expected {rows} rows, got {v.shape[0]}")
    return v


def _default_lift(d: np.ndarray) -> np.ndarray:
    """Standard basis vectors of C_q whose images span the image of d_q,
    chosen by column-pivoted QR."""
    rows, cols = d.shape
    if rows == 0 or cols == 0:
        return np.zeros((cols, 0))
    _, r, piv = qr(d, pivoting=True, mode="economic")
    diag = np.abs(np.diag(r))
    scale = diag[0] if diag.size else 0.0
    rank = int(np.sum(diag > HOMOLOGY_TOL * max(scale, 1.0)))
    lift = np.zeros((cols, rank))
    for i, p in enumerate(piv[:rank]):
        lift[p, i] = 1.0
    return lift


def reidemeister_torsion(complex_: FiniteChainComplex, homology: GradedHomologyBasis,
                         lifts: dict | None = None) -> float:
    """log of prod_q |det(d b_{q+1}, h_q, b_q)|^{(-1)^q}.

    ``lifts`` may override the chosen b_q per degree; the result does not
    depend on that choice. Raises ``RankError`` naming the degree when the
    combined columns do not form a basis of C_q.
    """
    top = complex_.top
    if len(homology.vectors) != top + 1:
        raise RankError("homology basis must list every degree", degree=len(homology.vectors))
    b = {}
    for q in range(top + 1):
        if lifts is not None and q in lifts:
            b[q] = _as_columns(lifts[q], complex_.dims[q])
        elif q == 0:
            b[q] = np.zeros((complex_.dims[0], 0))
        else:
            b[q] = _default_lift(complex_.boundary(q))
    terms = []
    for q in range(top + 1):
        h = _as_columns(homology.vectors[q], complex_.dims[q])
        if q > 0 and h.shape[1]:
            resid = complex_.boundary(q) @ h
            if resid.size and np.max(np.abs(resid)) > HOMOLOGY_TOL * max(1.0, np.max(np.abs(h))):
                raise RankError("homology representative is not a cycle", degree=q)
        cols = [h, b[q]]
        if q < top:
            cols.insert(0, complex_.boundary(q + 1) @ b[q + 1])
        m = np.hstack(cols) if complex_.dims[q] else np.zeros((0, 0))
        if m.shape[0] != m.shape[1]:
            raise RankError(f"degree {q}: {m.shape[1]} columns for a space of dimension {m.shape[0]}", degree=q)
        if m.shape[0] == 0:
            continue
        sign, logdet = np.linalg.slogdet(m)
        if sign == 0 or not math.isfinite(logdet):
            raise RankError(f"degree {q}: columns are linearly dependent", degree=q)
        terms.append(logdet if q % 2 == 0 else -logdet)
    return math.fsum(terms)


def cone_cw_complex(geom: ConeGeometry, bc: str):
    """Cellular complex of C_alpha S^n with one cell in degrees 0, n, n+1.

    Relative: only the top cell survives, homology generator c/sqrt(V).
    Absolute: d c_{n+1} = c_n and homology generator sqrt(V) c_0.
    Both are tensored with the identity of size ``rank``.
    """
    n = geom.n
    vol = geom.volume
    if bc == "rel":
        dims = [0] * (n + 2)
        dims[n + 1] = 1
        bnd = [np.zeros((dims[q - 1] if q else 0, dims[q])) for q in range(n + 2)]
        hom = [np.zeros((dims[q], 0)) for q in range(n + 2)]
        hom[n + 1] = np.array([[1.0 / math.sqrt(vol)]])
    elif bc == "abs":
        dims = [0] * (n + 2)
        dims[0] += 1
        dims[n] += 1
        dims[n + 1] += 1
        bnd = [np.zeros((dims[q - 1] if q else 0, dims[q])) for q in range(n + 2)]
        # c_n is the first basis vector of C_n (C_0 = <c_n, c_0> when n = 0)
        bnd[n + 1] = np.zeros((dims[n], 1))
        bnd[n + 1][0, 0] = 1.0
        hom = [np.zeros((dims[q], 0)) for q in range(n + 2)]
        h0 = np.zeros((dims[0], 1))
        h0[-1, 0] = math.sqrt(vol)
        hom[0] = h0
    else:
        raise ValueError(f"boundary condition must be 'abs' or 'rel', got {bc!r}")
    cx = FiniteChainComplex(tuple(dims), tuple(bnd))
    hb = GradedHomologyBasis(tuple(hom))
    if geom.rank > 1:
        cx, hb = cx.tensor(geom.rank), hb.tensor(geom.rank)
    return cx, hb


def rs_torsion_closed(geom: ConeGeometry, bc: str) -> float:
    """log of the Reidemeister torsion of the cone with its ray-type homology basis."""
    half = 0.5 * geom.rank * math.log(geom.volume)
    if bc == "abs":
        return half
    if bc == "rel":
        return half if geom.n % 2 == 0 else -half
    raise ValueError(f"boundary condition must be 'abs' or 'rel', got {bc!r}")

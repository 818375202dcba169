"""Closed-form mixed Steklov spectra on annuli with unit inner radius.

The annulus ``A_R = B_R \\ B_1`` in ``R^n`` (``n >= 3``) carries two mixed
eigenvalue problems for harmonic functions: a Steklov condition on the unit
inner sphere combined with either a Dirichlet or a Neumann condition on the
outer sphere of radius ``R``.  Both problems diagonalize over spherical
harmonics, so each harmonic degree ``k`` contributes a single eigenvalue
branch whose value, multiplicity, monotone limit and inverse curve all have
elementary closed forms:

    sigma_D(n, k, R) = ((k+n-2) R^a + k) / (R^a - 1),        a = 2k + n - 2
    sigma_N(n, k, R) = k (k+n-2) (R^a - 1) / (k R^a + k+n-2)

Geometry is parameterized by the meridian length ``L > 0`` of the associated
hypersurface of revolution, with ``R = 1 + L/2``; everything downstream is
phrased in ``L``.

All powers are evaluated in log space, ``t = R^{-a} = exp(-a*log1p(L/2))``,
and the difference ``1 - t`` goes through ``expm1``.  Direct powers overflow
double precision near ``k ~ 350`` already for ``R = 2``, while the parameter
sweeps go up to ``k ~ 6e5``, and naive ``R^a - 1`` loses every significant
digit in the small-``L`` regime where the interesting maxima live.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from enum import Enum

INT64_MAX = 2**63 - 1


class Family(Enum):
    """Which outer boundary condition a branch eigenvalue belongs to."""

    NEUMANN = "N"
    DIRICHLET = "D"


def _check_dimension(n) -> int:
    n = operator.index(n)
    if n < 3:
        raise ValueError(f"dimension must be an integer >= 3, got {n}")
    return n


def _check_harmonic_index(k) -> int:
    k = operator.index(k)
    if k < 0:
        raise ValueError(f"harmonic index must be a non-negative integer, got {k}")
    return k


@dataclass(frozen=True)
class AnnulusGeometry:
    """Annulus with inner radius 1, parameterized by the meridian length L.

    The outer radius is derived as R = 1 + L/2 and never stored, so the two
    cannot drift apart.
    """

    meridian_length: float

    def __post_init__(self):
        L = float(self.meridian_length)
        if not (L > 0.0) or math.isinf(L):
            raise ValueError(f"meridian length must be positive and finite, got {L!r}")
        object.__setattr__(self, "meridian_length", L)

    @property
    def outer_radius(self) -> float:
        return 1.0 + 0.5 * self.meridian_length

    @property
    def log_outer_radius(self) -> float:
        # log(1 + L/2) without cancellation for small L
        return math.log1p(0.5 * self.meridian_length)

    @classmethod
    def from_outer_radius(cls, outer_radius: float) -> "AnnulusGeometry":
        R = float(outer_radius)
        if not (R > 1.0):
            raise ValueError(f"outer radius must exceed 1, got {R!r}")
        return cls(2.0 * (R - 1.0))


def multiplicity(n, k) -> int:
    """Dimension of the space of degree-k spherical harmonics on S^{n-1}.

    Exact integer arithmetic; this count is shared by the Laplacian on the
    sphere and by both mixed problems at harmonic degree k.  Raises
    OverflowError once the value leaves the 64-bit range, because the level
    bookkeeping downstream accumulates these counts in int64.
    """
    n = _check_dimension(n)
    k = _check_harmonic_index(k)
    if k == 0:
        return 1
    num = math.comb(n + k - 3, k) * (n + 2 * k - 2)
    m, rem = divmod(num, n - 2)
    assert rem == 0, "harmonic multiplicity must be integral"
    if m > INT64_MAX:
        raise OverflowError(
            f"multiplicity(n={n}, k={k}) exceeds the 64-bit integer range"
        )
    return m


def steklov_dirichlet(n, k, geom: AnnulusGeometry) -> float:
    """Steklov-Dirichlet branch eigenvalue at harmonic degree k.

    Stabilized form of ((k+n-2) R^a + k) / (R^a - 1): divide through by R^a
    and evaluate t = R^{-a} in log space.  Decreasing in L with limit k+n-2;
    once t underflows the limit value is returned, which is the correct
    saturation, not an error.
    """
    n = _check_dimension(n)
    k = _check_harmonic_index(k)
    x = (2 * k + n - 2) * geom.log_outer_radius
    t = math.exp(-x)
    one_minus_t = -math.expm1(-x)
    return ((k + n - 2) + k * t) / one_minus_t


def steklov_neumann(n, k, geom: AnnulusGeometry) -> float:
    """Steklov-Neumann branch eigenvalue at harmonic degree k.

    Stabilized form of k (k+n-2) (R^a - 1) / (k R^a + k+n-2).  Increasing in
    L with limit k+n-2; identically zero at k = 0 (constant eigenfunction).
    """
    n = _check_dimension(n)
    k = _check_harmonic_index(k)
    if k == 0:
        return 0.0
    x = (2 * k + n - 2) * geom.log_outer_radius
    t = math.exp(-x)
    one_minus_t = -math.expm1(-x)
    return k * (k + n - 2) * one_minus_t / (k + (k + n - 2) * t)


def curve_limit(n, k, family: Family) -> float:
    """Common L -> infinity limit of a branch: k+n-2 (0 for Neumann k=0).

    The Dirichlet branch approaches it from above, the Neumann branch from
    below.
    """
    n = _check_dimension(n)
    k = _check_harmonic_index(k)
    if family is Family.NEUMANN and k == 0:
        return 0.0
    return float(k + n - 2)


def dirichlet0_inverse(n, y: float) -> AnnulusGeometry:
    """Geometry at which the degree-0 Steklov-Dirichlet branch equals y.

    The branch sigma_D(n, 0, .) decreases from +inf to n-2, so the inverse
    exists exactly for y > n-2:  R = (1 + (n-2)/(y-(n-2)))^{1/(n-2)}.
    Round-trips with steklov_dirichlet to 1e-12 relative accuracy.
    """
    n = _check_dimension(n)
    y = float(y)
    if not (y > n - 2):
        raise ValueError(f"value {y!r} is outside the branch range ({n - 2}, inf)")
    log_r = math.log1p((n - 2) / (y - (n - 2))) / (n - 2)
    return AnnulusGeometry(2.0 * math.expm1(log_r))


def neumann_inverse(n, k, y: float) -> AnnulusGeometry:
    """Geometry at which the degree-k (k >= 1) Steklov-Neumann branch equals y.

    The branch increases from 0 to k+n-2, so the inverse exists exactly for
    0 < y < k+n-2:  R = ((1 + y/k) / (1 - y/(k+n-2)))^{1/(2k+n-2)}.
    Round-trips with steklov_neumann to 1e-12 relative accuracy.
    """
    n = _check_dimension(n)
    k = _check_harmonic_index(k)
    if k < 1:
        raise ValueError("the Neumann inverse needs harmonic index k >= 1")
    y = float(y)
    if not (0.0 < y < k + n - 2):
        raise ValueError(
            f"value {y!r} is outside the branch range (0, {k + n - 2})"
        )
    log_r = (math.log1p(y / k) - math.log1p(-y / (k + n - 2))) / (2 * k + n - 2)
    return AnnulusGeometry(2.0 * math.expm1(log_r))

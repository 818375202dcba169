"""Sharp upper bound B(n, k, L) for the k-th Steklov eigenvalue of a
hypersurface of revolution with two unit-sphere boundary components.

The construction assembles mixed annulus eigenvalues on A_{1+L/2}: with
l0 the deepest harmonic level whose cumulative multiplicity stays <= k,
the candidate set consists of the Dirichlet branches at degrees 0..l0 and
the Neumann branches at degrees 1..l0+1.  Sorted in ascending order with
multiplicities attached, the bound is the first candidate value at which
the running multiplicity total reaches k.

Both families are individually ascending in the harmonic degree, so the
sorted order is obtained by merging two sorted sequences; on numerically
equal values the merge emits Neumann before Dirichlet (which is also their
mathematical order wherever the two families share a limit), then lower
degree first.  This makes the provenance deterministic even at exact float
ties, while the bound value itself is tie-independent.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .spectra import (
    AnnulusGeometry,
    Family,
    _check_dimension,
    multiplicity,
    steklov_dirichlet,
    steklov_neumann,
)


@dataclass(frozen=True)
class CandidateEigenvalue:
    value: float
    family: Family
    harmonic_index: int
    multiplicity: int


@dataclass(frozen=True)
class BoundResult:
    bound: float
    l0: int
    l1: int
    achieved_by: CandidateEigenvalue
    candidates: tuple[CandidateEigenvalue, ...]


def _check_eigenvalue_index(k) -> int:
    k = operator.index(k)
    if k < 1:
        raise ValueError(f"eigenvalue index must be a positive integer, got {k}")
    return k


def level_l0(n, k) -> int:
    """Largest level l such that multiplicities of degrees 0..l sum to <= k."""
    n = _check_dimension(n)
    k = _check_eigenvalue_index(k)
    cum = 0
    level = 0
    while True:
        cum += multiplicity(n, level)
        if cum > k:
            return level - 1
        level += 1


def candidate_multiplicities(n, k) -> tuple[int, np.ndarray]:
    """l0 together with the int64 multiplicity table for degrees 0..l0+1.

    This is the per-(n, k) precomputation shared by the bound kernels; the
    eigenvalue comparisons against k stay exact because the table is held in
    integers end to end.
    """
    l0 = level_l0(n, k)
    mult = np.array([multiplicity(n, i) for i in range(l0 + 2)], dtype=np.int64)
    return l0, mult


def build_candidate_set(n, k, geom: AnnulusGeometry) -> tuple[CandidateEigenvalue, ...]:
    """The 2*l0+2 candidates at geom, ascending, deterministic tie-break."""
    n = _check_dimension(n)
    k = _check_eigenvalue_index(k)
    l0 = level_l0(n, k)
    neumann = [
        CandidateEigenvalue(
            steklov_neumann(n, j, geom), Family.NEUMANN, j, multiplicity(n, j)
        )
        for j in range(1, l0 + 2)
    ]
    dirichlet = [
        CandidateEigenvalue(
            steklov_dirichlet(n, j, geom), Family.DIRICHLET, j, multiplicity(n, j)
        )
        for j in range(l0 + 1)
    ]
    merged: list[CandidateEigenvalue] = []
    i = j = 0
    while i < len(neumann) or j < len(dirichlet):
        if i < len(neumann) and (
            j >= len(dirichlet) or neumann[i].value <= dirichlet[j].value
        ):
            merged.append(neumann[i])
            i += 1
        else:
            merged.append(dirichlet[j])
            j += 1
    return tuple(merged)


def sharp_bound(n, k, geom: AnnulusGeometry) -> BoundResult:
    """Bound value with full provenance: levels, winning candidate, table.

    Always succeeds: the Neumann candidates alone carry cumulative
    multiplicity >= k by the definition of l0.
    """
    candidates = build_candidate_set(n, k, geom)
    l0 = (len(candidates) - 2) // 2
    cum = 0
    for pos, cand in enumerate(candidates):
        cum += cand.multiplicity
        if cum >= k:
            return BoundResult(
                bound=cand.value,
                l0=l0,
                l1=pos,
                achieved_by=cand,
                candidates=candidates,
            )
    raise AssertionError("cumulative multiplicity must reach k within the set")


def bound_curve(
    n, k, grid: Sequence[float], map_fn=map
) -> list[tuple[float, BoundResult]]:
    """sharp_bound evaluated pointwise over a strictly increasing grid.

    Output order matches input order.  map_fn may be a parallel map (e.g.
    multiprocessing.Pool.map); entries are independent.
    """
    n = _check_dimension(n)
    k = _check_eigenvalue_index(k)
    grid = [float(L) for L in grid]
    for a, b in zip(grid, grid[1:]):
        if not (b > a):
            raise ValueError("grid of meridian lengths must be strictly increasing")
    if grid and grid[0] <= 0.0:
        raise ValueError("grid of meridian lengths must be positive")
    results = list(map_fn(_bound_curve_point, [(n, k, L) for L in grid]))
    return list(zip(grid, results))


def _bound_curve_point(args) -> BoundResult:
    n, k, L = args
    return sharp_bound(n, k, AnnulusGeometry(L))

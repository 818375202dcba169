"""Critical-length classification of eigenvalue indices.

For fixed (n, k) the bound L -> B(n, k, L) rises from 0 at L -> 0 and
approaches an integer limit at L -> infinity, given by the first rung of the
large-L candidate ladder D_0 < N_1 < D_1 < N_2 < ... whose cumulative
multiplicity reaches k (limits n-2, n-1, n-1, n, ...).  An index k has a
finite critical length when the supremum of the curve exceeds that limit,
i.e. it is attained at some finite L*.

classify() samples the curve on a log-spaced grid, sharpens every local
maximum bracket by golden-section search (the curve is piecewise smooth with
kinks where candidate branches cross, so no derivative information is used),
and compares the refined supremum against the exact closed-form limit.  A
negative outcome is reported as "no finite critical length found up to the
scan horizon", never as a proof that the critical length is infinite.

sweep() classifies the diagnosis indices k_i = 2*(m_0 + ... + m_{i-1}): a
finite verdict there propagates to the whole block [k_i, k_i + 2 m_i - 1],
which is what makes whole-table scans affordable.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from ._backend import kernels
from .extension import (
    _check_eigenvalue_index,
    candidate_multiplicities,
)
from .spectra import Family, _check_dimension, multiplicity

INT64_MAX = 2**63 - 1

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Verdict(Enum):
    FINITE = "FiniteCriticalLength"
    NO_FINITE_FOUND = "NoFiniteFoundUpToHorizon"


@dataclass(frozen=True)
class ScanConfig:
    """Scan protocol for classify(): grid, refinement and decision tolerance.

    Defaults: 512 log-spaced points on [1e-3, 1e3], golden-section
    refinement of the best local-maximum brackets down to relative width
    1e-6, and a relative decision margin epsilon = 1e-9 for "supremum
    exceeds the limit".
    """

    l_min: float = 1e-3
    l_max: float = 1e3
    grid_points: int = 512
    refine_budget: int = 8
    refine_rtol: float = 1e-6
    epsilon: float = 1e-9

    def validate(self) -> None:
        if not (0.0 < self.l_min < self.l_max):
            raise ValueError(
                f"scan range requires 0 < l_min < l_max, got [{self.l_min}, {self.l_max}]"
            )
        if self.grid_points < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.grid_points}")
        if self.refine_budget < 0:
            raise ValueError("refinement budget must be non-negative")
        if not (self.refine_rtol > 0.0 and self.epsilon > 0.0):
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class LadderRung:
    family: Family
    harmonic_index: int
    limit_value: float
    cumulative_multiplicity: int


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    k: int
    verdict: Verdict
    witness_length: Optional[float]
    supremum_estimate: float
    asymptotic_limit: float
    scan_horizon: float
    samples_used: int


@dataclass(frozen=True)
class SweepEntry:
    i: int
    k: int
    k_cover_end: int
    report: ClassificationReport


@dataclass(frozen=True)
class SweepReport:
    n: int
    entries: tuple[SweepEntry, ...]


def diagnosis_sequence(n, count) -> list[int]:
    """First `count` diagnosis indices 2*(m_0 + ... + m_{i-1}), i = 1..count."""
    n = _check_dimension(n)
    count = operator.index(count)
    if count < 1:
        raise ValueError(f"count must be a positive integer, got {count}")
    out = []
    cum = 0
    for i in range(count):
        cum += multiplicity(n, i)
        if 2 * cum > INT64_MAX:
            raise OverflowError(
                f"diagnosis index {i + 1} exceeds the 64-bit integer range"
            )
        out.append(2 * cum)
    return out


def asymptotic_ladder(n, depth) -> list[LadderRung]:
    """Large-L candidate ladder D_0, N_1, D_1, ..., N_depth, D_depth.

    Rung limits are n-2, n-1, n-1, n, n, ...; cumulative multiplicities are
    1, 1+m_1, 1+2m_1, 1+2m_1+m_2, ...  This is the candidate order for every
    sufficiently large L: each Neumann branch sits below its own limit, each
    Dirichlet branch above, and consecutive limits differ by one.
    """
    n = _check_dimension(n)
    rungs = [LadderRung(Family.DIRICHLET, 0, float(n - 2), 1)]
    cum = 1
    for j in range(1, depth + 1):
        m = multiplicity(n, j)
        cum += m
        rungs.append(LadderRung(Family.NEUMANN, j, float(j + n - 2), cum))
        cum += m
        rungs.append(LadderRung(Family.DIRICHLET, j, float(j + n - 2), cum))
    return rungs


def asymptotic_limit(n, k) -> tuple[float, LadderRung]:
    """lim_{L->inf} B(n, k, L): first ladder rung with cumulative count >= k."""
    n = _check_dimension(n)
    k = _check_eigenvalue_index(k)
    if k == 1:
        return float(n - 2), LadderRung(Family.DIRICHLET, 0, float(n - 2), 1)
    cum = 1
    j = 1
    while True:
        m = multiplicity(n, j)
        cum += m
        if cum >= k:
            rung = LadderRung(Family.NEUMANN, j, float(j + n - 2), cum)
            return rung.limit_value, rung
        cum += m
        if cum >= k:
            rung = LadderRung(Family.DIRICHLET, j, float(j + n - 2), cum)
            return rung.limit_value, rung
        j += 1


def _golden_section_max(f, lo: float, hi: float, rtol: float, max_iter: int = 200):
    """Maximize f over [lo, hi] (0 < lo < hi) in log space.

    Returns (best_x, best_value, evaluations).  Within a bracket that holds a
    single local maximum this converges to it; with several kinks inside it
    still returns the best point probed, which is all the scan needs (a
    certified lower bound on the supremum).
    """
    a = math.log(lo)
    b = math.log(hi)
    width_target = math.log1p(rtol)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    xc, xd = math.exp(c), math.exp(d)
    fc, fd = f(xc), f(xd)
    evals = 2
    best_x, best_f = (xc, fc) if fc >= fd else (xd, fd)
    for _ in range(max_iter):
        if (b - a) <= width_target:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            xc = math.exp(c)
            fc = f(xc)
            evals += 1
            if fc > best_f:
                best_x, best_f = xc, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            xd = math.exp(d)
            fd = f(xd)
            evals += 1
            if fd > best_f:
                best_x, best_f = xd, fd
    return best_x, best_f, evals


def classify(n, k, config: ScanConfig = ScanConfig()) -> ClassificationReport:
    """Scan B(n, k, .) over [l_min, l_max] and compare against the limit.

    Deterministic for a fixed config.  The supremum estimate is the larger
    of the refined scan maximum and the closed-form limit (the latter is
    always approached, so it is a true lower bound for the supremum).
    """
    n = _check_dimension(n)
    k = _check_eigenvalue_index(k)
    config.validate()
    limit, _rung = asymptotic_limit(n, k)

    l0, mult = candidate_multiplicities(n, k)
    grid = np.geomspace(config.l_min, config.l_max, config.grid_points)
    values = kernels.bound_batch(n, k, l0, mult, grid)
    samples = config.grid_points

    best_idx = int(np.argmax(values))
    best_l = float(grid[best_idx])
    best_val = float(values[best_idx])

    # local-maximum brackets: last index of any plateau that dominates both
    # neighbours; refined best-first within the budget
    brackets = []
    for i in range(1, config.grid_points - 1):
        if values[i] >= values[i - 1] and values[i] > values[i + 1]:
            brackets.append((float(values[i]), float(grid[i - 1]), float(grid[i + 1])))
    brackets.sort(key=lambda b: (-b[0], b[1]))

    def point(L: float) -> float:
        return float(kernels.bound_at(n, k, l0, mult, L))

    for _, lo, hi in brackets[: config.refine_budget]:
        x, fx, used = _golden_section_max(point, lo, hi, config.refine_rtol)
        samples += used
        if fx > best_val:
            best_val, best_l = fx, x

    finite = best_val > limit * (1.0 + config.epsilon)
    return ClassificationReport(
        n=n,
        k=k,
        verdict=Verdict.FINITE if finite else Verdict.NO_FINITE_FOUND,
        witness_length=best_l if finite else None,
        supremum_estimate=best_val if finite else max(best_val, limit),
        asymptotic_limit=limit,
        scan_horizon=config.l_max,
        samples_used=samples,
    )


def global_bound_estimate(n, k, config: ScanConfig = ScanConfig()) -> float:
    """sup_L B(n, k, L) estimated as max(scanned supremum, asymptotic limit)."""
    return classify(n, k, config).supremum_estimate


def _sweep_one(args) -> SweepEntry:
    n, i, k, cover_end, config = args
    return SweepEntry(i=i, k=k, k_cover_end=cover_end, report=classify(n, k, config))


def _classify_one(args) -> SweepEntry:
    n, i, k, config = args
    return SweepEntry(i=i, k=k, k_cover_end=k, report=classify(n, k, config))


def sweep(
    n,
    i_from,
    i_to,
    config: ScanConfig = ScanConfig(),
    map_fn=map,
    per_k: bool = False,
    skip: Iterable[tuple[int, int]] = (),
) -> SweepReport:
    """Classify diagnosis indices i_from..i_to (inclusive).

    Each entry covers the block [k_i, k_i + 2 m_i - 1]: a finite verdict at
    the diagnosis index settles every index of the block.  With per_k=True
    every index of every block is classified individually instead (one entry
    per k, cover end equal to k).

    map_fn may be a parallel map; entries come back ordered by (i, k)
    regardless of evaluation order.  `skip` lists (i, k) pairs to leave out
    (resume support).
    """
    n = _check_dimension(n)
    i_from = operator.index(i_from)
    i_to = operator.index(i_to)
    if i_from < 1 or i_to < i_from:
        raise ValueError(f"invalid diagnosis index range {i_from}..{i_to}")
    config.validate()

    seq = diagnosis_sequence(n, i_to)
    skip_set = set(skip)
    tasks = []
    for i in range(i_from, i_to + 1):
        k_i = seq[i - 1]
        if per_k:
            cover_end = k_i + 2 * multiplicity(n, i) - 1
            for k in range(k_i, cover_end + 1):
                if (i, k) not in skip_set:
                    tasks.append((n, i, k, config))
        else:
            if (i, k_i) not in skip_set:
                cover_end = k_i + 2 * multiplicity(n, i) - 1
                tasks.append((n, i, k_i, cover_end, config))

    worker = _classify_one if per_k else _sweep_one
    computed = list(map_fn(worker, tasks))
    entries = sorted(computed, key=lambda e: (e.i, e.k))
    return SweepReport(n=n, entries=tuple(entries))

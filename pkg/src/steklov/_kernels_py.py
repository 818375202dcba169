"""Pure-Python twin of the compiled bound kernel.

Same semantics, same operation order (both sides call the platform libm, so
results agree bit for bit with the compiled extension).  Selected at import
time by steklov._backend when the extension is unavailable or explicitly
disabled.
"""

from math import exp, expm1, log1p

import numpy as np


def bound_at(n, k, l0, mult, L):
    # Evaluate the 2*l0+2 candidate branch values at L, then merge the two
    # ascending families (Neumann degrees 1..l0+1, Dirichlet degrees 0..l0)
    # until the cumulative multiplicity reaches k.  Ties take Neumann first.
    lnr = log1p(0.5 * L)
    nvals = [0.0] * (l0 + 1)
    dvals = [0.0] * (l0 + 1)
    for j in range(l0 + 1):
        x = (2 * j + n - 2) * lnr
        t = exp(-x)
        em1 = -expm1(-x)
        dvals[j] = ((j + n - 2) + j * t) / em1
        jn = j + 1
        x = (2 * jn + n - 2) * lnr
        t = exp(-x)
        em1 = -expm1(-x)
        nvals[j] = jn * (jn + n - 2) * em1 / (jn + (jn + n - 2) * t)

    i = 0
    j = 0
    cum = 0
    while True:
        if i <= l0 and (j > l0 or nvals[i] <= dvals[j]):
            v = nvals[i]
            cum += mult[i + 1]
            i += 1
        else:
            assert j <= l0, "cumulative multiplicity must reach k within the set"
            v = dvals[j]
            cum += mult[j]
            j += 1
        if cum >= k:
            return v


def bound_batch(n, k, l0, mult, lengths):
    mult = [int(m) for m in mult]
    out = np.empty(len(lengths), dtype=np.float64)
    for idx, L in enumerate(lengths):
        out[idx] = bound_at(n, k, l0, mult, L)
    return out

"""Bottleneck distance between two persistence diagrams.

Matched points cost the sup-norm of their difference (inf - inf = 0, so
essential points compare by birth and a finite/infinite match is
impossible); unmatched points cost half their persistence. Since essential
points can only match essential points, the distance is infinite exactly
when the essential counts differ, and otherwise splits into an independent
essential part (sorted 1-d pairing, which is optimal for min-max matching
on a line) and a finite part.

The finite part is solved exactly: the answer is one of the finitely many
pairwise sup-distances or half-persistences, so we binary-search that
candidate set. Feasibility of a threshold t asks for a matching in the
t-threshold graph covering every point whose diagonal cost exceeds t on
either side; by the Mendelsohn-Dulmage theorem it is enough to saturate
each side separately, which is a plain maximum bipartite matching.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import DimensionMismatch
from .persistence import Diagram

# below this many potential edges a pure-python augmenting path search is
# cheaper than building a scipy sparse matrix
_SMALL_GRAPH = 4096


def _saturates(adj: np.ndarray) -> bool:
    """True when some matching covers every row of the boolean biadjacency."""
    nrows, ncols = adj.shape
    if nrows == 0:
        return True
    if ncols == 0:
        return False
    if not adj.any(axis=1).all():
        return False
    if nrows * ncols <= _SMALL_GRAPH:
        return _saturates_kuhn(adj)
    m = maximum_bipartite_matching(csr_matrix(adj), perm_type="column")
    return int((m >= 0).sum()) == nrows


def _saturates_kuhn(adj: np.ndarray) -> bool:
    nrows, ncols = adj.shape
    neighbors = [np.flatnonzero(adj[r]) for r in range(nrows)]
    match_col = [-1] * ncols

    def augment(r: int, seen: list[bool]) -> bool:
        for c in neighbors[r]:
            if not seen[c]:
                seen[c] = True
                if match_col[c] < 0 or augment(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(nrows):
        if not augment(r, [False] * ncols):
            return False
    return True


def _finite_bottleneck(a: np.ndarray, b: np.ndarray) -> float:
    """Exact bottleneck distance of the finite parts (n x 2 arrays)."""
    n1, n2 = len(a), len(b)
    diag1 = (a[:, 1] - a[:, 0]) / 2.0 if n1 else np.empty(0)
    diag2 = (b[:, 1] - b[:, 0]) / 2.0 if n2 else np.empty(0)
    if n1 == 0 and n2 == 0:
        return 0.0
    if n1 == 0:
        return float(diag2.max())
    if n2 == 0:
        return float(diag1.max())

    dist = np.maximum(
        np.abs(a[:, 0, None] - b[None, :, 0]),
        np.abs(a[:, 1, None] - b[None, :, 1]),
    )
    # every point either matches (>= its best pairwise distance) or pays its
    # diagonal cost, which gives a lower bound; matching nothing gives an
    # upper bound; only candidates in between matter
    lb = max(
        float(np.minimum(dist.min(axis=1), diag1).max()),
        float(np.minimum(dist.min(axis=0), diag2).max()),
    )
    ub = max(float(diag1.max()), float(diag2.max()))
    pool = np.concatenate([dist.ravel(), diag1, diag2])
    candidates = np.unique(pool[(pool >= lb) & (pool <= ub)])

    def feasible(t: float) -> bool:
        high1 = diag1 > t
        high2 = diag2 > t
        if high1.any() and not _saturates(dist[high1, :] <= t):
            return False
        if high2.any() and not _saturates(dist[:, high2].T <= t):
            return False
        return True

    # the answer is in the filtered set and the largest candidate (the
    # all-unmatched cost) is always feasible, so the search is well defined
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(float(candidates[mid])):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def bottleneck_distance(D1: Diagram, D2: Diagram) -> float:
    """Bottleneck distance; inf when the essential counts differ."""
    if D1.homology_dimension != D2.homology_dimension:
        raise DimensionMismatch(
            f"dimension {D1.homology_dimension} vs {D2.homology_dimension}"
        )
    if len(D1.essential) != len(D2.essential):
        return float("inf")
    ess = 0.0
    for x, y in zip(D1.essential, D2.essential):  # both sorted
        ess = max(ess, abs(x - y))
    fin = _finite_bottleneck(
        np.array(D1.finite, dtype=np.float64).reshape(-1, 2),
        np.array(D2.finite, dtype=np.float64).reshape(-1, 2),
    )
    return max(ess, fin)

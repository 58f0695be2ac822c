"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately avoid the code paths they check: the geometric
push oracle goes through angles and trigonometry instead of the closed
formulas, and the bottleneck oracle enumerates every partial matching.
"""

import math

import numpy as np
import pytest

from matchdist.complexes import BiFiltration, validate_bifiltration
from matchdist.persistence import Diagram
from matchdist.slices import SLICE_TYPES, ParamBox, Slice, pair_extents
from matchdist.solver import eval_slice


def wpush_geometric(px: float, py: float, L: Slice) -> float:
    """Weighted push via the angle parameterization; requires lam > 0.

    Intersects the boundary of the upper-right quadrant of p with the
    line, takes the signed distance from the slice origin, and scales by
    sin(angle) for flat slices and cos(angle) for steep ones.
    """
    assert L.lam > 0.0
    slope = L.lam if L.stype.is_flat else 1.0 / L.lam
    gamma = math.atan(slope)
    ox, oy = (L.mu, 0.0) if L.stype.is_x else (0.0, L.mu)
    w = math.sin(gamma) if L.stype.is_flat else math.cos(gamma)
    line_y = oy + slope * (px - ox)
    if py >= line_y:
        qx, qy = ox + (py - oy) / slope, py
    else:
        qx, qy = px, line_y
    signed_dist = (qx - ox) * math.cos(gamma) + (qy - oy) * math.sin(gamma)
    return w * signed_dist


def bottleneck_brute(D1: Diagram, D2: Diagram) -> float:
    """Exhaustive minimum over all partial matchings (small diagrams only)."""
    pts1 = list(D1.finite) + [(b, math.inf) for b in D1.essential]
    pts2 = list(D2.finite) + [(b, math.inf) for b in D2.essential]

    def cost_match(p, q):
        if math.isinf(p[1]) and math.isinf(q[1]):
            return abs(p[0] - q[0])
        if math.isinf(p[1]) or math.isinf(q[1]):
            return math.inf
        return max(abs(p[0] - q[0]), abs(p[1] - q[1]))

    def cost_diag(p):
        return math.inf if math.isinf(p[1]) else (p[1] - p[0]) / 2.0

    best = math.inf
    n2 = len(pts2)

    def rec(i: int, used: int, cur: float):
        nonlocal best
        if cur > best:
            return
        if i == len(pts1):
            total = cur
            for j in range(n2):
                if not (used >> j) & 1:
                    total = max(total, cost_diag(pts2[j]))
            best = min(best, total)
            return
        rec(i + 1, used, max(cur, cost_diag(pts1[i])))
        for j in range(n2):
            if not (used >> j) & 1:
                rec(i + 1, used | (1 << j), max(cur, cost_match(pts1[i], pts2[j])))

    rec(0, 0, 0.0)
    return best


def grid_slices(B: ParamBox, n: int) -> list[Slice]:
    """n x n slice grid over the box, endpoints included."""
    lams = np.linspace(B.lam_min, B.lam_max, n)
    mus = np.linspace(B.mu_min, B.mu_max, n)
    return [Slice(float(l), float(m), B.stype) for l in lams for m in mus]


def dmatch_sampled(F1, F2, n: int = 64, dim: int = 0) -> float:
    """Lower bound of the matching distance on an n x n grid per type."""
    X, Y, _ = pair_extents(F1, F2)
    best = 0.0
    for t in SLICE_TYPES:
        R = X if t.is_x else Y
        for lam in np.linspace(0.0, 1.0, n):
            for mu in np.linspace(0.0, R, n):
                d = eval_slice(F1, F2, Slice(float(lam), float(mu), t), dim)
                if d > best:
                    best = d
    return best


def scaled_copy(F: BiFiltration, denom: float = 1024.0) -> BiFiltration:
    """Same filtration with all coordinates divided by a power of two."""
    return validate_bifiltration(
        F.simplices, [[(x / denom, y / denom) for x, y in c] for c in F.critical]
    )


def random_diagram(rng: np.random.Generator, max_pts: int = 4, dim: int = 0) -> Diagram:
    """Small diagram on a coarse value grid so ties are frequent."""
    n_total = int(rng.integers(0, max_pts + 1))
    n_ess = int(rng.integers(0, n_total + 1)) if n_total else 0
    finite = []
    for _ in range(n_total - n_ess):
        b = int(rng.integers(0, 9)) / 4.0
        d = b + (1 + int(rng.integers(0, 8))) / 4.0
        finite.append((b, d))
    essential = [int(rng.integers(0, 9)) / 4.0 for _ in range(n_ess)]
    return Diagram.make(finite, essential, dim)


def random_genspec(rng: np.random.Generator, seed: int, n_hi: int = 9, m_hi: int = 7,
                   d_hi: int = 3):
    """Feasible random generation parameters (m capped by the simplex count)."""
    import math

    from matchdist.generators import GenSpec

    n = int(rng.integers(3, n_hi))
    d = int(rng.integers(1, min(d_hi, n - 1) + 1))
    m = min(int(rng.integers(2, m_hi)), math.comb(n, d + 1))
    return GenSpec(n, m, d, seed=seed)


def random_box(rng: np.random.Generator, mu_hi: float = 5.0) -> ParamBox:
    t = SLICE_TYPES[int(rng.integers(0, 4))]
    a, b = sorted(rng.uniform(0.0, 1.0, size=2))
    c, d = sorted(rng.uniform(0.0, mu_hi, size=2))
    return ParamBox(float(a), float(b), float(c), float(d), t)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.Generator(np.random.Philox(20240811))

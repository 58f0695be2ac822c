"""Upper bounds for the bottleneck distance over a parameter box.

Three interchangeable rules, ordered by tightness on subdivision boxes
(linear <= constant <= global):

* local linear: exact per-point variation, evaluated at the four box
  corners against the center, maximized over all critical values; linear
  time in the number of critical values.
* local constant: a closed-form per-type bound on the variation that only
  depends on the box and the coordinate maxima; constant time.
* global: the constant bound relaxed using only the subdivision level.

All three return d_center + (variation bound for F1) + (variation bound
for F2), so a bound is always at least the bottleneck distance at the
center slice.
"""

from __future__ import annotations

import enum

import numpy as np

from .complexes import BiFiltration
from .errors import InvalidLevel
from .slices import ParamBox, SliceType, center, weighted_push_points

_LEVEL_TOL = 1e-12


class BoundKind(enum.Enum):
    GLOBAL = "g"
    LOCAL_CONSTANT = "c"
    LOCAL_LINEAR = "l"

    def __str__(self) -> str:
        return self.value


def _corner_center_pushes(
    xs: np.ndarray, ys: np.ndarray, B: ParamBox
) -> tuple[np.ndarray, np.ndarray]:
    """Per-point pushes at the four corners (4 x n) and at the center (n)."""
    c = weighted_push_points(xs, ys, center(B))
    corners = np.stack([weighted_push_points(xs, ys, L) for L in B.corners()])
    return corners, c


def _point_variations(xs: np.ndarray, ys: np.ndarray, B: ParamBox) -> np.ndarray:
    corners, c = _corner_center_pushes(xs, ys, B)
    return np.abs(corners - c[None, :]).max(axis=0)


def variation_point(px: float, py: float, B: ParamBox) -> float:
    """Exact maximal change of the weighted push of (px, py) over B,
    relative to the center slice.

    The difference has no isolated interior maxima along axis directions,
    so the maximum over the box is attained at a corner.
    """
    xs = np.array([px], dtype=np.float64)
    ys = np.array([py], dtype=np.float64)
    return float(_point_variations(xs, ys, B)[0])


def variation_filtration(F: BiFiltration, B: ParamBox) -> float:
    """Maximal variation over all critical values of all simplices.

    For multi-critical simplices this bounds the variation of the min-push
    from above, which is all the bound rule needs.
    """
    if F.n == 0:
        return 0.0
    return float(_point_variations(F.px, F.py, B).max())


def bound_L(
    F1: BiFiltration,
    F2: BiFiltration,
    B: ParamBox,
    d_center: float,
    *,
    threshold: float | None = None,
) -> float:
    """Local linear bound: v(F1, B) + d_center + v(F2, B).

    With a threshold, the scan starts from the constant bound: if that
    already settles the comparison the scan is skipped, and if a partial
    scan proves the linear bound exceeds the threshold the constant bound
    is returned instead (still a sound upper bound, and on the same side
    of the threshold as the full linear value).
    """
    if threshold is None:
        return d_center + variation_filtration(F1, B) + variation_filtration(F2, B)

    c = bound_C(F1, F2, B, d_center)
    if c <= threshold:
        return c
    v = [0.0, 0.0]
    for i, F in enumerate((F1, F2)):
        if F.n == 0:
            continue
        for start in range(0, len(F.px), 256):
            sl = slice(start, start + 256)
            chunk = _point_variations(F.px[sl], F.py[sl], B)
            v[i] = max(v[i], float(chunk.max()))
            if d_center + v[0] + v[1] > threshold:
                return c
    return d_center + v[0] + v[1]


def _vbar_constant(B: ParamBox, X: float, Y: float) -> float:
    """Closed-form per-type bound on the point variation over B, valid for
    every point inside [0, X] x [0, Y]."""
    lam_c = (B.lam_min + B.lam_max) / 2.0
    if B.stype is SliceType.FLAT_Y:
        return 0.5 * (B.dmu + X * B.dlam)
    if B.stype is SliceType.STEEP_Y:
        return 0.5 * (lam_c * B.dmu + (Y - B.mu_min) * B.dlam)
    if B.stype is SliceType.FLAT_X:
        return 0.5 * (lam_c * B.dmu + (X - B.mu_min) * B.dlam)
    return 0.5 * (B.dmu + Y * B.dlam)  # steep x


def bound_C(F1: BiFiltration, F2: BiFiltration, B: ParamBox, d_center: float) -> float:
    """Local constant bound: the per-type closed form, point-independent."""
    X = max(F1.max_x, F2.max_x)
    Y = max(F1.max_y, F2.max_y)
    vbar = _vbar_constant(B, X, Y)
    return d_center + vbar + vbar


def bound_G(F1: BiFiltration, F2: BiFiltration, B: ParamBox, d_center: float) -> float:
    """Global bound: d_center + 2 * C * 2**-level with C = max{X, Y}.

    Only valid for boxes produced by initial_boxes/subdivide, whose lam
    width is exactly 2**-level and whose mu height is at most C * 2**-level.
    """
    X = max(F1.max_x, F2.max_x)
    Y = max(F1.max_y, F2.max_y)
    C = max(X, Y)
    g = C * 2.0 ** (-B.level)
    if B.dlam != 2.0 ** (-B.level):
        raise InvalidLevel(
            f"lam width {B.dlam} does not match level {B.level}"
        )
    if B.dmu > g * (1.0 + _LEVEL_TOL):
        raise InvalidLevel(
            f"mu height {B.dmu} exceeds C * 2**-level = {g}"
        )
    return d_center + g + g


def box_bound(
    kind: BoundKind,
    F1: BiFiltration,
    F2: BiFiltration,
    B: ParamBox,
    d_center: float,
    *,
    threshold: float | None = None,
) -> float:
    """Dispatch to the configured bound rule."""
    if kind is BoundKind.GLOBAL:
        return bound_G(F1, F2, B, d_center)
    if kind is BoundKind.LOCAL_CONSTANT:
        return bound_C(F1, F2, B, d_center)
    return bound_L(F1, F2, B, d_center, threshold=threshold)

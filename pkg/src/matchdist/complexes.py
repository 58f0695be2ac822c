"""Simplicial complexes with one- or two-parameter filtration values.

A bi-filtration assigns each simplex a non-empty antichain of points in the
plane (a single point in the common 1-critical case); a mono-filtration
assigns a single real. Both are validated against face closure and
monotonicity along faces. Coordinates are plain doubles throughout.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    EmptyCriticalSet,
    MissingFace,
    MissingVertexValue,
    MonotonicityViolation,
    NonFiniteCoordinate,
)

Simplex = tuple[int, ...]
Point = tuple[float, float]


def canonical_simplex(vertices: Iterable[int]) -> Simplex:
    """Sorted vertex tuple; rejects empty sets, duplicates, negative ids."""
    vs = tuple(sorted(int(v) for v in vertices))
    if not vs:
        raise ValueError("simplex has no vertices")
    if any(v < 0 for v in vs):
        raise ValueError(f"negative vertex id in simplex {vs}")
    if len(set(vs)) != len(vs):
        raise ValueError(f"duplicate vertex in simplex {vs}")
    return vs


def facets(simplex: Simplex) -> list[Simplex]:
    """All codimension-1 faces (empty for vertices)."""
    if len(simplex) == 1:
        return []
    return [simplex[:i] + simplex[i + 1 :] for i in range(len(simplex))]


def reduce_antichain(points: Sequence[Point]) -> tuple[Point, ...]:
    """Drop duplicates and dominated points, keeping the minimal antichain.

    A point that dominates another never realizes the minimum push on any
    slice, so the staircase region is unchanged.
    """
    uniq = sorted(set((float(x), float(y)) for x, y in points))
    kept: list[Point] = []
    for x, y in uniq:
        # sorted by x then y: earlier kept points have x <= current x
        if any(ky <= y for _, ky in kept):
            continue
        kept.append((x, y))
    return tuple(kept)


class BiFiltration:
    """Validated bi-filtered complex.

    Immutable after construction; safe to share across workers. Use
    :func:`validate_bifiltration`, :func:`lower_star` or the generators to
    build one. Simplices are stored sorted by (dimension, vertex tuple) so
    all downstream tie-breaking is deterministic.
    """

    def __init__(self, simplices: list[Simplex], critical: list[tuple[Point, ...]]):
        # trusted inputs: validate_bifiltration is the checked entry point
        order = sorted(range(len(simplices)), key=lambda i: (len(simplices[i]), simplices[i]))
        self.simplices: list[Simplex] = [simplices[i] for i in order]
        self.critical: list[tuple[Point, ...]] = [critical[i] for i in order]
        self.index: dict[Simplex, int] = {s: i for i, s in enumerate(self.simplices)}
        self.n = len(self.simplices)

        self.dims = np.array([len(s) - 1 for s in self.simplices], dtype=np.int64)
        self.facet_indices: list[tuple[int, ...]] = [
            tuple(self.index[f] for f in facets(s)) for s in self.simplices
        ]

        vertex_ids = sorted(s[0] for s in self.simplices if len(s) == 1)
        self.vertex_ids: list[int] = vertex_ids
        self.vertex_count = len(vertex_ids)
        vpos = {v: i for i, v in enumerate(vertex_ids)}
        # plain-list mirrors: the persistence loops index these per simplex
        self._dims: list[int] = [len(s) - 1 for s in self.simplices]
        self._vertex_of: list[int] = [-1] * self.n
        self._edge_u: list[int] = [-1] * self.n
        self._edge_v: list[int] = [-1] * self.n
        for i, s in enumerate(self.simplices):
            if len(s) == 1:
                self._vertex_of[i] = vpos[s[0]]
            elif len(s) == 2:
                self._edge_u[i] = vpos[s[0]]
                self._edge_v[i] = vpos[s[1]]

        counts = [len(c) for c in self.critical]
        self.offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=self.offsets[1:])
        flat = [p for c in self.critical for p in c]
        self.px = np.array([p[0] for p in flat], dtype=np.float64)
        self.py = np.array([p[1] for p in flat], dtype=np.float64)
        self.one_critical = bool(all(c == 1 for c in counts))

        self.max_x = float(self.px.max()) if self.n else 0.0
        self.max_y = float(self.py.max()) if self.n else 0.0
        self.c_max = max(self.max_x, self.max_y)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return (
            f"BiFiltration(n={self.n}, vertices={self.vertex_count}, "
            f"X={self.max_x}, Y={self.max_y}, one_critical={self.one_critical})"
        )

    def translated(self, vx: float, vy: float) -> "BiFiltration":
        """New filtration with every critical value shifted by (vx, vy)."""
        critical = [
            tuple((x + vx, y + vy) for x, y in c) for c in self.critical
        ]
        return validate_bifiltration(self.simplices, critical)


class MonoFiltration:
    """One real value per simplex of a shared complex."""

    def __init__(self, complex: BiFiltration, values: np.ndarray):
        self.complex = complex
        self.values = np.asarray(values, dtype=np.float64)
        if self.values.shape != (complex.n,):
            raise ValueError("one value per simplex required")

    def check_monotone(self) -> None:
        """Raise MonotonicityViolation unless faces enter no later than cofaces."""
        vals = self.values
        for i, fs in enumerate(self.complex.facet_indices):
            for j in fs:
                if vals[j] > vals[i]:
                    raise MonotonicityViolation(
                        f"value({self.complex.simplices[j]})={vals[j]} > "
                        f"value({self.complex.simplices[i]})={vals[i]}"
                    )


def mono_filtration(
    simplices: Iterable[Iterable[int]], values: Iterable[float]
) -> MonoFiltration:
    """Build a validated mono-filtration from raw simplices and values."""
    simps = [canonical_simplex(s) for s in simplices]
    vals = [float(v) for v in values]
    F = validate_bifiltration(simps, [[(v, v)] for v in vals])
    # validate_bifiltration re-sorts; map values onto the storage order
    raw = dict(zip(simps, vals))
    return MonoFiltration(F, np.array([raw[s] for s in F.simplices]))


def validate_bifiltration(
    simplices: Iterable[Iterable[int]],
    critical: Iterable[Iterable[Sequence[float]]],
) -> BiFiltration:
    """Check a raw simplex/critical-set list and build a BiFiltration.

    Checks, in order: simplex well-formedness, critical-set sanity
    (non-empty, finite), face closure, and monotonicity of the staircase
    regions along faces. Face closure is an error, never repaired.
    """
    simps = [canonical_simplex(s) for s in simplices]
    crits_raw = [list(c) for c in critical]
    if len(simps) != len(crits_raw):
        raise ValueError("one critical set per simplex required")
    if len(set(simps)) != len(simps):
        seen: set[Simplex] = set()
        for s in simps:
            if s in seen:
                raise ValueError(f"simplex {s} listed more than once")
            seen.add(s)

    crits: list[tuple[Point, ...]] = []
    for s, c in zip(simps, crits_raw):
        if not c:
            raise EmptyCriticalSet(f"simplex {s} has no critical values")
        pts = []
        for p in c:
            x, y = float(p[0]), float(p[1])
            if not (np.isfinite(x) and np.isfinite(y)):
                raise NonFiniteCoordinate(f"simplex {s} has critical value ({x}, {y})")
            pts.append((x, y))
        crits.append(reduce_antichain(pts))

    present = dict(zip(simps, crits))
    for s in simps:
        for f in facets(s):
            if f not in present:
                raise MissingFace(f"face {f} of {s} is missing")

    # staircase containment against immediate facets suffices by transitivity
    for s in simps:
        for f in facets(s):
            cf = present[f]
            for px, py in present[s]:
                if not any(qx <= px and qy <= py for qx, qy in cf):
                    raise MonotonicityViolation(
                        f"face {f} enters after coface {s}: "
                        f"no critical value of {f} is <= ({px}, {py})"
                    )

    return BiFiltration(simps, crits)


def normalize_to_positive_quadrant(F: BiFiltration) -> tuple[BiFiltration, Point]:
    """Translate so the minimal x and y coordinates are both zero.

    Returns the applied shift vector. Idempotent: a second call returns a
    zero shift.
    """
    if F.n == 0:
        return F, (0.0, 0.0)
    vx = -float(F.px.min())
    vy = -float(F.py.min())
    vx = vx if vx != 0.0 else 0.0
    vy = vy if vy != 0.0 else 0.0
    if vx == 0.0 and vy == 0.0:
        return F, (0.0, 0.0)
    return F.translated(vx, vy), (vx, vy)


def normalize_pair(
    F1: BiFiltration, F2: BiFiltration
) -> tuple[BiFiltration, BiFiltration, Point]:
    """Translate both filtrations by one common vector into the quadrant.

    The matching distance is invariant only under a shared shift, so a pair
    must never be normalized one side at a time.
    """
    vx = -min(float(F1.px.min()) if F1.n else 0.0, float(F2.px.min()) if F2.n else 0.0)
    vy = -min(float(F1.py.min()) if F1.n else 0.0, float(F2.py.min()) if F2.n else 0.0)
    vx = vx if vx != 0.0 else 0.0
    vy = vy if vy != 0.0 else 0.0
    if vx == 0.0 and vy == 0.0:
        return F1, F2, (0.0, 0.0)
    return F1.translated(vx, vy), F2.translated(vx, vy), (vx, vy)


def lower_star(
    simplices: Iterable[Iterable[int]],
    vertex_values: Mapping[int, Sequence[float]],
) -> BiFiltration:
    """1-critical bi-filtration with each simplex at the componentwise max
    of its vertex values."""
    simps = [canonical_simplex(s) for s in simplices]
    critical = []
    for s in simps:
        for v in s:
            if v not in vertex_values:
                raise MissingVertexValue(f"vertex {v} of {s} has no value")
        xs = [float(vertex_values[v][0]) for v in s]
        ys = [float(vertex_values[v][1]) for v in s]
        critical.append([(max(xs), max(ys))])
    return validate_bifiltration(simps, critical)

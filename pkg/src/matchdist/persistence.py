"""Persistence diagrams of mono-filtrations.

Dimension 0 uses union-find with the elder rule; arbitrary dimension uses
column reduction of the boundary matrix over the two-element field, with
columns kept as integer bitmasks. Both paths order simplices by
(value, dimension, vertex tuple) ascending, which keeps faces before
cofaces at equal values. Pairs with death equal to birth are dropped: they
cost nothing in any bottleneck matching and bloat diagrams on degenerate
slices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import MonoFiltration


@dataclass(frozen=True)
class Diagram:
    """Multiset of finite (birth, death) points plus essential births."""

    finite: tuple[tuple[float, float], ...]
    essential: tuple[float, ...]
    homology_dimension: int = 0

    @staticmethod
    def make(finite, essential, dim: int = 0) -> "Diagram":
        return Diagram(
            tuple(sorted((float(b), float(d)) for b, d in finite)),
            tuple(sorted(float(b) for b in essential)),
            dim,
        )

    def shifted(self, r: float) -> "Diagram":
        return Diagram.make(
            [(b + r, d + r) for b, d in self.finite],
            [b + r for b in self.essential],
            self.homology_dimension,
        )

    def scaled(self, s: float) -> "Diagram":
        return Diagram.make(
            [(b * s, d * s) for b, d in self.finite],
            [b * s for b in self.essential],
            self.homology_dimension,
        )

    def __len__(self) -> int:
        return len(self.finite) + len(self.essential)


def _simplex_order(M: MonoFiltration) -> np.ndarray:
    # storage index is already (dimension, lexicographic), so it breaks ties
    return np.lexsort((np.arange(M.complex.n), M.values))


def persistence_dim0(M: MonoFiltration) -> Diagram:
    """Dimension-0 diagram via union-find and the elder rule.

    When an edge merges two components the younger one dies: larger minimum
    birth value, ties broken in favour of the smaller creator-vertex id.
    Each connected component of the full complex contributes one essential
    point at its minimal vertex value.
    """
    K = M.complex
    vals = M.values.tolist()
    order = _simplex_order(M).tolist()
    dims, vertex_of = K._dims, K._vertex_of
    edge_u, edge_v = K._edge_u, K._edge_v

    parent = list(range(K.vertex_count))
    birth = [0.0] * K.vertex_count
    creator = [0] * K.vertex_count

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    finite: list[tuple[float, float]] = []
    for idx in order:
        d = dims[idx]
        if d == 0:
            v = vertex_of[idx]
            birth[v] = vals[idx]
            creator[v] = K.vertex_ids[v]
        elif d == 1:
            ra = find(edge_u[idx])
            rb = find(edge_v[idx])
            if ra == rb:
                continue
            # younger component dies
            if (birth[ra], -creator[ra]) > (birth[rb], -creator[rb]):
                young, old = ra, rb
            else:
                young, old = rb, ra
            death = vals[idx]
            if death > birth[young]:
                finite.append((birth[young], death))
            parent[young] = old

    roots = {find(v) for v in range(K.vertex_count)}
    essential = [birth[r] for r in roots]
    return Diagram.make(finite, essential, 0)


def persistence_general(M: MonoFiltration, dim: int) -> Diagram:
    """Diagram in the given homology dimension by boundary-matrix reduction.

    Coefficients are in the two-element field; columns are bitmasks over
    the sorted simplex positions.
    """
    K = M.complex
    vals = M.values
    order = _simplex_order(M)
    pos_of = np.empty(K.n, dtype=np.int64)
    pos_of[order] = np.arange(K.n)

    cols: list[int] = []
    pivot_of_low: dict[int, int] = {}
    paired = [False] * K.n
    finite: list[tuple[float, float]] = []
    essential: list[float] = []

    for j in range(K.n):
        idx = int(order[j])
        col = 0
        for f in K.facet_indices[idx]:
            col ^= 1 << int(pos_of[f])
        while col:
            low = col.bit_length() - 1
            k = pivot_of_low.get(low)
            if k is None:
                break
            col ^= cols[k]
        cols.append(col)
        if col:
            low = col.bit_length() - 1
            pivot_of_low[low] = j
            paired[low] = True
            paired[j] = True
            if K.dims[order[low]] == dim:
                b = float(vals[order[low]])
                d = float(vals[idx])
                if d > b:
                    finite.append((b, d))

    for j in range(K.n):
        if not paired[j] and cols[j] == 0 and K.dims[order[j]] == dim:
            essential.append(float(vals[order[j]]))

    return Diagram.make(finite, essential, dim)


def diagram(M: MonoFiltration, dim: int = 0) -> Diagram:
    """Persistence diagram, using the fast path for dimension 0."""
    if dim == 0:
        return persistence_dim0(M)
    return persistence_general(M, dim)

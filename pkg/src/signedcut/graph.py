"""Signed-graph data model: construction, degrees, and weight transforms.

A :class:`SignedGraph` stores an undirected weighted graph whose weights may
be negative.  Edges live in the strict upper triangle, sorted, with no
duplicates, self-loops, or zero weights, so equality, hashing, and
serialization are deterministic.  All values are immutable and all operations
are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionTooLargeError,
    DuplicateEdgeError,
    IndexOutOfRangeError,
    NonfiniteWeightError,
    SelfLoopError,
    ZeroWeightError,
)

Edge = tuple[int, int, float]

# Largest dimension for which n-by-n dense materializations are offered.
DENSE_MAX_DIM = 2048


class DegreeMode(str, Enum):
    SIGNED_SUM = "signed-sum"
    ABSOLUTE_SUM = "absolute-sum"


@dataclass(frozen=True)
class SignedGraph:
    """Vertex count plus canonical symmetric weighted edge list.

    Construct through :func:`graph_from_edges`, which canonicalizes and
    validates arbitrary edge input.
    """

    n: int
    edges: tuple[Edge, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self.edges:
            empty_i = np.zeros(0, dtype=np.intp)
            return empty_i, empty_i.copy(), np.zeros(0)
        ii, jj, ww = zip(*self.edges)
        return (
            np.asarray(ii, dtype=np.intp),
            np.asarray(jj, dtype=np.intp),
            np.asarray(ww, dtype=np.float64),
        )

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (i, j, w) as read-only-by-convention numpy arrays."""
        return self._arrays

    def dense_adjacency(self) -> np.ndarray:
        """Dense symmetric adjacency matrix (n <= DENSE_MAX_DIM only)."""
        if self.n > DENSE_MAX_DIM:
            raise DimensionTooLargeError(
                f"n={self.n} exceeds dense threshold {DENSE_MAX_DIM}"
            )
        W = np.zeros((self.n, self.n))
        ii, jj, ww = self.edge_arrays()
        W[ii, jj] = ww
        W[jj, ii] = ww
        return W


@dataclass(frozen=True, eq=False)
class DegreeVector:
    """Per-vertex degree values together with the summation mode used."""

    d: np.ndarray
    mode: DegreeMode


def graph_from_edges(n: int, edges: Iterable[Sequence]) -> SignedGraph:
    """Build a canonical :class:`SignedGraph` from arbitrary edge input.

    Indices are canonicalized to (min, max) order and the edge list is
    sorted.  Raises on out-of-range indices, self-loops, duplicate pairs
    (after canonicalization), and zero or nonfinite weights.
    """
    if not isinstance(n, (int, np.integer)) or n <= 0:
        raise IndexOutOfRangeError(f"vertex count must be a positive integer, got {n!r}")
    n = int(n)
    canonical: list[Edge] = []
    seen: set[tuple[int, int]] = set()
    for entry in edges:
        i, j, w = entry
        i, j = int(i), int(j)
        w = float(w)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRangeError(f"edge ({i}, {j}) outside [0, {n})")
        if i == j:
            raise SelfLoopError(f"self-loop at vertex {i}")
        if not math.isfinite(w):
            raise NonfiniteWeightError(f"edge ({i}, {j}) has nonfinite weight {w!r}")
        if w == 0.0:
            raise ZeroWeightError(f"edge ({i}, {j}) has zero weight")
        if i > j:
            i, j = j, i
        if (i, j) in seen:
            raise DuplicateEdgeError(f"duplicate edge ({i}, {j})")
        seen.add((i, j))
        canonical.append((i, j, w))
    canonical.sort(key=lambda e: (e[0], e[1]))
    return SignedGraph(n=n, edges=tuple(canonical))


def degrees(g: SignedGraph, mode: DegreeMode | str = DegreeMode.SIGNED_SUM) -> DegreeVector:
    """Row sums of the adjacency matrix, plain or in absolute value.

    Isolated vertices get 0 in both modes.
    """
    mode = DegreeMode(mode)
    ii, jj, ww = g.edge_arrays()
    vals = np.abs(ww) if mode is DegreeMode.ABSOLUTE_SUM else ww
    d = np.zeros(g.n)
    np.add.at(d, ii, vals)
    np.add.at(d, jj, vals)
    return DegreeVector(d=d, mode=mode)


def negate_weights(g: SignedGraph) -> SignedGraph:
    """Flip the sign of every weight; topology unchanged. An involution."""
    return SignedGraph(n=g.n, edges=tuple((i, j, -w) for i, j, w in g.edges))


def nullify_negative(g: SignedGraph) -> SignedGraph:
    """Remove every negative edge, keeping positive edges unchanged."""
    return SignedGraph(n=g.n, edges=tuple(e for e in g.edges if e[2] > 0))


def scale_weights(g: SignedGraph, c: float) -> SignedGraph:
    """Multiply every weight by a nonzero constant."""
    c = float(c)
    if c == 0.0 or not math.isfinite(c):
        raise ZeroWeightError(f"scale factor must be finite and nonzero, got {c!r}")
    return SignedGraph(n=g.n, edges=tuple((i, j, c * w) for i, j, w in g.edges))


def connected_in_absolute_value(g: SignedGraph) -> bool:
    """True when the graph is connected ignoring weight signs."""
    if g.n <= 1:
        return True
    parent = list(range(g.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    components = g.n
    for i, j, _ in g.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            components -= 1
    return components == 1

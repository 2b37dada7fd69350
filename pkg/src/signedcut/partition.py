"""Fiedler vectors, sign-based bisection, confidence, and cut metrics.

For the standard Laplacian the Fiedler vector is the eigenvector of the
smallest eigenvalue restricted to the complement of the ones vector (the
smallest eigenvalue may be negative).  For the signed Laplacian it is the
smallest-eigenvalue eigenvector, skipping a leading eigenvector only when it
matches the trivial constant vector.  Bisection assigns vertices by
component sign; squared components of the unit-norm vector act as a
per-vertex confidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .eigen import (
    SolverConfig,
    Spectrum,
    TRIVIAL_ONES_CORRELATION,
    dense_spectrum,
    dense_spectrum_deflated,
    estimate_largest_eigenvalue,
    lobpcg_smallest,
)
from .errors import (
    BasisDegenerateError,
    DegenerateVectorError,
    EmptySideError,
    MultiComponentError,
    SolverFailedError,
)
from .graph import SignedGraph, connected_in_absolute_value
from .laplacian import LaplacianKind, laplacian

# Fiedler eigenvalues closer than this fraction of the spectrum spread to
# their nearest neighbor get flagged: the eigenvector is then essentially an
# arbitrary member of a near-degenerate eigenspace and small perturbations
# (noise in the weights, truncated iteration) can rotate it freely.
CLUSTERED_GAP_FRACTION = 0.02


@dataclass(frozen=True, eq=False)
class FiedlerResult:
    """Selected eigenpair plus gap diagnostics for one Laplacian kind."""

    vector: np.ndarray
    eigenvalue: float
    kind: LaplacianKind
    skipped_constant: bool
    gap: float
    clustered_warning: bool


@dataclass(frozen=True, eq=False)
class Partition:
    """Two-way vertex assignment; side 0 is A, side 1 is B."""

    side: np.ndarray
    positive_set_is: str = "A"

    @property
    def n(self) -> int:
        return len(self.side)

    @property
    def set_a(self) -> frozenset[int]:
        return frozenset(int(v) for v in np.flatnonzero(self.side == 0))

    @property
    def set_b(self) -> frozenset[int]:
        return frozenset(int(v) for v in np.flatnonzero(self.side == 1))

    def as_sets(self) -> frozenset[frozenset[int]]:
        """Label-free view, for comparisons up to an A/B swap."""
        return frozenset((self.set_a, self.set_b))


@dataclass(frozen=True)
class CutMetrics:
    """Cut quality numbers for one partition of one signed graph.

    ``cut`` is the signed sum over cross edges; ``cut_plus`` and
    ``cut_minus_cross`` the absolute totals of positive and negative cross
    edges; ``signed_cut`` is 2*cut_plus plus the absolute negative weight
    kept inside each side, which differs from 2*cut_plus - cut_minus_cross
    by the constant total negative weight.
    """

    cut: float
    cut_plus: float
    cut_minus_cross: float
    cut_minus_within_a: float
    cut_minus_within_b: float
    signed_cut: float
    ratio_cut: float
    signed_ratio_cut: float
    total_negative: float


def fiedler(
    g: SignedGraph,
    kind: LaplacianKind | str = LaplacianKind.STANDARD,
    solver: Optional[SolverConfig] = None,
) -> FiedlerResult:
    """Fiedler vector of a connected signed graph for the given kind.

    ``solver=None`` uses the dense oracle; a :class:`SolverConfig` routes
    the solve through the iterative eigensolver (with ones-deflation forced
    for the standard kind).
    """
    kind = LaplacianKind(kind)
    if g.n < 2:
        raise MultiComponentError("need at least two vertices to bisect")
    if not connected_in_absolute_value(g):
        raise MultiComponentError(
            "graph is disconnected in the absolute-value sense; "
            "the Fiedler vector is ambiguous"
        )
    op = laplacian(g, kind)
    if solver is None:
        if kind is LaplacianKind.STANDARD:
            s = dense_spectrum_deflated(op)
            return _select_standard(s, kind)
        s = dense_spectrum(op)
        return _select_signed(s, kind)
    return _fiedler_iterative(op, kind, solver)


def _select_standard(s: Spectrum, kind: LaplacianKind) -> FiedlerResult:
    vector = s.eigenvectors[:, 0]
    eigenvalue = float(s.eigenvalues[0])
    if s.k >= 2:
        gap = float(s.eigenvalues[1] - s.eigenvalues[0])
        spread = s.spread
    else:
        gap, spread = math.inf, 0.0
    return _finish(vector, eigenvalue, kind, False, gap, spread)


def _select_signed(s: Spectrum, kind: LaplacianKind) -> FiedlerResult:
    n = s.eigenvectors.shape[0]
    ones = np.ones(n) / math.sqrt(n)
    corr = abs(float(s.eigenvectors[:, 0] @ ones))
    skipped = corr >= TRIVIAL_ONES_CORRELATION
    idx = 1 if skipped else 0
    if idx >= s.k:
        raise SolverFailedError("spectrum too small after skipping the constant vector")
    retained = [c for c in range(s.k) if not (skipped and c == 0)]
    others = [c for c in retained if c != idx]
    lam = float(s.eigenvalues[idx])
    gap = min(abs(lam - float(s.eigenvalues[c])) for c in others) if others else math.inf
    vals = s.eigenvalues[retained]
    spread = float(vals.max() - vals.min())
    return _finish(s.eigenvectors[:, idx], lam, kind, skipped, gap, spread)


def _fiedler_iterative(op, kind: LaplacianKind, solver: SolverConfig) -> FiedlerResult:
    want = 2 if kind is LaplacianKind.STANDARD else 3
    k = max(solver.k, want)
    cfg = replace(
        solver,
        k=k,
        block_size=max(solver.effective_block_size, k),
        deflate_ones=kind is LaplacianKind.STANDARD,
    )
    try:
        s, _ = lobpcg_smallest(op, cfg)
    except BasisDegenerateError as exc:
        raise SolverFailedError(str(exc)) from exc
    lam_top = estimate_largest_eigenvalue(op, seed=cfg.seed)
    if kind is LaplacianKind.STANDARD:
        if not s.converged[:2].all():
            raise SolverFailedError(
                "iterative solve left the leading eigenpairs unconverged; "
                "raise max_iter or loosen tol"
            )
        vector = s.eigenvectors[:, 0]
        eigenvalue = float(s.eigenvalues[0])
        gap = float(s.eigenvalues[1] - s.eigenvalues[0])
        spread = max(lam_top, float(s.eigenvalues[-1])) - eigenvalue
        return _finish(vector, eigenvalue, kind, False, gap, spread)
    n = op.n
    ones = np.ones(n) / math.sqrt(n)
    corr = abs(float(s.eigenvectors[:, 0] @ ones))
    skipped = corr >= TRIVIAL_ONES_CORRELATION
    idx = 1 if skipped else 0
    if not s.converged[: idx + 2].all():
        raise SolverFailedError(
            "iterative solve left the leading eigenpairs unconverged; "
            "raise max_iter or loosen tol"
        )
    eigenvalue = float(s.eigenvalues[idx])
    gap = abs(float(s.eigenvalues[idx + 1]) - eigenvalue)
    low = float(s.eigenvalues[1]) if skipped else float(s.eigenvalues[0])
    spread = max(lam_top, float(s.eigenvalues[-1])) - low
    return _finish(s.eigenvectors[:, idx], eigenvalue, kind, skipped, gap, spread)


def _finish(
    vector: np.ndarray,
    eigenvalue: float,
    kind: LaplacianKind,
    skipped: bool,
    gap: float,
    spread: float,
) -> FiedlerResult:
    norm = np.linalg.norm(vector)
    vector = vector / norm
    clustered = math.isfinite(gap) and spread > 0 and gap <= CLUSTERED_GAP_FRACTION * spread
    return FiedlerResult(
        vector=vector,
        eigenvalue=eigenvalue,
        kind=kind,
        skipped_constant=skipped,
        gap=gap,
        clustered_warning=clustered,
    )


def bisect(f: FiedlerResult, zero_policy: str = "positive-side") -> Partition:
    """Split vertices by the signs of the Fiedler components.

    The global sign is normalized so the component of largest magnitude is
    positive; exact zeros then follow ``zero_policy`` (``positive-side`` or
    ``negative-side``).
    """
    if zero_policy not in ("positive-side", "negative-side"):
        raise ValueError(f"unknown zero_policy {zero_policy!r}")
    v = np.asarray(f.vector, dtype=np.float64)
    peak = np.argmax(np.abs(v))
    if v[peak] == 0.0:
        raise DegenerateVectorError("zero vector cannot define a bisection")
    if v[peak] < 0:
        v = -v
    if zero_policy == "positive-side":
        on_a = v >= 0.0
    else:
        on_a = v > 0.0
    side = np.where(on_a, 0, 1).astype(np.int8)
    if not (side == 0).any() or not (side == 1).any():
        raise DegenerateVectorError(
            "all components fall on one side; bisection is meaningless"
        )
    return Partition(side=side, positive_set_is="A")


def confidence(f: FiedlerResult) -> np.ndarray:
    """Squared components of the unit-norm Fiedler vector; sums to one."""
    return np.asarray(f.vector, dtype=np.float64) ** 2


def cut_metrics(g: SignedGraph, p: Partition) -> CutMetrics:
    """All cut quality numbers for a two-way partition of a signed graph."""
    if p.n != g.n:
        raise EmptySideError(
            f"partition covers {p.n} vertices, graph has {g.n}"
        )
    side = np.asarray(p.side)
    size_a = int((side == 0).sum())
    size_b = int((side == 1).sum())
    if size_a == 0 or size_b == 0:
        raise EmptySideError("both sides of the partition must be nonempty")
    ii, jj, ww = g.edge_arrays()
    cross = side[ii] != side[jj]
    neg = ww < 0
    cut = float(ww[cross].sum())
    cut_plus = float(ww[cross & ~neg].sum())
    cut_minus_cross = float(-ww[cross & neg].sum())
    within_a = (~cross) & (side[ii] == 0)
    within_b = (~cross) & (side[ii] == 1)
    cut_minus_within_a = float(-ww[within_a & neg].sum())
    cut_minus_within_b = float(-ww[within_b & neg].sum())
    signed_cut = 2.0 * cut_plus + cut_minus_within_a + cut_minus_within_b
    total_negative = float(-ww[neg].sum())
    balance = 1.0 / size_a + 1.0 / size_b
    return CutMetrics(
        cut=cut,
        cut_plus=cut_plus,
        cut_minus_cross=cut_minus_cross,
        cut_minus_within_a=cut_minus_within_a,
        cut_minus_within_b=cut_minus_within_b,
        signed_cut=signed_cut,
        ratio_cut=cut * balance,
        signed_ratio_cut=signed_cut * balance,
        total_negative=total_negative,
    )


def partition_json(f: FiedlerResult, p: Partition, conf: np.ndarray | None = None) -> dict:
    """JSON-ready dict in the documented partition schema."""
    doc = {
        "n": p.n,
        "side": [int(x) for x in p.side],
        "fiedler": [float(x) for x in f.vector],
        "eigenvalue": float(f.eigenvalue),
        "kind": f.kind.value,
        "gap": float(f.gap) if math.isfinite(f.gap) else None,
        "clustered_warning": bool(f.clustered_warning),
    }
    if conf is not None:
        doc["confidence"] = [float(x) for x in conf]
    return doc

"""Standard and signed Laplacian operators exposed through matvec products.

The standard Laplacian uses the diagonal of plain row sums and can be
indefinite when weights are negative; the signed Laplacian uses absolute
row sums and is always positive semi-definite.  Operators keep the edge
list and degree vector rather than an assembled matrix; applying one costs
O(n + m) per vector.  A dense materialization is available for
n <= DENSE_MAX_DIM to feed the dense eigensolver oracle.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable

import numpy as np

from .errors import DimensionMismatchError, DimensionTooLargeError
from .graph import DENSE_MAX_DIM, DegreeMode, SignedGraph, degrees


class LaplacianKind(str, Enum):
    STANDARD = "standard"
    SIGNED = "signed"


class SymmetricOperator:
    """Symmetric linear operator of dimension n with block matvec access."""

    def __init__(
        self,
        n: int,
        matmat: Callable[[np.ndarray], np.ndarray],
        dense_builder: Callable[[], np.ndarray] | None = None,
    ):
        self.n = int(n)
        self._matmat = matmat
        self._dense_builder = dense_builder
        self._dense_cache: np.ndarray | None = None

    def matmat(self, X: np.ndarray) -> np.ndarray:
        """Apply the operator to a vector (n,) or block of vectors (n, k)."""
        X = np.asarray(X, dtype=np.float64)
        single = X.ndim == 1
        if single:
            X = X[:, None]
        if X.shape[0] != self.n:
            raise DimensionMismatchError(
                f"operand has leading dimension {X.shape[0]}, operator has {self.n}"
            )
        Y = self._matmat(X)
        return Y[:, 0] if single else Y

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matmat(x)

    def dense(self) -> np.ndarray:
        """Dense n-by-n materialization; only offered for n <= DENSE_MAX_DIM."""
        if self.n > DENSE_MAX_DIM:
            raise DimensionTooLargeError(
                f"n={self.n} exceeds dense threshold {DENSE_MAX_DIM}"
            )
        if self._dense_cache is None:
            if self._dense_builder is not None:
                self._dense_cache = self._dense_builder()
            else:
                self._dense_cache = self._matmat(np.eye(self.n))
        return self._dense_cache


def laplacian(g: SignedGraph, kind: LaplacianKind | str = LaplacianKind.STANDARD) -> SymmetricOperator:
    """Laplacian operator of the requested kind for a signed graph."""
    kind = LaplacianKind(kind)
    mode = DegreeMode.ABSOLUTE_SUM if kind is LaplacianKind.SIGNED else DegreeMode.SIGNED_SUM
    d = degrees(g, mode).d
    ii, jj, ww = g.edge_arrays()

    def matmat(X: np.ndarray) -> np.ndarray:
        Y = d[:, None] * X
        if len(ww):
            np.subtract.at(Y, ii, ww[:, None] * X[jj])
            np.subtract.at(Y, jj, ww[:, None] * X[ii])
        return Y

    def dense_builder() -> np.ndarray:
        L = np.diag(d.copy())
        L[ii, jj] -= ww
        L[jj, ii] -= ww
        return L

    return SymmetricOperator(g.n, matmat, dense_builder)


def quadratic_form(op: SymmetricOperator, x: np.ndarray) -> float:
    """Return <x, op(x)>."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != op.n:
        raise DimensionMismatchError(
            f"expected a length-{op.n} vector, got shape {x.shape}"
        )
    return float(x @ op.matmat(x))

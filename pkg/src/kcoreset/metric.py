"""Ground sets, candidate solutions and the k-clustering cost.

A :class:`Dataset` is either a Euclidean point cloud (``n x d`` array) or a
finite metric given by a dense distance matrix or a distance oracle. Every
cost in this package is the mean of ``d(x, Q) ** p`` over the ground set;
weighted sets carry their own normalisation in the weights.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

EUCLIDEAN = "euclidean"
METRIC = "metric"

# Eager triangle-inequality validation is O(n^3); above this size only the
# cheap axioms are checked.
TRIANGLE_CHECK_LIMIT = 1024


class ValidationError(ValueError):
    """Raised when inputs violate a documented precondition."""


class MetricAxiomError(ValidationError):
    """A distance matrix that is not a metric."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def validate_metric(D: np.ndarray, rtol: float = 1e-9, check_triangle: Optional[bool] = None) -> None:
    """Check the metric axioms on a dense matrix, raising with a witness."""
    D = np.asarray(D, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValidationError(f"distance matrix must be square, got shape {D.shape}")
    n = D.shape[0]
    if n < 1:
        raise ValidationError("distance matrix is empty")
    if not np.all(np.isfinite(D)):
        raise ValidationError("distance matrix contains non-finite entries")
    neg = np.argwhere(D < 0)
    if len(neg):
        i, j = (int(v) for v in neg[0])
        raise MetricAxiomError(f"negative distance at ({i},{j}): {D[i, j]!r}", (i, j))
    diag = np.flatnonzero(np.diag(D) != 0)
    if len(diag):
        i = int(diag[0])
        raise MetricAxiomError(f"non-zero self distance at ({i},{i}): {D[i, i]!r}", (i, i))
    scale = np.maximum(np.abs(D), np.abs(D.T))
    asym = np.argwhere(np.abs(D - D.T) > rtol * scale)
    if len(asym):
        i, j = (int(v) for v in asym[0])
        raise MetricAxiomError(
            f"asymmetric distances at ({i},{j}): {D[i, j]!r} != {D[j, i]!r}", (i, j)
        )
    if check_triangle is None:
        check_triangle = n <= TRIANGLE_CHECK_LIMIT
    if not check_triangle:
        return
    for l in range(n):
        via = D[:, l, None] + D[None, l, :]
        bad = np.argwhere(D > via * (1 + rtol))
        if len(bad):
            i, j = (int(v) for v in bad[0])
            raise MetricAxiomError(
                f"triangle inequality violated at ({i},{j}) via {l}: "
                f"{D[i, j]!r} > {D[i, l]!r} + {D[l, j]!r}",
                (i, j, l),
            )


@dataclass(frozen=True, eq=False)
class Dataset:
    """The ground set X.

    Use :meth:`from_points`, :meth:`from_matrix` or :meth:`from_oracle`
    rather than the raw constructor.
    """

    mode: str
    n: int
    points: Optional[np.ndarray] = None
    distances: Optional[np.ndarray] = None
    oracle: Optional[Callable[[int, int], float]] = None

    @classmethod
    def from_points(cls, points) -> "Dataset":
        X = np.array(points, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise ValidationError(f"points must be a non-empty n x d array, got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise ValidationError("points contain non-finite coordinates")
        X.setflags(write=False)
        return cls(mode=EUCLIDEAN, n=X.shape[0], points=X)

    @classmethod
    def from_matrix(cls, distances, validate: bool = True) -> "Dataset":
        D = np.array(distances, dtype=float)
        if validate:
            validate_metric(D)
        elif D.ndim != 2 or D.shape[0] != D.shape[1] or D.shape[0] < 1:
            raise ValidationError(f"distance matrix must be square, got shape {D.shape}")
        D.setflags(write=False)
        return cls(mode=METRIC, n=D.shape[0], distances=D)

    @classmethod
    def from_oracle(cls, oracle: Callable[[int, int], float], n: int) -> "Dataset":
        """Metric dataset backed by a callable; the metric axioms are NOT checked."""
        if n < 1:
            raise ValidationError("n must be positive")
        return cls(mode=METRIC, n=int(n), oracle=oracle)

    @property
    def d(self) -> Optional[int]:
        return None if self.points is None else self.points.shape[1]

    @property
    def is_euclidean(self) -> bool:
        return self.mode == EUCLIDEAN

    def subset(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.intp)
        if self.is_euclidean:
            return Dataset.from_points(self.points[idx])
        return Dataset.from_matrix(self.pairwise()[np.ix_(idx, idx)], validate=False)

    def pairwise(self) -> np.ndarray:
        """Full n x n distance matrix (materialised for Euclidean data)."""
        if self.distances is not None:
            return self.distances
        if self.is_euclidean:
            X = self.points
            sq = ((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2)
            return np.sqrt(sq)
        idx = np.arange(self.n)
        return self._oracle_block(idx, idx)

    def center_coords(self, indices) -> np.ndarray:
        """Coordinates of data points, used to turn index solutions into queries."""
        if not self.is_euclidean:
            raise ValidationError("coordinates only exist in euclidean mode")
        return self.points[np.asarray(indices, dtype=np.intp)]

    def _oracle_block(self, rows, cols) -> np.ndarray:
        out = np.empty((len(rows), len(cols)))
        for a, i in enumerate(rows):
            for b, j in enumerate(cols):
                out[a, b] = float(self.oracle(int(i), int(j)))
        return out

    def center_distances(self, query: "QueryLike", rows=None) -> np.ndarray:
        """Distances from the selected rows (default: all points) to each center.

        Returns an array of shape ``(len(rows), |Q|)``.
        """
        Q = as_query(self, query)
        if rows is None:
            rows = slice(None)
            nrows = self.n
        else:
            rows = np.asarray(rows, dtype=np.intp)
            nrows = len(rows)
        c = Q.centers
        out = np.empty((nrows, len(c)))
        if self.is_euclidean:
            X = self.points[rows]
            for j in range(len(c)):
                diff = X - c[j]
                out[:, j] = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        elif self.distances is not None:
            out[:] = self.distances[rows][:, c]
        else:
            r = np.arange(self.n) if isinstance(rows, slice) else rows
            out[:] = self._oracle_block(r, c)
        return out


@dataclass(frozen=True, eq=False)
class Query:
    """A candidate solution: coordinates (Euclidean) or point indices (metric)."""

    centers: np.ndarray

    def __len__(self):
        return len(self.centers)

    def tolist(self):
        return self.centers.tolist()


QueryLike = Union[Query, Sequence, np.ndarray]


def as_query(dataset: Dataset, Q: QueryLike, k: Optional[int] = None) -> Query:
    """Validate ``Q`` against ``dataset`` and wrap it as a :class:`Query`.

    In Euclidean mode a flat sequence is read as one center when its length
    equals ``d``; for 1-D data it is read as a list of scalar centers.
    """
    c = Q.centers if isinstance(Q, Query) else np.array(Q)
    if c.size < 1:
        raise ValidationError("a query needs at least one center")
    if dataset.is_euclidean:
        c = c.astype(float, copy=False)
        if c.ndim == 1:
            c = c.reshape(-1, 1) if dataset.d == 1 else c.reshape(1, -1)
        if c.ndim != 2 or c.shape[1] != dataset.d:
            raise ValidationError(f"query dimension mismatch: expected d={dataset.d}, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValidationError("query contains non-finite coordinates")
    else:
        if c.ndim != 1 or not np.issubdtype(c.dtype, np.integer):
            raise ValidationError("metric queries are sequences of point indices")
        if c.min() < 0 or c.max() >= dataset.n:
            raise ValidationError(f"query index out of range for n={dataset.n}")
        if len(np.unique(c)) != len(c):
            raise ValidationError("metric query indices must be distinct")
        c = c.astype(np.intp, copy=False)
    if k is not None and len(c) > k:
        raise ValidationError(f"query has {len(c)} centers, more than k={k}")
    if isinstance(Q, Query) and c is Q.centers:
        return Q
    c = np.array(c)
    c.setflags(write=False)
    return Query(c)


def query_from_indices(dataset: Dataset, indices) -> Query:
    """Query whose centers are the given data points."""
    idx = np.asarray(indices, dtype=np.intp)
    if dataset.is_euclidean:
        return as_query(dataset, dataset.center_coords(idx))
    return as_query(dataset, idx)


@dataclass(frozen=True, eq=False)
class Partition:
    owner: np.ndarray
    cluster_sizes: np.ndarray

    def members(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.owner == i)


def powp(d, p: float):
    """``d ** p`` with the convention ``0 ** p == 0``."""
    d = np.asarray(d, dtype=float)
    if float(p).is_integer():
        return d ** int(p)
    return np.power(d, p)


def _mean(values: np.ndarray, compensated: bool) -> float:
    if compensated:
        return math.fsum(values.tolist()) / len(values)
    return float(np.sum(values) / len(values))


def query_distances(dataset: Dataset, Q: QueryLike, rows=None) -> np.ndarray:
    """``d(x, Q)`` for every selected point."""
    return dataset.center_distances(Q, rows).min(axis=1)


def point_to_query_distance(dataset: Dataset, x: int, Q: QueryLike) -> float:
    if not 0 <= int(x) < dataset.n:
        raise IndexError(f"point index {x} out of range for n={dataset.n}")
    return float(query_distances(dataset, Q, [int(x)])[0])


def _check_power(p: float) -> float:
    p = float(p)
    if not math.isfinite(p) or p <= 0:
        raise ValidationError(f"power must be finite and positive, got {p}")
    return p


def cost(dataset: Dataset, Q: QueryLike, p: float, compensated: bool = False) -> float:
    """Mean of ``d(x, Q) ** p`` over all points."""
    p = _check_power(p)
    return _mean(powp(query_distances(dataset, Q), p), compensated)


def subset_cost(dataset: Dataset, subset, center, p: float, compensated: bool = False) -> float:
    """Cost of a single center on a subset, normalised by the subset size.

    ``center`` is a point index or, in Euclidean mode, also a coordinate tuple.
    """
    p = _check_power(p)
    idx = np.asarray(subset, dtype=np.intp).ravel()
    if len(idx) == 0:
        raise ValidationError("subset must be non-empty")
    if np.ndim(center) == 0 and isinstance(center, (int, np.integer)):
        Q = query_from_indices(dataset, [int(center)])
    else:
        Q = as_query(dataset, np.asarray(center, dtype=float).reshape(1, -1))
    return _mean(powp(query_distances(dataset, Q, idx), p), compensated)


def weighted_cost(coreset, Q: QueryLike, p: float, dataset: Optional[Dataset] = None,
                  compensated: bool = False) -> float:
    """``sum_i w_i d(x_i, Q) ** p`` over the entries of a weighted set.

    Euclidean coresets carry their coordinates. Metric coresets store point
    indices only, so the originating ``dataset`` is required.
    """
    p = _check_power(p)
    if coreset.points is not None:
        ds = Dataset.from_points(coreset.points)
        dist = query_distances(ds, Q)
    else:
        if dataset is None:
            raise ValidationError("metric coresets need the originating dataset")
        dist = query_distances(dataset, Q, coreset.indices)
    terms = np.asarray(coreset.weights) * powp(dist, p)
    if compensated:
        return math.fsum(terms.tolist())
    return float(np.sum(terms))


def assign(dataset: Dataset, B: QueryLike) -> Partition:
    """Nearest-center partition; ties go to the lowest center position."""
    Bq = as_query(dataset, B)
    owner = np.argmin(dataset.center_distances(Bq), axis=1).astype(np.intp)
    sizes = np.bincount(owner, minlength=len(Bq))
    owner.setflags(write=False)
    return Partition(owner=owner, cluster_sizes=sizes)

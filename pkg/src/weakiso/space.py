"""Finite metric spaces: representation, validation and distance sets."""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import (
    AsymmetricMatrix,
    CollapseWithoutFlag,
    DuplicateLabel,
    NegativeDistance,
    NonzeroDiagonal,
    ShapeMismatch,
    TriangleViolation,
    ZeroOffDiagonal,
)
from .monotone import MonotoneMap


class FiniteMetricSpace:
    """Labelled point set with a symmetric distance matrix.

    Instances are immutable; build them through :func:`validate`.  The
    ``metric`` flag is False only for the semi-metric spaces produced by
    :func:`apply_rescaling` with ``allow_collapse=True``.
    """

    __slots__ = ("labels", "dist", "metric")

    def __init__(self, labels: Sequence[str], dist, metric: bool = True):
        d = np.array(dist, dtype=float)
        d.setflags(write=False)
        object.__setattr__(self, "labels", tuple(str(s) for s in labels))
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "metric", bool(metric))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteMetricSpace is immutable")

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    __hash__ = None

    def __repr__(self) -> str:
        return f"FiniteMetricSpace(n={self.n}, labels={list(self.labels)!r})"

    def relabel(self, perm: Sequence[int], labels: Optional[Sequence[str]] = None) -> "FiniteMetricSpace":
        """Space whose point ``i`` is the old point ``perm[i]``."""
        p = np.asarray(perm, dtype=int)
        new_labels = [self.labels[i] for i in p] if labels is None else labels
        return FiniteMetricSpace(new_labels, self.dist[np.ix_(p, p)], self.metric)

    def off_diagonal(self) -> np.ndarray:
        iu = np.triu_indices(self.n, 1)
        return self.dist[iu]

    def diameter(self) -> float:
        return float(self.dist.max()) if self.n > 1 else 0.0


def default_labels(n: int) -> list:
    return [f"x{i + 1}" for i in range(n)]


def check_triangle(d: np.ndarray) -> Optional[Tuple[int, int, int]]:
    """First triple (i, j, k) with ``d[i,k] > d[i,j] + d[j,k]``, or None."""
    n = d.shape[0]
    for j in range(n):
        # via[i, k] = d[i, j] + d[j, k]
        bad = d > d[:, j][:, None] + d[j, :][None, :]
        if bad.any():
            i, k = map(int, np.argwhere(bad)[0])
            return i, j, k
    return None


def validate(dist, labels: Optional[Sequence[str]] = None) -> FiniteMetricSpace:
    """Check the metric axioms and return an immutable space.

    Raises the first applicable :class:`~weakiso.errors.InvalidSpace`
    subclass; triangle violations carry the witness triple.
    """
    try:
        d = np.array(dist, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ShapeMismatch(f"distance matrix is not a rectangular numeric array: {exc}") from None
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
        raise ShapeMismatch(f"distance matrix must be square and non-empty, got shape {d.shape}")
    n = d.shape[0]
    if labels is None:
        labels = default_labels(n)
    labels = [str(s) for s in labels]
    if len(labels) != n:
        raise ShapeMismatch(f"{len(labels)} labels for a {n}x{n} matrix")
    seen = set()
    for s in labels:
        if s in seen:
            raise DuplicateLabel(s)
        seen.add(s)

    bad = ~np.isfinite(d) | (d < 0)
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        if i == j:
            raise NonzeroDiagonal(i)
        raise NegativeDistance(i, j)
    for i in range(n):
        if d[i, i] != 0:
            raise NonzeroDiagonal(i)
    asym = d != d.T
    if asym.any():
        i, j = map(int, np.argwhere(asym)[0])
        raise AsymmetricMatrix(i, j)
    zero = (d == 0) & ~np.eye(n, dtype=bool)
    if zero.any():
        i, j = map(int, np.argwhere(zero)[0])
        raise ZeroOffDiagonal(i, j)
    tri = check_triangle(d)
    if tri is not None:
        i, j, k = tri
        raise TriangleViolation(i, j, k, float(d[i, k]), float(d[i, j] + d[j, k]))
    return FiniteMetricSpace(labels, d)


def distance_classes(X: FiniteMetricSpace, tol: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    """Distinct off-diagonal distances and the class index of every entry.

    With ``tol > 0`` sorted distances closer than ``tol`` to their predecessor
    are chained into one class, represented by its smallest member.  Returns
    ``(values, index)`` where ``index[i, j]`` is the 1-based class of
    ``dist[i, j]`` (0 on the diagonal).
    """
    n = X.n
    index = np.zeros((n, n), dtype=int)
    if n < 2:
        return np.array([], dtype=float), index
    flat = np.unique(X.off_diagonal())
    reps = []
    cls_of = np.empty(len(flat), dtype=int)
    for t, v in enumerate(flat):
        if not reps or v - flat[t - 1] > tol:
            reps.append(v)
        cls_of[t] = len(reps)
    pos = np.searchsorted(flat, X.dist)
    pos = np.minimum(pos, len(flat) - 1)
    index = np.where(np.eye(n, dtype=bool), 0, cls_of[pos])
    return np.array(reps, dtype=float), index


def distance_set(X: FiniteMetricSpace, tol: float = 0.0) -> Tuple[float, ...]:
    """Sorted distinct pairwise distances between different points."""
    values, _ = distance_classes(X, tol)
    return tuple(float(v) for v in values)


def apply_rescaling(X: FiniteMetricSpace, psi: MonotoneMap, allow_collapse: bool = False) -> FiniteMetricSpace:
    """Replace every off-diagonal distance ``d`` by ``psi(d)``.

    A strictly increasing ``psi`` need not preserve the triangle inequality,
    so the result is validated.  Non-strict maps (distinct distances sent to
    one value) require ``allow_collapse`` and yield an unvalidated
    semi-metric space.
    """
    values = distance_set(X)
    strict = psi.is_strict_on(values)
    if not strict and not allow_collapse:
        raise CollapseWithoutFlag("rescaling is not strictly increasing on the distance set")
    d = np.asarray(psi(X.dist), dtype=float)
    np.fill_diagonal(d, 0.0)
    if strict:
        return validate(d, X.labels)
    return FiniteMetricSpace(X.labels, d, metric=False)

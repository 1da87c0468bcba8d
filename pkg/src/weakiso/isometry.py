"""Canonical representatives and the weak-isometry decision procedures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional, Tuple

import numpy as np

from .config import settings
from .errors import CapExceeded
from .monotone import MonotoneMap, extend_monotone
from .space import FiniteMetricSpace, distance_classes, validate


@dataclass(frozen=True)
class CanonicalSpace:
    space: FiniteMetricSpace
    psi: MonotoneMap
    # source distance classes, ascending; psi sends values[i] to top - k + 1 + i
    values: Tuple[float, ...] = ()

    @property
    def degenerate(self) -> bool:
        """Singleton input: nothing to rescale, returned unchanged."""
        return self.space.n == 1


@dataclass(frozen=True)
class Decision:
    """Outcome of a decision procedure; truthy iff ``value``.

    ``bijection[i]`` is the index in the second space of the image of point
    ``i`` of the first.
    """

    value: bool
    bijection: Optional[Tuple[int, ...]] = None
    psi: Optional[MonotoneMap] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.value


def canonical_top(n: int) -> int:
    return 2 * comb(n, 2)


def canonicalize(X: FiniteMetricSpace, tol: float = 0.0) -> CanonicalSpace:
    """Send the i-th smallest distance to ``2*C(n,2) - k + i``.

    The image is dense, natural-valued and ends at ``2*C(n,2)``; since twice
    the smallest value exceeds the largest, the triangle inequality always
    survives.
    """
    n = X.n
    if n == 1:
        return CanonicalSpace(X, MonotoneMap.identity(), ())
    values, index = distance_classes(X, tol)
    k = len(values)
    base = canonical_top(n) - k
    d = np.where(index > 0, base + index, 0).astype(float)
    psi = extend_monotone([(float(v), float(base + i + 1)) for i, v in enumerate(values)])
    # cannot fail: 2 * (base + 1) > base + k
    space = validate(d, X.labels)
    return CanonicalSpace(space, psi, tuple(float(v) for v in values))


def _row_profiles(d: np.ndarray) -> list:
    return [tuple(sorted(row)) for row in d]


def find_isometry(dx: np.ndarray, dy: np.ndarray) -> Optional[Tuple[int, ...]]:
    """Lexicographically first bijection ``phi`` with ``dy[phi] == dx``, or None."""
    n = dx.shape[0]
    if dy.shape[0] != n:
        return None
    px, py = _row_profiles(dx), _row_profiles(dy)
    if sorted(px) != sorted(py):
        return None
    candidates = [[j for j in range(n) if py[j] == px[i]] for i in range(n)]
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            if all(dx[i, a] == dy[j, image[a]] for a in range(i)):
                image[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        image[i] = -1
        return False

    return tuple(image) if extend(0) else None


def is_isometric(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Decision:
    if X.n != Y.n:
        return Decision(False, reason="size mismatch")
    phi = find_isometry(X.dist, Y.dist)
    if phi is None:
        return Decision(False, reason="no distance-preserving bijection")
    return Decision(True, bijection=phi)


def is_weakly_isometric(X: FiniteMetricSpace, Y: FiniteMetricSpace, tol: float = 0.0) -> Decision:
    """Decide weak isometry by testing the canonicalizations for isometry.

    On success the witness rescaling sends the i-th smallest distance of X
    to the i-th smallest distance of Y.
    """
    if X.n != Y.n:
        return Decision(False, reason="size mismatch")
    if X.n == 1:
        return Decision(True, bijection=(0,), psi=MonotoneMap.identity())
    cx, cy = canonicalize(X, tol), canonicalize(Y, tol)
    found = is_isometric(cx.space, cy.space)
    if not found:
        return Decision(False, reason="canonicalizations are not isometric")
    # equal class counts, so class i of X goes to class i of Y
    psi = extend_monotone(list(zip(cx.values, cy.values)))
    return Decision(True, bijection=found.bijection, psi=psi)


def brute_force_weak_isometry(X: FiniteMetricSpace, Y: FiniteMetricSpace, cap: Optional[int] = None) -> bool:
    """Try every bijection against the two order-preservation implications.

    Independent oracle for :func:`is_weakly_isometric`: equal distances must
    map to equal distances and strictly smaller ones to strictly smaller ones,
    over all ordered pairs of point pairs.
    """
    cap = settings().brute_cap if cap is None else cap
    if X.n != Y.n:
        return False
    n = X.n
    if n > cap:
        raise CapExceeded("bijection enumeration", n, cap)
    dx = X.dist.ravel()
    eq_x = dx[:, None] == dx[None, :]
    lt_x = dx[:, None] < dx[None, :]
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        dy = Y.dist[np.ix_(p, p)].ravel()
        eq_y = dy[:, None] == dy[None, :]
        if (eq_x & ~eq_y).any():
            continue
        lt_y = dy[:, None] < dy[None, :]
        if (lt_x & ~lt_y).any():
            continue
        return True
    return False

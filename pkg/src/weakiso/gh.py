"""Exact Gromov-Hausdorff distance and the rescaling-infimum dissimilarity.

Both searches run over correspondences.  Every correspondence contains one
of the form ``graph(f) ∪ {(g(y), y) : y not in f(X)}`` for a map
``f: X -> Y`` and a choice ``g`` of preimages for the uncovered points, and
both objectives can only grow when pairs are added, so it suffices to
branch over ``f`` and then ``g``.  Partial objectives are admissible lower
bounds; a branch is cut as soon as it cannot beat the incumbent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple

import numpy as np

from .config import settings
from .errors import CapExceeded, IndexOutOfRange, NotSurjective
from .isotonic import envelope_error
from .monotone import MonotoneMap, extend_monotone
from .space import FiniteMetricSpace, distance_classes


@dataclass(frozen=True)
class Correspondence:
    pairs: FrozenSet[Tuple[int, int]]
    n_x: int
    n_y: int

    def __post_init__(self):
        pairs = frozenset((int(i), int(j)) for i, j in self.pairs)
        if not pairs:
            raise NotSurjective("empty correspondence")
        for i, j in pairs:
            if not (0 <= i < self.n_x and 0 <= j < self.n_y):
                raise IndexOutOfRange(f"pair ({i}, {j}) outside {self.n_x} x {self.n_y}")
        if {i for i, _ in pairs} != set(range(self.n_x)) or {j for _, j in pairs} != set(range(self.n_y)):
            raise NotSurjective("both projections must be onto")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, pairs: Iterable[Tuple[int, int]], X: FiniteMetricSpace, Y: FiniteMetricSpace) -> "Correspondence":
        return cls(frozenset(pairs), X.n, Y.n)

    def sorted_pairs(self) -> list:
        return sorted(self.pairs)


def _check_pairs(pairs, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> np.ndarray:
    p = np.array(sorted(pairs), dtype=int).reshape(-1, 2)
    if len(p) and ((p[:, 0] < 0).any() or (p[:, 0] >= X.n).any() or (p[:, 1] < 0).any() or (p[:, 1] >= Y.n).any()):
        raise IndexOutOfRange("correspondence index outside the spaces")
    return p


def distortion(C, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """Largest ``|d_X(x, x') - d_Y(y, y')|`` over pairs of pairs of ``C``."""
    pairs = C.pairs if isinstance(C, Correspondence) else C
    p = _check_pairs(pairs, X, Y)
    dx = X.dist[np.ix_(p[:, 0], p[:, 0])]
    dy = Y.dist[np.ix_(p[:, 1], p[:, 1])]
    return float(np.abs(dx - dy).max())


@dataclass(frozen=True)
class GHResult:
    value: float
    correspondence: Correspondence
    distortion: float


@dataclass(frozen=True)
class RescaledGHResult:
    """Outcome of ``inf_psi d_GH((X, psi∘d_X), (Y, d_Y))``.

    ``values`` pairs every distance of X with its optimal image; the
    infimum over strictly increasing maps equals this non-decreasing optimum
    but may be unattained (then ``attained`` is False).
    """

    value: float
    correspondence: Correspondence
    values: Tuple[Tuple[float, float], ...]

    @property
    def attained(self) -> bool:
        imgs = [0.0] + [v for _, v in self.values]
        return all(b > a for a, b in zip(imgs, imgs[1:]))

    def psi(self) -> MonotoneMap:
        return extend_monotone(self.values) if self.values else MonotoneMap.identity()


class _Search:
    """Depth-first branch and bound shared by both objectives."""

    def __init__(self, X: FiniteMetricSpace, Y: FiniteMetricSpace):
        self.X, self.Y = X, Y
        self.best = math.inf
        self.best_pairs: Optional[list] = None

    # subclasses: start() -> state, add(state, pairs, x, y) -> (state, cost)

    def run(self):
        self.best, self.best_pairs = math.inf, None
        self._assign_f(0, [], self.start(), 0.0)
        return self.best, self.best_pairs

    def _assign_f(self, x: int, pairs: list, state, cost: float):
        nx, ny = self.X.n, self.Y.n
        if x == nx:
            covered = {y for _, y in pairs}
            self._assign_g([y for y in range(ny) if y not in covered], 0, pairs, state, cost)
            return
        options = []
        for y in range(ny):
            new_state, c = self.add(state, pairs, x, y)
            if c < self.best:
                options.append((c, y, new_state))
        options.sort(key=lambda t: (t[0], t[1]))
        for c, y, new_state in options:
            if c >= self.best:
                break
            self._assign_f(x + 1, pairs + [(x, y)], new_state, c)

    def _assign_g(self, todo: list, t: int, pairs: list, state, cost: float):
        if t == len(todo):
            if cost < self.best:
                self.best, self.best_pairs = cost, list(pairs)
            return
        y = todo[t]
        options = []
        for x in range(self.X.n):
            new_state, c = self.add(state, pairs, x, y)
            if c < self.best:
                options.append((c, x, new_state))
        options.sort(key=lambda t_: (t_[0], t_[1]))
        for c, x, new_state in options:
            if c >= self.best:
                break
            self._assign_g(todo, t + 1, pairs + [(x, y)], new_state, c)


class _DistortionSearch(_Search):
    def start(self):
        return None

    def add(self, state, pairs, x, y):
        if not pairs:
            return state, 0.0
        xs = np.fromiter((a for a, _ in pairs), int, len(pairs))
        ys = np.fromiter((b for _, b in pairs), int, len(pairs))
        inc = float(np.abs(self.X.dist[x, xs] - self.Y.dist[y, ys]).max())
        cur = state if state is not None else 0.0
        new = max(cur, inc)
        return new, new


class _RescaledSearch(_Search):
    """Objective: optimal L-inf isotonic error of the induced grouped instance."""

    def __init__(self, X, Y):
        super().__init__(X, Y)
        self.keys, self.key_index = distance_classes(X)
        self.k = len(self.keys)

    def start(self):
        hi = np.full(self.k + 1, -np.inf)
        lo = np.full(self.k + 1, np.inf)
        return hi, lo

    def add(self, state, pairs, x, y):
        hi, lo = state[0].copy(), state[1].copy()
        xs = np.fromiter((a for a, _ in pairs), int, len(pairs))
        ys = np.fromiter((b for _, b in pairs), int, len(pairs))
        xs = np.append(xs, x)
        ys = np.append(ys, y)
        keys = self.key_index[x, xs]
        targets = self.Y.dist[y, ys]
        np.maximum.at(hi, keys, targets)
        np.minimum.at(lo, keys, targets)
        err = envelope_error(hi[1:], lo[1:], max(hi[0], 0.0))
        return (hi, lo), max(err, 0.0)

    def solution(self, pairs) -> Tuple[Tuple[float, float], ...]:
        state = self.start()
        acc = []
        for x, y in pairs:
            state, _ = self.add(state, acc, x, y)
            acc.append((x, y))
        hi, lo = state
        err = envelope_error(hi[1:], lo[1:], max(hi[0], 0.0))
        lower = np.maximum.accumulate(hi[1:]) - err
        upper = np.minimum.accumulate(lo[1:][::-1])[::-1] + err
        vals = np.maximum((lower + upper) / 2.0, 0.0)
        return tuple((float(a), float(v)) for a, v in zip(self.keys, vals))


def _guard(X: FiniteMetricSpace, Y: FiniteMetricSpace, cap: Optional[int]):
    cap = settings().gh_cap if cap is None else cap
    for S in (X, Y):
        if S.n > cap:
            raise CapExceeded("exact GH points per side", S.n, cap)


def gh_distance(X: FiniteMetricSpace, Y: FiniteMetricSpace, cap: Optional[int] = None) -> GHResult:
    """Exact Gromov-Hausdorff distance (half the least distortion)."""
    _guard(X, Y, cap)
    if X.n == 1 or Y.n == 1:
        pairs = [(i, j) for i in range(X.n) for j in range(Y.n)]
        dis = distortion(pairs, X, Y)
        return GHResult(dis / 2.0, Correspondence.of(pairs, X, Y), dis)
    dis, pairs = _DistortionSearch(X, Y).run()
    return GHResult(dis / 2.0, Correspondence.of(pairs, X, Y), dis)


def min_rescaled_gh(X: FiniteMetricSpace, Y: FiniteMetricSpace, cap: Optional[int] = None) -> RescaledGHResult:
    """``inf`` over increasing ``psi`` with ``psi(0) = 0`` of ``d_GH((X, psi∘d_X), Y)``.

    For a fixed correspondence the inner infimum is an L-inf isotonic
    regression of the matched ``d_Y`` values on the ``d_X`` values, with the
    zero distance pinned.
    """
    _guard(X, Y, cap)
    search = _RescaledSearch(X, Y)
    err, pairs = search.run()
    return RescaledGHResult(err / 2.0, Correspondence.of(pairs, X, Y), search.solution(pairs))


def dhat(X: FiniteMetricSpace, Y: FiniteMetricSpace, cap: Optional[int] = None) -> float:
    """Sum of the two one-sided rescaled GH infima.

    Symmetric, zero exactly on weakly isometric pairs, but not a
    pseudo-distance: the triangle inequality can fail.
    """
    return min_rescaled_gh(X, Y, cap).value + min_rescaled_gh(Y, X, cap).value

"""Piecewise-linear non-decreasing maps of the half line."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

from .errors import DecreasingValues, InvalidInput, UnsortedTable

Table = Union[Mapping[float, float], Iterable[Tuple[float, float]]]


@dataclass(frozen=True)
class MonotoneMap:
    """Continuous piecewise-linear map with ``f(0) = 0``.

    ``breakpoints`` starts at ``(0, 0)``; between breakpoints the map is
    linear and past the last one it continues with ``tail_slope``.
    """

    breakpoints: Tuple[Tuple[float, float], ...]
    tail_slope: float = 1.0

    def __post_init__(self):
        bp = tuple((float(x), float(y)) for x, y in self.breakpoints)
        if not bp or bp[0] != (0.0, 0.0):
            raise InvalidInput("breakpoints must start at (0, 0)")
        xs = [x for x, _ in bp]
        ys = [y for _, y in bp]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise UnsortedTable("breakpoint x-coordinates must be strictly ascending")
        if any(b < a for a, b in zip(ys, ys[1:])):
            raise DecreasingValues("breakpoint y-coordinates must be non-decreasing")
        if not self.tail_slope >= 0:
            raise InvalidInput("tail slope must be non-negative")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "tail_slope", float(self.tail_slope))

    @classmethod
    def identity(cls) -> "MonotoneMap":
        return cls(((0.0, 0.0), (1.0, 1.0)), 1.0)

    @property
    def xs(self) -> np.ndarray:
        return np.array([x for x, _ in self.breakpoints])

    @property
    def ys(self) -> np.ndarray:
        return np.array([y for _, y in self.breakpoints])

    @property
    def strict(self) -> bool:
        ys = [y for _, y in self.breakpoints]
        return all(b > a for a, b in zip(ys, ys[1:])) and self.tail_slope > 0

    def __call__(self, x):
        xs, ys = self.xs, self.ys
        arr = np.asarray(x, dtype=float)
        out = np.interp(arr, xs, ys)
        tail = arr > xs[-1]
        out = np.where(tail, ys[-1] + self.tail_slope * (arr - xs[-1]), out)
        # keep breakpoint values bit-exact
        idx = np.searchsorted(xs, arr)
        hit = (idx < len(xs)) & (xs[np.minimum(idx, len(xs) - 1)] == arr)
        out = np.where(hit, ys[np.minimum(idx, len(xs) - 1)], out)
        if np.ndim(x) == 0:
            return float(out)
        return out

    def is_strict_on(self, values: Iterable[float]) -> bool:
        """True when the map is injective on ``values`` (and on 0 versus them)."""
        vals = sorted(set(float(v) for v in values) | {0.0})
        images = [self(v) for v in vals]
        return all(b > a for a, b in zip(images, images[1:]))

    def inverse(self, y):
        """Generalised inverse ``inf {x >= 0 : f(x) >= y}``.

        Equals the ordinary inverse when the map is strict.  Values beyond
        the range of a flat tail map to ``+inf``.
        """
        xs, ys = self.xs, self.ys
        arr = np.atleast_1d(np.asarray(y, dtype=float)).ravel()
        out = np.empty_like(arr)
        for n, v in enumerate(arr):
            if v <= 0:
                out[n] = 0.0
            elif v > ys[-1]:
                out[n] = xs[-1] + (v - ys[-1]) / self.tail_slope if self.tail_slope > 0 else np.inf
            else:
                i = int(np.searchsorted(ys, v, side="left"))
                if ys[i] == v:
                    out[n] = xs[i]
                else:
                    x0, x1, y0, y1 = xs[i - 1], xs[i], ys[i - 1], ys[i]
                    out[n] = x0 + (v - y0) * (x1 - x0) / (y1 - y0)
        if np.ndim(y) == 0:
            return float(out[0])
        return out.reshape(np.shape(y))

    def compose(self, other: "MonotoneMap", at: Sequence[float]) -> "MonotoneMap":
        """``self ∘ other`` restricted to ``at`` and re-extended piecewise-linearly."""
        keys = sorted(set(float(a) for a in at if a > 0))
        return extend_monotone([(a, self(other(a))) for a in keys])

    def table(self) -> list:
        return [(x, y) for x, y in self.breakpoints[1:]]


def _as_pairs(table: Table) -> list:
    if isinstance(table, Mapping):
        return [(float(k), float(v)) for k, v in table.items()]
    return [(float(k), float(v)) for k, v in table]


def extend_monotone(table: Table) -> MonotoneMap:
    """Extend a finite non-decreasing table ``x_i -> y_i`` to the half line.

    On ``[0, x_1]`` the map is the line through the origin and ``(x_1, y_1)``,
    between keys it interpolates linearly, and past ``x_k`` it continues with
    unit slope.  The restriction to the keys reproduces the table exactly.

    >>> f = extend_monotone({3: 4, 4: 5, 5: 6})
    >>> f(3.5), f(7.0)
    (4.5, 8.0)
    """
    pairs = _as_pairs(table)
    if not pairs:
        raise InvalidInput("table is empty")
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    if any(x <= 0 for x in xs):
        raise InvalidInput("table keys must be positive")
    if any(y < 0 for y in ys):
        raise InvalidInput("table values must be non-negative")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise UnsortedTable("table keys must be strictly ascending")
    if any(b < a for a, b in zip(ys, ys[1:])):
        raise DecreasingValues("table values must be non-decreasing")
    return MonotoneMap(((0.0, 0.0),) + tuple(pairs), 1.0)

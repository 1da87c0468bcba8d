"""Random finite metric spaces, metric-preserving rescalings and relabelings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .errors import InvalidInput, InvalidSpace
from .monotone import MonotoneMap
from .space import FiniteMetricSpace, apply_rescaling, check_triangle, distance_set, validate

KINDS = ("uniform", "integer", "perturbed")


@dataclass(frozen=True)
class Generated:
    space: FiniteMetricSpace
    kind: str
    seed: Optional[int]
    repaired: bool = False
    attempts: int = 1


def _symmetric(upper: np.ndarray, n: int) -> np.ndarray:
    d = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    d[iu] = upper
    return d + d.T


def _draw(n: int, kind: str, rng: np.random.Generator, low: int) -> np.ndarray:
    m = n * (n - 1) // 2
    if kind == "uniform":
        # any matrix with entries in [1, 2] satisfies the triangle inequality
        return _symmetric(np.round(rng.uniform(1.0, 2.0, m), 6), n)
    if kind == "integer":
        return _symmetric(rng.integers(low, 2 * low + 1, m).astype(float), n)
    if kind == "perturbed":
        pts = rng.uniform(0.0, 10.0, size=(n, 2))
        base = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        noise = _symmetric(rng.normal(0.0, 0.25, m), n)
        return np.round(np.maximum(base + noise, 0.05), 6) * (1 - np.eye(n))
    raise InvalidInput(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")


def random_space(n: int, kind: str = "uniform", seed=None, repair: bool = False,
                 low: int = 3, max_attempts: int = 1000) -> Generated:
    """Draw a random ``n``-point metric space.

    ``uniform`` and ``integer`` draws are metric by construction.
    ``perturbed`` draws (noisy planar distances) are resampled until they
    satisfy the triangle inequality, or with ``repair`` replaced by their
    shortest-path completion.
    """
    if n < 1:
        raise InvalidInput("n must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    seed_value = None if isinstance(seed, np.random.Generator) else seed
    labels = [f"p{i}" for i in range(n)]
    for attempt in range(1, max_attempts + 1):
        d = _draw(n, kind, rng, low)
        if check_triangle(d) is None:
            return Generated(validate(d, labels), kind, seed_value, False, attempt)
        if repair:
            fixed = shortest_path(d, method="FW", directed=False)
            return Generated(validate(fixed, labels), kind, seed_value, True, attempt)
    raise InvalidSpace(f"no metric sample after {max_attempts} attempts; try repair=True")


def random_concave_rescaling(values, rng: np.random.Generator) -> MonotoneMap:
    """Strictly increasing concave PL map with knots at ``values``.

    Concavity with ``psi(0) = 0`` makes the map subadditive, so it keeps
    the triangle inequality.
    """
    xs = sorted({float(v) for v in values if v > 0})
    if not xs:
        return MonotoneMap.identity()
    slope = rng.uniform(1.0, 3.0)
    pts, prev_x, prev_y = [(0.0, 0.0)], 0.0, 0.0
    for x in xs:
        prev_y = prev_y + slope * (x - prev_x)
        pts.append((x, prev_y))
        prev_x = x
        slope *= rng.uniform(0.3, 1.0)
    return MonotoneMap(tuple(pts), slope)


def random_weak_copy(X: FiniteMetricSpace, rng: np.random.Generator, attempts: int = 20) -> FiniteMetricSpace:
    """A random rescaling of ``X`` followed by a random relabeling."""
    Y = None
    for _ in range(attempts):
        psi = random_concave_rescaling(distance_set(X), rng)
        try:
            Y = apply_rescaling(X, psi)
            break
        except InvalidSpace:
            # rounding on a degenerate triangle; doubling is exact
            continue
    if Y is None:
        Y = validate(2.0 * X.dist, X.labels)
    return random_relabeling(Y, rng)


def random_relabeling(X: FiniteMetricSpace, rng: np.random.Generator) -> FiniteMetricSpace:
    perm = [int(i) for i in rng.permutation(X.n)]
    return X.relabel(perm)

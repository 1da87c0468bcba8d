"""Persistence diagrams: bottleneck/interleaving distance, rescaling, and the
rescaling-infimum dissimilarity between persistence modules.

Interleaving distance between pointwise finite-dimensional modules equals
the bottleneck distance of their diagrams, so every module computation here
runs on diagrams.

Rescaling search
----------------
Precomposing a module with ``R_psi`` pulls each bar ``[b, d)`` back to
``[psi^-1(b), psi^-1(d))``.  Over continuous unbounded increasing maps the
only freedom is where the distinct finite endpoints ``v_1 < ... < v_k`` of
the rescaled diagram land: any ``0 <= t_1 <= ... <= t_k`` (``t = 0`` for
``v = 0``) is a limit of admissible choices, and the bottleneck distance is
continuous in ``t``.

For a fixed partial matching and a trial value ``e`` the conditions on
``t`` are difference constraints:

* matched endpoint vs target ``c``:  ``c - e <= t <= c + e``;
* unmatched bar ``[b, d)``:          ``t_d - t_b <= 2e``;
* order and sign:                    ``t_i <= t_{i+1}``, ``t >= 0``.

They are feasible iff the constraint graph has no negative cycle.  Every
cycle passes through the origin node at most once, so the least feasible
``e`` is ``(c - c') / m`` for target endpoints ``c, c'`` (or 0) and an
integer ``1 <= m <= 2 + 2 * #bars``, or half the length of an unmatched
target bar.  Binary search over that finite candidate set with an exact
feasibility test over matchings gives the optimum exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .config import settings
from .errors import CapExceeded, InfiniteMismatch, InvalidInput, NotInvertibleOnEndpoints
from .gh import dhat as _dhat
from .monotone import MonotoneMap
from .space import FiniteMetricSpace
from .topology import Barcode, persistence

Point = Tuple[float, float]


@dataclass(frozen=True)
class Diagram:
    points: Tuple[Point, ...] = ()

    def __post_init__(self):
        pts = tuple(sorted((float(b), float(d)) for b, d in self.points))
        for b, d in pts:
            if not b < d:
                raise InvalidInput(f"diagram point ({b}, {d}) needs birth < death")
            if b < 0 or math.isinf(b):
                raise InvalidInput(f"diagram point ({b}, {d}) needs a finite non-negative birth")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_barcode(cls, barcode: Barcode, k: int) -> "Diagram":
        return cls(tuple(barcode.in_dim(k)))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def finite(self) -> List[Point]:
        return [p for p in self.points if not math.isinf(p[1])]

    @property
    def infinite(self) -> List[Point]:
        return [p for p in self.points if math.isinf(p[1])]

    def endpoints(self) -> List[float]:
        """Distinct finite endpoints, ascending."""
        vals = {b for b, _ in self.points} | {d for _, d in self.points if not math.isinf(d)}
        return sorted(vals)


def _perfect_matching(allowed: np.ndarray) -> bool:
    """True when the square boolean biadjacency matrix has a perfect matching."""
    match = maximum_bipartite_matching(csr_matrix(allowed.astype(np.int8)), perm_type="column")
    return bool(np.all(match >= 0))


def _linf(p: Point, q: Point) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _finite_bottleneck(A: Sequence[Point], B: Sequence[Point]) -> float:
    na, nb = len(A), len(B)
    if na == 0 and nb == 0:
        return 0.0
    a = np.array(A, dtype=float).reshape(na, 2)
    b = np.array(B, dtype=float).reshape(nb, 2)
    half_a = (a[:, 1] - a[:, 0]) / 2.0
    half_b = (b[:, 1] - b[:, 0]) / 2.0
    cost = np.abs(a[:, None, :] - b[None, :, :]).max(axis=2) if na and nb else np.zeros((na, nb))
    candidates = sorted({0.0, *half_a.tolist(), *half_b.tolist(), *cost.ravel().tolist()})

    def feasible(e: float) -> bool:
        # rows: A_i then diagonal slots for B_j; columns: B_j then diagonal slots for A_i
        allowed = np.zeros((na + nb, na + nb), dtype=bool)
        allowed[:na, :nb] = cost <= e
        allowed[:na, nb:] = np.diag(half_a <= e)
        allowed[na:, :nb] = np.diag(half_b <= e)
        allowed[na:, nb:] = True
        return _perfect_matching(allowed)

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def bottleneck_distance(A: Diagram, B: Diagram) -> float:
    """Exact bottleneck distance, points may also be matched to the diagonal.

    Infinite bars match only infinite bars (cost: birth difference); a
    different number of them gives ``inf`` with an :class:`InfiniteMismatch`
    warning.
    """
    ia, ib = sorted(b for b, _ in A.infinite), sorted(b for b, _ in B.infinite)
    if len(ia) != len(ib):
        warnings.warn(InfiniteMismatch(f"{len(ia)} vs {len(ib)} infinite bars"))
        return math.inf
    # sorted order is optimal for matching points on a line under max-cost
    inf_cost = max((abs(a - b) for a, b in zip(ia, ib)), default=0.0)
    return max(inf_cost, _finite_bottleneck(A.finite, B.finite))


def interleaving_distance(A: Diagram, B: Diagram) -> float:
    return bottleneck_distance(A, B)


def reindex_diagram(A: Diagram, images: Union[Mapping[float, float], MonotoneMap]) -> Diagram:
    """Move each finite endpoint ``v`` to ``images[v]``; collapsed bars vanish.

    ``images`` must be non-decreasing on the endpoints and fix 0.
    """
    if isinstance(images, MonotoneMap):
        f = images
    else:
        table = {float(k): float(v) for k, v in images.items()}
        f = table.__getitem__
    ends = A.endpoints()
    moved = [f(v) for v in ends]
    if any(b < a for a, b in zip(moved, moved[1:])) or any(t < 0 for t in moved):
        raise InvalidInput("endpoint images must be non-negative and non-decreasing")
    if 0.0 in ends and moved[0] != 0.0:
        raise InvalidInput("endpoint 0 must stay at 0")
    pts = []
    for b, d in A.points:
        nb = f(b)
        nd = d if math.isinf(d) else f(d)
        if nb < nd:
            pts.append((nb, nd))
    return Diagram(tuple(pts))


@dataclass(frozen=True)
class RescaledDiagram:
    """A diagram with new positions for its sorted finite endpoints."""

    source: Diagram
    endpoint_images: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        imgs = tuple(sorted((float(v), float(t)) for v, t in self.endpoint_images))
        if [v for v, _ in imgs] != self.source.endpoints():
            raise InvalidInput("endpoint images must cover exactly the finite endpoints")
        object.__setattr__(self, "endpoint_images", imgs)

    def diagram(self) -> Diagram:
        return reindex_diagram(self.source, dict(self.endpoint_images))


def rescale_diagram(A: Diagram, psi: MonotoneMap, allow_collapse: bool = False) -> Diagram:
    """Diagram of the module precomposed with ``R_psi``.

    For strict ``psi`` each bar ``[b, d)`` becomes ``[psi^-1(b), psi^-1(d))``.
    A non-strict map is only accepted with ``allow_collapse``; it is then read
    as the limiting endpoint map itself (the limit of ``psi_n^-1`` for strict
    ``psi_n``), and bars it collapses are dropped.
    """
    if psi.strict:
        return reindex_diagram(A, {v: psi.inverse(v) for v in A.endpoints()})
    if not allow_collapse:
        raise NotInvertibleOnEndpoints("rescaling is not strictly increasing")
    return reindex_diagram(A, psi)


@dataclass(frozen=True)
class RescalingResult:
    """Optimal value and endpoint images for :func:`min_rescaled_interleaving`."""

    value: float
    images: Tuple[Tuple[float, float], ...] = ()
    matching: Tuple[Tuple[int, int], ...] = field(default=(), compare=False)

    def image_map(self) -> Dict[float, float]:
        return dict(self.images)

    def rescaled(self, B: Diagram) -> RescaledDiagram:
        return RescaledDiagram(B, self.images)


class _Feasibility:
    """Decide whether some endpoint placement reaches bottleneck ``<= e``."""

    def __init__(self, A: Diagram, B: Diagram, tol: float):
        self.A = list(A.points)
        self.B = sorted(B.points, key=lambda p: (-(p[1] - p[0]), p))
        self.values = B.endpoints()
        self.var = {v: i + 1 for i, v in enumerate(self.values)}
        self.k = len(self.values)
        self.tol = tol
        # node 0 is the origin; edge (u, v, w) means x_v - x_u <= w
        static = []
        for i in range(1, self.k):
            static.append((i + 1, i, 0.0))
        for i in range(1, self.k + 1):
            static.append((i, 0, 0.0))
        if self.values and self.values[0] == 0.0:
            static.append((0, 1, 0.0))
        self.static = static
        self.half_a = [(d - b) / 2.0 for b, d in self.A]

    def _solve(self, edges) -> Optional[List[float]]:
        n = self.k + 1
        x = [0.0] * n
        for it in range(n + 1):
            changed = False
            for u, v, w in edges:
                if x[u] + w < x[v] - self.tol:
                    x[v] = x[u] + w
                    changed = True
            if not changed:
                return x
        return None

    def _edges_for(self, e: float, bi: int, ai: Optional[int]) -> list:
        b, d = self.B[bi]
        vb = self.var[b]
        if ai is None:
            return [(vb, self.var[d], 2 * e)]
        p, q = self.A[ai]
        out = [(0, vb, p + e), (vb, 0, -p + e)]
        if not math.isinf(d):
            vd = self.var[d]
            out += [(0, vd, q + e), (vd, 0, -q + e)]
        return out

    def run(self, e: float):
        na, nb = len(self.A), len(self.B)
        must = [math.isinf(q) or self.half_a[i] > e + self.tol for i, (_, q) in enumerate(self.A)]
        used = [False] * na
        chosen: List[Optional[int]] = [None] * nb

        def dfs(j: int, edges: list, open_must: int):
            if open_must > nb - j:
                return None
            if j == nb:
                return self._solve(edges)
            b, d = self.B[j]
            options = [i for i in range(na) if not used[i] and math.isinf(self.A[i][1]) == math.isinf(d)]
            if not math.isinf(d):
                options.append(None)
            for i in options:
                new_edges = edges + self._edges_for(e, j, i)
                if self._solve(new_edges) is None:
                    continue
                if i is not None:
                    used[i] = True
                chosen[j] = i
                sol = dfs(j + 1, new_edges, open_must - (1 if i is not None and must[i] else 0))
                if i is not None:
                    used[i] = False
                if sol is not None:
                    return sol
            chosen[j] = None
            return None

        sol = dfs(0, list(self.static), sum(must))
        if sol is None:
            return None
        images = tuple((v, max(sol[self.var[v]] - sol[0], 0.0)) for v in self.values)
        matching = tuple((j, -1 if i is None else i) for j, i in enumerate(chosen))
        return images, matching


def _candidates(A: Diagram, B: Diagram) -> List[float]:
    ends = sorted(set(A.endpoints()) | {0.0})
    m_max = 2 + 2 * len(B.finite)
    out = {0.0}
    for i, hi in enumerate(ends):
        for lo in ends[:i]:
            for m in range(1, m_max + 1):
                out.add((hi - lo) / m)
    return sorted(out)


def min_rescaled_interleaving(A: Diagram, B: Diagram, cap: Optional[int] = None,
                              tol: Optional[float] = None) -> RescalingResult:
    """``inf`` over increasing ``psi`` of ``d_I(A, B ∘ R_psi)``, computed exactly.

    Returns the optimum together with optimal endpoint images for ``B``
    (possibly collapsing bars, when the infimum is not attained).
    """
    cfg = settings()
    cap = cfg.diagram_cap if cap is None else cap
    tol = cfg.exact_tol if tol is None else tol
    for D in (A, B):
        if len(D) > cap:
            raise CapExceeded("diagram bars", len(D), cap)
    if len(A.infinite) != len(B.infinite):
        warnings.warn(InfiniteMismatch(f"{len(A.infinite)} vs {len(B.infinite)} infinite bars"))
        return RescalingResult(math.inf)
    scale = max([1.0] + A.endpoints() + B.endpoints())
    search = _Feasibility(A, B, tol * scale)
    cands = _candidates(A, B)
    lo, hi = 0, len(cands) - 1
    best = search.run(cands[hi])
    if best is None:  # cannot happen: the largest candidate dominates every bar
        raise AssertionError("largest candidate infeasible")
    while lo < hi:
        mid = (lo + hi) // 2
        got = search.run(cands[mid])
        if got is not None:
            hi, best = mid, got
        else:
            lo = mid + 1
    if lo != len(cands) - 1 or best is None:
        best = search.run(cands[lo])
    images, matching = best
    return RescalingResult(cands[lo], images, matching)


def dtilde(A: Diagram, B: Diagram, cap: Optional[int] = None) -> float:
    """Sum of the two one-sided rescaling infima; symmetric by construction."""
    return min_rescaled_interleaving(A, B, cap).value + min_rescaled_interleaving(B, A, cap).value


@dataclass(frozen=True)
class StabilityReport:
    dhat: float
    dtilde: Tuple[float, ...]
    holds: Tuple[bool, ...]
    binding_dim: int
    tol: float

    @property
    def ok(self) -> bool:
        return all(self.holds)


def stability_check(X: FiniteMetricSpace, Y: FiniteMetricSpace, max_k: int = 1, field_char: int = 2,
                    tol: Optional[float] = None) -> StabilityReport:
    """Evaluate ``d~(H_k X, H_k Y) <= 2 d^(X, Y)`` for ``k = 0..max_k``.

    ``binding_dim`` is the dimension with the least slack.
    """
    tol = settings().stability_tol if tol is None else tol
    dh = _dhat(X, Y)
    bx, by = persistence(X, max_k, field_char), persistence(Y, max_k, field_char)
    values = []
    for k in range(max_k + 1):
        values.append(dtilde(Diagram.from_barcode(bx, k), Diagram.from_barcode(by, k)))
    holds = tuple(v <= 2 * dh + tol for v in values)
    binding = max(range(max_k + 1), key=lambda k: (values[k] - 2 * dh, -k))
    return StabilityReport(dh, tuple(values), holds, binding, tol)

"""Vietoris-Rips flag filtrations, persistent homology over a prime field, and
per-scale complex comparison."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import settings
from .errors import CapExceeded, InvalidInput, NonStrictOnValues, NotPrime
from .monotone import MonotoneMap
from .space import FiniteMetricSpace

Simplex = Tuple[int, ...]

BAR_CONVENTION = "half-open [birth, death); simplex present at eps iff all edges <= eps"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(math.isqrt(p)) + 1))


def _check_prime(p: int):
    if not is_prime(int(p)):
        raise NotPrime(f"field characteristic {p} is not prime")


def _cliques(adj: np.ndarray, max_dim: int) -> List[Simplex]:
    """Cliques of a graph up to ``max_dim + 1`` vertices, by dimension then lexicographically."""
    n = adj.shape[0]
    layer: List[Simplex] = [(v,) for v in range(n)]
    out = list(layer)
    for _ in range(max_dim):
        nxt = []
        for s in layer:
            for v in range(s[-1] + 1, n):
                if all(adj[u, v] for u in s):
                    nxt.append(s + (v,))
        if not nxt:
            break
        out.extend(nxt)
        layer = nxt
    return out


def vr_complex(X: FiniteMetricSpace, eps: float, max_dim: int = 2) -> List[Simplex]:
    """Simplices of the Rips complex at scale ``eps`` (all edges ``<= eps``)."""
    if max_dim < 0:
        raise InvalidInput("max_dim must be non-negative")
    adj = X.dist <= eps
    return _cliques(adj, max_dim)


@dataclass(frozen=True)
class FlagFiltration:
    """Flag filtration given by pairwise edge values.

    A simplex appears at the largest value among its edges (0 for vertices).
    """

    n: int
    edge_values: np.ndarray
    max_dim: int = 2

    def __post_init__(self):
        e = np.array(self.edge_values, dtype=float)
        e.setflags(write=False)
        object.__setattr__(self, "edge_values", e)

    @property
    def critical_values(self) -> Tuple[float, ...]:
        iu = np.triu_indices(self.n, 1)
        return tuple([0.0] + sorted(set(float(v) for v in self.edge_values[iu]) - {0.0}))

    def value(self, s: Simplex) -> float:
        if len(s) == 1:
            return 0.0
        return float(max(self.edge_values[a, b] for a, b in itertools.combinations(s, 2)))

    def simplices(self, cap: Optional[int] = None) -> List[Tuple[float, Simplex]]:
        """``(value, simplex)`` sorted by value, dimension, then vertices."""
        cap = settings().simplex_cap if cap is None else cap
        total = sum(comb(self.n, d + 1) for d in range(self.max_dim + 1))
        if total > cap:
            raise CapExceeded("filtration simplices", total, cap)
        full = np.ones((self.n, self.n), dtype=bool)
        out = [(self.value(s), s) for s in _cliques(full, self.max_dim)]
        out.sort(key=lambda t: (t[0], len(t[1]), t[1]))
        return out

    def complex_at(self, eps: float) -> List[Simplex]:
        return sorted(_cliques(self.edge_values <= eps, self.max_dim), key=lambda s: (len(s), s))


def flag_filtration(X: FiniteMetricSpace, max_dim: int = 2) -> FlagFiltration:
    return FlagFiltration(X.n, X.dist, max_dim)


def rescale_filtration(F: FlagFiltration, psi: MonotoneMap, pullback: bool = False) -> FlagFiltration:
    """Filtration of ``psi ∘ d``, or with ``pullback`` the reindexing ``F ∘ R_psi``.

    ``F ∘ R_psi`` holds at scale ``a`` what ``F`` holds at ``psi(a)``, so its
    appearance values are ``psi^{-1}`` of the original ones.
    """
    values = [v for v in F.critical_values if v > 0]
    if not psi.is_strict_on(values):
        raise NonStrictOnValues("rescaling must be strictly increasing on the edge values")
    mapped = psi.inverse(F.edge_values) if pullback else psi(F.edge_values)
    mapped = np.array(mapped, dtype=float)
    np.fill_diagonal(mapped, 0.0)
    return FlagFiltration(F.n, mapped, F.max_dim)


@dataclass(frozen=True)
class Barcode:
    """Multiset of ``(dim, birth, death)`` with ``death`` possibly ``inf``."""

    bars: Tuple[Tuple[int, float, float], ...]
    field_char: int = 2

    def __post_init__(self):
        bars = tuple(sorted((int(k), float(b), float(d)) for k, b, d in self.bars))
        for k, b, d in bars:
            if not b < d:
                raise InvalidInput(f"bar ({k}, {b}, {d}) has birth >= death")
        object.__setattr__(self, "bars", bars)

    def in_dim(self, k: int) -> List[Tuple[float, float]]:
        return [(b, d) for kk, b, d in self.bars if kk == k]

    def betti_at(self, eps: float, k: int) -> int:
        return sum(1 for b, d in self.in_dim(k) if b <= eps < d)

    def records(self) -> List[str]:
        return [f"{k} {fmt_number(b)} {fmt_number(d)}" for k, b, d in self.bars]

    def mapped(self, psi: MonotoneMap) -> "Barcode":
        """Push every endpoint through ``psi`` (``inf`` stays ``inf``)."""
        out = []
        for k, b, d in self.bars:
            out.append((k, psi(b), d if math.isinf(d) else psi(d)))
        return Barcode(tuple(out), self.field_char)


def fmt_number(v: float) -> str:
    if math.isinf(v):
        return "inf"
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def _boundary(s: Simplex, index: Dict[Simplex, int], p: int) -> Dict[int, int]:
    col = {}
    if len(s) == 1:
        return col
    for i in range(len(s)):
        face = s[:i] + s[i + 1:]
        col[index[face]] = (-1) ** i % p
    return col


def reduce_boundary(simplices: Sequence[Simplex], p: int) -> Tuple[Dict[int, int], set]:
    """Column reduction over GF(p) in filtration order, with clearing.

    Returns ``pairs`` (birth index -> death index) and the set of indices whose
    column reduced to zero (positive simplices).
    """
    index = {s: i for i, s in enumerate(simplices)}
    dims = sorted({len(s) - 1 for s in simplices}, reverse=True)
    pivot_of: Dict[int, int] = {}
    pairs: Dict[int, int] = {}
    cleared = set()
    positive = set()
    for dim in dims:
        cols = [i for i, s in enumerate(simplices) if len(s) - 1 == dim]
        for j in cols:
            if j in cleared:
                positive.add(j)
                continue
            col = _boundary(simplices[j], index, p)
            while col:
                low = max(col)
                if low not in pivot_of:
                    break
                other = pivot_of[low][1]
                factor = col[low] * pow(other[low], p - 2, p) % p
                for r, c in other.items():
                    v = (col.get(r, 0) - factor * c) % p
                    if v:
                        col[r] = v
                    else:
                        col.pop(r, None)
            if col:
                low = max(col)
                pivot_of[low] = (j, col)
                pairs[low] = j
                cleared.add(low)
            else:
                positive.add(j)
    return pairs, positive


def persistence_of(F: FlagFiltration, max_hom_dim: int = 1, field_char: int = 2) -> Barcode:
    if max_hom_dim < 0:
        raise InvalidInput("max_hom_dim must be non-negative")
    _check_prime(field_char)
    G = FlagFiltration(F.n, F.edge_values, max_hom_dim + 1)
    entries = G.simplices()
    simplices = [s for _, s in entries]
    values = [v for v, _ in entries]
    pairs, positive = reduce_boundary(simplices, field_char)
    bars = []
    for b, d in pairs.items():
        k = len(simplices[b]) - 1
        if k <= max_hom_dim and values[b] < values[d]:
            bars.append((k, values[b], values[d]))
    for b in positive:
        k = len(simplices[b]) - 1
        if b not in pairs and k <= max_hom_dim:
            bars.append((k, values[b], math.inf))
    return Barcode(tuple(bars), field_char)


def persistence(X: FiniteMetricSpace, max_hom_dim: int = 1, field_char: int = 2) -> Barcode:
    """Barcode of the Rips filtration of ``X`` in dimensions ``0..max_hom_dim``."""
    return persistence_of(flag_filtration(X, max_hom_dim + 1), max_hom_dim, field_char)


def rank_mod_p(rows: int, columns: List[Dict[int, int]], p: int) -> int:
    """Rank of a sparse matrix over GF(p) by Gaussian elimination."""
    pivots: Dict[int, Dict[int, int]] = {}
    rank = 0
    for col in columns:
        col = dict(col)
        while col:
            low = max(col)
            if low not in pivots:
                pivots[low] = col
                rank += 1
                break
            other = pivots[low]
            factor = col[low] * pow(other[low], p - 2, p) % p
            for r, c in other.items():
                v = (col.get(r, 0) - factor * c) % p
                if v:
                    col[r] = v
                else:
                    col.pop(r, None)
    return rank


def betti(X: FiniteMetricSpace, eps: float, k: int, field_char: int = 2) -> int:
    """``dim H_k`` of the Rips complex at ``eps``: ``#k-simplices - rank d_k - rank d_{k+1}``."""
    if k < 0:
        raise InvalidInput("k must be non-negative")
    _check_prime(field_char)
    simplices = vr_complex(X, eps, k + 1)
    index = {s: i for i, s in enumerate(simplices)}
    by_dim = {d: [s for s in simplices if len(s) - 1 == d] for d in (k, k + 1)}
    rank_k = rank_mod_p(len(simplices), [_boundary(s, index, field_char) for s in by_dim[k]], field_char) if k > 0 else 0
    rank_k1 = rank_mod_p(len(simplices), [_boundary(s, index, field_char) for s in by_dim[k + 1]], field_char)
    return len(by_dim[k]) - rank_k - rank_k1


def graphs_isomorphic(a: np.ndarray, b: np.ndarray) -> Optional[Tuple[int, ...]]:
    """Adjacency-preserving bijection between two simple graphs, or None."""
    n = a.shape[0]
    if b.shape[0] != n:
        return None
    deg_a, deg_b = a.sum(axis=1), b.sum(axis=1)
    if sorted(deg_a) != sorted(deg_b):
        return None
    order = sorted(range(n), key=lambda v: -deg_a[v])
    image = [-1] * n
    used = [False] * n

    def extend(t: int) -> bool:
        if t == n:
            return True
        v = order[t]
        for w in range(n):
            if used[w] or deg_b[w] != deg_a[v]:
                continue
            if all(a[v, order[s]] == b[w, image[order[s]]] for s in range(t)):
                image[v], used[w] = w, True
                if extend(t + 1):
                    return True
                used[w] = False
        image[v] = -1
        return False

    return tuple(image) if extend(0) else None


@dataclass(frozen=True)
class PerScaleReport:
    value: bool
    scales: Tuple[Tuple[float, bool], ...]

    def __bool__(self) -> bool:
        return self.value


def per_scale_isomorphic(X: FiniteMetricSpace, Y: FiniteMetricSpace, cap: Optional[int] = None) -> PerScaleReport:
    """Compare Rips complexes of X and Y scale by scale, ignoring the inclusions.

    Flag complexes are determined by their 1-skeleta, so each scale reduces to
    a graph isomorphism test.
    """
    cap = settings().iso_cap if cap is None else cap
    if X.n != Y.n:
        return PerScaleReport(False, ())
    if X.n > cap:
        raise CapExceeded("per-scale isomorphism points", X.n, cap)
    scales = sorted(set(flag_filtration(X).critical_values) | set(flag_filtration(Y).critical_values))
    detail = []
    for eps in scales:
        ok = graphs_isomorphic(X.dist <= eps, Y.dist <= eps) is not None
        detail.append((eps, ok))
    return PerScaleReport(all(ok for _, ok in detail), tuple(detail))

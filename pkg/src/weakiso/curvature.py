"""Curvature sets and reduced curvature sets.

A sample matrix is stored as ``(m, flat)`` with ``flat`` the row-major tuple
of its entries, which makes sets of matrices ordinary Python sets with exact
equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple

import numpy as np

from .config import settings
from .errors import BadDimension, CapExceeded, DimensionMismatch, InvalidInput, MExceedsN
from .isometry import canonicalize
from .space import FiniteMetricSpace


@dataclass(frozen=True)
class SampleMatrix:
    m: int
    entries: Tuple[float, ...]

    def __post_init__(self):
        if len(self.entries) != self.m * self.m:
            raise InvalidInput("entries do not form an m x m matrix")

    @classmethod
    def from_array(cls, a) -> "SampleMatrix":
        a = np.asarray(a, dtype=float)
        return cls(a.shape[0], tuple(float(v) for v in a.ravel()))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float).reshape(self.m, self.m)

    def permuted(self, perm) -> "SampleMatrix":
        m, e = self.m, self.entries
        return SampleMatrix(m, tuple(e[perm[i] * m + perm[j]] for i in range(m) for j in range(m)))

    def minor(self, keep) -> "SampleMatrix":
        m, e = self.m, self.entries
        return SampleMatrix(len(keep), tuple(e[i * m + j] for i in keep for j in keep))


@dataclass(frozen=True)
class CurvatureSet:
    m: int
    matrices: FrozenSet[SampleMatrix]
    reduced: bool = False

    def __len__(self) -> int:
        return len(self.matrices)

    def canonical_forms(self) -> FrozenSet[SampleMatrix]:
        return canonical_set(self.matrices)


def _sample(d: np.ndarray, idx) -> SampleMatrix:
    sub = d[np.ix_(idx, idx)]
    return SampleMatrix(len(idx), tuple(float(v) for v in sub.ravel()))


def curvature_set(X: FiniteMetricSpace, m: int, cap: Optional[int] = None) -> CurvatureSet:
    """All ``m x m`` distance matrices of m-tuples of points (repetition allowed)."""
    if m < 1:
        raise BadDimension("m must be positive")
    cap = settings().tuple_cap if cap is None else cap
    total = X.n ** m
    if total > cap:
        raise CapExceeded("curvature-set tuples", total, cap)
    out = {_sample(X.dist, list(t)) for t in itertools.product(range(X.n), repeat=m)}
    return CurvatureSet(m, frozenset(out), reduced=False)


def reduced_curvature_set(X: FiniteMetricSpace, m: int, cap: Optional[int] = None) -> CurvatureSet:
    """Distance matrices of m-tuples of pairwise distinct points."""
    if m < 1:
        raise BadDimension("m must be positive")
    if m > X.n:
        raise MExceedsN(f"no {m}-tuples of distinct points in a {X.n}-point space")
    cap = settings().reduced_cap if cap is None else cap
    if X.n > cap:
        raise CapExceeded("reduced curvature set points", X.n, cap)
    out = {_sample(X.dist, list(t)) for t in itertools.permutations(range(X.n), m)}
    return CurvatureSet(m, frozenset(out), reduced=True)


def project(K: CurvatureSet, l: int) -> CurvatureSet:
    """Principal ``l x l`` minors of every member (rows and columns removed together)."""
    if l < 1 or l > K.m:
        raise BadDimension(f"cannot project an m={K.m} set to l={l}")
    if l == K.m:
        return K
    out = set()
    for M in K.matrices:
        for keep in itertools.combinations(range(K.m), l):
            out.add(M.minor(keep))
    return CurvatureSet(l, frozenset(out), K.reduced)


def canonical_matrix_form(M: SampleMatrix, cap: Optional[int] = None) -> SampleMatrix:
    """Lexicographically least row-major flattening over simultaneous permutations.

    Permutations whose first row already loses to the incumbent are skipped
    before the rest of the matrix is built.
    """
    cap = settings().perm_cap if cap is None else cap
    m = M.m
    if m > cap:
        raise CapExceeded("canonical form permutations", m, cap)
    a = M.array()
    best: Optional[tuple] = None
    best_row0: Optional[tuple] = None
    for perm in itertools.permutations(range(m)):
        row0 = tuple(a[perm[0], perm[j]] for j in range(m))
        if best_row0 is not None and row0 > best_row0:
            continue
        flat = tuple(a[perm[i], perm[j]] for i in range(m) for j in range(m))
        if best is None or flat < best:
            best, best_row0 = flat, row0
    return SampleMatrix(m, tuple(float(v) for v in best))


def canonical_set(matrices: Iterable[SampleMatrix]) -> FrozenSet[SampleMatrix]:
    """Canonical forms of a set of matrices.

    Members of an orbit already seen are skipped, so permutation-closed sets
    cost one canonicalization per orbit.
    """
    pending = set(matrices)
    forms = set()
    while pending:
        M = pending.pop()
        forms.add(canonical_matrix_form(M))
        for perm in itertools.permutations(range(M.m)):
            pending.discard(M.permuted(perm))
    return frozenset(forms)


def curvature_sets_equal(A: CurvatureSet, B: CurvatureSet) -> bool:
    if A.m != B.m or A.reduced != B.reduced:
        raise DimensionMismatch(f"comparing m={A.m} reduced={A.reduced} with m={B.m} reduced={B.reduced}")
    return A.canonical_forms() == B.canonical_forms()


def is_isometric_via_curvature(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> bool:
    if X.n != Y.n:
        return False
    n = X.n
    return curvature_sets_equal(reduced_curvature_set(X, n), reduced_curvature_set(Y, n))


def is_weakly_isometric_via_curvature(X: FiniteMetricSpace, Y: FiniteMetricSpace, tol: float = 0.0) -> bool:
    if X.n != Y.n:
        return False
    return is_isometric_via_curvature(canonicalize(X, tol).space, canonicalize(Y, tol).space)

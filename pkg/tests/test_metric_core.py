from __future__ import annotations

import itertools

import numpy as np
import pytest

from conftest import triangle
from weakiso.errors import (
    AsymmetricMatrix,
    CapExceeded,
    CollapseWithoutFlag,
    DecreasingValues,
    DuplicateLabel,
    NegativeDistance,
    NonzeroDiagonal,
    ShapeMismatch,
    TriangleViolation,
    UnsortedTable,
    ZeroOffDiagonal,
)
from weakiso.isometry import brute_force_weak_isometry, canonicalize, is_isometric, is_weakly_isometric
from weakiso.monotone import MonotoneMap, extend_monotone
from weakiso.space import apply_rescaling, distance_set, validate


class TestValidate:
    def test_triangle_345(self):
        X = triangle(3, 4, 5)
        assert X.n == 3 and X.metric

    def test_singleton(self):
        X = validate([[0]])
        assert X.n == 1 and X.labels == ("x1",)

    def test_triangle_violation_witness(self):
        with pytest.raises(TriangleViolation) as exc:
            validate([[0, 1, 1], [1, 0, 3], [1, 3, 0]])
        i, j, k = exc.value.witness
        d = np.array([[0, 1, 1], [1, 0, 3], [1, 3, 0]])
        assert d[i, k] > d[i, j] + d[j, k]

    @pytest.mark.parametrize(
        "matrix, error",
        [
            ([[0, 1], [2, 0]], AsymmetricMatrix),
            ([[1, 1], [1, 0]], NonzeroDiagonal),
            ([[0, -1], [-1, 0]], NegativeDistance),
            ([[0, 0], [0, 0]], ZeroOffDiagonal),
            ([[0, 1, 2], [1, 0, 1]], ShapeMismatch),
            ([[0, float("nan")], [float("nan"), 0]], NegativeDistance),
        ],
    )
    def test_errors(self, matrix, error):
        with pytest.raises(error):
            validate(matrix)

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabel):
            validate([[0, 1], [1, 0]], ["a", "a"])

    def test_label_count(self):
        with pytest.raises(ShapeMismatch):
            validate([[0, 1], [1, 0]], ["a"])

    def test_immutable(self):
        X = triangle(3, 4, 5)
        with pytest.raises(ValueError):
            X.dist[0, 1] = 7
        with pytest.raises(AttributeError):
            X.labels = ("q",)


class TestDistanceSet:
    def test_examples(self):
        assert distance_set(triangle(5, 6, 6)) == (5.0, 6.0)
        assert distance_set(validate([[0]])) == ()
        assert distance_set(triangle(3, 4, 5)) == (3.0, 4.0, 5.0)

    def test_tolerance_groups(self):
        X = triangle(3, 3.0000001, 5)
        assert len(distance_set(X)) == 3
        assert len(distance_set(X, tol=1e-6)) == 2


class TestMonotone:
    def test_examples(self):
        f = extend_monotone({3: 4, 4: 5, 5: 6})
        assert f(5) == 6 and f(3.5) == 4.5 and f(0) == 0
        assert extend_monotone({3: 4})(7) == 8

    def test_first_segment(self):
        f = extend_monotone({2: 3})
        assert f(1) == 1.5

    def test_errors(self):
        with pytest.raises(UnsortedTable):
            extend_monotone([(4, 5), (3, 6)])
        with pytest.raises(DecreasingValues):
            extend_monotone([(3, 5), (4, 4)])

    def test_reproduces_table(self):
        table = {0.5: 0.1, 1.7: 2.3, 3.1: 2.3, 9.0: 11.0}
        f = extend_monotone(table)
        assert [f(x) for x in table] == list(table.values())
        assert not f.strict

    def test_inverse(self):
        f = extend_monotone({10: 10, 11: 11.9})
        assert f.inverse(10.0) == 10.0
        assert abs(f.inverse(11.0) - (10 + 1 / 1.9)) < 1e-12
        assert abs(f(f.inverse(13.0)) - 13.0) < 1e-12

    def test_identity(self):
        f = MonotoneMap.identity()
        assert f(np.array([0, 2.5, 100])).tolist() == [0, 2.5, 100]


class TestCanonicalize:
    def test_345(self):
        c = canonicalize(triangle(3, 4, 5))
        assert c.space.dist[0, 1] == 4 and c.space.dist[0, 2] == 5 and c.space.dist[1, 2] == 6
        assert [c.psi(v) for v in (3, 4, 5)] == [4, 5, 6]

    def test_566(self):
        c = canonicalize(triangle(5, 6, 6))
        assert np.array_equal(c.space.dist, triangle(5, 6, 6).dist)

    def test_singleton(self):
        X = validate([[0]])
        c = canonicalize(X)
        assert c.degenerate and c.space == X

    def test_idempotent(self, vr_twins):
        c = canonicalize(vr_twins[0]).space
        assert canonicalize(c).space == c


class TestIsometry:
    def test_shuffle(self, vr_twins):
        X = vr_twins[0]
        Y = X.relabel([2, 0, 3, 1])
        d = is_isometric(X, Y)
        assert d.value
        phi = d.bijection
        assert all(X.dist[i, j] == Y.dist[phi[i], phi[j]] for i in range(4) for j in range(4))

    def test_spectrum_pair_variant(self):
        assert not is_isometric(triangle(5, 6, 6), triangle(5, 5, 6))

    def test_vr_twins(self, vr_twins):
        assert not is_isometric(*vr_twins)

    def test_size_mismatch(self):
        d = is_isometric(triangle(3, 4, 5), validate([[0]]))
        assert not d.value and "size" in d.reason

    def test_deterministic_first_witness(self):
        X = triangle(1, 1, 1)
        assert is_isometric(X, X).bijection == (0, 1, 2)


class TestWeakIsometry:
    def test_scaled(self):
        X, Y = triangle(3, 4, 5), triangle(30, 40, 45)
        d = is_weakly_isometric(X, Y)
        assert d.value
        assert [d.psi(v) for v in (3, 4, 5)] == [30, 40, 45]
        assert brute_force_weak_isometry(X, Y)

    def test_witness_sound(self, vr_twins, rng):
        from weakiso.generate import random_weak_copy

        for X in (vr_twins[0], triangle(3, 4, 5)):
            Y = random_weak_copy(X, rng)
            d = is_weakly_isometric(X, Y)
            phi = d.bijection
            for i, j in itertools.permutations(range(X.n), 2):
                assert d.psi(X.dist[i, j]) == Y.dist[phi[i], phi[j]]

    def test_spectrum_pair(self, spectrum_pair):
        assert not is_weakly_isometric(*spectrum_pair)
        assert not brute_force_weak_isometry(*spectrum_pair)

    def test_reflexive(self, vr_twins):
        d = is_weakly_isometric(vr_twins[0], vr_twins[0])
        assert d.value and d.bijection == (0, 1, 2, 3)

    def test_squares(self):
        assert brute_force_weak_isometry(triangle(3, 4, 5), triangle(9, 16, 25))

    def test_singletons(self):
        one = validate([[0]])
        assert is_weakly_isometric(one, one)
        assert not is_weakly_isometric(one, triangle(3, 4, 5))

    def test_brute_cap(self):
        X = validate(np.ones((9, 9)) - np.eye(9))
        with pytest.raises(CapExceeded):
            brute_force_weak_isometry(X, X)
        assert brute_force_weak_isometry(X, X, cap=9)


class TestApplyRescaling:
    def test_identity(self):
        X = triangle(3, 4, 5)
        assert apply_rescaling(X, MonotoneMap.identity()) == X

    def test_canonical_map(self):
        X = triangle(3, 4, 5)
        c = canonicalize(X)
        assert apply_rescaling(X, c.psi) == c.space

    def test_square_boundary(self):
        sq = extend_monotone({3: 9, 4: 16, 5: 25})
        Y = apply_rescaling(triangle(3, 4, 5), sq)
        assert sorted(Y.off_diagonal()) == [9, 16, 25]

    def test_triangle_surfaced(self):
        convex = extend_monotone({1: 1, 2: 10})
        with pytest.raises(TriangleViolation):
            apply_rescaling(triangle(1, 1, 2), convex)

    def test_collapse(self):
        flat = extend_monotone({3: 4, 4: 4, 5: 6})
        with pytest.raises(CollapseWithoutFlag):
            apply_rescaling(triangle(3, 4, 5), flat)
        Y = apply_rescaling(triangle(3, 4, 5), flat, allow_collapse=True)
        assert not Y.metric and sorted(Y.off_diagonal()) == [4, 4, 6]

from __future__ import annotations

import pytest

from conftest import triangle
from oracles import all_correspondences, covering_correspondences, dhat_brute, gh_brute, rescaled_gh_brute
from weakiso.errors import CapExceeded, IndexOutOfRange, NotSurjective
from weakiso.generate import random_space, random_weak_copy
from weakiso.gh import Correspondence, dhat, distortion, gh_distance, min_rescaled_gh
from weakiso.space import validate


class TestCorrespondence:
    def test_surjective(self):
        with pytest.raises(NotSurjective):
            Correspondence(frozenset({(0, 0)}), 2, 1)
        with pytest.raises(NotSurjective):
            Correspondence(frozenset(), 1, 1)

    def test_range(self):
        with pytest.raises(IndexOutOfRange):
            Correspondence(frozenset({(0, 0), (1, 1)}), 1, 2)


class TestDistortion:
    def test_identity(self, triangles):
        X = triangles["X"]
        assert distortion({(i, i) for i in range(3)}, X, X) == 0

    def test_triangles_bijection(self, triangles):
        assert distortion({(0, 0), (1, 1), (2, 2)}, triangles["X"], triangles["Y"]) == 1

    def test_singletons(self):
        one = validate([[0]])
        assert distortion({(0, 0)}, one, one) == 0

    def test_out_of_range(self, triangles):
        with pytest.raises(IndexOutOfRange):
            distortion({(0, 5)}, triangles["X"], triangles["Y"])


class TestGH:
    def test_examples(self, triangles):
        X, Y = triangles["X"], triangles["Y"]
        assert gh_distance(X, X).value == 0
        r = gh_distance(X, Y)
        assert r.value == 0.5 and distortion(r.correspondence, X, Y) == r.distortion == 1.0
        assert gh_distance(X, validate([[0]])).value == 2.5

    def test_against_full_enumeration(self, rng):
        for _ in range(25):
            X = random_space(int(rng.integers(1, 4)), "integer", rng, low=2).space
            Y = random_space(int(rng.integers(1, 4)), "uniform", rng).space
            assert abs(gh_distance(X, Y).value - gh_brute(X.dist, Y.dist)) <= 1e-12

    def test_covering_family_suffices(self, rng):
        for _ in range(15):
            X = random_space(3, "uniform", rng).space
            Y = random_space(int(rng.integers(2, 4)), "perturbed", rng, repair=True).space
            full = gh_brute(X.dist, Y.dist, all_correspondences)
            assert gh_brute(X.dist, Y.dist, covering_correspondences) == full

    def test_size4_against_covering_oracle(self, rng):
        for _ in range(6):
            X = random_space(4, "integer", rng, low=2).space
            Y = random_space(4, "uniform", rng).space
            assert abs(gh_distance(X, Y).value - gh_brute(X.dist, Y.dist, covering_correspondences)) <= 1e-12

    def test_cap(self, triangles):
        with pytest.raises(CapExceeded):
            gh_distance(triangles["X"], triangles["Y"], cap=2)


class TestRescaledGH:
    def test_triangles_one_sided(self, triangles):
        X, Y = triangles["X"], triangles["Y"]
        xy = min_rescaled_gh(X, Y)
        assert xy.value == 0 and not xy.attained
        yx = min_rescaled_gh(Y, X)
        assert yx.value == 0.25

    def test_triangles_dhat(self, triangles):
        X, Y, Z = triangles["X"], triangles["Y"], triangles["Z"]
        assert dhat(X, Z) == 0
        assert dhat(X, Y) == 0.25
        assert dhat(Y, Z) == 0.5
        assert dhat(Y, Z) > dhat(Y, X) + dhat(X, Z)

    def test_weak_copy_is_zero(self, rng):
        for _ in range(10):
            X = random_space(int(rng.integers(2, 6)), "uniform", rng).space
            assert min_rescaled_gh(X, random_weak_copy(X, rng)).value == 0

    def test_solution_values_reach_optimum(self, rng):
        """The reported rescaling attains the optimum on the chosen correspondence."""
        for _ in range(20):
            X = random_space(int(rng.integers(2, 5)), "integer", rng, low=2).space
            Y = random_space(int(rng.integers(2, 5)), "uniform", rng).space
            r = min_rescaled_gh(X, Y)
            images = dict(r.values)
            images[0.0] = 0.0
            worst = max(abs(images[float(X.dist[a, c])] - Y.dist[b, d])
                        for a, b in r.correspondence.pairs for c, d in r.correspondence.pairs)
            assert abs(worst / 2 - r.value) <= 1e-12
            values = [v for _, v in r.values]
            assert all(b >= a for a, b in zip(values, values[1:]))

    def test_against_oracle(self, rng):
        for _ in range(25):
            X = random_space(int(rng.integers(1, 4)), "integer", rng, low=1).space
            Y = random_space(int(rng.integers(1, 4)), "perturbed", rng, repair=True).space
            assert abs(min_rescaled_gh(X, Y).value - rescaled_gh_brute(X.dist, Y.dist)) <= 1e-9
            assert abs(dhat(X, Y) - dhat_brute(X.dist, Y.dist)) <= 1e-9

    def test_singletons(self):
        one = validate([[0]])
        X = triangle(3, 4, 5)
        assert dhat(one, one) == 0
        assert min_rescaled_gh(one, X).value == 2.5
        # X rescaled towards a point: everything can shrink to 0
        assert min_rescaled_gh(X, one).value == 0

    def test_psi_is_monotone_map(self, triangles):
        psi = min_rescaled_gh(triangles["Y"], triangles["X"]).psi()
        assert psi(0) == 0

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from conftest import triangle
from oracles import betti_by_rank
from weakiso.errors import CapExceeded, InvalidInput, NonStrictOnValues, NotPrime
from weakiso.generate import random_concave_rescaling, random_space, random_weak_copy
from weakiso.isometry import canonicalize, is_weakly_isometric
from weakiso.monotone import MonotoneMap, extend_monotone
from weakiso.space import distance_set, validate
from weakiso.topology import (
    Barcode,
    betti,
    flag_filtration,
    graphs_isomorphic,
    is_prime,
    per_scale_isomorphic,
    persistence,
    rescale_filtration,
    vr_complex,
)

PSI_10 = MonotoneMap(((0, 0), (10, 10), (10.1, 11)), 1.0)


class TestVR:
    def test_eps0(self, cycle_pair):
        assert vr_complex(cycle_pair[0], 0) == [(0,), (1,), (2,), (3,)]

    def test_eps10(self, cycle_pair):
        S = vr_complex(cycle_pair[0], 10)
        assert [s for s in S if len(s) == 2] == [(0, 1), (0, 3), (1, 2), (2, 3)]
        assert not [s for s in S if len(s) == 3]

    def test_full_simplex(self, cycle_pair):
        S = vr_complex(cycle_pair[0], 12, max_dim=3)
        assert len(S) == 15

    def test_negative_dim(self, cycle_pair):
        with pytest.raises(InvalidInput):
            vr_complex(cycle_pair[0], 1, max_dim=-1)


class TestPersistence:
    def test_cycle_pair(self, cycle_pair):
        X, Y = cycle_pair
        b = persistence(X, 1)
        assert b.in_dim(1) == [(10.0, 11.0)]
        assert b.in_dim(0) == [(0.0, 7.0), (0.0, 8.0), (0.0, 9.0), (0.0, math.inf)]
        assert persistence(Y, 1).in_dim(1) == []

    def test_records(self, cycle_pair):
        assert "1 10 11" in persistence(cycle_pair[0], 1).records()
        assert persistence(validate([[0]]), 1).records() == ["0 0 inf"]
        assert Barcode(((0, 0.5, 1.25),)).records() == ["0 0.5 1.25"]

    def test_field(self, cycle_pair):
        with pytest.raises(NotPrime):
            persistence(cycle_pair[0], 1, field_char=4)
        assert persistence(cycle_pair[0], 1, field_char=3).bars == persistence(cycle_pair[0], 1).bars
        assert is_prime(2) and is_prime(7) and not is_prime(1) and not is_prime(9)

    def test_cap(self, vr_twins):
        F = flag_filtration(vr_twins[0], 2)
        with pytest.raises(CapExceeded):
            F.simplices(cap=10)

    def test_one_infinite_h0_bar(self, rng):
        for _ in range(20):
            X = random_space(int(rng.integers(1, 7)), "perturbed", rng, repair=True).space
            b = persistence(X, 1)
            assert sum(math.isinf(d) for _, d in b.in_dim(0)) == 1
            assert len(b.in_dim(0)) == X.n
            assert all(not math.isinf(d) for _, d in b.in_dim(1))

    def test_bar_validation(self):
        with pytest.raises(InvalidInput):
            Barcode(((0, 2.0, 2.0),))


class TestBetti:
    def test_examples(self, cycle_pair):
        X = cycle_pair[0]
        assert betti(X, 10, 1) == 1
        assert betti(X, 11, 1) == 0
        assert betti(X, 0, 0) == 4

    def test_against_rank_oracle_and_bars(self, rng):
        for _ in range(15):
            X = random_space(int(rng.integers(2, 7)), "integer", rng, low=2).space
            bars = persistence(X, 1)
            for eps in flag_filtration(X).critical_values:
                for k in (0, 1):
                    expected = betti_by_rank(X.dist, eps, k)
                    assert betti(X, eps, k) == expected
                    assert bars.betti_at(eps, k) == expected

    def test_euler_characteristic(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 7))
            X = random_space(n, "uniform", rng).space
            for eps in flag_filtration(X).critical_values:
                S = vr_complex(X, eps, max_dim=n - 1)
                chi = sum((-1) ** (len(s) - 1) for s in S)
                assert chi == sum((-1) ** k * betti(X, eps, k) for k in range(n))


class TestRescale:
    def test_identity(self, cycle_pair):
        F = flag_filtration(cycle_pair[0])
        G = rescale_filtration(F, MonotoneMap.identity())
        assert np.array_equal(F.edge_values, G.edge_values)

    def test_psi_n_pullback(self, cycle_pair):
        F = flag_filtration(cycle_pair[0])
        G = rescale_filtration(F, PSI_10, pullback=True)
        assert G.edge_values[1, 3] == pytest.approx(10.1, abs=1e-12)
        assert G.edge_values[1, 2] == 10 and G.edge_values[0, 2] == pytest.approx(11.1)
        H = rescale_filtration(F, PSI_10)
        assert H.edge_values[1, 3] == pytest.approx(11.9)

    def test_canonicalizing(self, cycle_pair):
        X = cycle_pair[0]
        c = canonicalize(X)
        G = rescale_filtration(flag_filtration(X), c.psi)
        assert np.array_equal(G.edge_values, c.space.dist)

    def test_non_strict(self, cycle_pair):
        flat = extend_monotone({7: 7, 8: 7, 12: 12})
        with pytest.raises(NonStrictOnValues):
            rescale_filtration(flag_filtration(cycle_pair[0]), flat)

    def test_weak_isometry_barcode_shape(self, rng):
        for _ in range(15):
            X = random_space(int(rng.integers(2, 6)), "uniform", rng).space
            Y = random_weak_copy(X, rng)
            w = is_weakly_isometric(X, Y)
            assert persistence(Y, 1).bars == persistence(X, 1).mapped(w.psi).bars

    def test_order_preserved(self, rng):
        X = random_space(5, "uniform", rng).space
        psi = random_concave_rescaling(distance_set(X), rng)
        F = flag_filtration(X)
        G = rescale_filtration(F, psi)
        assert [s for _, s in F.simplices()] == [s for _, s in G.simplices()]


class TestPerScale:
    def test_vr_twins(self, vr_twins):
        r = per_scale_isomorphic(*vr_twins)
        assert r.value and len(r.scales) == 7

    def test_shuffled(self, vr_twins):
        X = vr_twins[0]
        assert per_scale_isomorphic(X, X.relabel([3, 2, 1, 0]))

    def test_spectrum_pair_at_5(self, spectrum_pair):
        X, Y = spectrum_pair
        r = per_scale_isomorphic(X, Y)
        assert not r.value
        assert dict(r.scales)[5.0] is False

    def test_cap_and_sizes(self, vr_twins):
        assert not per_scale_isomorphic(vr_twins[0], triangle(3, 4, 5)).value
        with pytest.raises(CapExceeded):
            per_scale_isomorphic(*vr_twins, cap=3)

    def test_graph_iso_against_permutations(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 6))
            a = np.triu(rng.integers(0, 2, (n, n)), 1).astype(bool)
            a = a | a.T
            b = np.triu(rng.integers(0, 2, (n, n)), 1).astype(bool)
            b = b | b.T
            brute = any(np.array_equal(a, b[np.ix_(p, p)]) for p in map(list, itertools.permutations(range(n))))
            phi = graphs_isomorphic(a, b)
            assert (phi is not None) == brute
            if phi is not None:
                assert all(a[i, j] == b[phi[i], phi[j]] for i in range(n) for j in range(n))

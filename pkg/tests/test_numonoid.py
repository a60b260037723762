"""Numerical monoid construction, membership and the min-Delta formula."""

from __future__ import annotations

import random

import pytest

from factorsmith import core, numonoid


def coin_representable(gens, n):
    """Oracle: brute-force coin representability by dynamic programming."""
    ok = [False] * (n + 1)
    ok[0] = True
    for m in range(1, n + 1):
        ok[m] = any(g <= m and ok[m - g] for g in gens)
    return ok[n]


def test_make_23():
    M = numonoid.make([2, 3])
    assert M.generators == (2, 3)
    assert M.frobenius == 1  # 2*3 - 2 - 3
    assert M.apery == (0, 3)


def test_make_n0():
    M = numonoid.make([1])
    assert M.generators == (1,)
    assert M.frobenius == -1


def test_make_gcd_violation():
    with pytest.raises(ValueError):
        numonoid.make([4, 6, 2])
    with pytest.raises(ValueError):
        numonoid.make([])
    with pytest.raises(ValueError):
        numonoid.make([0, 3])


def test_minimalization():
    M = numonoid.make([4, 6, 9, 10])
    assert M.generators == (4, 6, 9)  # 10 = 4 + 6


def test_contains():
    M = numonoid.make([2, 3])
    assert not numonoid.contains(M, 1)
    assert numonoid.contains(M, 7)
    assert numonoid.contains(M, 0)


def test_contains_matches_coin_dp():
    rng = random.Random(20260810)
    for _ in range(100):
        M = numonoid.random_monoid(rng)
        horizon = 10 * max(M.frobenius, 1)
        ok = [False] * (horizon + 1)
        ok[0] = True
        for m in range(1, horizon + 1):
            ok[m] = any(g <= m and ok[m - g] for g in M.generators)
        for n in range(horizon + 1):
            assert numonoid.contains(M, n) == ok[n], (M, n)


def test_min_delta_gcd_values():
    assert numonoid.min_delta_gcd(numonoid.make([2, 3])) == 1
    assert numonoid.min_delta_gcd(numonoid.make([3, 5, 7])) == 2
    for e in (2, 3, 4, 5):
        assert numonoid.min_delta_gcd(numonoid.max_gap_monoid(e)) == 1
    with pytest.raises(ValueError):
        numonoid.min_delta_gcd(numonoid.make([1]))


def test_min_delta_gcd_matches_sweep_357():
    M = numonoid.make([3, 5, 7])
    b = numonoid.backend(M)
    report = core.sweep_invariants(b, numonoid.completeness_bound(M))
    assert min(report.delta_set) == numonoid.min_delta_gcd(M) == 2


def test_atoms():
    assert numonoid.backend(numonoid.make([2, 3])).atom_table().elements == (2, 3)
    assert numonoid.backend(numonoid.make([1])).atom_table().elements == (1,)


def test_max_gap_catenary_three():
    for e in (2, 3, 4, 5):
        M = numonoid.max_gap_monoid(e)
        bound = 4 * (M.frobenius + 2 * e)
        report = core.sweep_invariants(numonoid.backend(M), bound)
        assert report.catenary == 3, (e, report)
        assert report.violations == ()


def test_daleth_equality_multiplicity_two():
    # hand-checked: in <2,k> the pair k+k realizes L = {2,k}, the largest
    # gap, so daleth = 2 + sup Delta; not true for general two-generator
    # monoids (<3,5> has daleth 0: every atom-pair sum factors uniquely)
    for gens, expected in (([2, 3], 3), ([2, 5], 5), ([2, 7], 7)):
        M = numonoid.make(gens)
        b = numonoid.backend(M)
        report = core.sweep_invariants(b, numonoid.completeness_bound(M))
        assert report.daleth == expected == 2 + max(report.delta_set)
    M = numonoid.make([3, 5])
    report = core.sweep_invariants(numonoid.backend(M), numonoid.completeness_bound(M))
    assert report.daleth == 0 and max(report.delta_set) == 2

"""Engine-level tests: frozen small examples plus property checks.

Expected factorization sets for <2,3> were computed by the independent
knapsack oracle below (exhaustive enumeration of exponent vectors), not
by the engine under test.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorsmith import core, numonoid
from factorsmith.core import (
    AtomTableMismatchError,
    Factorization,
    catenary_bottleneck,
    catenary_threshold,
    delta_of,
    distance,
    monotone_catenary,
    monotone_catenary_minimax,
    rho_of,
)


def knapsack_factorizations(gens, n):
    """Oracle: all exponent vectors e with sum e_i*g_i = n, brute force."""
    out = []

    def rec(i, remaining, acc):
        if i == len(gens):
            if remaining == 0:
                out.append(tuple(acc))
            return
        g = gens[i]
        for k in range(remaining // g + 1):
            rec(i + 1, remaining - k * g, acc + [k])

    rec(0, n, [])
    return sorted(out)


def as_exps(vector):
    return tuple((i, m) for i, m in enumerate(vector) if m > 0)


@pytest.fixture(scope="module")
def b23():
    return numonoid.backend(numonoid.make([2, 3]))


def test_factorizations_of_12_match_knapsack(b23):
    facs = core.factorizations(b23, 12)
    got = sorted(f.exps for f in facs)
    want = sorted(as_exps(v) for v in knapsack_factorizations((2, 3), 12))
    assert got == want
    assert len(facs) == 3  # 2^6, 2^3*3^2, 3^4


def test_atom_has_unique_length_one_factorization(b23):
    facs = core.factorizations(b23, 3)
    assert [f.exps for f in facs] == [((1, 1),)]


def test_factorizations_of_6(b23):
    facs = core.factorizations(b23, 6)
    assert sorted(f.exps for f in facs) == [((0, 3),), ((1, 2),)]
    assert core.length_set(b23, 6) == (2, 3)


def test_length_sets(b23):
    assert core.length_set(b23, 12) == (4, 5, 6)
    assert core.length_set(b23, 0) == (0,)  # unit


def test_delta_of():
    assert delta_of([2, 4, 5]) == (1, 2)
    assert delta_of([3]) == ()
    assert delta_of([2, 3]) == (1,)


def test_rho_of():
    assert rho_of([2, 4]) == Fraction(2)
    assert rho_of([0]) == Fraction(1)
    assert rho_of([4, 5, 6]) == Fraction(3, 2)


def test_distance_examples(b23):
    z26, z2332, z34 = {f.exps: f for f in core.factorizations(b23, 12)}.values()
    by_exps = {f.exps: f for f in core.factorizations(b23, 12)}
    z26 = by_exps[((0, 6),)]
    z2332 = by_exps[((0, 3), (1, 2))]
    z34 = by_exps[((1, 4),)]
    assert distance(z26, z26) == 0
    assert distance(z26, z34) == 6
    assert distance(z2332, z34) == 3
    assert distance(z26, z2332) == 3


def test_distance_rejects_mixed_tables(b23):
    other = numonoid.backend(numonoid.make([2, 3]))
    z1 = core.factorizations(b23, 2)[0]
    z2 = core.factorizations(other, 2)[0]
    with pytest.raises(AtomTableMismatchError):
        distance(z1, z2)


def test_catenary_examples(b23):
    assert core.catenary_degree_of(b23, 12) == 3
    assert core.catenary_degree_of(b23, 2) == 0  # unique factorization
    assert core.catenary_degree_of(b23, 6) == 3
    assert core.monotone_catenary_degree_of(b23, 12) == 3
    assert core.monotone_catenary_degree_of(b23, 2) == 0


def test_sweep_invariants_23(b23):
    report = core.sweep_invariants(b23, 60)
    assert report.delta_set == (1,)
    assert report.catenary == 3
    assert report.half_factorial is False
    assert report.violations == ()
    assert report.chain_checks > 0 and report.oracle_checks > 0


def test_sweep_free_monoid():
    b = numonoid.backend(numonoid.make([1]))
    report = core.sweep_invariants(b, 30)
    assert report.delta_set == ()
    assert report.catenary == 0
    assert report.half_factorial is True


def test_sweep_345():
    b = numonoid.backend(numonoid.make([3, 4, 5]))
    report = core.sweep_invariants(b, 60)
    assert report.catenary == 3
    assert report.violations == ()


def test_daleth_25():
    b = numonoid.backend(numonoid.make([2, 5]))
    # L(10) = {2, 5}: the only atom pair with |L| > 1
    assert core.length_set(b, 10) == (2, 5)
    assert core.daleth(b, 60) == 5


def test_daleth_factorial_backend_is_zero():
    b = numonoid.backend(numonoid.make([1]))
    assert core.daleth(b, 60) == 0


def test_daleth_at_least_three_when_nonzero():
    for gens in ([2, 3], [2, 5], [3, 4], [3, 5, 7], [4, 9, 11]):
        b = numonoid.backend(numonoid.make(gens))
        val = core.daleth(b, 200)
        assert val == 0 or val >= 3


def test_sweep_determinism(b23):
    r1 = core.sweep_invariants(b23, 60)
    r2 = core.sweep_invariants(b23, 60)
    assert r1.to_json() == r2.to_json()


# ---------------------------------------------------------------------------
# property tests on random factorization pairs / sets
# ---------------------------------------------------------------------------

TOKEN = 999  # fake table token shared by synthetic factorizations


def fac(vector):
    return Factorization(TOKEN, tuple((i, m) for i, m in enumerate(vector) if m))


vectors = st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=6)


@given(vectors, vectors)
def test_distance_symmetry_and_zero(v1, v2):
    v2 = (v2 + [0] * len(v1))[: len(v1)]
    z1, z2 = fac(v1), fac(v2)
    assert distance(z1, z2) == distance(z2, z1)
    assert (distance(z1, z2) == 0) == (z1 == z2)


@given(vectors, vectors)
def test_distance_bounds(v1, v2):
    v2 = (v2 + [0] * len(v1))[: len(v1)]
    z1, z2 = fac(v1), fac(v2)
    d = distance(z1, z2)
    assert abs(z1.length - z2.length) <= d <= max(z1.length, z2.length)


fac_sets = st.lists(vectors.map(tuple), min_size=1, max_size=10, unique=True)


@settings(max_examples=60)
@given(fac_sets)
def test_mst_equals_threshold(D):
    facs = [fac(list(v)) for v in D]
    assert catenary_bottleneck(facs) == catenary_threshold(facs)


@settings(max_examples=60)
@given(fac_sets)
def test_monotone_threshold_equals_minimax(D):
    facs = [fac(list(v)) for v in D]
    assert monotone_catenary(facs) == monotone_catenary_minimax(facs)


@settings(max_examples=60)
@given(fac_sets)
def test_catenary_below_monotone(D):
    facs = [fac(list(v)) for v in D]
    assert catenary_bottleneck(facs) <= monotone_catenary(facs)

"""Zero-sum monoids: atom enumeration, Davenport constants, catenary bound."""

from __future__ import annotations

import itertools

import pytest

from factorsmith import core, zerosum
from factorsmith.zerosum import (
    check_catenary_lower_bound,
    davenport_constant,
    has_proper_zero_subsum,
    is_zero_sum,
    make_group,
    minimal_zero_sums,
    parse_group,
)


def test_make_group_invariant_factors():
    assert make_group([2, 3]).cyclic_orders == (6,)
    assert make_group([2, 4]).cyclic_orders == (2, 4)
    assert make_group([12, 60]).cyclic_orders == (12, 60)
    assert make_group([4, 6]).cyclic_orders == (2, 12)
    assert make_group([2]).exponent == 2
    assert make_group([2, 2]).rank == 2


def test_parse_group():
    assert parse_group("2x2").cyclic_orders == (2, 2)
    assert parse_group("3").cyclic_orders == (3,)
    assert parse_group("2,4").cyclic_orders == (2, 4)


def test_atoms_z2():
    G = make_group([2])
    table = minimal_zero_sums(G)
    assert table.elements == (((1,), (1,)),)


def test_atoms_z3():
    G = make_group([3])
    table = minimal_zero_sums(G)
    atoms = set(table.elements)
    assert atoms == {
        ((1,), (1,), (1,)),
        ((2,), (2,), (2,)),
        ((1,), (2,)),
    }


def test_atoms_are_minimal_by_independent_scan():
    for orders in ([3], [4], [2, 2], [2, 4], [5]):
        G = make_group(orders)
        for atom in minimal_zero_sums(G).elements:
            assert is_zero_sum(G, atom)
            assert not has_proper_zero_subsum(G, atom), (orders, atom)


def brute_force_minimal_zero_sums(G, max_len):
    """Oracle: filter every multiset up to max_len."""
    out = set()
    elems = G.nonzero_elements()
    for length in range(1, max_len + 1):
        for combo in itertools.combinations_with_replacement(elems, length):
            if is_zero_sum(G, combo) and not has_proper_zero_subsum(G, combo):
                out.add(combo)
    return out


def test_atoms_complete_against_brute_force():
    for orders in ([3], [4], [2, 2], [2, 4]):
        G = make_group(orders)
        got = set(minimal_zero_sums(G).elements)
        want = brute_force_minimal_zero_sums(G, G.order)
        assert got == want, orders


def test_davenport_constants():
    for n in (2, 3, 4, 5, 6, 7):
        assert davenport_constant(make_group([n])) == n
    assert davenport_constant(make_group([2, 2])) == 3
    assert davenport_constant(make_group([2, 4])) == 5  # 1 + 1 + 3


def test_group_order_limit():
    with pytest.raises(ValueError):
        minimal_zero_sums(make_group([5, 25]), limit=64)


def test_backend_divide():
    G = make_group([2])
    b = zerosum.backend(G)
    g = (1,)
    x = (g, g, g, g)
    quotients = b.try_divide(x, 0)
    assert quotients == ((g, g),)


def test_sweep_z2_is_factorial():
    G = make_group([2])
    b = zerosum.backend(G)
    report = core.sweep_invariants(b, 4)
    assert report.catenary == 0
    assert report.delta_set == ()
    swept = list(b.element_sweep(4))
    assert swept == [((1,), (1,)), ((1,), (1,), (1,), (1,))]


def test_catenary_lower_bounds():
    c, target, passed, factorial = check_catenary_lower_bound(make_group([2, 2]))
    assert target == 3 and passed and not factorial and c == 3
    c, target, passed, factorial = check_catenary_lower_bound(make_group([3]))
    assert target == 3 and passed and c >= 3
    c, target, passed, factorial = check_catenary_lower_bound(make_group([2]))
    assert factorial and passed and c == 0


def test_b_z3_length_sets():
    G = make_group([3])
    b = zerosum.backend(G)
    g, h = (1,), (2,)
    # g^3 * h^3 = (gh)^3: lengths {2, 3}
    x = tuple(sorted((g, g, g, h, h, h)))
    assert core.length_set(b, x) == (2, 3)
    assert core.catenary_degree_of(b, x) == 3

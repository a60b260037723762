"""Profile rings: element monoids, ideal monoids and the GF(16) example."""

from __future__ import annotations

import pytest

from factorsmith import core, fprimary, numonoid
from factorsmith.fprimary import (
    CoefficientProfile,
    ElementBackend,
    ProfileClosureError,
    TruncatedRing,
    element_backend,
    full_profile,
    gap_profile,
    ideal_backend,
    ideal_monoid_atom_check,
    ideal_monoid_half_factorial,
    is_half_factorial_rank1,
    k_span,
    m_squared_in_principal,
    make_profile,
    make_ring,
    parse_profile,
    semigroup_ring_profile,
    subspace_product_scan,
    subspace_profile,
    two_generated_dual_check,
    value_monoid_values,
    _echelon,
    _in_span,
    _span_elements,
)
from factorsmith.gf import FiniteField, parse_modulus


@pytest.fixture(scope="module")
def L16():
    return FiniteField(2, 4, parse_modulus(2, 4, "y4=y+1"))


@pytest.fixture(scope="module")
def remark_profile(L16):
    y = L16.generator
    return subspace_profile(L16, 1, [1, y, L16.mul(y, y)])


def test_profile_closure_violation(L16):
    y = L16.generator
    K = frozenset(L16.subfield_elements(1))
    bad = k_span(L16, 1, [1, y])
    # S_1 * S_1 would need to land in S_2 = {0}: closure fails at (1, 1)
    with pytest.raises(ProfileClosureError) as err:
        make_profile(L16, 1, [K, bad, frozenset({0})])
    assert err.value.pair == (1, 1)


def test_gap_profile_alpha():
    L4 = FiniteField(2, 2)
    prof = gap_profile(L4, 1, 2)
    assert prof.alpha == 2
    assert prof.min_valuation == 2
    assert len(prof.space(0)) == 2 and len(prof.space(1)) == 1


def test_remark_profile_shape(remark_profile, L16):
    assert remark_profile.alpha == 2
    assert remark_profile.min_valuation == 1
    assert len(remark_profile.spaces[1]) == 8  # V = <1, y, y^2>
    ring = make_ring(remark_profile, 3)
    assert ring.size() == 256  # |K| * |V| * |L| = 2 * 8 * 16


def test_parse_profile(remark_profile, L16):
    prof = parse_profile(L16, 1, "K,V(1,y,y2),L")
    assert prof == remark_profile


# ---------------------------------------------------------------------------
# element monoids
# ---------------------------------------------------------------------------

def test_full_profile_is_factorial():
    L = FiniteField(2, 2)
    b = element_backend(full_profile(L))
    assert [a for a in b.atom_table().elements] == [(1, ())]
    assert is_half_factorial_rank1(b) == (True, None)
    rep = core.sweep_invariants(b, 6)
    assert rep.catenary == 0 and rep.half_factorial


def test_k_plus_xl_is_half_factorial():
    # K + X*L[[X]]: every atom has valuation 1
    L = FiniteField(2, 2)
    prof = make_profile(L, 1, [frozenset(L.subfield_elements(1))])
    b = element_backend(prof)
    hf, witness = is_half_factorial_rank1(b)
    assert hf and witness is None
    rep = core.sweep_invariants(b, 5)
    assert rep.half_factorial and rep.delta_set == ()


def test_gap_ring_not_half_factorial():
    # K + X^2 L[[X]] over GF(4): atoms at valuations 2 and 3
    L = FiniteField(2, 2)
    b = element_backend(gap_profile(L, 1, 2))
    vals = sorted({v for v, _ in b.atom_table().elements})
    assert vals == [2, 3]
    hf, witness = is_half_factorial_rank1(b)
    assert not hf and witness[0] >= 2
    rep = core.sweep_invariants(b, 8)
    assert not rep.half_factorial
    assert rep.delta_set and min(rep.delta_set) == 1
    assert rep.violations == ()


def test_remark_ring_element_monoid_half_factorial(remark_profile):
    b = element_backend(remark_profile)
    hf, witness = is_half_factorial_rank1(b)
    assert hf and witness is None
    rep = core.sweep_invariants(b, 5)
    assert rep.half_factorial and rep.delta_set == ()
    assert rep.violations == ()


def test_element_membership_x_squared(remark_profile):
    b = element_backend(remark_profile)
    x = (1, (1, 0))  # the series X
    assert b.member(*x)
    x2 = b.multiply(x, x)
    assert x2[0] == 2 and b.member(*x2)


def test_unit_precision_stability(remark_profile):
    # the (v, u mod X^alpha) congruence is exact: refining the unit-part
    # precision must not change any aggregate invariant
    b1 = element_backend(remark_profile)
    b2 = ElementBackend(remark_profile, unit_digits=remark_profile.alpha + 2)
    r1 = core.sweep_invariants(b1, 5)
    r2 = core.sweep_invariants(b2, 5)
    for field in ("delta_set", "elasticity", "catenary", "monotone_catenary",
                  "daleth", "half_factorial"):
        assert getattr(r1, field) == getattr(r2, field), field


def test_gap_ring_unit_precision_stability():
    L = FiniteField(2, 2)
    prof = gap_profile(L, 1, 2)
    r1 = core.sweep_invariants(element_backend(prof), 7)
    r2 = core.sweep_invariants(ElementBackend(prof, unit_digits=prof.alpha + 2), 7)
    assert (r1.delta_set, r1.catenary, r1.daleth) == (r2.delta_set, r2.catenary, r2.daleth)


def test_value_monoid_of_semigroup_ring():
    K = FiniteField(2, 1)
    M = numonoid.make([3, 5])
    prof = semigroup_ring_profile(K, M)
    b = element_backend(prof)
    vals = value_monoid_values(b, 20)
    expected = tuple(n for n in range(1, 21) if numonoid.contains(M, n))
    assert vals == expected


def test_rank1_elasticity_and_catenary_bounds():
    # rank-one finitely primary with exponent alpha: rho <= 2*alpha - 1
    # and c <= 3*alpha - 1 on every swept element
    L = FiniteField(2, 2)
    for prof in (gap_profile(L, 1, 2), gap_profile(L, 1, 3)):
        alpha = prof.alpha
        b = element_backend(prof)
        rep = core.sweep_invariants(b, 3 * alpha)
        assert rep.elasticity <= 2 * alpha - 1
        assert rep.catenary <= 3 * alpha - 1


# ---------------------------------------------------------------------------
# exact ideal monoid (v, W)
# ---------------------------------------------------------------------------

def test_ideal_backend_gap22_levels_and_atoms():
    L = FiniteField(2, 2)
    ib = ideal_backend(gap_profile(L, 1, 2), val_bound=8, full_levels=True)
    level2 = ib.level(2)
    # subspaces of the 4-dim window with a lead-nonzero vector: 67 - 5
    assert len(level2) == 62
    atoms = ib.atom_table().elements
    assert all(2 <= v <= 3 for v, _ in atoms)
    assert all(v >= 4 for v, _ in (x for x in ib.element_sweep(8) if not ib.is_atom(x)))
    # the structural atom shortcut agrees with an explicit pair scan
    for x in ib.element_sweep(5):
        v, W = x
        splittable = False
        for v1 in range(2, v - 1):
            v2 = v - v1
            if v2 < 2:
                continue
            for a in ib.level(v1):
                if any(ib.multiply(a, b) == x for b in ib.level(v2)):
                    splittable = True
                    break
            if splittable:
                break
        assert ib.is_atom(x) == (not splittable), x


def test_ideal_backend_products_match_quotient_ring():
    # route B: the finite quotient R/m^2 sees exactly the ideals >= m^2,
    # and products agree under reduction
    L = FiniteField(2, 2)
    prof = gap_profile(L, 1, 2)
    ib = ideal_backend(prof, val_bound=6, full_levels=True)
    ring = make_ring(prof, 4)  # m^2 = X^4 L[[X]]
    quotient_ideals = {tuple(A) for A in ring.enumerate_ideals()}
    m2 = (4, ib._membership_space(4))

    def reduce_to_ring(x):
        return tuple(_echelon([vec & ((1 << (4 * ring.e)) - 1) for vec in ib._absolute_span(x, 4)]))

    images = set()
    for x in ib.element_sweep(3):
        if ib.contains(x, m2):
            images.add(reduce_to_ring(x))
    # nonzero proper quotient ideals correspond to ideals strictly
    # between m^2 and R
    proper = {A for A in quotient_ideals if A and len(A) < ring.dimension}
    assert images == proper
    # product preservation on a sample
    sample = [x for x in ib.element_sweep(3) if ib.contains(x, m2)][:12]
    for a in sample[:6]:
        for b in sample[:6]:
            prod = ib.multiply(a, b)
            lhs = reduce_to_ring(prod)
            rhs = tuple(ring.ideal_product(reduce_to_ring(a), reduce_to_ring(b)))
            assert lhs == rhs


def test_gap_ring_u_power_decomposition():
    # with m^2 = X^n m, every ideal is U^k * J for U = X^n R and an atom J
    L = FiniteField(2, 2)
    for n in (2, 3):
        prof = gap_profile(L, 1, n)
        ib = ideal_backend(prof, val_bound=4 * n, full_levels=prof.alpha * L.e <= 6)
        U = ib.principal_ideal(n, (1,) + (0,) * (prof.alpha - 1))
        assert ib.is_atom(U)
        # m^2 = x*m for x = X^n
        m = ib.maximal_ideal()
        assert ib.multiply(m, m) == ib.multiply(U, m)
        for x in ib.element_sweep(4 * n):
            v, W = x
            k = (v - n) // n if v % n else (v - n) // n
            r = v - n * ((v - n) // n)
            # normalize r into [n, 2n-1]
            while r < n:
                r += n
            k = (v - r) // n
            J = (r, W)
            assert n <= r <= 2 * n - 1
            assert ib.is_atom(J)
            prod = J
            for _ in range(k):
                prod = ib.multiply(prod, U)
            assert prod == x


def test_principal_plus_full_window_equality():
    # restricted sweep still carries the witnesses: delta = {1}, daleth = 3
    L = FiniteField(2, 2)
    prof = gap_profile(L, 1, 2)
    ib = ideal_backend(prof, val_bound=8, full_levels=False)
    rep = core.sweep_invariants(ib, 8)
    assert rep.delta_set == (1,)
    assert rep.daleth == 3
    assert rep.daleth == 2 + max(rep.delta_set)
    assert not any("catenary mismatch" in v or "c > c_mon" in v for v in rep.violations)


# ---------------------------------------------------------------------------
# finite quotient rings
# ---------------------------------------------------------------------------

def test_chain_ideals_of_power_series_quotient():
    # GF(2)[[X]] / X^3: ideals are exactly 0 < (X^2) < (X) < R
    F = FiniteField(2, 1)
    ring = make_ring(full_profile(F), 3)
    ideals = ring.enumerate_ideals()
    assert len(ideals) == 4
    sizes = sorted(len(A) for A in ideals)
    assert sizes == [0, 1, 2, 3]


def test_m_squared_in_principal_gap_ring():
    L4 = FiniteField(2, 2)
    ring = make_ring(gap_profile(L4, 1, 2), 5)
    found, witness = m_squared_in_principal(ring)
    assert found
    assert witness == ring.monomial(2)  # X^2 itself


def test_two_generated_dual_check(L16):
    assert two_generated_dual_check(FiniteField(2, 2), 1)   # [GF(4):GF(2)] = 2
    assert not two_generated_dual_check(L16, 1)             # [GF(16):GF(2)] = 4
    assert two_generated_dual_check(L16, 4)                 # [K:K] = 1


# ---------------------------------------------------------------------------
# the GF(16) local divisorial order (Remark-5.14-shaped instance)
# ---------------------------------------------------------------------------

def remark_targets(L16):
    y = L16.generator
    y3 = L16.power(y, 3)
    one = 1
    return {0, y, L16.add(one, y3), L16.add(L16.add(one, y), y3)}


def test_v_products_cover_l(remark_profile, L16):
    V = remark_profile.spaces[1]
    prods = {L16.mul(a, b) for a in V for b in V}
    assert prods == set(L16.elements())  # L = {ab : a, b in V}


def test_t_of_i_and_m_squared(remark_profile, L16):
    ring = make_ring(remark_profile, 3)
    y = L16.generator
    y3 = L16.power(y, 3)
    gens = [ring.monomial(2, y), ring.monomial(2, L16.add(1, y3))]
    I = ring.ideal_from_elements(gens)
    # T(I) = {0, y, 1+y^3, 1+y+y^3} as degree-2 coefficients
    tset = {vec >> (2 * ring.e) for vec in _span_elements(I)}
    assert tset == remark_targets(L16)
    m2 = ring.maximal_power(2)
    assert all(_in_span(x, m2) for x in _span_elements(I))  # I <= m^2
    m3 = ring.maximal_power(3)
    assert m3 == ()  # quotient taken at the annihilating power


def test_remark_ideal_is_atom(remark_profile, L16):
    ring = make_ring(remark_profile, 3)
    y = L16.generator
    y3 = L16.power(y, 3)
    I = ring.ideal_from_elements([ring.monomial(2, y), ring.monomial(2, L16.add(1, y3))])
    is_atom, witness = ideal_monoid_atom_check(ring, I)
    assert is_atom and witness is None
    # m, m^2 and I all appear among the enumerated ideals
    ideals = {tuple(A) for A in ring.enumerate_ideals()}
    assert tuple(ring.maximal_basis) in ideals
    assert tuple(ring.maximal_power(2)) in ideals
    assert tuple(I) in ideals


def test_subspace_product_scan(remark_profile, L16):
    V = remark_profile.spaces[1]
    achieved, _ = subspace_product_scan(L16, V, frozenset({0}))
    assert achieved  # S_A = {0} realizes the zero target
    # the claimed target is NOT a product of V-subspaces
    achieved, _ = subspace_product_scan(L16, V, frozenset(remark_targets(L16)))
    assert not achieved
    # the full field is: V*V spans L
    achieved, wit = subspace_product_scan(L16, V, frozenset(L16.elements()))
    assert achieved


def test_seven_case_analysis(remark_profile, L16):
    # for each nonzero a in V, a^(-1) * T(I) is not contained in V
    V = remark_profile.spaces[1]
    T = remark_targets(L16)
    for a in sorted(V - {0}):
        W = {L16.mul(L16.inv(a), t) for t in T}
        assert not W <= V, a


def test_m_inverse_constant_stabilizer(remark_profile, L16):
    # (m : m) has constant terms exactly {a : aV <= V} = K
    V = remark_profile.spaces[1]
    stab = {a for a in L16.elements() if {L16.mul(a, v) for v in V} <= V}
    assert stab == {0, 1}


def test_remark_ring_ideal_monoid_not_half_factorial(remark_profile):
    ring = make_ring(remark_profile, 3)
    verdict, witness = ideal_monoid_half_factorial(remark_profile, ring)
    assert verdict is False
    assert witness[0] == "atom-ideal-in-m2"


def test_gap_ring_ideal_monoid_fails_at_element_level():
    L4 = FiniteField(2, 2)
    prof = gap_profile(L4, 1, 2)
    verdict, witness = ideal_monoid_half_factorial(prof, make_ring(prof, 4))
    assert verdict is False and witness[0] == "element-atom"


def test_dvr_ideal_monoid_half_factorial():
    F = FiniteField(2, 1)
    prof = full_profile(F)
    verdict, witness = ideal_monoid_half_factorial(prof, make_ring(prof, 3))
    assert verdict is True and witness is None


def test_m_squared_not_in_principal_for_remark_ring(remark_profile):
    ring = make_ring(remark_profile, 3)
    found, _ = m_squared_in_principal(ring)
    assert not found

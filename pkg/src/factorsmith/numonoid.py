"""Numerical monoids <d1,...,ds> inside (N0, +).

Membership goes through the Apery set with respect to the least
generator, which also yields the Frobenius number.  The backend feeds
the core engine with atoms = minimal generators and division =
subtraction plus a membership test.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .core import MonoidBackend, make_atom_table


@dataclass(frozen=True)
class NumericalMonoid:
    generators: tuple[int, ...]  # minimal system, strictly increasing
    apery: tuple[int, ...]       # apery[r] = least member congruent to r mod generators[0]
    frobenius: int               # largest gap; -1 sentinel for N0 itself

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    def __str__(self) -> str:
        return "<" + ",".join(str(g) for g in self.generators) + ">"


def _members_up_to(gens: tuple[int, ...], horizon: int) -> list[bool]:
    member = [False] * (horizon + 1)
    member[0] = True
    for n in range(1, horizon + 1):
        for g in gens:
            if g > n:
                break
            if member[n - g]:
                member[n] = True
                break
    return member


def make(gens) -> NumericalMonoid:
    """Build a numerical monoid from any generating set.

    Normalizes to the minimal generating system.  gcd 1 is required, not
    performed: a generating set with gcd > 1 is an error.
    """
    gens = sorted(set(int(g) for g in gens))
    if not gens:
        raise ValueError("need at least one generator")
    if gens[0] <= 0:
        raise ValueError("generators must be positive")
    if math.gcd(*gens) != 1:
        raise ValueError(f"gcd of generators is {math.gcd(*gens)}, not 1")

    if gens[0] == 1:
        return NumericalMonoid((1,), (0,), -1)

    # minimality sieve: drop generators representable by the kept ones
    minimal: list[int] = []
    for g in gens:
        if minimal:
            member = _members_up_to(tuple(minimal), g)
            if member[g]:
                continue
        minimal.append(g)

    d1, ds = minimal[0], minimal[-1]
    horizon = d1 * ds  # every Apery element is below d1*ds
    member = _members_up_to(tuple(minimal), horizon)
    apery = [-1] * d1
    for n in range(horizon + 1):
        if member[n] and apery[n % d1] < 0:
            apery[n % d1] = n
    if any(a < 0 for a in apery):
        raise AssertionError("apery residue missed; horizon too small")
    frobenius = max(apery) - d1
    return NumericalMonoid(tuple(minimal), tuple(apery), frobenius)


def contains(M: NumericalMonoid, n: int) -> bool:
    if n < 0:
        raise ValueError("membership is asked for n >= 0")
    return n >= M.apery[n % M.multiplicity]


def min_delta_gcd(M: NumericalMonoid) -> int:
    """gcd of consecutive minimal-generator differences.

    For a numerical monoid (reduced, trivial units) this gcd equals
    min Delta; requires at least two generators.
    """
    g = M.generators
    if len(g) < 2:
        raise ValueError("min delta needs a non-factorial monoid (s >= 2)")
    return math.gcd(*[g[i] - g[i - 1] for i in range(1, len(g))])


def completeness_bound(M: NumericalMonoid) -> int:
    """Sweep bound 4*(frobenius + max generator) used when asserting
    exact (not lower-bound) invariant values; element-level invariants
    of a numerical monoid are eventually periodic and the suites
    double-check stability by doubling this bound."""
    return 4 * (max(M.frobenius, 0) + M.generators[-1])


class NumericalBackend(MonoidBackend):
    cancellative = True
    infinite = True

    def __init__(self, M: NumericalMonoid):
        self.monoid = M
        self._table = make_atom_table(M.generators)

    def atom_table(self):
        return self._table

    def is_unit(self, x: int) -> bool:
        return x == 0

    def canonical_key(self, x: int) -> int:
        return x

    def multiply(self, x: int, y: int) -> int:
        return x + y

    def try_divide(self, x: int, atom_index: int) -> tuple[int, ...]:
        q = x - self.monoid.generators[atom_index]
        if q >= 0 and contains(self.monoid, q):
            return (q,)
        return ()

    def atom_candidates(self, x: int):
        return [i for i, g in enumerate(self.monoid.generators) if g <= x]

    def element_sweep(self, bound: int):
        for n in range(1, bound + 1):
            if contains(self.monoid, n):
                yield n

    def exact_half_factorial(self) -> bool:
        # N0 is free (hence half-factorial); every other numerical
        # monoid has two generators a < b with a*b = b*a of lengths b, a
        return len(self.monoid.generators) == 1


def backend(M: NumericalMonoid) -> NumericalBackend:
    return NumericalBackend(M)


def max_gap_monoid(e: int) -> NumericalMonoid:
    """<e, e+1, ..., 2e-1> = {0} u N_{>=e}."""
    if e < 2:
        raise ValueError("e >= 2 required")
    return make(range(e, 2 * e))


def random_monoid(rng: random.Random, max_s: int = 4, max_d: int = 40) -> NumericalMonoid:
    """Seeded random numerical monoid with at most max_s minimal
    generators, all bounded by max_d."""
    while True:
        s = rng.randint(2, max_s)
        gens = sorted(rng.sample(range(2, max_d + 1), s))
        if math.gcd(*gens) != 1:
            continue
        M = make(gens)
        if len(M.generators) >= 2:
            return M

"""Exact ideal arithmetic in orders Z + f*omega*Z of quadratic fields.

All ideals are handled as canonical Hermite normal forms a*Z + (b+c*tau)*Z
with tau = f*omega, and every operation stays inside integer linear
algebra: colon modules are computed with denominators cleared, overrings
(I : I) are re-materialized as orders, and invertibility/stability are
decided by exact lattice comparisons.  Backends expose the monoid of all
non-zero ideals (unit-cancellative only: division can have several
quotients) and the cancellative monoid of invertible ideals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import MonoidBackend, make_atom_table


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class QuadraticField:
    """Q(sqrt(d)) for squarefree d; omega = sqrt(d) or (1+sqrt(d))/2."""

    d: int

    def __post_init__(self):
        if self.d in (0, 1) or not _is_squarefree(self.d):
            raise ValueError("d must be squarefree and not 0 or 1")

    @property
    def omega_is_half(self) -> bool:
        return self.d % 4 == 1

    @property
    def discriminant(self) -> int:
        return self.d if self.omega_is_half else 4 * self.d


@dataclass(frozen=True)
class QuadOrder:
    """O = Z + tau*Z with tau = f*omega; tau^2 = t*tau + n."""

    field: QuadraticField
    f: int

    def __post_init__(self):
        if self.f < 1:
            raise ValueError("conductor must be positive")

    @property
    def t(self) -> int:
        return self.f if self.field.omega_is_half else 0

    @property
    def n(self) -> int:
        d, f = self.field.d, self.f
        return f * f * ((d - 1) // 4) if self.field.omega_is_half else f * f * d

    @property
    def discriminant(self) -> int:
        return self.f * self.f * self.field.discriminant

    def elem_norm(self, x: int, y: int) -> int:
        """N(x + y*tau) = x^2 + t*x*y - n*y^2."""
        return x * x + self.t * x * y - self.n * y * y

    def elem_mul(self, u, v):
        x1, y1 = u
        x2, y2 = v
        return (x1 * x2 + self.n * y1 * y2, x1 * y2 + x2 * y1 + self.t * y1 * y2)

    def elem_conj(self, u):
        x, y = u
        return (x + self.t * y, -y)

    def __str__(self) -> str:
        return f"Z+{self.f}wZ(d={self.field.d})"


def make_order(d: int, f: int) -> QuadOrder:
    return QuadOrder(QuadraticField(d), f)


# ---------------------------------------------------------------------------
# 2-dimensional integer lattices in the (1, tau) basis
# ---------------------------------------------------------------------------

def _hnf2(rows):
    """HNF (a, b, c) of the lattice spanned by integer rows (x, y):
    lattice = Z*(a, 0) + Z*(b, c) with a, c > 0, c | nothing implied,
    0 <= b < a.  Raises if the span has rank < 2."""
    px, py = 0, 0
    for x, y in rows:
        if y == 0:
            continue
        if py == 0:
            px, py = x, y
        else:
            g, s, t = _extgcd(py, y)
            px, py = s * px + t * x, g
    if py == 0:
        raise ValueError("lattice has rank < 2 (zero module)")
    if py < 0:
        px, py = -px, -py
    a = 0
    for x, y in rows:
        k = y // py
        a = math.gcd(a, x - k * px)
    if a == 0:
        raise ValueError("lattice has rank < 2 (zero module)")
    a = abs(a)
    b = px % a
    return a, b, py


def _extgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class IdealHNF:
    """a*Z + (b + c*tau)*Z; canonical, tau-closure verified at creation."""

    order: QuadOrder
    a: int
    b: int
    c: int

    @property
    def norm(self) -> int:
        return self.a * self.c

    def generators(self):
        return ((self.a, 0), (self.b, self.c))

    def is_tau_closed(self) -> bool:
        O = self.order
        if self.a <= 0 or self.c <= 0 or not (0 <= self.b < self.a):
            return False
        if self.a % self.c or self.b % self.c:
            return False
        return O.elem_norm(self.b, self.c) % (self.a * self.c) == 0

    def label(self) -> str:
        return f"({self.a},{self.b}+{self.c}t)"


def _make_ideal(order: QuadOrder, a: int, b: int, c: int) -> IdealHNF:
    ideal = IdealHNF(order, a, b, c)
    if not ideal.is_tau_closed():
        raise ValueError(f"module ({a},{b},{c}) is not an ideal of {order}")
    return ideal


def unit_ideal(order: QuadOrder) -> IdealHNF:
    return IdealHNF(order, 1, 0, 1)


def ideal_from_generators(order: QuadOrder, gens) -> IdealHNF:
    """Canonical HNF of the ideal generated by elements x + y*tau."""
    rows = []
    for x, y in gens:
        if x == 0 and y == 0:
            continue
        rows.append((x, y))
        # tau * (x + y*tau) = y*n + (x + y*t) * tau
        rows.append((y * order.n, x + y * order.t))
    if not rows:
        raise ValueError("zero module")
    a, b, c = _hnf2(rows)
    return _make_ideal(order, a, b, c)


def principal_ideal(order: QuadOrder, x: int, y: int = 0) -> IdealHNF:
    return ideal_from_generators(order, [(x, y)])


def mul(I: IdealHNF, J: IdealHNF) -> IdealHNF:
    if I.order != J.order:
        raise ValueError("ideals of different orders")
    O = I.order
    rows = []
    for g in I.generators():
        for h in J.generators():
            rows.append(O.elem_mul(g, h))
    a, b, c = _hnf2(rows)
    return _make_ideal(O, a, b, c)


def ideal_contains(J: IdealHNF, I: IdealHNF) -> bool:
    """J >= I as lattices."""
    if I.c % J.c:
        return False
    if I.a % J.a:
        return False
    return (I.b - (I.c // J.c) * J.b) % J.a == 0


def ideal_pow(I: IdealHNF, k: int) -> IdealHNF:
    out = unit_ideal(I.order)
    for _ in range(k):
        out = mul(out, I)
    return out


# ---------------------------------------------------------------------------
# fractional modules and colon arithmetic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FractionalModule:
    """(1/den) * (a*Z + (b + c*tau)*Z), normalized so gcd(a, b, c, den) = 1."""

    den: int
    a: int
    b: int
    c: int

    def key(self):
        return (self.den, self.a, self.b, self.c)


def _frac(den: int, a: int, b: int, c: int) -> FractionalModule:
    g = math.gcd(math.gcd(a, b), math.gcd(c, den))
    den, a, b, c = den // g, a // g, (b // g) % (a // g), c // g
    return FractionalModule(den, a, b, c)


def _frac_from_rows(rows, den: int) -> FractionalModule:
    a, b, c = _hnf2(rows)
    return _frac(den, a, b, c)


def _frac_dual(m: FractionalModule) -> FractionalModule:
    # dual of (1/den) L is den * dual(L); dual(L) = (1/(a*c)) <(c,-b),(0,a)>
    a, b, c = _hnf2([(m.c, -m.b), (0, m.a)])
    return _frac(m.a * m.c, a * m.den, b * m.den, c * m.den)


def _frac_sum(m1: FractionalModule, m2: FractionalModule) -> FractionalModule:
    den = m1.den * m2.den // math.gcd(m1.den, m2.den)
    s1, s2 = den // m1.den, den // m2.den
    rows = [
        (m1.a * s1, 0),
        (m1.b * s1, m1.c * s1),
        (m2.a * s2, 0),
        (m2.b * s2, m2.c * s2),
    ]
    return _frac_from_rows(rows, den)


def _frac_intersect(m1: FractionalModule, m2: FractionalModule) -> FractionalModule:
    return _frac_dual(_frac_sum(_frac_dual(m1), _frac_dual(m2)))


def _frac_mul_ideal(order: QuadOrder, m: FractionalModule, I: IdealHNF) -> FractionalModule:
    rows = []
    for g in ((m.a, 0), (m.b, m.c)):
        for h in I.generators():
            rows.append(order.elem_mul(g, h))
    return _frac_from_rows(rows, m.den)


def _frac_is_order_lattice(m: FractionalModule) -> bool:
    return m.key() == (1, 1, 0, 1)


def colon_in_field(order: QuadOrder, I: IdealHNF, J: IdealHNF) -> FractionalModule:
    """(I : J) = {x in the field : x*J <= I}, denominators cleared by
    norms of the generators of J."""
    result = None
    for g in J.generators():
        ng = order.elem_norm(*g)
        conj = order.elem_conj(g)
        rows = [order.elem_mul(conj, h) for h in I.generators()]
        if ng < 0:
            ng = -ng
            rows = [(-x, -y) for x, y in rows]
        part = _frac_from_rows(rows, ng)
        result = part if result is None else _frac_intersect(result, part)
    return result


def is_invertible(order: QuadOrder, I: IdealHNF) -> bool:
    """I * (O : I) = O."""
    inv = colon_in_field(order, unit_ideal(order), I)
    return _frac_is_order_lattice(_frac_mul_ideal(order, inv, I))


def multiplicator_order(order: QuadOrder, I: IdealHNF):
    """(I : I) materialized as the order Z + f'*omega*Z it equals.

    Returns (QuadOrder, FractionalModule); raises if the module fails to
    be a ring of that shape (which would signal an arithmetic bug)."""
    S = colon_in_field(order, I, I)
    # covolume of S in (1, tau) units is (a*c)/den^2; index [S : O] inverts it
    num = S.den * S.den
    den_idx = S.a * S.c
    if num % den_idx:
        raise ValueError("(I:I) is not an overring of finite index")
    index = num // den_idx
    if order.f % index:
        raise ValueError("(I:I) index does not divide the conductor")
    f_prime = order.f // index
    expected = _frac(index, index, 0, 1)  # Z + (tau/index)Z = Z + f'*omega*Z
    if S.key() != expected.key():
        raise ValueError("(I:I) fails ring-closure verification")
    return QuadOrder(order.field, f_prime), S


def rebase_ideal(sub: QuadOrder, sup: QuadOrder, I: IdealHNF) -> IdealHNF:
    """Rewrite an ideal of ``sub`` as an ideal of the overring ``sup``
    (tau_sub = (f/f') * tau_sup)."""
    scale = sub.f // sup.f
    rows = []
    for x, y in I.generators():
        rows.append((x, y * scale))
        rows.append(sup.elem_mul((x, y * scale), (0, 1)))
    a, b, c = _hnf2(rows)
    return _make_ideal(sup, a, b, c)


def is_stable(order: QuadOrder, I: IdealHNF) -> bool:
    """Invertible as an ideal of the overring (I : I)."""
    over, _ = multiplicator_order(order, I)
    J = rebase_ideal(order, over, I)
    return is_invertible(over, J)


def stabilizing_element(order: QuadOrder, I: IdealHNF, span: int = 4):
    """Search a small element x in I with I^2 = x*I; None if not found
    within the coefficient span."""
    I2 = mul(I, I)
    for u in range(-span, span + 1):
        for v in range(-span, span + 1):
            x = (u * I.a + v * I.b, v * I.c)
            if x == (0, 0):
                continue
            try:
                xI = mul(principal_ideal(order, *x), I)
            except ValueError:
                continue
            if xI == I2:
                return x
    return None


# ---------------------------------------------------------------------------
# enumeration and prime structure
# ---------------------------------------------------------------------------

def enumerate_ideals_of_norm(order: QuadOrder, n: int):
    """All ideals with norm exactly n: c^2 | n, a = n/c, b a multiple of c
    in [0, a) with a*c dividing N(b + c*tau)."""
    out = []
    t, nn = order.t, order.n
    c = 1
    while c * c <= n:
        if n % (c * c) == 0:
            a = n // c
            ac = a * c
            tc = t * c
            base = (-nn * c * c) % ac
            for b in range(0, a, c):
                if (b * b + tc * b + base) % ac == 0:
                    out.append(IdealHNF(order, a, b, c))
        c += 1
    out.sort(key=lambda I: (I.a, I.b, I.c))
    return out


def enumerate_ideals(order: QuadOrder, norm_bound: int):
    """All ideals of norm at most the bound, sorted by (norm, a, b, c)."""
    out = []
    for n in range(1, norm_bound + 1):
        out.extend(enumerate_ideals_of_norm(order, n))
    out.sort(key=lambda I: (I.norm, I.a, I.b, I.c))
    return out


@dataclass(frozen=True)
class SplittingType:
    p: int
    kind: str  # split | inert | ramified

    def __str__(self) -> str:
        return f"{self.p}:{self.kind}"


def splitting_type(order: QuadOrder, p: int) -> SplittingType:
    """Behavior of p in the field, via the Kronecker symbol of the field
    discriminant."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    dk = order.field.discriminant
    if p == 2:
        if dk % 2 == 0:
            kind = "ramified"
        elif dk % 8 == 1:
            kind = "split"
        else:
            kind = "inert"
    else:
        r = dk % p
        if r == 0:
            kind = "ramified"
        else:
            ls = pow(r, (p - 1) // 2, p)
            kind = "split" if ls == 1 else "inert"
    return SplittingType(p, kind)


def pi_bijective(order: QuadOrder) -> bool:
    """The contraction map from maximal ideals of the maximal order to
    maximal ideals of O is bijective iff no conductor prime splits."""
    f = order.f
    p = 2
    while p <= f:
        if f % p == 0 and is_prime(p):
            if splitting_type(order, p).kind == "split":
                return False
        p += 1
    return True


def conductor_exponent(order: QuadOrder, p: int) -> int:
    """Exponent of the finitely primary local monoid at a conductor prime:
    max over primes q over p of v_q(f * maximal order)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if order.f % p:
        raise ValueError(f"{p} does not divide the conductor {order.f}")
    e = 0
    f = order.f
    while f % p == 0:
        e += 1
        f //= p
    ramification = 2 if splitting_type(order, p).kind == "ramified" else 1
    return e * ramification


def maximal_ideals_over(order: QuadOrder, p: int):
    """Maximal ideals of O containing p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    roots = [b for b in range(p) if order.elem_norm(b, 1) % p == 0]
    if not roots:
        return [principal_ideal(order, p)]  # inert: pO is maximal
    return [_make_ideal(order, p, (-b) % p, 1) for b in sorted(set(roots))]


# ---------------------------------------------------------------------------
# backends
# ---------------------------------------------------------------------------

class _IdealBackendBase(MonoidBackend):
    infinite = True

    def __init__(self, order: QuadOrder, norm_bound: int, elements):
        self.order = order
        self.norm_bound = norm_bound
        self._elements = elements  # sorted proper ideals
        self._by_norm: dict[int, list[IdealHNF]] = {}
        for I in elements:
            self._by_norm.setdefault(I.norm, []).append(I)
        atoms = [I for I in elements if self._is_atom(I)]
        self._atom_index = {I: i for i, I in enumerate(atoms)}
        self._table = make_atom_table(atoms, tuple(I.label() for I in atoms))

    def supersets(self, I: IdealHNF):
        out = []
        for d in _divisors(I.norm):
            for J in self._by_norm.get(d, ()):
                if ideal_contains(J, I):
                    out.append(J)
        return out

    def atom_table(self):
        return self._table

    def is_unit(self, x: IdealHNF) -> bool:
        return x.norm == 1

    def canonical_key(self, x: IdealHNF):
        return (x.a, x.b, x.c)

    def multiply(self, x, y):
        return mul(x, y)

    def atom_candidates(self, x):
        out = []
        for d in _divisors(x.norm):
            for J in self._by_norm.get(d, ()):
                idx = self._atom_index.get(J)
                if idx is not None and ideal_contains(J, x):
                    out.append(idx)
        return sorted(out)

    def element_sweep(self, bound: int):
        for I in self._elements:
            if I.norm <= bound:
                yield I

    def in_window(self, x, bound: int) -> bool:
        return x.norm <= bound


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return tuple(sorted(out))


class IdealMonoidBackend(_IdealBackendBase):
    """All non-zero ideals with norm <= bound; unit-cancellative only,
    so division returns every quotient."""

    cancellative = False

    def __init__(self, order: QuadOrder, norm_bound: int):
        elements = [I for I in enumerate_ideals(order, norm_bound) if I.norm > 1]
        super().__init__(order, norm_bound, elements)

    def _is_atom(self, I: IdealHNF) -> bool:
        for B in self.supersets(I):
            if B.norm == 1 or B == I:
                continue
            for C in self.supersets(I):
                if C.norm == 1 or C == I:
                    continue
                if mul(B, C) == I:
                    return False
        # factors with one of them equal to I would force the other to be O
        return True

    def try_divide(self, x, atom_index: int):
        A = self._table.elements[atom_index]
        out = []
        if A == x:
            out.append(unit_ideal(self.order))
        for B in self.supersets(x):
            if mul(A, B) == x:
                out.append(B)
        return tuple(out)


class InvertibleIdealBackend(_IdealBackendBase):
    """Invertible ideals with norm <= bound (cancellative, divisor-closed
    inside the full ideal monoid).  Optionally restricted to the
    p-primary component at a prime, which realizes the local monoid of
    principal ideals of the localization."""

    cancellative = True

    def __init__(self, order: QuadOrder, norm_bound: int, p_primary: int | None = None):
        self.p_primary = p_primary
        if p_primary is None:
            candidates = enumerate_ideals(order, norm_bound)
        else:
            candidates = []
            n = p_primary
            while n <= norm_bound:
                candidates.extend(enumerate_ideals_of_norm(order, n))
                n *= p_primary
        elements = [I for I in candidates if I.norm > 1 and is_invertible(order, I)]
        elements.sort(key=lambda I: (I.norm, I.a, I.b, I.c))
        super().__init__(order, norm_bound, elements)

    def _is_atom(self, I: IdealHNF) -> bool:
        for B in self.supersets(I):
            if B.norm in (1, I.norm):
                continue
            Q = self._quotient(I, B)
            if Q is not None and Q.norm > 1:
                return False
        return True

    def _quotient(self, I: IdealHNF, B: IdealHNF):
        q = colon_in_field(self.order, I, B)
        if q.den != 1:
            return None
        Q = IdealHNF(self.order, q.a, q.b, q.c)
        if not Q.is_tau_closed():
            return None
        if mul(B, Q) == I:
            return Q
        return None

    def try_divide(self, x, atom_index: int):
        A = self._table.elements[atom_index]
        if x.norm % A.norm:
            return ()
        Q = self._quotient(x, A)
        if Q is None:
            return ()
        return (Q if Q.norm > 1 else unit_ideal(self.order),)


def ideal_backend(order: QuadOrder, norm_bound: int) -> IdealMonoidBackend:
    return IdealMonoidBackend(order, norm_bound)


def invertible_backend(order: QuadOrder, norm_bound: int) -> InvertibleIdealBackend:
    return InvertibleIdealBackend(order, norm_bound)


def local_component_backends(order: QuadOrder, p: int, norm_bound: int):
    """Backends of the p-primary components of the full ideal monoid,
    keyed by the maximal ideal over p."""
    maximals = maximal_ideals_over(order, p)
    candidates = []
    n = p
    while n <= norm_bound:
        candidates.extend(enumerate_ideals_of_norm(order, n))
        n *= p
    out = {}
    for m in maximals:
        others = [m2 for m2 in maximals if m2 != m]
        elements = [
            I
            for I in candidates
            if ideal_contains(m, I) and not any(ideal_contains(m2, I) for m2 in others)
        ]
        elements.sort(key=lambda I: (I.norm, I.a, I.b, I.c))
        backend = IdealMonoidBackend.__new__(IdealMonoidBackend)
        _IdealBackendBase.__init__(backend, order, norm_bound, elements)
        out[m] = backend
    return out


def local_component_backend(order: QuadOrder, p: int, norm_bound: int):
    """The unique p-primary component; error when p splits away from the
    conductor and two components exist."""
    components = local_component_backends(order, p, norm_bound)
    if len(components) != 1:
        raise ValueError(
            f"{p} has {len(components)} maximal ideals over it; "
            "pick a component from local_component_backends"
        )
    return next(iter(components.values()))


def invertible_local_backend(order: QuadOrder, p: int, norm_bound: int) -> InvertibleIdealBackend:
    """Invertible p-primary ideals: the conductor-local principal component."""
    return InvertibleIdealBackend(order, norm_bound, p_primary=p)

"""Subrings of L[[X]] cut out by per-degree coefficient subspaces.

A coefficient profile fixes K-subspaces S_0 = K, S_1, ..., and the ring
R = S_0 + S_1 X + S_2 X^2 + ... where S_i = L from the conductor degree
alpha on.  Classical shapes: K + X^n L[[X]] (gap profiles), and
K + VX + X^2 L[[X]] with V a 3-dimensional subspace of GF(16).

Two exact finite representations drive everything:

* elements of the multiplicative monoid R* are pairs (valuation v,
  unit part mod X^d) with d >= alpha.  Because X^alpha L[[X]] lies in R,
  any factorization of the truncation lifts to an exact factorization,
  so factorization data per element is exact, not windowed.

* non-zero ideals of R are pairs (v, W) with W a K-subspace of the
  alpha-wide coefficient window: the ideal is W + X^(v+alpha) L[[X]]
  (successive approximation via the conductor), and ideal products
  reduce to truncated window products.

Finite quotient rings R / X^N L[[X]] with complete subspace-level ideal
enumeration provide the independent second route used by the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import MonoidBackend, make_atom_table
from .gf import FiniteField


# ---------------------------------------------------------------------------
# coefficient profiles
# ---------------------------------------------------------------------------

def k_span(field: FiniteField, k: int, elements) -> frozenset[int]:
    """K-subspace of L spanned by the given field elements."""
    scalars = field.subfield_elements(k)
    acc = {0}
    frontier = [0]
    gens = [field.mul(s, g) for s in scalars for g in elements]
    while frontier:
        nxt = []
        for base in frontier:
            for g in gens:
                v = field.add(base, g)
                if v not in acc:
                    acc.add(v)
                    nxt.append(v)
        frontier = nxt
    return frozenset(acc)


class ProfileClosureError(ValueError):
    """Profile spaces fail S_i * S_j <= S_{i+j}; carries the offending pair."""

    def __init__(self, i: int, j: int):
        super().__init__(f"profile not ring-closed: S_{i} * S_{j} escapes S_{i + j}")
        self.pair = (i, j)


@dataclass(frozen=True)
class CoefficientProfile:
    """Per-degree coefficient subspaces of R inside L[[X]].

    ``spaces`` lists S_0 .. S_{alpha-1}; S_i = L for every i >= alpha.
    """

    field: FiniteField
    k: int
    spaces: tuple[frozenset[int], ...]

    @property
    def alpha(self) -> int:
        return len(self.spaces)

    def space(self, i: int) -> frozenset[int]:
        if i < self.alpha:
            return self.spaces[i]
        return frozenset(self.field.elements())

    @property
    def min_valuation(self) -> int:
        """Least valuation of a non-unit of R (least i >= 1 with S_i != 0)."""
        for i in range(1, self.alpha):
            if len(self.spaces[i]) > 1:
                return i
        return max(self.alpha, 1)

    def describe(self) -> str:
        names = []
        for i, s in enumerate(self.spaces):
            if len(s) == 1:
                names.append("0")
            elif s == frozenset(self.field.subfield_elements(self.k)):
                names.append("K")
            elif len(s) == self.field.order:
                names.append("L")
            else:
                names.append(f"V(dim 2^{len(s).bit_length() - 1})")
        names.append("L...")
        return "+".join(f"{n}X^{i}" if i else n for i, n in enumerate(names))


def make_profile(field: FiniteField, k: int, entries) -> CoefficientProfile:
    """Validate and normalize a list of per-degree subspaces.

    S_0 must be the subfield GF(p^k); ring closure S_i S_j <= S_{i+j} is
    verified for all window pairs, with the offending pair reported.
    Trailing full spaces are trimmed so alpha = len(spaces).
    """
    K = frozenset(field.subfield_elements(k))
    entries = [frozenset(s) for s in entries]
    if not entries or entries[0] != K:
        raise ValueError("profile must start with S_0 = K")
    full = frozenset(field.elements())
    while entries and entries[-1] == full:
        entries.pop()
    if entries and entries[0] != K:
        raise ValueError("S_0 = K = L requires an empty window")
    alpha = len(entries)
    for i in range(alpha):
        for j in range(i, alpha):
            if i + j >= alpha:
                continue
            prods = {field.mul(a, b) for a in entries[i] for b in entries[j]}
            if not prods <= entries[i + j]:
                raise ProfileClosureError(i, j)
    for i, s in enumerate(entries):
        if k_span(field, k, s) != s:
            raise ValueError(f"S_{i} is not a K-subspace")
    return CoefficientProfile(field, k, tuple(entries))


def gap_profile(field: FiniteField, k: int, n: int) -> CoefficientProfile:
    """K + X^n L[[X]]."""
    if n < 1:
        raise ValueError("n >= 1")
    K = frozenset(field.subfield_elements(k))
    zero = frozenset({0})
    return make_profile(field, k, [K] + [zero] * (n - 1))


def full_profile(field: FiniteField) -> CoefficientProfile:
    """L[[X]] itself (discrete valuation ring; empty window)."""
    return make_profile(field, field.e, [frozenset(field.elements())])


def subspace_profile(field: FiniteField, k: int, generators) -> CoefficientProfile:
    """K + VX + X^2 L[[X]] with V the K-span of the given generators."""
    K = frozenset(field.subfield_elements(k))
    V = k_span(field, k, generators)
    return make_profile(field, k, [K, V])


def semigroup_ring_profile(field: FiniteField, monoid) -> CoefficientProfile:
    """K[[H]] for a numerical monoid H: S_i = K when i in H, else 0 (L = K)."""
    from . import numonoid

    K = frozenset(field.elements())
    zero = frozenset({0})
    horizon = max(monoid.frobenius + 1, 1)
    entries = [K if numonoid.contains(monoid, i) else zero for i in range(horizon)]
    return make_profile(field, field.e, entries)


def parse_profile(field: FiniteField, k: int, text: str) -> CoefficientProfile:
    """CLI syntax "K,V(1,y,y2),L": K, L, 0, or V(<elements>) per degree."""
    entries = []
    K = frozenset(field.subfield_elements(k))
    full = frozenset(field.elements())
    for raw in _split_profile(text):
        token = raw.strip()
        if token == "K":
            entries.append(K)
        elif token == "L":
            entries.append(full)
        elif token == "0":
            entries.append(frozenset({0}))
        elif token.startswith("V(") and token.endswith(")"):
            gens = [field.element_from_poly(t) for t in token[2:-1].split(",")]
            entries.append(k_span(field, k, gens))
        else:
            raise ValueError(f"cannot parse profile entry {token!r}")
    return make_profile(field, k, entries)


def _split_profile(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return parts


# ---------------------------------------------------------------------------
# truncated series helpers (coefficient tuples over L)
# ---------------------------------------------------------------------------

def series_mul(field: FiniteField, a: tuple[int, ...], b: tuple[int, ...], d: int) -> tuple[int, ...]:
    out = [0] * d
    for i, ai in enumerate(a):
        if ai and i < d:
            for j, bj in enumerate(b):
                if bj and i + j < d:
                    out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    return tuple(out)


def series_inv(field: FiniteField, a: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Inverse of a unit power series mod X^d."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    inv0 = field.inv(a[0])
    out = [inv0] + [0] * (d - 1)
    for m in range(1, d):
        s = 0
        for i in range(1, m + 1):
            ai = a[i] if i < len(a) else 0
            if ai:
                s = field.add(s, field.mul(ai, out[m - i]))
        out[m] = field.neg(field.mul(inv0, s))
    return tuple(out)


# ---------------------------------------------------------------------------
# element monoid backend: (valuation, unit part mod X^d)
# ---------------------------------------------------------------------------

class ElementBackend(MonoidBackend):
    """Multiplicative monoid of nonzero elements of a profile ring.

    An element is (v, u) with u the unit part kept mod X^d, d >= alpha.
    This identification is a monoid congruence whose factorizations
    coincide with those of R (conductor lifting), so every per-element
    invariant is exact; only the sweep range is a window.
    """

    cancellative = True
    infinite = True

    def __init__(self, profile: CoefficientProfile, unit_digits: int | None = None):
        self.profile = profile
        self.field = profile.field
        self.digits = profile.alpha if unit_digits is None else unit_digits
        if self.digits < profile.alpha:
            raise ValueError("unit precision below the conductor degree")
        self._unit_digit_spaces = tuple(
            tuple(sorted(profile.space(j))) for j in range(self.digits)
        )
        self._level_cache: dict[int, tuple] = {}
        self._canon_cache: dict = {}
        self._atoms = self._enumerate_atoms()
        labels = tuple(self._label(a) for a in self._atoms)
        self._table = make_atom_table(self._atoms, labels)

    # -- representation ----------------------------------------------------
    def _label(self, x) -> str:
        v, u = x
        return f"X^{v}*{list(u)}"

    def member(self, v: int, u: tuple[int, ...]) -> bool:
        if v < 1:
            return False
        if self.digits and u[0] == 0:
            return False
        for j in range(self.digits):
            if u[j] not in self.profile.space(v + j):
                return False
        return True

    def _coset_reps(self, ambient, subgroup) -> tuple[int, ...]:
        """Minimal representative of each coset of ``subgroup`` in ``ambient``."""
        reps = []
        seen: set[int] = set()
        for a in sorted(ambient):
            if a not in seen:
                reps.append(a)
                seen.update(self.field.add(a, s) for s in subgroup)
        return tuple(reps)

    def canonical(self, v: int, u: tuple[int, ...]):
        """Lexicographic minimum of the associate class of (v, u).

        The unit action is triangular in the coefficient digits, so a
        greedy digit-by-digit normalization reaches the orbit minimum:
        scale by the best constant in K^*, then clear each higher digit
        to the least member of its coset u_0 * S_j.
        """
        if not self.digits:
            return (v, ())
        key = (v, u)
        hit = self._canon_cache.get(key)
        if hit is not None:
            return hit
        f = self.field
        kstar = [s for s in f.subfield_elements(self.profile.k) if s]
        best0 = min(f.mul(u[0], s) for s in kstar)
        scale = next(s for s in kstar if f.mul(u[0], s) == best0)
        cur = [f.mul(c, scale) for c in u]
        for j in range(1, self.digits):
            coset = [f.add(cur[j], f.mul(cur[0], s)) for s in self._unit_digit_spaces[j]]
            target = min(coset)
            s_j = self._unit_digit_spaces[j][coset.index(target)]
            if s_j:
                # multiply the running series by (1 + s_j X^j)
                for i in range(j, self.digits):
                    cur[i] = f.add(cur[i], f.mul(cur[i - j], s_j))
        result = (v, tuple(cur))
        self._canon_cache[key] = result
        return result

    def _enumerate_level(self, v: int):
        """Canonical associate-class representatives at valuation v.

        Digit 0 runs over the K^*-orbit minima of S_v \\ {0}; digit j over
        the minimal coset representatives of u_0*S_j inside S_{v+j}.  Each
        tuple assembled this way is already the lex-min of its orbit, and
        distinct tuples lie in distinct orbits.
        """
        cached = self._level_cache.get(v)
        if cached is not None:
            return cached
        if not self.digits:
            out = ((v, ()),)
            self._level_cache[v] = out
            return out
        f = self.field
        kstar = [s for s in f.subfield_elements(self.profile.k) if s]
        lead_space = sorted(set(self.profile.space(v)) - {0})
        leads = []
        seen: set[int] = set()
        for a in lead_space:
            if a not in seen:
                leads.append(a)
                seen.update(f.mul(a, s) for s in kstar)
        out = []
        for u0 in leads:
            digit_choices = [(u0,)]
            for j in range(1, self.digits):
                subgroup = {f.mul(u0, s) for s in self._unit_digit_spaces[j]}
                ambient = self.profile.space(v + j)
                digit_choices.append(self._coset_reps(ambient, subgroup))
            for tail in itertools.product(*digit_choices):
                out.append((v, tail))
        result = tuple(out)
        self._level_cache[v] = result
        return result

    def _enumerate_atoms(self):
        alpha = self.profile.alpha
        if alpha == 0:
            return tuple(self._enumerate_level(1))
        cap = 2 * alpha - 1
        atoms = []
        for v in range(1, cap + 1):
            for x in self._enumerate_level(v):
                if self._is_atom(x):
                    atoms.append(x)
        return tuple(atoms)

    def _is_atom(self, x) -> bool:
        v, u = x
        for v1 in range(1, v):
            v2 = v - v1
            for _, u1 in self._enumerate_level(v1):
                u2 = series_mul(self.field, u, series_inv(self.field, u1, self.digits), self.digits) if self.digits else ()
                if self.member(v2, u2):
                    return False
        return True

    # -- backend contract ---------------------------------------------------
    def atom_table(self):
        return self._table

    def is_unit(self, x) -> bool:
        return x[0] == 0

    def canonical_key(self, x):
        return x

    def multiply(self, x, y):
        v = x[0] + y[0]
        if not self.digits:
            return (v, ())
        u = series_mul(self.field, x[1], y[1], self.digits)
        if v == 0:
            return (0, u)
        return self.canonical(v, u)

    def try_divide(self, x, atom_index: int):
        v, u = x
        v1, u1 = self._table.elements[atom_index]
        v2 = v - v1
        if v2 < 0:
            return ()
        if self.digits:
            u2 = series_mul(self.field, u, series_inv(self.field, u1, self.digits), self.digits)
        else:
            u2 = ()
        if v2 == 0:
            ok = all(u2[j] in self.profile.space(j) for j in range(self.digits))
            return ((0, u2),) if ok else ()
        if self.member(v2, u2):
            return (self.canonical(v2, u2),)
        return ()

    def atom_candidates(self, x):
        v = x[0]
        return [i for i, (va, _) in enumerate(self._table.elements) if va <= v]

    def element_sweep(self, bound: int):
        for v in range(1, bound + 1):
            yield from self._enumerate_level(v)

    def level(self, v: int):
        return self._enumerate_level(v)

    def exact_half_factorial(self) -> bool:
        return all(v == 1 for v, _ in self._table.elements)


def element_backend(profile: CoefficientProfile, val_bound: int = 0, unit_digits: int | None = None) -> ElementBackend:
    """Backend over R*; val_bound is only a sweep default, invariants per
    element are exact at any valuation."""
    return ElementBackend(profile, unit_digits)


def is_half_factorial_rank1(backend: ElementBackend):
    """Half-factoriality decision for a rank-one finitely primary element
    monoid: true iff every atom has valuation 1 (atoms live below twice
    the conductor degree, so the atom table is a complete certificate).
    Returns (verdict, witness atom of valuation >= 2 or None)."""
    for atom in backend.atom_table().elements:
        if atom[0] >= 2:
            return False, atom
    return True, None


def value_monoid_values(backend: ElementBackend, bound: int) -> tuple[int, ...]:
    """Valuations realized by elements of R* up to the bound."""
    out = sorted({v for v, _ in backend.element_sweep(bound)})
    return tuple(out)


# ---------------------------------------------------------------------------
# GF(2) window linear algebra (packed bit vectors)
# ---------------------------------------------------------------------------

def _echelon(vectors) -> tuple[int, ...]:
    """Reduced echelon basis of a GF(2)-span of packed int vectors."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    # full reduction for canonical form
    for i in range(len(basis)):
        for j in range(len(basis)):
            if i != j:
                r = basis[i] ^ basis[j]
                if r < basis[i]:
                    basis[i] = r
    basis.sort(reverse=True)
    return tuple(basis)


def _in_span(v: int, basis: tuple[int, ...]) -> bool:
    for b in basis:
        v = min(v, v ^ b)
    return v == 0


def _span_size(basis) -> int:
    return 1 << len(basis)


def _span_elements(basis):
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def _all_subspaces(space_basis: tuple[int, ...]):
    """All GF(2)-subspaces of the span of ``space_basis``.

    Enumerates reduced echelon forms in the coordinates of the given
    basis, then maps back to packed vectors.
    """
    m = len(space_basis)
    if m > 7:
        raise ValueError(
            f"subspace lattice of a {m}-dimensional space is too large; "
            "use a generator-closure strategy instead"
        )

    def coords_to_vec(mask: int) -> int:
        v = 0
        for i in range(m):
            if mask >> i & 1:
                v ^= space_basis[i]
        return v

    subspaces = [()]
    # echelon forms over F_2^m: choose pivot columns then free entries
    for r in range(1, m + 1):
        for pivots in itertools.combinations(range(m), r):
            free_positions = []
            for row, p in enumerate(pivots):
                for col in range(p + 1, m):
                    if col not in pivots:
                        free_positions.append((row, col))
            for bits in range(1 << len(free_positions)):
                rows = [1 << p for p in pivots]
                for idx, (row, col) in enumerate(free_positions):
                    if bits >> idx & 1:
                        rows[row] |= 1 << col
                subspaces.append(_echelon([coords_to_vec(r_) for r_ in rows]))
    return subspaces


# ---------------------------------------------------------------------------
# ideal monoid backend: (valuation, window subspace)
# ---------------------------------------------------------------------------

class IdealBackend(MonoidBackend):
    """Monoid of non-zero ideals of a profile ring over GF(2^e) / GF(2).

    An ideal is (v, W): W a K-subspace of the alpha-wide window packed as
    echelon bit-vector tuples, the ideal being W + X^(v+alpha) L[[X]].
    Products are exact (window truncation captures them fully), so the
    monoid is represented faithfully; the sweep bound caps valuations.

    ``full_levels`` enumerates every subspace per level (window dimension
    at most 6); otherwise levels hold the product-closed subfamily of
    principal ideals (one-dimensional W; gap profiles only) plus the
    full window, which carries the distance- and daleth-witnesses.
    """

    cancellative = False
    infinite = True

    def __init__(self, profile: CoefficientProfile, val_bound: int, full_levels: bool = False):
        if profile.field.p != 2 or profile.k != 1:
            raise NotImplementedError("ideal backend implemented for K = GF(2) towers")
        self.profile = profile
        self.field = profile.field
        self.alpha = profile.alpha
        self.e = profile.field.e
        self.width = self.alpha * self.e
        self.val_bound = val_bound
        self.full_levels = full_levels
        if not full_levels:
            for i in range(1, self.alpha):
                if len(profile.space(i)) > 1:
                    raise NotImplementedError(
                        "principal+full level restriction assumes a gap profile"
                    )
        elif self.width > 6:
            raise ValueError("full level enumeration capped at 6-dimensional windows")
        self.minval = profile.min_valuation
        self._is_gap = all(len(profile.space(i)) == 1 for i in range(1, self.alpha))
        self._levels: dict[int, tuple] = {}
        self._atom_flags: dict = {}
        self._unpack_cache: dict[int, tuple[int, ...]] = {}
        self._candidates_cache: dict[int, list[int]] = {}
        self._memb_cache: dict[int, tuple[int, ...]] = {}
        atoms = []
        atom_cap = 2 * self.minval - 1 if self._is_gap else val_bound
        for v in range(self.minval, min(val_bound, atom_cap) + 1):
            for x in self.level(v):
                if self.is_atom(x):
                    atoms.append(x)
        self._table = make_atom_table(atoms, tuple(f"I(v={v},dim={len(W)})+{W}" for v, W in atoms))
        # inverse unit windows of one-dimensional atoms, for fast division
        self._atom_inv: dict[int, int] = {}
        for i, (va, Wa) in enumerate(atoms):
            if len(Wa) == 1:
                coeffs = self.unpack(Wa[0])
                if coeffs[0]:
                    self._atom_inv[i] = self.pack(series_inv(self.field, coeffs, self.alpha))

    # -- window vectors -----------------------------------------------------
    def pack(self, coeffs: tuple[int, ...]) -> int:
        v = 0
        for i, c in enumerate(coeffs):
            v |= c << (i * self.e)
        return v

    def unpack(self, v: int) -> tuple[int, ...]:
        hit = self._unpack_cache.get(v)
        if hit is None:
            mask = (1 << self.e) - 1
            hit = tuple((v >> (i * self.e)) & mask for i in range(self.alpha))
            self._unpack_cache[v] = hit
        return hit

    def window_mul(self, a: int, b: int) -> int:
        ca, cb = self.unpack(a), self.unpack(b)
        return self.pack(series_mul(self.field, ca, cb, self.alpha))

    def _lead_nonzero(self, basis) -> bool:
        mask = (1 << self.e) - 1
        return any(b & mask for b in basis)

    def _membership_space(self, v: int) -> tuple[int, ...]:
        """Basis of the packed vectors allowed in the window at valuation v
        (coefficient j constrained to S_{v+j}); cached per level."""
        key = min(v, self.alpha)
        hit = self._memb_cache.get(key)
        if hit is None:
            gens = []
            for j in range(self.alpha):
                space = self.profile.space(key + j)
                for c in space:
                    if c:
                        gens.append(c << (j * self.e))
            hit = _echelon(gens)
            self._memb_cache[key] = hit
        return hit

    def _closed_under_ring(self, basis, v: int) -> bool:
        """W must absorb multiplication by the window parts of R."""
        for i in range(1, self.alpha):
            for s in self.profile.space(i):
                if not s:
                    continue
                shift_vec = s << (i * self.e)
                for w in basis:
                    prod = self.window_mul(shift_vec, w)
                    if not _in_span(prod, basis):
                        return False
        return True

    def level(self, v: int):
        """Canonical list of ideals with minimal valuation exactly v."""
        if v < self.minval:
            return ()
        key = min(v, self.alpha)
        cached = self._levels.get(key)
        if cached is None:
            space = self._membership_space(key)
            out = []
            if self.full_levels:
                for basis in _all_subspaces(space):
                    if basis and self._lead_nonzero(basis) and self._closed_under_ring(basis, key):
                        out.append(basis)
            else:
                mask = (1 << self.e) - 1
                seen = set()
                for w in _span_elements(space):
                    if w and (w & mask):
                        b = _echelon([w])
                        if b not in seen:
                            seen.add(b)
                            out.append(b)
                if space and self._lead_nonzero(space):
                    out.append(space)
                out = [b for b in out if self._closed_under_ring(b, key)]
            cached = tuple(sorted(set(out)))
            self._levels[key] = cached
        return tuple((v, W) for W in cached)

    def is_atom(self, x) -> bool:
        v, W = x
        if self._is_gap:
            # a product of two proper ideals has valuation >= 2n, and any
            # (v, W) with v >= 2n splits off the principal X^n R because
            # the unit window vector is the convolution identity
            return v < 2 * self.minval
        hit = self._atom_flags.get(x)
        if hit is not None:
            return hit
        result = True
        for v1 in range(self.minval, v - self.minval + 1):
            v2 = v - v1
            if v2 < v1:
                break
            for _, W1 in self.level(v1):
                for _, W2 in self.level(v2):
                    if _echelon([self.window_mul(a, b) for a in W1 for b in W2]) == W:
                        result = False
                        break
                if not result:
                    break
            if not result:
                break
        self._atom_flags[x] = result
        return result

    # -- backend contract ---------------------------------------------------
    UNIT = (0, ())

    def atom_table(self):
        return self._table

    def is_unit(self, x) -> bool:
        return x[0] == 0

    def canonical_key(self, x):
        return x

    def multiply(self, x, y):
        if x[0] == 0:
            return y
        if y[0] == 0:
            return x
        v = x[0] + y[0]
        if not self.full_levels:
            W1, W2 = x[1], y[1]
            if len(W1) == 1 and len(W2) == 1:
                return (v, (self.window_mul(W1[0], W2[0]),))
            # a full-window factor absorbs any lead-nonzero cofactor
            return (v, self._membership_space(v))
        W = _echelon([self.window_mul(a, b) for a in x[1] for b in y[1]])
        return (v, W)

    def try_divide(self, x, atom_index: int):
        v, W = x
        v1, W1 = self._table.elements[atom_index]
        v2 = v - v1
        if v2 == 0:
            return (self.UNIT,) if (v1, W1) == x else ()
        if v2 < self.minval:
            return ()
        if not self.full_levels:
            # restricted family: W's are one-dimensional or full, and the
            # quotient is determined (or is the whole level) directly
            if len(W1) == 1:
                if len(W) == 1:
                    # unique series quotient: w = w1 * w2 with w1 invertible
                    inv1 = self._atom_inv.get(atom_index)
                    if inv1 is None:
                        return ()
                    w2 = self.window_mul(W[0], inv1)
                    return ((v2, (w2,)),)
                cand = (v2, self._membership_space(v2))
                if self.multiply((v1, W1), cand) == x:
                    return (cand,)
                return ()
            # full atom absorbs every cofactor
            if W == self._membership_space(v):
                return self.level(v2)
            return ()
        out = []
        for cand in self.level(v2):
            if self.multiply((v1, W1), cand) == x:
                out.append(cand)
        return tuple(out)

    def atom_candidates(self, x):
        v = x[0]
        hit = self._candidates_cache.get(v)
        if hit is None:
            hit = [i for i, (va, _) in enumerate(self._table.elements) if va <= v]
            self._candidates_cache[v] = hit
        return hit

    def element_sweep(self, bound: int):
        for v in range(self.minval, bound + 1):
            yield from self.level(v)

    def in_window(self, x, bound: int) -> bool:
        return x[0] <= bound

    # -- named ideals --------------------------------------------------------
    def maximal_ideal(self):
        v = self.minval
        return (v, self._membership_space(v))

    def power_of_maximal(self, k: int):
        m = self.maximal_ideal()
        out = m
        for _ in range(k - 1):
            out = self.multiply(out, m)
        return out

    def principal_ideal(self, v: int, u: tuple[int, ...]):
        """xR for x = X^v u: span of window products of u with ring parts."""
        vec = self.pack(tuple(u[: self.alpha]) + (0,) * max(0, self.alpha - len(u)))
        gens = [vec]
        for i in range(1, self.alpha):
            for s in self.profile.space(i):
                if s:
                    gens.append(self.window_mul(s << (i * self.e), vec))
        return (v, _echelon(gens))

    def contains(self, x, y) -> bool:
        """Ideal containment x >= y (x contains y)."""
        vx, Wx = x
        vy, Wy = y
        if x == self.UNIT:
            return True
        if y == self.UNIT:
            return False
        if vy < vx:
            return False
        # compare inside a common truncation at vy + alpha
        depth = vy + self.alpha
        xs = self._absolute_span(x, depth)
        for vec in self._absolute_span(y, depth):
            if not _in_span(vec, xs):
                return False
        return True

    def _absolute_span(self, x, depth: int) -> tuple[int, ...]:
        """Span of the ideal's coefficient vectors on degrees [0, depth)."""
        v, W = x
        gens = []
        for w in W:
            vec = 0
            for j, c in enumerate(self.unpack(w)):
                if v + j < depth:
                    vec |= c << ((v + j) * self.e)
            gens.append(vec)
        for d in range(v + self.alpha, depth):
            for c in self.field.elements():
                if c:
                    gens.append(c << (d * self.e))
        return _echelon(gens)


def ideal_backend(profile: CoefficientProfile, val_bound: int, full_levels: bool = False) -> IdealBackend:
    return IdealBackend(profile, val_bound, full_levels)


# ---------------------------------------------------------------------------
# finite quotient rings R / X^N L[[X]] and complete ideal enumeration
# ---------------------------------------------------------------------------

class TruncatedRing:
    """Finite quotient R / X^N L[[X]] of a profile ring (GF(2) towers).

    Elements are packed coefficient vectors on degrees [0, N); the
    maximal ideal is the span of all positive-degree components.
    """

    def __init__(self, profile: CoefficientProfile, N: int):
        if profile.field.p != 2 or profile.k != 1:
            raise NotImplementedError("truncated rings implemented for K = GF(2) towers")
        if N < profile.alpha:
            raise ValueError("truncation must reach the conductor degree")
        self.profile = profile
        self.field = profile.field
        self.N = N
        self.e = profile.field.e
        dims = []
        gens = []
        for i in range(N):
            space = profile.space(i)
            dims.append((len(space).bit_length() - 1))
            for c in space:
                if c:
                    gens.append(c << (i * self.e))
        self.dimension = sum(dims)
        # positive-degree generators span the maximal ideal
        self.maximal_basis = _echelon([g for g in gens if g >= (1 << self.e)])
        self._ring_gens = tuple(self.maximal_basis)
        self._ideal_cache: list | None = None

    def size(self) -> int:
        return 1 << self.dimension

    def unpack(self, v: int) -> tuple[int, ...]:
        mask = (1 << self.e) - 1
        return tuple((v >> (i * self.e)) & mask for i in range(self.N))

    def pack(self, coeffs) -> int:
        v = 0
        for i, c in enumerate(coeffs):
            if i < self.N:
                v |= c << (i * self.e)
        return v

    def mul(self, a: int, b: int) -> int:
        return self.pack(series_mul(self.field, self.unpack(a), self.unpack(b), self.N))

    def elements(self):
        spaces = [sorted(self.profile.space(i)) for i in range(self.N)]
        for combo in itertools.product(*spaces):
            yield self.pack(combo)

    def monomial(self, degree: int, coeff: int = 1) -> int:
        if degree >= self.N:
            return 0
        return coeff << (degree * self.e)

    # -- ideals -------------------------------------------------------------
    def is_ideal(self, basis) -> bool:
        for g in self._ring_gens:
            for w in basis:
                if not _in_span(self.mul(g, w), basis):
                    return False
        return True

    def enumerate_ideals(self, cap: int = 12):
        """Every ideal of the quotient ring (subspaces of the maximal
        ideal closed under ring multiplication), zero ideal included,
        plus the whole ring.  Full subspace enumeration with echelon
        dedup; refuses spaces too large to scan."""
        if self.dimension > cap:
            raise ValueError(
                f"ring dimension {self.dimension} exceeds cap {cap}; "
                "use a generator-closure strategy instead"
            )
        if self._ideal_cache is None:
            out = [tuple(_echelon(list(self.maximal_basis) + [self.monomial(0)]))]  # the ring
            for basis in _all_subspaces(self.maximal_basis):
                if self.is_ideal(basis):
                    out.append(basis)
            self._ideal_cache = out
        return list(self._ideal_cache)

    def ideal_product(self, A, B) -> tuple[int, ...]:
        return _echelon([self.mul(a, b) for a in A for b in B])

    def ideal_from_elements(self, elements) -> tuple[int, ...]:
        gens = list(elements)
        for g in self._ring_gens:
            gens.extend(self.mul(g, x) for x in list(elements))
        # close iteratively (products may cascade)
        basis = _echelon(gens)
        while True:
            extra = []
            for g in self._ring_gens:
                for w in basis:
                    p = self.mul(g, w)
                    if not _in_span(p, basis):
                        extra.append(p)
            if not extra:
                return basis
            basis = _echelon(list(basis) + extra)

    def principal_ideal(self, x: int) -> tuple[int, ...]:
        return self.ideal_from_elements([x])

    def is_principal(self, A) -> bool:
        span = _span_elements(A)
        return any(self.principal_ideal(x) == tuple(A) for x in span if x)

    def maximal_power(self, k: int) -> tuple[int, ...]:
        out = self.maximal_basis
        for _ in range(k - 1):
            out = self.ideal_product(out, self.maximal_basis)
        return out


def make_ring(profile: CoefficientProfile, N: int) -> TruncatedRing:
    return TruncatedRing(profile, N)


# ---------------------------------------------------------------------------
# verification operations
# ---------------------------------------------------------------------------

def ideal_monoid_atom_check(ring: TruncatedRing, I):
    """Is the (preimage of the) ideal I an atom of the full ideal monoid?

    Scans every pair of proper quotient ideals (A, B) with A, B >= I for
    A*B = I.  Sound for the un-truncated ring whenever I contains the
    annihilating power of the maximal ideal: any factorization upstairs
    reduces onto one here.  Returns (is_atom, witness pair or None).
    """
    I = tuple(I)
    ideals = ring.enumerate_ideals()
    ispan = _span_elements(I)
    supersets = []
    for A in ideals:
        if not A or len(A) >= ring.dimension:
            continue  # zero ideal or the ring itself
        if all(_in_span(x, A) for x in ispan):
            supersets.append(A)
    for A in supersets:
        for B in supersets:
            if ring.ideal_product(A, B) == I:
                return False, (A, B)
    return True, None


def subspace_product_scan(field: FiniteField, V: frozenset[int], target: frozenset[int], k: int = 1):
    """Does some pair of K-subspaces S_A, S_B <= V have span(S_A*S_B) = target?

    The fast independent oracle behind the atom check: for the standard
    16-element V-lattice this is a 256-pair scan.  Returns
    (achieved, witness pair or None).
    """
    subs = _k_subspaces(field, k, V)
    for SA in subs:
        for SB in subs:
            prods = {field.mul(a, b) for a in SA for b in SB}
            if k_span(field, k, prods) == target:
                return True, (SA, SB)
    return False, None


def _k_subspaces(field: FiniteField, k: int, V: frozenset[int]):
    """All K-subspaces of the K-space V (small |V| scan)."""
    elems = sorted(V)
    subs = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for S in frontier:
            for g in elems:
                if g not in S:
                    S2 = k_span(field, k, set(S) | {g})
                    if S2 <= V and S2 not in subs:
                        subs.add(S2)
                        nxt.append(S2)
        frontier = nxt
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def ideal_monoid_half_factorial(profile: CoefficientProfile, ring: TruncatedRing):
    """Half-factoriality verdict for the ideal monoid of a local rank-one
    profile ring: the element monoid must be half-factorial and no
    non-principal atom ideal may sit inside the square of the maximal
    ideal.  Returns (verdict, witness or None); the witness is either an
    element-monoid atom of valuation >= 2 or a violating atom ideal."""
    eb = ElementBackend(profile)
    hf, witness = is_half_factorial_rank1(eb)
    if not hf:
        return False, ("element-atom", witness)
    m2 = ring.maximal_power(2)
    for A in ring.enumerate_ideals():
        if not A or len(A) >= ring.dimension:
            continue
        if all(_in_span(x, m2) for x in _span_elements(A)):
            if not ring.is_principal(A):
                is_atom, _ = ideal_monoid_atom_check(ring, A)
                if is_atom:
                    return False, ("atom-ideal-in-m2", A)
    return True, None


def two_generated_dual_check(field: FiniteField, k: int) -> bool:
    """True iff L is spanned over K by two elements, i.e. [L:K] <= 2."""
    return field.e // k <= 2 and field.e % k == 0


def m_squared_in_principal(ring: TruncatedRing):
    """Scan principal ideals xR of the quotient for m^2 <= xR.

    Returns (found, witness element or None)."""
    m2 = ring.maximal_power(2)
    m2span = _span_elements(m2)
    for x in sorted(_span_elements(ring.maximal_basis)):
        if not x:
            continue
        xr = ring.principal_ideal(x)
        if all(_in_span(v, xr) for v in m2span):
            return True, x
    return False, None

"""Generic factorization-invariant engine.

Works over any monoid backend that can answer a small divisibility
contract: recognize units, hand out a canonical key per element, divide
by an atom, and sweep its non-unit elements up to a size bound.  On top
of that the engine computes sets of factorizations, sets of lengths,
distance sets, elasticities, (monotone) catenary degrees and the daleth
invariant, and aggregates them into a deterministic report.

All arithmetic is exact (ints / Fractions); every result is reproducible
from (backend, bound).
"""

from __future__ import annotations

import bisect
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Iterable, Iterator, Sequence


class SweepOverflowError(RuntimeError):
    """Raised when a factorization search visits more states than allowed.

    Signals a mis-bounded or non-BF backend rather than a recoverable
    condition.
    """


class AtomTableMismatchError(ValueError):
    """Raised when factorizations over different atom tables are mixed."""


_TABLE_COUNTER = itertools.count(1)


@dataclass(frozen=True)
class AtomTable:
    """Ordered table of atoms (one representative per associate class).

    Indices are dense 0..k-1 and stable for the lifetime of the backend.
    The token ties factorizations to the table that produced them.
    """

    elements: tuple
    labels: tuple[str, ...]
    token: int

    def __len__(self) -> int:
        return len(self.elements)

    def label(self, i: int) -> str:
        return self.labels[i]


def make_atom_table(elements: Sequence, labels: Sequence[str] | None = None) -> AtomTable:
    elements = tuple(elements)
    if labels is None:
        labels = tuple(str(e) for e in elements)
    else:
        labels = tuple(labels)
    if len(labels) != len(elements):
        raise ValueError("labels/elements length mismatch")
    return AtomTable(elements, labels, next(_TABLE_COUNTER))


@dataclass(frozen=True, order=True)
class Factorization:
    """A multiset of atoms, stored as a sorted sparse exponent vector.

    ``exps`` maps atom index -> positive multiplicity, sorted by index.
    """

    table_token: int
    exps: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return sum(m for _, m in self.exps)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.exps)

    def bump(self, index: int) -> "Factorization":
        """Multiply by one copy of atom ``index`` (index <= all present)."""
        if self.exps and self.exps[0][0] == index:
            head = ((index, self.exps[0][1] + 1),)
            return Factorization(self.table_token, head + self.exps[1:])
        return Factorization(self.table_token, ((index, 1),) + self.exps)

    def label(self, table: AtomTable) -> str:
        if not self.exps:
            return "1"
        parts = []
        for i, m in self.exps:
            parts.append(table.label(i) if m == 1 else f"{table.label(i)}^{m}")
        return "*".join(parts)


def distance(z1: Factorization, z2: Factorization) -> int:
    """Distance between two factorizations: cancel the common part and
    take the larger residual length.  Symmetric; zero iff equal."""
    if z1.table_token != z2.table_token:
        raise AtomTableMismatchError("factorizations use different atom tables")
    r1 = r2 = 0
    a, b = z1.exps, z2.exps
    i = j = 0
    while i < len(a) and j < len(b):
        ia, ma = a[i]
        ib, mb = b[j]
        if ia == ib:
            if ma > mb:
                r1 += ma - mb
            else:
                r2 += mb - ma
            i += 1
            j += 1
        elif ia < ib:
            r1 += ma
            i += 1
        else:
            r2 += mb
            j += 1
    r1 += sum(m for _, m in a[i:])
    r2 += sum(m for _, m in b[j:])
    return max(r1, r2)


# ---------------------------------------------------------------------------
# backend contract
# ---------------------------------------------------------------------------

class MonoidBackend:
    """Behavioral contract the engine consumes.

    Subclasses supply:

    * ``atom_table()`` -- ordered associate-class representatives;
    * ``is_unit(x)``;
    * ``canonical_key(x)`` -- hashable equality/memoization token;
    * ``multiply(x, y)``;
    * ``try_divide(x, i)`` -- every quotient q with atom_i * q = x, as a
      tuple in deterministic order (empty if the atom does not divide x;
      at most one entry for cancellative backends);
    * ``atom_candidates(x)`` -- ascending indices of atoms possibly
      dividing x (must contain every atom that does divide x);
    * ``element_sweep(bound)`` -- deterministic iterator over the
      non-unit elements inside the window.

    Class attributes describe the monoid: ``cancellative``, ``infinite``
    (sweeps are windows of an infinite monoid), and backends may
    override ``exact_half_factorial`` when a finite decision procedure
    exists, and ``in_window`` to say whether an element (e.g. a product
    of two atoms) still lies inside the swept window.
    """

    cancellative: bool = True
    infinite: bool = True

    def atom_table(self) -> AtomTable:
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def canonical_key(self, x) -> Hashable:
        raise NotImplementedError

    def multiply(self, x, y):
        raise NotImplementedError

    def try_divide(self, x, atom_index: int) -> tuple:
        raise NotImplementedError

    def atom_candidates(self, x) -> Iterable[int]:
        raise NotImplementedError

    def element_sweep(self, bound: int) -> Iterator:
        raise NotImplementedError

    def exact_half_factorial(self) -> bool | None:
        return None

    def in_window(self, x, bound: int) -> bool:
        return True


# ---------------------------------------------------------------------------
# factorization enumeration
# ---------------------------------------------------------------------------

class Engine:
    """Memoized factorization enumerator over one backend.

    Shares sub-results across all elements of a sweep.  DFS divides by
    atoms in non-decreasing index order so that each multiset of atoms
    is produced exactly once; results are returned sorted.
    """

    def __init__(self, backend: MonoidBackend, state_limit: int = 2_000_000):
        self.backend = backend
        self.table = backend.atom_table()
        self.state_limit = state_limit
        self._fac_memo: dict = {}
        self._len_memo: dict = {}

    def _check_limit(self, memo) -> None:
        if len(memo) > self.state_limit:
            raise SweepOverflowError(
                f"factorization search exceeded {self.state_limit} states"
            )

    def factorizations(self, x) -> tuple[Factorization, ...]:
        """The complete finite set Z(x), sorted."""
        return self._facs(x, 0)

    def _facs(self, x, start: int) -> tuple[Factorization, ...]:
        b = self.backend
        if b.is_unit(x):
            return (Factorization(self.table.token, ()),)
        key = (b.canonical_key(x), start)
        hit = self._fac_memo.get(key)
        if hit is not None:
            return hit
        out: set[Factorization] = set()
        for i in b.atom_candidates(x):
            if i < start:
                continue
            for q in b.try_divide(x, i):
                for rest in self._facs(q, i):
                    out.add(rest.bump(i))
        result = tuple(sorted(out))
        self._fac_memo[key] = result
        self._check_limit(self._fac_memo)
        return result

    def length_set(self, x) -> tuple[int, ...]:
        """L(x) = {|z| : z in Z(x)}, strictly increasing; {0} for units."""
        b = self.backend
        if b.is_unit(x):
            return (0,)
        return tuple(sorted(self._lens(x)))

    def _lens(self, x) -> frozenset[int]:
        # unlike the factorization DFS, lengths need no multiset dedup:
        # every factorization is reached through any one of its atoms
        b = self.backend
        if b.is_unit(x):
            return frozenset((0,))
        key = b.canonical_key(x)
        hit = self._len_memo.get(key)
        if hit is not None:
            return hit
        acc: set[int] = set()
        for i in b.atom_candidates(x):
            for q in b.try_divide(x, i):
                acc.update(v + 1 for v in self._lens(q))
        result = frozenset(acc)
        self._len_memo[key] = result
        self._check_limit(self._len_memo)
        return result


def factorizations(backend: MonoidBackend, x) -> tuple[Factorization, ...]:
    return Engine(backend).factorizations(x)


def length_set(backend: MonoidBackend, x) -> tuple[int, ...]:
    return Engine(backend).length_set(x)


# ---------------------------------------------------------------------------
# invariants of length sets
# ---------------------------------------------------------------------------

def delta_of(lengths: Iterable[int]) -> tuple[int, ...]:
    """Gaps between consecutive members, sorted ascending."""
    vals = sorted(set(lengths))
    return tuple(sorted({b - a for a, b in zip(vals, vals[1:])}))


def rho_of(lengths: Iterable[int]) -> Fraction:
    """Elasticity sup(L)/min(L) of a finite length set; rho({0}) = 1."""
    vals = sorted(set(lengths))
    if not vals:
        raise ValueError("empty length set")
    if vals == [0]:
        return Fraction(1)
    if vals[0] <= 0:
        raise ValueError("length set mixes 0 with positive lengths")
    return Fraction(vals[-1], vals[0])


# ---------------------------------------------------------------------------
# catenary degrees on an explicit factorization set
# ---------------------------------------------------------------------------

def _distance_matrix(facs: Sequence[Factorization]) -> list[list[int]]:
    """Pairwise distance matrix via dense exponent rows over the union
    support (the per-element supports are small)."""
    n = len(facs)
    support = sorted({i for f in facs for i, _ in f.exps})
    pos = {i: k for k, i in enumerate(support)}
    rows = []
    for f in facs:
        row = [0] * len(support)
        for i, m in f.exps:
            row[pos[i]] = m
        rows.append(row)
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            rj = rows[j]
            p = q = 0
            for a, b in zip(ri, rj):
                if a > b:
                    p += a - b
                elif b > a:
                    q += b - a
            v = p if p > q else q
            d[i][j] = v
            d[j][i] = v
    return d


def bottleneck_from_matrix(d: list[list[int]]) -> int:
    """Max edge of a minimum spanning tree (Prim) on a distance matrix."""
    n = len(d)
    if n <= 1:
        return 0
    best = list(d[0])
    in_tree = [False] * n
    in_tree[0] = True
    bottleneck = 0
    for _ in range(n - 1):
        pick, pick_val = -1, None
        for j in range(n):
            if not in_tree[j] and (pick_val is None or best[j] < pick_val):
                pick, pick_val = j, best[j]
        in_tree[pick] = True
        if pick_val > bottleneck:
            bottleneck = pick_val
        dp = d[pick]
        for j in range(n):
            if not in_tree[j] and dp[j] < best[j]:
                best[j] = dp[j]
    return bottleneck


def catenary_bottleneck(facs: Sequence[Factorization]) -> int:
    """Catenary degree of one element: the bottleneck (max edge) of a
    minimum spanning tree of the complete distance graph on Z(x).

    Prim's algorithm; 0 when the factorization is unique.
    """
    if len(facs) <= 1:
        return 0
    return bottleneck_from_matrix(_distance_matrix(facs))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def threshold_from_matrix(d: list[list[int]]) -> int:
    """Least threshold whose edge graph is connected: binary search on
    the sorted distinct distances plus union-find connectivity."""
    n = len(d)
    if n <= 1:
        return 0
    values = sorted({d[i][j] for i in range(n) for j in range(i + 1, n)})

    def connected(limit: int) -> bool:
        uf = _UnionFind(n)
        for i in range(n):
            for j in range(i + 1, n):
                if d[i][j] <= limit:
                    uf.union(i, j)
        root = uf.find(0)
        return all(uf.find(k) == root for k in range(1, n))

    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if connected(values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return values[lo]


def catenary_threshold(facs: Sequence[Factorization]) -> int:
    """Independent route to the catenary degree: binary search on the
    sorted distinct pairwise distances for the least threshold whose
    edge graph is connected (union-find connectivity test)."""
    if len(facs) <= 1:
        return 0
    return threshold_from_matrix(_distance_matrix(facs))


def _monotone_ok(lengths, d, limit, by_level, longer_mask) -> bool:
    n = len(lengths)
    levels = sorted(by_level)

    # within a length class, chains may only use that class
    uf = _UnionFind(n)
    for members in by_level.values():
        for a in range(len(members)):
            i = members[a]
            di = d[i]
            for b in range(a + 1, len(members)):
                j = members[b]
                if di[j] <= limit:
                    uf.union(i, j)
    for members in by_level.values():
        root = uf.find(members[0])
        if any(uf.find(m) != root for m in members[1:]):
            return False

    # strictly longer factorizations must be reachable along
    # non-decreasing arcs; condense the same-length components
    comp_of = [uf.find(i) for i in range(n)]
    reach: dict[int, int] = {}
    for lv in reversed(levels):
        members = by_level[lv]
        comps = {comp_of[i] for i in members}
        for c in comps:
            mask = 0
            for i in members:
                if comp_of[i] == c:
                    mask |= 1 << i
            base = mask
            for i in members:
                if comp_of[i] != c:
                    continue
                di = d[i]
                for j in range(n):
                    if lengths[j] > lv and di[j] <= limit:
                        mask |= reach[comp_of[j]]
            reach[c] = mask
    for i in range(n):
        if longer_mask[i] & ~reach[comp_of[i]]:
            return False
    return True


def monotone_from_matrix(lengths: Sequence[int], d: list[list[int]], floor: int = 0) -> int:
    """Least N such that every ordered pair with |z| <= |z'| is joined
    by an N-chain with non-decreasing lengths.

    ``floor`` is a known lower bound (the plain catenary degree works:
    a monotone N-chain between any two factorizations in particular
    N-connects the distance graph); testing it first usually resolves
    the search in one step.
    """
    n = len(lengths)
    if n <= 1:
        return 0
    values = sorted({d[i][j] for i in range(n) for j in range(i + 1, n)})
    by_level: dict[int, list[int]] = {}
    for i, lv in enumerate(lengths):
        by_level.setdefault(lv, []).append(i)
    longer_mask = [0] * n
    for i in range(n):
        for j in range(n):
            if lengths[j] > lengths[i]:
                longer_mask[i] |= 1 << j
    lo = bisect.bisect_left(values, floor) if floor else 0
    hi = len(values) - 1
    if lo <= hi and _monotone_ok(lengths, d, values[lo], by_level, longer_mask):
        return values[lo]
    lo += 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _monotone_ok(lengths, d, values[mid], by_level, longer_mask):
            hi = mid
        else:
            lo = mid + 1
    if not _monotone_ok(lengths, d, values[lo], by_level, longer_mask):
        raise AssertionError("monotone chains require the maximal distance")
    return values[lo]


def monotone_catenary(facs: Sequence[Factorization]) -> int:
    """Monotone catenary degree of one element: least N such that every
    ordered pair z, z' with |z| <= |z'| is joined by an N-chain with
    non-decreasing lengths (a minimax search in the layered digraph
    whose arcs run to factorizations of greater-or-equal length)."""
    if len(facs) <= 1:
        return 0
    return monotone_from_matrix([f.length for f in facs], _distance_matrix(facs))


def monotone_catenary_minimax(facs: Sequence[Factorization]) -> int:
    """Independent oracle for the monotone catenary degree: explicit
    per-pair minimax-path search in the layered digraph.  Exponential
    neither, but quadratic per source; meant for small |Z(x)|."""
    n = len(facs)
    if n <= 1:
        return 0
    d = _distance_matrix(facs)
    lengths = [f.length for f in facs]
    worst = 0
    for s in range(n):
        # Dijkstra-style minimax from s along non-decreasing arcs
        val = [None] * n
        val[s] = 0
        done = [False] * n
        for _ in range(n):
            u, uv = -1, None
            for k in range(n):
                if not done[k] and val[k] is not None and (uv is None or val[k] < uv):
                    u, uv = k, val[k]
            if u < 0:
                break
            done[u] = True
            for w in range(n):
                if lengths[w] >= lengths[u] and w != u:
                    cand = max(uv, d[u][w])
                    if val[w] is None or cand < val[w]:
                        val[w] = cand
        for t in range(n):
            if lengths[t] >= lengths[s]:
                if val[t] is None:
                    raise AssertionError("layered digraph must connect pairs")
                worst = max(worst, val[t])
    return worst


def catenary_degree_of(backend: MonoidBackend, x) -> int:
    return catenary_bottleneck(Engine(backend).factorizations(x))


def monotone_catenary_degree_of(backend: MonoidBackend, x) -> int:
    return monotone_catenary(Engine(backend).factorizations(x))


# ---------------------------------------------------------------------------
# daleth and aggregated sweeps
# ---------------------------------------------------------------------------

def daleth(backend: MonoidBackend, bound: int, engine: Engine | None = None) -> int:
    """sup over atom pairs (u, v) of min(L(uv) \\ {2}), restricted to
    pairs with |L(uv)| > 1 whose product lies in the sweep window;
    0 when no pair qualifies."""
    eng = engine if engine is not None else Engine(backend)
    table = eng.table
    best = 0
    for i in range(len(table)):
        for j in range(i, len(table)):
            prod = backend.multiply(table.elements[i], table.elements[j])
            if not backend.in_window(prod, bound):
                continue
            lens = eng.length_set(prod)
            if len(lens) > 1:
                others = [v for v in lens if v != 2]
                best = max(best, min(others))
    return best


@dataclass(frozen=True)
class LengthReport:
    """Length-set-level aggregate of a sweep (no chain invariants).

    Used where materializing full factorization sets is prohibitive but
    distances between lengths, elasticity and daleth are still exact.
    """

    sweep_bound: int
    element_count: int
    delta_set: tuple[int, ...]
    elasticity: Fraction
    daleth: int
    half_factorial: bool
    lower_bound_only: bool

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "sweep_bound": self.sweep_bound,
            "element_count": self.element_count,
            "delta_set": list(self.delta_set),
            "elasticity": f"{self.elasticity.numerator}/{self.elasticity.denominator}",
            "daleth": self.daleth,
            "half_factorial": self.half_factorial,
            "lower_bound_only": self.lower_bound_only,
        }


def sweep_length_invariants(
    backend: MonoidBackend, bound: int, *, state_limit: int = 2_000_000
) -> LengthReport:
    """Aggregate Delta, elasticity and daleth over a sweep using the
    length-set recursion only."""
    if bound <= 0:
        raise ValueError("sweep bound must be positive")
    eng = Engine(backend, state_limit=state_limit)
    delta: set[int] = set()
    rho_max = Fraction(1)
    count = 0
    for x in backend.element_sweep(bound):
        count += 1
        lens = eng.length_set(x)
        delta.update(b - a for a, b in zip(lens, lens[1:]))
        rho_max = max(rho_max, rho_of(lens))
    dal = daleth(backend, bound, engine=eng)
    hf_sweep = not delta
    exact = backend.exact_half_factorial()
    hf = hf_sweep if exact is None else exact
    return LengthReport(
        sweep_bound=bound,
        element_count=count,
        delta_set=tuple(sorted(delta)),
        elasticity=rho_max,
        daleth=dal,
        half_factorial=hf,
        lower_bound_only=backend.infinite,
    )


@dataclass(frozen=True)
class InvariantReport:
    """Aggregated invariants of one sweep.

    All suprema are taken over the window [elements of element_sweep(bound)];
    ``lower_bound_only`` marks windows of infinite monoids.  The report is a
    pure function of (backend, bound): two runs are byte-identical.
    """

    sweep_bound: int
    element_count: int
    delta_set: tuple[int, ...]
    elasticity: Fraction
    catenary: int
    monotone_catenary: int
    daleth: int
    half_factorial: bool
    lower_bound_only: bool
    chain_checks: int
    oracle_checks: int
    violations: tuple[str, ...]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "sweep_bound": self.sweep_bound,
            "element_count": self.element_count,
            "delta_set": list(self.delta_set),
            "elasticity": f"{self.elasticity.numerator}/{self.elasticity.denominator}",
            "catenary": self.catenary,
            "monotone_catenary": self.monotone_catenary,
            "daleth": self.daleth,
            "half_factorial": self.half_factorial,
            "lower_bound_only": self.lower_bound_only,
            "chain_checks": self.chain_checks,
            "oracle_checks": self.oracle_checks,
            "violations": list(self.violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def sweep_invariants(
    backend: MonoidBackend,
    bound: int,
    *,
    cross_check_limit: int = 50,
    state_limit: int = 2_000_000,
) -> InvariantReport:
    """Aggregate element invariants over element_sweep(bound).

    While sweeping, verify on each element:

    * MST-bottleneck catenary == threshold/union-find catenary whenever
      |Z(x)| <= cross_check_limit;
    * c(x) <= c_mon(x) (every backend);
    * 2 + max Delta(L(x)) <= c(x) when |Z(x)| > 1 (cancellative
      backends only; the inequality is a theorem only there).

    Violations are collected, not raised, so reports stay comparable.
    """
    if bound <= 0:
        raise ValueError("sweep bound must be positive")
    eng = Engine(backend, state_limit=state_limit)
    delta: set[int] = set()
    rho_max = Fraction(1)
    c_max = 0
    cmon_max = 0
    count = 0
    chain_checks = 0
    oracle_checks = 0
    violations: list[str] = []
    for x in backend.element_sweep(bound):
        count += 1
        facs = eng.factorizations(x)
        if not facs:
            violations.append(f"no factorization: {backend.canonical_key(x)!r}")
            continue
        lens = sorted({f.length for f in facs})
        delta.update(b - a for a, b in zip(lens, lens[1:]))
        rho_max = max(rho_max, rho_of(lens))
        matrix = _distance_matrix(facs)
        c = bottleneck_from_matrix(matrix)
        cmon = monotone_from_matrix([f.length for f in facs], matrix, floor=c)
        c_max = max(c_max, c)
        cmon_max = max(cmon_max, cmon)
        if len(facs) <= cross_check_limit:
            oracle_checks += 1
            c_oracle = threshold_from_matrix(matrix)
            if c != c_oracle:
                violations.append(
                    f"catenary mismatch at {backend.canonical_key(x)!r}: "
                    f"mst={c} threshold={c_oracle}"
                )
        if c > cmon:
            violations.append(
                f"c > c_mon at {backend.canonical_key(x)!r}: {c} > {cmon}"
            )
        if len(facs) > 1 and backend.cancellative:
            chain_checks += 1
            gaps = [b - a for a, b in zip(lens, lens[1:])]
            if 2 + (max(gaps) if gaps else 0) > c:
                violations.append(
                    f"chain inequality fails at {backend.canonical_key(x)!r}"
                )
    dal = daleth(backend, bound, engine=eng)
    if delta and dal > 2 + max(delta):
        violations.append(f"daleth {dal} exceeds 2+sup delta {2 + max(delta)}")
    hf_sweep = not delta
    exact = backend.exact_half_factorial()
    if exact is None:
        hf = hf_sweep
    else:
        if exact and not hf_sweep:
            violations.append("backend claims half-factorial but sweep found gaps")
        hf = exact
    return InvariantReport(
        sweep_bound=bound,
        element_count=count,
        delta_set=tuple(sorted(delta)),
        elasticity=rho_max,
        catenary=c_max,
        monotone_catenary=cmon_max,
        daleth=dal,
        half_factorial=hf,
        lower_bound_only=backend.infinite,
        chain_checks=chain_checks,
        oracle_checks=oracle_checks,
        violations=tuple(violations),
    )

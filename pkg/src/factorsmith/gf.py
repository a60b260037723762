"""Small finite fields GF(p^e) with explicit modulus polynomials.

Elements are ints encoding coefficient vectors base p (least significant
digit = constant term).  The default modulus is the lexicographically
least irreducible monic polynomial of degree e, found by search and
verified, so no magic tables are involved; an explicit modulus (e.g.
"y4=y+1" from the command line) can be supplied instead.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache


def _poly_degree(coeffs: tuple[int, ...]) -> int:
    return len(coeffs) - 1


def _poly_trim(coeffs: list[int]) -> tuple[int, ...]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_mulmod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            factor = (c * inv_lead) % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - factor * m[j]) % p
    return _poly_trim(a[:dm] if len(a) > dm else a)


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    d = _poly_degree(m)
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            div = tuple(tail) + (1,)
            # long division remainder
            r = _poly_mod(m, div, p)
            if r == (0,):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least irreducible monic polynomial of degree e."""
    if e == 1:
        return (0, 1)
    for tail_value in range(p**e):
        tail = []
        v = tail_value
        for _ in range(e):
            tail.append(v % p)
            v //= p
        m = tuple(tail) + (1,)
        if _is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """GF(p^e); elements are ints 0 .. p^e - 1 (base-p digit vectors)."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None = None):
        if p < 2 or any(p % k == 0 for k in range(2, p)):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("degree must be >= 1")
        self.p = p
        self.e = e
        self.order = p**e
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(c % p for c in modulus)
        if _poly_degree(modulus) != e or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not _is_irreducible(modulus, p):
            raise ValueError("modulus is reducible")
        self.modulus = modulus
        self.generator = p % self.order  # the class of x
        self._mul_table: dict[tuple[int, int], int] | None = None
        if self.order <= 256:
            self._build_table()

    # --- int <-> coefficient vector -------------------------------------
    def _digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return _poly_trim(out)

    def _undigits(self, coeffs) -> int:
        out = 0
        for c in reversed(coeffs):
            out = out * self.p + (c % self.p)
        return out

    def _build_table(self) -> None:
        t = {}
        for a in range(self.order):
            da = self._digits(a)
            for b in range(a, self.order):
                v = self._undigits(_poly_mod(_poly_mulmod_p(da, self._digits(b), self.p), self.modulus, self.p))
                t[(a, b)] = v
                t[(b, a)] = v
        self._mul_table = t

    # --- arithmetic ------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        n = max(len(da), len(db))
        da = da + (0,) * (n - len(da))
        db = db + (0,) * (n - len(db))
        return self._undigits(tuple((x + y) % self.p for x, y in zip(da, db)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._undigits(tuple((-c) % self.p for c in self._digits(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[(a, b)]
        return self._undigits(
            _poly_mod(_poly_mulmod_p(self._digits(a), self._digits(b), self.p), self.modulus, self.p)
        )

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a = self.inv(a)
            n = -n
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.power(a, self.order - 2)

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    # --- structure -------------------------------------------------------
    def elements(self) -> range:
        return range(self.order)

    def subfield_elements(self, k: int) -> tuple[int, ...]:
        """The subfield GF(p^k) = {x : x^(p^k) = x}; requires k | e."""
        if self.e % k != 0:
            raise ValueError(f"GF({self.p}^{k}) is not a subfield of GF({self.p}^{self.e})")
        q = self.p**k
        return tuple(x for x in self.elements() if self.power(x, q) == x)

    def element_from_poly(self, text: str) -> int:
        """Parse "1+y+y3" style expressions in the generator y."""
        text = text.replace(" ", "").lower()
        if not text:
            raise ValueError("empty element")
        total = 0
        for term in text.split("+"):
            m = re.fullmatch(r"(\d*)\*?y(\d*)|(\d+)", term)
            if not m:
                raise ValueError(f"cannot parse field element term {term!r}")
            if m.group(3) is not None:
                total = self.add(total, int(m.group(3)) % self.p)
                continue
            coeff = int(m.group(1)) if m.group(1) else 1
            exp = int(m.group(2)) if m.group(2) else 1
            term_val = self.mul(coeff % self.p, self.power(self.generator, exp))
            total = self.add(total, term_val)
        return total

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"


def parse_modulus(p: int, e: int, text: str) -> tuple[int, ...]:
    """Parse "y4=y+1": x^4 - (x + 1) as a monic modulus polynomial."""
    text = text.replace(" ", "").lower()
    left, _, right = text.partition("=")
    m = re.fullmatch(r"y(\d+)", left)
    if not m or int(m.group(1)) != e:
        raise ValueError(f"modulus left side must be y{e}")
    coeffs = [0] * (e + 1)
    coeffs[e] = 1
    for term in right.split("+"):
        tm = re.fullmatch(r"(\d*)\*?y(\d*)|(\d+)", term)
        if not tm:
            raise ValueError(f"cannot parse modulus term {term!r}")
        if tm.group(3) is not None:
            coeffs[0] = (coeffs[0] - int(tm.group(3))) % p
            continue
        c = int(tm.group(1)) if tm.group(1) else 1
        exp = int(tm.group(2)) if tm.group(2) else 1
        if exp >= e:
            raise ValueError("modulus right side must have degree < e")
        coeffs[exp] = (coeffs[exp] - c) % p
    return tuple(coeffs)

"""Small finite fields GF(p^r) for the Paley constructors.

Elements are polynomials over GF(p) of degree < r, reduced modulo a monic
irreducible polynomial found by exhaustive search.  Each element has an
integer index: the coefficient vector (c_{r-1}, ..., c_0) read as a base-p
numeral, so the natural order of indices is the lexicographic order of
coefficient vectors.  For r = 1 the index is the residue itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import InputError


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, r) with q = p**r and p prime, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    r = 0
    while q % p == 0:
        q //= p
        r += 1
    return (p, r) if q == 1 else None


# Polynomials over GF(p) are tuples of coefficients, lowest degree first.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        factor = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    degree = len(m) - 1
    for d in range(1, degree // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _polymod(list(m), tuple(low) + (1,), p):
                return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, r: int) -> tuple[int, ...]:
    """First monic irreducible of degree r over GF(p), in lexicographic order."""
    if r == 1:
        return (0, 1)
    for low in product(range(p), repeat=r):
        m = tuple(reversed(low)) + (1,)
        if m[0] == 0:
            continue
        if _is_irreducible(m, p):
            return m
    raise AssertionError(f"no irreducible polynomial of degree {r} over GF({p})")


class GaloisField:
    def __init__(self, q: int):
        pr = prime_power(q)
        if pr is None:
            raise InputError(f"{q} is not a prime power")
        self.q = q
        self.p, self.r = pr
        self.modulus = find_irreducible(self.p, self.r)

    def __repr__(self) -> str:
        return f"GaloisField({self.q})"

    def coeffs(self, index: int) -> list[int]:
        """Coefficients (lowest degree first) of the element with this index."""
        out = []
        for _ in range(self.r):
            index, c = divmod(index, self.p)
            out.append(c)
        return out

    def index(self, coeffs: list[int]) -> int:
        value = 0
        for c in reversed(coeffs + [0] * (self.r - len(coeffs))):
            value = value * self.p + c
        return value

    def add(self, a: int, b: int) -> int:
        return self.index([(x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a: int) -> int:
        return self.index([(-x) % self.p for x in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.r - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.index(_polymod(prod, self.modulus, self.p))

    def pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.q - 2)

    def elements(self) -> range:
        return range(self.q)

    def powers(self, e: int) -> set[int]:
        """The set {x**e : x != 0}."""
        return {self.pow(x, e) for x in range(1, self.q)}

    def __call__(self, index: int) -> "FieldElem":
        return FieldElem(self, index % self.q)


@dataclass(frozen=True)
class FieldElem:
    field: GaloisField
    index: int

    def _other(self, other: "FieldElem | int") -> int:
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise InputError("elements of different fields")
            return other.index
        return self.field.index([other % self.field.p])

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.index, self._other(other)))

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.index, self._other(other)))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.index, self._other(other)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.index))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(self.field, self.field.pow(self.index, e))

    def __truediv__(self, other):
        return self * FieldElem(self.field, self.field.inv(self._other(other)))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.index))

    def __bool__(self) -> bool:
        return self.index != 0

"""Prime-power finite fields GF(p^m) in polynomial representation.

An element is encoded as the integer ``sum(a_i * p**i)`` of its coefficient
vector ``(a_0, ..., a_{m-1})``; arithmetic goes through precomputed tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

MAX_ORDER = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of num by a monic den, coefficients low-to-high mod p."""
    num = [a % p for a in num]
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        coef = num[i]
        if coef:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - coef * den[j]) % p
    out = num[:dd]
    return out + [0] * (dd - len(out))


def _monics(p: int, degree: int):
    """Monic polynomials of a degree, ordered by integer encoding."""
    for tail in product(range(p), repeat=degree):
        yield list(reversed(tail)) + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    for d in range(1, m // 2 + 1):
        for f in _monics(p, d):
            if not any(_poly_mod(list(modulus), f, p)):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for f in _monics(p, m):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class FiniteField:
    """GF(p^m) with a fixed monic irreducible modulus (coefficients low-to-high)."""

    p: int
    m: int
    modulus: tuple[int, ...]
    _add: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _mul: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _inv: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        q = self.order
        elems = [self.coeffs(x) for x in range(q)]
        mul = []
        for a in elems:
            row = []
            for b in elems:
                prod = [0] * (2 * self.m - 1)
                for i, ai in enumerate(a):
                    if ai:
                        for j, bj in enumerate(b):
                            prod[i + j] += ai * bj
                row.append(self.element(_poly_mod(prod, self.modulus, self.p)))
            mul.append(tuple(row))
        add = tuple(
            tuple(self.element([x + y for x, y in zip(a, b)]) for b in elems) for a in elems
        )
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        object.__setattr__(self, "_add", add)
        object.__setattr__(self, "_mul", tuple(mul))
        object.__setattr__(self, "_inv", tuple(inv))

    @property
    def order(self) -> int:
        return self.p**self.m

    def coeffs(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            x, a = divmod(x, self.p)
            out.append(a)
        return tuple(out)

    def element(self, coeffs: Sequence[int]) -> int:
        x = 0
        for a in reversed(coeffs):
            x = x * self.p + a % self.p
        return x

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self.element([-x for x in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        acc = 0
        for a, b in zip(u, v):
            acc = self.add(acc, self.mul(a, b))
        return acc


def build_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FiniteField:
    """GF(p^m); the modulus defaults to the smallest irreducible monic."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p**m > MAX_ORDER:
        raise ValueError(f"field order {p**m} exceeds supported maximum {MAX_ORDER}")
    if modulus is None:
        modulus = smallest_irreducible(p, m)
    else:
        modulus = tuple(int(a) % p for a in modulus)
        if len(modulus) != m + 1 or not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is not a monic irreducible of degree {m}")
    return FiniteField(p, m, tuple(modulus))


def field_of_order(q: int) -> FiniteField:
    p, m = prime_power(q)
    return build_field(p, m)

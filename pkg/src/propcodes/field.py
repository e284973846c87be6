"""
Arithmetic in GF(q), q = p^k, for small q.

Elements are plain integers in ``[0, q)``.  Index ``i`` encodes the polynomial
``sum c_j x^j`` with ``i = sum c_j p^j``, so 0 and 1 are the additive and
multiplicative identities and ascending index is the canonical element order.
All operations go through precomputed ``q x q`` tables, which are also exposed
as numpy arrays for vectorised word arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, UsageError

MAX_ORDER = 9

# Shipped moduli, coefficients low-to-high.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``, or raise UsageError."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1:
                break
            return p, k
    raise UsageError(f"{q} is not a prime power")


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo monic ``m`` over GF(p); lists low-to-high."""
    a = list(a)
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top] % p
        if c:
            for i in range(dm + 1):
                a[top - dm + i] = (a[top - dm + i] - c * m[i]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(list(modulus), list(low) + [1], p)):
                return False
    return True


def _first_irreducible(p: int, k: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=k):
        cand = tuple(reversed(low)) + (1,)
        if cand[0] and is_irreducible(cand, p):
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FieldSpec:
    """
    The field GF(p^k).

    Parameters
    ----------
    p : int
        Characteristic (prime).
    k : int
        Extension degree.
    modulus : sequence of int, optional
        Monic irreducible polynomial of degree ``k``, coefficients low-to-high.
        Defaults to the shipped modulus for ``(p, k)``; ignored when ``k == 1``.
    max_order : int
        Ceiling on ``q``; tables are ``q x q``.
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None
    max_order: int = field(default=MAX_ORDER, compare=False, repr=False)

    def __post_init__(self) -> None:
        p, k = self.p, self.k
        if not is_prime(p):
            raise UsageError(f"characteristic {p} is not prime")
        if k < 1:
            raise UsageError(f"degree must be >= 1, got {k}")
        if p**k > self.max_order:
            raise UsageError(f"field order {p**k} exceeds ceiling {self.max_order}")
        if k == 1:
            mod = (0, 1)
        elif self.modulus is None:
            mod = DEFAULT_MODULI.get((p, k)) or _first_irreducible(p, k)
        else:
            mod = tuple(int(c) for c in self.modulus)
            if len(mod) != k + 1 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
                raise UsageError(f"modulus {mod} is not monic of degree {k} over GF({p})")
            if not is_irreducible(mod, p):
                raise UsageError(f"modulus {mod} is reducible over GF({p})")
        object.__setattr__(self, "modulus", mod)
        self._build_tables()

    @classmethod
    def of_order(cls, q: int, modulus: Sequence[int] | None = None) -> "FieldSpec":
        p, k = prime_power(q)
        return cls(p, k, tuple(modulus) if modulus is not None else None)

    @property
    def q(self) -> int:
        return self.p**self.k

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _undigits(self, ds: Iterable[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        add = np.zeros((q, q), dtype=np.uint8)
        mul = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            da = self._digits(a)
            for b in range(q):
                db = self._digits(b)
                add[a, b] = self._undigits((x + y) % p for x, y in zip(da, db))
                prod = [0] * (2 * self.k - 1)
                for i, x in enumerate(da):
                    for j, y in enumerate(db):
                        prod[i + j] += x * y
                mul[a, b] = self._undigits(_poly_mod(prod, self.modulus, p))
        neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.uint8)
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            hits = np.flatnonzero(mul[a] == 1)
            if len(hits) != 1:
                raise UsageError(f"modulus {self.modulus} does not define a field")
            inv[a] = hits[0]
        sub = add[:, neg]
        for name, arr in (("add_table", add), ("mul_table", mul), ("neg_table", neg),
                          ("inv_table", inv), ("sub_table", sub)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        # plain-list copies: scalar lookups are much faster than numpy indexing
        object.__setattr__(self, "_add", add.tolist())
        object.__setattr__(self, "_mul", mul.tolist())
        object.__setattr__(self, "_neg", neg.tolist())
        object.__setattr__(self, "_inv", inv.tolist())

    # -- scalar arithmetic -------------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise UsageError(f"{a} is not an element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def sum(self, values: Iterable[int]) -> int:
        acc = 0
        for v in values:
            acc = self._add[acc][v]
        return acc

    def additive_order(self, a: int) -> int:
        return 1 if a == 0 else self.p

    # -- misc ----------------------------------------------------------------

    def elements(self) -> tuple[int, ...]:
        """Canonical order alpha_0 = 0, alpha_1 = 1, ..., ascending index."""
        return tuple(range(self.q))

    def to_json(self) -> dict:
        out = {"p": self.p, "k": self.k}
        if self.k > 1:
            out["modulus"] = list(self.modulus)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        mod = obj.get("modulus")
        return cls(int(obj["p"]), int(obj.get("k", 1)), tuple(mod) if mod is not None else None)

    def __str__(self) -> str:
        return f"GF({self.q})"


def canonical_elements(spec: FieldSpec) -> tuple[int, ...]:
    return spec.elements()


def same_field(a: FieldSpec, b: FieldSpec) -> None:
    if a != b:
        raise UsageError(f"field mismatch: {a} vs {b}")

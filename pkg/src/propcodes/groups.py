"""
Finite group tables for the propelinear structure {Phi_w}, isomorphism-invariant
fingerprints, and a small catalog used to name the groups that show up.

Group elements are indexed by their shift word ``Phi_w(0) = w``; index 0 is the
identity (the all-zero codeword, which every enumeration yields first).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm
from typing import Callable, Hashable, Sequence

import numpy as np

from .errors import PreconditionError, ResourceError, UsageError
from .propelinear import Automorphism, certify_propelinear, phi_w, pi_c_many
from .vscode import VSCode
from .words import format_word, words_to_index

TABLE_CEILING = 2**12
GROUP_CEILING = 2**16


@dataclass
class GroupTable:
    mul: np.ndarray
    inv: np.ndarray
    labels: list[str] | None = None
    elements: list[Automorphism] | None = None

    @property
    def order(self) -> int:
        return len(self.mul)

    @classmethod
    def from_mul(cls, mul: np.ndarray, labels: list[str] | None = None,
                 elements: list[Automorphism] | None = None) -> "GroupTable":
        mul = np.asarray(mul, dtype=np.int64)
        if mul[0].tolist() != list(range(len(mul))) or mul[:, 0].tolist() != list(range(len(mul))):
            raise UsageError("element 0 is not the identity")
        rows, cols = np.nonzero(mul == 0)
        if len(rows) != len(mul):
            raise UsageError("table is not a group: inverses are not unique")
        inv = np.empty(len(mul), dtype=np.int64)
        inv[rows] = cols
        return cls(mul, inv, labels, elements)

    def index(self, label: str) -> int:
        if self.labels is None:
            raise UsageError("table has no labels")
        return self.labels.index(label)

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        out = 0
        for _ in range(k):
            out = int(self.mul[out, g])
        return out

    def is_associative(self) -> bool:
        m = self.mul
        return bool(np.array_equal(m[m, :], m[:, m]))  # (ab)c vs a(bc) over all triples

    def check_axioms(self) -> bool:
        n = self.order
        idx = np.arange(n)
        return (
            bool(((self.mul >= 0) & (self.mul < n)).all())
            and bool((np.sort(self.mul, axis=1) == idx).all())
            and bool((np.sort(self.mul, axis=0) == idx[:, None]).all())
            and bool((self.mul[idx, self.inv] == 0).all())
            and self.is_associative()
        )

    def relabel(self, perm: Sequence[int]) -> "GroupTable":
        """Table of the same group with element ``i`` renamed ``perm[i]`` (``perm[0]`` must be 0)."""
        perm = np.asarray(perm)
        new = np.empty_like(self.mul)
        new[np.ix_(perm, perm)] = perm[self.mul]
        return GroupTable.from_mul(new)


def table_from_operation(elements: Sequence[Hashable], op: Callable, identity: Hashable) -> GroupTable:
    elems = [identity] + [e for e in elements if e != identity]
    pos = {e: i for i, e in enumerate(elems)}
    mul = np.array([[pos[op(a, b)] for b in elems] for a in elems], dtype=np.int64)
    return GroupTable.from_mul(mul, labels=[str(e) for e in elems])


def direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    na, nb = a.order, b.order
    mul = (a.mul[:, None, :, None] * nb + b.mul[None, :, None, :]).reshape(na * nb, na * nb)
    return GroupTable.from_mul(mul)


def cyclic(n: int) -> GroupTable:
    idx = np.arange(n)
    return GroupTable.from_mul((idx[:, None] + idx[None, :]) % n)


# -- building the propelinear group -------------------------------------------


def build_group(code: VSCode, ceiling: int = TABLE_CEILING, certify: bool = True) -> GroupTable:
    """
    The table of {Phi_w : w in C} under composition.

    The product ``Phi_a o Phi_b`` is located by its shift ``Phi_a(b)``, which is
    unique because the action is regular; with ``certify`` the closure of the
    structure is certified first, so the located element really is the product.
    """
    if code.size > ceiling:
        raise ResourceError(f"group of order {code.size} exceeds table ceiling {ceiling}")
    if certify:
        cert = certify_propelinear(code)
        if not cert.propelinear:
            raise PreconditionError(f"structure is not propelinear: {cert.failures[:3]}")
    words = code.codeword_array()
    if words[0].any():
        raise AssertionError("enumeration must start at the zero word")
    keys = words_to_index(words, code.q)
    order = np.argsort(keys)
    perms = pi_c_many(code, code.block_sum_many(words))
    mul = np.empty((len(words), len(words)), dtype=np.int64)
    add = code.field.add_table
    for a in range(len(words)):
        images = add[words[a][None, :], words[:, perms[a]]]
        mul[a] = order[np.searchsorted(keys, words_to_index(images, code.q), sorter=order)]
    labels = [format_word(w) for w in words]
    elements = [phi_w(code, tuple(int(x) for x in w)) for w in words]
    return GroupTable.from_mul(mul, labels, elements)


def element_order(table: GroupTable, g: int) -> int:
    k, x = 1, g
    while x != 0:
        x = int(table.mul[x, g])
        k += 1
    return k


def check_relation(table: GroupTable, word: Sequence[tuple[int, int]]) -> bool:
    """Does the product ``g1^e1 g2^e2 ...`` (left to right) equal the identity?"""
    acc = 0
    for g, e in word:
        acc = int(table.mul[acc, table.power(g, e)])
    return acc == 0


def generated_subgroup(table: GroupTable, gens: Sequence[int]) -> np.ndarray:
    members = np.zeros(table.order, dtype=bool)
    members[0] = True
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    frontier = np.array([0])
    while len(frontier):
        new = np.unique(table.mul[np.ix_(frontier, gens)])
        new = new[~members[new]]
        members[new] = True
        frontier = new
    return np.flatnonzero(members)


# -- fingerprints ---------------------------------------------------------------


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    abelian: bool
    histogram: tuple[tuple[int, int], ...]
    center: int
    derived: int
    exponent: int

    @property
    def order_histogram(self) -> dict[int, int]:
        return dict(self.histogram)

    def to_json(self, matches: list[str] | None = None) -> dict:
        out = {
            "order": self.order,
            "abelian": self.abelian,
            "histogram": {str(k): v for k, v in self.histogram},
            "center": self.center,
            "derived": self.derived,
            "exponent": self.exponent,
        }
        if matches is not None:
            out["matches"] = matches
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "GroupFingerprint":
        return cls(int(obj["order"]), bool(obj["abelian"]),
                   tuple(sorted((int(k), int(v)) for k, v in obj["histogram"].items())),
                   int(obj["center"]), int(obj["derived"]), int(obj["exponent"]))


def fingerprint(table: GroupTable) -> GroupFingerprint:
    m = table.mul
    n = table.order
    orders = [element_order(table, g) for g in range(n)]
    commute = m == m.T
    center = int(commute.all(axis=0).sum())
    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    commutators = np.unique(m[m[m[a, b], table.inv[a]], table.inv[b]])
    derived = len(generated_subgroup(table, commutators))
    return GroupFingerprint(
        order=n,
        abelian=bool(commute.all()),
        histogram=tuple(sorted(Counter(orders).items())),
        center=center,
        derived=derived,
        exponent=lcm(*orders),
    )


def abelian_fingerprint(factors: Sequence[int]) -> GroupFingerprint:
    """Fingerprint of the product of cyclic groups of the given orders, without a table."""
    order = 1
    for f in factors:
        order *= f
    exponent = lcm(1, *factors)
    hist: dict[int, int] = {}
    for d in (d for d in range(1, exponent + 1) if exponent % d == 0):
        dividing = 1
        for f in factors:
            dividing *= gcd(d, f)
        hist[d] = dividing - sum(c for e, c in hist.items() if d % e == 0)
    return GroupFingerprint(order, True, tuple(sorted((k, v) for k, v in hist.items() if v)),
                            order, 1, exponent)


def _power_name(base: int, k: int) -> str:
    return f"Z{base}" if k == 1 else f"Z{base}^{k}"


def _dihedral4() -> GroupTable:
    # symmetries of a square as vertex permutations
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    compose = lambda x, y: tuple(x[i] for i in y)  # noqa: E731
    elems = {tuple(range(4))}
    frontier = list(elems)
    while frontier:
        g = frontier.pop()
        for h in (r, s):
            gh = compose(g, h)
            if gh not in elems:
                elems.add(gh)
                frontier.append(gh)
    return table_from_operation(sorted(elems), compose, tuple(range(4)))


def _quaternion() -> GroupTable:
    # units +-1, +-i, +-j, +-k as (sign, basis) with basis 0..3 = 1, i, j, k
    basis_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def op(x, y):
        s, b = basis_mul[(x[1], y[1])]
        return (x[0] * y[0] * s, b)

    elems = [(s, b) for s in (1, -1) for b in range(4)]
    return table_from_operation(elems, op, (1, 0))


@lru_cache(maxsize=1)
def catalog() -> tuple[tuple[str, GroupFingerprint], ...]:
    entries: list[tuple[str, GroupFingerprint]] = []
    for p in (2, 3, 5, 7):
        for k in range(1, 7):
            entries.append((_power_name(p, k), abelian_fingerprint([p] * k)))
        for k in range(0, 6):
            name = f"Z{p * p}" + (f"x{_power_name(p, k)}" if k else "")
            entries.append((name, abelian_fingerprint([p * p] + [p] * k)))
    d4, q8 = _dihedral4(), _quaternion()
    z2 = cyclic(2)
    entries += [
        ("D4", fingerprint(d4)),
        ("D4xZ2", fingerprint(direct_product(d4, z2))),
        ("Q8", fingerprint(q8)),
        ("Q8xZ2", fingerprint(direct_product(q8, z2))),
    ]
    return tuple(entries)


def match_catalog(fp: GroupFingerprint) -> list[str]:
    """Catalog names whose fingerprint equals ``fp`` (possibly several, possibly none)."""
    return [name for name, other in catalog() if other == fp]


# -- element orders on codes too big for a table ----------------------------------


def sampled_orders(code: VSCode, count: int, seed: int = 0) -> Counter:
    """Multiplicative orders of Phi_w for ``count`` random codewords (plus the zero word)."""
    rng = np.random.default_rng(seed)
    words = np.concatenate([np.zeros((1, code.length), dtype=np.uint8), code.random_codewords(count, rng)])
    return Counter(phi_w(code, tuple(int(x) for x in w)).order() for w in words)


def allowed_orders(p: int) -> set[int]:
    return {1, p, p * p}

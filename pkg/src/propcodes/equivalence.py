"""
Brute-force equivalence of small codes under Hamming-graph automorphisms
(coordinate permutation plus a symbol permutation in every coordinate).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Collection, Sequence

from .errors import ResourceError, UsageError
from .field import FieldSpec
from .words import Word, format_word, hamming_distance

SEARCH_CEILING = 10**7


@dataclass(frozen=True)
class HammingIsometry:
    """``v -> (alphabet[t][v[src[t]]])_t``."""

    src: tuple[int, ...]
    alphabet: tuple[tuple[int, ...], ...]

    def __call__(self, v: Sequence[int]) -> Word:
        return tuple(self.alphabet[t][v[s]] for t, s in enumerate(self.src))

    def is_identity(self) -> bool:
        return all(t == s for t, s in enumerate(self.src)) and all(
            list(a) == list(range(len(a))) for a in self.alphabet
        )

    def to_json(self) -> dict:
        return {"perm": list(self.src), "alphabet": [list(a) for a in self.alphabet]}


def distance_distribution(words: Collection[Word]) -> Counter:
    ws = list(words)
    return Counter(hamming_distance(u, v) for i, u in enumerate(ws) for v in ws[i + 1 :])


def exact_equivalence(
    a: Collection[Sequence[int]],
    b: Collection[Sequence[int]],
    spec: FieldSpec,
    length: int,
    ceiling: int = SEARCH_CEILING,
) -> HammingIsometry | None:
    """
    An isometry of F^N carrying code ``a`` onto code ``b``, or ``None``.

    Output coordinates are assigned one at a time (source coordinate and symbol
    permutation); a branch is cut as soon as the projection of the mapped code
    onto the assigned coordinates differs, as a multiset, from that of ``b``.
    """
    q = spec.q
    space = factorial(length) * factorial(q) ** length
    if space > ceiling:
        raise ResourceError(f"search space N!(q!)^N = {space} exceeds ceiling {ceiling}")
    set_a = {tuple(w) for w in a}
    set_b = {tuple(w) for w in b}
    for w in itertools.chain(set_a, set_b):
        if len(w) != length:
            raise UsageError(f"word {format_word(w)} does not have length {length}")
    ident = HammingIsometry(tuple(range(length)), tuple(tuple(range(q)) for _ in range(length)))
    if set_a == set_b:
        return ident
    if len(set_a) != len(set_b) or distance_distribution(set_a) != distance_distribution(set_b):
        return None

    words_a = sorted(set_a)
    targets = [Counter(w[: t + 1] for w in set_b) for t in range(length)]
    symbol_perms = list(itertools.permutations(range(q)))
    src: list[int] = []
    alpha: list[tuple[int, ...]] = []

    def extend(prefixes: list[tuple[int, ...]]) -> bool:
        t = len(src)
        if t == length:
            return True
        for s in range(length):
            if s in src:
                continue
            for psi in symbol_perms:
                grown = [p + (psi[w[s]],) for p, w in zip(prefixes, words_a)]
                if Counter(grown) != targets[t]:
                    continue
                src.append(s)
                alpha.append(psi)
                if extend(grown):
                    return True
                src.pop()
                alpha.pop()
        return False

    if extend([() for _ in words_a]):
        return HammingIsometry(tuple(src), tuple(alpha))
    return None

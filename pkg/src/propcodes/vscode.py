"""
The code C(H, f) of length N = q*n + 1.

Coordinate ``a*n + j`` holds entry ``j`` of the block ``v_a`` belonging to the
field element with index ``a``; coordinate ``N - 1`` is the check digit.  A word
is a codeword iff the block sum ``c = sum_a v_a`` lies in H and

    check = sum_a a*|v_a| + f(c),

where ``|v_a|`` is the field sum of the block's entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InconsistencyError, ResourceError, UsageError
from .field import FieldSpec, same_field
from .linear import ENUMERATION_CEILING, LinearCode
from .perfect import EXHAUSTIVE_CEILING, PerfectnessReport, verify_perfect
from .quadratic import QuadraticForm
from .words import Word, all_words, check_length, format_word, vsum

__all__ = [
    "VSCode", "PerfectnessReport", "verify_perfect", "reconstruct_f", "codes_equal",
]


@dataclass(frozen=True)
class VSCode:
    base: LinearCode
    f: QuadraticForm

    def __post_init__(self) -> None:
        same_field(self.base.field, self.f.field)
        if self.f.n != self.base.n:
            raise UsageError(f"f has {self.f.n} variables but the base code has length {self.base.n}")

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def length(self) -> int:
        return self.q * self.n + 1

    N = length

    @property
    def size(self) -> int:
        return self.q ** (self.n * (self.q - 1)) * self.base.size

    def coordinate(self, alpha: int, j: int) -> int:
        """Position of entry ``j`` (0-based) of block ``v_alpha``."""
        return alpha * self.n + j

    # -- scalar ----------------------------------------------------------

    def blocks(self, w: Sequence[int]) -> list[Word]:
        n = self.n
        return [tuple(w[a * n : (a + 1) * n]) for a in range(self.q)]

    def block_sum(self, w: Sequence[int]) -> Word:
        spec = self.field
        c = [0] * self.n
        for block in self.blocks(w):
            c = [spec.add(x, y) for x, y in zip(c, block)]
        return tuple(c)

    def weighted_weight(self, w: Sequence[int]) -> int:
        """``sum_a a*|v_a|``."""
        spec = self.field
        return spec.sum(spec.mul(a, spec.sum(block)) for a, block in enumerate(self.blocks(w)))

    def check_digit(self, w: Sequence[int]) -> int:
        """The check digit a word with these blocks must carry (ignores ``w[-1]``)."""
        return self.field.add(self.weighted_weight(w), self.f(self.block_sum(w)))

    def contains(self, w: Sequence[int]) -> bool:
        check_length(w, self.length)
        c = self.block_sum(w)
        return self.base.contains(c) and w[-1] == self.field.add(self.weighted_weight(w), self.f(c))

    def __contains__(self, w: Sequence[int]) -> bool:
        return self.contains(w)

    def encode(self, free_blocks: Sequence[Sequence[int]], h: Sequence[int]) -> Word:
        """Codeword with blocks ``v_1..v_{q-1} = free_blocks`` and block sum ``h``."""
        spec = self.field
        v0 = list(h)
        for block in free_blocks:
            v0 = [spec.sub(x, y) for x, y in zip(v0, block)]
        body = tuple(v0) + tuple(x for b in free_blocks for x in b)
        return body + (self.check_digit(body + (0,)),)

    def enumerate(self, ceiling: int = ENUMERATION_CEILING) -> Iterator[Word]:
        """
        Every codeword once: free blocks ``v_1..v_{q-1}`` in lexicographic order
        (outer loop), base codewords in enumeration order (inner loop); ``v_0`` is
        determined by the base codeword.
        """
        if self.size > ceiling:
            raise ResourceError(f"{self.size} codewords exceed enumeration ceiling {ceiling}")
        base_words = list(self.base.enumerate())
        n = self.n
        for flat in itertools.product(range(self.q), repeat=n * (self.q - 1)):
            free = [flat[i * n : (i + 1) * n] for i in range(self.q - 1)]
            for h in base_words:
                yield self.encode(free, h)

    def __iter__(self) -> Iterator[Word]:
        return self.enumerate()

    # -- vectorised ------------------------------------------------------

    def block_sum_many(self, words: np.ndarray) -> np.ndarray:
        body = words[:, : self.q * self.n].reshape(len(words), self.q, self.n)
        return vsum(self.field, body, axis=1)

    def check_digit_many(self, words: np.ndarray, sums: np.ndarray | None = None) -> np.ndarray:
        spec = self.field
        body = words[:, : self.q * self.n].reshape(len(words), self.q, self.n)
        weights = vsum(spec, body, axis=2)  # (B, q)
        acc = self.f.eval_many(self.block_sum_many(words) if sums is None else sums)
        for a in range(1, self.q):
            acc = spec.add_table[acc, spec.mul_table[a, weights[:, a]]]
        return acc

    def contains_many(self, words: np.ndarray) -> np.ndarray:
        if words.ndim != 2 or words.shape[1] != self.length:
            raise UsageError(f"expected words of length {self.length}")
        sums = self.block_sum_many(words)
        return self.base.contains_many(sums) & (words[:, -1] == self.check_digit_many(words, sums))

    def _assemble(self, free: np.ndarray, h: np.ndarray) -> np.ndarray:
        spec, n = self.field, self.n
        v0 = h.copy()
        for a in range(self.q - 1):
            v0 = spec.sub_table[v0, free[:, a * n : (a + 1) * n]]
        out = np.zeros((len(h), self.length), dtype=np.uint8)
        out[:, :n] = v0
        out[:, n : self.q * n] = free
        out[:, -1] = self.check_digit_many(out, h)
        return out

    def codeword_array(self, ceiling: int = ENUMERATION_CEILING) -> np.ndarray:
        """All codewords as an array, in :meth:`enumerate` order."""
        if self.size > ceiling:
            raise ResourceError(f"{self.size} codewords exceed enumeration ceiling {ceiling}")
        free = all_words(self.field, self.n * (self.q - 1))
        hs = self.base.codeword_array()
        return self._assemble(np.repeat(free, len(hs), axis=0), np.tile(hs, (len(free), 1)))

    def random_codewords(self, count: int, rng: np.random.Generator) -> np.ndarray:
        free = rng.integers(0, self.q, size=(count, self.n * (self.q - 1)), dtype=np.uint8)
        return self._assemble(free, self.base.random_codewords(count, rng))

    def verify_perfect(self, mode: str = "auto", trials: int = 100_000, seed: int = 0,
                       ceiling: int = EXHAUSTIVE_CEILING, threads: int = 1) -> PerfectnessReport:
        return verify_perfect(self.contains_many, self.length, self.field, mode, trials, seed,
                              ceiling, threads)

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "base": self.base.to_json(), "f": self.f.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "VSCode":
        spec = FieldSpec.from_json(obj["field"])
        base = LinearCode.from_json(obj["base"], spec)
        return cls(base, QuadraticForm.from_json(obj["f"], spec))


def reconstruct_f(words: Iterable[Sequence[int]], base: LinearCode) -> dict[Word, int]:
    """
    Recover the value table of ``f`` on H from the codewords of C(H, f):
    each word contributes ``c -> check - sum_a a*|v_a|`` with ``c`` its block sum.
    """
    spec = base.field
    probe = VSCode(base, QuadraticForm.zero(spec, base.n))
    table: dict[Word, int] = {}
    for w in words:
        w = tuple(w)
        if len(w) != probe.length:
            raise UsageError(f"word {format_word(w)} has length {len(w)}, expected {probe.length}")
        c = probe.block_sum(w)
        if not base.contains(c):
            raise InconsistencyError(f"word {format_word(w)}: block sum {format_word(c)} is not in the base code")
        value = spec.sub(w[-1], probe.weighted_weight(w))
        if table.setdefault(c, value) != value:
            raise InconsistencyError(
                f"word {format_word(w)}: f({format_word(c)}) would be both {table[c]} and {value}"
            )
    return table


def codes_equal(a: VSCode, b: VSCode) -> bool:
    """Set equality: same base row space and ``f`` agreeing on every base codeword."""
    if a.field != b.field or a.length != b.length:
        raise UsageError("codes live in different spaces")
    if not a.base.same_space(b.base):
        return False
    hs = a.base.codeword_array()
    return bool(np.array_equal(a.f.eval_many(hs), b.f.eval_many(hs)))

"""
Linear codes over GF(q): Gaussian elimination, Hamming codes, membership,
enumeration and the 1-perfect predicate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ResourceError, UsageError
from .field import FieldSpec, same_field
from .perfect import EXHAUSTIVE_CEILING, verify_perfect
from .words import Word, check_length, vmatmul

ENUMERATION_CEILING = 2**24
MAX_LENGTH = 4096

Matrix = tuple[tuple[int, ...], ...]


def rref(spec: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    ncols = len(m[0]) if m else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = spec.inv(m[r][col])
        m[r] = [spec.mul(s, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [spec.sub(a, spec.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(spec: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(spec, rows)[0]) if rows else 0


def null_space(spec: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{x : rows . x = 0}``, one vector per free column (ascending)."""
    red, pivots = rref(spec, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for row, pc in zip(red, pivots):
            x[pc] = spec.neg(row[fc])
        basis.append(x)
    return basis


@dataclass(frozen=True)
class LinearCode:
    """
    A linear code given by a full-rank generator matrix, with its parity-check
    matrix derived (or supplied) so that ``G . H^T = 0``.
    """

    field: FieldSpec
    length: int
    generator: Matrix
    parity_check: Matrix

    def __post_init__(self) -> None:
        n = self.length
        for row in self.generator + self.parity_check:
            check_length(row, n)
        for g in self.generator:
            for h in self.parity_check:
                if sum_dot(self.field, g, h):
                    raise UsageError("generator and parity-check matrices are not orthogonal")
        if rank(self.field, self.generator) != len(self.generator):
            raise UsageError("generator matrix is rank deficient")
        if rank(self.field, self.parity_check) != n - len(self.generator):
            raise UsageError("parity-check matrix has the wrong rank")
        object.__setattr__(self, "_g", np.array(self.generator, dtype=np.uint8).reshape(-1, n))
        object.__setattr__(self, "_h", np.array(self.parity_check, dtype=np.uint8).reshape(-1, n))

    @property
    def n(self) -> int:
        return self.length

    @property
    def dimension(self) -> int:
        return len(self.generator)

    @property
    def size(self) -> int:
        return self.field.q**self.dimension

    @classmethod
    def from_generator(cls, spec: FieldSpec, generator: Sequence[Sequence[int]], length: int | None = None) -> "LinearCode":
        gen = tuple(tuple(int(x) for x in r) for r in generator)
        n = length if length is not None else len(gen[0])
        if n > MAX_LENGTH:
            raise ResourceError(f"length {n} exceeds ceiling {MAX_LENGTH}")
        return cls(spec, n, gen, tuple(tuple(r) for r in null_space(spec, gen, n)))

    @classmethod
    def from_parity_check(cls, spec: FieldSpec, parity_check: Sequence[Sequence[int]], length: int | None = None) -> "LinearCode":
        hmat = tuple(tuple(int(x) for x in r) for r in parity_check)
        n = length if length is not None else len(hmat[0])
        if n > MAX_LENGTH:
            raise ResourceError(f"length {n} exceeds ceiling {MAX_LENGTH}")
        return cls(spec, n, tuple(tuple(r) for r in null_space(spec, hmat, n)), hmat)

    @classmethod
    def full_space(cls, spec: FieldSpec, n: int) -> "LinearCode":
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(spec, n, ident, ())

    # -- membership / enumeration ----------------------------------------

    def syndrome(self, w: Sequence[int]) -> Word:
        check_length(w, self.n)
        return tuple(sum_dot(self.field, h, w) for h in self.parity_check)

    def contains(self, w: Sequence[int]) -> bool:
        return not any(self.syndrome(w))

    def contains_many(self, words: np.ndarray) -> np.ndarray:
        if words.shape[1] != self.n:
            raise UsageError(f"word length {words.shape[1]} != {self.n}")
        if not self.parity_check:
            return np.ones(len(words), dtype=bool)
        return ~vmatmul(self.field, words, self._h.T).any(axis=1)

    def encode(self, message: Sequence[int]) -> Word:
        spec = self.field
        out = [0] * self.n
        for a, row in zip(message, self.generator):
            if a:
                out = [spec.add(x, spec.mul(a, g)) for x, g in zip(out, row)]
        return tuple(out)

    def enumerate(self, ceiling: int = ENUMERATION_CEILING) -> Iterator[Word]:
        """All codewords, message vectors in lexicographic order."""
        if self.size > ceiling:
            raise ResourceError(f"{self.size} codewords exceed enumeration ceiling {ceiling}")
        for msg in itertools.product(range(self.field.q), repeat=self.dimension):
            yield self.encode(msg)

    def __iter__(self) -> Iterator[Word]:
        return self.enumerate()

    def codeword_array(self, ceiling: int = ENUMERATION_CEILING) -> np.ndarray:
        """Same order as :meth:`enumerate`, as a ``(q^m, n)`` array."""
        if self.size > ceiling:
            raise ResourceError(f"{self.size} codewords exceed enumeration ceiling {ceiling}")
        from .words import all_words

        msgs = all_words(self.field, self.dimension)
        if self.dimension == 0:
            return np.zeros((1, self.n), dtype=np.uint8)
        return vmatmul(self.field, msgs, self._g)

    def random_codewords(self, count: int, rng: np.random.Generator) -> np.ndarray:
        msgs = rng.integers(0, self.field.q, size=(count, self.dimension), dtype=np.uint8)
        if self.dimension == 0:
            return np.zeros((count, self.n), dtype=np.uint8)
        return vmatmul(self.field, msgs, self._g)

    def same_space(self, other: "LinearCode") -> bool:
        """Equality as row spaces."""
        if self.field != other.field or self.n != other.n or self.dimension != other.dimension:
            return False
        return all(other.contains(g) for g in self.generator)

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "generator": [list(r) for r in self.generator],
        }

    @classmethod
    def from_json(cls, obj: dict, spec: FieldSpec | None = None) -> "LinearCode":
        f = FieldSpec.from_json(obj["field"]) if "field" in obj else spec
        if f is None:
            raise UsageError("base code JSON has no field")
        if spec is not None:
            same_field(f, spec)
        return cls.from_generator(f, obj["generator"], int(obj["n"]))


def sum_dot(spec: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    return spec.sum(spec.mul(a, b) for a, b in zip(u, v))


def projective_points(spec: FieldSpec, r: int) -> list[tuple[int, ...]]:
    """Nonzero vectors of F^r whose first nonzero entry is 1, lexicographic."""
    return [
        v for v in itertools.product(range(spec.q), repeat=r)
        if any(v) and next(x for x in v if x) == 1
    ]


def hamming_code(spec: FieldSpec, r: int, max_length: int = MAX_LENGTH) -> LinearCode:
    """
    The q-ary Hamming code with ``r`` check symbols.

    Parity-check columns are the projective points of F^r in lexicographic
    order, so ``n = (q^r - 1)/(q - 1)`` and the dimension is ``n - r``.
    """
    if r < 2:
        raise UsageError(f"Hamming codes need r >= 2, got {r}")
    n = (spec.q**r - 1) // (spec.q - 1)
    if n > max_length:
        raise ResourceError(f"Hamming length {n} exceeds ceiling {max_length}")
    cols = projective_points(spec, r)
    hmat = tuple(tuple(c[i] for c in cols) for i in range(r))
    return LinearCode.from_parity_check(spec, hmat, n)


def contains(code: LinearCode, w: Sequence[int]) -> bool:
    return code.contains(w)


def enumerate_code(code: LinearCode, ceiling: int = ENUMERATION_CEILING) -> Iterator[Word]:
    return code.enumerate(ceiling)


def is_one_perfect(code: LinearCode, ceiling: int = EXHAUSTIVE_CEILING, threads: int = 1) -> bool:
    """Exhaustive ball-count check over all of F^n."""
    report = verify_perfect(code.contains_many, code.n, code.field, "exhaustive",
                            ceiling=ceiling, threads=threads)
    return report.verdict

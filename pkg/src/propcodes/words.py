"""
Words over GF(q): scalar helpers on tuples and vectorised helpers on arrays.

A word is a tuple of field elements; coordinate 0 is leftmost in the text form,
one digit character per coordinate.  Batches of words are ``(B, N)`` uint8
arrays, and all vectorised arithmetic is done by fancy-indexing the field's
addition and multiplication tables.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError
from .field import FieldSpec

Word = tuple[int, ...]


def parse_word(text: str, spec: FieldSpec, length: int | None = None) -> Word:
    text = text.strip()
    try:
        w = tuple(int(ch) for ch in text)
    except ValueError:
        raise UsageError(f"not a digit string: {text!r}") from None
    if any(x >= spec.q for x in w):
        raise UsageError(f"digit out of range for {spec}: {text!r}")
    if length is not None and len(w) != length:
        raise UsageError(f"expected length {length}, got {len(w)}: {text!r}")
    return w


def format_word(w: Iterable[int]) -> str:
    return "".join(str(int(x)) for x in w)


def check_length(w: Sequence[int], n: int) -> None:
    if len(w) != n:
        raise UsageError(f"word length {len(w)} != {n}")


def add(spec: FieldSpec, u: Sequence[int], v: Sequence[int]) -> Word:
    t = spec._add
    return tuple(t[a][b] for a, b in zip(u, v))


def sub(spec: FieldSpec, u: Sequence[int], v: Sequence[int]) -> Word:
    return tuple(spec.sub(a, b) for a, b in zip(u, v))


def neg(spec: FieldSpec, u: Sequence[int]) -> Word:
    return tuple(spec.neg(a) for a in u)


def scale(spec: FieldSpec, a: int, u: Sequence[int]) -> Word:
    return tuple(spec.mul(a, x) for x in u)


def dot(spec: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    return spec.sum(spec.mul(a, b) for a, b in zip(u, v))


def weight_sum(spec: FieldSpec, u: Sequence[int]) -> int:
    """Field sum of the entries (|v| in the construction)."""
    return spec.sum(u)


def hamming_distance(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a != b for a, b in zip(u, v))


# -- vectorised ---------------------------------------------------------------


def as_array(words: Iterable[Sequence[int]], length: int | None = None) -> np.ndarray:
    arr = np.array([tuple(w) for w in words], dtype=np.uint8)
    if arr.ndim == 1:
        arr = arr.reshape(0, length or 0) if arr.size == 0 else arr.reshape(1, -1)
    return arr


def vadd(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return spec.add_table[a, b]


def vsum(spec: FieldSpec, arr: np.ndarray, axis: int = -1) -> np.ndarray:
    """Field sum along ``axis``."""
    arr = np.moveaxis(arr, axis, 0)
    acc = np.zeros(arr.shape[1:], dtype=np.uint8)
    for row in arr:
        acc = spec.add_table[acc, row]
    return acc


def vmatmul(spec: FieldSpec, a: np.ndarray, m: np.ndarray) -> np.ndarray:
    """``a @ m`` over the field, ``a`` of shape ``(B, r)`` and ``m`` of shape ``(r, c)``."""
    out = np.zeros((a.shape[0], m.shape[1]), dtype=np.uint8)
    mul, addt = spec.mul_table, spec.add_table
    for i in range(m.shape[0]):
        out = addt[out, mul[a[:, i : i + 1], m[i][None, :]]]
    return out


def all_words(spec: FieldSpec, n: int) -> np.ndarray:
    """All q^n words in lexicographic order (coordinate 0 most significant)."""
    return index_to_words(np.arange(spec.q**n, dtype=np.int64), spec.q, n)


def index_to_words(idx: np.ndarray, q: int, n: int) -> np.ndarray:
    out = np.empty((len(idx), n), dtype=np.uint8)
    rest = idx.copy()
    for t in range(n - 1, -1, -1):
        out[:, t] = rest % q
        rest //= q
    return out


def words_to_index(words: np.ndarray, q: int) -> np.ndarray:
    idx = np.zeros(len(words), dtype=np.int64)
    for t in range(words.shape[1]):
        idx = idx * q + words[:, t]
    return idx

"""
Switching functions of degree at most two.

A :class:`QuadraticForm` is always an ambient polynomial on F^n,

    f(x) = a0 + sum_i b_i x_i + sum_{i<=j} a_ij x_i x_j,

never a value table on a subspace: two polynomials that agree on a subspace H
give the same code but different translation coefficients.  Indices are
0-based internally and 1-based in JSON and in the text syntax (``x1*x2``).
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import ResourceError, UsageError
from .field import FieldSpec
from .words import Word, check_length

ENUMERATION_CEILING = 2**24

Pair = tuple[int, int]


@dataclass(frozen=True)
class QuadraticForm:
    field: FieldSpec
    n: int
    constant: int = 0
    linear: tuple[int, ...] = ()
    quadratic: tuple[tuple[Pair, int], ...] = ()

    def __post_init__(self) -> None:
        spec, n = self.field, self.n
        lin = list(self.linear) if self.linear else [0] * n
        if len(lin) != n:
            raise UsageError(f"expected {n} linear coefficients, got {len(lin)}")
        quad: dict[Pair, int] = {}
        for (i, j), a in dict(self.quadratic).items() if isinstance(self.quadratic, Mapping) else self.quadratic:
            if i > j:
                i, j = j, i
            if not (0 <= i and j < n):
                raise UsageError(f"monomial x{i + 1}x{j + 1} out of range for n={n}")
            spec.check(a)
            if i == j and spec.q == 2:
                # x^2 = x on GF(2)
                lin[i] = spec.add(lin[i], a)
                continue
            quad[(i, j)] = spec.add(quad.get((i, j), 0), a)
        for b in lin:
            spec.check(b)
        spec.check(self.constant)
        object.__setattr__(self, "linear", tuple(lin))
        object.__setattr__(self, "quadratic", tuple(sorted((k, v) for k, v in quad.items() if v)))

    @classmethod
    def zero(cls, spec: FieldSpec, n: int) -> "QuadraticForm":
        return cls(spec, n)

    @property
    def coefficients(self) -> dict[Pair, int]:
        return dict(self.quadratic)

    def is_affine(self) -> bool:
        return not self.quadratic

    def plus_linear(self, j: int, beta: int) -> "QuadraticForm":
        """``f + beta * x_j`` (0-based ``j``)."""
        lin = list(self.linear)
        lin[j] = self.field.add(lin[j], beta)
        return QuadraticForm(self.field, self.n, self.constant, tuple(lin), self.quadratic)

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        if self.field != other.field or self.n != other.n:
            raise UsageError("cannot add forms over different spaces")
        spec = self.field
        quad = dict(self.quadratic)
        for k, a in other.quadratic:
            quad[k] = spec.add(quad.get(k, 0), a)
        return QuadraticForm(
            spec, self.n, spec.add(self.constant, other.constant),
            tuple(spec.add(a, b) for a, b in zip(self.linear, other.linear)),
            tuple(quad.items()),
        )

    # -- evaluation ------------------------------------------------------

    def __call__(self, x: Sequence[int]) -> int:
        return eval_form(self, x)

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        """Vectorised evaluation on a ``(B, n)`` array."""
        if xs.shape[1] != self.n:
            raise UsageError(f"word length {xs.shape[1]} != {self.n}")
        mul, add = self.field.mul_table, self.field.add_table
        out = np.full(len(xs), self.constant, dtype=np.uint8)
        for i, b in enumerate(self.linear):
            if b:
                out = add[out, mul[b, xs[:, i]]]
        for (i, j), a in self.quadratic:
            out = add[out, mul[a, mul[xs[:, i], xs[:, j]]]]
        return out

    def beta_matrix(self) -> np.ndarray:
        """``M`` with ``beta_i^c = sum_j M[i, j] c_j``."""
        spec = self.field
        m = np.zeros((self.n, self.n), dtype=np.uint8)
        for (i, j), a in self.quadratic:
            if i == j:
                m[i, i] = spec.add(a, a)
            else:
                m[i, j] = a
                m[j, i] = a
        return m

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "constant": self.constant,
            "linear": list(self.linear),
            "quadratic": [{"i": i + 1, "j": j + 1, "a": a} for (i, j), a in self.quadratic],
        }

    @classmethod
    def from_json(cls, obj: dict, spec: FieldSpec) -> "QuadraticForm":
        n = int(obj["n"])
        quad = tuple(((int(t["i"]) - 1, int(t["j"]) - 1), int(t["a"])) for t in obj.get("quadratic", []))
        return cls(spec, n, int(obj.get("constant", 0)), tuple(obj.get("linear") or [0] * n), quad)

    def to_expression(self) -> str:
        terms = [str(self.constant)] if self.constant else []
        for i, b in enumerate(self.linear):
            if b:
                terms.append(f"x{i + 1}" if b == 1 else f"{b}*x{i + 1}")
        for (i, j), a in self.quadratic:
            mono = f"x{i + 1}*x{j + 1}"
            terms.append(mono if a == 1 else f"{a}*{mono}")
        return " + ".join(terms) or "0"


_TERM = re.compile(r"^(?:(\d+)\*?)?(?:x(\d+))?(?:\*x(\d+))?$")


def parse_expression(text: str, spec: FieldSpec, n: int) -> QuadraticForm:
    """
    Parse ``"x1*x2 + 2*x1*x3 + x2 + 1"``-style sums; whitespace is ignored.

    Terms are ``c``, ``c*xI``, ``c*xI*xJ`` with 1-based indices; a missing
    coefficient means 1.
    """
    body = re.sub(r"\s+", "", text)
    if body in ("", "0", "zero"):
        return QuadraticForm.zero(spec, n)
    const, lin, quad = 0, [0] * n, {}
    for term in body.split("+"):
        mt = _TERM.match(term)
        if not term or not mt or mt.group(0) == "":
            raise UsageError(f"cannot parse term {term!r}")
        coef_s, i_s, j_s = mt.groups()
        coef = int(coef_s) if coef_s is not None else 1
        if coef >= spec.q:
            raise UsageError(f"coefficient {coef} is not an element of {spec}")
        if i_s is None:
            if j_s is not None:
                raise UsageError(f"cannot parse term {term!r}")
            const = spec.add(const, coef)
            continue
        i = int(i_s) - 1
        if not 0 <= i < n or (j_s is not None and not 1 <= int(j_s) <= n):
            raise UsageError(f"variable index out of range 1..{n} in {term!r}")
        if j_s is None:
            lin[i] = spec.add(lin[i], coef)
        else:
            key = tuple(sorted((i, int(j_s) - 1)))
            quad[key] = spec.add(quad.get(key, 0), coef)
    return QuadraticForm(spec, n, const, tuple(lin), tuple(quad.items()))


def eval_form(f: QuadraticForm, x: Sequence[int]) -> int:
    check_length(x, f.n)
    spec = f.field
    acc = f.constant
    for b, xi in zip(f.linear, x):
        acc = spec.add(acc, spec.mul(b, xi))
    for (i, j), a in f.quadratic:
        acc = spec.add(acc, spec.mul(a, spec.mul(x[i], x[j])))
    return acc


def beta_coefficients(f: QuadraticForm, c: Sequence[int]) -> tuple[int, Word]:
    """
    ``(beta0, (beta_1, ..., beta_n))`` with
    ``f(x + c) = f(x) + beta0 + sum_i beta_i x_i`` identically in ``x``.

    Read off the coefficients symbolically: expanding ``a (x_i + c_i)(x_j + c_j)``
    shifts ``a c_j`` onto ``x_i``, ``a c_i`` onto ``x_j`` and ``a c_i c_j`` onto
    the constant; ``b x_i`` only contributes ``b c_i`` to the constant.
    """
    check_length(c, f.n)
    spec = f.field
    beta = [0] * f.n
    beta0 = 0
    for i, b in enumerate(f.linear):
        beta0 = spec.add(beta0, spec.mul(b, c[i]))
    for (i, j), a in f.quadratic:
        if i == j:
            beta[i] = spec.add(beta[i], spec.mul(spec.add(a, a), c[i]))
        else:
            beta[i] = spec.add(beta[i], spec.mul(a, c[j]))
            beta[j] = spec.add(beta[j], spec.mul(a, c[i]))
        beta0 = spec.add(beta0, spec.mul(a, spec.mul(c[i], c[j])))
    return beta0, tuple(beta)


def beta_many(f: QuadraticForm, cs: np.ndarray) -> np.ndarray:
    """Linear part of :func:`beta_coefficients` for a ``(B, n)`` batch."""
    from .words import vmatmul

    if f.n == 0:
        return np.zeros((len(cs), 0), dtype=np.uint8)
    return vmatmul(f.field, cs, f.beta_matrix().T)


def _num_monomials(q: int, m: int) -> int:
    """Free coefficients of a reduced form: cross terms, squares (q > 2), linear, constant."""
    return m * (m - 1) // 2 + (m if q > 2 else 0) + m + 1


def count_quadratics(spec: FieldSpec, m: int) -> int:
    """Number of distinct functions F^m -> F of degree at most two (closed form)."""
    if m < 0:
        raise UsageError("m must be >= 0")
    return spec.q ** _num_monomials(spec.q, m)


def _monomial_keys(q: int, m: int) -> list[Pair]:
    return [(i, j) for i in range(m) for j in range(i, m) if q > 2 or i != j]


def enumerate_quadratics(
    spec: FieldSpec, m: int, zero_constant: bool = False, ceiling: int = ENUMERATION_CEILING
) -> Iterator[QuadraticForm]:
    """Every reduced coefficient assignment exactly once (constant, linear, then quadratic)."""
    keys = _monomial_keys(spec.q, m)
    total = count_quadratics(spec, m) // (spec.q if zero_constant else 1)
    if total > ceiling:
        raise ResourceError(f"{total} forms exceed enumeration ceiling {ceiling}")
    consts = [0] if zero_constant else range(spec.q)
    for a0 in consts:
        for lin in itertools.product(range(spec.q), repeat=m):
            for quad in itertools.product(range(spec.q), repeat=len(keys)):
                yield QuadraticForm(spec, m, a0, lin, tuple(zip(keys, quad)))


def random_quadratic(spec: FieldSpec, m: int, seed: int, zero_constant: bool = False) -> QuadraticForm:
    """Uniform over reduced forms; deterministic in ``seed``."""
    rng = random.Random(seed)
    keys = _monomial_keys(spec.q, m)
    a0 = 0 if zero_constant else rng.randrange(spec.q)
    lin = tuple(rng.randrange(spec.q) for _ in range(m))
    quad = tuple((k, rng.randrange(spec.q)) for k in keys)
    return QuadraticForm(spec, m, a0, lin, quad)


def value_table(f: QuadraticForm, points: np.ndarray) -> tuple[int, ...]:
    return tuple(int(v) for v in f.eval_many(points))

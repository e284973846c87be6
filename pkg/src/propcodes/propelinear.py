"""
The automorphisms Phi_w(v) = w + Pi^c(v) of C(H, f) and the certificate that
{Phi_w : w in C} is a group acting regularly on the code.

Permutations are stored in gather form: ``src[t]`` is the input position whose
entry lands in output position ``t``, i.e. ``(pi . v)[t] = v[src[t]]``.  Block
and coordinate indices are 0-based in the Python API; cycle notation is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import PreconditionError, UsageError
from .field import FieldSpec
from .linear import ENUMERATION_CEILING
from .quadratic import beta_coefficients, beta_many
from .vscode import VSCode
from .words import Word, add, check_length, format_word, parse_word, words_to_index

EXHAUSTIVE_CLOSURE_LIMIT = 2**12
MAX_WITNESSES = 10
BATCH = 2**14


@dataclass(frozen=True)
class CoordPermutation:
    src: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.src) != list(range(len(self.src))):
            raise UsageError(f"{self.src} is not a permutation")

    @classmethod
    def identity(cls, size: int) -> "CoordPermutation":
        return cls(tuple(range(size)))

    @property
    def size(self) -> int:
        return len(self.src)

    def apply(self, v: Sequence[int]) -> Word:
        return tuple(v[s] for s in self.src)

    def __mul__(self, other: "CoordPermutation") -> "CoordPermutation":
        """``self * other`` applies ``other`` first."""
        return CoordPermutation(tuple(other.src[s] for s in self.src))

    def inverse(self) -> "CoordPermutation":
        inv = [0] * self.size
        for t, s in enumerate(self.src):
            inv[s] = t
        return CoordPermutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(t == s for t, s in enumerate(self.src))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles of the position map (where each entry moves to), 0-based."""
        dest = self.inverse().src
        seen, out = set(), []
        for start in range(self.size):
            if start in seen or dest[start] == start:
                continue
            cyc, t = [], start
            while t not in seen:
                seen.add(t)
                cyc.append(t)
                t = dest[t]
            out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        """1-based, e.g. ``"(13)(24)"``; ``"Id"`` for the identity."""
        cyc = self.cycles()
        if not cyc:
            return "Id"
        sep = "," if self.size > 9 else ""
        return "".join("(" + sep.join(str(t + 1) for t in c) + ")" for c in cyc)

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))


@dataclass(frozen=True)
class Automorphism:
    """``v -> shift + perm . v``: a coordinate permutation followed by a translation."""

    field: FieldSpec
    perm: CoordPermutation
    shift: Word

    def __post_init__(self) -> None:
        check_length(self.shift, self.perm.size)

    @classmethod
    def identity(cls, spec: FieldSpec, size: int) -> "Automorphism":
        return cls(spec, CoordPermutation.identity(size), (0,) * size)

    def __call__(self, v: Sequence[int]) -> Word:
        return add(self.field, self.shift, self.perm.apply(v))

    def apply_many(self, words: np.ndarray) -> np.ndarray:
        return self.field.add_table[np.asarray(self.shift, dtype=np.uint8), words[:, list(self.perm.src)]]

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        """Composition ``self o other``: ``(w1, p1)(w2, p2) = (w1 + p1 w2, p1 p2)``."""
        return Automorphism(self.field, self.perm * other.perm, self(other.shift))

    def inverse(self) -> "Automorphism":
        pinv = self.perm.inverse()
        return Automorphism(self.field, pinv, tuple(self.field.neg(x) for x in pinv.apply(self.shift)))

    def __pow__(self, k: int) -> "Automorphism":
        base = self if k >= 0 else self.inverse()
        out = Automorphism.identity(self.field, self.perm.size)
        for _ in range(abs(k)):
            out = base * out
        return out

    def is_identity(self) -> bool:
        return self.perm.is_identity() and not any(self.shift)

    def order(self, limit: int = 10**6) -> int:
        g, k = self, 1
        while not g.is_identity():
            g, k = self * g, k + 1
            if k > limit:
                raise RuntimeError("order exceeds limit")
        return k

    def to_json(self) -> dict:
        return {"perm": list(self.perm.src), "shift": format_word(self.shift)}

    @classmethod
    def from_json(cls, obj: dict, spec: FieldSpec) -> "Automorphism":
        return cls(spec, CoordPermutation(tuple(obj["perm"])), parse_word(obj["shift"], spec))


# -- the permutations Pi_j^beta and Pi^c -------------------------------------


def pi_j_beta(code: VSCode, j: int, beta: int) -> CoordPermutation:
    """
    Move coordinate ``j`` (0-based) of block ``v_{a+beta}`` into block ``v_a``
    for every ``a``; all other coordinates, the check digit included, stay put.
    """
    if not 0 <= j < code.n:
        raise UsageError(f"block coordinate {j} out of range 0..{code.n - 1}")
    code.field.check(beta)
    src = list(range(code.length))
    for a in range(code.q):
        src[code.coordinate(a, j)] = code.coordinate(code.field.add(a, beta), j)
    return CoordPermutation(tuple(src))


def pi_c(code: VSCode, c: Sequence[int]) -> CoordPermutation:
    """Product of ``pi_j_beta(code, j, beta_j^c)`` over all ``j``; the factors have disjoint supports."""
    _, beta = beta_coefficients(code.f, c)
    out = CoordPermutation.identity(code.length)
    for j, b in enumerate(beta):
        if b:
            out = out * pi_j_beta(code, j, b)
    return out


def pi_c_many(code: VSCode, cs: np.ndarray) -> np.ndarray:
    """Gather arrays of ``Pi^c`` for a ``(B, n)`` batch of block sums; shape ``(B, N)``."""
    q, n = code.q, code.n
    beta = beta_many(code.f, cs)
    src = np.tile(np.arange(code.length, dtype=np.int64), (len(cs), 1))
    moved = code.field.add_table[np.arange(q)[None, :, None], beta[:, None, :]].astype(np.int64)
    src[:, : q * n] = (moved * n + np.arange(n)[None, None, :]).reshape(len(cs), q * n)
    return src


def _require_zero_at_origin(code: VSCode) -> None:
    if code.f.constant != 0:
        raise PreconditionError("f(0) != 0: the maps Phi_w are only defined for f(0) = 0")


def phi_w(code: VSCode, w: Sequence[int]) -> Automorphism:
    """``Phi_w(v) = w + Pi^c(v)`` with ``c`` the block sum of the codeword ``w``."""
    _require_zero_at_origin(code)
    w = tuple(w)
    if not code.contains(w):
        raise UsageError(f"{format_word(w)} is not a codeword")
    return Automorphism(code.field, pi_c(code, code.block_sum(w)), w)


# -- verification -------------------------------------------------------------


def verify_automorphism(
    code: VSCode,
    phi: Automorphism,
    ceiling: int = ENUMERATION_CEILING,
    samples: int = 4096,
    seed: int = 0,
) -> bool:
    """
    Does ``phi`` map the code onto itself?

    Exhaustive over all codewords when the code fits under ``ceiling`` (an
    injective map of F^N sending C into C sends it onto C); otherwise sampled
    codewords and sampled arbitrary words must keep their membership status.
    """
    if code.size <= ceiling:
        return bool(code.contains_many(phi.apply_many(code.codeword_array(ceiling))).all())
    rng = np.random.default_rng(seed)
    words = np.concatenate([
        code.random_codewords(samples, rng),
        rng.integers(0, code.q, size=(samples, code.length), dtype=np.uint8),
    ])
    return bool(np.array_equal(code.contains_many(words), code.contains_many(phi.apply_many(words))))


def verify_pipi(code: VSCode, ceiling: int = ENUMERATION_CEILING) -> bool:
    """``Pi^c Pi^d == Pi^{c+d}`` for all ``c, d`` in the base code."""
    hs = code.base.codeword_array(ceiling)
    perms = pi_c_many(code, hs)
    spec = code.field
    for i in range(len(hs)):
        sums = spec.add_table[hs[i][None, :], hs]
        composed = np.take(perms, perms[i], axis=1)  # row k: perms[k][perms[i][t]]
        if not np.array_equal(composed, pi_c_many(code, sums)):
            return False
    return True


def compose_check(code: VSCode, ws: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """
    For each row pair ``(w, v)``: is ``Phi_w o Phi_v == Phi_u`` with
    ``u = Phi_w(Phi_v(0)) = w + Pi^c(v)`` and ``u`` a codeword?
    """
    pw = pi_c_many(code, code.block_sum_many(ws))
    pv = pi_c_many(code, code.block_sum_many(vs))
    us = code.field.add_table[ws, np.take_along_axis(vs, pw, axis=1)]
    composed = np.take_along_axis(pv, pw, axis=1)
    pu = pi_c_many(code, code.block_sum_many(us))
    return code.contains_many(us) & (composed == pu).all(axis=1)


@dataclass
class PropelinearCertificate:
    code_ref: dict
    transitive: bool
    closed: bool
    failures: list[dict] = field(default_factory=list)
    group_order: int = 0
    automorphism_mode: str = "exhaustive"
    closure_mode: str = "exhaustive"
    pairs_checked: int = 0
    pipi: bool | None = None
    seed: int | None = None

    @property
    def propelinear(self) -> bool:
        return self.transitive and self.closed

    def to_json(self) -> dict:
        return {
            "code": self.code_ref,
            "transitive": self.transitive,
            "closed": self.closed,
            "propelinear": self.propelinear,
            "group_order": self.group_order,
            "automorphism_mode": self.automorphism_mode,
            "closure_mode": self.closure_mode,
            "pairs_checked": self.pairs_checked,
            "pipi": self.pipi,
            "seed": self.seed,
            "failures": self.failures[:MAX_WITNESSES],
        }


def code_ref(code: VSCode) -> dict:
    return {"q": code.q, "n": code.n, "N": code.length, "m": code.base.dimension,
            "size": code.size, "f": code.f.to_expression()}


def _lookup(keys_sorted: np.ndarray, order: np.ndarray, words: np.ndarray, q: int) -> np.ndarray:
    """Codeword index of each row of ``words``, or -1 for non-codewords."""
    keys = words_to_index(words, q)
    pos = np.minimum(np.searchsorted(keys_sorted, keys), len(keys_sorted) - 1)
    return np.where(keys_sorted[pos] == keys, order[pos], -1)


def certify_propelinear(
    code: VSCode,
    exhaustive_limit: int = EXHAUSTIVE_CLOSURE_LIMIT,
    closure_samples: int = 100_000,
    samples_per_word: int = 16,
    seed: int = 0,
    ceiling: int = ENUMERATION_CEILING,
) -> PropelinearCertificate:
    """
    Certify that {Phi_w : w in C} is closed under composition and acts
    regularly on C.

    Up to ``exhaustive_limit`` codewords every Phi_w is applied to every
    codeword, and each product ``Phi_w o Phi_v`` is compared with ``Phi_u``,
    ``u = Phi_w(v)``.  Above it, each Phi_w is checked on ``samples_per_word``
    random codewords, ``Pi^c Pi^d = Pi^{c+d}`` is checked over all base pairs,
    and ``closure_samples`` random pairs are composed in full.
    """
    _require_zero_at_origin(code)
    words = code.codeword_array(ceiling)
    size, length = words.shape
    failures: list[dict] = []
    perms = pi_c_many(code, code.block_sum_many(words))
    add_t = code.field.add_table

    # Phi_w(0) = w: Pi^c fixes the zero word, so this only guards the representation
    transitive = bool((add_t[words, np.zeros_like(words)] == words).all())
    closed = True

    if size <= exhaustive_limit:
        order = np.argsort(words_to_index(words, code.q))
        keys_sorted = words_to_index(words, code.q)[order]
        step = max(1, BATCH // size)
        for lo in range(0, size, step):
            rows = np.arange(lo, min(lo + step, size))
            # images[b, k] = Phi_{w_b}(w_k); composed[b, k] = perm of Phi_{w_b} o Phi_{w_k}
            images = add_t[words[rows][:, None, :], words[:, perms[rows]].transpose(1, 0, 2)]
            composed = perms[:, perms[rows]].transpose(1, 0, 2)
            found = _lookup(keys_sorted, order, images.reshape(-1, length), code.q).reshape(len(rows), size)
            inside = (found >= 0).all(axis=1)
            same = (composed == perms[np.maximum(found, 0)]).all(axis=2) & (found >= 0)
            for b in np.flatnonzero(~inside)[: MAX_WITNESSES]:
                failures.append({"kind": "not an automorphism", "w": format_word(words[rows[b]])})
            for b, k in np.argwhere(~same)[: MAX_WITNESSES]:
                failures.append({"kind": "not closed", "w": format_word(words[rows[b]]), "v": format_word(words[k])})
            transitive &= bool(inside.all())
            closed &= bool(same.all())
        pairs, pipi, mode = size * size, None, "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        step = max(1, BATCH // samples_per_word)
        for lo in range(0, size, step):
            rows = np.arange(lo, min(lo + step, size))
            targets = words[rng.integers(0, size, size=(len(rows), samples_per_word))]
            moved = np.take_along_axis(targets, perms[rows][:, None, :].repeat(samples_per_word, axis=1), axis=2)
            images = add_t[words[rows][:, None, :], moved]
            inside = code.contains_many(images.reshape(-1, length)).reshape(len(rows), -1).all(axis=1)
            for b in np.flatnonzero(~inside)[: MAX_WITNESSES]:
                failures.append({"kind": "not an automorphism", "w": format_word(words[rows[b]])})
            transitive &= bool(inside.all())
        pipi = verify_pipi(code)
        closed &= pipi
        for lo in range(0, closure_samples, BATCH):
            k = min(BATCH, closure_samples - lo)
            ws = words[rng.integers(0, size, size=k)]
            vs = words[rng.integers(0, size, size=k)]
            ok = compose_check(code, ws, vs)
            for b in np.flatnonzero(~ok)[: MAX_WITNESSES]:
                failures.append({"kind": "not closed", "w": format_word(ws[b]), "v": format_word(vs[b])})
            closed &= bool(ok.all())
        pairs, mode = closure_samples, "sampled"

    # regularity: w -> Phi_w is injective because Phi_w(0) = w and the words are distinct
    regular = transitive and len(np.unique(words_to_index(words, code.q))) == size
    return PropelinearCertificate(
        code_ref=code_ref(code),
        transitive=transitive,
        closed=closed,
        failures=failures[:MAX_WITNESSES],
        group_order=size if regular and closed else 0,
        automorphism_mode=mode,
        closure_mode="exhaustive" if mode == "exhaustive" else "structural+sampled",
        pairs_checked=pairs,
        pipi=pipi,
        seed=None if mode == "exhaustive" else seed,
    )

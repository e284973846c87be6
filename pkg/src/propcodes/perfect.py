"""
Ball-count verification of 1-perfectness for any code given by a membership oracle.

The oracle takes a ``(B, N)`` uint8 array of words and returns a length-``B``
boolean array.  In exhaustive mode the oracle is evaluated once on all of F^N
and every radius-1 ball is counted from that table; in sampled mode each
sampled centre has its whole ball (``1 + N(q-1)`` words) tested directly.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ResourceError, UsageError
from .field import FieldSpec
from .words import format_word, index_to_words

Membership = Callable[[np.ndarray], np.ndarray]

EXHAUSTIVE_CEILING = 2**24
CHUNK = 2**16
MAX_WITNESSES = 10


@dataclass
class PerfectnessReport:
    mode: str
    words_checked: int = 0
    violation_count: int = 0
    violations: list[tuple[str, int]] = field(default_factory=list)
    seed: int | None = None

    @property
    def verdict(self) -> bool:
        return self.violation_count == 0

    def merge(self, other: "PerfectnessReport") -> "PerfectnessReport":
        return PerfectnessReport(
            self.mode,
            self.words_checked + other.words_checked,
            self.violation_count + other.violation_count,
            (self.violations + other.violations)[:MAX_WITNESSES],
            self.seed,
        )

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "words_checked": self.words_checked,
            "violation_count": self.violation_count,
            "violations": [{"word": w, "ball_count": c} for w, c in self.violations],
            "verdict": self.verdict,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _neighbour_offsets(spec: FieldSpec) -> list[tuple[int, np.ndarray]]:
    """For each nonzero delta, the table d -> (d + delta) - d as int64 offsets."""
    digits = np.arange(spec.q, dtype=np.int64)
    return [
        (delta, spec.add_table[:, delta].astype(np.int64) - digits)
        for delta in range(1, spec.q)
    ]


def _exhaustive_chunk(member, lo, hi, spec, n_len, offsets) -> PerfectnessReport:
    q = spec.q
    idx = np.arange(lo, hi, dtype=np.int64)
    digits = index_to_words(idx, q, n_len)
    counts = member[idx].astype(np.int32)
    for t in range(n_len):
        weight = q ** (n_len - 1 - t)
        dt = digits[:, t]
        for _, off in offsets:
            counts += member[idx + off[dt] * weight]
    bad = np.flatnonzero(counts != 1)
    rep = PerfectnessReport("exhaustive", hi - lo, len(bad))
    rep.violations = [(format_word(digits[i]), int(counts[i])) for i in bad[:MAX_WITNESSES]]
    return rep


def ball_words(spec: FieldSpec, centres: np.ndarray) -> np.ndarray:
    """Shape ``(B, 1 + N(q-1), N)``: each centre followed by its distance-1 neighbours."""
    b, n_len = centres.shape
    q = spec.q
    balls = np.repeat(centres[:, None, :], 1 + n_len * (q - 1), axis=1)
    k = 1
    for t in range(n_len):
        for delta in range(1, q):
            balls[:, k, t] = spec.add_table[centres[:, t], delta]
            k += 1
    return balls


def _sampled_chunk(membership, centres, spec) -> PerfectnessReport:
    b, n_len = centres.shape
    balls = ball_words(spec, centres)
    hits = membership(balls.reshape(-1, n_len)).reshape(b, -1)
    counts = hits.sum(axis=1)
    bad = np.flatnonzero(counts != 1)
    rep = PerfectnessReport("sampled", b, len(bad))
    rep.violations = [(format_word(centres[i]), int(counts[i])) for i in bad[:MAX_WITNESSES]]
    return rep


def verify_perfect(
    membership: Membership,
    length: int,
    spec: FieldSpec,
    mode: str = "auto",
    trials: int = 100_000,
    seed: int = 0,
    ceiling: int = EXHAUSTIVE_CEILING,
    threads: int = 1,
) -> PerfectnessReport:
    """
    Check that every word has exactly one codeword within Hamming distance 1.

    ``mode="auto"`` picks exhaustive when ``q**length <= ceiling``.  Each
    per-word test is exact in both modes; sampled mode only restricts which
    centres are tested.  Results do not depend on ``threads``.
    """
    total = spec.q**length
    if mode == "auto":
        mode = "exhaustive" if total <= ceiling else "sampled"
    if mode not in ("exhaustive", "sampled"):
        raise UsageError(f"unknown mode {mode!r}")

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    run = pool.map if pool else map
    try:
        if mode == "exhaustive":
            if total > ceiling:
                raise ResourceError(f"q^N = {total} exceeds exhaustive ceiling {ceiling}")
            bounds = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]
            member = np.concatenate(list(run(
                lambda b: membership(index_to_words(np.arange(*b, dtype=np.int64), spec.q, length)),
                bounds,
            ))).astype(np.int32)
            offsets = _neighbour_offsets(spec)
            parts = run(lambda b: _exhaustive_chunk(member, b[0], b[1], spec, length, offsets), bounds)
            report = PerfectnessReport("exhaustive")
        else:
            rng = np.random.default_rng(seed)
            centres = rng.integers(0, spec.q, size=(trials, length), dtype=np.uint8)
            step = max(1, CHUNK // (1 + length * (spec.q - 1)))
            parts = run(
                lambda lo: _sampled_chunk(membership, centres[lo : lo + step], spec),
                range(0, trials, step),
            )
            report = PerfectnessReport("sampled", seed=seed)
        for part in parts:
            report = report.merge(part)
    finally:
        if pool:
            pool.shutdown()
    return report

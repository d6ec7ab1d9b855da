"""Defining relations, word-length patterns and aberration by direct counting.

A word is stored as a k-bit member mask over the design's columns: bit i is
set when column i takes part. The defining relation is the null space of the
map that sends a mask to the XOR of its columns, so it is spanned by
``kernel_basis`` and enumerated by XOR-doubling in numpy chunks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import CapabilityError, DesignError
from .gf2 import Design, binomial, kernel_basis, solve_mask, span

P_GUARD = 26
_CHUNK_BITS = 20

WordLengthPattern = tuple[int, ...]


def _checked_kernel(d: Design) -> list[int]:
    basis = kernel_basis(d.columns)
    if len(basis) > P_GUARD:
        raise CapabilityError(
            f"defining relation has 2^{len(basis)} words; direct counting is limited to "
            f"p <= {P_GUARD}, use the polynomial method (compose_wlpp) instead"
        )
    return basis


def _coset_chunks(basis: Sequence[int], offset: int = 0) -> Iterator[np.ndarray]:
    """Every ``offset ^ combination(basis)`` as int64 arrays of at most 2^20 entries."""
    low, high = list(basis[:_CHUNK_BITS]), list(basis[_CHUNK_BITS:])
    block = np.array([offset], dtype=np.int64)
    for b in low:
        block = np.concatenate([block, block ^ np.int64(b)])
    for shift in span(high):
        yield block ^ np.int64(shift) if shift else block


def _lengths(chunk: np.ndarray) -> np.ndarray:
    return np.bitwise_count(chunk).astype(np.int64)


def defining_relation(d: Design) -> list[int]:
    """All 2^p - 1 words (member masks), in increasing mask order."""
    basis = _checked_kernel(d)
    words = np.concatenate(list(_coset_chunks(basis)))
    return sorted(int(w) for w in words if w)


def word_columns(d: Design, word: int) -> list[int]:
    return [c for i, c in enumerate(d.columns) if word >> i & 1]


def wlp(d: Design) -> WordLengthPattern:
    """Word-length pattern (a_1, ..., a_k) by direct enumeration."""
    basis = _checked_kernel(d)
    if len(basis) <= 6:
        small = [0] * (d.k + 1)
        for word in span(basis):
            small[word.bit_count()] += 1
        return tuple(small[1:])
    counts = np.zeros(d.k + 1, dtype=np.int64)
    for chunk in _coset_chunks(basis):
        counts += np.bincount(_lengths(chunk), minlength=d.k + 1)
    counts[0] -= 1
    assert counts[0] == 0
    return tuple(int(c) for c in counts[1:])


def resolution(d: Design) -> int:
    """Length of the shortest word; 0 when there are none (full factorial)."""
    for length, count in enumerate(wlp(d), start=1):
        if count:
            return length
    return 0


def first_difference(w1: Sequence[int], w2: Sequence[int]) -> int | None:
    """1-based index of the first differing entry, or None if identical."""
    for i, (a, b) in enumerate(zip(w1, w2), start=1):
        if a != b:
            return i
    return None


def compare_wlp(w1: Sequence[int], w2: Sequence[int]) -> int:
    if len(w1) != len(w2):
        raise DesignError("aberration is only defined for designs with the same number of factors")
    r = first_difference(w1, w2)
    if r is None:
        return 0
    return -1 if w1[r - 1] < w2[r - 1] else 1


def compare_aberration(d1: Design, d2: Design) -> int:
    """-1 if d1 has smaller aberration than d2, 0 if equal WLPs, 1 otherwise."""
    if d1.k != d2.k or d1.m != d2.m:
        raise DesignError(
            f"aberration compares designs with equal k and n (got k={d1.k}, n={d1.n} "
            f"vs k={d2.k}, n={d2.n})"
        )
    return compare_wlp(wlp(d1), wlp(d2))


def format_wlp(w: Sequence[int]) -> str:
    return "(" + ",".join(str(a) for a in w) + ")"


def parse_wlp(text: str) -> WordLengthPattern:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise DesignError(f"WLP must be parenthesized: {text!r}")
    body = body[1:-1].strip()
    return tuple(int(x) for x in body.split(",")) if body else ()


def alias_chain(d: Design, effect: int) -> list[int]:
    """Lengths of the effects aliased with column ``effect`` (0 for the mean).

    The chain is the coset of the defining relation of masks whose columns
    multiply to ``effect``; it is empty when ``effect`` lies outside the
    column space of ``d``.
    """
    basis = _checked_kernel(d)
    start = solve_mask(d.columns, effect)
    if start is None:
        return []
    out = np.concatenate([_lengths(c) for c in _coset_chunks(basis, start)])
    return sorted(int(x) for x in out)


def length_histogram(lengths: Sequence[int], size: int) -> tuple[int, ...]:
    counts = [0] * (size + 1)
    for x in lengths:
        counts[x] += 1
    return tuple(counts)


def letter_frequencies(d: Design) -> dict[int, list[int]]:
    """alpha[L][j]: how many words of length L contain column j."""
    basis = _checked_kernel(d)
    alpha = {}
    for chunk in _coset_chunks(basis):
        lengths = _lengths(chunk)
        for j in range(d.k):
            hit = lengths[(chunk >> j) & 1 == 1]
            for length, cnt in enumerate(np.bincount(hit, minlength=d.k + 1)):
                if cnt:
                    alpha.setdefault(length, [0] * d.k)[j] += int(cnt)
    return alpha


@dataclass(frozen=True)
class ComplementWordStats:
    """Length-3 words of H_m seen from a removed column set d_bar.

    a3_bar counts words inside d_bar, a3_prime_bar words with exactly two
    columns in d_bar, eliminated the words with at least one.
    """

    h: int
    a3_bar: int
    a3_prime_bar: int
    eliminated: int


def complement_word_stats(d_bar: Design) -> ComplementWordStats:
    removed = d_bar.as_set()
    inside = two = touched = 0
    n = d_bar.n
    for x in range(1, n):
        for y in range(x + 1, n):
            z = x ^ y
            if z < y:
                continue
            hits = (x in removed) + (y in removed) + (z in removed)
            if hits:
                touched += 1
            if hits == 3:
                inside += 1
            elif hits == 2:
                two += 1
    return ComplementWordStats(len(removed), inside, two, touched)


def eliminated_by_formula(h: int, n: int, a3_bar: int) -> int:
    """Closed form h(n-h-1)/2 + a3 for the number of length-3 words lost."""
    return h * (n - h - 1) // 2 + a3_bar


def pair_identity_holds(stats: ComplementWordStats) -> bool:
    return stats.a3_prime_bar + 3 * stats.a3_bar == binomial(stats.h, 2)

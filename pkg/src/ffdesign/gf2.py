"""Column algebra over GF(2).

A column of H_m is stored as an m-bit integer: bit j is set when basic
factor j takes part in the product (A is bit 0, B bit 1, ...). The group
product of two columns is XOR and the identity column I is 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DesignError

MAX_M = 16
IDENTITY = 0

# The letter I is reserved for the identity column.
ALPHABET = "ABCDEFGHJKLMNOPQRSTUVWXYZ" + "abcdefghijklmnopqrstuvwxyz"


def _check_m(m: int, low: int = 1) -> None:
    if not isinstance(m, int) or not low <= m <= MAX_M:
        raise DesignError(f"m must be an integer in [{low}, {MAX_M}], got {m!r}")


def letters(column: int) -> str:
    """Render a column as juxtaposed letters, e.g. 0b0111 -> 'ABC'; 0 -> 'I'."""
    if column == IDENTITY:
        return "I"
    return "".join(ALPHABET[j] for j in range(column.bit_length()) if column >> j & 1)


def parse_column(word: str, m: int | None = None) -> int:
    word = word.strip()
    if not word:
        raise DesignError("empty column word")
    if word == "I":
        return IDENTITY
    column = 0
    for ch in word:
        j = ALPHABET.find(ch)
        if j < 0 or j >= MAX_M:
            raise DesignError(f"unknown factor letter {ch!r} in {word!r}")
        if m is not None and j >= m:
            raise DesignError(f"letter {ch!r} in {word!r} is beyond m={m}")
        if column >> j & 1:
            raise DesignError(f"repeated letter {ch!r} in {word!r}")
        column |= 1 << j
    return column


def text_key(column: int) -> tuple[int, str]:
    """Sort key for the printed order: fewer letters first, then alphabetical."""
    return column.bit_count(), letters(column)


@dataclass(frozen=True)
class Design:
    """An ordered set of k distinct nonzero columns of H_m.

    Also used for unordered column sets (complements, subsets of E_m);
    compare with ``as_set()`` when order should not matter.
    """

    m: int
    columns: tuple[int, ...]

    def __post_init__(self):
        _check_m(self.m)
        cols = tuple(self.columns)
        object.__setattr__(self, "columns", cols)
        top = 1 << self.m
        for c in cols:
            if not isinstance(c, int) or c <= 0 or c >= top:
                raise DesignError(f"column {c!r} is not a nonzero {self.m}-bit vector")
        if len(set(cols)) != len(cols):
            raise DesignError("design columns must be distinct")

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "Design":
        """Parse 'A,B,C,ABC'. Without ``m`` the largest letter used decides it."""
        words = [w for w in text.replace(" ", "").split(",") if w]
        cols = [parse_column(w, m) for w in words]
        if IDENTITY in cols:
            raise DesignError("the identity column I cannot be a design column")
        if m is None:
            m = max((c.bit_length() for c in cols), default=1)
        return cls(m, tuple(cols))

    @property
    def k(self) -> int:
        return len(self.columns)

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def rank(self) -> int:
        return rank(self.columns)

    @property
    def p(self) -> int:
        return self.k - self.rank

    def as_set(self) -> frozenset[int]:
        return frozenset(self.columns)

    def complement(self) -> "Design":
        own = self.as_set()
        return Design(self.m, tuple(c for c in sorted(range(1, self.n), key=text_key) if c not in own))

    def sorted(self) -> "Design":
        return Design(self.m, tuple(sorted(self.columns, key=text_key)))

    def __iter__(self):
        return iter(self.columns)

    def __len__(self):
        return len(self.columns)

    def __contains__(self, column):
        return column in self.columns

    def __str__(self):
        return ",".join(letters(c) for c in self.columns)


ColumnSet = Design


def hamming_set(m: int) -> Design:
    """All 2^m - 1 nonzero columns, in printed order."""
    _check_m(m, low=2)
    return Design(m, tuple(sorted(range(1, 1 << m), key=text_key)))


def column_product(a: int, b: int, m: int | None = None) -> int:
    """Group product of two columns; returns IDENTITY (0) for x*x."""
    if m is not None and (a >> m or b >> m):
        raise DesignError(f"columns {a}, {b} do not belong to H_{m}")
    return a ^ b


def product(columns: Iterable[int]) -> int:
    acc = 0
    for c in columns:
        acc ^= c
    return acc


class XorBasis:
    """Incremental GF(2) elimination that also tracks how each vector was formed.

    ``add(vec, tag)`` returns None when ``vec`` is new, or the tag combination
    that reproduces it from earlier vectors (XOR of tags), i.e. a dependency.
    """

    def __init__(self):
        self._rows: dict[int, tuple[int, int]] = {}

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        while vec:
            top = vec.bit_length() - 1
            row = self._rows.get(top)
            if row is None:
                break
            vec ^= row[0]
            tag ^= row[1]
        return vec, tag

    def add(self, vec: int, tag: int = 0) -> int | None:
        vec, tag = self.reduce(vec, tag)
        if vec == 0:
            return tag
        self._rows[vec.bit_length() - 1] = (vec, tag)
        return None

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0


def rank(columns: Iterable[int]) -> int:
    basis = XorBasis()
    for c in columns:
        basis.add(c)
    return len(basis)


def kernel_basis(columns: Sequence[int]) -> list[int]:
    """Basis of {z : XOR of columns[i] over bits i of z = 0}, as k-bit masks.

    Each returned mask has a distinct highest bit, so the masks are independent.
    """
    basis = XorBasis()
    kernel = []
    for i, c in enumerate(columns):
        dep = basis.add(c, 1 << i)
        if dep is not None:
            kernel.append(dep)
    return kernel


def solve_mask(columns: Sequence[int], target: int) -> int | None:
    """A mask z with XOR of the selected columns equal to ``target``, or None."""
    basis = XorBasis()
    for i, c in enumerate(columns):
        basis.add(c, 1 << i)
    rest, tag = basis.reduce(target)
    return tag if rest == 0 else None


def min_rank_for_size(h: int) -> int:
    """Smallest v with h <= 2^v - 1, i.e. ceil(log2(h + 1))."""
    if h < 0:
        raise DesignError("set size must be nonnegative")
    return (h).bit_length()


def even_set(m: int) -> Design:
    _check_m(m, low=2)
    return Design(m, tuple(c for c in hamming_set(m).columns if c.bit_count() % 2 == 0))


def odd_set(m: int) -> Design:
    _check_m(m, low=2)
    return Design(m, tuple(c for c in hamming_set(m).columns if c.bit_count() % 2 == 1))


def span(columns: Iterable[int]) -> list[int]:
    """All XOR combinations of ``columns``, including 0, without repeats."""
    out = [0]
    seen = {0}
    for c in columns:
        if c in seen:
            continue
        new = [x ^ c for x in out]
        out.extend(new)
        seen.update(new)
    return out


def subgroup_closure(generators: Design | Iterable[int], m: int | None = None) -> Design:
    """Nonzero elements of the subgroup generated by ``generators``."""
    if isinstance(generators, Design):
        m = generators.m if m is None else m
        gens = generators.columns
    else:
        gens = tuple(generators)
    if not gens:
        raise DesignError("subgroup_closure needs at least one generator")
    if m is None:
        m = max(g.bit_length() for g in gens)
    return Design(m, tuple(sorted((x for x in span(gens) if x), key=text_key)))


def binomial(n: int, r: int) -> int:
    return math.comb(n, r) if 0 <= r <= n else 0


def parity(x: int) -> int:
    return x.bit_count() & 1


def log2_runs(n: int) -> int:
    if not isinstance(n, int) or n < 2 or n & (n - 1):
        raise DesignError(f"number of runs must be a power of two, got {n!r}")
    return n.bit_length() - 1

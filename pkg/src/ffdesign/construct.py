"""Minimum-aberration constructions for n/2 <= k <= n-1.

Every MA design with k > n/2 contains the odd columns O_m; the remaining
r = k - n/2 columns come from the even columns E_m, which form a copy of
H_{m-1}. Choosing them is the same problem one dimension down, so

    ma_design(k, 2^m) = O_m + embed(ma_design(r, 2^(m-1)))

whenever r >= 2^(m-2). Below that the builder searches the minimum-rank
complements directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache

from .errors import CapabilityError, DesignError, OutOfScopeError
from .gf2 import (
    ALPHABET,
    Design,
    XorBasis,
    binomial,
    even_set,
    hamming_set,
    letters,
    log2_runs,
    min_rank_for_size,
    odd_set,
    parity,
    parse_column,
    rank,
    span,
    text_key,
)
from .iso import MAX_ISO_M, apply_map, canonical_form, invert
from .polynomial import Poly, compose_wlpp, poly_from_wlp, wlp_from_poly
from .wlp import wlp

MAX_CANDIDATES = 200_000
MAX_TIE_CANON = 5_000


class Certificate(str, Enum):
    SATURATED = "saturated"
    RES_IV_UNIQUE = "resolution-IV-unique"
    COMPLEMENT = "complement-2^v-1"
    EXHAUSTIVE = "exhaustive-search"
    RECURSIVE = "recursive"


GUARANTEED = {
    Certificate.SATURATED,
    Certificate.RES_IV_UNIQUE,
    Certificate.COMPLEMENT,
    Certificate.EXHAUSTIVE,
}


def factor_label(index: int) -> str:
    if index >= len(ALPHABET):
        raise DesignError(f"no single-letter label for factor #{index + 1}")
    return ALPHABET[index]


@dataclass(frozen=True)
class GeneratorSet:
    """Added factors and the basic-column products they are assigned to."""

    m: int
    assignments: tuple[tuple[str, int], ...]

    def words(self) -> list[str]:
        return [letters(col) + label for label, col in self.assignments]

    def __str__(self):
        return "=".join(["I", *self.words()])

    def design(self) -> Design:
        basics = tuple(1 << j for j in range(self.m))
        return Design(self.m, basics + tuple(col for _, col in self.assignments))

    @classmethod
    def parse(cls, text: str) -> "GeneratorSet":
        parts = [w for w in text.replace(" ", "").split("=") if w]
        if not parts or parts[0] != "I":
            raise DesignError(f"generator notation starts with 'I=': {text!r}")
        words = parts[1:]
        if not words:
            raise DesignError("no generators given; a full factorial has no generator notation")
        labels = []
        for w in words:
            idx = [ALPHABET.find(ch) for ch in w]
            if min(idx) < 0:
                raise DesignError(f"unknown letter in generator {w!r}")
            labels.append(ALPHABET[max(idx)])
        m = min(ALPHABET.index(lab) for lab in labels)
        if len(set(labels)) != len(labels):
            raise DesignError("each generator must introduce its own added factor")
        assignments = []
        for w, lab in zip(words, labels):
            col = parse_column(w.replace(lab, "", 1), m)
            assignments.append((lab, col))
        return cls(m, tuple(assignments))


@dataclass(frozen=True)
class MaResult:
    design: Design
    wlp: tuple[int, ...]
    certificate: Certificate
    sub_certificate: Certificate | None = None
    ties: int | None = 1

    @cached_property
    def generators(self) -> GeneratorSet:
        return generators_of(self.design)

    @property
    def ma_guaranteed(self) -> bool:
        if self.certificate == Certificate.RECURSIVE:
            return self.sub_certificate in GUARANTEED
        return self.certificate in GUARANTEED


def saturated_res_iv(m: int) -> Design:
    """O_m: all odd products of the m basic columns (k = 2^(m-1), resolution IV)."""
    if not isinstance(m, int) or m < 3:
        raise DesignError(f"O_m needs m >= 3, got {m!r}")
    return odd_set(m)


def embed_into_even(d_prime: Design) -> Design:
    """Image of a design of H_{m-1} in E_m under B'_j -> B_j B_m, order kept."""
    top = 1 << d_prime.m
    return Design(d_prime.m + 1, tuple(c | top if parity(c) else c for c in d_prime.columns))


def _check_scope(k: int, n: int) -> int:
    m = log2_runs(n)
    if m < 3:
        raise DesignError(f"constructions start at n = 8 runs, got n={n}")
    if not n // 2 <= k <= n - 1:
        raise OutOfScopeError(
            f"k={k} is outside n/2 <= k <= n-1 for n={n}; only designs with k >= n/2 are constructed"
        )
    return m


def _result(design: Design, wlp_vec, certificate, sub=None, ties=1) -> MaResult:
    return MaResult(design, tuple(wlp_vec), certificate, sub, ties)


@lru_cache(maxsize=None)
def hamming_wlpp(m: int) -> Poly:
    """WLPP of the saturated design H_m, using H_m = O_m + copy of H_(m-1)."""
    if m == 2:
        return Poly([1, 0, 0, 1])
    return compose_wlpp(m, hamming_wlpp(m - 1), (1 << (m - 1)) - 1)


def ma_design(k: int, n: int) -> MaResult:
    """Minimum-aberration 2^(k-p) design with n runs, for n/2 <= k <= n-1."""
    m = _check_scope(k, n)
    if k == n - 1:
        return _result(hamming_set(m), wlp_from_poly(hamming_wlpp(m), k), Certificate.SATURATED)
    o_m = saturated_res_iv(m)
    if k == n // 2:
        return _result(o_m, wlp_from_poly(compose_wlpp(m, poly_from_wlp(()), 0), k),
                       Certificate.RES_IV_UNIQUE)
    r = k - n // 2
    if m - 1 >= 3 and r >= 1 << (m - 2):
        sub = ma_design(r, n // 2)
        e = embed_into_even(sub.design)
        d = Design(m, o_m.columns + e.columns)
        pd = compose_wlpp(m, poly_from_wlp(sub.wlp), r)
        # record the guarantee the recursion bottoms out in
        cert, ties = Certificate.RECURSIVE, sub.ties
        sub_cert = sub.sub_certificate if sub.certificate == Certificate.RECURSIVE else sub.certificate
    else:
        found = min_rank_search(k, m)
        d, pd = found.design, poly_from_wlp(found.wlp)
        cert, sub_cert, ties = Certificate.EXHAUSTIVE, None, found.ties
    h = n - 1 - k
    if (h + 1) & h == 0:
        if rank(d.complement().columns) != min_rank_for_size(h):
            raise AssertionError("complement of a constructed MA design is not of minimum rank")
        cert = Certificate.COMPLEMENT
    return _result(d, wlp_from_poly(pd, k), cert, sub_cert, ties)


def min_rank_subgroup(v: int, m: int) -> list[int]:
    """Nonzero elements of the rank-v subgroup of E_m generated by B_1 B_(j+1), j = 1..v."""
    if v > m - 1:
        raise DesignError(f"E_{m} has no subgroup of rank {v}")
    gens = [1 | (1 << j) for j in range(1, v + 1)]
    return sorted(x for x in span(gens) if x)


def min_rank_search(k: int, m: int) -> MaResult:
    """Best design among those whose complement has minimum rank.

    All minimum-rank complements of size h are isomorphic to subsets of one
    fixed rank-v_h subgroup J inside E_m, so the candidates are the h-subsets
    of J. Each candidate leaves d = O_m + e with e = E_m minus the candidate,
    whose pattern follows from P_e through compose_wlpp. Ties are broken by
    the least canonical form of e read as a design of H_(m-1); ``ties`` is the
    number of distinct classes at the minimum.
    """
    n = 1 << m
    if m < 3:
        raise DesignError(f"min_rank_search needs m >= 3, got {m}")
    h = n - 1 - k
    if not 0 <= h < n // 2:
        raise DesignError(f"minimum-rank search needs 0 <= h < n/2 (k={k}, n={n})")
    v = min_rank_for_size(h)
    sub = min_rank_subgroup(v, m)
    o_m = odd_set(m).columns
    evens = even_set(m).columns
    r = k - n // 2
    total = binomial(len(sub), h)
    if total > MAX_CANDIDATES:
        if r <= m - 1:
            # r independent even columns give P_e = 1, the least possible
            # pattern, and all independent r-sets form one class.
            e = embed_into_even(Design(m - 1, tuple(1 << j for j in range(r)))).columns
            pd = compose_wlpp(m, poly_from_wlp(()), r)
            return _result(Design(m, o_m + e), wlp_from_poly(pd, k), Certificate.EXHAUSTIVE)
        raise CapabilityError(
            f"minimum-rank search for k={k}, n={n} has {total} candidates (limit {MAX_CANDIDATES})"
        )
    # P_d - P_d' = (P_e - P_e')(P_m - Q_m) and P_m - Q_m starts with 1, so
    # ranking candidates by the pattern of e ranks the designs identically.
    best = None
    winners = []
    for removed in itertools.combinations(sub, h):
        gone = set(removed)
        key = wlp(Design(m, tuple(c for c in evens if c not in gone)))
        if best is None or key < best:
            best, winners = key, [removed]
        elif key == best:
            winners.append(removed)
    low = (1 << (m - 1)) - 1
    if not any(best):
        # e independent for every winner: a single isomorphism class
        chosen, ties = winners[0], 1
    elif m - 1 <= MAX_ISO_M and len(winners) <= MAX_TIE_CANON:
        classes = {}
        for removed in winners:
            gone = set(removed)
            e = tuple(c & low for c in evens if c not in gone)
            classes.setdefault(canonical_form(Design(m - 1, e)).columns, removed)
        chosen, ties = classes[min(classes)], len(classes)
    else:
        chosen, ties = winners[0], None
    gone = set(chosen)
    e = tuple(c for c in evens if c not in gone)
    pd = compose_wlpp(m, poly_from_wlp(best), r)
    return _result(Design(m, o_m + e), wlp_from_poly(pd, k), Certificate.EXHAUSTIVE, ties=ties)


def generators_of(d: Design) -> GeneratorSet:
    """Generator form of ``d`` on m basic factors.

    Basic columns are picked greedily in printed order and relabelled
    A, B, C, ... by a linear map. When that map is the identity the added
    factors keep the design's own column order; otherwise the relabelled
    columns are listed in printed order.
    """
    if rank(d.columns) != d.m:
        raise DesignError(f"design has rank {rank(d.columns)} < m={d.m}; it is not a 2^(k-p) fraction on m basics")
    basis = XorBasis()
    chosen = []
    for c in sorted(d.columns, key=text_key):
        if basis.add(c) is None:
            chosen.append(c)
    to_basics = invert(tuple(chosen))
    identity = all(c == 1 << j for j, c in enumerate(chosen))
    taken = set(chosen)
    rest = [apply_map(to_basics, c) for c in d.columns if c not in taken]
    if not identity:
        rest.sort(key=text_key)
    return GeneratorSet(d.m, tuple((factor_label(d.m + i), col) for i, col in enumerate(rest)))


def contains_odd_set_image(d: Design) -> int | None:
    """A nonzero functional f with {x : f.x = 1} inside d, or None.

    Such a set is the image of O_m under some invertible map, so this decides
    whether d contains a copy of O_m.
    """
    own = d.as_set()
    for f in range(1, d.n):
        if all(x in own for x in range(1, d.n) if parity(f & x)):
            return f
    return None

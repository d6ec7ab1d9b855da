"""Design isomorphism under the GL(m, 2) action on columns.

A linear map is a tuple ``images`` of m columns: ``images[j]`` is the image
of basic factor j. Designs are isomorphic when some invertible map sends
one column set onto the other.

The canonical form of a column set S with at most half of H_m is the
lexicographically least sorted image of S over all invertible maps. It is
found by a branch-and-bound search over ordered bases drawn from S: the
least image always sends the chosen basis to A, B, C, ... in turn, so only
those choices need exploring. Larger sets are reduced to their complement
(same stabilizer, same orbit structure): their canonical form is
H_m minus the canonical form of the complement.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import CapabilityError, DesignError
from .gf2 import Design, XorBasis

MAX_ISO_M = 5
LinearMap = tuple[int, ...]

_INF = 1 << 62


def apply_map(images: Sequence[int], x: int) -> int:
    out = 0
    j = 0
    while x:
        if x & 1:
            out ^= images[j]
        x >>= 1
        j += 1
    return out


def compose(f: Sequence[int], g: Sequence[int]) -> LinearMap:
    """f after g."""
    return tuple(apply_map(f, gj) for gj in g)


def invert(images: Sequence[int]) -> LinearMap:
    m = len(images)
    basis = XorBasis()
    for j, v in enumerate(images):
        if basis.add(v, 1 << j) is not None:
            raise DesignError("linear map is not invertible")
    inv = []
    for t in range(m):
        rest, tag = basis.reduce(1 << t)
        inv.append(tag)
    return tuple(inv)


def identity_map(m: int) -> LinearMap:
    return tuple(1 << j for j in range(m))


def general_linear_group(m: int) -> Iterator[LinearMap]:
    """Every invertible m x m map over GF(2). Only sensible for m <= 4."""
    if m > 4:
        raise CapabilityError(f"enumerating GL({m},2) is not supported")
    top = 1 << m

    def extend(prefix, spanned):
        if len(prefix) == m:
            yield tuple(prefix)
            return
        for v in range(1, top):
            if v in spanned:
                continue
            new = spanned | {x ^ v for x in spanned}
            yield from extend(prefix + [v], new)

    yield from extend([], frozenset({0}))


def gl_order(m: int) -> int:
    order = 1
    for i in range(m):
        order *= (1 << m) - (1 << i)
    return order


def _check_iso_m(m: int) -> None:
    if m > MAX_ISO_M:
        raise CapabilityError(
            f"exhaustive isomorphism search is limited to m <= {MAX_ISO_M} (got m={m})"
        )


def _search(columns: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Return (least image, one optimal basis sequence, number of optimal sequences)."""
    cols = sorted(set(columns))
    if not cols:
        return (), (), 1
    best: list = [None, None, 0]

    def prefix_key(values, limit):
        return tuple(v for v in values if v < limit) + (_INF,)

    def dfs(seq, coord, images, remaining):
        limit = 1 << len(seq)
        if not remaining:
            cand = tuple(sorted(images))
            if best[0] is None or cand < best[0]:
                best[0], best[1], best[2] = cand, tuple(seq), 1
            elif cand == best[0]:
                best[2] += 1
            return
        if best[0] is not None:
            mine = tuple(sorted(images)) + (_INF,)
            theirs = prefix_key(best[0], limit)
            if mine > theirs:
                return
        for b in remaining:
            new_coord = dict(coord)
            for x, y in coord.items():
                new_coord[x ^ b] = y | limit
            new_images = list(images)
            new_remaining = []
            for s in remaining:
                img = new_coord.get(s)
                if img is None:
                    new_remaining.append(s)
                else:
                    new_images.append(img)
            seq.append(b)
            dfs(seq, new_coord, new_images, new_remaining)
            seq.pop()

    dfs([], {0: 0}, [], cols)
    return best[0], best[1], best[2]


def _column_set(d) -> tuple[int, tuple[int, ...]]:
    if isinstance(d, Design):
        return d.m, d.columns
    raise TypeError(f"expected a Design, got {type(d).__name__}")


def _reduced(m: int, cols: Sequence[int]) -> tuple[bool, tuple[int, ...]]:
    full = (1 << m) - 1
    if 2 * len(cols) > full:
        own = set(cols)
        return True, tuple(c for c in range(1, full + 1) if c not in own)
    return False, tuple(cols)


def canonical_form(d: Design) -> Design:
    """Canonical representative of the GL(m, 2) orbit of ``d``, columns in integer order."""
    m, cols = _column_set(d)
    _check_iso_m(m)
    flipped, small = _reduced(m, cols)
    least = _search(small)[0]
    if flipped:
        least_set = set(least)
        return Design(m, tuple(c for c in range(1, 1 << m) if c not in least_set))
    return Design(m, least)


def canonicalizing_map(d: Design) -> LinearMap:
    """An invertible map sending ``d`` onto ``canonical_form(d)``."""
    m, cols = _column_set(d)
    _check_iso_m(m)
    _, small = _reduced(m, cols)
    _, seq, _ = _search(small)
    basis = XorBasis()
    chosen = []
    for b in list(seq) + [1 << j for j in range(m)]:
        if basis.add(b) is None:
            chosen.append(b)
    # chosen[i] is sent to the i-th unit column
    return invert(tuple(chosen))


def automorphism_count(d: Design) -> int:
    """Order of the stabilizer of ``d``'s column set in GL(m, 2)."""
    m, cols = _column_set(d)
    _check_iso_m(m)
    _, small = _reduced(m, cols)
    _, seq, count = _search(small)
    for i in range(len(seq), m):
        count *= (1 << m) - (1 << i)
    return count


def orbit_size(d: Design) -> int:
    return gl_order(d.m) // automorphism_count(d)


def find_isomorphism(d1: Design, d2: Design) -> LinearMap | None:
    """An invertible map T with T(d1) = d2 as column sets, or None.

    Cheap invariants (k, rank, word-length pattern) are compared first; for
    sets over half of H_m the pattern is taken on the complements.
    """
    from .wlp import wlp

    if d1.m != d2.m:
        raise DesignError("designs live in different H_m")
    _check_iso_m(d1.m)
    if d1.k != d2.k or d1.rank != d2.rank:
        return None
    small1 = Design(d1.m, _reduced(d1.m, d1.columns)[1])
    small2 = Design(d2.m, _reduced(d2.m, d2.columns)[1])
    if wlp(small1) != wlp(small2):
        return None
    if canonical_form(d1).columns != canonical_form(d2).columns:
        return None
    t1 = canonicalizing_map(d1)
    t2 = canonicalizing_map(d2)
    witness = compose(invert(t2), t1)
    assert {apply_map(witness, c) for c in d1.columns} == d2.as_set()
    return witness


def are_isomorphic(d1: Design, d2: Design) -> bool:
    return find_isomorphism(d1, d2) is not None


def image(d: Design, images: Sequence[int]) -> Design:
    return Design(d.m, tuple(apply_map(images, c) for c in d.columns))

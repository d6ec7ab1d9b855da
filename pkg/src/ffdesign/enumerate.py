"""Desk-scale oracle: isomorphism classes of designs, the design lattice and
a batch verifier that re-checks the theory by brute force.

Classes are grown one column at a time from the empty set and deduplicated
by canonical form. Sets larger than half of H_m are obtained as complements
of the small ones, which is also how their canonical forms are defined.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .construct import (
    GeneratorSet,
    contains_odd_set_image,
    generators_of,
    ma_design,
)
from .errors import CapabilityError, DesignError
from .gf2 import (
    Design,
    binomial,
    even_set,
    hamming_set,
    letters,
    min_rank_for_size,
    odd_set,
    rank,
)
from .iso import apply_map, are_isomorphic, canonical_form, general_linear_group, orbit_size
from .polynomial import (
    Poly,
    compose_wlpp,
    even_chain_poly,
    poly_from_wlp,
    saturated_wlpp,
    wlp_from_poly,
)
from .wlp import (
    alias_chain,
    complement_word_stats,
    eliminated_by_formula,
    format_wlp,
    length_histogram,
    letter_frequencies,
    pair_identity_holds,
    wlp,
)

FULL_M = 4
SLICE_M = 5
SLICE_SIZE = 7


@lru_cache(maxsize=None)
def _grow(m: int, upto: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Canonical forms of every class of size 0..upto, by one-column extension."""
    layers = [((),)]
    full = range(1, 1 << m)
    for _ in range(upto):
        found = set()
        for rep in layers[-1]:
            have = set(rep)
            for c in full:
                if c not in have:
                    found.add(canonical_form(Design(m, rep + (c,))).columns)
        layers.append(tuple(sorted(found)))
    return tuple(layers)


def _classes_of_size(m: int, size: int) -> list[Design]:
    total = (1 << m) - 1
    if not 0 <= size <= total:
        raise DesignError(f"H_{m} has no subsets of size {size}")
    small = min(size, total - size)
    if m > SLICE_M or (m == SLICE_M and small > SLICE_SIZE):
        raise CapabilityError(
            f"class enumeration covers all of H_{FULL_M} and, in H_{SLICE_M}, sets or "
            f"complements of at most {SLICE_SIZE} columns"
        )
    layer = _grow(m, small)[small]
    if small == size:
        return [Design(m, rep) for rep in layer]
    forms = []
    for rep in layer:
        comp = set(rep)
        forms.append(canonical_form(Design(m, tuple(c for c in range(1, total + 1) if c not in comp))))
    return sorted(forms, key=lambda d: d.columns)


def enumerate_classes(m: int, k: int | None = None, complement_size: int | None = None) -> list[Design]:
    """One canonical representative per isomorphism class.

    With neither ``k`` nor ``complement_size`` every nonempty class of H_m is
    returned (m <= 4), ordered by size and then canonical form.
    """
    total = (1 << m) - 1
    if k is not None and complement_size is not None and k + complement_size != total:
        raise DesignError("k and complement_size disagree")
    if complement_size is not None:
        k = total - complement_size
    if k is not None:
        return _classes_of_size(m, k)
    if m > FULL_M:
        raise CapabilityError(f"full enumeration is limited to m <= {FULL_M}; give k or complement_size")
    out = []
    for size in range(1, total + 1):
        out.extend(_classes_of_size(m, size))
    return out


def orbit_masks(d: Design) -> np.ndarray:
    """The orbit of d under GL(m, 2) as column-subset bitmasks (bit c-1 for column c)."""
    table = _gl_table(d.m)
    if not d.columns:
        return np.zeros(1, dtype=np.int64)
    images = table[:, list(d.columns)]
    masks = np.bitwise_or.reduce(np.left_shift(np.int64(1), images - 1), axis=1)
    return np.unique(masks)


@lru_cache(maxsize=None)
def _gl_table(m: int) -> np.ndarray:
    rows = [[apply_map(g, c) for c in range(1 << m)] for g in general_linear_group(m)]
    return np.array(rows, dtype=np.int64)


def mask_to_design(m: int, mask: int) -> Design:
    return Design(m, tuple(c for c in range(1, 1 << m) if mask >> (c - 1) & 1))


def format_set(d: Design) -> str:
    return " ".join(letters(c) for c in d.columns) if d.columns else "-"


@dataclass
class DesignLattice:
    """Classes of H_m by size, joined when one extends the other by a column."""

    m: int
    nodes: dict[int, list[Design]]
    edges: list[tuple[int, int, int]]
    ma_flags: dict[int, int]
    worst: dict[int, int] = field(default_factory=dict)

    @property
    def node_count(self) -> int:
        return sum(len(v) for v in self.nodes.values())

    def index(self, d: Design) -> int:
        return self.nodes[d.k].index(canonical_form(d))

    def worst_mirrors_ma(self) -> dict[int, bool]:
        """Per k: is the largest-aberration class the complement of the MA class at 2^m-1-k?

        Reported only; for m=4 it fails at k=10 and k=11.
        """
        total = (1 << self.m) - 1
        out = {}
        for k, ds in self.nodes.items():
            mirror = self.nodes[total - k][self.ma_flags[total - k]]
            out[k] = canonical_form(ds[self.worst[k]].complement()) == mirror
        return out

    def edge_lines(self) -> list[str]:
        """'k,parent,child' per edge, canonical forms as space-separated words."""
        return [
            f"{k},{format_set(self.nodes[k][i])},{format_set(self.nodes[k + 1][j])}"
            for k, i, j in self.edges
        ]


def build_lattice(m: int = FULL_M) -> DesignLattice:
    if m > FULL_M:
        raise CapabilityError(f"the full lattice is built only for m <= {FULL_M}")
    total = (1 << m) - 1
    nodes = {size: _classes_of_size(m, size) for size in range(total + 1)}
    where = {size: {d.columns: i for i, d in enumerate(ds)} for size, ds in nodes.items()}
    edges = set()
    for size in range(total):
        for i, d in enumerate(nodes[size]):
            have = d.as_set()
            for c in range(1, total + 1):
                if c not in have:
                    child = canonical_form(Design(m, d.columns + (c,))).columns
                    edges.add((size, i, where[size + 1][child]))
    ma_flags, worst = {}, {}
    for size, ds in nodes.items():
        patterns = [wlp(d) for d in ds]
        ma_flags[size] = min(range(len(ds)), key=lambda i: patterns[i])
        worst[size] = max(range(len(ds)), key=lambda i: patterns[i])
    return DesignLattice(m, nodes, sorted(edges), ma_flags, worst)


# ---------------------------------------------------------------- verification


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        return [f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f": {r.detail}" if r.detail else "")
                for r in self.results]


D1 = "A,B,C,D,ABC,ABD,ACD,BCD,ABCD"
D2 = "A,BC,BD,CD,ABC,ABD,ACD,BCD,ABCD"
K12 = "A,B,C,D,ABC,ABD,ACD,BCD,AD,BD,CD,ABCD"


def check_known_patterns() -> tuple[bool, str]:
    expected = {
        D1: (0, 0, 4, 14, 8, 0, 4, 1, 0),
        D2: (0, 0, 8, 10, 4, 4, 4, 1, 0),
        "A,B,C,D,ABC,ABD,ACD,BCD": (0, 0, 0, 14, 0, 0, 0, 1),
        K12: (0, 0, 16, 39, 48, 48, 48, 39, 16, 0, 0, 1),
    }
    for spec, want in expected.items():
        got = wlp(Design.parse(spec, 4))
        if got != want:
            return False, f"{spec}: {format_wlp(got)} != {format_wlp(want)}"
    return True, "d1, d2, O_4 and the 2^(12-8) design"


def check_chain_identity(ms=range(3, 7)) -> tuple[bool, str]:
    for m in ms:
        l = 1 << (m - 1)
        rhs = Poly(binomial(l, i) if i % 2 == 0 else 0 for i in range(l + 1))
        if saturated_wlpp(m) + even_chain_poly(m) * (l - 1) != rhs:
            return False, f"m={m}"
    return True, f"m={min(ms)}..{max(ms)}"


def check_saturated_vs_count(ms=(3, 4, 5)) -> tuple[bool, str]:
    for m in ms:
        if wlp_from_poly(saturated_wlpp(m), 1 << (m - 1)) != wlp(odd_set(m)):
            return False, f"O_{m}"
    return True, f"O_m for m in {tuple(ms)}"


def _composition_agrees(m: int, e: tuple[int, ...]) -> bool:
    pe = poly_from_wlp(wlp(Design(m, e)))
    d = Design(m, odd_set(m).columns + e)
    return wlp_from_poly(compose_wlpp(m, pe, len(e)), d.k) == wlp(d)


def check_composition_all(m: int = 4) -> tuple[bool, str]:
    evens = even_set(m).columns
    count = 0
    for size in range(len(evens) + 1):
        for e in itertools.combinations(evens, size):
            count += 1
            if not _composition_agrees(m, e):
                return False, f"e={','.join(map(letters, e))}"
    return True, f"{count} subsets of E_{m}"


def check_composition_sample(m: int = 5, samples: int = 100, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    evens = even_set(m).columns
    for _ in range(samples):
        e = tuple(c for c in evens if rng.random() < 0.5)
        if not _composition_agrees(m, e):
            return False, f"e={','.join(map(letters, e))}"
    return True, f"{samples} random subsets of E_{m} (seed {seed})"


def check_class_counts() -> tuple[bool, str]:
    per_k = {k: len(_classes_of_size(4, k)) for k in range(16)}
    nonempty = sum(per_k.values()) - per_k[0]
    problems = []
    if nonempty != 45:
        problems.append(f"{nonempty} classes")
    for k, want in {3: 2, 4: 3, 5: 4, 9: 5, 10: 4}.items():
        if per_k[k] != want:
            problems.append(f"k={k}: {per_k[k]} != {want}")
    if any(per_k[k] != per_k[15 - k] for k in range(16)):
        problems.append("counts not symmetric")
    return not problems, "; ".join(problems) or f"45 classes, per k {list(per_k.values())}"


def check_orbit_partition() -> tuple[bool, str]:
    reps = enumerate_classes(4)
    by_stabilizer = sum(orbit_size(d) for d in reps)
    seen = np.zeros(1 << 15, dtype=bool)
    for d in reps:
        masks = orbit_masks(d)
        if seen[masks].any():
            return False, f"orbit of {d} overlaps another class"
        seen[masks] = True
    covered = int(seen[1:].sum())
    ok = by_stabilizer == 32767 and covered == 32767
    return ok, f"orbit-stabilizer sum {by_stabilizer}, GL orbits cover {covered}"


def check_complement_duality() -> tuple[bool, str]:
    for k in range(16):
        for d in _classes_of_size(4, k):
            comp = canonical_form(d.complement())
            if comp not in _classes_of_size(4, 15 - k):
                return False, f"complement of {d} missing"
            if canonical_form(comp.complement()) != d:
                return False, f"complement of {d} is not an involution"
    return True, "all classes of H_4"


def check_wlp_invariance() -> tuple[bool, str]:
    """Every subset of H_4 has the pattern of its class representative."""
    for d in enumerate_classes(4):
        want = wlp(d)
        for mask in orbit_masks(d):
            if wlp(mask_to_design(4, int(mask))) != want:
                return False, f"orbit of {d}"
    return True, "32767 subsets of H_4"


@lru_cache(maxsize=None)
def exhaustive_minima(m: int, k: int) -> tuple[tuple[int, ...], tuple[Design, ...]]:
    """Least WLP over all k-subsets of H_m and every subset attaining it."""
    cols = hamming_set(m).columns
    best, winners = None, []
    for combo in itertools.combinations(cols, k):
        d = Design(m, combo)
        w = wlp(d)
        if best is None or w < best:
            best, winners = w, [d]
        elif w == best:
            winners.append(d)
    return best, tuple(winners)


def check_min_rank_complements(ks=range(8, 15)) -> tuple[bool, str]:
    for k in ks:
        best, winners = exhaustive_minima(4, k)
        v = min_rank_for_size(15 - k)
        for d in winners:
            if rank(d.complement().columns) != v:
                return False, f"k={k}: MA design {d} has complement rank != {v}"
        if ma_design(k, 16).wlp != best:
            return False, f"k={k}: ma_design gives {format_wlp(ma_design(k, 16).wlp)}, minimum {format_wlp(best)}"
    return True, f"all C(15,k) subsets for k={min(ks)}..{max(ks)}"


def check_ma_contains_odd_set(ks=range(9, 15)) -> tuple[bool, str]:
    target = canonical_form(odd_set(4))
    for k in ks:
        for d in exhaustive_minima(4, k)[1]:
            f = contains_odd_set_image(d)
            if f is None:
                return False, f"k={k}: {d} has no copy of O_4"
            copy = Design(4, tuple(x for x in range(1, 16) if (f & x).bit_count() % 2))
            if canonical_form(copy) != target:
                return False, f"k={k}: copy in {d} is not isomorphic to O_4"
    return True, f"every MA design for k={min(ks)}..{max(ks)}"


def check_even_part_ma(m: int = 4) -> tuple[bool, str]:
    o_m = odd_set(m).columns
    evens = even_set(m).columns
    for r in range(1, len(evens) + 1):
        best = min(wlp(Design(m, o_m + e)) for e in itertools.combinations(evens, r))
        got = ma_design((1 << (m - 1)) + r, 1 << m).wlp
        if got != best:
            return False, f"r={r}: {format_wlp(got)} != {format_wlp(best)}"
    return True, f"r=1..{len(evens)}"


def check_lattice_ma() -> tuple[bool, str]:
    lattice = build_lattice(4)
    if lattice.node_count != 46:
        return False, f"{lattice.node_count} nodes"
    o4 = canonical_form(odd_set(4))
    if o4 not in lattice.nodes[8]:
        return False, "O_4 is not a k=8 node"
    for k in range(9, 16):
        node = lattice.nodes[k][lattice.ma_flags[k]]
        if contains_odd_set_image(node) is None:
            return False, f"MA node at k={k} lacks O_4"
    for k, ds in lattice.nodes.items():
        patterns = [wlp(d) for d in ds]
        if patterns.count(min(patterns)) != 1:
            return False, f"k={k} has several MA classes"
    return True, f"46 nodes, {len(lattice.edges)} edges"


def check_length3_identities(samples: int = 1000, seed: int = 0, m: int = 5) -> tuple[bool, str]:
    rng = random.Random(seed)
    n = 1 << m
    triples = [t for t in itertools.combinations(range(1, n), 3) if t[0] ^ t[1] ^ t[2] == 0]
    for _ in range(samples):
        h = rng.randrange(0, n)
        d_bar = Design(m, tuple(rng.sample(range(1, n), h)))
        stats = complement_word_stats(d_bar)
        removed = d_bar.as_set()
        direct = sum(1 for t in triples if removed.intersection(t))
        if not (pair_identity_holds(stats)
                and stats.eliminated == direct
                and direct == eliminated_by_formula(h, n, stats.a3_bar)):
            return False, f"d_bar={d_bar}"
    return True, f"{samples} random subsets of H_{m} (seed {seed})"


def alias_structure_problems(m: int) -> list[str]:
    """Chain-level identities of O_m; an empty list means all hold."""
    d = odd_set(m)
    l = d.k
    w = wlp(d)
    a = (1,) + w
    problems = []
    for col in d.columns:
        hist = length_histogram(alias_chain(d, col), l)
        for size in range(1, l + 1, 2):
            if hist[size] * l != binomial(l, size):
                problems.append(f"c_{size} of {letters(col)}")
    even_hists = {length_histogram(alias_chain(d, col), l) for col in even_set(m).columns}
    if len(even_hists) != 1:
        problems.append("even chains differ")
    b = even_hists.pop()
    for size in range(2, l + 1, 2):
        if a[size] + (l - 1) * b[size] != binomial(l, size):
            problems.append(f"a_{size} + (l-1) b_{size}")
    q = even_chain_poly(m)
    if any(q[i] != b[i] for i in range(l + 1)):
        problems.append("Q_m differs from the even chain histogram")
    alpha = letter_frequencies(d)
    for size, freq in alpha.items():
        if sum(freq) != size * a[size]:
            problems.append(f"sum alpha_{size}")
        if len(set(freq)) != 1:
            problems.append(f"alpha_{size} not constant")
    return problems


def check_alias_structure(ms=(3, 4, 5)) -> tuple[bool, str]:
    for m in ms:
        problems = alias_structure_problems(m)
        if problems:
            return False, f"m={m}: {', '.join(problems)}"
    return True, f"O_m for m in {tuple(ms)}"


def check_generators_roundtrip() -> tuple[bool, str]:
    designs = [ma_design(k, 16).design for k in range(8, 16)] + [Design.parse(D2, 4), Design.parse(D1, 4)]
    for d in designs:
        again = GeneratorSet.parse(str(generators_of(d))).design()
        if not are_isomorphic(again, d):
            return False, f"{d}"
    return True, f"{len(designs)} designs"


def check_k28_n32() -> tuple[bool, str]:
    res = ma_design(28, 32)
    comp = res.design.complement()
    if comp.k != 3 or rank(comp.columns) != 2:
        return False, f"complement {comp}"
    if not are_isomorphic(comp, Design.parse("AB,AC,BC", 5)):
        return False, "complement not isomorphic to {AB,AC,BC}"
    if res.wlp != wlp(res.design):
        return False, "composed and counted patterns differ"
    return True, f"complement {comp}, p={res.design.p}"


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("known word-length patterns", check_known_patterns),
    ("P_m + (2^(m-1)-1) Q_m identity", check_chain_identity),
    ("saturated recurrence vs counting", check_saturated_vs_count),
    ("WLPP composition, all e in E_4", check_composition_all),
    ("WLPP composition, random e in E_5", check_composition_sample),
    ("class counts for n=16", check_class_counts),
    ("orbits partition H_4 subsets", check_orbit_partition),
    ("complement duality", check_complement_duality),
    ("WLP is a class invariant", check_wlp_invariance),
    ("minimum-rank complements (exhaustive, n=16)", check_min_rank_complements),
    ("MA designs contain O_4", check_ma_contains_odd_set),
    ("MA iff e is MA in H_3", check_even_part_ma),
    ("lattice and MA nodes", check_lattice_ma),
    ("length-3 counting identities in H_5", check_length3_identities),
    ("alias chain structure of O_m", check_alias_structure),
    ("generator notation round trip", check_generators_roundtrip),
    ("2^(28-23) construction", check_k28_n32),
]


def verify_all(sink: Callable[[str], None] | None = None, seed: int = 0) -> VerificationReport:
    """Run every check; failures are recorded, not raised."""
    report = VerificationReport()
    for name, check in CHECKS:
        start = time.perf_counter()
        try:
            if check in (check_composition_sample, check_length3_identities):
                ok, detail = check(seed=seed)
            else:
                ok, detail = check()
        except Exception as exc:  # a crash is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        result = CheckResult(name, ok, f"{detail} [{time.perf_counter() - start:.1f}s]")
        report.results.append(result)
        if sink is not None:
            sink(report.lines()[-1])
    return report

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ffdesign.errors import CapabilityError, DesignError
from ffdesign.gf2 import Design
from ffdesign.iso import (
    apply_map,
    are_isomorphic,
    automorphism_count,
    canonical_form,
    canonicalizing_map,
    compose,
    find_isomorphism,
    general_linear_group,
    gl_order,
    image,
    invert,
    orbit_size,
)

GL3 = list(general_linear_group(3))


def brute_canonical(d):
    return min(tuple(sorted(apply_map(g, c) for c in d.columns)) for g in GL3)


def brute_stabilizer(d):
    own = d.as_set()
    return sum(1 for g in GL3 if {apply_map(g, c) for c in d.columns} == own)


def test_group_orders():
    assert len(GL3) == gl_order(3) == 168
    assert gl_order(4) == 20160


def test_invert_and_compose():
    t = (1, 0b1110, 0b1101, 0b1011)
    assert compose(invert(t), t) == (1, 2, 4, 8)
    with pytest.raises(DesignError):
        invert((1, 2, 3))


def test_relabelling_map_sends_d2_to_its_image(d2):
    t = (1, 0b1110, 0b1101, 0b1011)
    want = Design.parse("A,B,C,D,AB,AC,AD,BC,ABC", 4)
    assert image(d2, t).as_set() == want.as_set()


def test_canonical_form_separates_orbits_m3():
    """Same canonical form exactly when the group scan says same orbit."""
    subsets = [Design(3, c) for size in range(8) for c in itertools.combinations(range(1, 8), size)]
    for d in subsets:
        assert automorphism_count(d) == brute_stabilizer(d)
        if d.k <= 3:
            assert canonical_form(d).columns == brute_canonical(d)
    by_form, by_scan = {}, {}
    for d in subsets:
        by_form.setdefault(canonical_form(d).columns, set()).add(d.columns)
        by_scan.setdefault(brute_canonical(d), set()).add(d.columns)
    assert sorted(map(sorted, by_form.values())) == sorted(map(sorted, by_scan.values()))


GL4 = list(general_linear_group(4))


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(1, 15), min_size=1), st.integers(0, len(GL4) - 1))
def test_canonical_form_invariant_under_maps(cols, which):
    d = Design(4, tuple(sorted(cols)))
    t = GL4[which]
    moved = image(d, t)
    assert canonical_form(moved) == canonical_form(d)
    witness = find_isomorphism(d, moved)
    assert image(d, witness).as_set() == moved.as_set()
    cmap = canonicalizing_map(d)
    assert image(d, cmap).as_set() == canonical_form(d).as_set()


def test_d1_and_d2_not_isomorphic(d1, d2):
    assert not are_isomorphic(d1, d2)
    assert are_isomorphic(d2, image(d2, (1, 0b1110, 0b1101, 0b1011)))


def test_orbit_size_of_o4(o4):
    assert orbit_size(o4) == 15


def test_capability_limit():
    with pytest.raises(CapabilityError):
        canonical_form(Design(6, (1, 2, 3)))
    with pytest.raises(CapabilityError):
        next(general_linear_group(5))


def test_m5_complement_flip_consistent():
    rng = random.Random(3)
    for _ in range(5):
        cols = tuple(rng.sample(range(1, 32), 20))
        d = Design(5, cols)
        assert canonical_form(d).complement().as_set() == canonical_form(d.complement()).as_set()

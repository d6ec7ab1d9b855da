import pytest
from hypothesis import given, strategies as st

from ffdesign.errors import DesignError, InvariantViolation
from ffdesign.gf2 import Design, binomial, even_set, odd_set
from ffdesign.polynomial import (
    Poly,
    compose_wlpp,
    even_chain_poly,
    poly_from_wlp,
    saturated_wlpp,
    wlp_from_poly,
)
from ffdesign.wlp import wlp

coeff_lists = st.lists(st.integers(-50, 50), max_size=8)


@given(coeff_lists, coeff_lists)
def test_ring_laws(a, b):
    p, q = Poly(a), Poly(b)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) - q == p


@given(coeff_lists, coeff_lists)
def test_product_evaluates(a, b):
    def at(poly, x):
        return sum(c * x ** i for i, c in enumerate(poly.coeffs))

    p, q = Poly(a), Poly(b)
    for x in (-2, 1, 3):
        assert at(p * q, x) == at(p, x) * at(q, x)


@given(coeff_lists)
def test_str_parse_roundtrip(a):
    p = Poly(a)
    assert Poly.parse(str(p)) == p


def test_str_forms():
    assert str(Poly([1, 0, 0, 4, 14])) == "1+4u^3+14u^4"
    assert str(Poly([0, -1, 2])) == "-u+2u^2"
    assert str(Poly()) == "0"
    assert Poly([0, 0]) == Poly() == 0


def test_binomial_power():
    assert Poly([1, 1]) ** 5 == Poly(binomial(5, i) for i in range(6))


def test_exact_div():
    assert Poly([4, 8]).exact_div(4) == Poly([1, 2])
    with pytest.raises(InvariantViolation):
        Poly([3]).exact_div(2)


def test_known_polynomials():
    assert saturated_wlpp(4) == Poly.parse("1+14u^4+u^8")
    assert even_chain_poly(4) == Poly.parse("4u^2+8u^4+4u^6")
    assert even_chain_poly(3) == Poly.parse("2u^2")
    assert saturated_wlpp(5) == Poly.parse("1+140u^4+448u^6+870u^8+448u^10+140u^12+u^16")


@pytest.mark.parametrize("m", [3, 4, 5])
def test_saturated_matches_count(m):
    assert wlp_from_poly(saturated_wlpp(m), 1 << (m - 1)) == wlp(odd_set(m))


@pytest.mark.parametrize("m", range(3, 9))
def test_chain_identity(m):
    l = 1 << (m - 1)
    evens = Poly(binomial(l, i) if i % 2 == 0 else 0 for i in range(l + 1))
    assert saturated_wlpp(m) + even_chain_poly(m) * (l - 1) == evens


@given(st.sets(st.sampled_from(even_set(4).columns)))
def test_compose_matches_count(e):
    e = tuple(sorted(e))
    d = Design(4, odd_set(4).columns + e)
    pe = poly_from_wlp(wlp(Design(4, e)))
    assert wlp_from_poly(compose_wlpp(4, pe, len(e)), d.k) == wlp(d)


def test_conversion_guards():
    with pytest.raises(DesignError):
        wlp_from_poly(Poly([2]), 3)
    with pytest.raises(DesignError):
        wlp_from_poly(Poly([1, 0, 0, 0, 1]), 3)
    with pytest.raises(DesignError):
        compose_wlpp(4, Poly([1, 0, 0, 1]), 2)
    with pytest.raises(DesignError):
        saturated_wlpp(2)

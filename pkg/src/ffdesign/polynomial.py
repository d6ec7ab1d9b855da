"""Word-length pattern polynomials with exact integer coefficients.

P_m is the polynomial of the saturated resolution-IV design O_m and Q_m the
common effect-length polynomial of its even alias chains. For d = O_m + e
with e inside the even columns E_m,

    P_d(u) = (1 + u)^r Q_m(u) + P_e(u) (P_m(u) - Q_m(u)),   r = |e|.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DesignError, InvariantViolation
from .gf2 import binomial


class Poly:
    """Polynomial in u with integer coefficients, ``coeffs[i]`` multiplying u^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "Poly":
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(size))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        result = Poly([1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def exact_div(self, divisor: int) -> "Poly":
        out = []
        for i, c in enumerate(self.coeffs):
            q, rem = divmod(c, divisor)
            if rem:
                raise InvariantViolation(f"coefficient {c} of u^{i} is not divisible by {divisor}")
            out.append(q)
        return Poly(out)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "u" if i == 1 else f"u^{i}"
                body = power if mag == 1 else f"{mag}{power}"
            sign = "-" if c < 0 else "+"
            terms.append(body if not terms and c > 0 else sign + body)
        return "".join(terms) if terms else "0"

    _TERM = re.compile(r"([+-]?)(\d*)(u(?:\^(\d+))?)?")

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Inverse of ``str``: '1+16u^3+39u^4', '4u^2-u', '0'."""
        body = text.replace(" ", "")
        if not body:
            raise DesignError("empty polynomial")
        coeffs: dict[int, int] = {}
        pos = 0
        while pos < len(body):
            match = cls._TERM.match(body, pos)
            if not match or match.end() == pos or not (match.group(2) or match.group(3)):
                raise DesignError(f"cannot parse polynomial {text!r} at {body[pos:]!r}")
            sign = -1 if match.group(1) == "-" else 1
            coeff = int(match.group(2)) if match.group(2) else 1
            if match.group(3):
                power = int(match.group(4)) if match.group(4) else 1
            else:
                power = 0
            coeffs[power] = coeffs.get(power, 0) + sign * coeff
            pos = match.end()
        size = max(coeffs) + 1
        return cls(coeffs.get(i, 0) for i in range(size))


def poly_from_wlp(w: Sequence[int]) -> Poly:
    """P(u) = 1 + a_1 u + ... + a_k u^k."""
    return Poly([1, *w])


def wlp_from_poly(poly: Poly, k: int) -> tuple[int, ...]:
    """WLP of length k from a polynomial with constant term 1."""
    if poly[0] != 1:
        raise DesignError(f"a word-length pattern polynomial has constant term 1, got {poly[0]}")
    if poly.degree > k:
        raise DesignError(f"polynomial of degree {poly.degree} does not fit k={k}")
    return tuple(poly[i] for i in range(1, k + 1))


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 3:
        raise DesignError(f"O_m is defined here for m >= 3, got {m!r}")


@lru_cache(maxsize=None)
def saturated_wlpp(m: int) -> Poly:
    """P_m from the recurrence a_2 = 0, a_{2r+2} = [C(l, 2r+1) - (l - 2r) a_{2r}] / (2r + 2)."""
    _check_m(m)
    l = 1 << (m - 1)
    a = [0] * (l + 1)
    a[0] = 1
    for r in range(1, l // 2):
        num = binomial(l, 2 * r + 1) - (l - 2 * r) * a[2 * r]
        q, rem = divmod(num, 2 * r + 2)
        if rem or q < 0:
            raise InvariantViolation(f"recurrence for a_{2 * r + 2} of O_{m} is not exact: {num}/{2 * r + 2}")
        a[2 * r + 2] = q
    return Poly(a)


def _even_binomials(m: int) -> Poly:
    l = 1 << (m - 1)
    return Poly(binomial(l, i) if i % 2 == 0 else 0 for i in range(l + 1))


@lru_cache(maxsize=None)
def even_chain_poly(m: int) -> Poly:
    """Q_m = [sum_i C(2^(m-1), 2i) u^(2i) - P_m] / (2^(m-1) - 1)."""
    _check_m(m)
    q = (_even_binomials(m) - saturated_wlpp(m)).exact_div((1 << (m - 1)) - 1)
    if any(c < 0 for c in q.coeffs):
        raise InvariantViolation(f"Q_{m} has a negative coefficient: {q}")
    return q


def compose_wlpp(m: int, p_e: Poly, r: int) -> Poly:
    """WLPP of O_m + e from the WLPP of e (r = number of columns of e)."""
    _check_m(m)
    if p_e[0] != 1:
        raise DesignError("P_e must have constant term 1")
    if r < 0 or p_e.degree > r:
        raise DesignError(f"P_e of degree {p_e.degree} cannot belong to r={r} columns")
    pm, qm = saturated_wlpp(m), even_chain_poly(m)
    result = Poly([1, 1]) ** r * qm + p_e * (pm - qm)
    if result[0] != 1 or any(c < 0 for c in result.coeffs):
        raise InvariantViolation(f"composed polynomial {result} is not a WLPP (P_e={p_e}, r={r})")
    return result

"""Ehrhart polynomials by exact interpolation, in three linked bases."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .algebra import (
    RationalPolynomial,
    as_fraction,
    binomial,
    format_fraction,
    forward_differences,
    newton_forward,
    to_binomial_basis,
)
from .geometry import LatticePolytope, count_lattice_points


@dataclass(frozen=True)
class EhrhartProfile:
    """One polynomial ``i_P`` seen three ways.

    ``c`` are monomial coefficients, ``a`` the coefficients in the basis
    ``binomial(n + d - j, d)`` (the h*-vector), ``delta`` the forward
    differences at zero.  ``counts`` keeps the lattice-point counts the
    profile was interpolated from, if any.
    """

    d: int
    c: tuple[Fraction, ...]
    a: tuple[Fraction, ...]
    delta: tuple[Fraction, ...]
    name: str = ""

    @property
    def polynomial(self) -> RationalPolynomial:
        return RationalPolynomial(self.c)

    @property
    def volume(self) -> Fraction:
        return self.c[self.d]

    @property
    def surface_half(self) -> Fraction:
        return self.c[self.d - 1] if self.d >= 1 else Fraction(0)

    @classmethod
    def from_polynomial(cls, p: RationalPolynomial, d: int | None = None, name: str = "") -> "EhrhartProfile":
        if d is None:
            d = p.degree
        if p.degree > d or d < 0:
            raise ValueError(f"polynomial of degree {p.degree} does not fit d={d}")
        c = tuple(p[i] for i in range(d + 1))
        a = to_binomial_basis(p, d).a
        delta = tuple(forward_differences(p, d))
        return cls(d, c, a, delta, name)

    @classmethod
    def from_coefficients(cls, c: Sequence, name: str = "") -> "EhrhartProfile":
        """Profile for a hand-entered coefficient vector ``c[0], ..., c[d]``."""
        cs = [as_fraction(x) for x in c]
        return cls.from_polynomial(RationalPolynomial(cs), len(cs) - 1, name)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "c": [format_fraction(x) for x in self.c],
            "a": [format_fraction(x) for x in self.a],
            "delta": [format_fraction(x) for x in self.delta],
        }

    @classmethod
    def from_json(cls, doc: dict | str) -> "EhrhartProfile":
        if isinstance(doc, str):
            doc = json.loads(doc)
        prof = cls.from_coefficients(doc["c"], name=doc.get("name", ""))
        if int(doc["d"]) != prof.d:
            raise ValueError("'d' disagrees with the coefficient count")
        for key in ("a", "delta"):
            if key in doc and tuple(as_fraction(x) for x in doc[key]) != getattr(prof, key):
                raise ValueError(f"'{key}' is inconsistent with 'c'")
        return prof


def ehrhart_polynomial(P: LatticePolytope) -> EhrhartProfile:
    """Interpolate ``i_P`` through the counts at ``n = 0..d`` (Newton forward form)."""
    d = P.dimension
    counts = [count_lattice_points(P, n) for n in range(d + 1)]
    deltas = list(counts)
    out = []
    for _ in range(d + 1):
        out.append(Fraction(deltas[0]))
        deltas = [deltas[i + 1] - deltas[i] for i in range(len(deltas) - 1)]
    p = newton_forward(out)
    c = tuple(p[i] for i in range(d + 1))
    a = to_binomial_basis(p, d).a
    return EhrhartProfile(d, c, a, tuple(out), P.name)


def evaluate(profile: EhrhartProfile, n) -> Fraction:
    return profile.polynomial(as_fraction(n))


def interior_count_via_reciprocity(profile: EhrhartProfile, n: int) -> Fraction:
    """``(-1)^d i_P(-n)``: the number of lattice points strictly inside ``nP``."""
    if n < 1:
        raise ValueError("reciprocity is stated for n >= 1")
    return (-1) ** profile.d * evaluate(profile, -n)


def generating_numerator(profile: EhrhartProfile) -> RationalPolynomial:
    """``f(x)`` with ``sum_n i_P(n) x^n = f(x) / (1 - x)^(d+1)``."""
    return RationalPolynomial(profile.a)


def generating_series(profile: EhrhartProfile, terms: int) -> list[Fraction]:
    """First ``terms`` coefficients of ``f(x) * sum_m binomial(m + d, d) x^m``."""
    d = profile.d
    f = profile.a
    return [
        sum((f[j] * binomial(m - j + d, d) for j in range(min(d, m) + 1)), Fraction(0))
        for m in range(terms)
    ]


def leading_identity_holds(profile: EhrhartProfile) -> bool:
    """``sum_j a_j == d! * c_d``."""
    return sum(profile.a, Fraction(0)) == factorial(profile.d) * profile.c[profile.d]

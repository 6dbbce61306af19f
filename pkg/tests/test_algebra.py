from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrhart.algebra import (
    BinomialBasisPolynomial,
    RationalPolynomial,
    bernoulli_polynomial,
    binomial,
    binomial_poly,
    count_real_roots,
    format_fraction,
    forward_differences,
    newton_forward,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
    stirling_first,
    sturm_real_roots,
    sturm_sequence,
    to_binomial_basis,
)

X = sympy.Symbol("x")

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(fractions, min_size=0, max_size=7).map(RationalPolynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def to_sympy(p: RationalPolynomial):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], X, domain="QQ")


def from_sympy(q) -> RationalPolynomial:
    cs = sympy.Poly(q, X).all_coeffs()[::-1]
    return RationalPolynomial([Fraction(int(c.p), int(c.q)) for c in cs])


# ---------------------------------------------------------------- polynomial arithmetic


def test_trailing_zeros_trimmed():
    p = RationalPolynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert RationalPolynomial([0, 0]).degree == -1
    assert RationalPolynomial([]).is_zero()


def test_immutable():
    p = RationalPolynomial([1, 2])
    with pytest.raises(AttributeError):
        p.coeffs = (3,)


def test_format():
    assert RationalPolynomial([1, 3, 3, 1]).format("n") == "n^3 + 3n^2 + 3n + 1"
    assert RationalPolynomial([1, Fraction(11, 6), 1, Fraction(1, 6)]).format("n") == "1/6n^3 + n^2 + 11/6n + 1"
    assert RationalPolynomial([]).format() == "0"


def test_format_fraction():
    assert format_fraction(Fraction(3, 4)) == "3/4"
    assert format_fraction(Fraction(-6, 3)) == "-2"
    assert format_fraction(5) == "5"


@given(polys, polys)
def test_add_mul_match_sympy(p, q):
    assert to_sympy(p + q) == to_sympy(p) + to_sympy(q)
    assert to_sympy(p * q) == to_sympy(p) * to_sympy(q)
    assert to_sympy(p - q) == to_sympy(p) - to_sympy(q)


@given(polys, nonzero_polys)
def test_divmod_identity(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(polys, fractions)
def test_evaluation_matches_sympy(p, x):
    assert p(x) == Fraction(str(to_sympy(p).eval(sympy.Rational(x.numerator, x.denominator))))


@given(polys)
def test_float_evaluation(p):
    assert abs(p(0.5) - float(p(Fraction(1, 2)))) < 1e-9 * (1 + sum(abs(float(c)) for c in p))


@given(polys, st.integers(0, 3))
def test_derivative_matches_sympy(p, k):
    assert to_sympy(p.derivative(k)) == sympy.Poly(sympy.diff(to_sympy(p).as_expr(), X, k), X, domain="QQ")


@given(polys)
def test_integral_inverts_derivative(p):
    assert p.integral().derivative() == p
    assert p.integral()(0) == 0


@given(polys, fractions, fractions)
def test_shift(p, t, x):
    assert p.shift(t)(x) == p(x + t)


@given(nonzero_polys)
def test_primitive_positive_multiple(p):
    q = p.primitive()
    assert all(c.denominator == 1 for c in q)
    ratio = q.leading / p.leading
    assert ratio > 0
    assert q == p.scale(ratio)


def test_from_roots():
    p = RationalPolynomial.from_roots([1, -2, Fraction(1, 3)])
    for r in (1, -2, Fraction(1, 3)):
        assert p(r) == 0
    assert p.leading == 1


# ---------------------------------------------------------------- gcd and squarefree


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=60)
def test_gcd_matches_sympy(p, q):
    g = poly_gcd(p, q)
    expected = sympy.gcd(to_sympy(p), to_sympy(q))
    if expected.degree() <= 0:
        assert g.degree == 0
    else:
        assert g.monic() == from_sympy(expected.monic().as_expr())


def test_squarefree_decomposition_yun():
    p = RationalPolynomial.from_roots([1, 1, 1, -2, -2, 3], lead=Fraction(5, 2))
    parts = {k: q.monic() for q, k in squarefree_decomposition(p)}
    assert parts[3] == RationalPolynomial.from_roots([1])
    assert parts[2] == RationalPolynomial.from_roots([-2])
    assert parts[1] == RationalPolynomial.from_roots([3])
    assert squarefree_part(p) == RationalPolynomial.from_roots([1, -2, 3])


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6))
def test_squarefree_product_recovers_monic(roots):
    p = RationalPolynomial.from_roots(roots)
    acc = RationalPolynomial([1])
    for q, k in squarefree_decomposition(p):
        acc = acc * q ** k
    assert acc.monic() == p.monic()
    assert squarefree_part(p).degree == len(set(roots))


# ---------------------------------------------------------------- sequences


@pytest.mark.parametrize("n", range(-6, 9))
@pytest.mark.parametrize("k", range(0, 6))
def test_generalized_binomial(n, k):
    assert binomial(n, k) == sympy.binomial(n, k) if n >= 0 else binomial(n, k) == sympy.ff(n, k) / sympy.factorial(k)


def test_binomial_negative_upper():
    assert [binomial(-1, k) for k in range(5)] == [1, -1, 1, -1, 1]
    with pytest.raises(ValueError):
        binomial(3, -1)


@pytest.mark.parametrize("shift,k", [(0, 3), (2, 3), (-1, 4), (5, 0)])
def test_binomial_poly(shift, k):
    p = binomial_poly(shift, k)
    for n in range(-5, 8):
        assert p(n) == binomial(n + shift, k)


@pytest.mark.parametrize("d", range(0, 13))
def test_stirling_matches_sympy(d):
    from sympy.functions.combinatorial.numbers import stirling

    for r in range(d + 1):
        assert stirling_first(d, r) == stirling(d, r, kind=1, signed=True)


def test_stirling_defining_identity():
    d = 7
    falling = RationalPolynomial([1])
    for i in range(d):
        falling = falling * RationalPolynomial([-i, 1])
    assert [stirling_first(d, r) for r in range(d + 1)] == [int(c) for c in falling.coeffs]


def test_stirling_range():
    with pytest.raises(ValueError):
        stirling_first(3, 4)
    with pytest.raises(ValueError):
        stirling_first(-1, 0)


@pytest.mark.parametrize("d", range(0, 16))
def test_bernoulli_matches_sympy(d):
    assert to_sympy(bernoulli_polynomial(d)) == sympy.Poly(sympy.bernoulli(d, X), X, domain="QQ")


@pytest.mark.parametrize("d", range(1, 12))
def test_bernoulli_properties(d):
    b = bernoulli_polynomial(d)
    assert b.derivative() == bernoulli_polynomial(d - 1).scale(d)
    assert b.integral()(1) - b.integral()(0) == 0
    # B_d(x+1) - B_d(x) = d x^(d-1)
    assert b.shift(1) - b == RationalPolynomial([0] * (d - 1) + [d])


# ---------------------------------------------------------------- bases


@given(st.lists(fractions, min_size=1, max_size=7))
def test_binomial_basis_round_trip(cs):
    p = RationalPolynomial(cs)
    d = len(cs) - 1
    b = to_binomial_basis(p, d)
    assert b.to_monomial() == p
    for n in range(-3, 5):
        assert b(n) == p(n)


@given(st.lists(fractions, min_size=1, max_size=7))
def test_binomial_basis_from_a(a):
    b = BinomialBasisPolynomial(a)
    assert to_binomial_basis(b.to_monomial(), b.d) == b


@given(st.lists(fractions, min_size=1, max_size=7))
def test_forward_difference_round_trip(cs):
    p = RationalPolynomial(cs)
    deltas = forward_differences(p, len(cs) - 1)
    assert newton_forward(deltas) == p


def test_forward_differences_of_cube():
    # (n+1)^3: counts 1, 8, 27, 64
    assert forward_differences(RationalPolynomial([1, 3, 3, 1])) == [1, 7, 12, 6]


def test_basis_size_check():
    with pytest.raises(ValueError):
        to_binomial_basis(RationalPolynomial([1, 2, 3]), 1)
    with pytest.raises(ValueError):
        BinomialBasisPolynomial([1, 2], d=3)


# ---------------------------------------------------------------- Sturm


def test_sturm_zero_polynomial():
    with pytest.raises(ValueError):
        sturm_sequence(RationalPolynomial())


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(-6, 0), st.integers(1, 6))
def test_sturm_count_matches_roots(roots, lo, hi):
    p = RationalPolynomial.from_roots(roots)
    expected = len({r for r in roots if lo < r <= hi})
    assert count_real_roots(p, Fraction(lo), Fraction(hi)) == expected


@given(nonzero_polys)
@settings(max_examples=60)
def test_sturm_count_matches_sympy(p):
    if p.degree < 1:
        return
    expected = len(set(sympy.real_roots(to_sympy(p))))
    assert count_real_roots(p, float("-inf"), float("inf")) == expected


@given(nonzero_polys)
@settings(max_examples=40, deadline=None)
def test_sturm_isolation(p):
    if p.degree < 1:
        return
    eps = Fraction(1, 10**8)
    lo, hi = Fraction(-200), Fraction(200)
    intervals = sturm_real_roots(p, lo, hi, eps)
    truth = sorted({float(r) for r in sympy.real_roots(to_sympy(p)) if -200 < r <= 200})
    assert len(intervals) == len(truth)
    for (a, b), r in zip(intervals, truth):
        assert b - a < eps
        assert float(a) - 1e-12 <= r <= float(b) + 1e-12
    for (a1, b1), (a2, b2) in zip(intervals, intervals[1:]):
        assert b1 <= a2


def test_sturm_isolation_close_roots():
    p = RationalPolynomial.from_roots([Fraction(1, 10**6), Fraction(2, 10**6), 1])
    ivs = sturm_real_roots(p, -2, 2, Fraction(1, 10**9))
    assert len(ivs) == 3
    assert ivs[0][0] < Fraction(1, 10**6) <= ivs[0][1]


def test_sturm_multiple_root_counted_once():
    p = RationalPolynomial([1, 3, 3, 1])  # (x+1)^3
    assert count_real_roots(p, float("-inf"), float("inf")) == 1
    assert sturm_real_roots(p, -5, 5) == [(Fraction(-1), Fraction(-1))] or len(sturm_real_roots(p, -5, 5)) == 1


def test_bernoulli_power_sums():
    # sum_{k=0}^{n-1} k^(d-1) = (B_d(n) - B_d(0)) / d, with 0^0 = 1
    for d in range(1, 21):
        b = bernoulli_polynomial(d)
        for n in range(1, 51):
            assert sum(k ** (d - 1) for k in range(n)) == (b(n) - b(0)) / d

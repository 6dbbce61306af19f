"""Exact rational polynomials and the integer sequences used by the library.

Rationals are :class:`fractions.Fraction` (always in lowest terms).  Polynomials
are dense, immutable coefficient tuples indexed by degree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_fraction(x: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` when integral)."""
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RationalPolynomial:
    """Dense polynomial over the rationals, ``coeffs[i]`` multiplies ``x**i``.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients and
    degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    # construction helpers
    @classmethod
    def constant(cls, c: Number) -> "RationalPolynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "RationalPolynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial([{', '.join(format_fraction(c) for c in self.coeffs)}])"

    def format(self, var: str = "n") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = format_fraction(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{format_fraction(a)}{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = format

    # arithmetic
    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = RationalPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Number) -> "RationalPolynomial":
        c = as_fraction(c)
        return RationalPolynomial(c * a for a in self.coeffs)

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        m = len(other.coeffs)
        for k in range(dq, -1, -1):
            q = rem[k + m - 1] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return RationalPolynomial(quot), RationalPolynomial(rem[: m - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # calculus and evaluation
    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction input, works for floats too."""
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def derivative(self, k: int = 1) -> "RationalPolynomial":
        p = self
        for _ in range(k):
            p = RationalPolynomial(i * c for i, c in enumerate(p.coeffs) if i)
        return p

    def integral(self) -> "RationalPolynomial":
        """Antiderivative with zero constant term."""
        return RationalPolynomial([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def shift(self, t: Number) -> "RationalPolynomial":
        """Return ``q(x) = p(x + t)`` (Taylor shift)."""
        t = as_fraction(t)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += t * cs[j + 1]
        return RationalPolynomial(cs)

    def monic(self) -> "RationalPolynomial":
        return self.scale(1 / self.leading)

    def primitive(self) -> "RationalPolynomial":
        """Positive rational multiple with coprime integer coefficients.

        The scale factor is positive, so signs at every point are preserved.
        """
        if self.is_zero():
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        g = gcd(*ints)
        return RationalPolynomial(Fraction(v // g) for v in ints)

    def float_coeffs(self, monic: bool = True) -> list[float]:
        """Coefficients as floats, low to high.

        Dividing by the leading coefficient before conversion keeps huge
        integer coefficients from overflowing.
        """
        if monic:
            lead = self.leading
            return [float(c / lead) for c in self.coeffs]
        return [float(c) for c in self.coeffs]


def poly_gcd(p: RationalPolynomial, q: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd (zero if both are zero)."""
    while not q.is_zero():
        p, q = q, (p % q).primitive()
    return p.monic() if not p.is_zero() else p


def squarefree_decomposition(p: RationalPolynomial) -> list[tuple[RationalPolynomial, int]]:
    """Yun's algorithm: ``p = lead * prod(q_k ** k)`` with pairwise coprime squarefree ``q_k``.

    Returns ``[(q_k, k), ...]`` for the non-constant factors only, each monic.
    """
    if p.degree < 1:
        return []
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    out = []
    k = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z) if not z.is_zero() else w
        if g.degree > 0:
            out.append((g.monic(), k))
        w = w // g
        y = z // g
        k += 1
    return out


def squarefree_part(p: RationalPolynomial) -> RationalPolynomial:
    g = poly_gcd(p, p.derivative())
    return (p // g).monic() if g.degree > 0 else p.monic()


# ---------------------------------------------------------------- sequences


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient, ``n`` any integer, ``k >= 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = 1
    for i in range(k):
        num *= n - i
    return num // factorial(k)


def binomial_poly(shift: int, k: int) -> RationalPolynomial:
    """``binomial(n + shift, k)`` as a polynomial in ``n``."""
    p = RationalPolynomial([1])
    for i in range(k):
        p = p * RationalPolynomial([shift - i, 1])
    return p.scale(Fraction(1, factorial(k)))


@lru_cache(maxsize=None)
def _stirling_row(d: int) -> tuple[int, ...]:
    if d == 0:
        return (1,)
    prev = _stirling_row(d - 1)
    row = [0] * (d + 1)
    for r in range(1, d + 1):
        left = prev[r - 1] if r - 1 < len(prev) else 0
        here = prev[r] if r < len(prev) else 0
        row[r] = left - (d - 1) * here
    return tuple(row)


def stirling_first(d: int, r: int) -> int:
    """Signed Stirling number of the first kind, ``x(x-1)...(x-d+1) = sum s(d,r) x^r``."""
    if d < 0 or not 0 <= r <= d:
        raise ValueError(f"stirling_first needs 0 <= r <= d, got d={d}, r={r}")
    return _stirling_row(d)[r]


@lru_cache(maxsize=None)
def bernoulli_polynomial(d: int) -> RationalPolynomial:
    """Bernoulli polynomial via ``B_d' = d B_{d-1}`` and ``int_0^1 B_d = 0``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d == 0:
        return RationalPolynomial([1])
    prim = bernoulli_polynomial(d - 1).integral().scale(d)
    # fix the constant so the integral over [0, 1] vanishes
    mean = prim.integral()(1)
    return prim - mean


# ------------------------------------------------------- bases and differences


class BinomialBasisPolynomial:
    """``p(n) = sum_j a[j] * binomial(d + n - j, d)``; ``len(a) == d + 1``."""

    __slots__ = ("a", "d")

    def __init__(self, a: Sequence[Number], d: int | None = None):
        a = tuple(as_fraction(x) for x in a)
        if d is None:
            d = len(a) - 1
        if len(a) != d + 1:
            raise ValueError(f"expected {d + 1} coefficients, got {len(a)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("BinomialBasisPolynomial is immutable")

    def __eq__(self, other):
        if not isinstance(other, BinomialBasisPolynomial):
            return NotImplemented
        return self.a == other.a and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.d))

    def __repr__(self):
        return f"BinomialBasisPolynomial({[format_fraction(x) for x in self.a]})"

    def to_monomial(self) -> RationalPolynomial:
        p = RationalPolynomial()
        for j, aj in enumerate(self.a):
            if aj:
                p = p + binomial_poly(self.d - j, self.d).scale(aj)
        return p

    def __call__(self, n: int) -> Fraction:
        return sum((aj * binomial(self.d + n - j, self.d) for j, aj in enumerate(self.a)), Fraction(0))


def to_binomial_basis(p: RationalPolynomial, d: int | None = None) -> BinomialBasisPolynomial:
    """Triangular solve from ``p(0), ..., p(d)``; ``d`` defaults to ``deg p``."""
    if d is None:
        d = max(p.degree, 0)
    if p.degree > d:
        raise ValueError("degree exceeds requested basis size")
    a: list[Fraction] = []
    for n in range(d + 1):
        acc = p(n)
        for j in range(n):
            acc -= a[j] * binomial(d + n - j, d)
        a.append(acc)
    return BinomialBasisPolynomial(a, d)


def forward_differences(p: RationalPolynomial, d: int | None = None) -> list[Fraction]:
    """``[Delta^0 p(0), ..., Delta^d p(0)]``."""
    if d is None:
        d = max(p.degree, 0)
    row = [p(n) for n in range(d + 1)]
    out = []
    for _ in range(d + 1):
        out.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return out


def newton_forward(deltas: Sequence[Number]) -> RationalPolynomial:
    """Inverse of :func:`forward_differences`: ``sum_k deltas[k] * binomial(n, k)``."""
    p = RationalPolynomial()
    for k, dk in enumerate(deltas):
        dk = as_fraction(dk)
        if dk:
            p = p + binomial_poly(0, k).scale(dk)
    return p


# ------------------------------------------------------------------ Sturm


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    """Canonical Sturm chain ``p, p', -rem(...), ...``.

    Each member is rescaled by a positive constant to a primitive integer
    polynomial, which keeps coefficient growth in check and leaves every sign
    (hence every variation count) untouched.  When ``p`` has repeated roots
    the chain is divided by ``gcd(p, p')``, giving the chain of the
    squarefree part, which counts the same distinct roots.
    """
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p.primitive()]
    dp = p.derivative()
    if dp.is_zero():
        return seq
    seq.append(dp.primitive())
    while True:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append((-r).primitive())
    g = seq[-1]
    if g.degree > 0:
        # repeated roots: divide out gcd(p, p') so the chain stays valid at them
        seq = [(q // g).primitive() for q in seq]
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: Sequence[RationalPolynomial], x) -> int:
    """Variations of the chain at ``x``; ``x`` may be ``±inf`` (floats) or exact."""
    if isinstance(x, float):
        if x == float("inf"):
            signs = [_sign(q.leading) for q in seq]
        elif x == float("-inf"):
            signs = [_sign(q.leading) * (-1) ** q.degree for q in seq]
        else:
            raise ValueError("float arguments must be infinite; use Fractions for finite points")
    else:
        signs = [_sign(q(x)) for q in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: RationalPolynomial, lo, hi, seq=None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (Sturm's theorem)."""
    seq = seq if seq is not None else sturm_sequence(p)
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def sturm_real_roots(p: RationalPolynomial, lo: Number, hi: Number,
                     eps: Number = Fraction(1, 10**6)) -> list[tuple[Fraction, Fraction]]:
    """Isolate the distinct real roots of ``p`` lying in ``(lo, hi]``.

    Returns sorted, disjoint half-open intervals ``(a, b]`` of width ``< eps``
    each holding exactly one root.  Certified by exact Sturm counts.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi, eps = as_fraction(lo), as_fraction(hi), as_fraction(eps)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if eps <= 0:
        raise ValueError("eps must be positive")
    q = squarefree_part(p)
    if q.degree < 1:
        return []
    seq = sturm_sequence(q)
    v = {lo: sign_variations(seq, lo), hi: sign_variations(seq, hi)}

    def var(x):
        if x not in v:
            v[x] = sign_variations(seq, x)
        return v[x]

    found = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = var(a) - var(b)
        if n == 0:
            continue
        if n == 1:
            found.append(_refine_single(q, a, b, eps))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    found.sort()
    return found


def _refine_single(q: RationalPolynomial, a: Fraction, b: Fraction, eps: Fraction):
    """Shrink ``(a, b]`` holding one simple root of squarefree ``q`` below width ``eps``."""
    qb = q(b)
    if qb == 0:
        return (b - eps / 2, b) if b - a >= eps else (a, b)
    # the root is strictly inside; if q(a) == 0 step a right until it is not
    sb = _sign(qb)
    while b - a >= eps:
        m = (a + b) / 2
        qm = q(m)
        if qm == 0:
            return (max(a, m - eps / 2), m)
        if _sign(qm) == sb:
            b = m
        else:
            # q(a) may be zero (root at the excluded endpoint): the sign test
            # still holds because the root in (a, b] is simple and unique.
            a = m
    return (a, b)

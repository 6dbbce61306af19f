"""Roots of Ehrhart polynomials: certified real roots, numerical complex roots,
the classical norm bounds, and the g_i / lambda machinery behind the real-root
upper bound ``floor(d/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Sequence

import numpy as np

from .algebra import (
    RationalPolynomial,
    as_fraction,
    binomial_poly,
    count_real_roots,
    format_fraction,
    squarefree_decomposition,
    sturm_real_roots,
    sturm_sequence,
)
from .audit import betke_mcmullen_rhs

# published norm bounds for d = 2..9, kept for side-by-side reporting
REFERENCE_BOUNDS = {2: 3.6, 3: 8.5, 4: 15.8, 5: 25.7, 6: 38.3, 7: 53.5, 8: 71.4, 9: 92.0}

SQRT15_OVER_6 = math.sqrt(15) / 6


class NonConvergence(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class DimensionTooLarge(ValueError):
    pass


# ---------------------------------------------------------------- bounds


def cauchy_bound(p: RationalPolynomial) -> Fraction:
    """``1 + max_j |c_j / c_d|``; every root lies strictly inside this radius."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    lead = p.leading
    return 1 + max((abs(c / lead) for c in p.coeffs[:-1]), default=Fraction(0))


def marden_max_root(bounds: Sequence) -> float:
    """Positive root of ``x^d - sum_j b_j x^j`` where ``bounds = [b_{d-1}, ..., b_0]``.

    One sign change, so the positive root is unique (Descartes).
    """
    b = [float(as_fraction(x)) for x in bounds]
    if any(x < 0 for x in b):
        raise ValueError("bounds must be nonnegative")
    d = len(b)
    if d == 0 or all(x == 0 for x in b):
        return 0.0
    # coefficients high to low
    coeffs = [1.0] + [-x for x in b]

    def f(x):
        acc = 0.0
        for c in coeffs:
            acc = acc * x + c
        return acc

    lo, hi = 0.0, 1.0 + max(b)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-13 * max(1.0, hi):
            break
    x = 0.5 * (lo + hi)
    dcoeffs = [c * (d - i) for i, c in enumerate(coeffs[:-1])]
    for _ in range(3):
        fp = 0.0
        for c in dcoeffs:
            fp = fp * x + c
        if fp == 0:
            break
        step = f(x) / fp
        if lo <= x - step <= hi:
            x -= step
    return x


def ratio_bounds(d: int) -> list[Fraction]:
    """Upper bounds on ``|c_j / c_d|``, ordered ``j = d-1, ..., 0``.

    Uses the Stirling-number bounds on ``c_r`` at the worst case
    ``c_d = 1/d!`` together with ``c_0 = 1``.
    """
    vol = Fraction(1, factorial(d))
    out = [betke_mcmullen_rhs(d, r, vol) / vol for r in range(d - 1, 0, -1)]
    out.append(1 / vol)
    return out


def dimension_bound_table(d: int) -> float:
    """Norm bound on roots of Ehrhart polynomials of ``d``-polytopes, ``2 <= d <= 9``."""
    if not 2 <= d <= 9:
        raise ValueError("dimension_bound_table covers 2 <= d <= 9")
    return marden_max_root(ratio_bounds(d))


def newton_bound_holds(p: RationalPolynomial, B) -> bool:
    """True iff every derivative ``p^(l)(B)``, ``l = 0..deg p``, is positive."""
    B = as_fraction(B)
    q = p
    for _ in range(p.degree + 1):
        if not q(B) > 0:
            return False
        q = q.derivative()
    return True


# ---------------------------------------------------------------- root finding


@dataclass(frozen=True)
class RealRoot:
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1
    exact: bool = False  # the root is ``hi`` itself

    @property
    def approx(self) -> float:
        if self.exact:
            return float(self.hi)
        return float((self.lo + self.hi) / 2)

    def to_json(self) -> dict:
        return {
            "interval": [format_fraction(self.lo), format_fraction(self.hi)],
            "approx": self.approx,
            "multiplicity": self.multiplicity,
            "exact": self.exact,
        }


@dataclass
class RootReport:
    degree: int
    real_roots: list[RealRoot]
    complex_roots: list[tuple[float, float, float]]  # (re, im, residual), repeated by multiplicity
    cauchy_bound: Fraction
    factorial_bound: int
    real_interval_ok: bool
    re_conjecture_ok: bool
    sweeps: int = 0
    converged: bool = True
    polynomial: RationalPolynomial | None = field(default=None, repr=False)

    def count_real(self, lo=None, hi=None, lo_closed=True, hi_closed=False) -> int:
        """Exact number of distinct real roots in the given range (``None`` = unbounded)."""
        p = self.polynomial
        seq = sturm_sequence(p)
        big = self.cauchy_bound + 1
        a = as_fraction(lo) if lo is not None else -big
        b = as_fraction(hi) if hi is not None else big
        n = count_real_roots(p, a, b, seq)
        if lo is not None and lo_closed and p(a) == 0:
            n += 1
        if hi is not None and not hi_closed and p(b) == 0:
            n -= 1
        return n

    def rows(self) -> list[tuple[float, float, bool]]:
        """One ``(re, im, certified_real)`` per root counted with multiplicity.

        Certified real roots replace their nearest numerical counterparts, so
        they show up with ``im == 0`` exactly.
        """
        pool = list(self.complex_roots)
        out = []
        for r in self.real_roots:
            x = r.approx
            for _ in range(r.multiplicity):
                if pool:
                    k = min(range(len(pool)), key=lambda j: abs(complex(pool[j][0] - x, pool[j][1])))
                    pool.pop(k)
                out.append((x, 0.0, True))
        out.extend((re, im, False) for re, im, _ in pool)
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    @property
    def roots(self) -> np.ndarray:
        return np.array([complex(r, i) for r, i, _ in self.complex_roots])

    @property
    def max_residual(self) -> float:
        return max((r for _, _, r in self.complex_roots), default=0.0)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "real_roots": [r.to_json() for r in self.real_roots],
            "complex_roots": [list(t) for t in self.complex_roots],
            "cauchy_bound": format_fraction(self.cauchy_bound),
            "factorial_bound": self.factorial_bound,
            "real_interval_ok": self.real_interval_ok,
            "re_conjecture_ok": self.re_conjecture_ok,
        }


def _horner(coeffs_high, z):
    acc = np.zeros_like(z)
    for c in coeffs_high:
        acc = acc * z + c
    return acc


def aberth(coeffs: Sequence[float], radius: float, tol: float = 1e-12,
           max_sweeps: int = 500) -> tuple[np.ndarray, int, bool]:
    """Aberth-Ehrlich simultaneous iteration; ``coeffs`` low to high, monic.

    Starting points sit on a circle of the given radius at angles
    ``2 pi k / n + 0.4``; the offset breaks the conjugation symmetry that would
    otherwise pin a pair of starts on opposite sides of the real axis.
    """
    n = len(coeffs) - 1
    if n < 1:
        return np.array([], dtype=complex), 0, True
    high = np.array(coeffs[::-1], dtype=complex)
    dhigh = high[:-1] * np.arange(n, 0, -1)
    k = np.arange(n)
    z = radius * np.exp(1j * (2 * np.pi * k / n + 0.4))
    if n == 1:
        return np.array([-high[1] / high[0]]), 1, True
    for sweep in range(1, max_sweeps + 1):
        pv = _horner(high, z)
        dv = _horner(dhigh, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            w = ratio / (1.0 - ratio * inv.sum(axis=1))
        w = np.where(pv == 0, 0.0, w)
        bad = ~np.isfinite(w)
        if bad.any():
            w[bad] = 1e-3 * (1 + np.abs(z[bad]))
        z = z - w
        if np.all(np.abs(w) < tol * (1 + np.abs(z))):
            return z, sweep, True
    return z, max_sweeps, False


def _outside_count(p, seq, lo: Fraction, hi: Fraction, big: Fraction) -> int:
    """Distinct real roots outside ``[lo, hi)``."""
    below = count_real_roots(p, -big, lo, seq) - (1 if p(lo) == 0 else 0)
    above = count_real_roots(p, hi, big, seq) + (1 if p(hi) == 0 else 0)
    return below + above


def _snap_rational(q: RationalPolynomial, a: Fraction, b: Fraction) -> Fraction | None:
    """The rational root in ``(a, b]`` if there is one.

    A rational root of the primitive form of ``q`` has denominator dividing
    its leading coefficient, so the closest such fraction to the interval is
    the only candidate; it is confirmed by exact evaluation.
    """
    if q(b) == 0:
        return b
    lead = abs(q.primitive().leading.numerator)
    cand = ((a + b) / 2).limit_denominator(max(1, int(lead)))
    if a < cand <= b and q(cand) == 0:
        return cand
    return None


def find_roots(p: RationalPolynomial, eps=Fraction(1, 10**12), tol: float = 1e-12,
               max_sweeps: int = 500) -> RootReport:
    """Certified real roots and Aberth complex roots of ``p`` (degree >= 1).

    Works on the squarefree factors of ``p`` so repeated roots (such as the
    triple root of ``(n+1)^3``) are resolved exactly and carry multiplicities.
    """
    if p.degree < 1:
        raise ValueError("find_roots needs degree >= 1")
    d = p.degree
    eps = as_fraction(eps)
    cb = cauchy_bound(p)
    span = Fraction(d + 1)
    big = max(span, cb) + 1

    real: list[RealRoot] = []
    cplx: list[complex] = []
    mults: list[int] = []
    sweeps_total, converged = 0, True
    for q, m in squarefree_decomposition(p):
        lo = -max(span, cauchy_bound(q))
        hi = max(span, cauchy_bound(q))
        for a, b in sturm_real_roots(q, lo, hi, eps):
            r = _snap_rational(q, a, b)
            real.append(RealRoot(r, r, m, True) if r is not None else RealRoot(a, b, m, False))
        z, sweeps, ok = aberth(q.float_coeffs(), float(cauchy_bound(q)), tol, max_sweeps)
        sweeps_total = max(sweeps_total, sweeps)
        converged &= ok
        for root in z:
            cplx.extend([complex(root)] * m)
    real.sort(key=lambda r: r.hi)

    monic = np.array(p.float_coeffs()[::-1], dtype=complex)
    zs = np.array(cplx, dtype=complex)
    residuals = np.abs(_horner(monic, zs)) if len(zs) else np.array([])
    croots = sorted(
        ((float(z.real), float(z.imag), float(r)) for z, r in zip(zs, residuals)),
        key=lambda t: (t[0], t[1]),
    )

    seq = sturm_sequence(p)
    real_ok = _outside_count(p, seq, Fraction(-d), Fraction(d // 2), big) == 0
    re_ok = all(-d - 1e-9 <= re <= d - 1 + 1e-9 for re, _, _ in croots)
    report = RootReport(d, real, croots, cb, 1 + factorial(d + 1), real_ok, re_ok,
                        sweeps_total, converged, p)
    if not converged:
        raise NonConvergence(f"Aberth iteration did not converge in {max_sweeps} sweeps", report)
    return report


def check_root_bounds(report: RootReport, d: int) -> tuple[bool, bool]:
    """(all ``|z| < 1 + (d+1)!``, every certified real root in ``[-d, floor(d/2))``).

    The real-root flag is decided by exact Sturm counts, not by interval ends.
    """
    limit = 1 + factorial(d + 1)
    norm_ok = all(math.hypot(re, im) < limit for re, im, _ in report.complex_roots)
    inside = report.count_real(-d, d // 2, lo_closed=True, hi_closed=False)
    return norm_ok, inside == len(report.real_roots)


def real_roots_below_one(report: RootReport, d: int) -> bool:
    """Every certified real root is ``< 1`` (dimension at most 4)."""
    if d > 4:
        raise DimensionTooLarge(f"only stated for d <= 4, got {d}")
    return report.count_real(1, None, lo_closed=True) == 0


check_dim_le_4_real_roots = real_roots_below_one


def dim2_root_region_member(z, tol: float = 1e-9) -> bool:
    """Membership in ``{-2, -1, -2/3} ∪ {x+iy : -1/2 <= x < 0, |y| <= sqrt(15)/6}``.

    Exact when ``z`` is an int/Fraction or a pair of them; ``tol`` applies to
    float and complex input.
    """
    if isinstance(z, tuple):
        re, im = z
    elif isinstance(z, complex):
        re, im = z.real, z.imag
    else:
        re, im = z, 0
    if all(isinstance(v, (int, Fraction)) for v in (re, im)):
        re, im = Fraction(re), Fraction(im)
        if im == 0 and re in (Fraction(-2), Fraction(-1), Fraction(-2, 3)):
            return True
        return Fraction(-1, 2) <= re < 0 and 36 * im * im <= 15
    re, im = float(re), float(im)
    if abs(im) <= tol and any(abs(re - s) <= tol for s in (-2.0, -1.0, -2.0 / 3.0)):
        return True
    return -0.5 - tol <= re < tol and abs(im) <= SQRT15_OVER_6 + tol


# ---------------------------------------------------------------- g_i machinery


def _elementary(values: Sequence[int], m: int) -> int:
    """``e_m(values)`` by the usual O(len * m) recurrence."""
    e = [1] + [0] * m
    for v in values:
        for j in range(m, 0, -1):
            e[j] += e[j - 1] * v
    return e[m]


def gi_value(d: int, i: int, n: int, l: int) -> int:
    """``g_i(n, l) = sum over (d-l)-subsets I of {0..d-1} of prod_{k in I} (n + d - i - k)``."""
    if not 0 <= l <= d:
        raise ValueError("need 0 <= l <= d")
    return _elementary([n + d - i - k for k in range(d)], d - l)


def lambda_closed_form(d: int, l: int) -> Fraction:
    """``(d/2) * sum over (d-l-1)-subsets J of {1..d-1} of prod_{k in J} (d - k)``."""
    return Fraction(d, 2) * sum(prod(d - k for k in J) for J in combinations(range(1, d), d - l - 1))


@dataclass
class GiTable:
    d: int
    B: int
    g: dict[tuple[int, int], int]  # (i, l) -> g_i(B, l); i runs to B + 3 for the convexity check
    lam: dict[int, Fraction]
    s: dict[int, int]


def build_gi_table(d: int) -> GiTable:
    B = d // 2
    top = max(d, B + 3)
    g = {(i, l): gi_value(d, i, B, l) for i in range(top + 1) for l in range(d + 1)}
    lam = {l: Fraction(g[(B, l)] - g[(B + 1, l)], 2) for l in range(d)}
    s = {i: d - 2 * i + 1 for i in range(d + 1)}
    return GiTable(d, B, g, lam, s)


@dataclass
class MachineryResult:
    d: int
    ok: bool
    counterexamples: list[str] = field(default_factory=list)
    # places where the strict versions (g > 0, strictly convex) fail; informational
    strict_exceptions: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_proof_machinery(d: int) -> MachineryResult:
    """Exhaustively check the g_i / lambda inequalities in exact arithmetic.

    Checked, with ``B = floor(d/2)`` and ``g(i) = g_i(B, l)``:

    * ``g(i) > 0`` for ``i <= B`` and ``g(i) >= 0`` for ``i = B+1``, all ``0 <= l <= d``;
    * weak convexity ``g(i) - g(i+1) >= g(i+1) - g(i+2)`` for ``0 <= i <= B+1``;
    * ``lambda(l) > 0`` for ``l <= d-1`` and its two formulas agree;
    * ``g(i) >= lambda(l) s(i)`` for ``0 <= i <= d``, ``0 <= l <= d-1``;
    * ``(d!/l!) * D^l binomial(n+d-i, d) |_{n=B} == g_i(B, l)``.
    """
    if not 1 <= d <= 12:
        raise ValueError("verify_proof_machinery covers 1 <= d <= 12")
    t = build_gi_table(d)
    B, g = t.B, t.g
    bad: list[str] = []
    strict: list[str] = []
    for l in range(d + 1):
        for i in range(B + 2):
            v = g[(i, l)]
            if v < 0 or (i <= B and v == 0):
                bad.append(f"g_{i}(B,{l}) = {v}")
            elif v == 0:
                strict.append(f"g_{i}(B,{l}) = 0")
            left = g[(i, l)] - g[(i + 1, l)]
            right = g[(i + 1, l)] - g[(i + 2, l)]
            if left < right:
                bad.append(f"convexity fails at i={i}, l={l}: {left} < {right}")
            elif left == right:
                strict.append(f"equal slopes at i={i}, l={l}")
    for l in range(d):
        lam = t.lam[l]
        if lam <= 0:
            bad.append(f"lambda({l}) = {lam} <= 0")
        if lam != lambda_closed_form(d, l):
            bad.append(f"lambda({l}) closed form disagrees")
        for i in range(d + 1):
            if g[(i, l)] < lam * t.s[i]:
                bad.append(f"g_{i}(B,{l}) = {g[(i, l)]} < lambda*s = {lam * t.s[i]}")
    for i in range(d + 1):
        basis = binomial_poly(d - i, d)
        for l in range(d + 1):
            lhs = basis.derivative(l)(B) * Fraction(factorial(d), factorial(l))
            if lhs != g[(i, l)]:
                bad.append(f"derivative identity fails at i={i}, l={l}")
    return MachineryResult(d, not bad, bad, strict)

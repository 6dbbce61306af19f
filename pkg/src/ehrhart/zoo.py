"""Deterministic generators for the concrete polytope families, the cyclic
polytope checks, and a seeded random sampler.

Random families use :class:`random.Random` (Mersenne Twister), which yields
identical streams for identical integer seeds on every platform.  Batch
sampling derives the seed of sample ``i`` as ``master_seed * 1_000_003 + i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .algebra import RationalPolynomial, bernoulli_polynomial, sturm_real_roots
from .engine import EhrhartProfile, ehrhart_polynomial
from .geometry import (
    DegeneratePolytope,
    LatticePolytope,
    _affine_rank,
    build_polytope,
    count_lattice_points,
    dilate,
    lattice_points,
)

MAX_RESAMPLES = 100


def derived_seed(master: int, index: int) -> int:
    return master * 1_000_003 + index


# ---------------------------------------------------------------- vertex lists


def standard_simplex(d: int) -> list[tuple[int, ...]]:
    return [tuple([0] * d)] + [tuple(int(i == j) for j in range(d)) for i in range(d)]


def cube(d: int) -> list[tuple[int, ...]]:
    return list(product((0, 1), repeat=d))


def cross_polytope(d: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(d):
        for s in (1, -1):
            out.append(tuple(s if j == i else 0 for j in range(d)))
    return out


def zero_one_octahedron() -> list[tuple[int, ...]]:
    return [p for p in product((0, 1), repeat=3) if sum(p) in (1, 2)]


def nameless() -> list[tuple[int, ...]]:
    # listed with a constant leading coordinate 1, which is dropped here
    pts4 = [(1, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (1, 1, 1, 0), (1, 0, 1, 1), (1, 1, 0, 1)]
    return [p[1:] for p in pts4]


def prism() -> list[tuple[int, ...]]:
    return [(x, y, z) for (x, y) in ((0, 0), (1, 0), (0, 1)) for z in (0, 1)]


def square_pyramid() -> list[tuple[int, ...]]:
    return [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]


def bipyramid() -> list[tuple[int, ...]]:
    return [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


def cube_minus_corner() -> list[tuple[int, ...]]:
    return [p for p in cube(3) if p != (1, 1, 1)]


def fat_tetrahedron() -> list[tuple[int, ...]]:
    return [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


def order_polytope(d: int) -> list[tuple[int, ...]]:
    """0/1 vertices of ``{0 <= x_0 <= x_k <= 1, 1 <= k <= d-1}``.

    Vertices are indicator vectors of up-sets: either ``x_0 = 0`` and the
    rest free, or everything equal to 1.
    """
    return [(0,) + rest for rest in product((0, 1), repeat=d - 1)] + [tuple([1] * d)]


def cyclic(n: int, d: int, nodes=None) -> list[tuple[int, ...]]:
    """Points ``(t, t^2, ..., t^d)`` for ``t = 1..n`` unless ``nodes`` is given."""
    ts = list(nodes) if nodes is not None else list(range(1, n + 1))
    if len(ts) != n:
        raise ValueError("need exactly n nodes")
    return [tuple(t ** k for k in range(1, d + 1)) for t in ts]


def triangle_family(x: int) -> list[tuple[int, ...]]:
    return [(0, 0), (1, 0), (0, x)]


def rectangle_family(x: int) -> list[tuple[int, ...]]:
    return [(0, 0), (2, 0), (2, x), (0, x)]


def exceptional_triangle() -> list[tuple[int, ...]]:
    return [(0, 0), (3, 0), (0, 3)]


def random_lattice(d: int, vertex_count: int, coordinate_range: int = 9, seed: int = 0) -> list[tuple[int, ...]]:
    """``vertex_count`` uniform points in ``[0, coordinate_range]^d`` spanning ``R^d``."""
    if vertex_count < d + 1:
        raise ValueError("need at least d+1 points")
    rng = random.Random(seed)
    for _ in range(MAX_RESAMPLES):
        pts = [tuple(rng.randint(0, coordinate_range) for _ in range(d)) for _ in range(vertex_count)]
        uniq = sorted(set(pts))
        if len(uniq) > d and _affine_rank(uniq) == d:
            return pts
    raise DegeneratePolytope(f"no full-dimensional sample after {MAX_RESAMPLES} draws")


def random_zero_one(d: int, vertex_count: int, seed: int = 0) -> list[tuple[int, ...]]:
    """``vertex_count`` distinct 0/1 points spanning ``R^d``."""
    if not d + 1 <= vertex_count <= 2 ** d:
        raise ValueError("vertex_count must lie in d+1 .. 2^d")
    rng = random.Random(seed)
    allpts = cube(d)
    for _ in range(MAX_RESAMPLES):
        pts = sorted(rng.sample(allpts, vertex_count))
        if _affine_rank(pts) == d:
            return pts
    raise DegeneratePolytope(f"no full-dimensional 0/1 sample after {MAX_RESAMPLES} draws")


# ---------------------------------------------------------------- specs


@dataclass(frozen=True)
class ZooSpec:
    family: str
    params: tuple[int, ...] = ()

    def __str__(self):
        return f"{self.family}:{','.join(map(str, self.params))}" if self.params else self.family


FAMILIES: dict[str, tuple[Callable, int]] = {
    # name: (generator, number of integer parameters)
    "standard_simplex": (standard_simplex, 1),
    "cube": (cube, 1),
    "cross_polytope": (cross_polytope, 1),
    "zero_one_octahedron": (zero_one_octahedron, 0),
    "nameless": (nameless, 0),
    "prism": (prism, 0),
    "square_pyramid": (square_pyramid, 0),
    "bipyramid": (bipyramid, 0),
    "cube_minus_corner": (cube_minus_corner, 0),
    "fat_tetrahedron": (fat_tetrahedron, 0),
    "order_polytope": (order_polytope, 1),
    "cyclic": (cyclic, 2),
    "triangle_family": (triangle_family, 1),
    "rectangle_family": (rectangle_family, 1),
    "exceptional_triangle": (exceptional_triangle, 0),
    "random_lattice": (random_lattice, 4),
    "random_zero_one": (random_zero_one, 3),
}

ALIASES = {"simplex": "standard_simplex", "octahedron": "zero_one_octahedron", "cross": "cross_polytope",
           "order": "order_polytope"}


def parse_zoo_spec(text: str) -> ZooSpec:
    """Parse ``FAMILY[:P1,P2,...]``, e.g. ``cube:3`` or ``cyclic:7,3`` (n, d)."""
    name, _, rest = text.strip().partition(":")
    name = ALIASES.get(name.strip(), name.strip())
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}")
    params = tuple(int(x) for x in rest.replace(" ", "").split(",") if x) if rest else ()
    _, arity = FAMILIES[name]
    if name == "random_lattice" and len(params) == 3:
        params = params + (0,)
    if len(params) != arity:
        raise ValueError(f"family {name} takes {arity} integer parameter(s), got {len(params)}")
    return ZooSpec(name, params)


def generate(spec: ZooSpec | str) -> LatticePolytope:
    if isinstance(spec, str):
        spec = parse_zoo_spec(spec)
    fn, _ = FAMILIES[spec.family]
    return build_polytope(fn(*spec.params), name=str(spec))


def random_batch(d: int, count: int, seed: int, vertex_range=(4, 8), coordinate_range: int = 9):
    """Yield ``count`` random lattice ``d``-polytopes, sample ``i`` seeded by ``derived_seed``.

    The vertex count of each sample is drawn from ``vertex_range`` with the
    same derived seed.
    """
    for i in range(count):
        s = derived_seed(seed, i)
        k = random.Random(s).randint(*vertex_range)
        k = max(k, d + 1)
        yield build_polytope(random_lattice(d, k, coordinate_range, s), name=f"random{d}d#{i}")


# ---------------------------------------------------------------- order polytopes


def order_polytope_ehrhart(d: int) -> RationalPolynomial:
    """``(B_d(n + 2) - B_d(1)) / d``, which equals ``sum_{j=1}^{n+1} j^(d-1)``.

    ``B_d(1) = B_d(0)`` for ``d >= 2``; using ``B_d(1)`` keeps ``d = 1`` right too.
    """
    if d < 1:
        raise ValueError("d >= 1 required")
    B = bernoulli_polynomial(d)
    return (B.shift(2) - B(1)).scale(Fraction(1, d))


def largest_real_root_order_polytope(d: int, width=Fraction(1, 10**10)) -> tuple[Fraction, Fraction]:
    """Sturm-certified interval ``(lo, hi]`` around the largest real root."""
    if d < 3:
        raise ValueError("d >= 3 required")
    p = order_polytope_ehrhart(d)
    roots = sturm_real_roots(p, -d - 1, d, width)
    if not roots:
        raise ValueError("no real root found")
    return roots[-1]


# ---------------------------------------------------------------- cyclic checks


@dataclass
class ConjectureCheck:
    n: int
    d: int
    holds: bool
    upper: EhrhartProfile
    lower: EhrhartProfile
    mismatches: list[tuple[int, Fraction, Fraction]] = field(default_factory=list)
    confirmed_by_oracle: bool = False

    def __bool__(self):
        return self.holds


def _box_count(P: LatticePolytope, m: int) -> int:
    """Plain bounding-box scan; independent of the fiber walk."""
    Q = dilate(P, m)
    lo = [min(v[i] for v in Q.vertices) for i in range(Q.dimension)]
    hi = [max(v[i] for v in Q.vertices) for i in range(Q.dimension)]
    return sum(1 for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))) if Q.contains(x))


def check_cyclic_conjecture(n: int, d: int) -> ConjectureCheck:
    """Compare ``i_{C(n,d)} - vol * m^d`` with ``i_{C(n,d-1)}`` coefficient-wise."""
    if not n > d >= 2:
        raise ValueError("need n > d >= 2")
    upper = ehrhart_polynomial(generate(ZooSpec("cyclic", (n, d))))
    lower = ehrhart_polynomial(generate(ZooSpec("cyclic", (n, d - 1))))
    mism = [(k, upper.c[k], lower.c[k]) for k in range(d) if upper.c[k] != lower.c[k]]
    check = ConjectureCheck(n, d, not mism, upper, lower, mism)
    if mism:
        # a disagreement is only reported once the brute-force count agrees with the profiles
        ok = True
        for prof, dd in ((upper, d), (lower, d - 1)):
            P = generate(ZooSpec("cyclic", (n, dd)))
            for m in range(dd + 1):
                if _box_count(P, m if m else 1) != prof.polynomial(m if m else 1):
                    ok = False
        check.confirmed_by_oracle = ok
    return check


@dataclass
class FiberCheck:
    n: int
    d: int
    m: int
    holds: bool
    fibers: int
    failures: list[tuple] = field(default_factory=list)
    degenerate: int = 0

    def __bool__(self):
        return self.holds


def check_fiber_lemma(n: int, d: int, m: int = 1) -> FiberCheck:
    """Vertical lines over lattice points of ``m C(n,d-1)`` leave ``m C(n,d)`` at integer heights."""
    if not n > d >= 2 or m < 1:
        raise ValueError("need n > d >= 2 and m >= 1")
    upper = dilate(generate(ZooSpec("cyclic", (n, d))), m)
    lower = generate(ZooSpec("cyclic", (n, d - 1)))
    fibers = 0
    degenerate = 0
    failures = []
    for y in lattice_points(lower, m):
        fibers += 1
        top, bottom = None, None
        for f in upper.facets:
            a = f.normal[-1]
            r = Fraction(f.offset - sum(c * x for c, x in zip(f.normal[:-1], y)))
            if a > 0:
                h = r / a
                top = h if top is None or h < top else top
            elif a < 0:
                h = r / a
                bottom = h if bottom is None or h > bottom else bottom
        if top is None or bottom is None or bottom > top:
            failures.append((y, bottom, top))
            continue
        if top == bottom:
            degenerate += 1
        if top.denominator != 1 or bottom.denominator != 1:
            failures.append((y, bottom, top))
    return FiberCheck(n, d, m, not failures, fibers, failures, degenerate)

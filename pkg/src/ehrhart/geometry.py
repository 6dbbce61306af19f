"""Full-dimensional lattice polytopes: exact facets and lattice-point counts.

Facets are stored as primitive outward normals ``a`` with integer offsets
``b`` (``<a, x> <= b``).  Counting walks the fibers of the coordinate
projections: the projection of ``conv(V)`` onto the first ``k`` coordinates is
``conv`` of the projected vertices, so each level gets its own exact facet
list and the admissible range of the next coordinate is a 1-D interval.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from pathlib import Path
from typing import Iterator, Sequence

log = logging.getLogger(__name__)

Point = tuple[int, ...]

# exhaustive d-subset scans above this many subsets go through qhull first
EXHAUSTIVE_LIMIT = 300


class DegeneratePolytope(ValueError):
    """The convex hull is not full-dimensional (or the input is empty)."""


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int

    def value(self, x: Sequence) -> int:
        return sum(a * xi for a, xi in zip(self.normal, x))

    def slack(self, x: Sequence, n: int = 1):
        """``n * b - <a, x>``; nonnegative iff ``x`` satisfies the dilated facet."""
        return n * self.offset - self.value(x)


# ----------------------------------------------------------- exact linear algebra


def _det(rows: list[list[int]]) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve the square system ``a x = b`` exactly; ``None`` if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _hyperplane(pts: Sequence[Point]) -> tuple[tuple[int, ...], int] | None:
    """Primitive normal and offset of the hyperplane through ``d`` points in Z^d."""
    d = len(pts[0])
    v0 = pts[0]
    rows = [[p[i] - v0[i] for i in range(d)] for p in pts[1:]]
    normal = []
    for j in range(d):
        minor = [r[:j] + r[j + 1:] for r in rows]
        normal.append((-1) ** j * _det(minor))
    g = gcd(*normal)
    if g == 0:
        return None
    normal = tuple(c // g for c in normal)
    return normal, sum(a * x for a, x in zip(normal, v0))


def _supporting(normal, b, points) -> Facet | None:
    vals = [sum(a * x for a, x in zip(normal, p)) - b for p in points]
    if all(v <= 0 for v in vals):
        return Facet(tuple(normal), b)
    if all(v >= 0 for v in vals):
        return Facet(tuple(-a for a in normal), -b)
    return None


def _exhaustive_facets(points: Sequence[Point]) -> list[Facet]:
    seen: set = set()
    facets: dict = {}
    for sub in combinations(points, len(points[0])):
        hp = _hyperplane(sub)
        if hp is None:
            continue
        key = hp if hp[0] > tuple(-a for a in hp[0]) else (tuple(-a for a in hp[0]), -hp[1])
        if key in seen:
            continue
        seen.add(key)
        f = _supporting(hp[0], hp[1], points)
        if f is not None:
            facets[(f.normal, f.offset)] = f
    return sorted(facets.values(), key=lambda f: (f.normal, f.offset))


def _independent_subset(pts: Sequence[Point], k: int) -> list[Point] | None:
    """Greedily pick ``k`` affinely independent points, or ``None``."""
    chosen = [pts[0]]
    rows: list[list[int]] = []
    for p in pts[1:]:
        row = [a - b for a, b in zip(p, chosen[0])]
        if rank(rows + [row]) > len(rows):
            rows.append(row)
            chosen.append(p)
            if len(chosen) == k:
                return chosen
    return chosen if len(chosen) == k else None


def _certify_complete(points: Sequence[Point], facets: Sequence[Facet]) -> bool:
    """True iff ``facets`` is the full facet list of ``conv(points)``.

    Each entry is already a genuine facet.  The facet graph of a polytope is
    connected, so a nonempty set of facets in which every ridge of every
    member lies in a second member is the whole list.  Ridges of a facet are
    found by enumerating its facets one dimension down.
    """
    if not facets:
        return False
    d = len(points[0])
    inc = [frozenset(i for i, p in enumerate(points) if f.value(p) == f.offset) for f in facets]
    for k, f in enumerate(facets):
        on = sorted(inc[k])
        j = next(t for t in range(d) if f.normal[t] != 0)
        proj = [points[i][:j] + points[i][j + 1:] for i in on]
        for r in facet_enumeration(proj):
            ridge = {i for i, q in zip(on, proj) if r.value(q) == r.offset}
            if not any(m != k and ridge <= inc[m] for m in range(len(facets))):
                return False
    return True


def _qhull_facets(points: Sequence[Point]) -> list[Facet] | None:
    """Facets proposed by qhull, each re-derived and verified in exact arithmetic.

    qhull only suggests planes; every plane is rebuilt from ``d`` affinely
    independent tight input points and kept only if it supports the hull.
    Returns ``None`` (caller falls back to the exhaustive scan) unless the
    result is certified complete.
    """
    try:
        import numpy as np
        from scipy.spatial import ConvexHull, QhullError
    except ImportError:  # pragma: no cover
        return None
    d = len(points[0])
    arr = np.array(points, dtype=float)
    try:
        hull = ConvexHull(arr)
    except (QhullError, ValueError):
        return None
    scale = 1.0 + np.abs(arr).max()
    facets: dict = {}
    for eq in {tuple(np.round(e, 9)) for e in hull.equations}:
        dist = arr @ np.array(eq[:-1]) + eq[-1]
        tight = [points[i] for i in np.flatnonzero(np.abs(dist) <= 1e-7 * scale)]
        if len(tight) < d:
            return None
        sub = _independent_subset(tight, d)
        if sub is None:
            return None
        hp = _hyperplane(sub)
        f = _supporting(hp[0], hp[1], points) if hp else None
        if f is None:
            return None
        facets[(f.normal, f.offset)] = f
    out = sorted(facets.values(), key=lambda f: (f.normal, f.offset))
    if not _certify_complete(points, out):
        return None
    return out


def _affine_rank(points: Sequence[Point]) -> int:
    v0 = points[0]
    return rank([[p[i] - v0[i] for i in range(len(v0))] for p in points[1:]]) if len(points) > 1 else 0


def facet_enumeration(points: Sequence[Sequence[int]]) -> list[Facet]:
    """Complete, irredundant facet list of ``conv(points)``.

    Raises :class:`DegeneratePolytope` unless the points affinely span ``R^d``.
    """
    pts = sorted({tuple(int(c) for c in p) for p in points})
    if not pts:
        raise DegeneratePolytope("empty point set")
    d = len(pts[0])
    if d == 0 or _affine_rank(pts) < d:
        raise DegeneratePolytope(f"points do not span a {d}-dimensional affine hull")
    if d == 1:
        lo, hi = pts[0][0], pts[-1][0]
        return [Facet((-1,), -lo), Facet((1,), hi)]
    if comb(len(pts), d) > EXHAUSTIVE_LIMIT:
        facets = _qhull_facets(pts)
        if facets is not None:
            return facets
        log.info("qhull candidates rejected; falling back to exhaustive scan (%d points)", len(pts))
    return _exhaustive_facets(pts)


def _vertices_from(points: Sequence[Point], facets: Sequence[Facet]) -> list[Point]:
    d = len(points[0])
    out = []
    for p in points:
        tight = [f.normal for f in facets if f.value(p) == f.offset]
        if len(tight) >= d and rank(tight) == d:
            out.append(p)
    return out


# ---------------------------------------------------------------- polytope


@dataclass(frozen=True)
class LatticePolytope:
    """Full-dimensional lattice polytope with cached facets.

    ``levels[k]`` holds the facets of the projection onto the first ``k + 1``
    coordinates; ``levels[-1]`` is ``facets``.
    """

    vertices: tuple[Point, ...]
    facets: tuple[Facet, ...]
    name: str = ""
    levels: tuple[tuple[Facet, ...], ...] = field(default=(), repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    d = dimension

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        if strict:
            return all(f.value(x) < f.offset for f in self.facets)
        return all(f.value(x) <= f.offset for f in self.facets)

    def centroid(self) -> tuple[Fraction, ...]:
        k = len(self.vertices)
        return tuple(Fraction(sum(v[i] for v in self.vertices), k) for i in range(self.dimension))

    def to_json(self) -> dict:
        return {"name": self.name, "vertices": [list(v) for v in self.vertices]}


def build_polytope(vertices: Sequence[Sequence[int]], name: str = "") -> LatticePolytope:
    """Validate integer points, drop non-vertices, and derive exact facets."""
    if not vertices:
        raise DegeneratePolytope("no vertices given")
    pts = []
    dim = None
    for v in vertices:
        row = []
        for c in v:
            if isinstance(c, bool) or not (isinstance(c, int) or (isinstance(c, float) and c.is_integer())):
                raise ValueError(f"coordinate {c!r} is not an exact integer")
            row.append(int(c))
        if dim is None:
            dim = len(row)
        elif len(row) != dim:
            raise ValueError("all vertices must have the same length")
        pts.append(tuple(row))
    pts = sorted(set(pts))
    facets = facet_enumeration(pts)
    verts = _vertices_from(pts, facets)
    levels = tuple(tuple(facet_enumeration({v[:k] for v in verts})) for k in range(1, dim))
    return LatticePolytope(tuple(verts), tuple(facets), name, levels + (tuple(facets),))


def load_polytope(path: str | Path) -> LatticePolytope:
    """Read ``{"name": ..., "vertices": [[int, ...], ...]}``."""
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ValueError("polytope JSON needs a 'vertices' list")
    return build_polytope(doc["vertices"], name=str(doc.get("name", Path(path).stem)))


def dilate(P: LatticePolytope, n: int) -> LatticePolytope:
    """``nP``: vertices scaled by ``n``, facet offsets scaled by ``n``."""
    if n < 1:
        raise ValueError("dilation factor must be >= 1")
    if n == 1:
        return P

    def scaled(fs):
        return tuple(Facet(f.normal, n * f.offset) for f in fs)

    return LatticePolytope(
        tuple(tuple(n * c for c in v) for v in P.vertices),
        scaled(P.facets),
        f"{n}*{P.name}" if P.name else "",
        tuple(scaled(level) for level in P.levels),
    )


# ---------------------------------------------------------------- counting


def _compile(levels, n):
    """Per level: facet rows split into (prefix coefficients, last coefficient, rhs)."""
    out = []
    for level in levels:
        rows = [(f.normal[:-1], f.normal[-1], n * f.offset) for f in level]
        out.append(rows)
    return out


def _range(rows, prefix, strict):
    lo, hi = None, None
    for pre, a, rhs in rows:
        r = rhs - sum(c * x for c, x in zip(pre, prefix))
        if a > 0:
            ub = (r - 1) // a if strict else r // a
            hi = ub if hi is None or ub < hi else hi
        elif a < 0:
            lb = -((r - 1) // -a) if strict else -(r // -a)
            lo = lb if lo is None or lb > lo else lo
        elif r < 0 or (strict and r == 0):
            return 1, 0
    return lo, hi


def count_lattice_points(P: LatticePolytope, n: int = 1, interior: bool = False) -> int:
    """``#(nP ∩ Z^d)``, or the strict-interior count when ``interior``."""
    if n < 0:
        raise ValueError("dilation must be nonnegative")
    if n == 0:
        return 0 if interior else 1
    rows = _compile(P.levels, n)
    d = P.dimension

    def walk(k, prefix):
        lo, hi = _range(rows[k], prefix, interior and k == d - 1)
        if lo > hi:
            return 0
        if k == d - 1:
            return hi - lo + 1
        total = 0
        for x in range(lo, hi + 1):
            total += walk(k + 1, prefix + (x,))
        return total

    return walk(0, ())


def lattice_points(P: LatticePolytope, n: int = 1, interior: bool = False) -> Iterator[Point]:
    """Yield the lattice points of ``nP`` in lexicographic order."""
    if n == 0:
        if not interior:
            yield (0,) * P.dimension
        return
    rows = _compile(P.levels, n)
    d = P.dimension

    def walk(k, prefix):
        lo, hi = _range(rows[k], prefix, interior and k == d - 1)
        for x in range(lo, hi + 1):
            if k == d - 1:
                yield prefix + (x,)
            else:
                yield from walk(k + 1, prefix + (x,))

    yield from walk(0, ())

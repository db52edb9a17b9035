"""Degenerations of the degree-8 surface (plane blown up at one point).

Chambers of the weight line are cut out by ratios of the sequence ``g``;
inside a chamber the degeneration is toric with a quadrilateral moment
polygon, at a boundary it is a complete intersection in a weighted
projective space.  The lattice-point counts of the polygons are compared
with the anticanonical Hilbert function, and a small monoid-algebra
Hilbert function is provided for graded semigroups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import h0_anticanonical

G_SEED = (1, 1, 1, 1, 2, 4)


@lru_cache(maxsize=None)
def g(k: int) -> int:
    """``g_{k+6} = 6 g_{k+3} - g_k`` with seeds ``g_0..g_5 = 1, 1, 1, 1, 2, 4``, for all integers k."""
    if 0 <= k < 6:
        return G_SEED[k]
    return g_range(k, k)[0]


def g_range(lo: int, hi: int) -> list[int]:
    """``[g(lo), ..., g(hi)]`` computed iteratively in both directions."""
    vals = {}
    for k in range(0, 6):
        vals[k] = G_SEED[k]
    for k in range(6, hi + 1):
        vals[k] = 6 * vals[k - 3] - vals[k - 6]
    for k in range(-1, lo - 1, -1):
        vals[k] = 6 * vals[k + 3] - vals[k + 6]
    return [vals[k] for k in range(lo, hi + 1)]


def chamber_endpoints(k: int) -> tuple[Fraction, Fraction]:
    return Fraction(g(k + 3), g(k)), Fraction(g(k + 4), g(k + 1))


def boundary_weights(height: int) -> list[Fraction]:
    """All ``g_{k+3}/g_k`` with ``k >= 0`` and ``g_{k+3} <= height``, increasing."""
    out = []
    k = 0
    while g(k + 3) <= height:
        out.append(Fraction(g(k + 3), g(k)))
        k += 1
    return out


# polygons ---------------------------------------------------------------------

@dataclass(frozen=True)
class RationalPolytope:
    vertices: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        vs = tuple((Fraction(x), Fraction(y)) for x, y in self.vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("polygon vertices must be distinct")
        object.__setattr__(self, "vertices", vs)

    @property
    def denominator(self) -> int:
        """Least common multiple of all vertex coordinate denominators."""
        return math.lcm(*(c.denominator for v in self.vertices for c in v))

    def to_json(self) -> list:
        return [[str(x), str(y)] for x, y in self.vertices]


def polytope(k: int) -> RationalPolytope:
    """Moment quadrilateral of the toric degeneration for the chamber with index k."""
    g1, g2, g3 = g(k + 1), g(k + 2), g(k + 3)
    F = Fraction
    r = k % 3
    if r == 0:
        vs = [(0, 0), (F(2 * g2 + g3, g1), 0), (F(g3, g2), F(2 * g1, g2)), (0, F(g1 + g2, g3))]
    elif r == 1:
        vs = [(0, 0), (F(g2 + 2 * g3, g1), 0), (F(g3, g2), F(g1, g2)), (0, F(2 * g1 + g2, g3))]
    else:
        vs = [(0, 0), (F(g2 + g3, g1), 0), (F(2 * g3, g2), F(g1, g2)), (0, F(g1 + 2 * g2, g3))]
    return RationalPolytope(tuple(vs))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def check_convex(P: RationalPolytope) -> int:
    """Orientation (+1 counterclockwise, -1 clockwise) of a strictly convex polygon."""
    vs = P.vertices
    n = len(vs)
    if n < 3:
        raise ValueError("a polygon needs at least three vertices")
    signs = {(_cross(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) > 0) - (_cross(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) < 0)
             for i in range(n)}
    if len(signs) != 1 or 0 in signs:
        raise ValueError("polygon is not strictly convex")
    return signs.pop()


def area2(P: RationalPolytope) -> Fraction:
    """Twice the area, by the shoelace formula."""
    check_convex(P)
    vs = P.vertices
    s = sum((vs[i][0] * vs[(i + 1) % len(vs)][1] - vs[(i + 1) % len(vs)][0] * vs[i][1]
             for i in range(len(vs))), Fraction(0))
    return abs(s)


def _row_extent(P: RationalPolytope, y: Fraction, m: int):
    xs = []
    vs = [(m * a, m * b) for a, b in P.vertices]
    for (x0, y0), (x1, y1) in zip(vs, vs[1:] + vs[:1]):
        if y0 == y1:
            if y0 == y:
                xs += [x0, x1]
            continue
        if min(y0, y1) <= y <= max(y0, y1):
            xs.append(x0 + (x1 - x0) * (y - y0) / (y1 - y0))
    return (min(xs), max(xs)) if xs else None


def ehrhart(P: RationalPolytope, m: int) -> int:
    """Number of lattice points of the dilate ``mP``, counted row by row."""
    if m < 0:
        raise ValueError("dilation factor must be nonnegative")
    check_convex(P)
    if m == 0:
        return 1
    ys = [m * v[1] for v in P.vertices]
    total = 0
    for y in range(math.ceil(min(ys)), math.floor(max(ys)) + 1):
        ext = _row_extent(P, Fraction(y), m)
        if ext is None:
            continue
        lo, hi = math.ceil(ext[0]), math.floor(ext[1])
        if hi >= lo:
            total += hi - lo + 1
    return total


def valid_dilations(P: RationalPolytope, upto: int) -> list[int]:
    """Dilation factors ``m <= upto`` making every vertex of ``mP`` integral."""
    den = P.denominator
    return list(range(0, upto + 1, den))


def ehrhart_report(k: int, upto: int) -> list[dict]:
    P = polytope(k)
    out = []
    for m in valid_dilations(P, upto):
        n = ehrhart(P, m)
        h = h0_anticanonical(8, m)
        out.append({"m": m, "count": n, "h0": h, "match": n == h})
    return out


# monoid algebras ----------------------------------------------------------------

@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in gen) for gen in self.generators)
        for gen in gens:
            if len(gen) != 3 or gen[2] <= 0:
                raise ValueError(f"generator {gen} must be (i, j, m) with m > 0")
        object.__setattr__(self, "generators", gens)


def graded_pieces(M: MonoidPresentation, top: int) -> list[set[tuple[int, int]]]:
    """The sets ``{(i, j) : (i, j, m) in M}`` for ``m = 0..top``."""
    gens = M.generators if isinstance(M, MonoidPresentation) else MonoidPresentation(tuple(M)).generators
    pieces = [set() for _ in range(top + 1)]
    pieces[0].add((0, 0))
    for m in range(1, top + 1):
        cur = pieces[m]
        for i, j, w in gens:
            if w <= m:
                cur.update((a + i, b + j) for a, b in pieces[m - w])
    return pieces


def monoid_hilbert(M, m: int) -> int:
    """Dimension of the degree-m piece of the monoid algebra (grading by the last coordinate)."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    return len(graded_pieces(M, m)[m])


def lattice_points(P: RationalPolytope, m: int = 1) -> list[tuple[int, int]]:
    check_convex(P)
    out = []
    if m == 0:
        return [(0, 0)]
    ys = [m * v[1] for v in P.vertices]
    for y in range(math.ceil(min(ys)), math.floor(max(ys)) + 1):
        ext = _row_extent(P, Fraction(y), m)
        if ext is None:
            continue
        out += [(x, y) for x in range(math.ceil(ext[0]), math.floor(ext[1]) + 1)]
    return out


def semigroup_generators(P: RationalPolytope, max_degree: int = 1) -> MonoidPresentation:
    """Generators of the cone semigroup over ``P`` in degrees up to ``max_degree``.

    A point of ``mP`` is kept only if it is not a sum of points from lower
    degrees, so the result presents the semigroup exactly through
    ``max_degree``.
    """
    gens = []
    for m in range(1, max_degree + 1):
        reachable = graded_pieces(MonoidPresentation(tuple(gens)), m)[m] if gens else set()
        for x, y in lattice_points(P, m):
            if (x, y) not in reachable:
                gens.append((x, y, m))
    return MonoidPresentation(tuple(gens))


# weighted projective complete intersections --------------------------------------

Monomial = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class WpsCiRecord:
    k: int
    weights: tuple[int, ...]
    equations: tuple[tuple[Monomial, ...], ...]

    def to_json(self) -> dict:
        return {"k": self.k, "weights": list(self.weights),
                "equations": [[{"coeff": c, "exponents": list(e)} for c, e in eq] for eq in self.equations]}


def _monomial(**powers) -> tuple[int, ...]:
    v = [0] * 5
    for name, e in powers.items():
        v[int(name[1:])] += e
    return tuple(v)


def _times_binomial_power(prefix: tuple[int, ...], a: int, b: int, e: int) -> list[Monomial]:
    """Expand ``x^prefix * (x1^a + x2^b)^e`` into signed monomials (sign -1)."""
    out = []
    for i in range(e + 1):
        v = list(prefix)
        v[1] += a * (e - i)
        v[2] += b * i
        out.append((-math.comb(e, i), tuple(v)))
    return out


def wps_ci_record(k: int) -> WpsCiRecord:
    """Weights and the two equations of the boundary degeneration at ``t = g_{k+3}/g_k``, as printed."""
    g0, g1, g2, g3 = g(k), g(k + 1), g(k + 2), g(k + 3)
    r = k % 3
    if r == 0:
        s = g1 + g2
        w = (1, g0, g3, g1 * s, g2 * s)
        e1 = [(1, _monomial(x0=1, x3=1))] + _times_binomial_power(_monomial(x1=2 * g2), g3, g0, 1)
        e2 = [(1, _monomial(x0=1, x4=1))] + _times_binomial_power(_monomial(x2=2 * g1), g3, g0, 1)
    elif r == 1:
        s = 2 * g1 + g2
        w = (1, g0, g3, g1 * s, g2 * s)
        e1 = [(1, _monomial(x0=1, x3=1))] + _times_binomial_power(_monomial(x1=g2), g3, g0, 2)
        e2 = [(1, _monomial(x0=1, x4=1))] + _times_binomial_power(_monomial(x2=g1), g3, g0, 1)
    else:
        s = g1 + 2 * g2
        w = (1, g0, g3, g1 * s, g2 * s)
        e1 = [(1, _monomial(x0=1, x3=1))] + _times_binomial_power(_monomial(x1=g2), g3, g0, 1)
        e2 = [(1, _monomial(x0=1, x4=1))] + _times_binomial_power(_monomial(x2=g1), g3, g0, 2)
    return WpsCiRecord(k, w, (tuple(e1), tuple(e2)))


@dataclass(frozen=True)
class EquationReport:
    degrees: tuple[int, ...]
    homogeneous: bool

    @property
    def degree(self) -> int | None:
        return self.degrees[0] if self.homogeneous else None


@dataclass(frozen=True)
class HomogeneityReport:
    weights: tuple[int, ...]
    equations: tuple[EquationReport, ...]
    naive_degree: Fraction | None

    @property
    def all_homogeneous(self) -> bool:
        return all(e.homogeneous for e in self.equations)

    @property
    def mismatch(self) -> bool:
        return not self.all_homogeneous

    def to_json(self) -> dict:
        return {"weights": list(self.weights),
                "equations": [{"monomial_degrees": list(e.degrees), "homogeneous": e.homogeneous,
                               "degree": e.degree} for e in self.equations],
                "all_homogeneous": self.all_homogeneous,
                "naive_anticanonical_degree": None if self.naive_degree is None else str(self.naive_degree)}


def weighted_degree(weights, exponents) -> int:
    return sum(w * e for w, e in zip(weights, exponents))


def validate_homogeneity(rec) -> HomogeneityReport:
    """Weighted degree of every monomial of every equation.

    When all equations are homogeneous the report also carries the naive
    complete-intersection value ``(sum w - sum deg)^2 * prod deg / prod w``
    of the anticanonical self-intersection.
    """
    weights = tuple(rec.weights)
    reports = []
    for eq in rec.equations:
        degs = tuple(weighted_degree(weights, e) for _, e in eq)
        reports.append(EquationReport(degs, len(set(degs)) == 1))
    naive = None
    if all(r.homogeneous for r in reports) and len(weights) - len(reports) == 3:
        ds = [r.degree for r in reports]
        naive = Fraction((sum(weights) - sum(ds)) ** 2 * math.prod(ds), math.prod(weights))
    return HomogeneityReport(weights, tuple(reports), naive)

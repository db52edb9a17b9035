"""Picard lattices of del Pezzo surfaces.

Two presentations are supported: the blow-up of the plane at ``n <= 8``
general points (basis ``H, E_1, ..., E_n``, form ``diag(1, -1, ..., -1)``)
and the quadric ``P^1 x P^1`` (basis of the two rulings, hyperbolic form).
Contractions of (-1)-classes are tracked by :class:`ContractionView`, which
identifies ``Pic(X')`` with the orthogonal complement of the contracted
classes inside the ambient lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence


class NotInRange(ValueError):
    """The pair (p, q) violates ``pq*d > (p+q)^2``; the witness criterion does not apply."""


@dataclass(frozen=True)
class DivisorClass:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, *coeffs) -> DivisorClass:
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls, rank: int) -> DivisorClass:
        return cls((0,) * rank)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _check(self, other: DivisorClass):
        if len(other) != len(self):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-a for a in self))

    def __mul__(self, scalar) -> DivisorClass:
        return DivisorClass(tuple(a * scalar for a in self))

    __rmul__ = __mul__

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> list:
        return [int(c) if c.denominator == 1 else str(c) for c in self.coeffs]

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"


class SurfaceLattice:
    """``Pic`` of a smooth del Pezzo surface together with its intersection form."""

    def __init__(self, kind: str = "blowup", n: int = 0):
        if kind == "blowup":
            if not 0 <= n <= 8:
                raise ValueError(f"blow-up of the plane needs 0 <= n <= 8 points, got {n}")
        elif kind == "quadric":
            n = 0
        else:
            raise ValueError(f"unknown surface kind {kind!r}")
        self.kind = kind
        self.n = n

    @classmethod
    def blowup(cls, n: int) -> SurfaceLattice:
        return cls("blowup", n)

    @classmethod
    def quadric(cls) -> SurfaceLattice:
        return cls("quadric")

    @classmethod
    def parse(cls, text: str) -> SurfaceLattice:
        text = text.strip().lower()
        if text == "quadric":
            return cls.quadric()
        if text in ("p2", "plane"):
            return cls.blowup(0)
        kind, _, n = text.partition(":")
        if kind != "blowup" or not n.isdigit():
            raise ValueError(f"lattice kind must be 'blowup:n' or 'quadric', got {text!r}")
        return cls.blowup(int(n))

    @property
    def name(self) -> str:
        return "quadric" if self.kind == "quadric" else f"blowup:{self.n}"

    @property
    def rank(self) -> int:
        return 2 if self.kind == "quadric" else self.n + 1

    @property
    def degree(self) -> int:
        return 8 if self.kind == "quadric" else 9 - self.n

    @property
    def K(self) -> DivisorClass:
        if self.kind == "quadric":
            return DivisorClass.of(-2, -2)
        return DivisorClass((-3,) + (1,) * self.n)

    @property
    def anticanonical(self) -> DivisorClass:
        return -self.K

    def basis(self, i: int) -> DivisorClass:
        return DivisorClass(tuple(int(j == i) for j in range(self.rank)))

    @property
    def H(self) -> DivisorClass:
        return self.basis(0)

    def E(self, i: int) -> DivisorClass:
        """The exceptional class ``E_i`` (1-based)."""
        if self.kind != "blowup" or not 1 <= i <= self.n:
            raise IndexError(f"no exceptional class E_{i} on {self.name}")
        return self.basis(i)

    def intersect(self, u: DivisorClass, v: DivisorClass) -> Fraction:
        if len(u) != self.rank or len(v) != self.rank:
            raise ValueError(f"dimension mismatch: classes of length {len(u)}, {len(v)} on rank {self.rank}")
        if self.kind == "quadric":
            return u[0] * v[1] + u[1] * v[0]
        return u[0] * v[0] - sum(a * b for a, b in zip(u.coeffs[1:], v.coeffs[1:]))

    def square(self, u: DivisorClass) -> Fraction:
        return self.intersect(u, u)

    def lattice_points(self, anti_degree: int, square: int, bound: int,
                       constraints: Sequence[tuple[DivisorClass, int]] = ()) -> Iterator[DivisorClass]:
        """Integral classes ``L`` with ``-K.L = anti_degree`` and ``L^2 = square``.

        Coefficients satisfy ``|c| <= bound``; extra ``(class, value)`` pairs
        impose ``L.class = value``.  Yields in lexicographic order of the
        coefficient vector, so the first hit is the lexicographic minimum.
        """
        if self.kind == "quadric":
            yield from self._quadric_points(anti_degree, square, bound, constraints)
            return
        n, d, s = self.n, self.degree, anti_degree
        # -K.L = 3a + sum(c), L^2 = a^2 - sum(c^2); Cauchy-Schwarz on the c's
        # gives d*a^2 - 6*s*a + s^2 + n*square <= 0.
        if n == 0:
            a_range = [s // 3] if s % 3 == 0 else []
        else:
            disc = 9 * s * s - d * (s * s + n * square)
            if disc < 0:
                return
            r = math.isqrt(disc)
            a_lo = -((-(3 * s - r - 1)) // d)  # ceil, widened by one for isqrt floor
            a_hi = (3 * s + r + 1) // d
            a_range = range(max(a_lo, -bound), min(a_hi, bound) + 1)
        for a in a_range:
            if abs(a) > bound:
                continue
            rest_sum = s - 3 * a
            rest_sq = a * a - square
            for tail in _sum_square_vectors(n, rest_sum, rest_sq, bound):
                L = DivisorClass((a,) + tail)
                if all(self.intersect(L, c) == v for c, v in constraints):
                    yield L

    def _quadric_points(self, s, square, bound, constraints):
        # -K.L = 2x + 2y, L^2 = 2xy
        if s % 2:
            return
        half = s // 2
        for x in range(-bound, bound + 1):
            y = half - x
            if abs(y) > bound or 2 * x * y != square:
                continue
            L = DivisorClass.of(x, y)
            if all(self.intersect(L, c) == v for c, v in constraints):
                yield L

    @cached_property
    def _rays(self) -> tuple[DivisorClass, ...]:
        if self.kind == "quadric":
            return (DivisorClass.of(1, 0), DivisorClass.of(0, 1))
        if self.n == 0:
            return (self.H,)
        if self.n == 1:
            return (self.E(1), self.H - self.E(1))
        return tuple(self.lattice_points(1, -1, 6))

    def mori_rays(self) -> list[DivisorClass]:
        """Generators of the cone of curves."""
        return list(self._rays)

    def is_nef(self, v: DivisorClass) -> bool:
        return all(self.intersect(v, r) >= 0 for r in self._rays)

    def is_minus_one_class(self, c: DivisorClass) -> bool:
        return c.is_integral and self.square(c) == -1 and self.intersect(c, self.K) == -1

    def __eq__(self, other):
        return isinstance(other, SurfaceLattice) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return f"SurfaceLattice({self.name!r})"


def _sum_square_vectors(r: int, total: int, sq: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Integer r-vectors with given coordinate sum and sum of squares, lex order."""
    if sq < 0:
        return
    if r == 0:
        if total == 0 and sq == 0:
            yield ()
        return
    if r == 1:
        if total * total == sq and abs(total) <= bound:
            yield (total,)
        return
    # first coordinate x must leave room: (total-x)^2 <= (r-1)(sq - x^2),
    # i.e. r x^2 - 2 total x + total^2 - (r-1) sq <= 0
    disc = (r - 1) * (r * sq - total * total)
    if disc < 0:
        return
    w = math.isqrt(disc)
    lo = -((-(total - w - 1)) // r)
    hi = (total + w + 1) // r
    for x in range(max(lo, -bound), min(hi, bound) + 1):
        for rest in _sum_square_vectors(r - 1, total - x, sq - x * x, bound):
            yield (x,) + rest


@dataclass(frozen=True)
class ContractionView:
    """A surface ``X'`` obtained from ``ambient`` by contracting (-1)-classes.

    Classes on ``X'`` are stored as their pullbacks, i.e. vectors of the
    ambient lattice orthogonal to every contracted class, so intersection
    numbers on ``X'`` are ambient intersection numbers.
    """

    ambient: SurfaceLattice
    contracted: tuple[DivisorClass, ...] = field(default_factory=tuple)

    @property
    def name(self) -> str:
        return self.ambient.name

    @property
    def rank(self) -> int:
        return self.ambient.rank

    @property
    def degree(self) -> int:
        return self.ambient.degree + len(self.contracted)

    @property
    def K(self) -> DivisorClass:
        return self.pushforward(self.ambient.K)

    @property
    def anticanonical(self) -> DivisorClass:
        return -self.K

    def intersect(self, u: DivisorClass, v: DivisorClass) -> Fraction:
        return self.ambient.intersect(u, v)

    def square(self, u: DivisorClass) -> Fraction:
        return self.ambient.intersect(u, u)

    def pushforward(self, v: DivisorClass) -> DivisorClass:
        for c in self.contracted:
            v = v + c * self.ambient.intersect(v, c)
        return v

    def is_nef(self, v: DivisorClass) -> bool:
        # v nef on X' iff its pullback is nef on the ambient surface
        return self.ambient.is_nef(self.pushforward(v))

    def contract(self, c: DivisorClass) -> ContractionView:
        amb = self.ambient
        if not amb.is_minus_one_class(c):
            raise ValueError(f"{c} is not a (-1)-class on {amb.name}")
        for prev in self.contracted:
            if amb.intersect(prev, c) != 0:
                raise ValueError(f"{c} is not orthogonal to contracted class {prev}")
        return ContractionView(amb, self.contracted + (c,))

    def lattice_points(self, anti_degree: int, square: int, bound: int,
                       constraints: Sequence[tuple[DivisorClass, int]] = ()) -> Iterator[DivisorClass]:
        extra = tuple(constraints) + tuple((c, 0) for c in self.contracted)
        return self.ambient.lattice_points(anti_degree, square, bound, extra)


def as_view(surface) -> ContractionView:
    if isinstance(surface, ContractionView):
        return surface
    return ContractionView(surface)


def intersect(surface, u: DivisorClass, v: DivisorClass) -> Fraction:
    return surface.intersect(u, v)


def mori_rays(surface: SurfaceLattice) -> list[DivisorClass]:
    return surface.mori_rays()


def is_nef(surface, v: DivisorClass) -> bool:
    return surface.is_nef(v)


def h0_anticanonical(d: int, m: int) -> int:
    """``dim H^0(X, -mK_X)`` for a del Pezzo surface of degree ``d``."""
    if not 1 <= d <= 9:
        raise ValueError(f"del Pezzo degree must lie in 1..9, got {d}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    return 1 + d * m * (m + 1) // 2


def contract(view, c: DivisorClass) -> ContractionView:
    return as_view(view).contract(c)


def pushforward(view, v: DivisorClass) -> DivisorClass:
    return as_view(view).pushforward(v)


def unicuspidal_witness(surface, p: int, q: int, *, config=None, node=None,
                        bound: int | None = None) -> DivisorClass | None:
    """Lexicographically smallest integral class witnessing a (p, q)-unicuspidal curve.

    The class satisfies ``-K.L = p + q`` and ``L^2 = pq - 1``.  When the
    anticanonical cycle is reducible, ``L`` must also meet the left branch
    component in ``p``, the right one in ``q`` and every other component in
    zero.  Raises :class:`NotInRange` unless ``pq*d > (p+q)^2``.
    """
    if p <= 0 or q <= 0 or math.gcd(p, q) != 1:
        raise ValueError(f"(p, q) = ({p}, {q}) must be coprime positive integers")
    d = surface.degree
    if p * q * d <= (p + q) ** 2:
        raise NotInRange(f"pq*d = {p * q * d} <= (p+q)^2 = {(p + q) ** 2}")
    if bound is None:
        bound = 3 * (p + q)
    constraints = []
    if config is not None and config.k >= 2:
        if node is None:
            raise ValueError("a node is required for a reducible cycle")
        node = config.node(node)
        for j, comp in enumerate(config.components):
            target = p if j == node.left else q if j == node.right else 0
            constraints.append((comp, target))
    for L in surface.lattice_points(p + q, p * q - 1, bound, constraints):
        return L
    return None

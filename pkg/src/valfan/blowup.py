"""Intersection numbers on weighted blow-ups at a node of the cycle.

The (p, q)-weighted blow-up at a node, weight p on the left branch and q on
the right, extracts a divisor E with ``E^2 = -1/(pq)``.  Writing
``t = q/p``, the strict transforms of the two branch components lose
``1/t`` and ``t`` from their squares and one from their mutual product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cycle import CycleConfig, Edge, Vertex
from .quadratic import ExtPos, QuadVal


def _check_pair(p: int, q: int):
    if p <= 0 or q <= 0 or math.gcd(p, q) != 1:
        raise ValueError(f"weights ({p}, {q}) must be coprime positive integers")


def et_self(p: int, q: int) -> Fraction:
    _check_pair(p, q)
    return Fraction(-1, p * q)


def pair_intersections(p1: int, q1: int, p2: int, q2: int) -> tuple[Fraction, Fraction, Fraction]:
    """``(E1^2, E2^2, E1.E2)`` for the two exceptional curves of a double weighted blow-up.

    The pair is reordered so that ``q2*p1 - p2*q1 > 0``; equal slopes are rejected.
    """
    _check_pair(p1, q1)
    _check_pair(p2, q2)
    delta = q2 * p1 - p2 * q1
    if delta == 0:
        raise ValueError("the two weights have equal slope")
    if delta < 0:
        (p1, q1), (p2, q2) = (p2, q2), (p1, q1)
        delta = -delta
    return (Fraction(-q2, q1 * delta), Fraction(-p1, p2 * delta), Fraction(1, delta))


@dataclass(frozen=True)
class TransformMatrix:
    """Intersection matrix of the strict transforms of the cycle components."""

    entries: tuple[tuple[QuadVal, ...], ...]
    point: object = None

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[QuadVal]]:
        return [list(r) for r in self.entries]

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries) + "]"


def transform_matrix(config: CycleConfig, point, t=None) -> TransformMatrix:
    """Matrix of ``C_{i,t} . C_{j,t}`` on the weighted blow-up model at ``point``.

    ``point`` is an :class:`Edge` or :class:`Vertex`; alternatively pass a
    node index and ``t`` (an ExtPos or number; 0 and inf select the branch
    vertices).  At a vertex the matrix is that of the remaining components
    on the surface itself.
    """
    if t is not None:
        node = config.node(point)
        t = ExtPos.of(t)
        if t.kind == ExtPos.ZERO:
            point = Vertex(node.left)
        elif t.kind == ExtPos.INF:
            point = Vertex(node.right)
        else:
            point = Edge(node.index, t.value)
    gram = config.gram()
    k = config.k
    if isinstance(point, Vertex):
        if not 0 <= point.component < k:
            raise ValueError(f"vertex {point.component} out of range")
        keep = [i for i in range(k) if i != point.component]
        rows = tuple(tuple(QuadVal.coerce(gram[i][j]) for j in keep) for i in keep)
        return TransformMatrix(rows, point)
    if not isinstance(point, Edge):
        raise TypeError(f"not a dual complex point: {point!r}")
    node = config.node(point.node)
    tv = point.t
    m = [[QuadVal.coerce(x) for x in row] for row in gram]
    l, r = node.left, node.right
    m[l][l] -= 1 / tv
    m[r][r] -= tv
    if l == r:
        # both branches belong to the same nodal curve
        m[l][l] -= 2
    else:
        m[l][r] -= 1
        m[r][l] -= 1
    return TransformMatrix(tuple(tuple(row) for row in m), point)


def colength(p: int, q: int) -> int:
    """Colength of the monomial valuation ideal ``{v >= pq}`` for weights (p, q)."""
    _check_pair(p, q)
    return (p * q + p + q - 1) // 2


def colength_by_count(p: int, q: int) -> int:
    """Brute-force count of ``(i, j) >= 0`` with ``q*i + p*j < p*q``."""
    return sum(1 for i in range(p + 1) for j in range(q + 1) if q * i + p * j < p * q)

"""Exact strict positivity: is there ``a > 0`` with ``N a > 0``?

Both the primal question and its Gordan alternative (``w >= 0``, ``w != 0``,
``N w <= 0``) are posed as bounded linear programs with a feasible origin
and solved by a dense tableau simplex with Bland's rule.  The tableau works
over any exact ordered field; here that is Fraction or QuadVal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .quadratic import QuadVal


def _normalize(matrix) -> list[list]:
    rows = [list(r) for r in getattr(matrix, "entries", matrix)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    flat = [QuadVal.coerce(x) for r in rows for x in r]
    if all(x.is_rational for x in flat):
        return [[QuadVal.coerce(x).as_fraction() for x in r] for r in rows]
    return [[QuadVal.coerce(x) for x in r] for r in rows]


def simplex_max(c: list, A: list[list], b: list):
    """Maximize ``c.x`` subject to ``A x <= b``, ``x >= 0``, assuming ``b >= 0``.

    Returns ``(value, x)``; raises ValueError if unbounded.
    """
    m, n = len(A), len(c)
    zero = Fraction(0)
    # tableau rows: [A | I | b]; objective row holds reduced costs
    T = [list(A[i]) + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    z = [-x for x in c] + [zero] * m + [zero]
    basis = [n + i for i in range(m)]
    while True:
        col = next((j for j in range(n + m) if z[j] < 0), None)
        if col is None:
            break
        row = None
        best = None
        for i in range(m):
            if T[i][col] > 0:
                ratio = T[i][-1] / T[i][col]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best, row = ratio, i
        if row is None:
            raise ValueError("linear program is unbounded")
        piv = T[row][col]
        T[row] = [x / piv for x in T[row]]
        for i in range(m):
            if i != row and T[i][col] != 0:
                f = T[i][col]
                T[i] = [x - f * y for x, y in zip(T[i], T[row])]
        f = z[col]
        z = [x - f * y for x, y in zip(z, T[row])]
        basis[row] = col
    x = [zero] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[i][-1]
    return z[-1], x


def positivity_feasible(matrix) -> list | None:
    """A vector ``a`` with all ``a_i > 0`` and ``(N a)_j > 0``, or None.

    Solved as: maximize ``s`` subject to ``s <= a_i``, ``s <= (N a)_j``,
    ``a_i <= 1``, ``s <= 1``; feasible iff the optimum is positive.  The
    returned vector is rescaled to integers when rational.
    """
    N = _normalize(matrix)
    n = len(N)
    if n == 0:
        return None
    zero, one = Fraction(0), Fraction(1)
    # variables (a_1..a_n, s)
    A, b = [], []
    for i in range(n):
        A.append([-one if j == i else zero for j in range(n)] + [one])
        b.append(zero)
    for j in range(n):
        A.append([-N[j][i] for i in range(n)] + [one])
        b.append(zero)
    for i in range(n):
        A.append([one if j == i else zero for j in range(n)] + [zero])
        b.append(one)
    A.append([zero] * n + [one])
    b.append(one)
    value, x = simplex_max([zero] * n + [one], A, b)
    if not value > 0:
        return None
    a = x[:n]
    if all(isinstance(v, Fraction) for v in a):
        a = _integral(a)
    if not _is_positive_solution(N, a):
        raise ArithmeticError("simplex returned an invalid positivity certificate")
    return a


def infeasibility_witness(matrix) -> list | None:
    """A vector ``w >= 0``, ``w != 0`` with ``N w <= 0``, or None.

    By Gordan's alternative this exists exactly when no positive ``a``
    with ``N a > 0`` does (for symmetric N).
    """
    N = _normalize(matrix)
    n = len(N)
    if n == 0:
        return None
    zero, one = Fraction(0), Fraction(1)
    A = [list(row) for row in N] + [[one] * n]
    b = [zero] * n + [one]
    value, w = simplex_max([one] * n, A, b)
    if not value > 0:
        return None
    if all(isinstance(v, Fraction) for v in w):
        w = _integral(w)
    return w


def _integral(v: list[Fraction]) -> list[Fraction]:
    from math import gcd, lcm
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = gcd(*ints) or 1
    return [Fraction(x // g) for x in ints]


def _is_positive_solution(N, a) -> bool:
    if not all(x > 0 for x in a):
        return False
    return all(sum((N[j][i] * a[i] for i in range(len(a))), Fraction(0)) > 0 for j in range(len(a)))


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    certificate: list | None

    def vector(self) -> list:
        return list(self.certificate or [])


def decide(matrix) -> FeasibilityResult:
    """Positivity decision with a checked certificate either way."""
    a = positivity_feasible(matrix)
    if a is not None:
        return FeasibilityResult(True, a)
    w = infeasibility_witness(matrix)
    N = _normalize(matrix)
    if N and w is None:
        raise ArithmeticError("neither a positive solution nor a Gordan witness was found")
    return FeasibilityResult(False, w)

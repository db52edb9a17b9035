import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oracles import grid_feasible, random_symmetric
from valfan.blowup import transform_matrix
from valfan.cycle import Edge, nodal_cubic
from valfan.feasibility import decide, infeasibility_witness, positivity_feasible, simplex_max
from valfan.lattice import SurfaceLattice
from valfan.quadratic import QuadVal


def _times(N, a):
    return [sum((N[j][i] * a[i] for i in range(len(a))), F(0)) for j in range(len(N))]


def _check_certificate(N, a):
    assert all(x > 0 for x in a)
    assert all(y > 0 for y in _times(N, a))


def _check_witness(N, w):
    assert all(x >= 0 for x in w) and any(x > 0 for x in w)
    assert all(y <= 0 for y in _times(N, w))


def test_examples():
    assert positivity_feasible([[-1, 1], [1, -1]]) is None
    assert infeasibility_witness([[-1, 1], [1, -1]]) == [1, 1]
    assert positivity_feasible([[0, 1], [1, -1]]) == [2, 1]
    assert positivity_feasible([[4]]) == [1]
    assert positivity_feasible([[0]]) is None
    assert positivity_feasible([]) is None


def test_simplex_small_lp():
    # max x + y  s.t.  x + 2y <= 4,  3x + y <= 6
    value, x = simplex_max([F(1), F(1)], [[F(1), F(2)], [F(3), F(1)]], [F(4), F(6)])
    assert value == F(14, 5) and x == [F(8, 5), F(6, 5)]
    with pytest.raises(ValueError):
        simplex_max([F(1)], [[F(-1)]], [F(0)])


def test_all_2x2_agree_with_grid():
    for a, b, c in itertools.product(range(-5, 6), repeat=3):
        N = [[a, b], [b, c]]
        assert (positivity_feasible(N) is not None) == grid_feasible(N)


def test_grid_hits_imply_lp_feasible():
    # the grid only ever proves feasibility; misses can hide thin cones
    rng = random.Random(7)
    for _ in range(400):
        N = random_symmetric(rng, rng.randint(3, 4))
        if grid_feasible(N):
            assert positivity_feasible(N) is not None


def test_thin_cone_beyond_grid():
    N = [[-2, -1, 4, 1], [-1, 2, 3, -4], [4, 3, -5, -2], [1, -4, -2, 0]]
    a = positivity_feasible(N)
    _check_certificate(N, a)
    assert not grid_feasible(N, 20)
    assert max(a) > 20


def _symmetric(v):
    n = int(len(v) ** 0.5)
    return [[v[min(i, j) * n + max(i, j)] for j in range(n)] for i in range(n)]


sym = st.integers(1, 4).flatmap(lambda n: st.lists(st.integers(-5, 5), min_size=n * n, max_size=n * n)).map(_symmetric)


@settings(max_examples=300, deadline=None)
@given(sym)
def test_exactly_one_alternative(N):
    res = decide(N)
    if res.feasible:
        _check_certificate(N, res.certificate)
        assert infeasibility_witness(N) is None
    else:
        _check_witness(N, res.certificate)


def test_quadratic_entries():
    S = SurfaceLattice.blowup(1)
    cfg = nodal_cubic(S)
    # d = 8: the 1x1 matrix 8 - t - 1/t - 2 changes sign at 3 +- 2 sqrt 2
    inside = transform_matrix(cfg, Edge(0, QuadVal(3, 2, 2) - F(1, 100)))
    outside = transform_matrix(cfg, Edge(0, QuadVal(3, 2, 2) + F(1, 100)))
    assert positivity_feasible(inside) == [1]
    assert positivity_feasible(outside) is None
    N = [[QuadVal(1, -1, 2), QuadVal(1)], [QuadVal(1), QuadVal(-1)]]
    a = positivity_feasible(N)
    _check_certificate(N, a)


def test_rejects_non_square():
    with pytest.raises(ValueError):
        positivity_feasible([[1, 2]])

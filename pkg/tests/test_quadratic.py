import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from valfan.quadratic import (ExtPos, IncompatibleRadicands, QuadVal, interval_contains, isqrt_exact,
                              parse_quad, quad_cmp, simplest_between)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=60)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 13])


def quads(D=None):
    return st.builds(QuadVal, rats, rats, st.just(D) if D else radicands)


def test_cmp_examples():
    r2 = QuadVal.sqrt(2)
    assert quad_cmp(3 - 2 * r2, QuadVal(F(1, 6))) == 1
    assert quad_cmp(2 * r2, QuadVal(3)) == -1
    x = QuadVal(F(1, 3), F(-2, 7), 5)
    assert quad_cmp(x, x) == 0


def test_normalization():
    assert QuadVal(0, 1, 8) == QuadVal(0, 2, 2)
    assert QuadVal(1, 3, 4) == QuadVal(7)
    assert QuadVal(2, 0, 5).D == 1
    assert QuadVal.sqrt(F(1, 2)) == QuadVal(0, F(1, 2), 2)
    assert hash(QuadVal(5)) == hash(F(5))


def test_mixed_radicands_rejected():
    with pytest.raises(IncompatibleRadicands):
        quad_cmp(QuadVal.sqrt(2), QuadVal.sqrt(3))
    # a rational side is always compatible
    assert quad_cmp(QuadVal.sqrt(2), QuadVal(F(7, 5))) == 1


def test_text_form():
    assert str(QuadVal(3, -2, 2)) == "3 - 2*sqrt(2)"
    assert str(QuadVal(F(1, 2), F(1, 2), 5)) == "1/2 + 1/2*sqrt(5)"
    assert str(QuadVal(0, -1, 3)) == "-sqrt(3)"
    assert str(QuadVal(F(-1, 2))) == "-1/2"
    assert parse_quad("3 + sqrt(8)") == QuadVal(3, 2, 2)
    assert parse_quad(" -sqrt(5) ") == QuadVal(0, -1, 5)
    with pytest.raises(ValueError):
        parse_quad("sqrt(x)")


@given(quads())
def test_text_roundtrip(x):
    assert parse_quad(str(x)) == x


@given(rats, rats)
def test_rational_cmp_agrees(a, b):
    assert quad_cmp(QuadVal(a), QuadVal(b)) == (a > b) - (a < b)


@given(quads(5), quads(5), quads(5))
def test_total_order(x, y, z):
    assert quad_cmp(x, y) == -quad_cmp(y, x)
    if quad_cmp(x, y) <= 0 and quad_cmp(y, z) <= 0:
        assert quad_cmp(x, z) <= 0


@given(quads(3), quads(3))
def test_field_ops(x, y):
    assert (x + y) - y == x
    assert (x * y) == (y * x)
    if y:
        assert (x / y) * y == x


def test_cmp_matches_high_precision():
    rng = random.Random(20240611)
    mpmath.mp.prec = 200

    def rand_rat():
        return F(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))

    for _ in range(10_000):
        D = rng.choice([2, 3, 5, 6, 7, 11, 15, 101])
        x = QuadVal(rand_rat(), rand_rat(), D)
        # a near-tie partner makes the comparison nontrivial
        y = QuadVal(x.a + F(rng.randint(-3, 3), 10**6), x.b + F(rng.randint(-3, 3), 10**7), D)
        fx = mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(D)
        fy = mpmath.mpf(y.a.numerator) / y.a.denominator + mpmath.mpf(y.b.numerator) / y.b.denominator * mpmath.sqrt(D)
        want = (fx > fy) - (fx < fy) if abs(fx - fy) > mpmath.mpf(2) ** -150 else 0
        assert quad_cmp(x, y) == want


def test_floor_ceil():
    r = QuadVal(3, 2, 2)  # 5.828...
    assert (r.__floor__(), r.__ceil__()) == (5, 6)
    assert QuadVal(3, -2, 2).__floor__() == 0


def test_extpos():
    assert ExtPos.zero() < ExtPos.of(F(1, 100)) < ExtPos.of(QuadVal(3, 2, 2)) < ExtPos.inf()
    assert ExtPos.parse("inf") == ExtPos.inf()
    assert ExtPos.of(0) == ExtPos.zero()
    with pytest.raises(ValueError):
        ExtPos(ExtPos.FINITE, -1)


def test_interval_contains():
    lo, hi = QuadVal(3, -2, 2), QuadVal(3, 2, 2)
    assert interval_contains(lo, hi, 1)
    assert not interval_contains(lo, hi, 6)
    assert not interval_contains(ExtPos.zero(), ExtPos.inf(), ExtPos.zero())
    assert interval_contains(ExtPos.zero(), ExtPos.inf(), ExtPos.zero(), (False, True))
    with pytest.raises(ValueError):
        interval_contains(hi, lo, 1)


@given(st.fractions(min_value=0, max_value=20, max_denominator=30),
       st.fractions(min_value=F(1, 30), max_value=3, max_denominator=30))
def test_simplest_between_is_simplest(lo, width):
    hi = lo + width
    x = simplest_between(lo, hi)
    assert lo < x < hi
    # nothing with a smaller denominator fits
    for q in range(1, x.denominator):
        p = (lo * q).__floor__() + 1
        assert not F(p, q) < hi


def test_simplest_between_examples():
    assert simplest_between(QuadVal(3, -2, 2), QuadVal(3, 2, 2)) == 1
    assert simplest_between(5, F(11, 2)) == F(16, 3)
    assert simplest_between(F(11, 2), F(23, 4)) == F(17, 3)
    assert simplest_between(2, None) == 3


def test_isqrt_exact():
    assert isqrt_exact(49) == 7
    assert isqrt_exact(50) is None
    assert isqrt_exact(-4) is None

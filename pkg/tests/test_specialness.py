import math
import random
from fractions import Fraction as F

import pytest

from valfan.cycle import (CycleConfig, Edge, Vertex, anticanonical_cycles, circle_position, contract_non_nef,
                          load_config, nodal_cubic, point_at)
from valfan.lattice import DivisorClass, NotInRange, SurfaceLattice, unicuspidal_witness
from valfan.quadratic import QuadVal
from valfan.specialness import (CONTRACTED, IRREDUCIBLE, TWO_COMPONENTS, VERTEX_RULE, classify,
                                irreducible_bounds, partition, region, witness_set)

F1 = SurfaceLattice.blowup(1)
Q = SurfaceLattice.quadric()


def cls(*c):
    return DivisorClass.of(*c)


def square_of_rulings():
    return CycleConfig(Q, (cls(1, 0), cls(0, 1), cls(1, 0), cls(0, 1)))


def test_classify_examples():
    cubic = nodal_cubic(F1)
    v = classify(cubic, Edge(0, F(1, 6)))
    assert not v.special and v.case_tag == IRREDUCIBLE
    assert classify(cubic, Edge(0, 1)).special
    assert not classify(cubic, Vertex(0)).special
    two = CycleConfig(SurfaceLattice.blowup(5), (cls(2, -1, -1, -1, -1, 0), cls(1, 0, 0, 0, 0, -1)))
    two_nef, _ = contract_non_nef(two)
    assert two_nef.degree == 4
    res = classify(two_nef, Edge(0, 1))
    assert not res.special and res.case_tag == TWO_COMPONENTS
    sq = classify(square_of_rulings(), Vertex(2))
    assert sq.special and sq.case_tag == VERTEX_RULE


def test_irreducible_interval_ends():
    cubic = nodal_cubic(F1)
    lo, hi = irreducible_bounds(8)
    assert (lo, hi) == (QuadVal(3, -2, 2), QuadVal(3, 2, 2))
    eps = F(1, 10**6)
    assert not classify(cubic, Edge(0, lo)).special
    assert classify(cubic, Edge(0, lo + eps)).special
    assert not classify(cubic, Edge(0, lo - eps)).special
    assert classify(cubic, Edge(0, hi - eps)).special
    assert not classify(cubic, Edge(0, hi)).special


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_low_degree_irreducible_never_special(n):
    cubic = nodal_cubic(SurfaceLattice.blowup(n))
    for t in (F(1, 3), 1, F(7, 2), QuadVal(1, 1, 2)):
        assert not classify(cubic, Edge(0, t)).special


def test_contracted_tag_and_invariance():
    S = SurfaceLattice.blowup(2)
    cfg = CycleConfig(S, (S.E(1), S.H - S.E(1) - S.E(2), 2 * S.H - S.E(1)))
    nef, pmap = contract_non_nef(cfg)
    rng = random.Random(4)
    for _ in range(60):
        u = F(rng.randint(0, 3 * 40 - 1), 40)
        pt = point_at(cfg, u)
        v = classify(cfg, pt)
        assert v.case_tag == CONTRACTED
        assert v.special == classify(nef, pmap(pt)).special


def test_witness_examples():
    ws = witness_set(nodal_cubic(F1), 0, 6)
    assert [(e.p, e.q) for e in ws.entries] == [(5, 1), (4, 1), (2, 1), (1, 1), (1, 2), (1, 4), (1, 5)]
    assert all(e.L == unicuspidal_witness(F1, e.p, e.q) for e in ws.entries)
    assert witness_set(square_of_rulings(), 0, 20).entries == ()
    two = load_config("configs/dp4-two-conics.json")
    assert witness_set(two, 0, 20).entries == ()


def test_cycle_of_three_has_a_witness():
    # two lines and a third line through the blown-up point
    cfg = CycleConfig(F1, (F1.H, F1.H, F1.H - F1.E(1)))
    assert cfg.all_nef
    ws = witness_set(cfg, 0, 10)
    assert [(e.p, e.q) for e in ws.entries] == [(1, 1)]
    L = ws.entries[0].L
    assert F1.square(L) == 0 and F1.intersect(L, F1.anticanonical) == 2


def _brute_witnesses(config, node, H):
    found = []
    for p in range(1, H + 1):
        for q in range(1, H + 1):
            if math.gcd(p, q) != 1:
                continue
            try:
                L = unicuspidal_witness(config.surface, p, q, config=config, node=node)
            except NotInRange:
                continue
            if L is not None and classify(config, Edge(node, F(q, p))).special:
                found.append((p, q))
    return sorted(found, key=lambda pq: F(pq[1], pq[0]))


def _nef_cycles():
    seen = []
    for n in range(0, 5):
        S = SurfaceLattice.blowup(n)
        for k in (2, 3, 4):
            for cfg in anticanonical_cycles(S, k):
                if cfg.all_nef:
                    seen.append(cfg)
    seen.append(square_of_rulings())
    seen.append(CycleConfig(Q, (cls(1, 1), cls(1, 1))))
    return seen


def test_candidate_search_is_complete():
    H = 9
    for cfg in _nef_cycles():
        for node in range(cfg.k):
            got = [(e.p, e.q) for e in witness_set(cfg, node, H).entries]
            assert got == _brute_witnesses(cfg, node, H), (cfg.components, node)
    for n in (1, 2, 3):
        cfg = nodal_cubic(SurfaceLattice.blowup(n))
        got = [(e.p, e.q) for e in witness_set(cfg, 0, 14).entries]
        assert got == _brute_witnesses(cfg, 0, 14)


def test_partition_degree_eight():
    P = partition(nodal_cubic(F1), 6)
    ts = [b.point.t for b in P.boundaries]
    assert ts == [F(1, 5), F(1, 4), F(1, 2), 1, 2, 4, 5]
    assert len(P.chambers) == 6 and len(P.tails) == 2 and P.truncated
    for c in P.chambers + P.tails:
        assert classify(nodal_cubic(F1), c.sample).special
    assert P.tails[0].lo == Edge(0, QuadVal(3, -2, 2))


def test_partition_empty_and_full():
    P = partition(load_config("configs/dp4-two-conics.json"), 10)
    assert P.region.kind == "Empty" and P.chambers == ()
    P = partition(square_of_rulings(), 10)
    assert P.region.kind == "FullCircle" and len(P.chambers) == 4
    assert [b.point for b in P.boundaries] == [Vertex(i) for i in range(4)]


def _wrap(cfg, u):
    if u < 0:
        return u + cfg.k
    if u >= cfg.k:
        return u - cfg.k
    return u


def test_region_edges_are_sharp():
    cfgs = [load_config(f"configs/{name}.json") for name in ("dp8-nodal", "dp7-line-conic", "dp8-quadric-nodal")]
    eps = F(1, 10**5)
    for cfg in cfgs:
        reg = region(cfg)
        assert reg.kind == "OpenInterval"
        for end, sign in ((reg.lo, -1), (reg.hi, 1)):
            assert not classify(cfg, end).special
            u = circle_position(cfg, end)
            outside = point_at(cfg, _wrap(cfg, u + sign * eps))
            inside = point_at(cfg, _wrap(cfg, u - sign * eps))
            # lo == hi removes a single point; both neighbours are then inside
            assert classify(cfg, outside).special == (reg.lo == reg.hi)
            assert classify(cfg, inside).special


def test_region_matches_classify_on_samples():
    rng = random.Random(17)
    for n in range(0, 6):
        for k in (1, 2, 3):
            for cfg in list(anticanonical_cycles(SurfaceLattice.blowup(n), k))[:6]:
                reg = region(cfg)
                for _ in range(15):
                    pt = point_at(cfg, F(rng.randint(0, 60 * cfg.k - 1), 60))
                    assert reg.contains(cfg, pt) == classify(cfg, pt).special

import json
import random
from fractions import Fraction as F

import pytest

from valfan.cycle import (ConfigError, CycleConfig, Edge, Vertex, anticanonical_cycles, circle_atlas,
                          circle_position, config_from_dict, config_to_dict, contract_non_nef, load_config,
                          nodal_cubic, parse_point, point_at, validate)
from valfan.lattice import DivisorClass, SurfaceLattice
from valfan.quadratic import QuadVal

S2 = SurfaceLattice.blowup(2)
S3 = SurfaceLattice.blowup(3)


def cls(*c):
    return DivisorClass.of(*c)


def hexagon():
    H, E1, E2, E3 = S3.H, S3.E(1), S3.E(2), S3.E(3)
    return CycleConfig(S3, (E1, H - E1 - E2, E2, H - E2 - E3, E3, H - E1 - E3))


def test_hexagon_is_valid():
    assert validate(hexagon()) == []


def test_irreducible_is_valid():
    for n in range(9):
        assert validate(nodal_cubic(SurfaceLattice.blowup(n))) == []


def test_sum_mismatch():
    H = S2.H
    bad = CycleConfig(S2, (H, H, H))
    kinds = {v.kind for v in validate(bad)}
    assert "AnticanonicalSumMismatch" in kinds


def test_adjacency_and_adjunction_violations():
    # sum is -K but the pieces do not form a cycle
    F1 = SurfaceLattice.blowup(1)
    bad = CycleConfig(F1, (cls(0, 1), cls(0, 1), cls(3, -3)))
    kinds = {v.kind for v in validate(bad)}
    assert {"Adjacency", "Adjunction"} <= kinds
    # a cubic with a double point at the blown-up point plus the exceptional curve is fine
    assert validate(CycleConfig(F1, (cls(3, -2), cls(0, 1)))) == []


def test_dimension_mismatch():
    bad = CycleConfig(S2, (cls(1, 0),))
    assert [v.kind for v in validate(bad)] == ["DimensionMismatch"]


def test_circle_atlas():
    assert [e for _, e in circle_atlas(nodal_cubic(S2))] == [(0, 0)]
    two = CycleConfig(S2, (cls(1, 0, -1), cls(2, -1, 0)))
    assert [e for _, e in circle_atlas(two)] == [(0, 1), (1, 0)]
    quad = CycleConfig(SurfaceLattice.quadric(), (cls(1, 0), cls(0, 1), cls(1, 0), cls(0, 1)))
    atlas = circle_atlas(quad)
    assert [e for _, e in atlas] == [(0, 1), (1, 2), (2, 3), (3, 0)]
    for (_, (_, b)), (_, (a, _)) in zip(atlas, atlas[1:] + atlas[:1]):
        assert b == a


def test_circle_coordinates_roundtrip():
    cfg = hexagon()
    rng = random.Random(3)
    for _ in range(200):
        u = F(rng.randint(0, 6 * 50 - 1), 50)
        pt = point_at(cfg, u)
        assert circle_position(cfg, pt) == u


def test_contract_identity_for_nef():
    cfg = nodal_cubic(S2)
    out, pmap = contract_non_nef(cfg)
    assert out is cfg and pmap.is_identity
    assert pmap(Edge(0, 3)) == Edge(0, 3)


def test_contract_line_conic_example():
    # E1, the line through both points, and a conic through the first point
    cfg = CycleConfig(S2, (S2.E(1), S2.H - S2.E(1) - S2.E(2), 2 * S2.H - S2.E(1)))
    assert validate(cfg) == []
    out, pmap = contract_non_nef(cfg)
    assert out.k == 2 and out.degree == 8
    assert out.components == (cls(1, 0, -1), cls(2, 0, 0))
    # node 0 has the contracted curve as its left branch: t -> 1 + t
    assert pmap(Edge(0, 3)) == Edge(1, 4)
    # node 2 has it as its right branch: t -> t / (1 + t)
    assert pmap(Edge(2, 3)) == Edge(1, F(3, 4))
    # the contracted vertex becomes the (1, 1) point of the merged node
    assert pmap(Vertex(0)) == Edge(1, 1)
    assert pmap(Vertex(1)) == Vertex(0)
    assert pmap(Edge(1, 5)) == Edge(0, 5)


def test_contract_hexagon_reaches_triangle():
    out, pmap = contract_non_nef(hexagon())
    assert out.k == 3 and out.degree == 9
    assert all(c == cls(1, 0, 0, 0) for c in out.components)
    assert len(pmap.steps) == 3 <= out.surface.rank - 1
    assert sorted(pmap.contracted_components) == [0, 2, 4]


def _random_point(cfg, rng):
    if rng.random() < 0.2:
        return Vertex(rng.randrange(cfg.k))
    t = F(rng.randint(1, 60), rng.randint(1, 60))
    if rng.random() < 0.2:
        t = QuadVal(t, F(1, rng.randint(2, 9)), 2)
        if t.sign() <= 0:
            t = QuadVal(1, F(1, 3), 2)
    return Edge(rng.randrange(cfg.k), t)


def test_point_map_bijective_and_monotone():
    rng = random.Random(11)
    cfgs = [c for n in (2, 3, 4) for k in (2, 3, 4, 5) for c in anticanonical_cycles(SurfaceLattice.blowup(n), k)]
    checked = 0
    for cfg in cfgs:
        out, pmap = contract_non_nef(cfg)
        if pmap.is_identity:
            continue
        checked += 1
        pts = [_random_point(cfg, rng) for _ in range(40)]
        for pt in pts:
            assert pmap.inverse(pmap(pt)) == pt
        for pt in (_random_point(out, rng) for _ in range(20)):
            assert pmap(pmap.inverse(pt)) == pt
        pts = sorted(set(pts), key=lambda p: circle_position(cfg, p))
        imgs = [circle_position(out, pmap(p)) for p in pts]
        descents = sum(1 for a, b in zip(imgs, imgs[1:]) if not a < b)
        assert descents <= 1
        assert all(out.is_nef(i) for i in range(out.k))
    assert checked > 20


def test_config_json_roundtrip(tmp_path):
    cfg = hexagon()
    data = config_to_dict(cfg)
    again = config_from_dict(json.loads(json.dumps(data)))
    assert again == cfg
    path = tmp_path / "c.json"
    path.write_text(json.dumps(data))
    assert load_config(path) == cfg


def test_malformed_configs(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(p)
    p.write_text(json.dumps({"surface": "blowup:1"}))
    with pytest.raises(ConfigError):
        load_config(p)
    p.write_text(json.dumps({"surface": "blowup:1", "components": [[1, 0], [2, 0]]}))
    with pytest.raises(ConfigError) as info:
        load_config(p)
    assert any(v.kind == "AnticanonicalSumMismatch" for v in info.value.violations)


def test_parse_point_and_branch_flip():
    cfg = CycleConfig(SurfaceLattice.blowup(1), (cls(3, -1),), branch_flip=True)
    assert parse_point(cfg, node=0, t="1/6") == Edge(0, 6)
    assert parse_point(cfg, node=0, t="3 - 2*sqrt(2)") == Edge(0, QuadVal(3, 2, 2))
    assert parse_point(cfg, node=0, t="0") == Vertex(0)
    with pytest.raises(ValueError):
        parse_point(cfg, node=0, t="-1")
    with pytest.raises(IndexError):
        parse_point(cfg, node=1, t="1")


def test_enumerated_cycles_are_valid():
    for n in range(0, 6):
        S = SurfaceLattice.blowup(n)
        for k in range(1, 5):
            for cfg in anticanonical_cycles(S, k):
                assert validate(cfg) == []
    # three lines on the plane; the hexagon of the degree-6 surface
    assert len(list(anticanonical_cycles(SurfaceLattice.blowup(0), 3))) == 1
    assert len(list(anticanonical_cycles(S3, 6))) == 1

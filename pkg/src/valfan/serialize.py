"""JSON encodings of library results.  Every exact number is written in its
canonical text form so it can be parsed back with :func:`parse_quad`."""

from __future__ import annotations

from fractions import Fraction

from .cycle import Vertex
from .quadratic import QuadVal


def exact(x) -> str:
    return str(QuadVal.coerce(x))


def point_json(pt, approx: bool = False) -> dict:
    if isinstance(pt, Vertex):
        return {"vertex": pt.component}
    out = {"node": pt.node, "t": exact(pt.t)}
    if approx:
        out["approx"] = float(pt.t)
    return out


def witness_json(e) -> dict:
    return {"p": e.p, "q": e.q, "t": exact(Fraction(e.q, e.p)), "L": e.L.to_json(), "m": e.m, "node": e.node}


def verdict_json(v, approx: bool = False) -> dict:
    out = {"special": v.special, "case": v.case_tag, "point": point_json(v.point, approx)}
    if v.model_point is not None and v.model_point != v.point:
        out["model_point"] = point_json(v.model_point, approx)
        out["model_case"] = v.model_case
    if v.certificate is not None:
        key = "positive_combination" if v.special else "obstruction"
        out[key] = [exact(x) for x in v.certificate]
    return out


def region_json(r, approx: bool = False) -> dict:
    out = {"kind": r.kind}
    if r.kind == "OpenInterval":
        out["lo"] = point_json(r.lo, approx)
        out["hi"] = point_json(r.hi, approx)
    return out


def partition_json(P, approx: bool = False) -> dict:
    def seg(c):
        return {"lo": point_json(c.lo, approx), "hi": point_json(c.hi, approx),
                "sample": point_json(c.sample, approx)}

    return {
        "region": region_json(P.region, approx),
        "height_bound": P.height_bound,
        "truncated": P.truncated,
        "contracted_components": list(P.contracted),
        "boundaries": [{"point": point_json(b.point, approx),
                        "witness": "Vertex" if b.witness is None else witness_json(b.witness)}
                       for b in P.boundaries],
        "chambers": [seg(c) for c in P.chambers],
        "accumulation_tails": [seg(c) for c in P.tails],
    }


def witness_set_json(ws) -> dict:
    return {"node": ws.node, "height_bound": ws.height_bound,
            "entries": [witness_json(e) for e in ws.entries]}


def matrix_json(M) -> list:
    return [[exact(x) for x in row] for row in M.entries]

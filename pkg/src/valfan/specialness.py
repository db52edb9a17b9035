"""Which quasi-monomial valuations on the dual-complex circle are special.

Two independent deciders are provided and cross-checked by :func:`classify`:

* the matrix route: strict positivity of the strict-transform intersection
  matrix on the weighted blow-up (works on the original surface, for
  rational and quadratic-irrational weights alike);
* the closed form: contract non-nef components, then read the answer off
  the degree, the cycle length and the component squares.

:func:`witness_set` finds the boundary weights ``t = q/p`` carrying a
(p, q)-unicuspidal class and :func:`partition` cuts the special region into
chambers between consecutive boundaries.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .blowup import transform_matrix
from .cycle import (CycleConfig, Edge, Vertex, check, circle_position,
                    contract_non_nef, point_at)
from .feasibility import decide
from .lattice import DivisorClass, NotInRange, unicuspidal_witness
from .quadratic import QuadVal, isqrt_exact, simplest_between

IRREDUCIBLE = "Irreducible-a"
TWO_COMPONENTS = "TwoComp-b"
CYCLE = "Cycle-c"
CONTRACTED = "Contracted-d"
VERTEX_RULE = "VertexRule"


class InconsistentVerdict(AssertionError):
    """The matrix test and the closed form disagree (should never happen)."""


@dataclass(frozen=True)
class Verdict:
    special: bool
    case_tag: str
    certificate: tuple | None = None
    point: object = None
    model_point: object = None
    model_case: str | None = None


def worker_count() -> int:
    raw = os.environ.get("VALFAN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# configs are immutable, so validation and contraction are done once per config
@lru_cache(maxsize=512)
def _checked(config: CycleConfig) -> CycleConfig:
    check(config)
    return config


@lru_cache(maxsize=512)
def _nef_model(config: CycleConfig):
    return contract_non_nef(config)


# deciders -------------------------------------------------------------------

def matrix_verdict(config: CycleConfig, pt) -> tuple[bool, list | None]:
    """Strict positivity test on the intersection matrix of the strict transforms."""
    res = decide(transform_matrix(config, pt))
    return res.feasible, res.certificate


def _irreducible_edge_special(d: int, t: QuadVal) -> bool:
    # t inside ((d-2-sqrt(d^2-4d))/2, (d-2+sqrt(d^2-4d))/2) iff t^2 - (d-2) t + 1 < 0
    return d >= 5 and (t * t - (d - 2) * t + 1).sign() < 0


def nef_model_verdict(config: CycleConfig, pt) -> tuple[bool, str]:
    """Closed-form answer on a cycle whose components are all nef."""
    d, k = config.degree, config.k
    if k == 1:
        if isinstance(pt, Vertex):
            return False, VERTEX_RULE
        return _irreducible_edge_special(d, pt.t), IRREDUCIBLE
    if k == 2:
        if d == 4:
            return False, TWO_COMPONENTS
        if isinstance(pt, Vertex):
            other = 1 - pt.component
            return config.square(other) > 0, VERTEX_RULE
        return True, TWO_COMPONENTS
    return True, CYCLE if not isinstance(pt, Vertex) else VERTEX_RULE


def closed_form_verdict(config: CycleConfig, pt) -> Verdict:
    nef, pmap = _nef_model(config)
    mpt = pmap(pt)
    special, tag = nef_model_verdict(nef, mpt)
    outer = CONTRACTED if not pmap.is_identity else tag
    return Verdict(special, outer, None, pt, mpt, tag)


def classify(config: CycleConfig, pt) -> Verdict:
    """Decide specialness at a circle point by both routes and insist they agree."""
    _checked(config)
    pt = config.canonical(pt)
    closed = closed_form_verdict(config, pt)
    special, cert = matrix_verdict(config, pt)
    if special != closed.special:
        raise InconsistentVerdict(f"matrix test says {special}, closed form says {closed.special} at {pt}")
    return Verdict(special, closed.case_tag, tuple(cert) if cert is not None else None,
                   pt, closed.model_point, closed.model_case)


# regions ---------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """The special locus as a subset of the circle.

    ``kind`` is ``"Empty"``, ``"FullCircle"`` or ``"OpenInterval"``; an open
    interval runs forward (increasing circle position) from ``lo`` to ``hi``.
    ``lo == hi`` means the circle minus one point.
    """

    kind: str
    lo: object = None
    hi: object = None

    def contains(self, config: CycleConfig, pt) -> bool:
        if self.kind == "Empty":
            return False
        if self.kind == "FullCircle":
            return True
        if self.lo == self.hi:
            return pt != self.lo
        return _cyclic_offset(config, self.lo, pt) < _cyclic_offset(config, self.lo, self.hi)


def _cyclic_offset(config, start, pt) -> QuadVal:
    """Forward distance from ``start`` to ``pt`` in (0, k]; equal points give k."""
    off = circle_position(config, pt) - circle_position(config, start)
    if off.sign() <= 0:
        off = off + config.k
    return off


def irreducible_bounds(d: int) -> tuple[QuadVal, QuadVal]:
    """Ends of the special weight interval for an irreducible cycle of degree d >= 5."""
    disc = d * d - 4 * d
    half = Fraction(1, 2)
    return (QuadVal(Fraction(d - 2, 2), -half, disc), QuadVal(Fraction(d - 2, 2), half, disc))


def nef_region(config: CycleConfig) -> Region:
    d, k = config.degree, config.k
    if k == 1:
        if d < 5:
            return Region("Empty")
        lo, hi = irreducible_bounds(d)
        return Region("OpenInterval", Edge(0, lo), Edge(0, hi))
    if k == 2:
        if d == 4:
            return Region("Empty")
        for j in (0, 1):
            if config.square(j) == 0:
                v = Vertex(1 - j)
                return Region("OpenInterval", v, v)
        return Region("FullCircle")
    return Region("FullCircle")


def region(config: CycleConfig) -> Region:
    """The special locus on the circle of ``config`` (pulled back from the nef model)."""
    _checked(config)
    nef, pmap = _nef_model(config)
    r = nef_region(nef)
    if r.kind != "OpenInterval":
        return r
    return Region(r.kind, pmap.inverse(r.lo), pmap.inverse(r.hi))


# witnesses ------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessEntry:
    p: int
    q: int
    L: DivisorClass
    m: int
    node: int = 0

    @property
    def t(self) -> Fraction:
        return Fraction(self.q, self.p)


@dataclass(frozen=True)
class WitnessSet:
    node: int
    entries: tuple[WitnessEntry, ...]
    height_bound: int

    @property
    def weights(self) -> list[Fraction]:
        return [e.t for e in self.entries]


def _irreducible_candidates(d: int, p_lo: int, p_hi: int, height: int) -> list[tuple[int, int, int]]:
    """Coprime (p, q) with ``(p+q)^2 = d*p*q - m`` for some ``1 <= m <= d``."""
    out = []
    if d < 5:
        return out
    for p in range(p_lo, p_hi + 1):
        for m in range(1, d + 1):
            r = isqrt_exact((d * d - 4 * d) * p * p - 4 * m)
            if r is None:
                continue
            for num in {(d - 2) * p - r, (d - 2) * p + r}:
                if num <= 0 or num % 2:
                    continue
                q = num // 2
                if q <= height and math.gcd(p, q) == 1:
                    out.append((p, q, m))
    return out


def _two_component_candidates(config: CycleConfig, node, height: int):
    a = config.square(node.left)
    b = config.square(node.right)
    if a > 0 and b > 0:
        pairs = ((p, q) for p in range(1, height + 1) for q in (p - 1, p, p + 1) if 1 <= q <= height)
    elif a == 0:
        pairs = ((p, q) for p in (1, 2) for q in range(1, height + 1))
    else:
        pairs = ((p, q) for p in range(1, height + 1) for q in (1, 2))
    for p, q in pairs:
        if math.gcd(p, q) != 1:
            continue
        n = p * q - 1
        fa, fb = p * p - n * a, q * q - n * b
        if fa < 0 or fb < 0:
            continue
        if p * q >= 2 and fa * fb < (p * q - 2) ** 2:
            continue
        yield p, q


def _stripe(args):
    d, lo, hi, height = args
    return _irreducible_candidates(d, lo, hi, height)


def witness_set(config: CycleConfig, node=0, height_bound: int = 30) -> WitnessSet:
    """Boundary weights at ``node`` with a lattice witness and special ``E_t``.

    Requires all components nef.  Entries are sorted by ``t``.
    """
    _checked(config)
    if not config.all_nef:
        raise ValueError("witness_set needs a cycle with nef components; contract first")
    node = config.node(node)
    d = config.degree
    H = height_bound
    if config.k == 1:
        workers = worker_count()
        if workers > 1 and H >= 2000:
            step = -(-H // workers)
            jobs = [(d, lo, min(H, lo + step - 1), H) for lo in range(1, H + 1, step)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                cands = [c for part in pool.map(_stripe, jobs) for c in part]
        else:
            cands = _irreducible_candidates(d, 1, H, H)
    elif config.k == 2:
        cands = [(p, q, d * p * q - (p + q) ** 2) for p, q in _two_component_candidates(config, node, H)]
    else:
        cands = [(1, 1, d - 4)] if H >= 1 else []
    entries = []
    for p, q, m in sorted(set(cands)):
        try:
            L = unicuspidal_witness(config.surface, p, q, config=config, node=node.index)
        except NotInRange:
            continue
        if L is None:
            continue
        if not classify(config, Edge(node.index, Fraction(q, p))).special:
            continue
        entries.append(WitnessEntry(p, q, L, m, node.index))
    entries.sort(key=lambda e: e.t)
    return WitnessSet(node.index, tuple(entries), H)


# partition --------------------------------------------------------------------

@dataclass(frozen=True)
class Boundary:
    point: object
    witness: WitnessEntry | None = None

    @property
    def is_vertex(self) -> bool:
        return isinstance(self.point, Vertex)


@dataclass(frozen=True)
class Chamber:
    lo: object
    hi: object
    sample: object


@dataclass(frozen=True)
class Partition:
    region: Region
    boundaries: tuple[Boundary, ...]
    chambers: tuple[Chamber, ...]
    tails: tuple[Chamber, ...] = ()
    height_bound: int = 0
    truncated: bool = False
    contracted: tuple[int, ...] = field(default_factory=tuple)


def _sample_between(config, lo, hi):
    """Simplest rational circle point strictly between ``lo`` and ``hi`` (forward)."""
    a = circle_position(config, lo)
    b = a + _cyclic_offset(config, lo, hi)
    u = simplest_between(a, b)
    return point_at(config, u)


def partition(config: CycleConfig, height_bound: int = 30) -> Partition:
    """Chamber decomposition of the special locus, truncated at witness height ``height_bound``.

    Witness heights refer to the nef model.  For an open-interval region
    the two end segments may contain infinitely many further chambers and
    are reported separately as tails.
    """
    _checked(config)
    nef, pmap = _nef_model(config)
    reg_nef = nef_region(nef)
    reg = region(config)
    if reg.kind == "Empty":
        return Partition(reg, (), (), (), height_bound, False, tuple(pmap.contracted_components))

    bounds = []
    for i in range(nef.k):
        v = Vertex(i)
        if reg_nef.contains(nef, v):
            bounds.append(Boundary(pmap.inverse(v)))
    for n in nef.nodes:
        for e in witness_set(nef, n.index, height_bound).entries:
            pt = Edge(n.index, e.t)
            if reg_nef.contains(nef, pt):
                bounds.append(Boundary(pmap.inverse(pt), e))

    if reg.kind == "OpenInterval":
        bounds.sort(key=lambda b: _cyclic_offset(config, reg.lo, b.point))
    else:
        bounds.sort(key=lambda b: circle_position(config, b.point))

    chambers, tails = [], []
    pts = [b.point for b in bounds]
    if reg.kind == "OpenInterval":
        edges = [reg.lo] + pts + [reg.hi]
        segs = list(zip(edges, edges[1:]))
        inner = segs[1:-1]
        ends = [segs[0], segs[-1]] if len(segs) > 1 else [segs[0]]
    else:
        if pts:
            inner = list(zip(pts, pts[1:] + pts[:1]))
        else:
            start = Vertex(0)
            inner = [(start, start)]
        ends = []

    for lo, hi in inner:
        s = _sample_between(config, lo, hi)
        if not classify(config, s).special:
            raise InconsistentVerdict(f"chamber sample {s} is not special")
        chambers.append(Chamber(lo, hi, s))
    for lo, hi in ends:
        s = _sample_between(config, lo, hi)
        if not classify(config, s).special:
            raise InconsistentVerdict(f"tail sample {s} is not special")
        tails.append(Chamber(lo, hi, s))
    truncated = reg.kind == "OpenInterval"
    return Partition(reg, tuple(bounds), tuple(chambers), tuple(tails), height_bound,
                     truncated, tuple(pmap.contracted_components))

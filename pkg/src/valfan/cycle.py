"""Anticanonical cycles ``C = C_0 + ... + C_{k-1}`` and their dual-complex circle.

Node ``i`` joins component ``i`` (its left branch) to component ``i+1``
(its right branch), indices mod ``k``.  A point on the open edge of node
``i`` is the quasi-monomial valuation with weight 1 on the left branch and
``t`` on the right; ``t -> 0`` tends to the left vertex, ``t -> inf`` to
the right one.  On the circle, vertex ``i`` sits at position ``i`` and
the edge point at position ``i + t/(1+t)``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .lattice import ContractionView, DivisorClass, SurfaceLattice, as_view
from .quadratic import QuadVal, parse_quad


@dataclass(frozen=True)
class NodeRef:
    index: int
    left: int
    right: int


@dataclass(frozen=True)
class Vertex:
    component: int

    def __str__(self):
        return f"Vertex({self.component})"


@dataclass(frozen=True)
class Edge:
    node: int
    t: QuadVal

    def __post_init__(self):
        t = QuadVal.coerce(self.t)
        if t.sign() <= 0:
            raise ValueError(f"edge weight must be positive and finite, got {t}")
        object.__setattr__(self, "t", t)

    def __str__(self):
        return f"Edge({self.node}, t={self.t})"


DualComplexPoint = Vertex | Edge


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


class ConfigError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class CycleConfig:
    surface: SurfaceLattice | ContractionView
    components: tuple[DivisorClass, ...]
    branch_flip: bool = False

    def __post_init__(self):
        comps = tuple(c if isinstance(c, DivisorClass) else DivisorClass(tuple(c))
                      for c in self.components)
        object.__setattr__(self, "components", comps)

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return self.surface.degree

    d = degree

    @property
    def node_count(self) -> int:
        return self.k

    def node(self, index) -> NodeRef:
        if isinstance(index, NodeRef):
            index = index.index
        if not 0 <= index < self.k:
            raise IndexError(f"node {index} out of range for k = {self.k}")
        return NodeRef(index, index, (index + 1) % self.k)

    @property
    def nodes(self) -> list[NodeRef]:
        return [self.node(i) for i in range(self.k)]

    def intersect(self, u, v) -> Fraction:
        return self.surface.intersect(u, v)

    def square(self, i: int) -> Fraction:
        c = self.components[i]
        return self.surface.intersect(c, c)

    def product(self, i: int, j: int) -> Fraction:
        return self.surface.intersect(self.components[i], self.components[j])

    def gram(self) -> list[list[Fraction]]:
        return [[self.product(i, j) for j in range(self.k)] for i in range(self.k)]

    def is_nef(self, i: int) -> bool:
        return self.surface.is_nef(self.components[i])

    @property
    def all_nef(self) -> bool:
        return all(self.is_nef(i) for i in range(self.k))

    def canonical(self, pt: DualComplexPoint) -> DualComplexPoint:
        """Normalize a user-supplied point: the k = 1 branch flip swaps t and 1/t."""
        if self.branch_flip and self.k == 1 and isinstance(pt, Edge):
            return Edge(0, 1 / pt.t)
        return pt


def validate(config: CycleConfig) -> list[Violation]:
    """All violated invariants of an anticanonical cycle; empty when valid."""
    out = []
    S = config.surface
    k = config.k
    if k == 0:
        return [Violation("Empty", "a cycle needs at least one component")]
    for i, c in enumerate(config.components):
        if len(c) != S.rank:
            out.append(Violation("DimensionMismatch",
                                 f"component {i} has {len(c)} coefficients, lattice rank is {S.rank}"))
    if out:
        return out
    for i, c in enumerate(config.components):
        if not c.is_integral:
            out.append(Violation("NonIntegral", f"component {i} = {c}"))
    if isinstance(S, ContractionView):
        for i, c in enumerate(config.components):
            for e in S.contracted:
                if S.intersect(c, e) != 0:
                    out.append(Violation("NotPulledBack", f"component {i} meets contracted class {e}"))
    total = config.components[0]
    for c in config.components[1:]:
        total = total + c
    if total != S.anticanonical:
        out.append(Violation("AnticanonicalSumMismatch", f"sum {total} != -K = {S.anticanonical}"))
    K = S.K
    for i, c in enumerate(config.components):
        deg = -S.intersect(K, c)
        if deg <= 0:
            out.append(Violation("NonPositiveDegree", f"-K.C_{i} = {deg}"))
        if k >= 2 and S.intersect(c, c) != deg - 2:
            out.append(Violation("Adjunction", f"C_{i}^2 = {S.intersect(c, c)}, expected {deg - 2}"))
    if k == 2:
        if config.product(0, 1) != 2:
            out.append(Violation("Adjacency", f"C_0.C_1 = {config.product(0, 1)}, expected 2"))
    elif k >= 3:
        for i, j in itertools.combinations(range(k), 2):
            adjacent = j - i == 1 or (i == 0 and j == k - 1)
            want = 1 if adjacent else 0
            if config.product(i, j) != want:
                out.append(Violation("Adjacency", f"C_{i}.C_{j} = {config.product(i, j)}, expected {want}"))
    if not out:
        for i, c in enumerate(config.components):
            if not S.is_nef(c) and S.intersect(c, c) != -1:
                out.append(Violation("NonNefNotMinusOne", f"C_{i} is not nef and C_{i}^2 = {S.intersect(c, c)}"))
        if k >= 3 and config.all_nef and k not in (3, 4):
            out.append(Violation("NefCycleLength", f"all components nef but k = {k}"))
    return out


def check(config: CycleConfig) -> CycleConfig:
    bad = validate(config)
    if bad:
        raise ConfigError(bad)
    return config


# circle coordinates ------------------------------------------------------

def circle_atlas(config: CycleConfig) -> list[tuple[NodeRef, tuple[int, int]]]:
    """The edges of the dual complex in circle order, each as (node, (from vertex, to vertex))."""
    return [(n, (n.left, n.right)) for n in config.nodes]


def circle_position(config: CycleConfig, pt: DualComplexPoint) -> QuadVal:
    if isinstance(pt, Vertex):
        return QuadVal.coerce(pt.component)
    return pt.node + pt.t / (1 + pt.t)


def point_at(config: CycleConfig, u) -> DualComplexPoint:
    """Inverse of :func:`circle_position`, with ``u`` taken mod k."""
    u = QuadVal.coerce(u)
    n = math.floor(u)
    f = u - n
    n %= config.k
    if f == 0:
        return Vertex(n)
    return Edge(n, f / (1 - f))


def parse_point(config: CycleConfig, *, node=None, t=None, vertex=None) -> DualComplexPoint:
    if vertex is not None:
        if not 0 <= int(vertex) < config.k:
            raise ValueError(f"vertex {vertex} out of range for k = {config.k}")
        return Vertex(int(vertex))
    if node is None or t is None:
        raise ValueError("an edge point needs both a node and a weight t")
    node = config.node(int(node)).index
    s = str(t).strip().lower()
    if s in ("0", "inf", "oo"):
        n = config.node(node)
        return Vertex(n.left if s == "0" else n.right)
    tv = t if isinstance(t, QuadVal) else parse_quad(s)
    if tv.sign() <= 0:
        raise ValueError(f"weight must be positive, got {tv}")
    return config.canonical(Edge(node, tv))


# contraction --------------------------------------------------------------

@dataclass(frozen=True)
class _Step:
    removed: int
    k: int

    def new_index(self, j: int) -> int:
        return j if j < self.removed else j - 1

    def old_index(self, j: int) -> int:
        return j if j < self.removed else j + 1

    @property
    def before(self) -> int:
        return (self.removed - 1) % self.k

    @property
    def merged(self) -> int:
        return self.new_index(self.before)

    def forward(self, pt):
        i = self.removed
        if isinstance(pt, Vertex):
            if pt.component == i:
                return Edge(self.merged, 1)
            return Vertex(self.new_index(pt.component))
        if pt.node == self.before:
            # node whose right branch is the contracted curve
            return Edge(self.merged, pt.t / (1 + pt.t))
        if pt.node == i:
            # node whose left branch is the contracted curve
            return Edge(self.merged, 1 + pt.t)
        return Edge(self.new_index(pt.node), pt.t)

    def backward(self, pt):
        if isinstance(pt, Vertex):
            return Vertex(self.old_index(pt.component))
        if pt.node != self.merged:
            return Edge(self.old_index(pt.node), pt.t)
        s = (pt.t - 1).sign()
        if s < 0:
            return Edge(self.before, pt.t / (1 - pt.t))
        if s == 0:
            return Vertex(self.removed)
        return Edge(self.removed, pt.t - 1)


@dataclass(frozen=True)
class PointMap:
    """Bijection from the circle of a cycle to the circle of its contraction."""

    steps: tuple[_Step, ...] = field(default_factory=tuple)

    def __call__(self, pt: DualComplexPoint) -> DualComplexPoint:
        for st in self.steps:
            pt = st.forward(pt)
        return pt

    def inverse(self, pt: DualComplexPoint) -> DualComplexPoint:
        for st in reversed(self.steps):
            pt = st.backward(pt)
        return pt

    @property
    def is_identity(self) -> bool:
        return not self.steps

    @property
    def contracted_components(self) -> list[int]:
        """Indices (in the original cycle) of the contracted components."""
        alive = None
        out = []
        for st in self.steps:
            if alive is None:
                alive = list(range(st.k))
            out.append(alive.pop(st.removed))
        return out


def contract_non_nef(config: CycleConfig) -> tuple[CycleConfig, PointMap]:
    """Contract non-nef components (each a (-1)-curve) until all are nef."""
    check(config)
    view = as_view(config.surface)
    comps = list(config.components)
    steps = []
    while True:
        bad = [i for i, c in enumerate(comps) if not view.is_nef(c)]
        if not bad:
            break
        i = bad[0]
        c0 = comps[i]
        if view.intersect(c0, c0) != -1:
            raise ConfigError([Violation("NonNefNotMinusOne", f"C_{i}^2 = {view.intersect(c0, c0)}")])
        steps.append(_Step(i, len(comps)))
        view = view.contract(c0)
        comps = [view.pushforward(c) for j, c in enumerate(comps) if j != i]
    if not steps:
        return config, PointMap()
    out = CycleConfig(view, tuple(comps))
    check(out)
    return out, PointMap(tuple(steps))


# config files --------------------------------------------------------------

def config_from_dict(data: dict) -> CycleConfig:
    if not isinstance(data, dict):
        raise ConfigError([Violation("Malformed", "config must be a JSON object")])
    try:
        surface = SurfaceLattice.parse(str(data["surface"]))
        raw = data["components"]
        comps = tuple(DivisorClass(tuple(Fraction(str(x)) for x in c)) for c in raw)
    except KeyError as exc:
        raise ConfigError([Violation("Malformed", f"missing key {exc}")]) from exc
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError([Violation("Malformed", str(exc))]) from exc
    return CycleConfig(surface, comps, bool(data.get("branch_flip", False)))


def load_config(path) -> CycleConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError([Violation("Malformed", f"invalid JSON: {exc}")]) from exc
    return check(config_from_dict(data))


def config_to_dict(config: CycleConfig) -> dict:
    out = {"surface": config.surface.name,
           "components": [c.to_json() for c in config.components],
           "branch_flip": config.branch_flip}
    if isinstance(config.surface, ContractionView) and config.surface.contracted:
        out["contracted"] = [c.to_json() for c in config.surface.contracted]
    return out


def nodal_cubic(surface) -> CycleConfig:
    """The irreducible cycle: a single nodal anticanonical curve."""
    return CycleConfig(surface, (surface.anticanonical,))


# enumeration of numeric cycles ---------------------------------------------

def component_classes(surface, bound: int = 3) -> list[DivisorClass]:
    """Classes that can occur as a component of a reducible anticanonical cycle.

    These are (-1)-classes and nef classes with ``C^2 = -K.C - 2``.
    """
    out = []
    for s in range(1, surface.degree + 1):
        for c in surface.lattice_points(s, s - 2, bound):
            if s == 1 or surface.is_nef(c):
                out.append(c)
    return out


def anticanonical_cycles(surface, k: int, bound: int = 3, limit: int | None = None) -> Iterator[CycleConfig]:
    """Valid cycles of length k built from :func:`component_classes`.

    Each cyclic arrangement is produced once up to rotation and reflection.
    """
    if k == 1:
        yield nodal_cubic(surface)
        return
    cands = component_classes(surface, bound)
    d = surface.degree
    K = surface.K
    degs = [-surface.intersect(K, c) for c in cands]
    target = surface.anticanonical
    count = 0

    seen = set()

    def extend(chain):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if len(chain) == k:
            key = min(tuple(chain[r:] + chain[:r]) for r in range(k))
            key = min(key, min(tuple(chain[::-1][r:] + chain[::-1][:r]) for r in range(k)))
            if key in seen:
                return
            cfg = CycleConfig(surface, tuple(cands[j] for j in chain))
            if not validate(cfg):
                seen.add(key)
                count += 1
                yield cfg
            return
        spent = sum(degs[j] for j in chain)
        left = k - len(chain)
        pos = len(chain)
        for j in range(chain[0], len(cands)):
            if spent + degs[j] + (left - 1) > d:
                continue
            c = cands[j]
            want_prev = 2 if k == 2 else 1
            if surface.intersect(c, cands[chain[-1]]) != want_prev:
                continue
            if k >= 3 and any(surface.intersect(c, cands[m]) != 0 for m in chain[1:-1]):
                continue
            if k >= 3 and 2 <= pos < k - 1 and surface.intersect(c, cands[chain[0]]) != 0:
                continue
            yield from extend(chain + [j])

    for first in range(len(cands)):
        yield from extend([first])

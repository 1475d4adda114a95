"""Right-angled hexagons, the pants they double to, and pants complexes.

Hexagon convention: the alternate sides are ``b = (l, l+eps, l-eps)`` and
``a[k]`` is the side opposite ``b[k]``. Going round the hexagon the sides read
``b1, a3, b2, a1, b3, a2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .cayley_trivalent import LabeledCubicGraph, validate_cubic
from .errors import NoneFound, NotAdmissible, PreconditionViolated

IDENTITY_TOL = 1e-9
SEPARATION = 1e-6

DEFAULT_GRID_L = tuple(2 + 0.5 * k for k in range(13))     # 2, 2.5, ..., 8
DEFAULT_GRID_EPS = (0.1, 0.25, 0.5)


def opposite_side(x: float, y: float, z: float) -> float:
    """Side opposite ``x`` in a right-angled hexagon with alternate sides x, y, z."""
    return math.acosh((math.cosh(x) + math.cosh(y) * math.cosh(z)) / (math.sinh(y) * math.sinh(z)))


def _others(k: int) -> tuple[int, int]:
    return tuple(j for j in range(3) if j != k)


@dataclass(frozen=True)
class HexagonMetric:
    l: float
    eps: float
    b: tuple[float, float, float]
    a: tuple[float, float, float]

    def cosine_residuals(self) -> list[float]:
        """Residuals of the six cosine relations (a from b, and b from a), at cosh level."""
        out = []
        for sides, opp in ((self.b, self.a), (self.a, self.b)):
            for k in range(3):
                y, z = (sides[j] for j in _others(k))
                rhs = (math.cosh(sides[k]) + math.cosh(y) * math.cosh(z)) / (math.sinh(y) * math.sinh(z))
                out.append(math.cosh(opp[k]) - rhs)
        return out

    def sine_ratios(self) -> tuple[float, float, float]:
        return tuple(math.sinh(self.b[k]) / math.sinh(self.a[k]) for k in range(3))

    def to_json(self) -> dict:
        return {"l": self.l, "eps": self.eps, "a": list(self.a), "b": list(self.b)}


def admissibility_problems(h: HexagonMetric) -> list[str]:
    problems = []
    for k in range(3):
        if not 0 < h.a[k] < 1:
            problems.append(f"a{k + 1} = {h.a[k]!r} not in (0, 1)")
        if not h.b[k] > 1:
            problems.append(f"b{k + 1} = {h.b[k]!r} not > 1")
    values = list(h.a) + list(h.b)
    for x, y in itertools.combinations(values, 2):
        if abs(x - y) < SEPARATION:
            problems.append(f"sides {x!r} and {y!r} are not separated")
    scales = [math.cosh(x) for x in h.a + h.b]
    for k, (r, sc) in enumerate(zip(h.cosine_residuals(), scales)):
        if abs(r) > IDENTITY_TOL * max(1.0, sc):
            problems.append(f"cosine relation {k} off by {r!r}")
    s = h.sine_ratios()
    for k in (1, 2):
        if abs(s[k] - s[0]) > IDENTITY_TOL * max(1.0, abs(s[0])):
            problems.append(f"sine ratio {k + 1} differs by {s[k] - s[0]!r}")
    return problems


def hexagon_from(l: float, eps: float) -> HexagonMetric:
    """Solve the hexagon with alternate sides ``(l, l+eps, l-eps)``.

    Raises :class:`NotAdmissible` unless ``0 < a_i < 1 < b_i`` with six distinct
    side lengths and both the cosine and sine relations hold.
    """
    if not l > eps > 0:
        raise NotAdmissible(f"need l > eps > 0, got l={l}, eps={eps}", {"l": l, "eps": eps})
    b = (float(l), float(l + eps), float(l - eps))
    a = tuple(opposite_side(b[k], *(b[j] for j in _others(k))) for k in range(3))
    h = HexagonMetric(float(l), float(eps), b, a)
    problems = admissibility_problems(h)
    if problems:
        raise NotAdmissible("; ".join(problems), h.to_json())
    return h


def find_admissible(grid_l=DEFAULT_GRID_L, grid_eps=DEFAULT_GRID_EPS) -> tuple[float, float]:
    for l in grid_l:
        for eps in grid_eps:
            try:
                hexagon_from(l, eps)
            except NotAdmissible:
                continue
            return l, eps
    raise NoneFound("no admissible (l, eps) on the grid")


@dataclass(frozen=True)
class PantsMetric:
    boundary_lengths: tuple[float, float, float]   # by label 1, 2, 3
    seam_lengths: tuple[float, float, float]

    @classmethod
    def from_hexagon(cls, h: HexagonMetric) -> "PantsMetric":
        return cls(tuple(2 * x for x in h.a), tuple(h.b))

    def check(self) -> None:
        if not all(x < 2 for x in self.boundary_lengths) or not all(x > 1 for x in self.seam_lengths):
            raise NotAdmissible("pants metric needs boundaries < 2 and seams > 1")


@dataclass
class PantsComplex:
    base_graph: LabeledCubicGraph
    metric: PantsMetric
    # gluings[e] = ((v, label), (w, label)) for edge e of the base graph
    gluings: list[tuple[tuple[int, int], tuple[int, int]]]
    twist: float = 0.0
    boundary_of: dict = field(default_factory=dict)   # (pants, label) -> edge index

    @property
    def num_pants(self) -> int:
        return self.base_graph.num_vertices

    def to_json(self) -> dict:
        return {
            "pants": self.num_pants,
            "gluings": len(self.gluings),
            "chi": euler_characteristic(self),
            "genus": genus(self),
        }


def build_pants_complex(g: LabeledCubicGraph, m: PantsMetric) -> PantsComplex:
    rep = validate_cubic(g)
    if not rep.ok:
        raise PreconditionViolated(f"base graph fails validation: {rep.witnesses}")
    m.check()
    gluings = []
    boundary_of = {}
    for e, (u, v, lab) in enumerate(g.edges):
        gluings.append(((u, lab), (v, lab)))
        boundary_of[(u, lab)] = e
        boundary_of[(v, lab)] = e
    if len(boundary_of) != 3 * g.num_vertices:
        raise PreconditionViolated("gluings do not match every pants boundary exactly once")
    return PantsComplex(g, m, gluings, 0.0, boundary_of)


def euler_characteristic(pc: PantsComplex) -> int:
    return -pc.num_pants


def genus(pc: PantsComplex) -> int:
    return 1 + pc.num_pants // 2


@dataclass(frozen=True)
class LengthReport:
    max_boundary: float
    seam_lower_bound: float

    @property
    def ok(self) -> bool:
        return self.max_boundary < 2 and self.seam_lower_bound > 3

    def to_json(self) -> dict:
        return {"max_boundary": self.max_boundary, "three_seam_lower_bound": self.seam_lower_bound,
                "ok": self.ok}


def length_report(m: PantsMetric) -> LengthReport:
    """Boundary geodesics are shorter than 2; curves crossing three seams are longer than 3."""
    return LengthReport(max(m.boundary_lengths), 3 * min(m.seam_lengths))


def gluings_equivariant(pc: PantsComplex, vertex_map) -> bool:
    """True when relabelling pants by ``vertex_map`` permutes the gluing set."""
    glue = {frozenset(p) for p in pc.gluings}
    for p, q in pc.gluings:
        img = frozenset({(vertex_map(p[0]), p[1]), (vertex_map(q[0]), q[1])})
        if img not in glue:
            return False
    return True

"""Exact 2-D DoF outer regions built from half-planes ``a D1 + b D2 <= c``.

All arithmetic uses :class:`fractions.Fraction`; no floats are involved.
"""

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .errors import InternalInconsistency, MismatchedDestination

__all__ = [
    "HalfPlane",
    "DofRegion",
    "GapReport",
    "build_region",
    "region_from_constraints",
    "sum_dof",
    "in_S",
    "expressible_by_bottleneck_bounds",
    "compare_bounds",
    "format_rational",
    "region_csv",
    "region_json",
]

INF = math.inf


def format_rational(x):
    return "inf" if x == INF else str(Fraction(x))


@dataclass(frozen=True)
class HalfPlane:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = Fraction(getattr(self, name))
            if value < 0:
                raise ValueError("half-plane coefficients must be non-negative")
            object.__setattr__(self, name, value)
        if self.a == 0 and self.b == 0:
            raise ValueError("half-plane needs a non-zero coefficient")

    @classmethod
    def bottleneck(cls, dest_index, rho):
        """``rho D_i + D_other <= rho``."""
        if dest_index == 1:
            return cls(rho, 1, rho)
        if dest_index == 2:
            return cls(1, rho, rho)
        raise ValueError("destination index must be 1 or 2")

    def contains(self, point):
        x, y = point
        return self.a * x + self.b * y <= self.c

    def tight(self, point):
        x, y = point
        return self.a * x + self.b * y == self.c

    def bottleneck_forms(self):
        """Pairs ``(i, m)`` such that this is ``m D_i + D_other <= m``."""
        out = []
        if self.b == 1 and self.a == self.c:
            out.append((1, self.a))
        if self.a == 1 and self.b == self.c:
            out.append((2, self.b))
        return out

    def __str__(self):
        terms = []
        for coef, var in ((self.a, "D1"), (self.b, "D2")):
            if coef == 0:
                continue
            terms.append(var if coef == 1 else f"{coef} {var}")
        return f"{' + '.join(terms)} <= {self.c}"


UNIT_BOX = (HalfPlane(1, 0, 1), HalfPlane(0, 1, 1))


@dataclass(frozen=True)
class DofRegion:
    """Feasible set of ``constraints`` in the non-negative quadrant.

    ``vertices`` are the extreme points in counter-clockwise order starting at
    the origin.  Redundant constraints stay in ``constraints`` but produce no
    vertex of their own.
    """

    constraints: tuple
    vertices: tuple

    def contains(self, point):
        x, y = (Fraction(v) for v in point)
        return x >= 0 and y >= 0 and all(h.contains((x, y)) for h in self.constraints)

    def on_boundary(self, point):
        x, y = (Fraction(v) for v in point)
        return self.contains((x, y)) and (
            x == 0 or y == 0 or any(h.tight((x, y)) for h in self.constraints)
        )

    def is_vertex(self, point):
        return tuple(Fraction(v) for v in point) in self.vertices

    def active_constraints(self):
        return [h for h in self.constraints if sum(h.tight(v) for v in self.vertices) >= 2]


def _intersect(l1, l2):
    (a1, b1, c1), (a2, b2, c2) = l1, l2
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)


def _ccw_from_origin(p, q):
    # all points lie in the closed first quadrant, so angle order is cross-product order
    cross = p[0] * q[1] - p[1] * q[0]
    if cross:
        return -1 if cross > 0 else 1
    return -1 if p[0] + p[1] < q[0] + q[1] else (1 if p != q else 0)


def _vertices(constraints):
    lines = [(h.a, h.b, h.c) for h in constraints]
    lines += [(Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0))]
    points = set()
    for l1, l2 in combinations(lines, 2):
        p = _intersect(l1, l2)
        if p is None:
            continue
        if p[0] >= 0 and p[1] >= 0 and all(h.contains(p) for h in constraints):
            points.add(p)
    origin = (Fraction(0), Fraction(0))
    if origin not in points:
        raise InternalInconsistency("region does not contain the origin")
    rest = sorted(points - {origin}, key=cmp_to_key(_ccw_from_origin))
    return (origin, *rest)


def region_from_constraints(extra):
    """Unit box intersected with the given half-planes."""
    constraints = tuple(UNIT_BOX) + tuple(extra)
    return DofRegion(constraints, _vertices(constraints))


def build_region(certs):
    """Outer region from bottleneck certificates: ``rho D_i + D_other <= rho`` each."""
    return region_from_constraints(HalfPlane.bottleneck(c.dest_index, c.rho) for c in certs)


def sum_dof(region):
    return max(x + y for x, y in region.vertices)


def in_S(x):
    """True iff ``x == 2`` or ``x == 2 (1 - 1/k)`` for a positive integer k."""
    x = Fraction(x)
    if x == 2:
        return True
    if x < 0 or x > 2:
        return False
    k = 2 / (2 - x)
    return k.denominator == 1 and k >= 1


def _inf_first(values):
    return sorted(values, key=lambda m: (m != INF, m))


def expressible_by_bottleneck_bounds(region):
    """Whether ``region`` is the unit box cut by ``m1 D1 + D2 <= m1`` and
    ``D1 + m2 D2 <= m2`` for some ``m1, m2`` in N or infinity (no bound).

    Each finite m must pass through a vertex with the corresponding coordinate
    below 1, which pins down the candidate values.  Returns
    ``(True, (m1, m2))`` or ``(False, None)``; ``math.inf`` means "no bound".
    """
    cand1, cand2 = {INF}, {INF}
    for x, y in region.vertices:
        if x < 1 and y > 0:
            m = y / (1 - x)
            if m.denominator == 1 and m >= 1:
                cand1.add(int(m))
        if y < 1 and x > 0:
            m = x / (1 - y)
            if m.denominator == 1 and m >= 1:
                cand2.add(int(m))
    target = set(region.vertices)
    for m1 in _inf_first(cand1):
        for m2 in _inf_first(cand2):
            extra = []
            if m1 != INF:
                extra.append(HalfPlane.bottleneck(1, m1))
            if m2 != INF:
                extra.append(HalfPlane.bottleneck(2, m2))
            if set(region_from_constraints(extra).vertices) == target:
                return True, (m1, m2)
    return False, None


@dataclass(frozen=True)
class GapReport:
    dest_index: int
    new: HalfPlane
    prior: HalfPlane
    new_intercept: Fraction
    prior_intercept: Fraction

    @property
    def difference(self):
        """``new_intercept - prior_intercept``; negative when the new bound is tighter."""
        return self.new_intercept - self.prior_intercept


def compare_bounds(new, prior):
    """Compare two bounds of the form ``a D_i + D_other <= a`` by their D_i intercept at D_other = 1."""
    shared = {i for i, _ in new.bottleneck_forms()} & {i for i, _ in prior.bottleneck_forms()}
    if not shared:
        raise MismatchedDestination(f"{new} and {prior} do not bound the same destination")
    i = min(shared)
    a_new = dict(new.bottleneck_forms())[i]
    a_prior = dict(prior.bottleneck_forms())[i]
    return GapReport(i, new, prior, 1 - 1 / a_new, 1 - 1 / a_prior)


def region_csv(region):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["D1", "D2"])
    for x, y in region.vertices:
        writer.writerow([format_rational(x), format_rational(y)])
    return buf.getvalue()


def region_json(region):
    return {
        "constraints": [str(h) for h in region.constraints],
        "vertices": [[format_rational(x), format_rational(y)] for x, y in region.vertices],
        "sum_dof": format_rational(sum_dof(region)),
    }

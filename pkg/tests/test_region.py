from fractions import Fraction as F

import pytest
from scipy.optimize import linprog

from dofb.bottleneck import BottleneckCertificate
from dofb.errors import MismatchedDestination
from dofb.region import (
    HalfPlane,
    build_region,
    compare_bounds,
    expressible_by_bottleneck_bounds,
    in_S,
    region_csv,
    region_from_constraints,
    region_json,
    sum_dof,
)

from oracles import in_S_by_search, region_vertices

INF = float("inf")


def _cert(i, rho):
    return BottleneckCertificate(i, "v", 3, ("x",), rho)


def _lines(region):
    return [(h.a, h.b, h.c) for h in region.constraints]


def test_fig3_region():
    r = build_region([_cert(1, 3)])
    assert r.vertices == ((0, 0), (1, 0), (F(2, 3), 1), (0, 1))
    assert set(r.vertices) == region_vertices(_lines(r))


def test_empty_is_unit_square():
    r = build_region([])
    assert r.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))
    assert sum_dof(r) == 2


@pytest.mark.parametrize("m", range(2, 9))
def test_two_sided_region(m):
    r = build_region([_cert(1, m), _cert(2, m)])
    corner = (F(m, m + 1), F(m, m + 1))
    assert r.is_vertex(corner)
    assert sum_dof(r) == 2 - F(2, m + 1)
    assert set(r.vertices) == region_vertices(_lines(r))


def test_two_sided_region_degenerates_at_one():
    # both bounds collapse to D1 + D2 <= 1
    r = build_region([_cert(1, 1), _cert(2, 1)])
    assert r.vertices == ((0, 0), (1, 0), (0, 1))


def test_fig3_sum():
    assert sum_dof(build_region([_cert(1, 3)])) == F(5, 3)


def test_sum_matches_linear_program():
    for certs in ([_cert(1, 3)], [_cert(1, 2), _cert(2, 5)], [_cert(2, 4), _cert(2, 7), _cert(1, 9)]):
        r = build_region(certs)
        res = linprog([-1, -1], A_ub=[[float(h.a), float(h.b)] for h in r.constraints],
                      b_ub=[float(h.c) for h in r.constraints], bounds=[(0, None), (0, None)])
        assert abs(-res.fun - float(sum_dof(r))) < 1e-9


def test_redundant_constraint_kept_without_vertex():
    r = region_from_constraints([HalfPlane(1, 1, 5)])
    assert HalfPlane(1, 1, 5) in r.constraints
    assert r.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))
    assert HalfPlane(1, 1, 5) not in r.active_constraints()


def test_vertices_counter_clockwise():
    r = build_region([_cert(1, 2), _cert(2, 3)])
    vs = r.vertices
    for p, q in zip(vs[1:], vs[2:]):
        assert p[0] * q[1] - p[1] * q[0] > 0


def test_membership_and_boundary():
    r = build_region([_cert(1, 3)])
    assert r.contains((F(2, 3), 1)) and r.on_boundary((F(2, 3), 1))
    assert r.contains((F(1, 3), F(1, 3))) and not r.on_boundary((F(1, 3), F(1, 3)))
    assert not r.contains((1, 1))


def test_halfplane_validation_and_text():
    with pytest.raises(ValueError):
        HalfPlane(0, 0, 1)
    with pytest.raises(ValueError):
        HalfPlane(-1, 1, 1)
    assert str(HalfPlane.bottleneck(1, 3)) == "3 D1 + D2 <= 3"
    assert str(HalfPlane.bottleneck(2, 2)) == "D1 + 2 D2 <= 2"
    assert str(HalfPlane(1, 0, 1)) == "D1 <= 1"


@pytest.mark.parametrize("x, want", [(F(4, 3), True), (2, True), (0, True), (1, True), (F(9, 5), True),
                                      (F(11, 6), True), (F(151, 100), False), (F(5, 2), False), (-1, False)])
def test_in_S(x, want):
    assert in_S(x) is want
    assert in_S_by_search(x) is want


def test_in_S_sweep():
    for num in range(0, 41):
        for den in range(1, 21):
            assert in_S(F(num, den)) == in_S_by_search(F(num, den), 200)


def test_expressible_fig3():
    assert expressible_by_bottleneck_bounds(build_region([_cert(1, 3)])) == (True, (3, INF))


def test_not_expressible_sum_bound():
    r = region_from_constraints([HalfPlane(1, 1, F(3, 2))])
    assert expressible_by_bottleneck_bounds(r) == (False, None)


def test_expressible_unit_square():
    assert expressible_by_bottleneck_bounds(build_region([])) == (True, (INF, INF))


@pytest.mark.parametrize("m1, m2", [(2, 2), (3, 5), (INF, 4), (7, INF)])
def test_expressible_recovers_witness(m1, m2):
    certs = ([_cert(1, m1)] if m1 != INF else []) + ([_cert(2, m2)] if m2 != INF else [])
    assert expressible_by_bottleneck_bounds(build_region(certs)) == (True, (m1, m2))


def test_compare_bounds():
    gap = compare_bounds(HalfPlane.bottleneck(1, 3), HalfPlane.bottleneck(1, 4))
    assert (gap.new_intercept, gap.prior_intercept) == (F(2, 3), F(3, 4))
    assert gap.difference == F(-1, 12)
    same = compare_bounds(HalfPlane.bottleneck(2, 5), HalfPlane.bottleneck(2, 5))
    assert same.difference == 0
    with pytest.raises(MismatchedDestination):
        compare_bounds(HalfPlane.bottleneck(1, 3), HalfPlane.bottleneck(2, 3))


def test_prior_intercepts_approach_one():
    vals = [compare_bounds(HalfPlane.bottleneck(1, 3), HalfPlane.bottleneck(1, 3 + k)).prior_intercept
            for k in range(50)]
    assert vals == [F(2 + k, 3 + k) for k in range(50)]
    assert all(a < b < 1 for a, b in zip(vals, vals[1:]))


def test_exports():
    r = build_region([_cert(1, 3)])
    assert region_csv(r) == "D1,D2\n0,0\n1,0\n2/3,1\n0,1\n"
    doc = region_json(r)
    assert doc["sum_dof"] == "5/3"
    assert doc["vertices"][2] == ["2/3", "1"]
    assert "3 D1 + D2 <= 3" in doc["constraints"]

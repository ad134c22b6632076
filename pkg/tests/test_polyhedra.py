"""Tests for dual descriptions, membership, and the exact LP layer."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toricone import exactlin as ex
from toricone import polyhedra as ph

from oracles import facets_3d, in_cone

V1, V2, V3 = (1, 0, 1), (0, 1, 1), (-1, -2, 1)
V4, V5, V6, V7 = (1, 0, -1), (0, 1, -1), (-1, -1, -1), (0, 0, -1)


def test_dual_first_octant_is_self_dual():
    h = ph.dual_description([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert h.equalities == ()
    assert set(h.inequalities) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_dual_of_quadrilateral_cone():
    gens = [V1, V2, V4, V5]
    h = ph.dual_description(gens)
    assert h.equalities == ()
    assert len(h.inequalities) == 4
    assert set(h.inequalities) == facets_3d(gens)
    # every facet holds exactly two of the four generators
    for a in h.inequalities:
        assert sum(1 for g in gens if ex.dot(a, g) == 0) == 2


def test_dual_halfplane_has_single_inequality():
    h = ph.dual_description([(1, 0), (-1, 0), (0, 1)])
    assert h.equalities == ()
    assert h.inequalities == ((0, 1),)


def test_dual_zero_cone():
    h = ph.dual_description([], dim=3)
    assert h.inequalities == ()
    assert len(h.equalities) == 3
    assert h.contains((0, 0, 0))
    assert not h.contains((1, 0, 0))


def test_dual_single_ray():
    h = ph.dual_description([(0, 0, -2)])
    assert len(h.equalities) == 2
    assert len(h.inequalities) == 1
    assert h.contains((0, 0, -5))
    assert h.contains((0, 0, 0))
    assert not h.contains((0, 0, 3))
    assert not h.contains((1, 0, -5))


def test_dual_full_subspace_has_no_inequalities():
    h = ph.dual_description([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert h.inequalities == () and h.equalities == ()


def test_membership_blowup_cone():
    h = ph.dual_description([V4, V5, V7])
    assert h.contains((1, 1, -3))  # v4 + v5 + v7
    assert h.contains(V7)
    assert not h.contains((0, 0, 1))
    assert not h.contains(V6)


def test_membership_accepts_rational_points():
    h = ph.dual_description([(1, 0), (0, 1)])
    assert h.contains((Fraction(1, 2), Fraction(3, 7)))
    assert not h.contains((Fraction(-1, 2), Fraction(0)))


def test_membership_agrees_with_caratheodory_oracle():
    rng = random.Random(421)
    cones = [
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        [V1, V2, V4, V5],
        [V4, V5, V7],
        [V2, V3, V5, V6],
    ]
    for gens in cones:
        h = ph.dual_description(gens)
        for _ in range(250):
            p = tuple(rng.randint(-6, 6) for _ in range(3))
            assert h.contains(p) == in_cone(p, gens), (gens, p)


def test_membership_agrees_with_nonneg_combination_lp():
    # x in cone(G) iff  sum_i c_i g_i = t*x, c >= 0, t >= 1  is feasible
    rng = random.Random(97)
    gens = [V1, V2, V4, V5]
    h = ph.dual_description(gens)
    n = 3
    for _ in range(60):
        p = tuple(rng.randint(-5, 5) for _ in range(n))
        k = len(gens)
        rows_eq = []
        for j in range(n):
            rows_eq.append(tuple([g[j] for g in gens] + [-p[j]]))
        weak = tuple(
            tuple(1 if i == c else 0 for i in range(k + 1)) for c in range(k)
        )
        strict = (tuple([0] * k + [1]),)
        sys = ph.LinSystem(nvars=k + 1, strict=strict, weak=weak, eq=tuple(rows_eq))
        assert (ph.feasible(sys) is not None) == h.contains(p)


def test_feasible_simple_witness():
    sys = ph.LinSystem(nvars=2, strict=((1, 0),), weak=((0, 1),))
    w = ph.feasible(sys)
    assert w is not None and w[0] >= 1 and w[1] >= 0


def test_infeasible_opposite_strict_rows():
    sys = ph.LinSystem(nvars=1, strict=((1,), (-3,)))
    res = ph.solve_system(sys)
    assert not res.feasible and res.witness is None
    assert res.certificate is not None
    assert ph.verify_certificate(sys, res.certificate)


def test_infeasible_with_weak_rows():
    # x >= 1 and -3x >= 0 cannot both hold
    sys = ph.LinSystem(nvars=1, strict=((1,),), weak=((-3,),))
    res = ph.solve_system(sys)
    assert not res.feasible
    cert = res.certificate
    assert ph.verify_certificate(sys, cert)
    assert sum(cert.strict) == 1


def test_equality_rows_are_eliminated_exactly():
    # x + y = 0 and x - y >= 1 and y >= 0 forces y <= -1/2: infeasible
    sys = ph.LinSystem(
        nvars=2, strict=((1, -1),), weak=((0, 1),), eq=((1, 1),)
    )
    res = ph.solve_system(sys)
    assert not res.feasible
    assert ph.verify_certificate(sys, res.certificate)

    sys2 = ph.LinSystem(nvars=2, strict=((1, -1),), eq=((1, 1),))
    res2 = ph.solve_system(sys2)
    assert res2.feasible
    x = res2.witness
    assert x[0] + x[1] == 0 and x[0] - x[1] >= 1


def test_strict_row_inside_equality_space():
    # x = 0 but x >= 1: contradiction caught at presolve
    sys = ph.LinSystem(nvars=1, strict=((1,),), eq=((1,),))
    res = ph.solve_system(sys)
    assert not res.feasible
    assert ph.verify_certificate(sys, res.certificate)


def test_empty_system_is_feasible():
    sys = ph.LinSystem(nvars=2)
    assert ph.feasible(sys) == (0, 0)


def test_cone_is_zero_cases():
    assert ph.cone_is_zero([(1,), (-3,)])
    assert not ph.cone_is_zero([(1, 0), (0, 1)])  # full quadrant survives
    assert not ph.cone_is_zero([(1, -1)])  # nullspace is a line
    assert ph.cone_is_zero([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert ph.cone_is_zero([(), ()], nvars=0)
    assert not ph.cone_is_zero([], nvars=2)
    assert not ph.cone_is_zero([(0, 0)])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.data())
def test_lp_witness_or_certificate_property(n, data):
    nstrict = data.draw(st.integers(0, 3))
    nweak = data.draw(st.integers(0, 3))
    neq = data.draw(st.integers(0, 2))
    strict = tuple(tuple(data.draw(st.integers(-4, 4)) for _ in range(n)) for _ in range(nstrict))
    weak = tuple(tuple(data.draw(st.integers(-4, 4)) for _ in range(n)) for _ in range(nweak))
    eq = tuple(tuple(data.draw(st.integers(-4, 4)) for _ in range(n)) for _ in range(neq))
    sys = ph.LinSystem(nvars=n, strict=strict, weak=weak, eq=eq)
    res = ph.solve_system(sys)
    if res.feasible:
        x = res.witness
        assert all(ex.dot(r, x) >= 1 for r in strict)
        assert all(ex.dot(r, x) >= 0 for r in weak)
        assert all(ex.dot(r, x) == 0 for r in eq)
    else:
        assert res.certificate is not None
        assert ph.verify_certificate(sys, res.certificate)
        assert strict, "a system without strict rows is always feasible at 0"


def test_dual_description_requires_dim_for_empty():
    with pytest.raises(ValueError):
        ph.dual_description([])

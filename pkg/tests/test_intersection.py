import random
from fractions import Fraction

import pytest

from toricone import divisor as dv
from toricone import exactlin as ex
from toricone import fan as fn
from toricone import intersection as it
from toricone.divisor import TWeilDivisor

from conftest import hirzebruch


def _pairings(fan, divisor):
    """{wall rays: D.V(wall)} for a Cartier divisor."""
    cd = dv.cartier_data(fan, divisor)
    assert cd is not None
    return {
        w.ray_ids: it.intersection_number(fan, cd, w) for w in fn.walls(fan)
    }


def test_p2_hyperplane_degrees(p2):
    deg = _pairings(p2, TWeilDivisor.prime(p2, 1))
    assert deg == {(1,): 1, (2,): 1, (3,): 1}


def test_blowup_exceptional_divisor_pairings(blowup_fan):
    deg = _pairings(blowup_fan, TWeilDivisor.prime(blowup_fan, 7))
    assert deg[(4, 5)] == 1
    assert deg[(4, 7)] == -3
    assert deg == {
        (1, 2): 0, (1, 3): 0, (1, 4): 0, (2, 3): 0, (2, 5): 0, (3, 6): 0,
        (4, 5): 1, (4, 6): 1, (5, 6): 1,
        (4, 7): -3, (5, 7): -3, (6, 7): -3,
    }


def test_hirzebruch_intersection_tables():
    for a in range(4):
        f = hirzebruch(a)
        table = {
            i: _pairings(f, TWeilDivisor.prime(f, i)) for i in (1, 2, 3, 4)
        }
        assert table[1] == {(1,): 0, (2,): 1, (3,): 0, (4,): 1}
        assert table[2] == {(1,): 1, (2,): -a, (3,): 1, (4,): 0}
        assert table[3] == {(1,): 0, (2,): 1, (3,): 0, (4,): 1}
        assert table[4] == {(1,): 1, (2,): 0, (3,): 1, (4,): a}


def test_smooth_wall_relation_identity(p1, p2):
    for f in (p2, fn.product(p1, p1), hirzebruch(2)):
        for w in fn.walls(f):
            rel = fn.wall_relation(f, w)
            for i in f.ray_ids:
                deg = _pairings(f, TWeilDivisor.prime(f, i))[w.ray_ids]
                assert deg == rel.get(i, 0)


def test_curve_classes_blowup(blowup_fan):
    pic = dv.picard(blowup_fan)
    classes = it.curve_classes(blowup_fan, pic)
    sign = pic.class_of(TWeilDivisor.prime(blowup_fan, 7))[0]
    expected = {
        (1, 2): 0, (1, 3): 0, (1, 4): 0, (2, 3): 0, (2, 5): 0, (3, 6): 0,
        (4, 5): 1, (4, 6): 1, (5, 6): 1,
        (4, 7): -3, (5, 7): -3, (6, 7): -3,
    }
    assert {c.rays: c.pairing for c in classes} == {
        rays: (sign * v,) for rays, v in expected.items()
    }


def test_principal_orthogonality(blowup_fan, fine_fan):
    rng = random.Random(11)
    for f in (blowup_fan, fine_fan):
        ws = fn.walls(f)
        for _ in range(100):
            m = tuple(rng.randint(-9, 9) for _ in range(f.dim))
            cd = dv.cartier_data(f, dv.principal_divisor(f, m))
            assert all(it.intersection_number(f, cd, w) == 0 for w in ws)


def test_lift_independence(blowup_fan):
    d7 = TWeilDivisor.prime(blowup_fan, 7)
    cd = dv.cartier_data(blowup_fan, d7)
    rng = random.Random(23)
    for w in fn.walls(blowup_fan):
        base = it.intersection_number(blowup_fan, cd, w)
        span = ex.kernel_basis([w.quotient_map])
        dm = ex.vec_sub(cd.m(w.left), cd.m(w.right))
        for _ in range(100):
            shift = w.side_generator
            for v in span:
                shift = ex.vec_add(shift, ex.vec_scale(rng.randint(-9, 9), v))
            assert ex.dot(dm, shift) == base


def test_intersection_additivity(blowup_fan):
    rng = random.Random(5)
    d7 = TWeilDivisor.prime(blowup_fan, 7)
    ws = fn.walls(blowup_fan)
    for _ in range(25):
        a = rng.randint(-4, 4) * d7 + dv.principal_divisor(
            blowup_fan, tuple(rng.randint(-4, 4) for _ in range(3))
        )
        b = rng.randint(-4, 4) * d7 + dv.principal_divisor(
            blowup_fan, tuple(rng.randint(-4, 4) for _ in range(3))
        )
        ca, cb = dv.cartier_data(blowup_fan, a), dv.cartier_data(blowup_fan, b)
        cs = dv.cartier_data(blowup_fan, a + b)
        for w in ws:
            assert it.intersection_number(blowup_fan, cs, w) == (
                it.intersection_number(blowup_fan, ca, w)
                + it.intersection_number(blowup_fan, cb, w)
            )


def test_nef_ample_basics(p2, blowup_fan, p112):
    h = TWeilDivisor.prime(p2, 1)
    assert it.is_nef(p2, h) and it.is_ample(p2, h)
    d7 = TWeilDivisor.prime(blowup_fan, 7)
    assert not it.is_nef(blowup_fan, d7)
    assert not it.is_ample(blowup_fan, d7)
    z = TWeilDivisor.zero(blowup_fan)
    assert it.is_nef(blowup_fan, z) and not it.is_ample(blowup_fan, z)
    with pytest.raises(ValueError, match="not Cartier"):
        it.is_nef(p112, TWeilDivisor.prime(p112, 1))


def test_cone_report_base(base_fan):
    rep = it.cone_report(base_fan)
    assert rep.numerical_rank == 0
    assert rep.ne_equals_n1 and rep.nef_is_zero
    assert len(rep.trivial_walls) == 9


def test_cone_report_blowup(blowup_fan):
    rep = it.cone_report(blowup_fan)
    assert rep.numerical_rank == 1
    assert rep.ne_equals_n1 and rep.nef_is_zero
    assert len(rep.trivial_walls) == 6


def test_cone_report_fine(fine_fan):
    rep = it.cone_report(fine_fan)
    assert rep.numerical_rank == 1
    assert not rep.ne_equals_n1
    assert not rep.nef_is_zero
    trivial_rays = [rep.ne_generators[i].rays for i in rep.trivial_walls]
    assert trivial_rays == [(2, 4)]
    nonzero = [c.pairing[0] for c in rep.ne_generators if c.pairing != (0,)]
    assert len({1 if v > 0 else -1 for v in nonzero}) == 1


def test_cone_report_p2(p2):
    rep = it.cone_report(p2)
    assert rep.numerical_rank == 1
    assert not rep.ne_equals_n1 and not rep.nef_is_zero
    assert rep.trivial_walls == ()


def test_projectivity_coarse(coarse_fan):
    res = it.is_projective(coarse_fan)
    assert res.projective
    assert it.is_ample(coarse_fan, res.witness)
    assert dv.picard(coarse_fan).rank == 1


def test_projectivity_fine(fine_fan):
    res = it.is_projective(fine_fan)
    assert not res.projective and res.witness is None
    walls = fn.walls(fine_fan)
    assert res.certificate == ((4, Fraction(1)),)
    assert walls[4].ray_ids == (2, 4)


def test_projectivity_blowup_and_products(blowup_fan, p1, p2):
    assert not it.is_projective(blowup_fan).projective
    assert it.is_projective(fn.product(p1, p1)).projective
    assert it.is_projective(p2).projective


def test_certificate_is_convex_combination(blowup_fan):
    res = it.is_projective(blowup_fan)
    assert not res.projective
    classes = it.curve_classes(blowup_fan, dv.picard(blowup_fan))
    total = Fraction(0)
    combo = Fraction(0)
    for idx, lam in res.certificate:
        assert lam > 0
        total += lam
        combo += lam * classes[idx].pairing[0]
    assert total == 1 and combo == 0


def test_ne_equals_n1_implies_nonprojective(base_fan, blowup_fan):
    for f in (base_fan, blowup_fan):
        assert it.cone_report(f).ne_equals_n1
        assert not it.is_projective(f).projective


def test_kleiman_fine(fine_fan):
    v = it.kleiman_diagnosis(fine_fan)
    assert v.verdict == "fails_with_certificate"
    assert not v.projective
    deg = _pairings(fine_fan, v.positive_divisor)
    rep = it.cone_report(fine_fan)
    zero_walls = {rep.ne_generators[i].rays for i in rep.trivial_walls}
    assert zero_walls == {(2, 4)}
    for rays, value in deg.items():
        if rays in zero_walls:
            assert value == 0
        else:
            assert value >= 1
    assert not it.is_projective(fine_fan).projective


def test_kleiman_other_verdicts(coarse_fan, base_fan, blowup_fan, p2):
    assert it.kleiman_diagnosis(coarse_fan).verdict == "holds_projective"
    assert it.kleiman_diagnosis(p2).verdict == "holds_projective"
    assert it.kleiman_diagnosis(base_fan).verdict == "not_applicable"
    assert it.kleiman_diagnosis(blowup_fan).verdict == "no_positive_divisor"


def test_product_with_line_keeps_curves(blowup_fan, p1):
    f = fn.product(blowup_fan, p1)
    pic = dv.picard(f)
    assert pic.rank == 2
    rep = it.cone_report(f, pic)
    assert rep.numerical_rank == 2
    assert not rep.ne_equals_n1
    assert it.kleiman_diagnosis(f, pic, rep).verdict == "no_positive_divisor"

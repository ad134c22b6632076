"""Intersection numbers, curve classes, nef/ample tests, projectivity.

A wall carries a torus-invariant curve; pairing it with a Cartier divisor
reads off the jump of the Cartier data across the wall against the wall's
side generator.  All cone-level questions (projectivity, NE(X) = N_1(X),
the ampleness-criterion diagnosis) reduce to exact linear programs over
the pairing matrix between walls and a Picard basis.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import exactlin as ex
from . import fan as fn
from . import polyhedra as ph
from .divisor import CartierData, PicardBasis, TWeilDivisor, cartier_data, picard
from .exactlin import Vec
from .fan import Fan, Wall
from .polyhedra import LinSystem


@dataclass(frozen=True)
class CurveClass:
    """Numerical class of a wall curve: pairings with the Picard basis."""

    wall_id: int
    rays: tuple[int, ...]
    pairing: Vec


@dataclass(frozen=True)
class ConeReport:
    """Shape of the Mori cone NE(X) inside N_1(X).

    ne_equals_n1 says the nef cone maps to zero in the numerical quotient,
    i.e. a line bundle is nef only when numerically trivial; nef_is_zero is
    the stronger statement inside the full Picard lattice.
    """

    ne_generators: tuple[CurveClass, ...]
    numerical_rank: int
    nef_is_zero: bool
    ne_equals_n1: bool
    trivial_walls: tuple[int, ...]


@dataclass(frozen=True)
class ProjectivityResult:
    """Outcome of the strictly-convex support function search.

    certificate lists (wall_id, multiplier) rows of a nonnegative
    combination of wall classes summing to zero with total mass 1: any
    divisor strictly positive on all wall curves would then be both >= 1
    and = 0 against it, the exact shape of the h-function contradiction.
    """

    projective: bool
    witness: TWeilDivisor | None
    certificate: tuple[tuple[int, Fraction], ...] | None


@dataclass(frozen=True)
class KleimanVerdict:
    projective: bool
    positive_divisor: TWeilDivisor | None
    verdict: str


def intersection_number(fan: Fan, cd: CartierData, wall: Wall) -> int:
    """D.V(wall) for the divisor behind cd: <m_left - m_right, u>."""
    dm = ex.vec_sub(cd.m(wall.left), cd.m(wall.right))
    return ex.dot(dm, wall.side_generator)


def curve_classes(fan: Fan, pic: PicardBasis) -> tuple[CurveClass, ...]:
    """One numerical class per wall, in wall order.

    Principal divisors must pair to zero with every wall; this is asserted
    against the n coordinate characters during construction.
    """
    walls = fn.walls(fan)
    ncones = len(fan.max_cones)
    datas = []
    for b in pic.basis:
        cd = cartier_data(fan, b)
        assert cd is not None, "Picard basis element is not Cartier"
        datas.append(cd)
    unit = [
        CartierData(tuple(ex.vec_neg(e) for _ in range(ncones)))
        for e in ex.identity(fan.dim)
    ]
    out = []
    for idx, w in enumerate(walls):
        for pcd in unit:
            assert intersection_number(fan, pcd, w) == 0
        pairing = tuple(intersection_number(fan, cd, w) for cd in datas)
        out.append(CurveClass(idx, w.ray_ids, pairing))
    return tuple(out)


def is_nef(fan: Fan, divisor: TWeilDivisor) -> bool:
    cd = cartier_data(fan, divisor)
    if cd is None:
        raise ValueError("not Cartier")
    return all(intersection_number(fan, cd, w) >= 0 for w in fn.walls(fan))


def is_ample(fan: Fan, divisor: TWeilDivisor) -> bool:
    cd = cartier_data(fan, divisor)
    if cd is None:
        raise ValueError("not Cartier")
    return all(intersection_number(fan, cd, w) >= 1 for w in fn.walls(fan))


def _integral_combination(pic: PicardBasis, y) -> TWeilDivisor:
    """Clear denominators of rational basis coordinates; scaling by a
    positive integer preserves strict positivity on wall curves."""
    scale = lcm(*(Fraction(c).denominator for c in y)) if y else 1
    coeffs = [int(Fraction(c) * scale) for c in y]
    terms = [c * b for c, b in zip(coeffs, pic.basis)]
    return functools.reduce(TWeilDivisor.__add__, terms)


def is_projective(
    fan: Fan,
    pic: PicardBasis | None = None,
    classes: tuple[CurveClass, ...] | None = None,
) -> ProjectivityResult:
    """Search for a divisor pairing >= 1 with every wall curve.

    The consistency equalities across walls are eliminated up front by
    working in Picard coordinates (principal directions pair to zero), so
    the program has one strict row per wall over pic.rank variables.
    """
    if pic is None:
        pic = picard(fan)
    if classes is None:
        classes = curve_classes(fan, pic)
    rows = tuple(c.pairing for c in classes)
    res = ph.solve_system(LinSystem(nvars=pic.rank, strict=rows))
    if res.feasible:
        witness = _integral_combination(pic, res.witness)
        assert is_ample(fan, witness)
        return ProjectivityResult(True, witness, None)
    cert = res.certificate
    combo = [Fraction(0)] * pic.rank
    for lam, row in zip(cert.strict, rows):
        for j, v in enumerate(row):
            combo[j] += lam * v
    assert all(v == 0 for v in combo) and sum(cert.strict) == 1
    nonzero = tuple(
        (i, lam) for i, lam in enumerate(cert.strict) if lam != 0
    )
    return ProjectivityResult(False, None, nonzero)


def cone_report(fan: Fan, pic: PicardBasis | None = None) -> ConeReport:
    """Numerical shape of NE(X): rank, triviality, degeneracy flags."""
    if pic is None:
        pic = picard(fan)
    classes = curve_classes(fan, pic)
    mat = [c.pairing for c in classes]
    trivial = tuple(
        c.wall_id for c in classes if all(v == 0 for v in c.pairing)
    )
    num_rank = ex.rank(mat) if pic.rank else 0
    # Restricting to the span of the classes does not change the image
    # cone, so NE(X) = N_1(X) is exactly "nef implies numerically trivial"
    # asked of the raw pairing matrix.
    ne_equals_n1 = ph.image_cone_is_zero(mat, nvars=pic.rank)
    nef_is_zero = ne_equals_n1 and num_rank == pic.rank
    return ConeReport(
        ne_generators=classes,
        numerical_rank=num_rank,
        nef_is_zero=nef_is_zero,
        ne_equals_n1=ne_equals_n1,
        trivial_walls=trivial,
    )


def kleiman_diagnosis(
    fan: Fan,
    pic: PicardBasis | None = None,
    report: ConeReport | None = None,
    proj: ProjectivityResult | None = None,
) -> KleimanVerdict:
    """Does the interior of the nef cone consist of ample classes?

    fails_with_certificate exhibits a Cartier divisor strictly positive on
    every nonzero wall class on a non-projective variety: the nef interior
    is nonempty while the ample cone is empty.
    """
    if pic is None:
        pic = picard(fan)
    if report is None:
        report = cone_report(fan, pic)
    if proj is None:
        proj = is_projective(fan, pic, report.ne_generators)
    if proj.projective:
        return KleimanVerdict(True, proj.witness, "holds_projective")
    if report.numerical_rank == 0:
        return KleimanVerdict(False, None, "not_applicable")
    rows = tuple(
        c.pairing for c in report.ne_generators if any(c.pairing)
    )
    res = ph.solve_system(LinSystem(nvars=pic.rank, strict=rows))
    if not res.feasible:
        return KleimanVerdict(False, None, "no_positive_divisor")
    divisor = _integral_combination(pic, res.witness)
    cd = cartier_data(fan, divisor)
    assert cd is not None
    for c in report.ne_generators:
        if any(c.pairing):
            assert intersection_number(fan, cd, fn.walls(fan)[c.wall_id]) >= 1
    return KleimanVerdict(False, divisor, "fails_with_certificate")

"""Rational fans: validation, completeness, walls, subdivision, products.

A fan is stored through its maximal cones over a shared ray list.  Building
one runs the full battery of checks (strong convexity, extremality of every
listed ray, purity, the pairwise common-face axiom) and precomputes the
derived structures: facet H-representations, wall data with quotient maps,
and the completeness/simpliciality/smoothness/Gorenstein flags.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import exactlin as ex
from . import polyhedra as ph
from .exactlin import Vec
from .polyhedra import HRepCone, LinSystem


class FanValidationError(ValueError):
    """Input data does not describe a valid fan."""


@dataclass(frozen=True)
class Ray:
    index: int
    vector: Vec


@dataclass(frozen=True)
class Cone:
    """A maximal cone: sorted ray ids, H-representation, and multiplicity.

    multiplicity is the lattice index of the subgroup spanned by the rays
    (1 means smooth); None marks a non-simplicial cone where the notion
    does not apply.
    """

    ray_ids: tuple[int, ...]
    dim: int
    hrep: HRepCone
    multiplicity: int | None


@dataclass(frozen=True)
class Wall:
    """A codimension-one face shared by exactly two maximal cones.

    left/right index into fan.max_cones with the lexicographically smaller
    cone on the left.  quotient_map is a primitive functional cutting out
    the wall's span, oriented positively on the right cone, and
    side_generator is an integral preimage of its generator 1, so the two
    cones map to opposite rays of Z.
    """

    ray_ids: tuple[int, ...]
    left: int
    right: int
    quotient_map: Vec
    side_generator: Vec


@dataclass(frozen=True)
class SingularityFlags:
    q_factorial: bool
    smooth: bool
    gorenstein: bool


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[Ray, ...]
    max_cones: tuple[Cone, ...]
    walls: tuple[Wall, ...]
    complete: bool
    q_factorial: bool
    smooth: bool
    gorenstein: bool
    boundary_facet: tuple[int, ...] | None = field(default=None, compare=False)

    def ray_vector(self, ray_id: int) -> Vec:
        for r in self.rays:
            if r.index == ray_id:
                return r.vector
        raise KeyError(f"no ray with id {ray_id}")

    @property
    def ray_ids(self) -> tuple[int, ...]:
        return tuple(r.index for r in self.rays)


def ray_map(fan: Fan) -> dict[int, Vec]:
    return {r.index: r.vector for r in fan.rays}


def _facets_of(cone: Cone, vectors: dict[int, Vec]) -> list[tuple[tuple[int, ...], Vec]]:
    """(sorted facet ray ids, inward normal) for every facet of a max cone."""
    out = []
    for a in cone.hrep.inequalities:
        ids = tuple(
            i for i in cone.ray_ids if ex.dot(a, vectors[i]) == 0
        )
        out.append((ids, a))
    return out


def _common_face_ok(
    ci: Cone, cj: Cone, vectors: dict[int, Vec], dim: int
) -> bool:
    """Whether ci and cj intersect in a common face.

    The shared rays must form a face of each cone, and a separating
    functional (zero on the shared rays, strictly positive on the rest of
    ci, strictly negative on the rest of cj) must exist.  Cheap candidate
    functionals built from facet normals settle almost every pair; an exact
    LP decides the rest.
    """
    shared = sorted(set(ci.ray_ids) & set(cj.ray_ids))
    sh_vecs = [vectors[i] for i in shared]

    def smallest_face(cone: Cone) -> tuple[list[int], list[Vec]]:
        normals = [
            a for a in cone.hrep.inequalities
            if all(ex.dot(a, v) == 0 for v in sh_vecs)
        ]
        face = [
            i for i in cone.ray_ids
            if all(ex.dot(a, vectors[i]) == 0 for a in normals)
        ]
        return face, normals

    face_i, normals_i = smallest_face(ci)
    face_j, normals_j = smallest_face(cj)
    if face_i != shared or face_j != shared:
        return False

    rest_i = [vectors[i] for i in ci.ray_ids if i not in shared]
    rest_j = [vectors[i] for i in cj.ray_ids if i not in shared]
    zero = (0,) * dim
    a_star = tuple(sum(col) for col in zip(*normals_i)) if normals_i else zero
    b_star = tuple(sum(col) for col in zip(*normals_j)) if normals_j else zero
    for cand in (a_star, ex.vec_neg(b_star), ex.vec_sub(a_star, b_star)):
        if all(ex.dot(cand, v) > 0 for v in rest_i) and all(
            ex.dot(cand, v) < 0 for v in rest_j
        ):
            return True
    sys = LinSystem(
        nvars=dim,
        strict=tuple(rest_i) + tuple(ex.vec_neg(v) for v in rest_j),
        eq=tuple(sh_vecs),
    )
    return ph.feasible(sys) is not None


def _completeness_sample(fan_dim: int, cones: Sequence[Cone], seed: int) -> bool:
    """1000 seeded random integer points, each of which must hit a cone."""
    rng = random.Random(seed)
    order = list(range(len(cones)))
    for _ in range(1000):
        p = tuple(rng.randint(-999, 999) for _ in range(fan_dim))
        if all(x == 0 for x in p):
            continue
        hit = None
        for pos, idx in enumerate(order):
            if cones[idx].hrep.contains(p):
                hit = pos
                break
        if hit is None:
            return False
        if hit:
            order.insert(0, order.pop(hit))  # keep recently hit cones first
    return True


def _content_seed(dim: int, vectors: Sequence[Vec], cone_ids: Sequence[Sequence[int]]) -> int:
    enc = json.dumps([dim, list(map(list, vectors)), sorted(map(list, cone_ids))],
                     separators=(",", ":"))
    return int.from_bytes(hashlib.sha256(enc.encode()).digest()[:8], "big")


def build_fan(
    dim: int,
    rays: Sequence[Sequence[int]],
    cones: Iterable[Iterable[int]],
    ray_ids: Sequence[int] | None = None,
    _trust_pairwise: bool = False,
) -> Fan:
    """Validate fan data given as ray vectors plus cones as ray positions.

    cones index into the rays list (0-based); stored cones use ray ids,
    which default to the 1-based position.  All structural checks run here;
    _trust_pairwise skips only the quadratic common-face pass and is used
    for constructions (products) where that axiom holds by design.
    """
    vectors = [tuple(int(x) for x in v) for v in rays]
    if ray_ids is None:
        ray_ids = [i + 1 for i in range(len(vectors))]
    if len(set(ray_ids)) != len(vectors):
        raise FanValidationError("duplicate ray ids")
    for v in vectors:
        if len(v) != dim:
            raise FanValidationError(f"ray {v} does not have dimension {dim}")
        if all(x == 0 for x in v):
            raise FanValidationError("zero vector has no direction")
        if ex.primitive(v) != v:
            raise FanValidationError(f"ray {v} is not primitive; use {ex.primitive(v)}")
    if len(set(vectors)) != len(vectors):
        raise FanValidationError("duplicate rays")

    by_id = dict(zip(ray_ids, vectors))
    cone_id_sets: list[tuple[int, ...]] = []
    for c in cones:
        ids = tuple(sorted(ray_ids[i] for i in c))
        if len(set(ids)) != len(ids):
            raise FanValidationError(f"cone {ids} repeats a ray")
        if not ids:
            raise FanValidationError("empty maximal cone")
        cone_id_sets.append(ids)
    if len(set(cone_id_sets)) != len(cone_id_sets):
        raise FanValidationError("duplicate maximal cones")
    if not cone_id_sets:
        raise FanValidationError("fan needs at least one maximal cone")

    used = {i for ids in cone_id_sets for i in ids}
    unused = [i for i in ray_ids if i not in used]
    if unused:
        raise FanValidationError(f"ray id {unused[0]} not used by any maximal cone")

    max_cones: list[Cone] = []
    for ids in cone_id_sets:
        gens = [by_id[i] for i in ids]
        hrep = ph.dual_description(gens, dim)
        if ex.rank(list(hrep.inequalities) + list(hrep.equalities)) < dim:
            raise FanValidationError(f"cone {ids} is not strongly convex")
        if hrep.equalities:
            raise FanValidationError(
                f"non-pure fan: cone {ids} has dimension {dim - len(hrep.equalities)}"
            )
        for i in ids:
            active = [a for a in hrep.inequalities if ex.dot(a, by_id[i]) == 0]
            if ex.rank(active) != dim - 1:
                raise FanValidationError(f"ray {i} not extremal in cone {ids}")
        if len(ids) == dim:
            mult = 1
            for d in ex.smith_normal_form(gens).d:
                mult *= d
            mult = abs(mult)
        else:
            mult = None
        max_cones.append(Cone(ids, dim, hrep, mult))

    if not _trust_pairwise:
        for i, j in combinations(range(len(max_cones)), 2):
            if not _common_face_ok(max_cones[i], max_cones[j], by_id, dim):
                raise FanValidationError(
                    "cone intersection not a common face: "
                    f"{max_cones[i].ray_ids} vs {max_cones[j].ray_ids}"
                )

    facet_map: dict[tuple[int, ...], list[tuple[int, Vec]]] = {}
    for idx, cone in enumerate(max_cones):
        for ids, normal in _facets_of(cone, by_id):
            facet_map.setdefault(ids, []).append((idx, normal))
    boundary = None
    for key, owners in sorted(facet_map.items()):
        if len(owners) > 2:
            raise FanValidationError(f"wall {key} shared by more than two cones")
        if len(owners) == 1 and boundary is None:
            boundary = key
    complete = boundary is None
    if complete:
        seed = _content_seed(dim, vectors, cone_id_sets)
        complete = _completeness_sample(dim, max_cones, seed)

    walls: list[Wall] = []
    if complete:
        for key in sorted(facet_map):
            owners = facet_map[key]
            (ia, _), (ib, _) = owners
            if max_cones[ia].ray_ids <= max_cones[ib].ray_ids:
                left, right = ia, ib
            else:
                left, right = ib, ia
            q = next(nrm for idx, nrm in owners if idx == right)
            for i in max_cones[left].ray_ids:
                if ex.dot(q, by_id[i]) > 0:
                    raise FanValidationError(
                        f"wall {key}: cones overlap across the wall hyperplane"
                    )
            u = ex.solve_integral([q], [1])
            assert u is not None  # q is primitive
            walls.append(Wall(key, left, right, q, u))

    q_fact = all(c.multiplicity is not None for c in max_cones)
    smooth = all(c.multiplicity == 1 for c in max_cones)
    gorenstein = all(
        ex.solve_integral([by_id[i] for i in c.ray_ids], (-1,) * len(c.ray_ids))
        is not None
        for c in max_cones
    )
    rays_out = tuple(Ray(i, by_id[i]) for i in ray_ids)
    return Fan(
        dim=dim,
        rays=rays_out,
        max_cones=tuple(max_cones),
        walls=tuple(walls),
        complete=complete,
        q_factorial=q_fact,
        smooth=smooth,
        gorenstein=gorenstein,
        boundary_facet=boundary,
    )


def is_complete(fan: Fan) -> bool:
    return fan.complete


def classify(fan: Fan) -> SingularityFlags:
    return SingularityFlags(fan.q_factorial, fan.smooth, fan.gorenstein)


def walls(fan: Fan) -> tuple[Wall, ...]:
    if not fan.complete:
        raise FanValidationError(
            f"fan is not complete: facet {fan.boundary_facet} has one adjacent cone"
        )
    return fan.walls


def wall_relation(fan: Fan, wall: Wall) -> dict[int, int]:
    """The integral relation carried by a wall between simplicial cones.

    Returns {ray id: coefficient} for the unique (up to scale) relation
    among the wall rays and the two off-wall rays, primitive and signed so
    the off-wall coefficients are positive.  Zero coefficients are omitted.
    """
    n = fan.dim
    left, right = fan.max_cones[wall.left], fan.max_cones[wall.right]
    if len(wall.ray_ids) != n - 1 or len(left.ray_ids) != n or len(right.ray_ids) != n:
        raise ValueError("relation undefined for non-simplicial wall")
    vecs = ray_map(fan)
    off_left = next(i for i in left.ray_ids if i not in wall.ray_ids)
    off_right = next(i for i in right.ray_ids if i not in wall.ray_ids)
    order = [off_left, off_right, *wall.ray_ids]
    cols = ex.transpose([vecs[i] for i in order])
    kernel = ex.kernel_basis(cols)
    assert len(kernel) == 1
    rel = kernel[0]
    if rel[0] < 0:
        rel = ex.vec_neg(rel)
    assert rel[0] > 0 and rel[1] > 0, "off-wall coefficients must be positive"
    return {i: c for i, c in zip(order, rel) if c != 0}


def support_contains(fan: Fan, point: Sequence[int]) -> bool:
    return any(c.hrep.contains(point) for c in fan.max_cones)


def stellar_subdivide(fan: Fan, vector: Sequence[int]) -> Fan:
    """Star subdivision at a new ray: every cone containing the vector is
    replaced by the joins of the new ray with its facets not containing it."""
    w = ex.primitive(vector)
    vecs = ray_map(fan)
    if w in vecs.values():
        raise ValueError(f"{w} is already a ray of the fan")
    if not support_contains(fan, w):
        raise ValueError(f"{w} lies outside the support of the fan")
    new_id = max(fan.ray_ids) + 1
    ids = list(fan.ray_ids) + [new_id]
    vectors = [vecs[i] for i in fan.ray_ids] + [w]
    pos = {i: p for p, i in enumerate(ids)}
    new_cones: list[list[int]] = []
    for cone in fan.max_cones:
        if not cone.hrep.contains(w):
            new_cones.append([pos[i] for i in cone.ray_ids])
            continue
        for fids, normal in _facets_of(cone, vecs):
            if ex.dot(normal, w) > 0:
                new_cones.append([pos[i] for i in fids] + [pos[new_id]])
    return build_fan(fan.dim, vectors, new_cones, ray_ids=ids)


def product(f1: Fan, f2: Fan) -> Fan:
    """Product fan on the direct sum of the lattices.

    Rays and maximal cones are the concatenated/paired ones; pairwise cone
    intersections factor as products of faces, so the common-face check is
    inherited from the factors rather than re-run.
    """
    n1, n2 = f1.dim, f2.dim
    z1, z2 = (0,) * n1, (0,) * n2
    vectors = [r.vector + z2 for r in f1.rays] + [z1 + r.vector for r in f2.rays]
    off = len(f1.rays)
    pos1 = {r.index: p for p, r in enumerate(f1.rays)}
    pos2 = {r.index: p + off for p, r in enumerate(f2.rays)}
    cones = [
        [pos1[i] for i in c1.ray_ids] + [pos2[j] for j in c2.ray_ids]
        for c1 in f1.max_cones
        for c2 in f2.max_cones
    ]
    return build_fan(n1 + n2, vectors, cones, _trust_pairwise=True)


def fan_from_dict(obj: object) -> Fan:
    """Build a fan from the interchange form.

    Expected shape: {"dim": n, "rays": [[int, ...], ...],
    "max_cones": [[0-based ray positions], ...]}.  Structural problems and
    fan axiom violations both raise FanValidationError.
    """
    if not isinstance(obj, dict):
        raise FanValidationError("fan data must be a JSON object")
    missing = [k for k in ("dim", "rays", "max_cones") if k not in obj]
    if missing:
        raise FanValidationError(f"fan data is missing {', '.join(missing)}")
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FanValidationError("'dim' must be a positive integer")
    rays = obj["rays"]
    if not isinstance(rays, list) or not all(
        isinstance(v, list)
        and all(isinstance(x, int) and not isinstance(x, bool) for x in v)
        for v in rays
    ):
        raise FanValidationError("'rays' must be a list of integer vectors")
    cones = obj["max_cones"]
    if not isinstance(cones, list) or not all(
        isinstance(c, list)
        and all(isinstance(i, int) and not isinstance(i, bool) for i in c)
        for c in cones
    ):
        raise FanValidationError("'max_cones' must be a list of index lists")
    for c in cones:
        for i in c:
            if not 0 <= i < len(rays):
                raise FanValidationError(
                    f"cone {c} references ray {i}, valid range is 0..{len(rays) - 1}"
                )
    return build_fan(dim, [tuple(v) for v in rays], cones)


def fan_to_dict(fan: Fan) -> dict:
    """Interchange form of a fan; inverse of fan_from_dict up to ray ids."""
    order = sorted(fan.ray_ids)
    pos = {i: p for p, i in enumerate(order)}
    vecs = ray_map(fan)
    return {
        "dim": fan.dim,
        "rays": [list(vecs[i]) for i in order],
        "max_cones": [
            sorted(pos[i] for i in c.ray_ids) for c in fan.max_cones
        ],
    }


def fans_match(f: Fan, g: Fan) -> bool:
    """Equality up to ray reindexing: same ray vectors, same cones."""
    if f.dim != g.dim:
        return False
    fv = {r.vector for r in f.rays}
    gv = {r.vector for r in g.rays}
    if fv != gv:
        return False
    fm, gm = ray_map(f), ray_map(g)
    fc = {frozenset(fm[i] for i in c.ray_ids) for c in f.max_cones}
    gc = {frozenset(gm[i] for i in c.ray_ids) for c in g.max_cones}
    return fc == gc

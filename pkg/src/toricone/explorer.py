"""Randomized walk over complete fans hunting degenerate specimens.

Mutations refine or perturb a fan while keeping it a valid complete fan:
stellar subdivision at a random interior vector, a small nudge of one ray,
or a re-triangulation splitting a circuit cone along a hyperplane through
all but two of its rays.  Findings are deduplicated by a signature that is
canonical under coordinate permutations only; unimodular changes of basis
may still produce duplicates.
"""

from __future__ import annotations

import functools
import hashlib
import json
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations

from . import catalog as cat
from . import exactlin as ex
from . import fan as fn
from . import report as rp
from .fan import Fan, FanValidationError
from .report import AnalysisReport

TARGETS = (
    "nonprojective",
    "ne_equals_n1",
    "kleiman_fails",
    "qfactorial_ne_equals_n1",
)

MUTATION_BUDGET = 64


@dataclass(frozen=True)
class SearchConfig:
    """Deterministic search parameters; equal configs give equal streams."""

    seed: int
    iterations: int
    mutations_per_step: int = 1
    targets: tuple[str, ...] = ()
    dim: int = 3
    start: str = "delta_Q"
    max_rays: int = 12

    def __post_init__(self):
        unknown = [t for t in self.targets if t not in TARGETS]
        if unknown:
            raise ValueError(
                f"unknown target {unknown[0]!r}; choose from {', '.join(TARGETS)}"
            )
        if self.iterations < 1:
            raise ValueError("iterations must be positive")
        if self.mutations_per_step < 1:
            raise ValueError("mutations_per_step must be positive")


@dataclass(frozen=True)
class Finding:
    fan_data: dict = field(compare=False)
    report: AnalysisReport
    signature: str
    needs_review: bool


class MutationFailed(Exception):
    """One mutation attempt produced no valid fan; the caller retries."""


def signature(fan: Fan) -> str:
    """Hash of the lexicographically smallest encoding over coordinate
    permutations.  Not a lattice-isomorphism invariant by design."""
    vecs = list(fn.ray_map(fan).values())
    by_id = fn.ray_map(fan)
    best = None
    for perm in permutations(range(fan.dim)):
        rays = sorted(tuple(v[p] for p in perm) for v in vecs)
        pos = {v: i for i, v in enumerate(rays)}
        cones = sorted(
            sorted(pos[tuple(by_id[i][p] for p in perm)] for i in c.ray_ids)
            for c in fan.max_cones
        )
        enc = json.dumps(
            {"dim": fan.dim, "rays": [list(r) for r in rays], "max_cones": cones},
            sort_keys=True,
            separators=(",", ":"),
        )
        if best is None or enc < best:
            best = enc
    return hashlib.sha256(best.encode()).hexdigest()


def subdivide_move(fan: Fan, vector) -> Fan:
    return fn.stellar_subdivide(fan, vector)


def nudge_move(fan: Fan, ray_id: int, delta) -> Fan:
    """Replace one ray vector by the primitive form of vector + delta and
    revalidate the whole fan; raises MutationFailed when the perturbed data
    is no longer a complete fan."""
    vecs = fn.ray_map(fan)
    if ray_id not in vecs:
        raise MutationFailed(f"no ray {ray_id}")
    moved = ex.vec_add(vecs[ray_id], tuple(delta))
    if all(x == 0 for x in moved):
        raise MutationFailed("nudge through the origin")
    if ex.primitive(moved) == vecs[ray_id]:
        raise MutationFailed("nudge does not move the ray")
    vecs[ray_id] = ex.primitive(moved)
    order = sorted(vecs)
    pos = {i: p for p, i in enumerate(order)}
    cones = [[pos[i] for i in c.ray_ids] for c in fan.max_cones]
    try:
        out = fn.build_fan(fan.dim, [vecs[i] for i in order], cones, ray_ids=order)
    except FanValidationError as e:
        raise MutationFailed(str(e))
    if not out.complete:
        raise MutationFailed("nudge broke completeness")
    return out


def _circuit_splits(fan: Fan, cone: fn.Cone) -> list[tuple[tuple[int, ...], Fan]]:
    """Valid re-triangulations of a cone with dim+1 rays.

    Keeping dim-1 rays spans a hyperplane; when the two remaining rays lie
    strictly on opposite sides, the cone splits into the two simplicial
    halves.  Returns (kept rays, new fan) per valid choice.
    """
    n = fan.dim
    if len(cone.ray_ids) != n + 1:
        return []
    vecs = fn.ray_map(fan)
    out = []
    for kept in combinations(cone.ray_ids, n - 1):
        ker = ex.kernel_basis([vecs[i] for i in kept])
        if len(ker) != 1:
            continue
        q = ker[0]
        rest = [i for i in cone.ray_ids if i not in kept]
        sides = [ex.dot(q, vecs[i]) for i in rest]
        if sides[0] * sides[1] >= 0:
            continue
        half_a = tuple(sorted(kept + (rest[0],)))
        half_b = tuple(sorted(kept + (rest[1],)))
        order = sorted(vecs)
        pos = {i: p for p, i in enumerate(order)}
        cones = [
            [pos[i] for i in c.ray_ids]
            for c in fan.max_cones
            if c.ray_ids != cone.ray_ids
        ]
        cones += [[pos[i] for i in half_a], [pos[i] for i in half_b]]
        try:
            split = fn.build_fan(
                fan.dim, [vecs[i] for i in order], cones, ray_ids=order
            )
        except FanValidationError:
            continue
        out.append((kept, split))
    return out


def split_move(fan: Fan, cone_rays, kept) -> Fan:
    """Split the named circuit cone along the hyperplane through kept."""
    key = tuple(sorted(cone_rays))
    for c in fan.max_cones:
        if c.ray_ids == key:
            for k, split in _circuit_splits(fan, c):
                if k == tuple(sorted(kept)):
                    return split
            raise MutationFailed(f"no valid split of {key} keeping {tuple(kept)}")
    raise MutationFailed(f"no maximal cone with rays {key}")


def _random_subdivide(fan: Fan, rng: random.Random) -> Fan:
    cone = rng.choice(fan.max_cones)
    vecs = fn.ray_map(fan)
    coeffs = [rng.randint(0, 2) for _ in cone.ray_ids]
    if not any(coeffs):
        raise MutationFailed("zero combination")
    v = functools.reduce(
        ex.vec_add,
        (ex.vec_scale(c, vecs[i]) for c, i in zip(coeffs, cone.ray_ids)),
    )
    w = ex.primitive(v)
    if w in vecs.values():
        raise MutationFailed("existing ray")
    return subdivide_move(fan, w)


def _random_nudge(fan: Fan, rng: random.Random) -> Fan:
    ray = rng.choice(fan.rays)
    delta = tuple(rng.randint(-1, 1) for _ in range(fan.dim))
    if all(x == 0 for x in delta):
        raise MutationFailed("zero nudge")
    return nudge_move(fan, ray.index, delta)


def _random_split(fan: Fan, rng: random.Random) -> Fan:
    circuits = [
        c
        for c in fan.max_cones
        if c.multiplicity is None and len(c.ray_ids) == fan.dim + 1
    ]
    if not circuits:
        raise MutationFailed("no circuit cone to split")
    splits = _circuit_splits(fan, rng.choice(circuits))
    if not splits:
        raise MutationFailed("cone admits no split")
    return rng.choice(splits)[1]


_MOVES = {
    "subdivide": _random_subdivide,
    "nudge": _random_nudge,
    "split": _random_split,
}


def mutate(fan: Fan, rng: random.Random | None = None, move=None) -> Fan:
    """One validated mutation.

    With move=("subdivide", vector), ("nudge", ray_id, delta) or
    ("split", cone_rays, kept) the exact move runs once and MutationFailed
    propagates.  Otherwise random moves are retried up to MUTATION_BUDGET
    times before giving up.
    """
    if move is not None:
        name, *args = move
        if name == "subdivide":
            return subdivide_move(fan, *args)
        if name == "nudge":
            return nudge_move(fan, *args)
        if name == "split":
            return split_move(fan, *args)
        raise ValueError(f"unknown move {name!r}")
    if rng is None:
        raise ValueError("random mutation needs an rng")
    for _ in range(MUTATION_BUDGET):
        step = rng.choice(tuple(_MOVES))
        try:
            return _MOVES[step](fan, rng)
        except (MutationFailed, ValueError):
            continue
    raise RuntimeError("mutation budget exhausted")


def _matches(report: AnalysisReport, target: str) -> bool:
    if target == "nonprojective":
        return not report.projective
    if target == "ne_equals_n1":
        return report.ne_equals_n1
    if target == "kleiman_fails":
        return report.kleiman_verdict == "fails_with_certificate"
    return report.q_factorial and report.ne_equals_n1


def search(config: SearchConfig) -> list[Finding]:
    """Deterministic mutation walk from the start fan.

    Each iteration applies mutations_per_step mutations and analyzes the
    result once per distinct signature, recording it when some target
    matches.  A smooth fan matching ne_equals_n1 would contradict the
    expected picture and is flagged needs_review rather than silently
    reported.
    """
    if not config.targets:
        return []
    rng = random.Random(config.seed)
    base = cat.get(config.start).fan
    current = base
    seen: set[str] = set()
    findings: list[Finding] = []
    for _ in range(config.iterations):
        fan = current
        try:
            for _ in range(config.mutations_per_step):
                fan = mutate(fan, rng)
        except RuntimeError:
            current = base
            continue
        current = fan if len(fan.rays) <= config.max_rays else base
        sig = signature(fan)
        if sig in seen:
            continue
        seen.add(sig)
        rep = rp.analyze(fan)
        if not any(_matches(rep, t) for t in config.targets):
            continue
        findings.append(
            Finding(
                fan_data=fn.fan_to_dict(fan),
                report=rep,
                signature=sig,
                needs_review=rep.smooth and rep.ne_equals_n1,
            )
        )
    return findings


def finding_to_json(finding: Finding) -> str:
    return json.dumps(
        {
            "fan": finding.fan_data,
            "needs_review": finding.needs_review,
            "report": rp.to_dict(finding.report),
            "signature": finding.signature,
        },
        sort_keys=True,
        separators=(",", ":"),
    )


def finding_from_json(line: str) -> Finding:
    obj = json.loads(line)
    return Finding(
        fan_data=obj["fan"],
        report=rp.from_dict(obj["report"]),
        signature=obj["signature"],
        needs_review=obj["needs_review"],
    )

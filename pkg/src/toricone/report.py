"""Full analysis of a complete fan as one serializable record.

The report gathers the flags, Picard and numerical ranks, projectivity
with witness or certificate, the wall table with curve classes, and the
ampleness-criterion verdict.  Serialization is canonical JSON: sorted
keys, integers and "p/q" strings only, so equal reports have equal bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import divisor as dv
from . import fan as fn
from . import intersection as it
from .exactlin import Vec
from .fan import Fan


@dataclass(frozen=True)
class WallRow:
    rays: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    curve_class: Vec


@dataclass(frozen=True)
class AnalysisReport:
    dim: int
    ray_count: int
    cone_count: int
    wall_count: int
    rays: tuple[tuple[int, Vec], ...]
    complete: bool
    q_factorial: bool
    smooth: bool
    gorenstein: bool
    pic_rank: int
    numerical_rank: int
    projective: bool
    witness: tuple[tuple[int, int], ...] | None
    certificate: tuple[tuple[tuple[int, ...], Fraction], ...] | None
    ne_equals_n1: bool
    nef_is_zero: bool
    trivial_walls: tuple[tuple[int, ...], ...]
    walls: tuple[WallRow, ...]
    kleiman_verdict: str
    kleiman_divisor: tuple[tuple[int, int], ...] | None


def analyze(fan: Fan) -> AnalysisReport:
    """Run the full battery on a complete fan."""
    walls = fn.walls(fan)
    pic = dv.picard(fan)
    rep = it.cone_report(fan, pic)
    proj = it.is_projective(fan, pic, rep.ne_generators)
    kl = it.kleiman_diagnosis(fan, pic, rep, proj)
    rows = tuple(
        WallRow(
            rays=w.ray_ids,
            left=fan.max_cones[w.left].ray_ids,
            right=fan.max_cones[w.right].ray_ids,
            curve_class=c.pairing,
        )
        for w, c in zip(walls, rep.ne_generators)
    )
    certificate = None
    if proj.certificate is not None:
        certificate = tuple(
            (walls[i].ray_ids, lam) for i, lam in proj.certificate
        )
    return AnalysisReport(
        dim=fan.dim,
        ray_count=len(fan.rays),
        cone_count=len(fan.max_cones),
        wall_count=len(walls),
        rays=tuple((r.index, r.vector) for r in fan.rays),
        complete=fan.complete,
        q_factorial=fan.q_factorial,
        smooth=fan.smooth,
        gorenstein=fan.gorenstein,
        pic_rank=pic.rank,
        numerical_rank=rep.numerical_rank,
        projective=proj.projective,
        witness=proj.witness.coeffs if proj.witness is not None else None,
        certificate=certificate,
        ne_equals_n1=rep.ne_equals_n1,
        nef_is_zero=rep.nef_is_zero,
        trivial_walls=tuple(
            rep.ne_generators[i].rays for i in rep.trivial_walls
        ),
        walls=rows,
        kleiman_verdict=kl.verdict,
        kleiman_divisor=(
            kl.positive_divisor.coeffs
            if kl.positive_divisor is not None
            else None
        ),
    )


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _parse_frac(s: str) -> Fraction:
    return Fraction(s)


def _divisor_obj(coeffs) -> dict[str, int] | None:
    if coeffs is None:
        return None
    return {str(i): c for i, c in coeffs}


def _divisor_tuple(obj) -> tuple[tuple[int, int], ...] | None:
    if obj is None:
        return None
    return tuple(sorted((int(k), int(v)) for k, v in obj.items()))


def to_dict(report: AnalysisReport) -> dict:
    """JSON-ready form: only objects, arrays, strings, ints, bools."""
    return {
        "fan": {
            "dim": report.dim,
            "ray_count": report.ray_count,
            "cone_count": report.cone_count,
            "wall_count": report.wall_count,
            "rays": [
                {"id": i, "vector": list(v)} for i, v in report.rays
            ],
        },
        "flags": {
            "complete": report.complete,
            "q_factorial": report.q_factorial,
            "smooth": report.smooth,
            "gorenstein": report.gorenstein,
        },
        "pic_rank": report.pic_rank,
        "numerical_rank": report.numerical_rank,
        "projective": report.projective,
        "witness": _divisor_obj(report.witness),
        "certificate": (
            None
            if report.certificate is None
            else [
                {"wall": list(rays), "multiplier": _frac_str(lam)}
                for rays, lam in report.certificate
            ]
        ),
        "ne_equals_n1": report.ne_equals_n1,
        "nef_is_zero": report.nef_is_zero,
        "trivial_walls": [list(w) for w in report.trivial_walls],
        "walls": [
            {
                "rays": list(w.rays),
                "left": list(w.left),
                "right": list(w.right),
                "class": list(w.curve_class),
            }
            for w in report.walls
        ],
        "kleiman": {
            "verdict": report.kleiman_verdict,
            "positive_divisor": _divisor_obj(report.kleiman_divisor),
        },
    }


def from_dict(obj: dict) -> AnalysisReport:
    return AnalysisReport(
        dim=obj["fan"]["dim"],
        ray_count=obj["fan"]["ray_count"],
        cone_count=obj["fan"]["cone_count"],
        wall_count=obj["fan"]["wall_count"],
        rays=tuple(
            (r["id"], tuple(r["vector"])) for r in obj["fan"]["rays"]
        ),
        complete=obj["flags"]["complete"],
        q_factorial=obj["flags"]["q_factorial"],
        smooth=obj["flags"]["smooth"],
        gorenstein=obj["flags"]["gorenstein"],
        pic_rank=obj["pic_rank"],
        numerical_rank=obj["numerical_rank"],
        projective=obj["projective"],
        witness=_divisor_tuple(obj["witness"]),
        certificate=(
            None
            if obj["certificate"] is None
            else tuple(
                (tuple(c["wall"]), _parse_frac(c["multiplier"]))
                for c in obj["certificate"]
            )
        ),
        ne_equals_n1=obj["ne_equals_n1"],
        nef_is_zero=obj["nef_is_zero"],
        trivial_walls=tuple(tuple(w) for w in obj["trivial_walls"]),
        walls=tuple(
            WallRow(
                rays=tuple(w["rays"]),
                left=tuple(w["left"]),
                right=tuple(w["right"]),
                curve_class=tuple(w["class"]),
            )
            for w in obj["walls"]
        ),
        kleiman_verdict=obj["kleiman"]["verdict"],
        kleiman_divisor=_divisor_tuple(obj["kleiman"]["positive_divisor"]),
    )


def to_json(report: AnalysisReport) -> str:
    return json.dumps(to_dict(report), sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> AnalysisReport:
    return from_dict(json.loads(text))

"""Command-line front end.

Commands read fan files ({"dim", "rays", "max_cones"}), run one engine
operation each, and print text (default) or canonical JSON.  Exit codes:
0 success, 1 a predicate evaluated false, 2 parse or validation failure,
3 I/O failure, 64 usage error.  TORICONE_FORMAT overrides the default
output format.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog as cat
from . import divisor as dv
from . import explorer as xp
from . import fan as fn
from . import intersection as it
from . import report as rp
from .divisor import TWeilDivisor
from .fan import Fan, FanValidationError


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def ray_label(ray_id: int) -> str:
    return f"v{ray_id}" if ray_id <= 26 else f"ray{ray_id}"


def _labels(ids) -> str:
    return "{" + ",".join(ray_label(i) for i in ids) + "}"


def parse_fan_file(path: str) -> Fan:
    """Load and validate a fan file; errors carry the offending path."""
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FanValidationError(f"{path}: invalid JSON ({e})")
    try:
        return fn.fan_from_dict(obj)
    except FanValidationError as e:
        raise FanValidationError(f"{path}: {e}")


def _parse_divisor(text: str, fan: Fan) -> TWeilDivisor:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"invalid divisor JSON ({e})")
    if not isinstance(obj, dict):
        raise ValueError("divisor must be a JSON object of ray id: coefficient")
    coeffs = {}
    for k, v in obj.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"divisor coefficient for ray {k} must be an integer")
        coeffs[int(k)] = v
    return TWeilDivisor.from_dict(fan, coeffs)


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise ValueError(f"expected a comma-separated integer vector, got {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _print_fan_text(fan: Fan) -> None:
    print(f"dim {fan.dim}, {len(fan.rays)} rays, {len(fan.max_cones)} maximal cones")
    print(
        "complete={} q_factorial={} smooth={} gorenstein={}".format(
            *("yes" if f else "no" for f in (fan.complete, fan.q_factorial, fan.smooth, fan.gorenstein))
        )
    )
    for r in fan.rays:
        print(f"  {ray_label(r.index)} = {tuple(r.vector)}")
    for c in fan.max_cones:
        mult = "non-simplicial" if c.multiplicity is None else f"multiplicity {c.multiplicity}"
        print(f"  cone {_labels(c.ray_ids)}  {mult}")


def _emit_fan(fan: Fan, fmt: str) -> int:
    if fmt == "json":
        print(_dump(fn.fan_to_dict(fan)))
    else:
        _print_fan_text(fan)
    return 0


def _divisor_str(d: TWeilDivisor) -> str:
    parts = [f"{c:+d}*D{i}" for i, c in d.coeffs if c]
    return " ".join(parts) if parts else "0"


def _cmd_validate(args, fmt: str) -> int:
    fan = parse_fan_file(args.fan)
    if fmt == "json":
        print(
            _dump(
                {
                    "valid": True,
                    "dim": fan.dim,
                    "rays": len(fan.rays),
                    "max_cones": len(fan.max_cones),
                    "complete": fan.complete,
                    "q_factorial": fan.q_factorial,
                    "smooth": fan.smooth,
                    "gorenstein": fan.gorenstein,
                }
            )
        )
    else:
        print(f"valid fan: {args.fan}")
        _print_fan_text(fan)
    return 0


def _format_class(vec) -> str:
    return "(" + ", ".join(str(v) for v in vec) + ")"


def _cmd_analyze(args, fmt: str) -> int:
    fan = parse_fan_file(args.fan)
    report = rp.analyze(fan)
    if fmt == "json":
        print(rp.to_json(report))
        return 0
    print(
        f"fan: dim {report.dim}, {report.ray_count} rays, "
        f"{report.cone_count} maximal cones, {report.wall_count} walls"
    )
    print(
        "flags: complete={} q_factorial={} smooth={} gorenstein={}".format(
            *("yes" if f else "no" for f in (report.complete, report.q_factorial, report.smooth, report.gorenstein))
        )
    )
    for i, v in report.rays:
        print(f"  {ray_label(i)} = {tuple(v)}")
    print(f"picard rank: {report.pic_rank}")
    print(f"numerical rank: {report.numerical_rank}")
    print(f"projective: {'yes' if report.projective else 'no'}")
    if report.witness is not None:
        print(f"  ample witness: {_divisor_str(TWeilDivisor(report.witness))}")
    if report.certificate is not None:
        print("  certificate (classes combine to zero):")
        for rays, lam in report.certificate:
            print(f"    {lam} * wall {_labels(rays)}")
    print(f"ne_equals_n1: {'yes' if report.ne_equals_n1 else 'no'}")
    rows = [
        (_labels(w.rays), _labels(w.left), _labels(w.right), _format_class(w.curve_class))
        for w in report.walls
    ]
    widths = [max(len(r[i]) for r in rows) for i in range(3)] if rows else []
    print("walls:")
    for r in rows:
        print(
            f"  {r[0]:<{widths[0]}}  {r[1]:<{widths[1]}} | {r[2]:<{widths[2]}}  class {r[3]}"
        )
    print(f"kleiman: {report.kleiman_verdict}")
    if report.kleiman_divisor is not None:
        print(
            f"  positive on nonzero classes: {_divisor_str(TWeilDivisor(report.kleiman_divisor))}"
        )
    return 0


def _cmd_picard(args, fmt: str) -> int:
    fan = parse_fan_file(args.fan)
    pic = dv.picard(fan)
    if fmt == "json":
        print(
            _dump(
                {
                    "pic_rank": pic.rank,
                    "basis": [
                        {str(i): c for i, c in b.coeffs} for b in pic.basis
                    ],
                }
            )
        )
        return 0
    print(f"picard rank: {pic.rank}")
    for b in pic.basis:
        print(f"  basis: {_divisor_str(b)}")
    return 0


def _cmd_intersect(args, fmt: str) -> int:
    fan = parse_fan_file(args.fan)
    divisor = _parse_divisor(args.divisor, fan)
    cd = dv.cartier_data(fan, divisor)
    if cd is None:
        raise ValueError("divisor is not Cartier; intersection numbers undefined")
    walls = fn.walls(fan)
    numbers = [(w.ray_ids, it.intersection_number(fan, cd, w)) for w in walls]
    if fmt == "json":
        print(
            _dump(
                {
                    "divisor": {str(i): c for i, c in divisor.coeffs},
                    "intersections": [
                        {"wall": list(rays), "number": n} for rays, n in numbers
                    ],
                }
            )
        )
        return 0
    width = max(len(_labels(r)) for r, _ in numbers)
    for rays, n in numbers:
        print(f"  {_labels(rays):<{width}}  {n}")
    return 0


def _cmd_projective(args, fmt: str) -> int:
    fan = parse_fan_file(args.fan)
    res = it.is_projective(fan)
    if fmt == "json":
        obj = {
            "projective": res.projective,
            "witness": (
                {str(i): c for i, c in res.witness.coeffs}
                if res.witness is not None
                else None
            ),
            "certificate": (
                [
                    {
                        "wall": list(fn.walls(fan)[i].ray_ids),
                        "multiplier": str(lam),
                    }
                    for i, lam in res.certificate
                ]
                if res.certificate is not None
                else None
            ),
        }
        print(_dump(obj))
    else:
        print(f"projective: {'yes' if res.projective else 'no'}")
        if res.witness is not None:
            print(f"  ample witness: {_divisor_str(res.witness)}")
        if res.certificate is not None:
            print("  certificate (classes combine to zero):")
            for i, lam in res.certificate:
                print(f"    {lam} * wall {_labels(fn.walls(fan)[i].ray_ids)}")
    return 0 if res.projective else 1


def _cmd_catalog(args, fmt: str) -> int:
    if args.name is None:
        if fmt == "json":
            print(_dump(list(cat.names())))
        else:
            for n in cat.names():
                print(n)
        return 0
    entry = cat.get(args.name)
    if fmt == "json":
        print(_dump(fn.fan_to_dict(entry.fan)))
        return 0
    print(f"catalog entry: {entry.name}")
    _print_fan_text(entry.fan)
    print("expected:")
    for k in sorted(entry.expected):
        print(f"  {k}: {entry.expected[k]}")
    return 0


def _cmd_subdivide(args, fmt: str) -> int:
    fan = parse_fan_file(args.fan)
    out = fn.stellar_subdivide(fan, _parse_vector(args.ray))
    return _emit_fan(out, fmt)


def _cmd_product(args, fmt: str) -> int:
    out = fn.product(parse_fan_file(args.fan), parse_fan_file(args.other))
    return _emit_fan(out, fmt)


def _cmd_tower(args, fmt: str) -> int:
    return _emit_fan(cat.xk_tower(args.k), fmt)


def _cmd_search(args, fmt: str) -> int:
    targets = tuple(t for t in args.targets.split(",") if t) if args.targets else ()
    config = xp.SearchConfig(
        seed=args.seed,
        iterations=args.iters,
        mutations_per_step=args.mutations,
        targets=targets,
        start=args.start,
    )
    findings = xp.search(config)
    for f in findings:
        if fmt == "json":
            print(xp.finding_to_json(f))
        else:
            flag = "  NEEDS REVIEW" if f.needs_review else ""
            print(
                f"{f.signature[:16]}  {f.report.ray_count} rays "
                f"{f.report.cone_count} cones  {f.report.kleiman_verdict}{flag}"
            )
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="toricone", description="exact analysis of complete rational fans")
    parser.add_argument(
        "--format", choices=("json", "text"), default=None, help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, fan_arg=True):
        p = sub.add_parser(name, help=help_text)
        if fan_arg:
            p.add_argument("fan", help="fan file path")
        # SUPPRESS keeps a pre-subcommand --format from being clobbered
        p.add_argument(
            "--format", choices=("json", "text"), default=argparse.SUPPRESS
        )
        p.set_defaults(func=func)
        return p

    add("validate", _cmd_validate, "check a fan file and print its structure")
    add("analyze", _cmd_analyze, "full report: flags, ranks, projectivity, walls")
    add("picard", _cmd_picard, "rank and basis of the Cartier class lattice")
    p = add("intersect", _cmd_intersect, "intersection numbers of a divisor with all wall curves")
    p.add_argument("--divisor", required=True, help='JSON map, e.g. \'{"7": 1}\'')
    add("projective", _cmd_projective, "ample witness or infeasibility certificate; exit 1 if not projective")
    p = add("catalog", _cmd_catalog, "print a named fan, or list names", fan_arg=False)
    p.add_argument("--name", default=None)
    p = add("subdivide", _cmd_subdivide, "stellar subdivision at a ray")
    p.add_argument("--ray", required=True, help="comma-separated vector, e.g. 0,0,-1")
    p = add("product", _cmd_product, "product of two fans")
    p.add_argument("other", help="second fan file path")
    p = add("tower", _cmd_tower, "floor k of the blow-up tower", fan_arg=False)
    p.add_argument("--k", type=int, required=True)
    p = add("search", _cmd_search, "randomized specimen search (JSON lines)", fan_arg=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=20)
    p.add_argument("--targets", default="")
    p.add_argument("--mutations", type=int, default=1)
    p.add_argument("--start", default="delta_Q")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 64
    fmt = args.format or os.environ.get("TORICONE_FORMAT")
    if fmt not in ("json", "text"):
        fmt = "text"
    try:
        return args.func(args, fmt)
    except FanValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Analysis reports and their canonical JSON serialization."""

import json
from fractions import Fraction

import toricone.divisor as dv
import toricone.fan as fn
import toricone.intersection as it
from toricone import catalog
from toricone.report import analyze, from_json, to_dict, to_json


def test_report_fields_agree_with_modules(blowup_fan):
    rep = analyze(blowup_fan)
    pic = dv.picard(blowup_fan)
    cone = it.cone_report(blowup_fan, pic)
    walls = fn.walls(blowup_fan)
    assert rep.pic_rank == pic.rank
    assert rep.numerical_rank == cone.numerical_rank
    assert rep.ne_equals_n1 == cone.ne_equals_n1
    assert rep.wall_count == len(walls) == len(rep.walls)
    for row, wall, cls in zip(rep.walls, walls, cone.ne_generators):
        assert row.rays == wall.ray_ids
        assert row.left == blowup_fan.max_cones[wall.left].ray_ids
        assert row.right == blowup_fan.max_cones[wall.right].ray_ids
        assert row.curve_class == cls.pairing


def test_witness_and_certificate_surface(coarse_fan, fine_fan):
    ample = analyze(coarse_fan)
    assert ample.projective and ample.witness is not None
    assert ample.certificate is None
    blocked = analyze(fine_fan)
    assert not blocked.projective and blocked.witness is None
    assert blocked.certificate == (((2, 4), Fraction(1)),)


def test_round_trip_identity():
    for name in ["delta_P", "delta_Q", "delta_A", "delta_B", "weighted_p112"]:
        rep = analyze(catalog.get(name).fan)
        text = to_json(rep)
        again = from_json(text)
        assert again == rep
        assert to_json(again) == text


def test_json_is_canonical_and_float_free(fine_fan):
    text = to_json(analyze(fine_fan))
    parsed = json.loads(text)
    assert json.dumps(parsed, sort_keys=True, separators=(",", ":")) == text

    def walk(node):
        assert not isinstance(node, float)
        if isinstance(node, dict):
            for k, v in node.items():
                assert isinstance(k, str)
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)

    walk(parsed)


def test_fractional_multipliers_render_as_ratios():
    # a certificate multiplier that is not an integer must serialize as p/q
    from toricone.report import _frac_str, _parse_frac

    assert _frac_str(Fraction(3, 4)) == "3/4"
    assert _frac_str(Fraction(5)) == "5"
    assert _parse_frac("3/4") == Fraction(3, 4)
    assert _parse_frac("-7/2") == Fraction(-7, 2)


def test_divisor_maps_round_trip(blowup_fan):
    rep = analyze(blowup_fan)
    obj = to_dict(rep)
    assert obj["kleiman"]["verdict"] == "no_positive_divisor"
    assert obj["kleiman"]["positive_divisor"] is None
    assert obj["witness"] is None
    # delta_Q carries an integral ample witness keyed by ray id strings
    ample = to_dict(analyze(catalog.get("delta_Q").fan))
    witness = ample["witness"]
    assert witness is not None
    assert all(isinstance(k, str) and isinstance(v, int) for k, v in witness.items())

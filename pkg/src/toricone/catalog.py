"""Named fans with pinned analysis facts.

The four shipped 3-dimensional fans exercise every degenerate behavior the
engine detects: a complete non-projective Gorenstein pair differing by one
re-triangulation, and a blow-up family whose Mori cone fills the whole
curve space.  Classical smooth references (projective spaces, products,
Hirzebruch surfaces) and a weighted projective plane round out the set.
Each entry carries an expected block: analysis fields the engine must
reproduce, enforced field-by-field in the test suite.
"""

from __future__ import annotations

import functools
import json
import re
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from math import comb

from . import exactlin as ex
from . import fan as fn
from .fan import Fan


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    fan: Fan
    expected: dict


def _load_data(name: str) -> Fan:
    text = resources.files("toricone.data").joinpath(f"{name}.json").read_text()
    return fn.fan_from_dict(json.loads(text))


def pn(n: int) -> Fan:
    """Projective n-space: rays e_1..e_n and -(e_1+..+e_n)."""
    if n < 1:
        raise ValueError("pn needs n >= 1")
    rays = list(ex.identity(n)) + [(-1,) * n]
    return fn.build_fan(n, rays, combinations(range(n + 1), n))


def hirzebruch(a: int) -> Fan:
    """Hirzebruch surface F_a: projectivized O + O(a) over the line."""
    if a < 0:
        raise ValueError("hirzebruch needs a >= 0")
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return fn.build_fan(2, rays, [[0, 1], [1, 2], [2, 3], [3, 0]])


def _weighted_p112() -> Fan:
    rays = [(1, 0), (0, 1), (-1, -2)]
    return fn.build_fan(2, rays, [[0, 1], [1, 2], [0, 2]])


_SMOOTH_PROJECTIVE = {
    "complete": True,
    "q_factorial": True,
    "smooth": True,
    "gorenstein": True,
    "projective": True,
    "ne_equals_n1": False,
    "nef_is_zero": False,
    "kleiman_verdict": "holds_projective",
}

_EXPECTED = {
    "delta_P": {
        "ray_count": 6,
        "cone_count": 6,
        "wall_count": 10,
        "complete": True,
        "q_factorial": False,
        "smooth": False,
        "gorenstein": True,
        "pic_rank": 1,
        "numerical_rank": 1,
        "projective": False,
        "ne_equals_n1": False,
        "kleiman_verdict": "fails_with_certificate",
    },
    "delta_Q": {
        "ray_count": 6,
        "cone_count": 5,
        "wall_count": 9,
        "complete": True,
        "q_factorial": False,
        "smooth": False,
        "gorenstein": True,
        "pic_rank": 1,
        "numerical_rank": 1,
        "projective": True,
        "ne_equals_n1": False,
        "kleiman_verdict": "holds_projective",
    },
    "delta_A": {
        "ray_count": 6,
        "cone_count": 5,
        "wall_count": 9,
        "complete": True,
        "q_factorial": False,
        "smooth": False,
        "gorenstein": False,
        "pic_rank": 0,
        "numerical_rank": 0,
        "projective": False,
        "ne_equals_n1": True,
        "nef_is_zero": True,
        "kleiman_verdict": "not_applicable",
    },
    "delta_B": {
        "ray_count": 7,
        "cone_count": 7,
        "wall_count": 12,
        "complete": True,
        "q_factorial": False,
        "smooth": False,
        "gorenstein": False,
        "pic_rank": 1,
        "numerical_rank": 1,
        "projective": False,
        "ne_equals_n1": True,
        "nef_is_zero": True,
        "kleiman_verdict": "no_positive_divisor",
    },
}

_PARAM = re.compile(r"^(pn|hirzebruch)\((\d+)\)$")


def names() -> tuple[str, ...]:
    """Accepted catalog names; n and a stand for nonnegative integers."""
    return (
        "delta_A",
        "delta_B",
        "delta_P",
        "delta_Q",
        "hirzebruch(a)",
        "p1xp1",
        "pn(n)",
        "weighted_p112",
    )


@functools.lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    """Look up a catalog entry by name, e.g. "delta_B" or "pn(3)"."""
    if name in _EXPECTED:
        return CatalogEntry(name, _load_data(name), dict(_EXPECTED[name]))
    m = _PARAM.match(name)
    if m and m.group(1) == "pn":
        n = int(m.group(2))
        expected = dict(
            _SMOOTH_PROJECTIVE,
            ray_count=n + 1,
            cone_count=n + 1,
            wall_count=comb(n + 1, 2),
            pic_rank=1,
            numerical_rank=1,
        )
        return CatalogEntry(name, pn(n), expected)
    if m:
        a = int(m.group(2))
        expected = dict(
            _SMOOTH_PROJECTIVE,
            ray_count=4,
            cone_count=4,
            wall_count=4,
            pic_rank=2,
            numerical_rank=2,
        )
        return CatalogEntry(name, hirzebruch(a), expected)
    if name == "p1xp1":
        expected = dict(
            _SMOOTH_PROJECTIVE,
            ray_count=4,
            cone_count=4,
            wall_count=4,
            pic_rank=2,
            numerical_rank=2,
        )
        return CatalogEntry(name, fn.product(pn(1), pn(1)), expected)
    if name == "weighted_p112":
        expected = {
            "ray_count": 3,
            "cone_count": 3,
            "wall_count": 3,
            "complete": True,
            "q_factorial": True,
            "smooth": False,
            "gorenstein": True,
            "pic_rank": 1,
            "numerical_rank": 1,
            "projective": True,
            "ne_equals_n1": False,
            "kleiman_verdict": "holds_projective",
        }
        return CatalogEntry(name, _weighted_p112(), expected)
    raise ValueError(
        f"unknown catalog name: {name!r}; available: {', '.join(names())}"
    )


def xk_tower(k: int) -> Fan:
    """The blow-up tower over the rank-zero base.

    Step i inserts the primitive generator of v4 + v5 + w where w is the
    previously inserted ray (w = v6 for the first step).  Every floor is a
    complete 3-fold whose wall curves span a k-dimensional class space that
    the nef cone meets only in zero.
    """
    if k < 0:
        raise ValueError("tower index must be >= 0")
    tower = get("delta_A").fan
    prev = tower.ray_vector(6)
    base = ex.vec_add(tower.ray_vector(4), tower.ray_vector(5))
    for _ in range(k):
        prev = ex.primitive(ex.vec_add(base, prev))
        tower = fn.stellar_subdivide(tower, prev)
    return tower


def product_power(base: str | Fan, k: int) -> Fan:
    """The k-fold product of a catalog fan (by name) or any fan."""
    if k < 1:
        raise ValueError("power must be >= 1")
    factor = get(base).fan if isinstance(base, str) else base
    out = factor
    for _ in range(k - 1):
        out = fn.product(out, factor)
    return out

"""Torus-invariant Weil divisors, Cartier data, and the Picard lattice.

A divisor is a coefficient per ray.  It is Cartier when every maximal cone
carries an integral functional m with <m, v> = -a_v on its rays; the
collection of these functionals is the divisor's Cartier data.  The set of
Cartier divisors forms a finite-index sublattice of Z^rays cut out by
per-cone linear and congruence conditions, and the Picard group is its
quotient by the principal divisors div(chi^m), m in Z^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import exactlin as ex
from .exactlin import Vec
from .fan import Fan


@dataclass(frozen=True)
class TWeilDivisor:
    """Integer coefficients on the fan's rays, stored as sorted pairs."""

    coeffs: tuple[tuple[int, int], ...]

    @staticmethod
    def from_dict(fan: Fan, mapping: Mapping[int, int]) -> "TWeilDivisor":
        ids = set(fan.ray_ids)
        for k in mapping:
            if k not in ids:
                raise ValueError(f"unknown ray id {k}")
        return TWeilDivisor(
            tuple((i, int(mapping.get(i, 0))) for i in sorted(ids))
        )

    @staticmethod
    def prime(fan: Fan, ray_id: int) -> "TWeilDivisor":
        return TWeilDivisor.from_dict(fan, {ray_id: 1})

    @staticmethod
    def zero(fan: Fan) -> "TWeilDivisor":
        return TWeilDivisor.from_dict(fan, {})

    def coeff(self, ray_id: int) -> int:
        for i, c in self.coeffs:
            if i == ray_id:
                return c
        raise KeyError(f"no ray with id {ray_id}")

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def _zip(self, other: "TWeilDivisor"):
        if [i for i, _ in self.coeffs] != [i for i, _ in other.coeffs]:
            raise ValueError("divisors live on different fans")
        return zip(self.coeffs, other.coeffs)

    def __add__(self, other: "TWeilDivisor") -> "TWeilDivisor":
        return TWeilDivisor(
            tuple((i, a + b) for (i, a), (_, b) in self._zip(other))
        )

    def __sub__(self, other: "TWeilDivisor") -> "TWeilDivisor":
        return TWeilDivisor(
            tuple((i, a - b) for (i, a), (_, b) in self._zip(other))
        )

    def __neg__(self) -> "TWeilDivisor":
        return TWeilDivisor(tuple((i, -a) for i, a in self.coeffs))

    def __rmul__(self, k: int) -> "TWeilDivisor":
        return TWeilDivisor(tuple((i, k * a) for i, a in self.coeffs))


@dataclass(frozen=True)
class CartierData:
    """One functional per maximal cone, parallel to fan.max_cones."""

    entries: tuple[Vec, ...]

    def m(self, cone_index: int) -> Vec:
        return self.entries[cone_index]


def principal_divisor(fan: Fan, m: Sequence[int]) -> TWeilDivisor:
    """div(chi^m): coefficient <m, v_i> on each ray."""
    mv = tuple(int(x) for x in m)
    return TWeilDivisor.from_dict(
        fan, {r.index: ex.dot(mv, r.vector) for r in fan.rays}
    )


def cartier_data(fan: Fan, divisor: TWeilDivisor) -> CartierData | None:
    out = []
    for cone in fan.max_cones:
        rows = [fan.ray_vector(i) for i in cone.ray_ids]
        rhs = [-divisor.coeff(i) for i in cone.ray_ids]
        m = ex.solve_integral(rows, rhs)
        if m is None:
            return None
        out.append(m)
    return CartierData(tuple(out))


def is_cartier(fan: Fan, divisor: TWeilDivisor) -> bool:
    return cartier_data(fan, divisor) is not None


def anticanonical(fan: Fan) -> TWeilDivisor:
    return TWeilDivisor.from_dict(fan, {i: 1 for i in fan.ray_ids})


def is_gorenstein(fan: Fan) -> bool:
    return is_cartier(fan, anticanonical(fan))


@dataclass(frozen=True)
class PicardBasis:
    """Free basis of the Picard group plus the reduction machinery.

    cartier_basis rows span the lattice of all Cartier divisors in
    ray-coefficient coordinates (ordered by ray_order); coord_inv converts
    cartier_basis coordinates to a basis whose first len(principal_lattice)
    members span the principal divisors, so a class is the coordinate tail.
    """

    rank: int
    basis: tuple[TWeilDivisor, ...]
    principal_lattice: tuple[Vec, ...]
    ray_order: tuple[int, ...]
    cartier_basis: tuple[Vec, ...] = field(repr=False)
    coord_inv: tuple[Vec, ...] = field(repr=False)

    def class_of(self, divisor: TWeilDivisor) -> Vec:
        """Coordinates of a Cartier divisor's class in the chosen basis."""
        a = tuple(divisor.coeff(i) for i in self.ray_order)
        t = ex.solve_integral(ex.transpose(self.cartier_basis), a)
        if t is None:
            raise ValueError("divisor is not Cartier")
        c = ex.mat_mul([t], self.coord_inv)[0]
        return tuple(c[len(self.principal_lattice):])


def _cartier_lattice(fan: Fan) -> list[Vec]:
    """HNF basis of the Cartier sublattice of Z^rays.

    Per maximal cone, Smith-reduce the ray matrix: rows of U^-1 beyond the
    rank give linear conditions on the coefficient vector, rows with
    elementary divisor d > 1 give conditions mod d.  The congruences are
    folded in by adjoining one scaled slack column per condition.
    """
    order = fan.ray_ids
    pos = {rid: p for p, rid in enumerate(order)}
    nrays = len(order)
    eq_rows: list[Vec] = []
    congruences: list[tuple[Vec, int]] = []
    for cone in fan.max_cones:
        mat = [fan.ray_vector(i) for i in cone.ray_ids]
        snf = ex.smith_normal_form(mat)
        r = snf.rank
        for j in range(len(mat)):
            row = [0] * nrays
            for t, rid in enumerate(cone.ray_ids):
                row[pos[rid]] = -snf.u_inv[j][t]
            if j >= r:
                eq_rows.append(tuple(row))
            elif abs(snf.d[j]) > 1:
                congruences.append((tuple(row), abs(snf.d[j])))
    if eq_rows:
        free = ex.kernel_basis(eq_rows)
    else:
        free = [tuple(row) for row in ex.identity(nrays)]
    if congruences:
        s = len(free)
        aug = []
        for q, (row, d) in enumerate(congruences):
            coeffs = [ex.dot(row, k) for k in free]
            slack = [0] * len(congruences)
            slack[q] = -d
            aug.append(tuple(coeffs + slack))
        tvecs = [v[:s] for v in ex.kernel_basis(aug)]
        free = [ex.mat_mul([t], free)[0] for t in ex.hnf_rows(tvecs)]
    return ex.hnf_rows(free)


def picard(fan: Fan) -> PicardBasis:
    """Picard group of a complete fan: Cartier lattice mod principal.

    The quotient is free because some cone is full-dimensional; this is
    asserted via the elementary divisors of the inclusion matrix, whose
    Smith transform also yields the basis and the reduction map.
    """
    n = fan.dim
    order = fan.ray_ids
    cartier = _cartier_lattice(fan)
    principal = [
        tuple(fan.ray_vector(i)[j] for i in order) for j in range(n)
    ]
    incl = []
    for p in principal:
        x = ex.solve_integral(ex.transpose(cartier), p)
        assert x is not None, "principal divisor outside the Cartier lattice"
        incl.append(x)
    snf = ex.smith_normal_form(incl)
    assert snf.rank == n, "rays do not span the ambient space"
    assert all(abs(d) == 1 for d in snf.d[:n]), "Picard group has torsion"
    rank = len(cartier) - n
    basis = []
    for row in snf.v[n:]:
        a = ex.mat_mul([row], cartier)[0]
        basis.append(TWeilDivisor(tuple(sorted(zip(order, a)))))
    return PicardBasis(
        rank=rank,
        basis=tuple(basis),
        principal_lattice=tuple(principal),
        ray_order=order,
        cartier_basis=tuple(cartier),
        coord_inv=tuple(tuple(r) for r in snf.v_inv),
    )

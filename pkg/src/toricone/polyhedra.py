"""Exact polyhedral cone computations: dual descriptions and rational LPs.

Cones live in Z^n and are handled in exact arithmetic throughout.  The LP
solver is a phase-1 simplex over Fraction with Bland's anti-cycling rule;
infeasible systems always come with a Farkas certificate that multiplies the
rows into the contradiction 0 >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exactlin as ex
from .exactlin import QVec, Vec


@dataclass(frozen=True)
class HRepCone:
    """Halfspace representation {x : A x >= 0, B x = 0}.

    Inequality normals are primitive and one per facet, so membership tests
    and face extraction read straight off the stored rows.
    """

    dim: int
    inequalities: tuple[Vec, ...]
    equalities: tuple[Vec, ...]

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise ValueError("point dimension mismatch")
        return all(ex.dot(e, x) == 0 for e in self.equalities) and all(
            ex.dot(a, x) >= 0 for a in self.inequalities
        )


def dual_description(generators: Sequence[Sequence[int]], dim: int | None = None) -> HRepCone:
    """Facet inequalities and span equalities of cone(generators).

    Facets are found by scanning subsets one short of the cone dimension:
    the functionals vanishing on such a subset form, modulo the span's
    orthogonal complement, a single line, and a sign-constant value pattern
    on the generators picks out a facet normal.
    """
    gens = [tuple(int(x) for x in g) for g in generators if any(g)]
    if dim is None:
        if not gens:
            raise ValueError("ambient dimension required for the zero cone")
        dim = len(gens[0])
    if any(len(g) != dim for g in gens):
        raise ValueError("generator dimension mismatch")
    if not gens:
        eqs = tuple(tuple(row) for row in ex.identity(dim))
        return HRepCone(dim, (), eqs)

    d = ex.rank(gens)
    eq_rows = ex.hnf_rows(ex.kernel_basis(gens))
    seen: set[frozenset[int]] = set()
    ineqs: list[Vec] = []
    for subset in combinations(range(len(gens)), d - 1):
        sub = [gens[i] for i in subset]
        if sub and ex.rank(sub) != d - 1:
            continue
        candidates = (
            ex.kernel_basis(sub) if sub
            else [tuple(row) for row in ex.identity(dim)]
        )
        for b in candidates:
            w = [ex.dot(b, g) for g in gens]
            if all(v == 0 for v in w):
                continue
            if all(v >= 0 for v in w):
                a = b
            elif all(v <= 0 for v in w):
                a, w = ex.vec_neg(b), [-v for v in w]
            else:
                break  # mixed signs: the subset spans no facet
            key = frozenset(i for i, v in enumerate(w) if v == 0)
            if key not in seen:
                seen.add(key)
                a = ex.reduce_mod_lattice(a, eq_rows)
                ineqs.append(ex.primitive(a))
            break
    return HRepCone(dim, tuple(sorted(ineqs)), tuple(eq_rows))


def membership(cone: HRepCone, x: Sequence) -> bool:
    return cone.contains(x)


@dataclass(frozen=True)
class LinSystem:
    """Homogeneous system: strict rows mean <row, x> >= 1, weak rows >= 0,
    eq rows = 0.  Strictness is encoded by the >= 1 normalization, which for
    conical feasibility questions is equivalent to > 0."""

    nvars: int
    strict: tuple[tuple, ...] = ()
    weak: tuple[tuple, ...] = ()
    eq: tuple[tuple, ...] = ()

    def __post_init__(self):
        for group in (self.strict, self.weak, self.eq):
            for row in group:
                if len(row) != self.nvars:
                    raise ValueError("row length does not match nvars")


@dataclass(frozen=True)
class FarkasCertificate:
    """Row multipliers proving infeasibility.

    Nonnegative on strict/weak rows, free sign on equality rows, and the
    strict coefficients sum to 1, so the combined row is the zero functional
    while the combined right-hand side says 0 >= 1.
    """

    strict: tuple[Fraction, ...]
    weak: tuple[Fraction, ...]
    eq: tuple[Fraction, ...]


def verify_certificate(sys: LinSystem, cert: FarkasCertificate) -> bool:
    if any(c < 0 for c in cert.strict) or any(c < 0 for c in cert.weak):
        return False
    if sum(cert.strict) <= 0:
        return False
    combo = [Fraction(0)] * sys.nvars
    for groups, coeffs in (
        (sys.strict, cert.strict),
        (sys.weak, cert.weak),
        (sys.eq, cert.eq),
    ):
        for row, c in zip(groups, coeffs):
            if c:
                for j, v in enumerate(row):
                    combo[j] += c * Fraction(v)
    return all(v == 0 for v in combo)


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: QVec | None
    certificate: FarkasCertificate | None


class _Simplex:
    """Phase-1 simplex for {A z >= b, z free}, b entries in {0, 1}.

    Rows with b = 0 are stored negated so their surplus column can serve as
    the initial basic variable; only b = 1 rows need an artificial, and the
    phase-1 objective minimizes the sum of those.
    """

    def __init__(self, rows: list[tuple], rhs: list[int], nvars: int):
        self.m = len(rows)
        self.k = nvars
        self.rhs = list(rhs)
        m, k = self.m, self.k
        art_rows = [i for i, b in enumerate(rhs) if b]
        self.art_col = {i: 2 * k + m + p for p, i in enumerate(art_rows)}
        self.ncols = 2 * k + m + len(art_rows)
        # columns: z+ | z- | surplus | artificial, then rhs
        self.t = []
        self.basis = []
        for i, (row, b) in enumerate(zip(rows, rhs)):
            fr = [Fraction(x) for x in row]
            if b == 0:
                fr = [-x for x in fr]
            surplus = 1 if b == 0 else -1
            line = (
                fr
                + [-x for x in fr]
                + [Fraction(surplus) if j == i else Fraction(0) for j in range(m)]
                + [Fraction(0)] * len(art_rows)
                + [Fraction(b)]
            )
            if b == 0:
                self.basis.append(2 * k + i)
            else:
                line[self.art_col[i]] = Fraction(1)
                self.basis.append(self.art_col[i])
            self.t.append(line)
        # reduced costs for minimizing the artificial sum
        self.z = [Fraction(0)] * (self.ncols + 1)
        for j in range(self.ncols + 1):
            s = sum(self.t[i][j] for i in art_rows)
            c = Fraction(1) if 2 * k + m <= j < self.ncols else Fraction(0)
            self.z[j] = c - s

    def _pivot(self, row: int, col: int):
        t = self.t
        inv = 1 / t[row][col]
        t[row] = [x * inv for x in t[row]]
        prow = t[row]
        for i in range(self.m):
            if i != row and t[i][col]:
                f = t[i][col]
                t[i] = [x - f * y for x, y in zip(t[i], prow)]
        if self.z[col]:
            f = self.z[col]
            self.z = [x - f * y for x, y in zip(self.z, prow)]
        self.basis[row] = col

    def run(self):
        while True:
            enter = next((j for j in range(self.ncols) if self.z[j] < 0), None)
            if enter is None:
                break
            best = None
            for i in range(self.m):
                a = self.t[i][enter]
                if a > 0:
                    ratio = self.t[i][-1] / a
                    if best is None or ratio < best[0] or (
                        ratio == best[0] and self.basis[i] < self.basis[best[1]]
                    ):
                        best = (ratio, i)
            if best is None:
                raise RuntimeError("phase-1 objective cannot be unbounded")
            self._pivot(best[1], enter)
        return -self.z[-1]  # optimal artificial sum

    def witness(self) -> list[Fraction]:
        vals = [Fraction(0)] * self.ncols
        for i, b in enumerate(self.basis):
            vals[b] = self.t[i][-1]
        return [vals[j] - vals[self.k + j] for j in range(self.k)]

    def duals(self) -> list[Fraction]:
        """Farkas multipliers per input row, in the original orientation.

        For an artificial row the multiplier is 1 minus the artificial
        column's reduced cost; for a negated b = 0 row it is the reduced
        cost of its surplus column.
        """
        out = []
        for i in range(self.m):
            if self.rhs[i]:
                out.append(1 - self.z[self.art_col[i]])
            else:
                out.append(self.z[2 * self.k + i])
        return out


def solve_system(sys: LinSystem) -> LPResult:
    """Feasibility with witness, or a verified Farkas certificate.

    Equality rows are eliminated exactly before the simplex runs, and
    duplicate inequality rows are collapsed; certificates are mapped back to
    the original rows and checked before being returned.
    """
    n = sys.nvars
    if sys.eq:
        null = ex.rational_kernel_basis(sys.eq)
    else:
        null = [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    k = len(null)

    def project(row):
        return tuple(ex.dot(row, b) for b in null)

    reduced: list[tuple] = []
    rhs: list[int] = []
    backmap: list[tuple[str, int]] = []
    seen: dict[tuple, int] = {}
    for kind, rows, b in (("strict", sys.strict, 1), ("weak", sys.weak, 0)):
        for idx, row in enumerate(rows):
            pr = project(row)
            key = (b, pr)
            if all(x == 0 for x in pr):
                if b == 1:
                    # 0 >= 1 outright; certificate uses this row alone
                    cert = _lift_certificate(sys, {("strict", idx): Fraction(1)})
                    return LPResult(False, None, cert)
                continue
            if key not in seen:
                seen[key] = len(reduced)
                reduced.append(pr)
                rhs.append(b)
                backmap.append((kind, idx))

    if not reduced or not any(rhs):
        # no strict rows survive; the origin satisfies everything
        x = tuple(Fraction(0) for _ in range(n))
        return LPResult(True, x, None)

    # Homogenize: a scale variable y absorbs every >= 1 threshold, so the
    # simplex starts with a single artificial.  The system is conical, so
    # x/y maps solutions back.
    hrows = [pr + (-b,) for pr, b in zip(reduced, rhs)]
    hrows.append((Fraction(0),) * k + (Fraction(1),))
    hrhs = [0] * len(reduced) + [1]
    sx = _Simplex(hrows, hrhs, k + 1)
    opt = sx.run()
    if opt == 0:
        zy = sx.witness()
        scale = zy[k]
        assert scale >= 1
        z = [v / scale for v in zy[:k]]
        x = tuple(
            sum(z[i] * null[i][j] for i in range(k)) for j in range(n)
        )
        for row in sys.strict:
            assert ex.dot(row, x) >= 1
        for row in sys.weak:
            assert ex.dot(row, x) >= 0
        for row in sys.eq:
            assert ex.dot(row, x) == 0
        return LPResult(True, x, None)

    y = sx.duals()[: len(reduced)]
    coeffs: dict[tuple[str, int], Fraction] = {}
    for i, c in enumerate(y):
        if c:
            coeffs[backmap[i]] = coeffs.get(backmap[i], Fraction(0)) + c
    cert = _lift_certificate(sys, coeffs)
    return LPResult(False, None, cert)


def _lift_certificate(
    sys: LinSystem, ineq_coeffs: dict[tuple[str, int], Fraction]
) -> FarkasCertificate:
    """Extend inequality multipliers with equality multipliers and normalize."""
    n = sys.nvars
    combo = [Fraction(0)] * n
    for (kind, idx), c in ineq_coeffs.items():
        row = sys.strict[idx] if kind == "strict" else sys.weak[idx]
        for j, v in enumerate(row):
            combo[j] += c * Fraction(v)
    if sys.eq:
        cols = [{i: Fraction(row[j]) for i, row in enumerate(sys.eq) if row[j]}
                for j in range(n)]
        lam = ex.solve_sparse_rational(cols, [-v for v in combo], len(sys.eq))
        assert lam is not None, "residual functional must lie in the eq row space"
        eq_coeffs = list(lam)
    else:
        assert all(v == 0 for v in combo)
        eq_coeffs = []
    strict = [ineq_coeffs.get(("strict", i), Fraction(0)) for i in range(len(sys.strict))]
    weak = [ineq_coeffs.get(("weak", i), Fraction(0)) for i in range(len(sys.weak))]
    total = sum(strict)
    assert total > 0
    cert = FarkasCertificate(
        tuple(c / total for c in strict),
        tuple(c / total for c in weak),
        tuple(Fraction(c) / total for c in eq_coeffs),
    )
    assert verify_certificate(sys, cert)
    return cert


def feasible(sys: LinSystem) -> QVec | None:
    """Witness for the system, or None when it is infeasible."""
    return solve_system(sys).witness


def image_cone_is_zero(rows: Sequence[Sequence], nvars: int | None = None) -> bool:
    """Whether W x >= 0 forces W x = 0.

    Equivalently {W x : W x >= 0} = {0}: the system {W x >= 0,
    sum(W x) >= 1} must be infeasible, since any feasible point has some
    coordinate of W x strictly positive.
    """
    rows = [tuple(r) for r in rows]
    if nvars is None:
        if not rows:
            raise ValueError("nvars required when the row list is empty")
        nvars = len(rows[0])
    if nvars == 0 or not rows:
        return True
    total = tuple(sum(col) for col in zip(*rows))
    sys = LinSystem(nvars=nvars, strict=(total,), weak=tuple(rows))
    return feasible(sys) is None


def cone_is_zero(rows: Sequence[Sequence], nvars: int | None = None) -> bool:
    """Whether {x : W x >= 0} is exactly the origin.

    Two checks, both required: the nullspace of W must vanish (otherwise a
    line survives), and no feasible point may map to a nonzero W x
    (otherwise a genuine ray survives).
    """
    rows = [tuple(r) for r in rows]
    if nvars is None:
        if not rows:
            raise ValueError("nvars required when the row list is empty")
        nvars = len(rows[0])
    if nvars == 0:
        return True
    if not rows:
        return False
    if ex.rational_kernel_basis(rows):
        return False
    return image_cone_is_zero(rows, nvars)

"""Exact integer and rational linear algebra.

All arithmetic uses arbitrary-precision Python ints and fractions.Fraction;
nothing in this package ever touches floating point.  Lattice vectors are
plain tuples of ints, rational vectors tuples of Fractions, matrices are
sequences of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Vec = tuple[int, ...]
QVec = tuple[Fraction, ...]


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def vec_neg(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def is_zero_vec(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def content(u: Sequence[int]) -> int:
    """gcd of the entries, 0 for the zero vector."""
    g = 0
    for a in u:
        g = gcd(g, a)
    return g


def primitive(u: Sequence[int]) -> Vec:
    """Divide an integer vector by the gcd of its entries.

    The zero vector spans no ray, so it is rejected rather than returned
    unchanged.
    """
    g = content(u)
    if g == 0:
        raise ValueError("zero vector has no direction")
    return tuple(a // g for a in u)


def identity(k: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def mat_vec(a: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(dot(row, x) for row in a)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[dot(row, col) for col in bt] for row in a]


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form A = U * D * V.

    d holds the diagonal of D (length min(m, n)), nonnegative with
    d[i] dividing d[i+1].  u, v are unimodular; u_inv, v_inv their exact
    inverses, tracked during the reduction so no separate inversion is
    needed.
    """

    d: tuple[int, ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]
    u_inv: tuple[tuple[int, ...], ...]
    v_inv: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x != 0)


def smith_normal_form(a: Sequence[Sequence[int]]) -> SNFResult:
    """Diagonalize an integer matrix with unimodular row/column transforms.

    Pivoting always brings the smallest-magnitude nonzero entry of the
    remaining block to the pivot position, which keeps intermediate entries
    small at this scale.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [[int(x) for x in row] for row in a]
    for row in d:
        if len(row) != n:
            raise ValueError("ragged matrix")
    u, u_inv = identity(m), identity(m)
    v, v_inv = identity(n), identity(n)

    def row_add(i, j, k):  # row_i += k * row_j
        d[i] = [x + k * y for x, y in zip(d[i], d[j])]
        for r in range(m):
            u[r][j] -= k * u[r][i]
        u_inv[i] = [x + k * y for x, y in zip(u_inv[i], u_inv[j])]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        for r in range(m):
            u[r][i], u[r][j] = u[r][j], u[r][i]
        u_inv[i], u_inv[j] = u_inv[j], u_inv[i]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        for r in range(m):
            u[r][i] = -u[r][i]
        u_inv[i] = [-x for x in u_inv[i]]

    def col_add(j, i, k):  # col_j += k * col_i
        for r in range(m):
            d[r][j] += k * d[r][i]
        v[i] = [x - k * y for x, y in zip(v[i], v[j])]
        for r in range(n):
            v_inv[r][j] += k * v_inv[r][i]

    def col_swap(i, j):
        for r in range(m):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        v[i], v[j] = v[j], v[i]
        for r in range(n):
            v_inv[r][i], v_inv[r][j] = v_inv[r][j], v_inv[r][i]

    for t in range(min(m, n)):
        while True:
            # smallest |entry| != 0 in the trailing block
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = d[i][j]
                    if x and (best is None or abs(x) < abs(best[2])):
                        best = (i, j, x)
            if best is None:
                break
            bi, bj, _ = best
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                col_swap(t, bj)
            if d[t][t] < 0:
                row_neg(t)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    row_add(i, t, -(d[i][t] // p))
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    col_add(j, t, -(d[t][j] // p))
                    if d[t][j]:
                        dirty = True
            if dirty:
                continue  # a remainder became the new smallest entry
            # pivot must divide everything that is left
            off = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                 if d[i][j] % p),
                None,
            )
            if off is None:
                break
            row_add(t, off[0], 1)
        if t < min(m, n) and d[t][t] == 0:
            break

    diag = tuple(d[i][i] for i in range(min(m, n)))
    freeze = lambda mat: tuple(tuple(row) for row in mat)
    return SNFResult(diag, freeze(u), freeze(v), freeze(u_inv), freeze(v_inv))


def rank(a: Sequence[Sequence]) -> int:
    """Rank over Q, by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in a]
    if not rows:
        return 0
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / pr[c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        r += 1
        if r == len(rows):
            break
    return r


def solve_integral(a: Sequence[Sequence[int]], b: Sequence[int]) -> Vec | None:
    """One integral solution of A x = b, or None if none exists.

    Uses the Smith form: with A = U D V the system becomes D (V x) = U^-1 b,
    which is solvable over Z iff each diagonal entry divides its target and
    the rows beyond the rank have target 0.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != m:
        raise ValueError("rhs length mismatch")
    if m == 0:
        return (0,) * n
    snf = smith_normal_form(a)
    c = mat_vec(snf.u_inv, b)
    y = [0] * n
    k = min(m, n)
    for i in range(k):
        if snf.d[i] == 0:
            if c[i] != 0:
                return None
        else:
            q, r = divmod(c[i], snf.d[i])
            if r:
                return None
            y[i] = q
    for i in range(k, m):
        if c[i] != 0:
            return None
    return mat_vec(snf.v_inv, y)


def kernel_basis(a: Sequence[Sequence[int]]) -> list[Vec]:
    """Basis of the integer kernel lattice {x : A x = 0}.

    Kernels of integer matrices are saturated, so this basis spans the
    kernel over Q as well.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [tuple(row) for row in identity(n)]
    snf = smith_normal_form(a)
    k = min(m, n)
    cols = [j for j in range(n) if j >= k or snf.d[j] == 0]
    return [tuple(snf.v_inv[i][j] for i in range(n)) for j in cols]


def hnf_rows(rows: Sequence[Sequence[int]]) -> list[Vec]:
    """Row Hermite normal form; returns the nonzero rows.

    Pivots are positive and entries above each pivot are reduced into
    [0, pivot), so the output is a canonical basis of the row lattice.
    """
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return []
    n = len(mat[0])
    top = 0
    for c in range(n):
        while True:
            live = [i for i in range(top, len(mat)) if mat[i][c]]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(mat[i][c]))
            mat[top], mat[i0] = mat[i0], mat[top]
            if mat[top][c] < 0:
                mat[top] = [-x for x in mat[top]]
            p = mat[top][c]
            done = True
            for i in range(top + 1, len(mat)):
                if mat[i][c]:
                    q = mat[i][c] // p
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[top])]
                    if mat[i][c]:
                        done = False
            if done:
                break
        if top < len(mat) and mat[top][c]:
            p = mat[top][c]
            for i in range(top):
                q = mat[i][c] // p
                if q:
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[top])]
            top += 1
            if top == len(mat):
                break
    return [tuple(r) for r in mat[:top] if any(r)]


def reduce_mod_lattice(x: Sequence[int], hnf: Sequence[Sequence[int]]) -> Vec:
    """Canonical representative of x modulo the lattice spanned by HNF rows."""
    out = list(map(int, x))
    for row in hnf:
        c = next(j for j, v in enumerate(row) if v)
        q = out[c] // row[c]
        if q:
            out = [a - q * b for a, b in zip(out, row)]
    return tuple(out)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    if not rows:
        return [], []
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_rational(a: Sequence[Sequence], b: Sequence) -> QVec | None:
    """One rational solution of A x = b, or None if inconsistent."""
    m = len(a)
    n = len(a[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    rows, pivots = _rref(aug)
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        if c == n:
            return None  # 0 = nonzero
        x[c] = rows[r][n]
    # rows past the pivots are all-zero by construction
    return tuple(x)


def rational_kernel_basis(a: Sequence[Sequence]) -> list[QVec]:
    """Basis of the rational kernel {x in Q^n : A x = 0}."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    rows, pivots = _rref([[Fraction(x) for x in row] for row in a])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -rows[r][f]
        basis.append(tuple(vec))
    return basis


def solve_sparse_rational(
    rows: list[dict[int, Fraction]], rhs: list[Fraction], nvars: int
) -> list[Fraction] | None:
    """One solution of a sparse rational system, or None if inconsistent.

    Rows are {var index: coefficient} dicts.  Pivots prefer short rows and
    rarely-used variables to limit fill-in; free variables are set to 0.
    """
    work = [({k: Fraction(v) for k, v in row.items() if v}, Fraction(b))
            for row, b in zip(rows, rhs)]
    uses: dict[int, int] = {}
    for row, _ in work:
        for k in row:
            uses[k] = uses.get(k, 0) + 1
    pivots: list[tuple[int, dict[int, Fraction], Fraction]] = []
    remaining = list(range(len(work)))
    while remaining:
        remaining.sort(key=lambda i: len(work[i][0]))
        idx = remaining.pop(0)
        row, b = work[idx]
        if not row:
            if b:
                return None
            continue
        var = min(row, key=lambda k: (uses.get(k, 0), k))
        pivots.append((var, row, b))
        coef = row[var]
        for j in remaining:
            orow, ob = work[j]
            if var in orow:
                f = orow[var] / coef
                for k, val in row.items():
                    nv = orow.get(k, Fraction(0)) - f * val
                    if nv:
                        orow[k] = nv
                    elif k in orow:
                        del orow[k]
                        uses[k] = uses.get(k, 1) - 1
                work[j] = (orow, ob - f * b)
    x = [Fraction(0)] * nvars
    for var, row, b in reversed(pivots):
        s = b - sum(c * x[k] for k, c in row.items() if k != var)
        x[var] = s / row[var]
    return x

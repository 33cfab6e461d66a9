"""Exact dense linear algebra over Q and Q(i), plus integer lattice normal forms.

All elimination routines use a deterministic pivot rule (leftmost column,
smallest row index) so outputs are reproducible.  The generic routines work
for any field whose elements support +, -, *, / and truthiness (Fraction and
GaussianRational both do).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .rationals import GAUSS_ONE, GAUSS_ZERO, SymbolicVector

# ---------------------------------------------------------------------------
# generic field elimination


def rref_rows(rows, ncols, zero=Fraction(0)):
    """Reduced row echelon form.  Returns (new rows, pivot column list)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank_rows(rows, ncols, zero=Fraction(0)) -> int:
    _, pivots = rref_rows(rows, ncols, zero)
    return len(pivots)


def solve_rows(rows, ncols, rhs, zero=Fraction(0)):
    """Solve A x = rhs exactly; free variables are set to zero.

    Returns the solution as a list, or None when the system is inconsistent.
    """
    rows = list(rows)
    if len(rows) != len(rhs):
        raise ValueError("rhs length does not match row count")
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref_rows(aug, ncols)
    # inconsistency: pivot in the rhs column
    for row in red:
        if any(row[:ncols]):
            continue
        if row[ncols]:
            return None
    x = [zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def nullspace_rows(rows, ncols, zero=Fraction(0), one=Fraction(1)):
    """Basis of {x : A x = 0}, in deterministic (free-column) order."""
    red, pivots = rref_rows(rows, ncols, zero)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for i, c in enumerate(pivots):
            v[c] = -red[i][free]
        basis.append(v)
    return basis


def dot(u, v):
    acc = None
    for a, b in zip(u, v):
        acc = a * b if acc is None else acc + a * b
    return Fraction(0) if acc is None else acc


# ---------------------------------------------------------------------------
# the rational matrix surface type


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of exact rationals, entries stored row-major."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(Fraction(x) for r in rows for x in r)
        return cls(len(rows), cols, flat)

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[self.entries[i * self.cols + j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
        )

    def rank(self) -> int:
        return rank_rows(self.to_rows(), self.cols)

    def solve(self, rhs: Sequence) -> Optional[List[Fraction]]:
        return solve_rows(self.to_rows(), self.cols, [Fraction(b) for b in rhs])

    def nullspace(self) -> List[List[Fraction]]:
        return nullspace_rows(self.to_rows(), self.cols)

    def mul_vec(self, x: Sequence) -> List[Fraction]:
        x = [Fraction(v) for v in x]
        return [dot(self.row(i), x) for i in range(self.rows)]


def rank(m: RationalMatrix) -> int:
    return m.rank()


def solve(m: RationalMatrix, rhs: Sequence) -> Optional[List[Fraction]]:
    return m.solve(rhs)


def nullspace(m: RationalMatrix) -> List[List[Fraction]]:
    return m.nullspace()


# ---------------------------------------------------------------------------
# integer lattice normal forms


def _identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def hermite_normal_form(matrix: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Row Hermite normal form.  Returns (H, U) with H = U A, |det U| = 1.

    Convention: pivots positive, entries above a pivot reduced into [0, pivot).
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if a else 0
    u = _identity(m)

    def row_op(i, j, q):
        # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    row_op(i, r, a[i][c] // a[r][c])
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < m and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                if a[i][c]:
                    row_op(i, r, a[i][c] // a[r][c])
            r += 1
            if r == m:
                break
    return a, u


def smith_normal_form(
    matrix: Sequence[Sequence[int]],
) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """Smith normal form.  Returns (D, U, V) with D = U A V diagonal,
    positive diagonal entries forming a divisibility chain, det U, det V = +-1.
    """
    d = [[int(x) for x in row] for row in matrix]
    m = len(d)
    n = len(d[0]) if d else 0
    u = _identity(m)
    v = _identity(n)

    def row_sub(i, j, q):
        d[i] = [x - q * y for x, y in zip(d[i], d[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i, j, q):
        for row in d:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # locate smallest nonzero entry of the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    row_sub(i, t, d[i][t] // d[t][t])
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    col_sub(j, t, d[t][j] // d[t][t])
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # divisibility fix-up: pivot must divide the whole trailing block
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_sub(t, offender, -1)
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return d, u, v


def smith_invariants(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Invariant factors d_1 | d_2 | ... | d_r of an integer matrix."""
    d, _, _ = smith_normal_form(matrix)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i]:
            out.append(abs(d[i][i]))
    return out


def integer_inverse(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """Inverse of a unimodular integer matrix, computed exactly."""
    n = len(matrix)
    rows = [[Fraction(x) for x in row] for row in matrix]
    cols = []
    for j in range(n):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        x = solve_rows(rows, n, e)
        if x is None:
            raise ValueError("matrix is singular")
        cols.append(x)
    inv = [[cols[j][i] for j in range(n)] for i in range(n)]
    out = []
    for row in inv:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            irow.append(x.numerator)
        out.append(irow)
    return out


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    """Basis of the saturated lattice {x in Z^ncols : A x = 0}."""
    if not matrix:
        return _identity(ncols)
    transposed = [[row[j] for row in matrix] for j in range(ncols)]
    h, u = hermite_normal_form(transposed)
    return [u[i] for i in range(len(h)) if not any(h[i])]


def clear_denominators(vec: Sequence[Fraction]) -> List[int]:
    """Scale a rational vector by a positive rational into a primitive integer one."""
    vec = [Fraction(x) for x in vec]
    if not any(vec):
        return [0] * len(vec)
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return [x // g for x in ints]


def subspace_lattice_points(basis: Sequence[Sequence[Fraction]], ambient: int) -> List[List[int]]:
    """Integer basis of span(basis) intersected with Z^ambient.

    Computed by annihilating the subspace and taking the saturated integer
    kernel of the annihilator, then HNF-reducing for a canonical answer.
    """
    rows = [[Fraction(x) for x in v] for v in basis]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    annihilator = nullspace_rows(rows, ambient)
    if not annihilator:
        return _identity(ambient)
    c = [clear_denominators(row) for row in annihilator]
    kernel = integer_kernel(c, ambient)
    if not kernel:
        return []
    h, _ = hermite_normal_form(kernel)
    return [row for row in h if any(row)]


def symbolic_coefficient_matrix(vectors: Sequence[SymbolicVector]) -> RationalMatrix:
    """Stack per-symbol rational coordinate rows of symbol-extended vectors.

    A rational functional u annihilates every input vector iff u lies in the
    nullspace of the result (declared symbols are Q-linearly independent).
    """
    if not vectors:
        raise ValueError("need at least one vector")
    dim = vectors[0].dimension
    if any(v.dimension != dim for v in vectors):
        raise ValueError("vectors must share the ambient dimension")
    symbols = sorted(set().union(*(v.symbols() for v in vectors)))
    rows = []
    for v in vectors:
        for s in symbols:
            rows.append([v.coefficient(j, s) for j in range(dim)])
    if not rows:
        rows = [[Fraction(0)] * dim]
    return RationalMatrix.from_rows(rows, dim)


# complex helpers -----------------------------------------------------------


def gauss_rank(rows, ncols) -> int:
    return rank_rows(rows, ncols, GAUSS_ZERO)


def gauss_solve(rows, ncols, rhs):
    return solve_rows(rows, ncols, rhs, GAUSS_ZERO)


def gauss_nullspace(rows, ncols):
    return nullspace_rows(rows, ncols, GAUSS_ZERO, GAUSS_ONE)

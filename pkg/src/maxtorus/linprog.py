"""Exact rational linear programming and Fourier-Motzkin elimination.

The simplex is a plain two-phase tableau over Fractions with Bland's rule,
so it terminates on every input and every returned point satisfies the
constraints exactly.  Variables are free; internally each is split into a
difference of two non-negative columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

GE = "ge"
EQ = "eq"

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Constraint:
    coeffs: Tuple[Fraction, ...]
    rel: str  # GE means coeffs . x >= rhs; EQ means equality
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in (GE, EQ):
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        val = sum((c * v for c, v in zip(self.coeffs, x)), Fraction(0))
        return val == self.rhs if self.rel == EQ else val >= self.rhs


def constraint(coeffs, rel, rhs=0) -> Constraint:
    return Constraint(tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs))


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    constraints: Tuple[Constraint, ...]
    objective: Tuple[Fraction, ...]  # maximized

    def __post_init__(self):
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length mismatch")
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise ValueError("constraint length mismatch")


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[Tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None


def _simplex(tab, basis, ncols):
    """Minimize the phase objective stored in the last tableau row.

    Bland's rule: entering = lowest-index column with negative reduced cost,
    leaving = lexicographic-min ratio with lowest basic index tie-break.
    Returns 'optimal' or 'unbounded'.
    """
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        enter = None
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][ncols] / a
                key = (ratio, basis[i])
                if best is None or key < best:
                    best = key
                    leave = i
        if leave is None:
            return UNBOUNDED
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(len(tab)):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        basis[leave] = enter


def lp_solve(lp: LinearProgram) -> LPResult:
    """Exact two-phase simplex, maximizing lp.objective over free variables."""
    n = lp.num_vars
    cons = list(lp.constraints)
    m = len(cons)
    # columns: x+ (n), x- (n), surplus (one per GE row)
    n_surplus = sum(1 for c in cons if c.rel == GE)
    ncols = 2 * n + n_surplus
    rows = []
    s = 0
    for c in cons:
        row = [Fraction(0)] * ncols + [c.rhs]
        for j, v in enumerate(c.coeffs):
            row[j] = v
            row[n + j] = -v
        if c.rel == GE:
            row[2 * n + s] = Fraction(-1)
            s += 1
        if row[ncols] < 0:
            row = [-x for x in row]
        rows.append(row)

    # phase 1: artificial basis
    total = ncols + m
    tab = []
    for i, row in enumerate(rows):
        ext = row[:ncols] + [Fraction(0)] * m + [row[ncols]]
        ext[ncols + i] = Fraction(1)
        tab.append(ext)
    basis = [ncols + i for i in range(m)]
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        obj = [o - a for o, a in zip(obj, tab[i])]
    for j in range(ncols, total):
        obj[j] = Fraction(0)
    tab.append(obj)
    _simplex(tab, basis, total)
    if tab[-1][total] < 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis; drop redundant rows
    keep = []
    for i in range(m):
        if basis[i] >= ncols:
            piv_col = next((j for j in range(ncols) if tab[i][j]), None)
            if piv_col is None:
                continue  # redundant row
            piv = tab[i][piv_col]
            tab[i] = [x / piv for x in tab[i]]
            for k in range(len(tab)):
                if k != i and tab[k][piv_col]:
                    f = tab[k][piv_col]
                    tab[k] = [a - f * b for a, b in zip(tab[k], tab[i])]
            basis[i] = piv_col
        keep.append(i)

    # phase 2: strip artificial columns, install -objective (minimization)
    tab2 = [[tab[i][j] for j in range(ncols)] + [tab[i][total]] for i in keep]
    basis2 = [basis[i] for i in keep]
    cost = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        cost[j] = -lp.objective[j]
        cost[n + j] = lp.objective[j]
    for i, b in enumerate(basis2):
        if cost[b]:
            f = cost[b]
            row = tab2[i]
            cost = [a - f * r for a, r in zip(cost, row)]
    tab2.append(cost)
    status = _simplex(tab2, basis2, ncols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    xcols = [Fraction(0)] * ncols
    for i, b in enumerate(basis2):
        xcols[b] = tab2[i][ncols]
    x = tuple(xcols[j] - xcols[n + j] for j in range(n))
    value = sum((c * v for c, v in zip(lp.objective, x)), Fraction(0))
    for c in lp.constraints:
        if not c.satisfied_by(x):  # pragma: no cover - internal consistency
            raise AssertionError("simplex returned an infeasible point")
    # dual feasibility at termination: no negative reduced cost remained
    if any(tab2[-1][j] < 0 for j in range(ncols)):  # pragma: no cover
        raise AssertionError("simplex stopped without dual feasibility")
    return LPResult(OPTIMAL, x, value)


def lp_feasible(constraints: Sequence[Constraint], num_vars: int) -> Optional[Tuple[Fraction, ...]]:
    """Feasibility check; returns a feasible point or None."""
    lp = LinearProgram(num_vars, tuple(constraints), tuple([Fraction(0)] * num_vars))
    res = lp_solve(lp)
    return res.x if res.status == OPTIMAL else None


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination on systems  coeffs . x >= rhs


def _normalize_ineq(coeffs, rhs):
    lcm = 1
    for f in list(coeffs) + [rhs]:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in coeffs]
    r = int(rhs * lcm)
    g = abs(r)
    for x in ints:
        g = math.gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
        r = r // g
    return tuple(ints), r


def fm_eliminate(ineqs, var):
    """Eliminate one variable from a list of (coeffs, rhs) inequalities."""
    pos, neg, zero = [], [], []
    for coeffs, rhs in ineqs:
        c = coeffs[var]
        if c > 0:
            pos.append((coeffs, rhs))
        elif c < 0:
            neg.append((coeffs, rhs))
        else:
            zero.append((coeffs, rhs))
    out = {_normalize_ineq([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, rhs in zero}
    for pc, pr in pos:
        for nc, nr in neg:
            a = Fraction(pc[var])
            b = Fraction(-nc[var])
            comb = [b * Fraction(p) + a * Fraction(q) for p, q in zip(pc, nc)]
            rhs = b * Fraction(pr) + a * Fraction(nr)
            comb[var] = Fraction(0)
            if not any(comb) and rhs <= 0:
                continue  # trivially true
            out.add(_normalize_ineq(comb, rhs))
    return [(list(c), Fraction(r)) for c, r in sorted(out)]


def fm_feasible(ineqs, num_vars) -> bool:
    """Decide feasibility of coeffs . x >= rhs by eliminating every variable."""
    system = [([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, rhs in ineqs]
    for var in range(num_vars):
        system = fm_eliminate(system, var)
        for coeffs, rhs in system:
            if not any(coeffs) and rhs > 0:
                return False
    for coeffs, rhs in system:
        if rhs > 0:
            return False
    return True

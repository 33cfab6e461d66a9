"""Cones, fans, simplicial complexes, and their structural predicates.

Fans store a primitive integer ray matrix and maximal cones as 1-based ray
index sets.  Lower-dimensional cones are implicit.  All geometric predicates
are decided exactly (LP certificates, exact solves); completeness is the
wall condition cross-checked by seeded point sampling.
"""

from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linprog
from .linalg import (
    clear_denominators,
    dot,
    rank_rows,
    smith_invariants,
    solve_rows,
)
from .linprog import EQ, GE, Constraint
from .seeds import default_seed

Vector = Tuple[Fraction, ...]


def primitive(vec: Sequence[int]) -> Tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    vec = [int(v) for v in vec]
    g = 0
    for v in vec:
        g = math.gcd(g, abs(v))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(v // g for v in vec)


# ---------------------------------------------------------------------------
# simplicial complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """Maximal faces of a simplicial complex on {1..vertices}; ghost vertices
    (appearing in no face) are allowed and meaningful."""

    vertices: int
    facets: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        facets = tuple(tuple(sorted(set(int(i) for i in f))) for f in self.facets)
        facets = tuple(sorted(set(facets)))
        for f in facets:
            if f and (f[0] < 1 or f[-1] > self.vertices):
                raise ValueError("facet vertex out of range")
        sets = [set(f) for f in facets]
        for a, b in itertools.combinations(range(len(sets)), 2):
            if sets[a] <= sets[b] or sets[b] <= sets[a]:
                raise ValueError("maximal faces must not contain one another")
        object.__setattr__(self, "facets", facets)

    @property
    def used_vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(set().union(*map(set, self.facets)) if self.facets else set()))

    @property
    def ghost_vertices(self) -> Tuple[int, ...]:
        used = set(self.used_vertices)
        return tuple(i for i in range(1, self.vertices + 1) if i not in used)


# ---------------------------------------------------------------------------
# cone-level predicates (standalone generator lists)


def cone_is_strictly_convex(generators: Sequence[Sequence]) -> bool:
    """True iff the cone contains no line: no nontrivial vanishing
    non-negative combination of generators (exact LP)."""
    gens = [[Fraction(x) for x in g] for g in generators]
    if not gens:
        return True
    if any(not any(g) for g in gens):
        raise ValueError("generators must be nonzero")
    k = len(gens)
    n = len(gens[0])
    cons = []
    for j in range(n):
        cons.append(Constraint(tuple(g[j] for g in gens), EQ, Fraction(0)))
    for i in range(k):
        row = [Fraction(0)] * k
        row[i] = Fraction(1)
        cons.append(Constraint(tuple(row), GE, Fraction(0)))
    cons.append(Constraint(tuple([Fraction(1)] * k), GE, Fraction(1)))
    return linprog.lp_feasible(cons, k) is None


def cone_is_simplicial(generators: Sequence[Sequence]) -> bool:
    gens = [[Fraction(x) for x in g] for g in generators]
    if not gens:
        return True
    return rank_rows(gens, len(gens[0])) == len(gens)


def cone_is_regular(generators: Sequence[Sequence[int]]) -> bool:
    """True iff the generators extend to a basis of the integer lattice."""
    gens = [[int(x) for x in g] for g in generators]
    if not gens:
        return True
    if not cone_is_simplicial(gens):
        return False
    return all(d == 1 for d in smith_invariants(gens))


def cone_contains(generators: Sequence[Sequence], point: Sequence) -> bool:
    """Exact membership in the cone spanned by arbitrary generators (LP)."""
    gens = [[Fraction(v) for v in g] for g in generators]
    x = [Fraction(v) for v in point]
    if not gens:
        return not any(x)
    k = len(gens)
    cons = []
    for j in range(len(x)):
        cons.append(Constraint(tuple(g[j] for g in gens), EQ, x[j]))
    for i in range(k):
        row = [Fraction(0)] * k
        row[i] = Fraction(1)
        cons.append(Constraint(tuple(row), GE, Fraction(0)))
    return linprog.lp_feasible(cons, k) is not None


def dual_cone(generators: Sequence[Sequence], dim: Optional[int] = None) -> Tuple[Tuple[int, ...], ...]:
    """Generators of the dual cone, by Fourier-Motzkin elimination.

    The rows double as an irredundant halfspace description <u, x> >= 0 of
    the input cone.
    """
    gens = [[Fraction(x) for x in g] for g in generators]
    if dim is None:
        if not gens:
            raise ValueError("dimension required for the zero cone")
        dim = len(gens[0])
    k = len(gens)
    nvars = dim + k
    ineqs = []
    # x - sum mu_i a_i = 0, encoded as two inequalities per coordinate
    for j in range(dim):
        row = [Fraction(0)] * nvars
        row[j] = Fraction(1)
        for i in range(k):
            row[dim + i] = -gens[i][j]
        ineqs.append((row, Fraction(0)))
        ineqs.append(([-c for c in row], Fraction(0)))
    for i in range(k):
        row = [Fraction(0)] * nvars
        row[dim + i] = Fraction(1)
        ineqs.append((row, Fraction(0)))
    for var in range(dim, nvars):
        ineqs = linprog.fm_eliminate(ineqs, var)
    rows = set()
    for coeffs, rhs in ineqs:
        assert rhs == 0
        head = [Fraction(c) for c in coeffs[:dim]]
        if any(head):
            rows.add(tuple(clear_denominators(head)))
    ordered = sorted(rows)
    # strip rows that are non-negative combinations of the others
    irredundant = []
    for i, row in enumerate(ordered):
        others = [r for j, r in enumerate(ordered) if j != i and (r in irredundant or j > i)]
        if not cone_contains(others, row):
            irredundant.append(row)
    return tuple(irredundant)


# ---------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Fan:
    """Fan given by a primitive integer ray matrix and maximal cones as
    sorted 1-based ray index tuples."""

    dim: int
    rays: Tuple[Tuple[int, ...], ...]
    max_cones: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rays = []
        for r in self.rays:
            r = tuple(int(x) for x in r)
            if len(r) != self.dim:
                raise ValueError("ray dimension mismatch")
            p = primitive(r)
            if p != r:
                warnings.warn("non-primitive ray normalized", stacklevel=3)
            rays.append(p)
        if len(set(rays)) != len(rays):
            raise ValueError("repeated ray")
        cones = tuple(sorted(set(tuple(sorted(set(int(i) for i in c))) for c in self.max_cones)))
        for c in cones:
            if c and (c[0] < 1 or c[-1] > len(rays)):
                raise ValueError("cone ray index out of range")
        sets = [set(c) for c in cones]
        for a, b in itertools.combinations(range(len(sets)), 2):
            if sets[a] <= sets[b] or sets[b] <= sets[a]:
                raise ValueError("maximal cone contained in another")
        object.__setattr__(self, "rays", tuple(rays))
        object.__setattr__(self, "max_cones", cones)

    def cone_generators(self, cone: Sequence[int]) -> List[Tuple[int, ...]]:
        return [self.rays[i - 1] for i in cone]


@dataclass(frozen=True)
class FanReport:
    valid: bool
    violations: Tuple[dict, ...]


def _separating_functional(fan: Fan, c1, c2) -> Optional[Tuple[Fraction, ...]]:
    """Exact LP for u vanishing on shared rays, positive on the rest of c1,
    negative on the rest of c2.  Existence certifies face-compatibility."""
    shared = sorted(set(c1) & set(c2))
    only1 = [i for i in c1 if i not in shared]
    only2 = [i for i in c2 if i not in shared]
    cons = []
    for i in shared:
        cons.append(Constraint(tuple(Fraction(x) for x in fan.rays[i - 1]), EQ, Fraction(0)))
    for i in only1:
        cons.append(Constraint(tuple(Fraction(x) for x in fan.rays[i - 1]), GE, Fraction(1)))
    for i in only2:
        cons.append(Constraint(tuple(Fraction(-x) for x in fan.rays[i - 1]), GE, Fraction(1)))
    return linprog.lp_feasible(cons, fan.dim)


def fan_validate(fan: Fan) -> FanReport:
    """Check fan axioms: strictly convex maximal cones and pairwise
    face-compatible intersections, each certified by an exact LP."""
    violations = []
    for c in fan.max_cones:
        if not cone_is_strictly_convex(fan.cone_generators(c)):
            violations.append({"kind": "cone_not_strictly_convex", "cone": list(c)})
    for c1, c2 in itertools.combinations(fan.max_cones, 2):
        if _separating_functional(fan, c1, c2) is None:
            violations.append(
                {"kind": "intersection_not_a_face", "pair": [list(c1), list(c2)]}
            )
    violations.sort(key=lambda v: (v["kind"], str(v)))
    return FanReport(not violations, tuple(violations))


def fan_is_simplicial(fan: Fan) -> bool:
    return all(cone_is_simplicial(fan.cone_generators(c)) for c in fan.max_cones)


def _random_rational_point(rng: random.Random, dim: int) -> List[Fraction]:
    return [Fraction(rng.randint(-997, 997), rng.randint(1, 41)) for _ in range(dim)]


def point_in_cone_simplicial(fan: Fan, cone: Sequence[int], x: Sequence[Fraction]) -> bool:
    """Exact membership for a simplicial cone of the fan."""
    gens = fan.cone_generators(cone)
    if not gens:
        return not any(x)
    cols = [[Fraction(g[j]) for g in gens] for j in range(fan.dim)]
    mu = solve_rows(cols, len(gens), [Fraction(v) for v in x])
    return mu is not None and all(m >= 0 for m in mu)


def point_in_support(fan: Fan, x: Sequence) -> bool:
    """True iff x lies in some cone of the (simplicial) fan, by exact solve."""
    x = [Fraction(v) for v in x]
    return any(point_in_cone_simplicial(fan, c, x) for c in fan.max_cones)


def fan_is_complete(fan: Fan, seed: Optional[int] = None) -> bool:
    """Wall condition + dual-graph connectedness for pure simplicial fans,
    cross-checked by membership of 2n+1 seeded rational points."""
    report = fan_validate(fan)
    if not report.valid:
        raise ValueError("not a valid fan")
    if not fan_is_simplicial(fan):
        raise ValueError("completeness check requires a simplicial fan")
    n = fan.dim
    if not fan.max_cones:
        return False
    verdict = True
    if any(len(c) != n for c in fan.max_cones):
        verdict = False
    if verdict:
        walls: Dict[Tuple[int, ...], List[int]] = {}
        for ci, c in enumerate(fan.max_cones):
            for facet in itertools.combinations(c, n - 1):
                walls.setdefault(facet, []).append(ci)
        if any(len(owners) != 2 for owners in walls.values()):
            verdict = False
        else:
            # dual graph connectedness
            adj: Dict[int, set] = {i: set() for i in range(len(fan.max_cones))}
            for owners in walls.values():
                a, b = owners
                adj[a].add(b)
                adj[b].add(a)
            seen = {0}
            stack = [0]
            while stack:
                for nb in adj[stack.pop()]:
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            if len(seen) != len(fan.max_cones):
                verdict = False
    rng = random.Random(default_seed() if seed is None else seed)
    if verdict:
        for _ in range(2 * n + 1):
            x = _random_rational_point(rng, n)
            if not point_in_support(fan, x):
                raise RuntimeError("completeness cross-check failed: sampled point outside support")
    return verdict


def fan_from_complex(complex_: SimplicialComplex) -> Fan:
    """Fan on coordinate rays e_i in R^m; ghost vertices contribute no ray."""
    m = complex_.vertices
    used = complex_.used_vertices
    ray_index = {v: i + 1 for i, v in enumerate(used)}
    rays = []
    for v in used:
        e = [0] * m
        e[v - 1] = 1
        rays.append(tuple(e))
    cones = tuple(tuple(ray_index[v] for v in f) for f in complex_.facets)
    return Fan(m, tuple(rays), cones)


def underlying_complex(fan: Fan) -> SimplicialComplex:
    """Vertices = rays, faces = cone index sets (fan must be simplicial)."""
    if not fan_is_simplicial(fan):
        raise ValueError("underlying complex requires a simplicial fan")
    return SimplicialComplex(len(fan.rays), fan.max_cones)

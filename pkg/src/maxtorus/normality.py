"""Decision procedures for normal and weakly normal complete fans.

Support numbers b_i index the primitive ray generators; each full
dimensional cone sigma gets the vertex u_sigma solving
<v_i, u> + b_i = 0 over its generators.  Strictness and full
dimensionality are encoded as slack >= 1, which is equivalent by
positive homogeneity of the constraint systems.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linprog
from .fans import Fan, fan_is_complete, fan_is_simplicial
from .linalg import dot, solve_rows
from .linprog import EQ, GE, Constraint, LinearProgram

NORMAL = "normal"
WEAKLY_NORMAL = "weakly_normal"


@dataclass(frozen=True)
class NormalityCertificate:
    b: Tuple[Fraction, ...]
    vertices: Tuple[Tuple[Tuple[int, ...], Tuple[Fraction, ...]], ...]

    def vertex_map(self) -> Dict[Tuple[int, ...], Tuple[Fraction, ...]]:
        return dict(self.vertices)


def _require_complete(fan: Fan, seed=None):
    if not fan_is_complete(fan, seed=seed):
        raise ValueError("normality is defined for complete fans only")


def fan_vertices(fan: Fan, b: Sequence) -> Dict[Tuple[int, ...], Tuple[Fraction, ...]]:
    """Exact vertex u_sigma per maximal cone: <v_i, u> = -b_i over its rays."""
    b = [Fraction(x) for x in b]
    if len(b) != len(fan.rays):
        raise ValueError("need one support number per ray")
    out = {}
    for cone in fan.max_cones:
        if len(cone) != fan.dim:
            raise ValueError("every maximal cone must have exactly dim rays")
        rows = [[Fraction(x) for x in fan.rays[i - 1]] for i in cone]
        rhs = [-b[i - 1] for i in cone]
        u = solve_rows(rows, fan.dim, rhs)
        if u is None:
            raise ValueError("singular vertex system (fan cannot be complete)")
        out[cone] = tuple(u)
    return out


def check_certificate(
    fan: Fan, b: Sequence, mode: str, seed=None
) -> Tuple[bool, List[dict]]:
    """Exact verification of a (weak) normality certificate.

    normal: slack <v_i, u_sigma> + b_i >= 0 with equality iff i in sigma.
    weakly_normal: all slacks >= 0, plus full dimensionality of the
    polytope, certified by an LP interior point.
    """
    if mode not in (NORMAL, WEAKLY_NORMAL):
        raise ValueError(f"unknown mode {mode!r}")
    _require_complete(fan, seed=seed)
    b = [Fraction(x) for x in b]
    vertices = fan_vertices(fan, b)
    violations = []
    for cone, u in sorted(vertices.items()):
        for i, ray in enumerate(fan.rays, start=1):
            slack = dot([Fraction(x) for x in ray], list(u)) + b[i - 1]
            if slack < 0:
                violations.append({"cone": list(cone), "ray": i, "kind": "negative_slack"})
            elif mode == NORMAL and slack == 0 and i not in cone:
                violations.append({"cone": list(cone), "ray": i, "kind": "zero_slack_off_cone"})
            elif mode == NORMAL and slack != 0 and i in cone:
                violations.append({"cone": list(cone), "ray": i, "kind": "nonzero_slack_on_cone"})
    if mode == WEAKLY_NORMAL:
        # maximize t subject to <v_i, u> + b_i >= t; interior iff optimum > 0
        n = fan.dim
        cons = []
        for i, ray in enumerate(fan.rays):
            coeffs = [Fraction(x) for x in ray] + [Fraction(-1)]
            cons.append(Constraint(tuple(coeffs), GE, -b[i]))
        obj = tuple([Fraction(0)] * n + [Fraction(1)])
        res = linprog.lp_solve(LinearProgram(n + 1, tuple(cons), obj))
        if res.status != linprog.OPTIMAL or res.value <= 0:
            violations.append({"kind": "polytope_not_full_dimensional"})
    return (not violations, violations)


def _certificate_constraints(fan: Fan, slack: Fraction) -> List[Constraint]:
    """Inequalities linear in b: <v_i, u_sigma(b)> + b_i >= slack for every
    maximal cone sigma and ray i outside sigma (inside rays vanish exactly)."""
    m = len(fan.rays)
    cons = []
    for cone in fan.max_cones:
        rows = [[Fraction(x) for x in fan.rays[i - 1]] for i in cone]
        cols = [[rows[r][c] for r in range(len(rows))] for c in range(fan.dim)]
        for i, ray in enumerate(fan.rays, start=1):
            if i in cone:
                continue
            # w solves V_sigma^T w = v_i, so <v_i, u_sigma(b)> = -w . b_sigma
            w = solve_rows(cols, len(cone), [Fraction(x) for x in ray])
            if w is None:
                raise ValueError("singular cone system")
            coeffs = [Fraction(0)] * m
            coeffs[i - 1] = Fraction(1)
            for idx, cone_ray in enumerate(cone):
                coeffs[cone_ray - 1] -= w[idx]
            cons.append(Constraint(tuple(coeffs), GE, slack))
    return cons


def decide_normal(fan: Fan, seed=None) -> Optional[NormalityCertificate]:
    """Find support numbers making the fan normal, or None.

    The strict conditions are homogeneous in b, so feasibility at slack 1
    is equivalent to strict feasibility.
    """
    _require_complete(fan, seed=seed)
    m = len(fan.rays)
    cons = _certificate_constraints(fan, Fraction(1))
    x = linprog.lp_feasible(cons, m)
    if x is None:
        return None
    vertices = fan_vertices(fan, x)
    ok, violations = check_certificate(fan, x, NORMAL, seed=seed)
    if not ok:  # pragma: no cover - solver output is self-verified
        raise AssertionError(f"normality certificate failed verification: {violations}")
    return NormalityCertificate(tuple(x), tuple(sorted(vertices.items())))


def decide_weakly_normal(fan: Fan, seed=None) -> Optional[NormalityCertificate]:
    """Find support numbers making the fan weakly normal, or None.

    Joint feasibility in (b, u*): all vertex slacks >= 0 plus an interior
    point u* with every slack >= 1.
    """
    _require_complete(fan, seed=seed)
    m = len(fan.rays)
    n = fan.dim
    cons = []
    for c in _certificate_constraints(fan, Fraction(0)):
        cons.append(Constraint(tuple(list(c.coeffs) + [Fraction(0)] * n), GE, c.rhs))
    for i, ray in enumerate(fan.rays):
        coeffs = [Fraction(0)] * m
        coeffs[i] = Fraction(1)
        cons.append(Constraint(tuple(coeffs + [Fraction(x) for x in ray]), GE, Fraction(1)))
    x = linprog.lp_feasible(cons, m + n)
    if x is None:
        return None
    b = x[:m]
    vertices = fan_vertices(fan, b)
    ok, violations = check_certificate(fan, b, WEAKLY_NORMAL, seed=seed)
    if not ok:  # pragma: no cover
        raise AssertionError(f"weak normality certificate failed verification: {violations}")
    return NormalityCertificate(tuple(b), tuple(sorted(vertices.items())))

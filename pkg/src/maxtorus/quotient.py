"""Validation of the two quotient constructions, foliation data, the
Cox-Batyrev style lift between them, and the divisor-theorem hypotheses.

A complex subspace h of the complexified torus Lie algebra is stored by an
exact Gaussian-rational basis.  The group-level conditions are decided by
lattice arithmetic under the project-wide convention that the exponential
sends x to (e^{2 pi i x_j})_j, so its kernel is Z^m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .fans import (
    Fan,
    SimplicialComplex,
    cone_is_regular,
    fan_from_complex,
    fan_is_complete,
    fan_validate,
    underlying_complex,
)
from .linalg import (
    clear_denominators,
    dot,
    gauss_nullspace,
    gauss_rank,
    gauss_solve,
    integer_inverse,
    nullspace_rows,
    rank_rows,
    rref_rows,
    smith_normal_form,
    solve_rows,
    subspace_lattice_points,
    symbolic_coefficient_matrix,
)
from .rationals import GAUSS_ZERO, GaussianRational, SymbolicVector, gauss

# condition codes -----------------------------------------------------------

COND_A_H_CAP_T = "COND_A_H_CAP_T"
COND_A_P_NOT_INJECTIVE = "COND_A_P_NOT_INJECTIVE"
COND_A_SUBTORUS = "COND_A_SUBTORUS"
COND_A_NON_INTEGRAL_LIFT = "COND_A_NON_INTEGRAL_LIFT"
COND_B_RAY_COLLAPSED = "COND_B_RAY_COLLAPSED"
COND_B_RAYS_COINCIDE = "COND_B_RAYS_COINCIDE"
COND_B_CONE_NOT_INJECTIVE = "COND_B_CONE_NOT_INJECTIVE"
COND_B_PROJECTED_NOT_FAN = "COND_B_PROJECTED_NOT_FAN"
COND_B_NOT_COMPLETE = "COND_B_NOT_COMPLETE"
FAN_INVALID = "FAN_INVALID"
CONE_NOT_REGULAR = "CONE_NOT_REGULAR"

CONDITION_NAMES = {
    COND_A_H_CAP_T: "Construction II (a): h intersects t",
    COND_A_P_NOT_INJECTIVE: "Construction II (a): p restricted to h is not injective",
    COND_A_SUBTORUS: "Construction I (a): h meets a coordinate subtorus algebra",
    COND_A_NON_INTEGRAL_LIFT: "Construction I (a): group-level intersection is nontrivial",
    COND_B_RAY_COLLAPSED: "Construction (b): a ray projects to zero",
    COND_B_RAYS_COINCIDE: "Construction (b): projected rays coincide",
    COND_B_CONE_NOT_INJECTIVE: "Construction (b): projection not injective on a cone",
    COND_B_PROJECTED_NOT_FAN: "Construction (b): projected cones do not form a fan",
    COND_B_NOT_COMPLETE: "Construction (b): projected fan not complete",
    FAN_INVALID: "input fan violates the fan axioms",
    CONE_NOT_REGULAR: "a cone is not regular (toric variety would be singular)",
}


@dataclass(frozen=True)
class ConditionFailure:
    code: str
    detail: dict = field(default_factory=dict)

    @property
    def condition_name(self) -> str:
        return CONDITION_NAMES.get(self.code, self.code)


# subspace types ------------------------------------------------------------


@dataclass(frozen=True)
class ComplexSubspace:
    """Complex subspace of C^ambient with an exact Gaussian-rational basis."""

    ambient: int
    basis: Tuple[Tuple[GaussianRational, ...], ...]

    def __post_init__(self):
        basis = []
        for v in self.basis:
            v = tuple(x if isinstance(x, GaussianRational) else gauss(x) for x in v)
            if len(v) != self.ambient:
                raise ValueError("basis vector dimension mismatch")
            basis.append(v)
        if basis and gauss_rank([list(v) for v in basis], self.ambient) != len(basis):
            raise ValueError("basis is not linearly independent over C")
        object.__setattr__(self, "basis", tuple(basis))

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class SymbolicSubspace:
    """Subspace data with symbol-extended (irrational) coordinates; each
    basis vector is a (real part, imaginary part) pair of symbolic vectors."""

    ambient: int
    symbols: int
    basis: Tuple[Tuple[SymbolicVector, SymbolicVector], ...]

    def __post_init__(self):
        for re, im in self.basis:
            if re.dimension != self.ambient or im.dimension != self.ambient:
                raise ValueError("basis vector dimension mismatch")

    @property
    def dim(self) -> int:
        return len(self.basis)


Subspace = Union[ComplexSubspace, SymbolicSubspace]


def _require_rational(h: Subspace, what: str) -> ComplexSubspace:
    if isinstance(h, SymbolicSubspace):
        raise ValueError(f"{what} requires rational data")
    return h


# descriptors ---------------------------------------------------------------


@dataclass(frozen=True)
class ManifoldDescriptor:
    """Numeric profile of the quotient manifold.

    The maximality identity 2 dim_C M = dim T + max stabilizer dim holds
    once the globally ineffective part of the torus action is subtracted;
    ineffectivity_dim = 2 dim h - dim p(h) is zero whenever p restricted
    to h is injective (always, under the fan-based construction).
    """

    dim_C_M: int
    dim_T: int
    max_stabilizer_dim: int
    foliation_dim: int
    construction: str  # "I" or "II"
    conditions: Tuple[Tuple[str, bool], ...] = ()
    ineffectivity_dim: int = 0

    def __post_init__(self):
        lhs = 2 * self.dim_C_M
        rhs = self.dim_T - self.ineffectivity_dim + self.max_stabilizer_dim
        if lhs != rhs:
            raise ValueError("maximality identity 2 dim_C M = dim T + dim T_x violated")


@dataclass(frozen=True)
class ValidationReport:
    construction: str
    ok: bool
    descriptor: Optional[ManifoldDescriptor]
    failures: Tuple[ConditionFailure, ...]


@dataclass(frozen=True)
class FoliationData:
    conjugate_basis: Tuple[Tuple[GaussianRational, ...], ...]
    intersection_dim: int
    leaf_dim: int
    discrete: bool


@dataclass(frozen=True)
class LiftResult:
    complex_: SimplicialComplex
    subspace: ComplexSubspace
    ghosts: int
    invariant_factors: Tuple[int, ...]


# core subspace operations --------------------------------------------------


def projection_p(h: ComplexSubspace) -> List[List[Fraction]]:
    """Rational basis of p(h) = {Re x : x in h}, the real span of
    {Re v, Im v} over the basis (i v lies in h as well)."""
    h = _require_rational(h, "projection p")
    rows = []
    for v in h.basis:
        rows.append([x.re for x in v])
        rows.append([x.im for x in v])
    red, pivots = rref_rows(rows, h.ambient)
    return [red[i] for i in range(len(pivots))]


def check_h_cap_t(h: ComplexSubspace) -> Tuple[List[List[Fraction]], List[List[Fraction]]]:
    """Exact bases of h n t and h n it (empty lists mean the conditions hold)."""
    h = _require_rational(h, "intersection with t")
    r = h.dim
    if r == 0:
        return [], []
    # x = sum (s_j + i t_j) v_j; parameters (s, t) in R^{2r}
    im_rows = []
    re_rows = []
    for k in range(h.ambient):
        im_rows.append([h.basis[j][k].im for j in range(r)] + [h.basis[j][k].re for j in range(r)])
        re_rows.append([h.basis[j][k].re for j in range(r)] + [-h.basis[j][k].im for j in range(r)])

    def expand(params, take_real):
        out = []
        for p in params:
            s, t = p[:r], p[r:]
            vec = []
            for k in range(h.ambient):
                re = sum((s[j] * h.basis[j][k].re - t[j] * h.basis[j][k].im for j in range(r)), Fraction(0))
                im = sum((s[j] * h.basis[j][k].im + t[j] * h.basis[j][k].re for j in range(r)), Fraction(0))
                vec.append(re if take_real else im)
            out.append(vec)
        return [v for v in out if any(v)]

    real_part = expand(nullspace_rows(im_rows, 2 * r), take_real=True)
    imag_part = expand(nullspace_rows(re_rows, 2 * r), take_real=False)
    return real_part, imag_part


def quotient_map_q(n: int, p_h: Sequence[Sequence[Fraction]], reverse_pivots: bool = False) -> List[List[Fraction]]:
    """Matrix of q: R^n -> R^n/p(h); rows form a deterministic basis of the
    annihilator of p(h).  reverse_pivots switches to a second deterministic
    choice (used to test choice-independence of the verdicts)."""
    rows = [[Fraction(x) for x in v] for v in p_h]
    if not rows:
        rows = []
    if rows and any(len(r) != n for r in rows):
        raise ValueError("p(h) basis dimension mismatch")
    if not rows:
        basis = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        return basis
    if reverse_pivots:
        rows = [list(reversed(r)) for r in rows]
        basis = nullspace_rows(rows, n)
        return [list(reversed(v)) for v in basis]
    return nullspace_rows(rows, n)


def _apply_q(q: Sequence[Sequence[Fraction]], vec: Sequence) -> List[Fraction]:
    v = [Fraction(x) for x in vec]
    return [dot(row, v) for row in q]


def project_fan(fan: Fan, q: Sequence[Sequence[Fraction]]) -> Tuple[Optional[Fan], List[ConditionFailure]]:
    """Project each ray and cone through q; report the first structural
    obstruction to q(fan) being a fan mapped onto bijectively."""
    failures: List[ConditionFailure] = []
    d = len(q)
    if d == 0:
        if fan.rays:
            return None, [ConditionFailure(COND_B_RAY_COLLAPSED, {"ray": 1})]
        return Fan(0, (), fan.max_cones), []
    proj_rays = []
    for i, ray in enumerate(fan.rays, start=1):
        img = _apply_q(q, ray)
        if not any(img):
            return None, [ConditionFailure(COND_B_RAY_COLLAPSED, {"ray": i})]
        proj_rays.append(tuple(clear_denominators(img)))
    for (i, a), (j, b) in itertools.combinations(enumerate(proj_rays, start=1), 2):
        if a == b:
            return None, [ConditionFailure(COND_B_RAYS_COINCIDE, {"rays": [i, j]})]
    for cone in fan.max_cones:
        gens = [[Fraction(x) for x in fan.rays[i - 1]] for i in cone]
        imgs = [_apply_q(q, g) for g in gens]
        if rank_rows(imgs, d) != len(gens):
            return None, [ConditionFailure(COND_B_CONE_NOT_INJECTIVE, {"cone": list(cone)})]
    try:
        projected = Fan(d, tuple(proj_rays), fan.max_cones)
    except ValueError as exc:
        return None, [ConditionFailure(COND_B_PROJECTED_NOT_FAN, {"reason": str(exc)})]
    return projected, failures


def check_condition_b(fan: Fan, h: ComplexSubspace, reverse_pivots: bool = False):
    """Decide condition (b): q maps the fan bijectively onto a complete fan.

    Returns (ok, failures, projected_fan, q).
    """
    h = _require_rational(h, "quotient map")
    p_h = projection_p(h)
    q = quotient_map_q(fan.dim, p_h, reverse_pivots=reverse_pivots)
    projected, failures = project_fan(fan, q)
    if projected is None:
        return False, failures, None, q
    report = fan_validate(projected)
    if not report.valid:
        failures.append(
            ConditionFailure(COND_B_PROJECTED_NOT_FAN, {"violations": list(report.violations)})
        )
        return False, failures, projected, q
    if not fan_is_complete(projected):
        failures.append(ConditionFailure(COND_B_NOT_COMPLETE, {}))
        return False, failures, projected, q
    return True, [], projected, q


def check_condition_a_I(complex_: SimplicialComplex, h: ComplexSubspace):
    """Decide condition (a) of the simplicial-complex construction at the
    group level: for every maximal face I, elements of h exponentiating into
    the coordinate subtorus indexed by I must exponentiate to the identity.

    Returns (ok, per-face failure list).
    """
    h = _require_rational(h, "condition (a)")
    m = complex_.vertices
    if h.ambient != m:
        raise ValueError("subspace ambient dimension must match the vertex count")
    r = h.dim
    failures: List[ConditionFailure] = []
    faces = list(complex_.facets) if complex_.facets else [()]
    for face in faces:
        if r == 0:
            continue
        inside = set(face)
        out = [k for k in range(m) if (k + 1) not in inside]
        # (1) h must miss the complex coordinate subspace C^I
        complex_rows = [[h.basis[j][k] for j in range(r)] for k in out]
        if gauss_nullspace(complex_rows, r):
            failures.append(ConditionFailure(COND_A_SUBTORUS, {"face": list(face)}))
            continue
        # (2) real solutions with integral outside coordinates must be integral
        im_rows = []
        for k in out:
            im_rows.append(
                [h.basis[j][k].im for j in range(r)] + [h.basis[j][k].re for j in range(r)]
            )
        params = nullspace_rows(im_rows, 2 * r)
        xs = []
        for p in params:
            s, t = p[:r], p[r:]
            vec = []
            for k in range(m):
                re = sum((s[j] * h.basis[j][k].re - t[j] * h.basis[j][k].im for j in range(r)), Fraction(0))
                im = sum((s[j] * h.basis[j][k].im + t[j] * h.basis[j][k].re for j in range(r)), Fraction(0))
                vec.append((re, im))
            xs.append(vec)
        projections = [[x[k][0] for k in out] for x in xs]
        lattice = subspace_lattice_points(projections, len(out))
        proj_cols = [[projections[l][k] for l in range(len(xs))] for k in range(len(out))]
        for point in lattice:
            mu = solve_rows(proj_cols, len(xs), [Fraction(c) for c in point])
            if mu is None:  # pragma: no cover - lattice lies in the projection
                raise AssertionError("lattice point outside projected subspace")
            integral = True
            for k in range(m):
                re = sum((mu[l] * xs[l][k][0] for l in range(len(xs))), Fraction(0))
                im = sum((mu[l] * xs[l][k][1] for l in range(len(xs))), Fraction(0))
                if im != 0 or re.denominator != 1:
                    integral = False
                    break
            if not integral:
                failures.append(
                    ConditionFailure(
                        COND_A_NON_INTEGRAL_LIFT, {"face": list(face), "lattice_point": list(point)}
                    )
                )
                break
    return (not failures, failures)


# construction validators ---------------------------------------------------


def validate_construction_II(fan: Fan, h: ComplexSubspace) -> ValidationReport:
    """Validate the fan-plus-subspace data: regular valid fan, h n t = 0,
    p injective on h, and condition (b)."""
    failures: List[ConditionFailure] = []
    report = fan_validate(fan)
    if not report.valid:
        failures.append(ConditionFailure(FAN_INVALID, {"violations": list(report.violations)}))
    for cone in fan.max_cones:
        if not cone_is_regular(fan.cone_generators(cone)):
            failures.append(ConditionFailure(CONE_NOT_REGULAR, {"cone": list(cone)}))
    if failures:
        return ValidationReport("II", False, None, tuple(failures))
    if h.ambient != fan.dim:
        raise ValueError("subspace ambient dimension must match the fan dimension")
    real_part, imag_part = check_h_cap_t(h)
    if real_part:
        failures.append(ConditionFailure(COND_A_H_CAP_T, {"witness": [str(x) for x in real_part[0]]}))
    if imag_part:
        failures.append(
            ConditionFailure(COND_A_P_NOT_INJECTIVE, {"witness": [str(x) for x in imag_part[0]]})
        )
    if not failures:
        ok_b, fail_b, _, _ = check_condition_b(fan, h)
        failures.extend(fail_b)
    if failures:
        return ValidationReport("II", False, None, tuple(failures))
    max_stab = max((len(c) for c in fan.max_cones), default=0)
    descriptor = ManifoldDescriptor(
        dim_C_M=fan.dim - h.dim,
        dim_T=fan.dim,
        max_stabilizer_dim=max_stab,
        foliation_dim=h.dim,
        construction="II",
        conditions=(("condition (a)", True), ("condition (b)", True)),
    )
    return ValidationReport("II", True, descriptor, ())


def validate_construction_I(complex_: SimplicialComplex, h: ComplexSubspace) -> ValidationReport:
    """Validate the simplicial-complex construction data (K, h)."""
    if h.ambient != complex_.vertices:
        raise ValueError("subspace ambient dimension must match the vertex count")
    failures: List[ConditionFailure] = []
    ok_a, fail_a = check_condition_a_I(complex_, h)
    failures.extend(fail_a)
    fan = fan_from_complex(complex_)
    ok_b, fail_b, _, _ = check_condition_b(fan, h)
    failures.extend(fail_b)
    if failures:
        return ValidationReport("I", False, None, tuple(failures))
    max_stab = max((len(f) for f in complex_.facets), default=0)
    descriptor = ManifoldDescriptor(
        dim_C_M=complex_.vertices - h.dim,
        dim_T=complex_.vertices,
        max_stabilizer_dim=max_stab,
        foliation_dim=h.dim,
        construction="I",
        conditions=(("condition (a)", True), ("condition (b)", True)),
        ineffectivity_dim=2 * h.dim - len(projection_p(h)),
    )
    return ValidationReport("I", True, descriptor, ())


def canonical_foliation(h: ComplexSubspace, fan: Optional[Fan] = None) -> FoliationData:
    """Conjugate subspace data: leaf dimension, h n conj(h), discreteness.

    Meaningful as a foliation only when h n t = {0}; the data itself is
    computed unconditionally (the discreteness flag then reports failure).
    """
    conj = tuple(tuple(x.conjugate() for x in v) for v in h.basis)
    stacked = [list(v) for v in h.basis] + [list(v) for v in conj]
    inter_dim = 2 * h.dim - gauss_rank(stacked, h.ambient) if h.dim else 0
    leaf_dim = h.dim
    if fan is not None:
        max_stab = max((len(c) for c in fan.max_cones), default=0)
        if 2 * leaf_dim != fan.dim - max_stab:
            raise ValueError("leaf dimension inconsistent with the fan's maximal cones")
    return FoliationData(conj, inter_dim, leaf_dim, inter_dim == 0)


# the lift ------------------------------------------------------------------


def cox_batyrev_lift(fan: Fan, h: ComplexSubspace) -> LiftResult:
    """Present (fan, h) as simplicial-complex data (K + ghosts, h'').

    Ghost vertices absorb the torus factor (rank deficiency of the ray
    matrix) and one extra C* coordinate per nontrivial invariant factor of
    the component group.  The result is internally re-validated.
    """
    report = validate_construction_II(fan, h)
    if not report.ok:
        raise ValueError(f"input data fails construction II: {[f.code for f in report.failures]}")
    base = underlying_complex(fan)
    m = len(fan.rays)
    n = fan.dim
    # A: Z^m -> Z^n, e_i -> a_i (columns are rays)
    a_cols = [[fan.rays[i][j] for j in range(n)] for i in range(m)]
    a_rows = [[a_cols[i][j] for i in range(m)] for j in range(n)]
    d_mat, u_mat, v_mat = smith_normal_form(a_rows)
    diag = [d_mat[i][i] for i in range(min(n, m)) if d_mat[i][i]]
    rho = len(diag)
    r0 = n - rho
    u_inv = integer_inverse(u_mat)
    # extended map: ghost columns complete the saturation of im(A) to Z^n
    ext_cols = a_cols + [[u_inv[j][rho + t] for j in range(n)] for t in range(r0)]
    ext_rows = [[Fraction(col[j]) for col in ext_cols] for j in range(n)]
    gauss_rows = [[gauss(x) for x in row] for row in ext_rows]
    width = m + r0
    basis: List[List[GaussianRational]] = []
    for v in h.basis:
        x = gauss_solve(gauss_rows, width, list(v))
        if x is None:  # pragma: no cover - extended map is surjective
            raise AssertionError("failed to lift subspace generator")
        basis.append(x)
    for kern in nullspace_rows(ext_rows, width):
        basis.append([gauss(x) for x in kern])
    torsion = [(i, diag[i]) for i in range(rho) if diag[i] > 1]
    total = width + len(torsion)
    basis = [vec + [GAUSS_ZERO] * len(torsion) for vec in basis]
    for slot, (i, k) in enumerate(torsion):
        xi = [Fraction(v_mat[j][i], k) for j in range(m)]
        gen = [gauss(x) for x in xi] + [GAUSS_ZERO] * r0 + [GAUSS_ZERO] * len(torsion)
        gen[width + slot] = gauss(k)
        basis.append(gen)
    lifted = ComplexSubspace(total, tuple(tuple(v) for v in basis))
    lifted_complex = SimplicialComplex(total, base.facets)
    ghosts = r0 + len(torsion)
    invariants = tuple(k for _, k in torsion)
    check = validate_construction_I(lifted_complex, lifted)
    if not check.ok:  # pragma: no cover - theorem guarantees validity
        raise AssertionError(f"lift failed re-validation: {[f.code for f in check.failures]}")
    if (m + ghosts) - lifted.dim != n - h.dim:  # pragma: no cover
        raise AssertionError("lift dimension mismatch")
    return LiftResult(lifted_complex, lifted, ghosts, invariants)


# divisor-theorem hypotheses ------------------------------------------------


def divisor_hypotheses(complex_: SimplicialComplex, h: Subspace) -> Dict[str, bool]:
    """Hypotheses of the codimension-one-subsets theorem.

    simply_connected: every singleton is a face (removed coordinate
    subspaces then have complex codimension at least two).
    generic_annihilator: the only rational functional vanishing on p(h) is
    zero, decided by Q-linear algebra over the declared symbols.
    """
    used = set(complex_.used_vertices)
    simply_connected = all(v in used for v in range(1, complex_.vertices + 1))
    m = complex_.vertices
    if isinstance(h, SymbolicSubspace):
        spanning = [v for re, im in h.basis for v in (re, im) if not v.is_zero()]
    else:
        spanning = []
        for v in h.basis:
            for part in ([x.re for x in v], [x.im for x in v]):
                if any(part):
                    spanning.append(SymbolicVector.from_rational(part))
    if not spanning:
        generic = m == 0
    else:
        if any(v.dimension != m for v in spanning):
            raise ValueError("subspace ambient dimension must match the vertex count")
        matrix = symbolic_coefficient_matrix(spanning)
        generic = not matrix.nullspace()
    return {"simply_connected": simply_connected, "generic_annihilator": generic}

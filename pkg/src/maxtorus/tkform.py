"""Chart potentials, their Hessians, kernels, and cocycle consistency.

Each chart cone sigma carries the potential
    Phi_sigma(y) = sum_tau exp(-2 pi <w_tau, y>),
with one character w_tau = q^*(u_tau) + b_sigma per maximal cone tau of the
projected fan; u_tau are the support-polytope vertices of a weak-normality
certificate b.  All character data is exact; only evaluation is floating
point.  The convention exp(x) = (e^{2 pi i x_j}) fixes |z_j| = e^{-2 pi y_j}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import subspace_angles
from scipy.special import logsumexp

from .fans import Fan
from .linalg import dot, solve_rows
from .normality import WEAKLY_NORMAL, check_certificate, fan_vertices
from .quotient import ComplexSubspace, check_condition_b
from .seeds import default_seed

# Calibration between the assembled quadratic form (an ordered double sum)
# and the second derivative of log Phi: the double sum counts each unordered
# pair twice, so the form is exactly twice the derivative.  Determined
# empirically once (see the calibration test) and fixed.
RHO = 2.0

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerances:
    kernel: float = 1e-8
    angle: float = 1e-6
    cocycle: float = 1e-9
    fd: float = 1e-4


@dataclass(frozen=True)
class TKFormData:
    cone: Tuple[int, ...]
    characters: Tuple[Tuple[Fraction, ...], ...]
    shift: Tuple[Fraction, ...]  # b_sigma, the chart's character offset
    scale: int  # smoothness multiplier kappa applied to all characters
    rays: Tuple[Tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.shift)

    def scaled(self, kappa: int) -> "TKFormData":
        if kappa <= 0:
            raise ValueError("scale must be a positive integer")
        return TKFormData(
            self.cone,
            tuple(tuple(kappa * x for x in w) for w in self.characters),
            tuple(kappa * x for x in self.shift),
            self.scale * kappa,
            self.rays,
        )

    def character_matrix(self) -> np.ndarray:
        return np.array([[float(x) for x in w] for w in self.characters], dtype=float)


@dataclass
class HessianReport:
    y: np.ndarray
    eigenvalues: np.ndarray
    kernel_basis: np.ndarray
    principal_angles: np.ndarray
    psd: bool
    fd_error: float
    passed: bool


def _minimum_norm_solution(rows: List[List[Fraction]], rhs: List[Fraction], n: int) -> List[Fraction]:
    """Exact minimum-norm x with <x, row_i> = rhs_i (rows independent)."""
    if not rows:
        return [Fraction(0)] * n
    s = len(rows)
    gram = [[dot(rows[i], rows[j]) for j in range(s)] for i in range(s)]
    c = solve_rows(gram, s, rhs)
    if c is None:
        raise ValueError("pairing system is singular")
    return [sum((c[i] * rows[i][j] for i in range(s)), Fraction(0)) for j in range(n)]


def build_tk_data(fan: Fan, h: ComplexSubspace, b: Sequence, sigma: Sequence[int]) -> TKFormData:
    """Exact chart data for the cone sigma of the fan.

    Requires the projected fan to be weakly normal for the support numbers
    b; sigma may be any face of a maximal cone (the empty cone included).
    """
    sigma = tuple(sorted(set(int(i) for i in sigma)))
    if sigma and not any(set(sigma) <= set(c) for c in fan.max_cones):
        raise ValueError("sigma is not a face of the fan")
    ok_b, failures, projected, q = check_condition_b(fan, h)
    if not ok_b or projected is None:
        raise ValueError(f"projected fan unavailable: {[f.code for f in failures]}")
    b = [Fraction(x) for x in b]
    ok, violations = check_certificate(projected, b, WEAKLY_NORMAL)
    if not ok:
        raise ValueError(f"support numbers are not a weak-normality certificate: {violations}")
    n = fan.dim
    rows = [[Fraction(x) for x in fan.rays[i - 1]] for i in sigma]
    rhs = [b[i - 1] for i in sigma]
    shift = _minimum_norm_solution(rows, rhs, n)
    vertices = fan_vertices(projected, b)
    characters = []
    for _, u in sorted(vertices.items()):
        pulled = [sum((q[k][j] * u[k] for k in range(len(q))), Fraction(0)) for j in range(n)]
        w = tuple(pulled[j] + shift[j] for j in range(n))
        for i in sigma:
            pairing = dot(list(w), [Fraction(x) for x in fan.rays[i - 1]])
            if pairing < 0:  # pragma: no cover - certificate guarantees this
                raise AssertionError("character outside the dual cone of sigma")
        characters.append(w)
    return TKFormData(sigma, tuple(characters), tuple(shift), 1, fan.rays)


def choose_smoothness_scale(data: TKFormData, k: int) -> int:
    """Smallest positive integer kappa making every pairing of a character
    with a ray of the chart cone either 0 or at least k."""
    if k <= 0:
        raise ValueError("smoothness order must be positive")
    kappa = 1
    for w in data.characters:
        for i in data.cone:
            pairing = dot(list(w), [Fraction(x) for x in data.rays[i - 1]])
            if pairing < 0:
                raise ValueError("character outside dual cone")
            if pairing > 0:
                kappa = max(kappa, math.ceil(Fraction(k) / pairing))
    return kappa


def _exponents(data: TKFormData, y: np.ndarray) -> np.ndarray:
    return -TWO_PI * data.character_matrix() @ np.asarray(y, dtype=float)


def log_phi(data: TKFormData, y) -> float:
    return float(logsumexp(_exponents(data, y)))


def evaluate_phi(data: TKFormData, y) -> float:
    return math.exp(log_phi(data, y))


def hessian_at(data: TKFormData, y) -> np.ndarray:
    """Quadratic form (1/Phi^2) sum over ordered character pairs of
    chi_1 chi_2 <w_1 - w_2, v>^2, assembled in the standard basis."""
    w = data.character_matrix()
    a = _exponents(data, y)
    p = np.exp(a - logsumexp(a))  # softmax weights chi_tau / Phi
    mean = w.T @ p
    second = w.T @ (w * p[:, None])
    return 2.0 * (second - np.outer(mean, mean))


def hessian_fd_oracle(data: TKFormData, y, v, step: float = 1e-3) -> float:
    """Richardson-extrapolated central second difference of
    lam -> log Phi(y + lam vhat), with vhat = v / (2 pi) the y-increment of
    the flow along exp(lam v).

    Along vhat every exponent is affine in lam with slope -<w_tau, v>, so
    the symmetric difference f(h) - 2 f(0) + f(-h) collapses exactly to
    log1p/expm1 combinations of the lam = 0 softmax weights; evaluating it
    in that form avoids catastrophic cancellation when one character
    dominates (the raw three-point formula loses all digits there)."""
    if step <= 0:
        raise ValueError("step must be positive")
    y = np.asarray(y, dtype=float)
    a = _exponents(data, y)
    p = np.exp(a - logsumexp(a))
    slope = -(data.character_matrix() @ np.asarray(v, dtype=float))
    slope = slope - float(p @ slope)  # linear term cancels in the difference

    def central(hh):
        plus = float(np.dot(p, np.expm1(hh * slope)))
        minus = float(np.dot(p, np.expm1(-hh * slope)))
        return (np.log1p(plus) + np.log1p(minus)) / (hh * hh)

    d1 = central(step)
    d2 = central(step / 2.0)
    return (4.0 * d2 - d1) / 3.0


def calibrate_rho(data: TKFormData, y, v, step: float = 1e-3) -> float:
    """Empirical ratio between the assembled form and the FD oracle."""
    quad = float(np.asarray(v) @ hessian_at(data, y) @ np.asarray(v))
    fd = hessian_fd_oracle(data, y, v, step)
    if abs(fd) < 1e-14:
        raise ValueError("direction lies in the kernel; ratio undefined")
    return quad / fd


def _orthonormal(columns: np.ndarray) -> np.ndarray:
    qmat, _ = np.linalg.qr(columns)
    return qmat[:, : np.linalg.matrix_rank(columns)]


def kernel_check(
    data: TKFormData,
    y,
    p_h: Sequence[Sequence[Fraction]],
    tol: Optional[Tolerances] = None,
) -> HessianReport:
    """Eigen-analysis of the Hessian at y against the expected kernel p(h)."""
    tol = tol or Tolerances()
    y = np.asarray(y, dtype=float)
    hess = hessian_at(data, y)
    eigvals, eigvecs = np.linalg.eigh(hess)
    n = data.dim
    expected = len(p_h)
    lam_max = float(np.max(np.abs(eigvals))) if len(eigvals) else 0.0
    if lam_max == 0.0:
        if expected < n:
            return HessianReport(y, eigvals, eigvecs, np.array([]), True, 0.0, False)
        kernel_mask = np.ones(n, dtype=bool)
    else:
        # absolute floor: eigenvalue roundoff does not scale down with lam_max
        cut = max(tol.kernel * lam_max, 1e-13)
        kernel_mask = np.abs(eigvals) < cut
    psd = bool(eigvals.min(initial=0.0) >= -tol.kernel * lam_max)
    kernel = eigvecs[:, kernel_mask]
    if expected and kernel.shape[1]:
        reference = np.array([[float(x) for x in v] for v in p_h], dtype=float).T
        angles = subspace_angles(_orthonormal(kernel), _orthonormal(reference))
    else:
        angles = np.array([])
    fd_error = float(_fd_error(data, y, hess))
    dims_match = kernel.shape[1] == expected
    angles_ok = (not len(angles)) or float(angles.max()) < tol.angle
    passed = bool(psd and dims_match and angles_ok and fd_error < tol.fd)
    return HessianReport(y, eigvals, kernel, angles, psd, fd_error, passed)


def _fd_error(data: TKFormData, y: np.ndarray, hess: np.ndarray, step: float = 1e-3) -> float:
    """Max relative disagreement between RHO * oracle and the form, over a
    small deterministic direction set, ignoring near-kernel directions."""
    n = data.dim
    directions = [np.eye(n)[i] for i in range(min(n, 3))]
    directions.append(np.ones(n) / math.sqrt(n))
    scale = max(float(np.max(np.abs(hess))), 1e-12)
    floor = 1e-5 * scale + 1e-14  # near-kernel: relative error is meaningless
    worst = 0.0
    for v in directions:
        quad = float(v @ hess @ v)
        if abs(quad) < floor:
            continue
        fd = RHO * hessian_fd_oracle(data, y, v, step)
        worst = max(worst, abs(fd - quad) / abs(quad))
    return worst


def cocycle_check(
    fan: Fan,
    h: ComplexSubspace,
    b: Sequence,
    sigma1: Sequence[int],
    sigma2: Sequence[int],
    samples: int = 50,
    seed: Optional[int] = None,
) -> float:
    """Max over seeded sample points of
    |log Phi_1 - log Phi_2 + 2 pi <b_1 - b_2, y>|, which vanishes exactly
    because the two character sets differ by the constant shift b_1 - b_2."""
    data1 = build_tk_data(fan, h, b, sigma1)
    data2 = build_tk_data(fan, h, b, sigma2)
    inter = set(data1.cone) & set(data2.cone)
    if inter and not any(inter <= set(c) for c in fan.max_cones):
        raise ValueError("chart cones do not intersect in a face")
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    delta = np.array(
        [float(a - c) for a, c in zip(data1.shift, data2.shift)], dtype=float
    )
    worst = 0.0
    for _ in range(samples):
        y = rng.uniform(-1.0, 1.0, size=fan.dim)
        dev = abs(log_phi(data1, y) - log_phi(data2, y) + TWO_PI * float(delta @ y))
        worst = max(worst, dev)
    return worst

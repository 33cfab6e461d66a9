"""Bundled example instances and seeded random generators.

The named instances back the CLI `example` subcommand and the test corpus:
Hopf surface data, the 7-ray fan whose support polytope degenerates (weakly
normal but not normal), projective spaces, and a moment-angle manifold over
the boundary of a square.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from .fans import Fan, SimplicialComplex
from .quotient import ComplexSubspace
from .rationals import GaussianRational, gauss

# fans ----------------------------------------------------------------------


def hopf_fan() -> Fan:
    return Fan(3, ((1, 0, 0), (0, 1, 0)), ((1,), (2,)))


def hopf_subspace(alpha=None) -> ComplexSubspace:
    if alpha is None:
        alpha = (gauss(0, 1), gauss(0, 1), gauss(-1))
    return ComplexSubspace(3, (tuple(alpha),))


def hopf_complex() -> SimplicialComplex:
    return SimplicialComplex(3, ((1,), (2,)))


def fulton7_fan() -> Fan:
    rays = (
        (-1, 0, 0),
        (0, -1, 0),
        (0, 0, -1),
        (1, 1, 1),
        (1, 1, 0),
        (0, 1, 1),
        (1, 0, 1),
    )
    cones = (
        (1, 2, 3),
        (1, 2, 6),
        (1, 3, 5),
        (1, 5, 6),
        (2, 3, 7),
        (2, 6, 7),
        (3, 5, 7),
        (4, 5, 6),
        (4, 5, 7),
        (4, 6, 7),
    )
    return Fan(3, rays, cones)


def cp1_fan() -> Fan:
    return Fan(1, ((1,), (-1,)), ((1,), (2,)))


def cp2_fan() -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((1, 2), (1, 3), (2, 3)))


def cp1xcp1_fan() -> Fan:
    return Fan(
        2,
        ((1, 0), (-1, 0), (0, 1), (0, -1)),
        ((1, 3), (1, 4), (2, 3), (2, 4)),
    )


def octahedron_fan() -> Fan:
    rays = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))
    cones = tuple((i, j, k) for i in (1, 2) for j in (3, 4) for k in (5, 6))
    return Fan(3, rays, cones)


def hexagon_fan() -> Fan:
    rays = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))
    cones = tuple((i, i % 6 + 1) for i in range(1, 7))
    return Fan(2, rays, cones)


def square_fan() -> Fan:
    rays = ((1, 1), (-1, 1), (-1, -1), (1, -1))
    cones = tuple((i, i % 4 + 1) for i in range(1, 5))
    return Fan(2, rays, cones)


def orthant_fan(dim: int) -> Fan:
    rays = tuple(tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim))
    return Fan(dim, rays, (tuple(range(1, dim + 1)),))


def halfplane_fan() -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, 0)), ((1, 2), (2, 3)))


def single_ray_fan() -> Fan:
    return Fan(2, ((1, 0),), ((1,),))


def triangle_complex() -> SimplicialComplex:
    return SimplicialComplex(3, ((1, 2), (1, 3), (2, 3)))


def moment_angle_cube_complex() -> SimplicialComplex:
    return SimplicialComplex(4, ((1, 2), (2, 3), (3, 4), (1, 4)))


def moment_angle_cube_subspace() -> ComplexSubspace:
    return ComplexSubspace(4, ((gauss(1), gauss(0, 1), gauss(1), gauss(0, 1)),))


def zero_subspace(m: int) -> ComplexSubspace:
    return ComplexSubspace(m, ())


# completeness corpus: (name, fan, complete?) -------------------------------


def completeness_corpus() -> List[Tuple[str, Fan, bool]]:
    return [
        ("cp1", cp1_fan(), True),
        ("cp2", cp2_fan(), True),
        ("cp1xcp1", cp1xcp1_fan(), True),
        ("fulton7", fulton7_fan(), True),
        ("octahedron", octahedron_fan(), True),
        ("hexagon", hexagon_fan(), True),
        ("square", square_fan(), True),
        ("orthant2", orthant_fan(2), False),
        ("orthant3", orthant_fan(3), False),
        ("hopf", hopf_fan(), False),
        ("halfplane", halfplane_fan(), False),
        ("single-ray", single_ray_fan(), False),
    ]


# random generators ---------------------------------------------------------


def random_rational(rng: random.Random, span: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_gauss(rng: random.Random, span: int = 5) -> GaussianRational:
    return GaussianRational(random_rational(rng, span), random_rational(rng, span))


def random_hopf_triple(rng: random.Random) -> Tuple[GaussianRational, ...]:
    """Unconstrained Gaussian triple with a nonzero last entry."""
    while True:
        alpha3 = random_gauss(rng)
        if alpha3:
            break
    return (random_gauss(rng), random_gauss(rng), alpha3)


def random_valid_hopf_triple(rng: random.Random) -> Tuple[GaussianRational, ...]:
    """Triple with Im(a1/a3), Im(a2/a3) nonzero of equal sign."""
    while True:
        alpha3 = random_gauss(rng)
        if alpha3:
            break
    sign = rng.choice((1, -1))
    ratios = []
    for _ in range(2):
        im = Fraction(rng.randint(1, 5), rng.randint(1, 5)) * sign
        ratios.append(GaussianRational(random_rational(rng), im))
    return (ratios[0] * alpha3, ratios[1] * alpha3, alpha3)


_TORIC_BLOCKS: Tuple[Callable[[], Fan], ...] = (cp1_fan, cp2_fan, cp1xcp1_fan)


def _product(blocks: Sequence[Tuple[Fan, ComplexSubspace]]) -> Tuple[Fan, ComplexSubspace]:
    dim = sum(f.dim for f, _ in blocks)
    rays: List[Tuple[int, ...]] = []
    offsets_dim, offsets_ray = [], []
    d = r = 0
    for fan, _ in blocks:
        offsets_dim.append(d)
        offsets_ray.append(r)
        for ray in fan.rays:
            rays.append(tuple([0] * d + list(ray) + [0] * (dim - d - fan.dim)))
        d += fan.dim
        r += len(fan.rays)
    cones: List[Tuple[int, ...]] = [()]
    for (fan, _), off in zip(blocks, offsets_ray):
        cones = [c + tuple(i + off for i in mc) for c in cones for mc in fan.max_cones]
    basis = []
    d = 0
    for fan, h in blocks:
        for v in h.basis:
            basis.append(
                tuple([gauss(0)] * d + list(v) + [gauss(0)] * (dim - d - fan.dim))
            )
        d += fan.dim
    return Fan(dim, tuple(rays), tuple(sorted(cones))), ComplexSubspace(dim, tuple(basis))


def random_valid_instance(rng: random.Random) -> Tuple[Fan, ComplexSubspace]:
    """Random (fan, subspace) passing construction II, built as a product of
    Hopf-type blocks and compact toric blocks."""
    blocks: List[Tuple[Fan, ComplexSubspace]] = []
    n_blocks = rng.randint(1, 3)
    for _ in range(n_blocks):
        if rng.random() < 0.5:
            blocks.append((hopf_fan(), hopf_subspace(random_valid_hopf_triple(rng))))
        else:
            fan = rng.choice(_TORIC_BLOCKS)()
            blocks.append((fan, zero_subspace(fan.dim)))
    if not any(h.dim for _, h in blocks):
        blocks.append((hopf_fan(), hopf_subspace(random_valid_hopf_triple(rng))))
    return _product(blocks)

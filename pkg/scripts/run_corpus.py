#!/usr/bin/env python3
"""Run the full check pipeline over the bundled instance corpus.

For every fan in the corpus: validity, completeness, normality and weak
normality.  For the quotient instances: construction validation, the lift
round trip, foliation data, and the numerical transverse-Kähler summary.
"""

import argparse
import time

import numpy as np

from maxtorus import instances, normality, tkform
from maxtorus.fans import fan_is_complete, fan_validate
from maxtorus.quotient import (
    canonical_foliation,
    check_condition_b,
    cox_batyrev_lift,
    projection_p,
    validate_construction_II,
)
from maxtorus.seeds import default_seed


def fan_table(seed):
    print(f"{'fan':<12} {'valid':<6} {'complete':<9} {'normal':<7} {'weakly normal'}")
    for name, fan, _ in instances.completeness_corpus():
        valid = fan_validate(fan).valid
        complete = fan_is_complete(fan, seed=seed)
        if complete and all(len(c) == fan.dim for c in fan.max_cones):
            nrm = normality.decide_normal(fan, seed=seed) is not None
            weak = normality.decide_weakly_normal(fan, seed=seed) is not None
        else:
            nrm = weak = "-"
        print(f"{name:<12} {str(valid):<6} {str(complete):<9} {str(nrm):<7} {weak}")


def quotient_table(seed, points):
    rng = np.random.default_rng(seed)
    cases = [
        ("hopf", instances.hopf_fan(), instances.hopf_subspace()),
        ("cp2", instances.cp2_fan(), instances.zero_subspace(2)),
        ("cp1xcp1", instances.cp1xcp1_fan(), instances.zero_subspace(2)),
    ]
    print()
    print(f"{'instance':<10} {'valid':<6} {'ghosts':<7} {'leafdim':<8} {'kernel':<7} {'max angle':<10} {'cocycle'}")
    for name, fan, h in cases:
        rep = validate_construction_II(fan, h)
        if not rep.ok:
            print(f"{name:<10} False")
            continue
        lift = cox_batyrev_lift(fan, h)
        fol = canonical_foliation(h, fan)
        _, _, projected, _ = check_condition_b(fan, h)
        cert = normality.decide_weakly_normal(projected, seed=seed)
        b = list(cert.b)
        data = tkform.build_tk_data(fan, h, b, fan.max_cones[0])
        p_h = projection_p(h)
        kdim, angle = None, 0.0
        for _ in range(points):
            y = rng.uniform(-0.5, 0.5, size=fan.dim)
            krep = tkform.kernel_check(data, y, p_h)
            kdim = krep.kernel_basis.shape[1]
            if len(krep.principal_angles):
                angle = max(angle, float(krep.principal_angles.max()))
        coc = 0.0
        cones = fan.max_cones
        for i in range(len(cones)):
            for j in range(i + 1, len(cones)):
                coc = max(coc, tkform.cocycle_check(fan, h, b, cones[i], cones[j], samples=points, seed=seed))
        print(
            f"{name:<10} {str(rep.ok):<6} {lift.ghosts:<7} {fol.leaf_dim:<8} "
            f"{kdim:<7} {angle:<10.2e} {coc:.2e}"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    parser.add_argument("--points", type=int, default=20)
    args = parser.parse_args()
    seed = default_seed() if args.seed is None else args.seed
    t0 = time.monotonic()
    fan_table(seed)
    quotient_table(seed, args.points)
    print(f"\ntotal {time.monotonic() - t0:.2f}s (seed {seed:#x})")


if __name__ == "__main__":
    main()

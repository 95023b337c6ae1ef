"""Tour of the unitary involution on GL_4 over both field presets."""
from __future__ import annotations

import random

from unitary_rds import theta as th
from unitary_rds.ematrix import orbit_invariant, random_invertible
from unitary_rds.quad_arith import presets
from unitary_rds.root_weyl import RootDatum


def main() -> None:
    for name, cfg in presets().items():
        rng = random.Random(0)
        theta = th.ThetaInvolution.quasi_split(4, cfg)
        g = random_invertible(rng, 4, cfg, 2)
        h = theta.sample_fixed(rng, cfg)
        print(f"[{name}] p = {cfg.p}, d = {cfg.d}")
        print("  theta(theta(g)) == g:", theta(theta(g)) == g)
        print("  sampled h is theta-fixed:", theta.is_fixed(h), "and preserves x:", theta.preserves_form(h))
        print("  gamma_4 product diagonal:", th.expected_gamma_diagonal(4))
        print("  norm class of the antidiagonal form:", orbit_invariant(theta.x, cfg).class_id)

    act = th.action_on_AT(4)
    simple = RootDatum(4).simple_roots
    print("standard base is a theta-base for the A_T action:", th.is_theta_base(simple, act))
    for shape in th.partitions(4):
        c = th.classify_parabolic(shape)
        print(f"  parabolic {shape.parts}: stable={c['theta_stable']} elliptic Levi={c['theta_elliptic_levi']}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Cross-check the Euler-angle rolling ODE against quaternion edge factors.

Integrates random geodesic edges at a given radius ratio, compares with the
closed-form edge factor, and prints a step-halving convergence table.
"""

import argparse
import time

import numpy as np

from danceroll import eulerroll, rolling
from danceroll.geom import quat_distance, quat_to_matrix


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rho", type=float, default=3.0)
    ap.add_argument("--edges", type=int, default=20)
    ap.add_argument("--steps", type=int, default=4000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(args.edges):
        v1 = rng.standard_normal(3)
        v1 /= np.linalg.norm(v1)
        v2 = rng.standard_normal(3)
        v2 /= np.linalg.norm(v2)
        if np.linalg.norm(np.cross(v1, v2)) < 1e-3:
            continue
        R, q = eulerroll.integrate_roll(v1, v2, rho=args.rho,
                                        steps=args.steps)
        qe = rolling.edge_monodromy(v1, v2, args.rho)
        worst = max(worst, quat_distance(q, qe),
                    np.abs(R - quat_to_matrix(qe)).max())
    dt = time.perf_counter() - t0
    print(f"{args.edges} edges at rho={args.rho}, {args.steps} steps: "
          f"worst defect {worst:.2e}  ({dt:.1f}s)")

    v1 = np.eye(3)[0]
    v2 = np.array([0.3, 0.8, 0.52])
    v2 /= np.linalg.norm(v2)
    qe = rolling.edge_monodromy(v1, v2, args.rho)
    print("\nsteps   error        observed order")
    prev = None
    for steps in (100, 200, 400, 800, 1600):
        _, q = eulerroll.integrate_roll(v1, v2, rho=args.rho, steps=steps)
        err = quat_distance(q, qe)
        order = "" if prev is None else f"{np.log2(prev / err):14.2f}"
        print(f"{steps:>5}   {err:.4e}{order}")
        prev = err

    for rho, expect in ((3.0, "+1"), (2.0, "-1")):
        _, q = eulerroll.full_equator(rho=rho, steps=8000)
        print(f"\nfull equator at rho={rho}: lift scalar {q[0]:+.9f} "
              f"(expected {expect})")


if __name__ == "__main__":
    main()

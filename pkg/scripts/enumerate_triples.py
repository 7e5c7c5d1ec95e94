#!/usr/bin/env python3
"""Tabulate admissible regular spherical polygons with trivial monodromy.

For each (n, w, w') admitting a colatitude solution, print phi, the closure
residual, and the quaternion monodromy defect of the solved polygon.
"""

import argparse

import numpy as np

from danceroll import rolling
from danceroll.geom import QUAT_ONE, quat_distance


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("n_max", type=int, nargs="?", default=16)
    args = ap.parse_args()

    rows = rolling.enumerate_admissible(args.n_max)
    print(f"{'n':>3} {'w':>3} {'w’':>3} {'phi':>12} {'closure':>10} "
          f"{'monodromy':>10}  minimal")
    for r in rows:
        n, w, wp, phi = r["n"], r["w"], r["wprime"], r["phi"]
        res = abs(rolling.wprime_angle_residual(n, w, wp, phi))
        g = rolling.polygon_monodromy(rolling.regular_polygon(n, w, phi)).g
        defect = quat_distance(g, QUAT_ONE)
        print(f"{n:>3} {w:>3} {wp:>3} {phi:>12.9f} {res:>10.2e} "
              f"{defect:>10.2e}  {'*' if r['minimal'] else ''}")
    print(f"\n{len(rows)} triples, "
          f"{sum(r['minimal'] for r in rows)} minimal, "
          f"hexagon sin^2(phi) = {np.sin(rows[0]['phi'])**2:.15f}")


if __name__ == "__main__":
    main()

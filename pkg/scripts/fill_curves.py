#!/usr/bin/env python3
"""Fill-fraction growth curves for equal-angle rotation pairs.

For a pair {e^{i*theta} Id, z -> e^{i*theta}(z-1)+1} whose orbits are dense,
sweep the word cap and record how much of a window grid the enumerated orbit
actually covers.  Finite-order angles (pi/4, pi/5, ...) generate groups with
polynomial ball growth, so their curves plateau far below full coverage at
small word caps; infinite-order angles fill quickly.  The table this prints
is the calibration data for choosing honest enumeration budgets.

Usage:
    python3 scripts/fill_curves.py
    python3 scripts/fill_curves.py --angles pi/4 1.0 --caps 6 16 --grid 40
"""

import argparse
import math
import time
from dataclasses import dataclass, field
from typing import List, Tuple

from homothety_orbits import orbit_oracle as oracle
from homothety_orbits.affine_maps import Homothety, as_point
from homothety_orbits.closure_engine import orbit_closure
from homothety_orbits.exact_algebra import Scalar, parse_scalar
from homothety_orbits.group_profile import GroupSpec, compute_profile

ANGLE_TEXT = {
    "pi/6": "exp(i*pi*1/6)",
    "pi/4": "exp(i*pi*1/4)",
    "pi/5": "exp(i*pi*1/5)",
    "pi/3": "exp(i*pi*1/3)",
    "1.0": "exp(i*1.0)",
    "sqrt2": f"exp(i*{math.sqrt(2)})",
}


@dataclass
class SweepConfig:
    angles: List[str] = field(default_factory=lambda: ["pi/4", "pi/5", "1.0"])
    cap_lo: int = 8
    cap_hi: int = 14
    grid: int = 40
    window: float = 2.0
    budget: int = 2_000_000


def rotation_pair(ratio: Scalar) -> GroupSpec:
    one = Scalar.integer(1)
    return GroupSpec(
        1,
        (
            Homothety.with_center(ratio, as_point([Scalar.integer(0)])),
            Homothety.with_center(ratio, as_point([one])),
        ),
    )


def sweep(cfg: SweepConfig) -> List[Tuple[str, int, int, float, float]]:
    rows = []
    for label in cfg.angles:
        ratio = parse_scalar(ANGLE_TEXT.get(label, label))
        spec = rotation_pair(ratio)
        profile = compute_profile(spec)
        desc = orbit_closure(profile, as_point([Scalar.integer(0)]))
        for cap in range(cfg.cap_lo, cfg.cap_hi + 1):
            t0 = time.time()
            sample = oracle.enumerate(
                spec,
                as_point([Scalar.integer(0)]),
                cap,
                budget=cfg.budget,
                force_grid=True,
            )
            ev = oracle.verify(
                desc, sample, window=cfg.window, grid_res=cfg.grid
            )
            rows.append((label, cap, len(sample), ev.fill_fraction, time.time() - t0))
    return rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--angles", nargs="+", default=None,
                    help=f"angle labels ({', '.join(ANGLE_TEXT)}) or scalar text")
    ap.add_argument("--caps", nargs=2, type=int, default=None, metavar=("LO", "HI"))
    ap.add_argument("--grid", type=int, default=40)
    ap.add_argument("--window", type=float, default=2.0)
    args = ap.parse_args()

    cfg = SweepConfig(grid=args.grid, window=args.window)
    if args.angles:
        cfg.angles = args.angles
    if args.caps:
        cfg.cap_lo, cfg.cap_hi = args.caps

    print(f"window [-{cfg.window}, {cfg.window}]^2, grid {cfg.grid}x{cfg.grid}")
    print(f"{'angle':>8} {'cap':>4} {'points':>8} {'fill':>7} {'secs':>6}")
    for label, cap, n, fill, secs in sweep(cfg):
        print(f"{label:>8} {cap:>4} {n:>8} {fill:>7.4f} {secs:>6.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

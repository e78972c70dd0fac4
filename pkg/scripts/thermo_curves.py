"""Emit thermodynamic and superstatistics curves for P0 as CSV files."""

import argparse
import os

import numpy as np

from cpsehp.curves import emit_curve
from cpsehp.model import P0
from cpsehp.nu import thermo_reduction
from cpsehp.superstat import SuperstatParams, superstat_curve
from cpsehp.thermo import thermo_curve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="curves")
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--l", type=int, default=0)
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    red = thermo_reduction(P0, args.l)
    betas = np.linspace(-5.0, -0.1, args.steps)
    emit_curve(thermo_curve(red, betas), os.path.join(args.outdir, "thermo.csv"))
    for q in (0.0, 0.5, 1.0):
        grid = [SuperstatParams(q, b) for b in betas]
        emit_curve(superstat_curve(red, grid), os.path.join(args.outdir, f"superstat_q{q:g}.csv"))
    qs = np.linspace(0.0, 1.0, args.steps)
    emit_curve(superstat_curve(red, [SuperstatParams(q, -1.0) for q in qs], x_name="q"),
               os.path.join(args.outdir, "superstat_beta-1.csv"))
    print(f"wrote curves to {args.outdir}/")


if __name__ == "__main__":
    main()

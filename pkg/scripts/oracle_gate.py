"""Closed-form energies against the finite-difference oracle.

Prints one line per (alpha, l, n) with the relative disagreement. Run on the
P0 set (not binding: levels have rho + Q3/rho > 0) and on the attractive
BOUND set side by side.
"""

import argparse
import time

from cpsehp.model import BOUND, P0
from cpsehp.nu import QuantumNumbers, energy, enumerate_bound_states, nu_consistent
from cpsehp.oracle import default_grid, solve_radial

SETS = {"P0": P0, "BOUND": BOUND}


def gate(params, alphas, ls, n_max, n_points):
    worst = 0.0
    for alpha in alphas:
        p = params.with_(alpha=alpha)
        for l in ls:
            betas = [s.beta_wf for s in enumerate_bound_states(p, l, n_max)]
            grid = default_grid(p, n_points=n_points, beta_wf=min(betas) if betas else None)
            fd = solve_radial("approximated", p, l, grid, k=n_max + 1).energies
            for n in range(n_max + 1):
                qn = QuantumNumbers(n, l)
                e = energy(p, qn)
                rel = abs(e - fd[n]) / abs(e)
                worst = max(worst, rel)
                print(f"alpha={alpha:<5g} l={l} n={n} E_nu={e: .10e} E_fd={fd[n]: .10e} "
                      f"rel={rel:.2e} eigenstate={nu_consistent(p, qn)}")
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--set", choices=sorted(SETS), nargs="+", default=["P0", "BOUND"])
    ap.add_argument("--alphas", type=float, nargs="+", default=[0.01, 0.04])
    ap.add_argument("--l-max", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--points", type=int, default=4000)
    args = ap.parse_args()
    for name in args.set:
        start = time.perf_counter()
        print(f"== {name}")
        worst = gate(SETS[name], args.alphas, range(args.l_max + 1), args.n_max, args.points)
        print(f"== {name}: max rel {worst:.3g} in {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()

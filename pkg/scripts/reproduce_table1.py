"""Collocation vs Galerkin on the resistor network: call counts and RMSE per degree.

    python scripts/reproduce_table1.py [--seed 42] [--samples 1000] [--exact]
"""
import argparse

from nigalerkin import CircuitProblem, run_table

PAPER = {
    2: (73, 81, 8.5e-6, 8.2e-6),
    3: (151, 160, 6.4e-7, 6.0e-7),
    4: (268, 300, 4.2e-8, 4.0e-8),
    5: (430, 468, 3.1e-9, 3.0e-9),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--exact", action="store_true", help="2m+1 quadrature points per dimension")
    args = ap.parse_args()

    quad = (lambda m: 2 * m + 1) if args.exact else None
    records = run_table(CircuitProblem(), seed=args.seed, n_samples=args.samples, quad_points=quad)
    rows = {(r.method, r.degree): r for r in records}
    print(f"{'m':>2} {'tol':>7} | {'evals C':>8} {'G':>5} | {'RMSE C':>9} {'G':>9} | paper evals C/G, RMSE C/G")
    for m, (pc, pg, ec, eg) in PAPER.items():
        c, g = rows["collocation", m], rows["galerkin", m]
        print(f"{m:>2} {c.eps_tol:>7.0e} | {c.solver_evals:>8} {g.solver_evals:>5} | "
              f"{c.rmse:>9.2e} {g.rmse:>9.2e} | {pc}/{pg}, {ec:.1e}/{eg:.1e}")


if __name__ == "__main__":
    main()

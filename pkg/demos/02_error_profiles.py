"""The scaled cell-average error e_{j,0}/h^{2k+1} is not noise: it converges
to a closed-form profile built from high derivatives of the initial data.

Prints the sup-norm distance between the measured scaled profile and the
prediction as N doubles, and dumps profile CSVs renderable by the frontend.
"""
from pathlib import Path

import numpy as np

from dgadvect import asymptotic_error, make_grid, make_preset, run_experiment
from dgadvect.cli import write_profile_csv

out = Path("demo_out")
out.mkdir(exist_ok=True)

for k in (1, 2):
    problem = make_preset("ex1", k)
    g = problem.fields[0]
    print(f"\nk={k}: e0/h^{2 * k + 1} vs closed-form profile at t=1")
    for N in (20, 40):
        dec = run_experiment(problem, N, k)
        grid = make_grid(N)
        scaled = dec.e_modes[:, 0, 0] / grid.h ** (2 * k + 1)
        pred = asymptotic_error(g, 1.0, k, grid=grid)
        dev = np.max(np.abs(scaled - pred.e0_scaled[0]))
        print(f"  N={N:3d}: sup deviation {dev:.4f} (profile sup {np.max(np.abs(pred.e0_scaled)):.4f})")
        write_profile_csv(out / f"profile_ex1_k{k}_N{N}_c0.csv",
                          grid.cell_centers, scaled, pred.e0_scaled[0], 1.0, N, k)
    print(f"  CSVs in {out}/ (render with: frontend 'render --kind profile ...')")

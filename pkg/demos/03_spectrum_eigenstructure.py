"""Everything the per-mode amplification matrix knows:

- one eigenvalue (the physical mode) hugs the exact transport symbol
  -i a mh to order (mh)^{2k+2}, with a universal constant;
- the other k eigenvalues are damped at least at rate alpha;
- the physical eigenvalue satisfies a rational (Pade) identity exactly.
"""
import numpy as np

from dgadvect import (
    asymptotic_constant,
    build_symbol,
    eigendecompose,
    make_grid,
    pade_check,
    spectral_gap,
    upwind,
    verify_lambda0_expansion,
)

for k in (1, 2, 3):
    fit = verify_lambda0_expansion(k)
    gap = spectral_gap(k)
    print(f"k={k}: |lambda_0 + i mh| ~ C (mh)^p with p = {fit.order:.3f} "
          f"(expect {2 * k + 2}), C = {fit.constant:.3e} "
          f"(closed form {asymptotic_constant(k):.3e}); alpha = {gap.alpha:.4f}")

print("\nLax-Friedrichs dissipation rescales the constant (M/|a| or |a|/M):")
for k, M, a in ((1, 2.0, 1.0), (2, 6.0, 6.0)):
    fit = verify_lambda0_expansion(k, "lax_friedrichs", a=a, M=M)
    print(f"  k={k}, M={M:g}, a={a:g}: C = {fit.constant:.3e}")

print("\nPade residuals |R(lambda_0) - e^{i mh}| (exact identity, rounding-level):")
for k in (1, 2):
    print(f"  k={k}: {pade_check(k, 0.3):.2e}")

print("\nEigenvalues of one mode (k=2, m=5 on N=32):")
es = eigendecompose(build_symbol(5, make_grid(32), 2, upwind()))
for n, lam in enumerate(es.values):
    tag = "physical" if n == es.physical_index else "damped"
    print(f"  lambda_{n} = {lam:.6f}  ({tag})")

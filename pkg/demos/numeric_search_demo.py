"""Floating-point corroboration: random PSD scans and box minimization.

The numeric layer never certifies anything — it hunts for counterexamples
(none expected) and cross-checks the exact layer's landmark numbers.
"""
import numpy as np

from hurwitzcert.numsearch import (
    finite_difference_gradient, minimize_box, random_psd, scan_coefficients,
    stationarity_residual, trace_coefficients_numeric,
)

print("random PSD scan, n=3, m=6, 2000 trials:")
result = scan_coefficients(3, 6, trials=2000, seed=1)
print(result.text())
assert not result.flagged

print("\nbox minimization of Tr[S_(4,2)(diag(1, x1, x2), B)]:")
B = np.array([[-2.0, 1.0, 0.0], [-1.0, 2.0, 3.0], [1.0, -1.0, 3.0]])
point, value = minimize_box(B, 4, 2, starts=64, seed=0)
print(f"  minimizer ~ {np.round(point, 6)}  (exact: (7/25, 1/25) = "
      f"(0.28, 0.04))")
print(f"  value     ~ {value:.10f}        (exact: 486/25 = 19.44)")
res = stationarity_residual([7 / 25, 1 / 25], B, 4, 2)
print(f"  stationarity residual at the exact point: {res:.3e}")

g_fd = finite_difference_gradient(np.array([0.3, 0.1]), B, 4, 2)
print(f"  finite-difference gradient at (0.3, 0.1): {np.round(g_fd, 6)}")

A = random_psd(3, rank=3, seed=(7, 0, 0)).entries
Bp = random_psd(3, rank=3, seed=(7, 0, 1)).entries
coeffs = trace_coefficients_numeric(A, Bp, 6)
print(f"\none PSD pair, Tr[S_(6,k)] for k=0..6 (all nonnegative):")
print(f"  {np.round(coeffs, 6)}")
assert (coeffs >= -1e-9 * max(1.0, abs(coeffs).max())).all()

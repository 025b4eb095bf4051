"""Worked example: trace coefficients of (A + tB)^m and their minima.

A = diag(1, x1, x2) with symbolic box coordinates and a fixed integer B.
The k=2 coefficient of m=4 is a quadratic whose unique stationary point
lies inside the box; exact arithmetic pins it to (7/25, 1/25) with value
486/25, and the derivative identity cross-checks it against the m=3 row.
"""
from fractions import Fraction

from hurwitzcert.cli import _example_pair
from hurwitzcert.bmvcert import critical_ideal
from hurwitzcert.polycore import format_polynomial
from hurwitzcert.symmatrix import trace_coefficients, verify_trace_identity

A, B = _example_pair()

print("Tr[(A + tB)^4] coefficient by coefficient:")
c4 = trace_coefficients(A, B, 4)
for k, c in enumerate(c4):
    print(f"  k={k}:  {format_polynomial(c)}")

f = c4[2]
print("\nthe k=2 coefficient is the interesting one:")
print(f"  f = {format_polynomial(f)}")

partials = critical_ideal(f, ("x1", "x2")).generators
print("\nits critical ideal (both partials are linear):")
for g in partials:
    print(f"  {format_polynomial(g)}")

# solve the 2x2 linear system exactly
cs0 = {m: Fraction(c) for m, c in partials[0].terms.items()}
cs1 = {m: Fraction(c) for m, c in partials[1].terms.items()}
a1, b1, d1 = cs0.get((1, 0), 0), cs0.get((0, 1), 0), cs0.get((0, 0), 0)
a2, b2, d2 = cs1.get((1, 0), 0), cs1.get((0, 1), 0), cs1.get((0, 0), 0)
det = a1 * b2 - a2 * b1
x1 = Fraction(-d1 * b2 + d2 * b1, det)
x2 = Fraction(-a1 * d2 + a2 * d1, det)
print(f"\nunique stationary point: (x1, x2) = ({x1}, {x2})")

value = f.evaluate({"x1": x1, "x2": x2})
print(f"minimum value: {value}")

c3 = trace_coefficients(A, B, 3)
cross = 2 * c3[2].evaluate({"x1": x1, "x2": x2})
print(f"derivative-identity cross-check, 2 * Tr[S_(3,2)] there: {cross}")
assert value == cross == Fraction(486, 25)

print("\nthe identity (m-k) Tr[S_(m,k)] = m Tr[A S_(m-1,k)] holds "
      "symbolically:")
for m in range(1, 5):
    for k in range(m):
        assert verify_trace_identity(A, B, m, k)
print("  verified for all m <= 4, k < m on this pair")

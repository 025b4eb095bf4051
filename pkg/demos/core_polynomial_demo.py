"""The core polynomial p(r, x, y, z, u, b).

p is b^3 u^2 times the trace of the middle product-sum S_(6,3)(A, B) for the
parameterized pair: A = diag(1, r, 0) and B the rank-deficient symmetric
matrix whose entries encode a general PSD 3x3 matrix on the relevant
boundary stratum.  The construction clears all denominators exactly; the
result is an integer polynomial in six variables with 32 terms.
"""
from fractions import Fraction
import random

from hurwitzcert.bmvcert import (
    BOX_VARS, build_p, build_parameterized_AB, negative_terms,
    parameterization_scale, polynomial_hash, scaling_exponent,
)
from hurwitzcert.polycore import Polynomial, format_polynomial
from hurwitzcert.symmatrix import format_matrix

A, C = build_parameterized_AB()
print("A =", format_matrix(A))
print("scaled second matrix C = (b*u^2) * B, entrywise:")
print(format_matrix(C))

p = build_p()
print(f"\np has {len(p.terms)} terms, all integer coefficients")
print(f"content hash: {polynomial_hash(p)}")
print(f"p at the all-ones point: {p.evaluate(dict.fromkeys(p.ring, 1))}")
print(f"joint degree in (x, y, z, u, b) — read off, not assumed: "
      f"{scaling_exponent(p)}")

lam = Fraction(3, 2)
left = p.evaluate({"r": Fraction(1, 3), "x": lam, "y": lam, "z": lam,
                   "u": lam, "b": lam})
right = lam ** 8 * p.evaluate(
    {"r": Fraction(1, 3), "x": 1, "y": 1, "z": 1, "u": 1, "b": 1})
assert left == right
print(f"scaling check at lambda=3/2: both sides {left}")

neg = Polynomial(p.ring, {m: c for m, c in p.terms.items() if c < 0})
print(f"\nnegative part: {format_polynomial(neg)}")
step = negative_terms(p)
print(f"negative-term audit status: {step.status}")
print("  (the required closed form omits the r^3 term; the audit records "
      "the mismatch rather than papering over it)")

print("\nrestrictions to the five faces v=0 are coefficientwise "
      "nonnegative:")
for v in BOX_VARS:
    face = p.substitute({v: 0})
    assert all(c >= 0 for c in face.terms.values())
    print(f"  {v}=0: {len(face.terms)} terms, all >= 0")

rng = random.Random(0)
pts = [{w: Fraction(rng.randint(1, 127), 128) for w in p.ring}
       for _ in range(200)]
assert all(p.evaluate(pt) >= 0 for pt in pts)
print("\np >= 0 at 200 random exact rational points of (0,1)^6")

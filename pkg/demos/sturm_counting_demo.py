"""Exact real-root counting with Sturm chains.

The headline routine for the certification pipeline is
no_roots_in_unit_interval: it squarefrees the input, deflates roots at the
endpoints 0 and 1, counts sign variations of the Sturm chain at both ends,
and returns a self-contained re-checkable certificate.
"""
from fractions import Fraction

from hurwitzcert.realroots import (
    UniPoly, count_roots_open, no_roots_in_unit_interval, parse_unipoly,
    recheck_certificate, sturm_sequence,
)

p = parse_unipoly("x^5 - 3*x^3 + 1")
print(f"p = x^5 - 3*x^3 + 1")
chain = sturm_sequence(p, normalization="primitive")
print(f"Sturm chain length: {len(chain)}")
for a, b in ((-2, 0), (0, 1), (1, 2), (-2, 2)):
    print(f"  distinct real roots in ({a},{b}): "
          f"{count_roots_open(p, Fraction(a), Fraction(b))}")

print("\nunit-interval certificate for q = x^2 + 10/49*x + 6/49")
q = parse_unipoly("x^2 + 10/49*x + 6/49")
ok, cert = no_roots_in_unit_interval(q)
print(cert.text())
assert ok and recheck_certificate(cert)
print("certificate re-checks: True")

print("\nand one with a root, r = (2x - 1)(x^2 + 1):")
r = parse_unipoly("2*x^3 - x^2 + 2*x - 1")
ok, cert = no_roots_in_unit_interval(r)
print(f"no roots in (0,1): {ok} "
      f"(count = {cert.roots_in_open_interval})")

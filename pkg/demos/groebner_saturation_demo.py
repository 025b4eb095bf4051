"""Groebner engine walk-through: reduced bases, saturation, elimination.

The running example is the ideal I = <x^2 - 1, x*y - 1>: its variety is the
two points (1,1) and (-1,-1).  Saturating by (x - 1) removes the first
point; eliminating x projects onto the y-line.
"""
from hurwitzcert.idealkit import (
    Ideal, buchberger, eliminate, ideal_quotient, is_unit_ideal, saturate,
)
from hurwitzcert.polycore import format_polynomial, parse_polynomial

ring = ("x", "y")
I = Ideal(ring, [parse_polynomial("x^2 - 1", ring),
                 parse_polynomial("x*y - 1", ring)])

print("generators:")
for g in I.generators:
    print(f"  {format_polynomial(g)}")

G = buchberger(I)
print("\nreduced Groebner basis (grevlex):")
for g in G.basis:
    print(f"  {format_polynomial(g)}")

sat = saturate(I, parse_polynomial("x - 1", ring))
print("\nsaturation by (x - 1) — the component at x=1 drops out:")
for g in sat.generators:
    print(f"  {format_polynomial(g)}")

quo = ideal_quotient(I, parse_polynomial("x - 1", ring))
print("\nideal quotient (I : x - 1) for comparison:")
for g in quo.generators:
    print(f"  {format_polynomial(g)}")

elim = eliminate(I, ["y"])
print("\nelimination ideal in y alone:")
for g in elim.generators:
    print(f"  {format_polynomial(g)}")

unit = Ideal(ring, [parse_polynomial("x", ring),
                    parse_polynomial("x - 1", ring)])
print(f"\n<x, x-1> is the unit ideal: {is_unit_ideal(unit)}")
print(f"I itself is not:            {is_unit_ideal(I)}")

"""Exact univariate real-root counting over the rationals.

Dense rational polynomials, square-free parts, Sturm chains, root counts in
open intervals by sign-variation differences, and a specialized audit-ready
check that a polynomial has no roots in (0, 1).  All arithmetic is exact;
no floating point enters any certification path.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class ZeroPolynomialError(ValueError):
    """An operation that requires a nonzero polynomial received zero."""


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial over Q, lowest-degree coefficient first.

    Invariant: the last stored coefficient is nonzero (zero polynomial is
    the empty tuple).
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly(())

    @staticmethod
    def constant(c) -> "UniPoly":
        return UniPoly((Fraction(c),))

    @staticmethod
    def x() -> "UniPoly":
        return UniPoly((0, 1))

    @staticmethod
    def from_roots(roots: Sequence) -> "UniPoly":
        p = UniPoly.constant(1)
        for r in roots:
            p = p * UniPoly((-Fraction(r), 1))
        return p

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return self.coeffs[-1]

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def monic(self) -> "UniPoly":
        lc = self.leading_coefficient()
        return UniPoly(tuple(c / lc for c in self.coeffs))

    def primitive(self) -> "UniPoly":
        """Scale by a positive rational so coefficients are coprime integers
        (sign of the polynomial is preserved)."""
        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return UniPoly(tuple(Fraction(v // g) for v in ints))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        d = other.degree()
        lc = other.leading_coefficient()
        q = [Fraction(0)] * max(0, len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            f = rem[i] / lc
            q[i - d] = f
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= f * c
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]


# ---------------------------------------------------------------------------
# Text form (single-variable restriction of the shared polynomial format)
# ---------------------------------------------------------------------------

_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def format_unipoly(p: UniPoly, var: str = "x") -> str:
    from .polycore import Polynomial, format_polynomial
    if p.is_zero():
        return "0"
    poly = Polynomial((var,), {(i,): c for i, c in enumerate(p.coeffs) if c})
    return format_polynomial(poly)


def parse_unipoly(text: str) -> UniPoly:
    """Parse a one-variable polynomial string (any variable name)."""
    from .polycore import parse_polynomial
    names = sorted(set(_VAR_RE.findall(text)))
    if len(names) > 1:
        raise ValueError(f"expected one variable, found {names}")
    var = names[0] if names else "x"
    poly = parse_polynomial(text, (var,))
    if poly.is_zero():
        return UniPoly.zero()
    n = max(m[0] for m in poly.terms)
    out = [Fraction(0)] * (n + 1)
    for m, c in poly.terms.items():
        out[m[0]] = c
    return UniPoly(out)


def unipoly_from_polynomial(poly, var: str | None = None) -> UniPoly:
    """Convert a polycore polynomial supported on one variable."""
    support = set()
    for m in poly.terms:
        for i, e in enumerate(m):
            if e:
                support.add(i)
    if len(support) > 1:
        used = [poly.ring[i] for i in sorted(support)]
        raise ValueError(f"polynomial uses several variables: {used}")
    if var is not None:
        idx = poly.ring.index(var)
        if support and support != {idx}:
            raise ValueError(f"polynomial is not univariate in {var!r}")
    elif support:
        idx = support.pop()
    else:
        idx = 0
    if poly.is_zero():
        return UniPoly.zero()
    n = max(m[idx] for m in poly.terms)
    out = [Fraction(0)] * (n + 1)
    for m, c in poly.terms.items():
        out[m[idx]] = c
    return UniPoly(out)


# ---------------------------------------------------------------------------
# gcd via integer-primitive pseudo-remainders (coefficient growth control)
# ---------------------------------------------------------------------------

def _pseudo_rem(f: UniPoly, g: UniPoly) -> UniPoly:
    """prem(f, g): remainder of lc(g)^(deg f - deg g + 1) * f by g."""
    df, dg = f.degree(), g.degree()
    if df < dg:
        return f
    lc = g.leading_coefficient()
    scaled = UniPoly(tuple(c * lc ** (df - dg + 1) for c in f.coeffs))
    return scaled % g


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd via a primitive pseudo-remainder sequence."""
    if f.is_zero():
        return g.monic() if not g.is_zero() else g
    if g.is_zero():
        return f.monic()
    a, b = f.primitive(), g.primitive()
    if a.degree() < b.degree():
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b)
        if not r.is_zero():
            r = r.primitive()
        a, b = b, r
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), monic: same real roots, all simple."""
    if p.is_zero():
        raise ZeroPolynomialError("square-free part of zero is undefined")
    if p.degree() == 0:
        return UniPoly.constant(1)
    g = poly_gcd(p, p.derivative())
    q, r = divmod(p, g)
    if not r.is_zero():
        raise AssertionError("gcd does not divide p — internal error")
    return q.monic()


# ---------------------------------------------------------------------------
# Sturm chains and root counting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SturmChain:
    """Sequence p, p', then successively negated remainders.

    With ``normalization="exact"`` each element is literally the negated
    remainder of the two preceding.  With ``"primitive"`` each remainder is
    additionally scaled by a positive rational to a primitive integer vector,
    which changes no sign anywhere and keeps coefficients small.
    """

    sequence: tuple
    normalization: str = "exact"

    def __iter__(self):
        return iter(self.sequence)

    def __len__(self):
        return len(self.sequence)

    def signs_at(self, x) -> tuple:
        """Signs (-1, 0, +1) of each chain element at x."""
        x = Fraction(x)
        out = []
        for q in self.sequence:
            v = q.evaluate(x)
            out.append(0 if v == 0 else (1 if v > 0 else -1))
        return tuple(out)

    def variations_at(self, x) -> int:
        """Sign variations at x, zeros dropped."""
        nz = [s for s in self.signs_at(x) if s]
        return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def sturm_sequence(p: UniPoly, normalization: str = "exact") -> SturmChain:
    """Sturm chain of p (callers pass square-free input for clean
    root-counting semantics)."""
    if p.is_zero():
        raise ZeroPolynomialError("Sturm chain of zero is undefined")
    if normalization not in ("exact", "primitive"):
        raise ValueError(f"unknown normalization {normalization!r}")
    chain = [p]
    d = p.derivative()
    if not d.is_zero():
        chain.append(d)
        while True:
            r = -(chain[-2] % chain[-1])
            if r.is_zero():
                break
            if normalization == "primitive":
                r = r.primitive()
            chain.append(r)
    return SturmChain(tuple(chain), normalization)


def count_roots_open(p: UniPoly, a, b,
                     normalization: str = "primitive") -> int:
    """Number of distinct real roots of p in the open interval (a, b).

    Works on the square-free part; requires that part to be nonzero at both
    endpoints (deflate endpoint roots first — see
    ``no_roots_in_unit_interval``).
    """
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError(f"degenerate interval ({a}, {b})")
    sf = squarefree_part(p)
    if sf.evaluate(a) == 0 or sf.evaluate(b) == 0:
        raise ValueError("polynomial vanishes at an interval endpoint")
    if sf.degree() == 0:
        return 0
    chain = sturm_sequence(sf, normalization)
    return chain.variations_at(a) - chain.variations_at(b)


def deflate_at(p: UniPoly, root) -> tuple:
    """Divide out (x - root) as often as it divides p exactly.

    Returns (quotient, multiplicity)."""
    root = Fraction(root)
    factor = UniPoly((-root, 1))
    mult = 0
    while not p.is_zero() and p.evaluate(root) == 0:
        p, r = divmod(p, factor)
        if not r.is_zero():
            raise AssertionError("exact deflation left a remainder")
        mult += 1
    return p, mult


@dataclass(frozen=True)
class UnitIntervalCertificate:
    """Audit record for a no-roots-in-(0,1) claim.

    Stores everything needed to re-check the claim from scratch: the input,
    its square-free part, endpoint deflation multiplicities, the deflated
    polynomial, the Sturm chain actually used, endpoint sign sequences,
    variation counts, and the resulting root count.
    """

    original: str
    squarefree: str
    multiplicity_at_0: int
    multiplicity_at_1: int
    deflated: str
    chain: tuple
    signs_at_0: tuple
    signs_at_1: tuple
    variations_at_0: int
    variations_at_1: int
    roots_in_open_interval: int
    conclusion: bool

    def text(self) -> str:
        lines = [
            "no-roots-in-(0,1) certificate",
            f"  input: {self.original}",
            f"  squarefree part: {self.squarefree}",
            f"  deflation: x^{self.multiplicity_at_0} * "
            f"(x - 1)^{self.multiplicity_at_1}",
            f"  deflated: {self.deflated}",
            "  sturm chain:",
        ]
        lines += [f"    [{i}] {s}" for i, s in enumerate(self.chain)]
        lines += [
            f"  signs at 0: {' '.join(_sgn(s) for s in self.signs_at_0)}"
            f"  -> variations {self.variations_at_0}",
            f"  signs at 1: {' '.join(_sgn(s) for s in self.signs_at_1)}"
            f"  -> variations {self.variations_at_1}",
            f"  distinct roots in (0,1): {self.roots_in_open_interval}",
            f"  conclusion: {'no roots in (0,1)' if self.conclusion else 'roots present in (0,1)'}",
        ]
        return "\n".join(lines)


def _sgn(s: int) -> str:
    return {1: "+", -1: "-", 0: "0"}[s]


def no_roots_in_unit_interval(p: UniPoly) -> tuple:
    """(claim, certificate): claim is True iff p has no roots in open (0,1).

    Endpoint roots at 0 and 1 are removed by exact deflation (the claim
    concerns the open interval only); the certificate records the full
    Sturm audit trail.
    """
    if p.is_zero():
        raise ZeroPolynomialError(
            "cannot certify the zero polynomial (every point is a root)")
    sf = squarefree_part(p)
    deflated, m0 = deflate_at(sf, 0)
    deflated, m1 = deflate_at(deflated, 1)
    if deflated.degree() <= 0:
        chain = SturmChain((deflated,), "primitive") \
            if not deflated.is_zero() else SturmChain(
                (UniPoly.constant(1),), "primitive")
        count = 0
        s0 = chain.signs_at(0)
        s1 = chain.signs_at(1)
        v0 = v1 = 0
    else:
        chain = sturm_sequence(deflated, normalization="primitive")
        s0 = chain.signs_at(0)
        s1 = chain.signs_at(1)
        v0 = chain.variations_at(0)
        v1 = chain.variations_at(1)
        count = v0 - v1
    cert = UnitIntervalCertificate(
        original=format_unipoly(p),
        squarefree=format_unipoly(sf),
        multiplicity_at_0=m0,
        multiplicity_at_1=m1,
        deflated=format_unipoly(deflated),
        chain=tuple(format_unipoly(q) for q in chain),
        signs_at_0=s0,
        signs_at_1=s1,
        variations_at_0=v0,
        variations_at_1=v1,
        roots_in_open_interval=count,
        conclusion=(count == 0),
    )
    return count == 0, cert


def recheck_certificate(cert: UnitIntervalCertificate) -> bool:
    """Recompute the whole claim from the certificate's input string and
    verify every recorded field; True only if all match."""
    p = parse_unipoly(cert.original)
    claim, fresh = no_roots_in_unit_interval(p)
    return (
        claim == cert.conclusion
        and fresh.squarefree == cert.squarefree
        and fresh.multiplicity_at_0 == cert.multiplicity_at_0
        and fresh.multiplicity_at_1 == cert.multiplicity_at_1
        and fresh.deflated == cert.deflated
        and fresh.chain == cert.chain
        and fresh.signs_at_0 == cert.signs_at_0
        and fresh.signs_at_1 == cert.signs_at_1
        and fresh.variations_at_0 == cert.variations_at_0
        and fresh.variations_at_1 == cert.variations_at_1
        and fresh.roots_in_open_interval == cert.roots_in_open_interval
    )

"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials are immutable sparse term maps ``{exponent tuple: Fraction}`` over
a fixed, ordered tuple of variable names (the *ring*).  All arithmetic is
exact; no floating point enters anywhere in this module.

The module also provides monomial orders (lexicographic and graded reverse
lexicographic, optionally composed with a variable permutation, plus a block
mode used for elimination) and a deterministic text format whose
parse/print round-trip is bit-exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple  # exponent vector, one nonnegative int per ring variable
Scalar = Union[int, Fraction]


class RingMismatchError(ValueError):
    """Raised when two polynomials from different rings are combined."""


class UnknownVariableError(ValueError):
    """Raised when an operation names a variable outside the ring."""


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative total order on exponent vectors.

    ``kind`` is ``"lex"`` or ``"grevlex"``; ``permutation`` optionally reorders
    the variables before comparison (``permutation[i]`` is the index, into the
    ring's native tuple, of the i-th most significant variable).  ``blocks``
    optionally splits the (permuted) variables into contiguous blocks compared
    left to right, each under ``kind``; this is the elimination order used by
    ``idealkit.eliminate``.

    Sort keys are *ascending*: bigger monomial, bigger key.
    """

    kind: str = "grevlex"
    permutation: tuple | None = None
    blocks: tuple | None = None  # lengths of successive blocks, sums to nvars

    def __post_init__(self) -> None:
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown order kind {self.kind!r}")

    def _permute(self, m: Monomial) -> tuple:
        if self.permutation is None:
            return tuple(m)
        return tuple(m[i] for i in self.permutation)

    def _block_key(self, seg: tuple) -> tuple:
        if self.kind == "lex":
            return seg
        return (sum(seg), tuple(-e for e in reversed(seg)))

    def key(self, m: Monomial):
        """Ascending sort key: ``key(m1) < key(m2)`` iff ``m1 < m2``."""
        pm = self._permute(m)
        if self.blocks is None:
            return self._block_key(pm)
        parts = []
        pos = 0
        for ln in self.blocks:
            parts.append(self._block_key(pm[pos:pos + ln]))
            pos += ln
        return tuple(parts)

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        """Return -1, 0, or 1 as m1 <, =, > m2."""
        if len(m1) != len(m2):
            raise RingMismatchError("monomials from rings of different arity")
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def compare(order: MonomialOrder, m1: Monomial, m2: Monomial) -> int:
    """Total-order comparison of two exponent vectors; -1/0/1."""
    return order.compare(m1, m2)


# ---------------------------------------------------------------------------
# Polynomial
# ---------------------------------------------------------------------------

def _as_fraction(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    Immutable after construction.  ``ring`` is the ordered tuple of variable
    names; ``terms`` maps exponent tuples to nonzero Fractions.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Mapping[Monomial, Scalar]):
        ring = tuple(ring)
        clean = {}
        nv = len(ring)
        for mono, coeff in terms.items():
            c = _as_fraction(coeff)
            if not c:
                continue
            mono = tuple(mono)
            if len(mono) != nv or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono} for ring {ring}")
            clean[mono] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring: Sequence[str]) -> "Polynomial":
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: Sequence[str], c: Scalar) -> "Polynomial":
        return cls(ring, {(0,) * len(tuple(ring)): _as_fraction(c)})

    @classmethod
    def one(cls, ring: Sequence[str]) -> "Polynomial":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: Sequence[str], name: str) -> "Polynomial":
        ring = tuple(ring)
        try:
            i = ring.index(name)
        except ValueError:
            raise UnknownVariableError(f"{name!r} not in ring {ring}") from None
        mono = tuple(1 if j == i else 0 for j in range(len(ring)))
        return cls(ring, {mono: Fraction(1)})

    @classmethod
    def variables(cls, ring: Sequence[str]) -> tuple:
        """All ring variables as polynomials, in ring order."""
        return tuple(cls.variable(ring, v) for v in tuple(ring))

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        """The coefficient of the monomial 1 (0 if absent)."""
        return self.terms.get((0,) * len(self.ring), Fraction(0))

    def total_degree(self) -> int:
        """Max total degree of any term; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self._var_index(name)
        return max((m[i] for m in self.terms), default=-1)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def _var_index(self, name: str) -> int:
        try:
            return self.ring.index(name)
        except ValueError:
            raise UnknownVariableError(
                f"{name!r} not in ring {self.ring}") from None

    def _check_ring(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(
                f"ring mismatch: {self.ring} vs {other.ring}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, other)
        self._check_ring(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, Fraction(0)) + c
            if v:
                terms[m] = v
            elif m in terms:
                del terms[m]
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return Polynomial.zero(self.ring)
            return Polynomial(self.ring,
                              {m: v * c for m, v in self.terms.items()})
        self._check_ring(other)
        # iterate over the smaller operand's terms in the outer loop
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = out.get(m)
                if v is None:
                    out[m] = ca * cb
                else:
                    v = v + ca * cb
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.ring, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    # -- calculus / mapping --------------------------------------------------

    def differentiate(self, name: str) -> "Polynomial":
        """Formal partial derivative with respect to one ring variable."""
        i = self._var_index(name)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1:]
            v = out.get(dm, Fraction(0)) + c * e
            if v:
                out[dm] = v
            elif dm in out:
                del out[dm]
        return Polynomial(self.ring, out)

    def substitute(self, bindings: Mapping[str, "Polynomial | Scalar"],
                   ring: Sequence[str] | None = None) -> "Polynomial":
        """Simultaneous exact substitution of variables.

        ``bindings`` maps variable names to polynomials (all over one result
        ring) or scalars.  Unbound variables must exist in the result ring and
        map to themselves.  ``ring`` fixes the result ring explicitly; when
        omitted it is taken from the first polynomial binding, else this
        polynomial's own ring.
        """
        for name in bindings:
            self._var_index(name)  # validate
        if ring is None:
            ring = next((b.ring for b in bindings.values()
                         if isinstance(b, Polynomial)), self.ring)
        ring = tuple(ring)
        images = []
        for v in self.ring:
            b = bindings.get(v, None)
            if b is None:
                images.append(Polynomial.variable(ring, v))
            elif isinstance(b, Polynomial):
                if b.ring != ring:
                    raise RingMismatchError(
                        f"binding for {v!r} lives in {b.ring}, expected {ring}")
                images.append(b)
            else:
                images.append(Polynomial.constant(ring, b))
        out = Polynomial.zero(ring)
        # Horner-free exact expansion; power caching per variable keeps the
        # m<=8 workloads cheap.
        pow_cache: list[dict[int, Polynomial]] = [dict() for _ in self.ring]
        for m, c in self.terms.items():
            term = Polynomial.constant(ring, c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cache = pow_cache[i]
                if e not in cache:
                    cache[e] = images[i] ** e
                term = term * cache[e]
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a fully specified rational point."""
        vals = []
        for v in self.ring:
            if v not in point:
                raise UnknownVariableError(f"unbound variable {v!r}")
            vals.append(_as_fraction(point[v]))
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for val, e in zip(vals, m):
                if e:
                    term *= val ** e
            total += term
        return total

    def extend_ring(self, ring: Sequence[str]) -> "Polynomial":
        """The same polynomial viewed in a larger ring (matched by name)."""
        ring = tuple(ring)
        idx = []
        for v in self.ring:
            try:
                idx.append(ring.index(v))
            except ValueError:
                raise UnknownVariableError(
                    f"{v!r} missing from target ring {ring}") from None
        nv = len(ring)
        out = {}
        for m, c in self.terms.items():
            nm = [0] * nv
            for j, e in enumerate(m):
                nm[idx[j]] = e
            out[tuple(nm)] = c
        return Polynomial(ring, out)

    def restrict_ring(self, ring: Sequence[str]) -> "Polynomial":
        """The same polynomial in a smaller ring; fails if a dropped variable
        actually occurs."""
        ring = tuple(ring)
        keep = {v: ring.index(v) for v in ring}
        nv = len(ring)
        out = {}
        for m, c in self.terms.items():
            nm = [0] * nv
            for j, e in enumerate(m):
                v = self.ring[j]
                if v in keep:
                    nm[keep[v]] = e
                elif e:
                    raise UnknownVariableError(
                        f"variable {v!r} occurs but is not in {ring}")
            out[tuple(nm)] = c
        return Polynomial(ring, out)

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive (0 for zero)."""
        if not self.terms:
            return Fraction(0)
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_part(self) -> "Polynomial":
        """self divided by its content, sign-normalized so the grevlex leading
        coefficient is positive; zero stays zero."""
        c = self.content()
        if not c:
            return self
        out = self * (1 / c)
        if out.leading_coefficient(GREVLEX) < 0:
            out = -out
        return out

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # -- text format ---------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.ring!r}, {format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# Spec-level free functions (thin wrappers over the methods)
# ---------------------------------------------------------------------------

def arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Exact add/sub/mul of two polynomials over one ring."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def power(f: Polynomial, e: int) -> Polynomial:
    return f ** e


def differentiate(f: Polynomial, var: str) -> Polynomial:
    return f.differentiate(var)


def substitute(f: Polynomial, bindings, ring=None) -> Polynomial:
    return f.substitute(bindings, ring)


def evaluate(f: Polynomial, point) -> Fraction:
    return f.evaluate(point)


# ---------------------------------------------------------------------------
# Text format: parse / print, bit-exact round-trip
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*([+-]|\d+/\d+|\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*)")


def format_polynomial(f: Polynomial) -> str:
    """Deterministic text form: terms in descending grevlex order, normalized
    signs, coefficients as integers or n/d, monomials like ``x^3*y``."""
    if not f.terms:
        return "0"
    monos = sorted(f.terms, key=GREVLEX.key, reverse=True)
    parts = []
    for i, m in enumerate(monos):
        c = f.terms[m]
        neg = c < 0
        c = abs(c)
        factors = []
        for v, e in zip(f.ring, m):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        coeff_str = str(c)  # Fraction prints as "n" or "n/d"
        if factors and c == 1:
            body = "*".join(factors)
        elif factors:
            body = coeff_str + "*" + "*".join(factors)
        else:
            body = coeff_str
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def parse_polynomial(text: str, ring: Sequence[str]) -> Polynomial:
    """Parse the text format back into a Polynomial; inverse of
    ``format_polynomial`` and tolerant of arbitrary whitespace."""
    ring = tuple(ring)
    pos = 0
    tokens = []
    text = text.replace("−", "-")  # unicode minus
    while pos < len(text):
        mm = _TOKEN.match(text, pos)
        if not mm:
            if text[pos:].strip():
                raise ValueError(f"bad token at {text[pos:pos+20]!r}")
            break
        tokens.append(mm.group(1))
        pos = mm.end()
    i = 0
    n = len(tokens)
    terms: dict = {}
    nv = len(ring)

    def add_term(coeff: Fraction, mono: list) -> None:
        key = tuple(mono)
        v = terms.get(key, Fraction(0)) + coeff
        if v:
            terms[key] = v
        elif key in terms:
            del terms[key]

    while i < n:
        sign = 1
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ValueError("dangling sign")
        coeff = Fraction(1)
        mono = [0] * nv
        saw_factor = False
        expect_factor = True
        while i < n:
            t = tokens[i]
            if t in "+-" and not expect_factor:
                break
            if t == "*":
                i += 1
                expect_factor = True
                continue
            if re.fullmatch(r"\d+/\d+|\d+", t):
                coeff *= Fraction(t)
                i += 1
                saw_factor = True
                expect_factor = False
                continue
            if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", t):
                if t not in ring:
                    raise UnknownVariableError(
                        f"{t!r} not in ring {ring}")
                j = ring.index(t)
                e = 1
                if i + 1 < n and tokens[i + 1] == "^":
                    if i + 2 >= n or not tokens[i + 2].isdigit():
                        raise ValueError("malformed exponent")
                    e = int(tokens[i + 2])
                    i += 2
                mono[j] += e
                i += 1
                saw_factor = True
                expect_factor = False
                continue
            raise ValueError(f"unexpected token {t!r}")
        if not saw_factor:
            raise ValueError("empty term")
        add_term(sign * coeff, mono)
    return Polynomial(ring, terms)

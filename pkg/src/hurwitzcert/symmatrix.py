"""Matrices with polynomial entries and Hurwitz word-sum products.

The Hurwitz product S_{m,k}(A, B) is the sum of all C(m, k) words of length m
in the letters A and B containing exactly k B's; its trace is the t^k
coefficient of Tr[(A + tB)^m].  Two independent implementations are provided:
a dynamic program over the standard recurrence

    S_{l+1,k}(A,B) = S_{l,k-1}(A,B)·B + S_{l,k}(A,B)·A,   S_{0,0} = I,

and a literal brute-force enumeration of all words, used as an oracle.

Also here: the exact trace identity
``(m-k)·Tr[S_{m,k}(A,B)] = m·Tr[A·S_{m-1,k}(A,B)]`` (valid for all square A,
B and k < m) and the stationarity residual for box-constrained minimizers of
``Tr[S_{m,k}(diag(1,a),B)]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .polycore import (
    Polynomial,
    RingMismatchError,
    Scalar,
    format_polynomial,
    parse_polynomial,
)


class DimensionMismatchError(ValueError):
    """Raised when matrix dimensions or rings do not line up."""


class PolyMatrix:
    """Immutable square matrix of Polynomials over a shared ring."""

    __slots__ = ("n", "ring", "entries", "symmetric")

    def __init__(self, entries: Sequence[Sequence[Polynomial]],
                 symmetric: bool | None = None):
        rows = tuple(tuple(row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatchError("matrix must be square")
        if n == 0:
            raise DimensionMismatchError("empty matrix")
        ring = rows[0][0].ring
        for row in rows:
            for e in row:
                if e.ring != ring:
                    raise RingMismatchError("entries span multiple rings")
        if symmetric is None:
            symmetric = all(rows[i][j] == rows[j][i]
                            for i in range(n) for j in range(i + 1, n))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "symmetric", bool(symmetric))

    def __setattr__(self, *a):
        raise AttributeError("PolyMatrix is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, n: int, ring: Sequence[str]) -> "PolyMatrix":
        one = Polynomial.one(ring)
        zero = Polynomial.zero(ring)
        return cls([[one if i == j else zero for j in range(n)]
                    for i in range(n)])

    @classmethod
    def zero(cls, n: int, ring: Sequence[str]) -> "PolyMatrix":
        z = Polynomial.zero(ring)
        return cls([[z] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence[Polynomial]) -> "PolyMatrix":
        ring = diag[0].ring
        z = Polynomial.zero(ring)
        n = len(diag)
        return cls([[diag[i] if i == j else z for j in range(n)]
                    for i in range(n)])

    @classmethod
    def from_scalars(cls, rows: Sequence[Sequence[Scalar]],
                     ring: Sequence[str] = ()) -> "PolyMatrix":
        return cls([[Polynomial.constant(ring, v) for v in row]
                    for row in rows])

    @classmethod
    def symbolic(cls, n: int, prefix: str = "a",
                 symmetric: bool = False,
                 extra_vars: Sequence[str] = ()) -> "PolyMatrix":
        """Fully symbolic matrix with deterministic entry names a11, a12, ...

        With ``symmetric=True`` only the upper triangle gets fresh names and
        the matrix is symmetric by construction.
        """
        names = []
        for i in range(n):
            for j in range(n):
                if symmetric and i > j:
                    continue
                names.append(f"{prefix}{i + 1}{j + 1}")
        ring = tuple(names) + tuple(extra_vars)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                a, b = (j, i) if (symmetric and i > j) else (i, j)
                row.append(Polynomial.variable(ring, f"{prefix}{a + 1}{b + 1}"))
            rows.append(row)
        return cls(rows)

    # -- algebra -------------------------------------------------------------

    def _check(self, other: "PolyMatrix") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"{self.n} vs {other.n}")
        if self.ring != other.ring:
            raise RingMismatchError("matrices over different rings")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        return PolyMatrix([[a + b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        return PolyMatrix([[a - b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.entries, other.entries)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            return PolyMatrix([[e * other for e in row]
                               for row in self.entries])
        self._check(other)
        n = self.n
        bt = list(zip(*other.entries))  # columns of other
        rows = []
        for i in range(n):
            ra = self.entries[i]
            rows.append([_dot(ra, bt[j]) for j in range(n)])
        return PolyMatrix(rows)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PolyMatrix":
        if e < 0:
            raise ValueError("negative matrix power")
        result = PolyMatrix.identity(self.n, self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.n == other.n
                and self.ring == other.ring and self.entries == other.entries)

    def __hash__(self):
        return hash((self.n, self.ring, self.entries))

    def trace(self) -> Polynomial:
        t = Polynomial.zero(self.ring)
        for i in range(self.n):
            t = t + self.entries[i][i]
        return t

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(tuple(zip(*self.entries)))

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries])

    def substitute(self, bindings, ring=None) -> "PolyMatrix":
        return self.map_entries(lambda e: e.substitute(bindings, ring))

    def determinant(self) -> Polynomial:
        """Exact determinant by cofactor expansion (small n only)."""
        n = self.n
        if n == 1:
            return self.entries[0][0]
        det = Polynomial.zero(self.ring)
        for j in range(n):
            minor = PolyMatrix([row[:j] + row[j + 1:]
                                for row in self.entries[1:]])
            term = self.entries[0][j] * minor.determinant()
            det = det + term if j % 2 == 0 else det - term
        return det

    def __repr__(self):
        return f"PolyMatrix({self.n}x{self.n} over {self.ring})"


def _dot(row, col) -> Polynomial:
    acc = Polynomial.zero(row[0].ring)
    for a, b in zip(row, col):
        acc = acc + a * b
    return acc


# ---------------------------------------------------------------------------
# Hurwitz products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HurwitzTable:
    """All recurrence cells S_{l,k}(A, B) for l <= m, 0 <= k <= l."""

    m: int
    table: Mapping[tuple, PolyMatrix]

    def __getitem__(self, key: tuple) -> PolyMatrix:
        return self.table[key]


def hurwitz_table(A: PolyMatrix, B: PolyMatrix, m: int) -> HurwitzTable:
    """Dynamic program over the recurrence; memoizes every (length, b-count)
    cell so callers can read S_{m-1,k} alongside S_{m,k}."""
    A._check(B)
    if m < 0:
        raise ValueError("m must be nonnegative")
    table: dict[tuple, PolyMatrix] = {(0, 0): PolyMatrix.identity(A.n, A.ring)}
    for length in range(m):
        for k in range(length + 2):
            prev_km1 = table.get((length, k - 1))
            prev_k = table.get((length, k))
            cell = None
            if prev_km1 is not None:
                cell = prev_km1 * B
            if prev_k is not None:
                t = prev_k * A
                cell = t if cell is None else cell + t
            if cell is not None:
                table[(length + 1, k)] = cell
    return HurwitzTable(m, table)


def hurwitz(A: PolyMatrix, B: PolyMatrix, m: int, k: int) -> PolyMatrix:
    """S_{m,k}(A, B) via the recurrence."""
    _check_mk(m, k)
    return hurwitz_table(A, B, m)[(m, k)]


def hurwitz_bruteforce(A: PolyMatrix, B: PolyMatrix, m: int,
                       k: int) -> PolyMatrix:
    """S_{m,k}(A, B) by literal enumeration of all C(m, k) words.

    Independent oracle for ``hurwitz``: shares no code with the recurrence.
    Words are products left to right; position sets are enumerated with
    ``itertools.combinations``, and prefixes are reused via a simple stack so
    the cost stays near one matrix multiply per word letter.
    """
    A._check(B)
    _check_mk(m, k)
    if m == 0:
        return PolyMatrix.identity(A.n, A.ring)
    total = PolyMatrix.zero(A.n, A.ring)
    prev_word: tuple = ()
    stack: list[PolyMatrix] = []  # stack[i] = product of word[:i+1]
    for positions in combinations(range(m), k):
        posset = set(positions)
        word = tuple(1 if i in posset else 0 for i in range(m))
        # longest common prefix with the previous word
        lcp = 0
        while lcp < len(prev_word) and lcp < m and word[lcp] == prev_word[lcp]:
            lcp += 1
        del stack[lcp:]
        for i in range(lcp, m):
            letter = B if word[i] else A
            prod = letter if not stack else stack[-1] * letter
            stack.append(prod)
        total = total + stack[-1]
        prev_word = word
    return total


def _check_mk(m: int, k: int) -> None:
    if m < 0:
        raise ValueError("m must be nonnegative")
    if not 0 <= k <= m:
        raise ValueError(f"k={k} out of range [0, {m}]")


# ---------------------------------------------------------------------------
# Trace coefficients and identities
# ---------------------------------------------------------------------------

def trace_coefficients(A: PolyMatrix, B: PolyMatrix, m: int,
                       method: str = "recurrence") -> list:
    """Coefficients of Tr[(A + tB)^m] as polynomials: entry k is
    Tr[S_{m,k}(A, B)].

    ``method="recurrence"`` reads traces off the Hurwitz table;
    ``method="adjoin_t"`` adjoins a fresh variable t, expands Tr[(A+tB)^m]
    and collects t-degrees — an independent derivation used as cross-check.
    """
    A._check(B)
    if method == "recurrence":
        table = hurwitz_table(A, B, m)
        return [table[(m, k)].trace() for k in range(m + 1)]
    if method == "adjoin_t":
        tname = _fresh_name(A.ring, "t")
        big = A.ring + (tname,)
        At = A.map_entries(lambda e: e.extend_ring(big))
        Bt = B.map_entries(lambda e: e.extend_ring(big))
        t = Polynomial.variable(big, tname)
        tr = ((At + Bt * t) ** m).trace()
        ti = big.index(tname)
        coeffs = [dict() for _ in range(m + 1)]
        for mono, c in tr.terms.items():
            k = mono[ti]
            small = mono[:ti] + mono[ti + 1:]
            coeffs[k][small] = c
        return [Polynomial(A.ring, d) for d in coeffs]
    raise ValueError(f"unknown method {method!r}")


def _fresh_name(ring: Sequence[str], base: str) -> str:
    name = base
    while name in ring:
        name += "_"
    return name


def verify_trace_identity(A: PolyMatrix, B: PolyMatrix, m: int,
                          k: int) -> bool:
    """Exact check of (m-k)·Tr[S_{m,k}(A,B)] = m·Tr[A·S_{m-1,k}(A,B)].

    Holds for arbitrary square A, B and k < m; the difference is computed as
    a polynomial and compared with zero.
    """
    if k >= m:
        raise ValueError("identity requires k < m")
    _check_mk(m, k)
    table = hurwitz_table(A, B, m)
    lhs = table[(m, k)].trace() * (m - k)
    rhs = (A * table[(m - 1, k)]).trace() * m
    return (lhs - rhs).is_zero()


def stationarity_residual(Aprime: PolyMatrix, B: PolyMatrix, D: PolyMatrix,
                          m: int, k: int) -> Polynomial:
    """Exact residual Tr[S_{m,k}(A',B)] - m/(m-k)·Tr[D·S_{m-1,k}(A',B)].

    A' = diag(1, a_1, ..., a_{n-1}) with the a_i in [0,1]; D is the 0/1
    diagonal matrix with first entry 1 and d_i = 0 exactly where a_i = 0.
    At a box-constrained minimizer of Tr[S_{m,k}(diag(1,a),B)] the residual
    is zero; elsewhere it generally is not.
    """
    if k >= m:
        raise ValueError("residual requires k < m")
    Aprime._check(B)
    Aprime._check(D)
    n = Aprime.n
    zero = Polynomial.zero(Aprime.ring)
    one = Polynomial.one(Aprime.ring)
    for i in range(n):
        for j in range(n):
            if i != j:
                if not Aprime.entries[i][j].is_zero():
                    raise ValueError("Aprime must be diagonal")
                if not D.entries[i][j].is_zero():
                    raise ValueError("D must be diagonal")
    if Aprime.entries[0][0] != one or D.entries[0][0] != one:
        raise ValueError("first diagonal entry of Aprime and D must be 1")
    for i in range(1, n):
        d = D.entries[i][i]
        a = Aprime.entries[i][i]
        if d != zero and d != one:
            raise ValueError("D entries must be 0 or 1")
        if (d == zero) != (a == zero):
            raise ValueError("d_i must be 0 exactly where a_i = 0")
    table = hurwitz_table(Aprime, B, m)
    lhs = table[(m, k)].trace()
    rhs = (D * table[(m - 1, k)]).trace() * Fraction(m, m - k)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Matrix text format: rows separated by ";", entries by ","
# ---------------------------------------------------------------------------

def format_matrix(M: PolyMatrix) -> str:
    return "; ".join(", ".join(format_polynomial(e) for e in row)
                     for row in M.entries)


def parse_matrix(text: str, ring: Sequence[str]) -> PolyMatrix:
    rows = []
    for chunk in text.strip().split(";"):
        row = [parse_polynomial(part, ring) for part in chunk.split(",")]
        rows.append(row)
    return PolyMatrix(rows)

"""Groebner-basis engine over the rationals.

Multivariate division, S-polynomials, Buchberger's algorithm with
Gebauer-Moeller pair pruning, ideal quotient, saturation, elimination ideals,
and unit-ideal detection.  Every engine run carries an explicit resource
budget (pair count, stored-term count, wall clock); exceeding it raises
``BudgetExceededError`` carrying the partial state, never a silent wrong
answer.

Internals keep integer-primitive polynomials (dict monomial -> int, content
removed after every reduction) for speed; the public surface speaks
``polycore.Polynomial`` with exact rational coefficients.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heappush, heappop
from math import gcd
from typing import Iterable, Sequence

from .polycore import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    RingMismatchError,
    parse_polynomial,
)


class BudgetExceededError(RuntimeError):
    """An engine run hit its resource budget.

    Attributes: ``partial`` (list of Polynomial, the basis so far, not
    reduced), ``pairs_done``, ``elapsed``.
    """

    def __init__(self, message: str, partial=None, pairs_done=0, elapsed=0.0):
        super().__init__(message)
        self.partial = partial or []
        self.pairs_done = pairs_done
        self.elapsed = elapsed


@dataclass(frozen=True)
class Budget:
    """Resource limits for one engine run."""

    max_pairs: int = 1_000_000
    max_seconds: float = 3600.0
    max_terms: int = 50_000_000  # total stored terms across the basis

    @staticmethod
    def unlimited() -> "Budget":
        return Budget(max_pairs=1 << 62, max_seconds=1e18, max_terms=1 << 62)


@dataclass(frozen=True)
class Ideal:
    """A finitely generated ideal: ring plus nonzero generators."""

    ring: tuple
    generators: tuple

    def __init__(self, ring: Sequence[str],
                 generators: Iterable[Polynomial] = ()):
        ring = tuple(ring)
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(
                    f"generator ring {g.ring} != ideal ring {ring}")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def __iter__(self):
        return iter(self.generators)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced, monic Groebner basis under a stated order."""

    order: MonomialOrder
    basis: tuple
    ring: tuple
    pairs_done: int = 0
    elapsed: float = 0.0

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


# ---------------------------------------------------------------------------
# Integer-primitive internal representation
#
# an "ipoly" is a dict {monomial tuple: nonzero int}, content-free, with a
# cached triple (lm, lc, mask) carried alongside in the basis list.
# ---------------------------------------------------------------------------

def _to_ipoly(f: Polynomial) -> dict:
    """Clear denominators and remove integer content; sign-normalize later."""
    if f.is_zero():
        return {}
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in f.terms.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {m: v // g for m, v in ints.items()}
    return ints

def _to_polynomial(p: dict, ring, order, monic=True) -> Polynomial:
    poly = Polynomial(ring, {m: Fraction(c) for m, c in p.items()})
    if monic and poly.terms:
        poly = poly.monic(order)
    return poly


def _mask(m: tuple) -> int:
    """Divisibility prefilter bitmask: bit i set iff exponent i is nonzero."""
    mk = 0
    for i, e in enumerate(m):
        if e:
            mk |= 1 << i
    return mk


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _msub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _mmul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _mlcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _content(p: dict) -> int:
    g = 0
    for v in p.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def _strip_content(p: dict) -> dict:
    g = _content(p)
    if g > 1:
        return {m: v // g for m, v in p.items()}
    return p


class _Reducer:
    """A basis held for reduction: leading data precomputed, lazy heaps.

    With ``modulus`` set, arithmetic happens in the prime field GF(modulus)
    and stored elements are normalized to leading coefficient 1.  That mode
    exists for strategy scouting only (see groebner_with_probes); exact
    certification paths never set it.
    """

    def __init__(self, order: MonomialOrder, modulus: int | None = None):
        self.order = order
        self.key = order.key
        self.modulus = modulus
        self.polys: list[dict] = []
        self.lms: list[tuple] = []
        self.lcs: list[int] = []
        self.masks: list[int] = []
        self.alive: list[bool] = []  # usable for *new pairs*; always reduces

    def add(self, p: dict) -> int:
        lm = max(p, key=self.key)
        if self.modulus:
            inv = pow(p[lm], -1, self.modulus)
            p = {m: (c * inv) % self.modulus for m, c in p.items()}
        self.polys.append(p)
        self.lms.append(lm)
        self.lcs.append(p[lm])
        self.masks.append(_mask(lm))
        self.alive.append(True)
        return len(self.polys) - 1

    def find_divisor(self, m: tuple, mmask: int) -> int:
        """Index of some basis element whose lm divides m, else -1."""
        lms = self.lms
        masks = self.masks
        for i in range(len(lms)):
            if masks[i] & ~mmask:
                continue
            lm = lms[i]
            ok = True
            for x, y in zip(lm, m):
                if x > y:
                    ok = False
                    break
            if ok:
                return i
        return -1

    def top_reduce(self, p: dict, charge=None) -> dict:
        """Fraction-free top-reduction of p until its lm is irreducible.

        Returns a content-free dict (possibly empty).  ``charge`` is an
        optional callable invoked per reduction step for budget accounting.
        """
        key = self.key
        mod = self.modulus
        heap: list = []
        for m in p:
            heappush(heap, (_neg_key(key(m)), m))
        p = dict(p)
        while heap:
            _, m = heappop(heap)
            c = p.get(m)
            if not c:
                continue
            mmask = _mask(m)
            gi = self.find_divisor(m, mmask)
            if gi < 0:
                # leading monomial irreducible: done (top reduction only)
                return p if mod else _strip_content(p)
            if charge is not None:
                charge()
            g = self.polys[gi]
            glm = self.lms[gi]
            glc = self.lcs[gi]
            shift = _msub(m, glm)
            if mod:
                mult_g = c  # stored lc is 1 in field mode
            else:
                d = gcd(c, glc)
                mult_f = glc // d       # scale whole of p
                mult_g = c // d         # scale subtracted g
                if mult_f != 1:
                    for mm in p:
                        p[mm] *= mult_f
            del p[m]
            for gm, gc in g.items():
                if gm == glm:
                    continue
                t = _mmul(gm, shift)
                v = p.get(t)
                if v is None:
                    v = -mult_g * gc
                    p[t] = v % mod if mod else v
                    heappush(heap, (_neg_key(key(t)), t))
                else:
                    v -= mult_g * gc
                    if mod:
                        v %= mod
                    if v:
                        p[t] = v
                    else:
                        del p[t]
        return p if mod else _strip_content(p)

    def full_reduce(self, p: dict, charge=None) -> dict:
        """Fraction-free full normal form: no term divisible by any lm."""
        key = self.key
        mod = self.modulus
        p = self.top_reduce(p, charge)
        if not p:
            return p
        out: dict = {}
        heap = []
        for m in p:
            heappush(heap, (_neg_key(key(m)), m))
        p = dict(p)
        while heap:
            _, m = heappop(heap)
            c = p.get(m)
            if not c:
                continue
            gi = self.find_divisor(m, _mask(m))
            if gi < 0:
                out[m] = c
                del p[m]
                continue
            if charge is not None:
                charge()
            g = self.polys[gi]
            glm = self.lms[gi]
            glc = self.lcs[gi]
            shift = _msub(m, glm)
            if mod:
                mult_g = c
            else:
                d = gcd(c, glc)
                mult_f = glc // d
                mult_g = c // d
                if mult_f != 1:
                    for mm in p:
                        p[mm] *= mult_f
                    for mm in out:
                        out[mm] *= mult_f
            del p[m]
            for gm, gc in g.items():
                if gm == glm:
                    continue
                t = _mmul(gm, shift)
                v = p.get(t)
                if v is None:
                    v = -mult_g * gc
                    p[t] = v % mod if mod else v
                    heappush(heap, (_neg_key(key(t)), t))
                else:
                    v -= mult_g * gc
                    if mod:
                        v %= mod
                    if v:
                        p[t] = v
                    else:
                        del p[t]
        return out if mod else _strip_content(out)


def _neg_key(k):
    """Negate an order key so a min-heap pops the largest monomial first."""
    if isinstance(k, tuple):
        return tuple(_neg_key(x) for x in k)
    return -k


# ---------------------------------------------------------------------------
# Buchberger core
# ---------------------------------------------------------------------------

@dataclass
class _RunState:
    pairs_done: int = 0
    reductions: int = 0
    start: float = field(default_factory=time.monotonic)


def _spoly(f: dict, flm: tuple, flc: int, g: dict, glm: tuple,
           glc: int, mod: int | None = None) -> dict:
    l = _mlcm(flm, glm)
    uf = _msub(l, flm)
    ug = _msub(l, glm)
    if mod:
        cf = cg = 1  # field mode keeps leading coefficients at 1
    else:
        d = gcd(flc, glc)
        cf = glc // d
        cg = flc // d
    out: dict = {}
    for m, c in f.items():
        out[_mmul(m, uf)] = c * cf
    for m, c in g.items():
        t = _mmul(m, ug)
        v = out.get(t)
        if v is None:
            v = -c * cg
            out[t] = v % mod if mod else v
        else:
            v -= c * cg
            if mod:
                v %= mod
            if v:
                out[t] = v
            else:
                del out[t]
    return out


def _buchberger_core(gens: list[dict], order: MonomialOrder,
                     budget: Budget,
                     stop_on_unit: bool = False,
                     probes: list[dict] | None = None,
                     probe_interval: int = 16,
                     degree_bound: int | None = None,
                     weights: tuple | None = None,
                     modulus: int | None = None):
    """Engine: returns (reducer, status, probe_hit) where status is
    "done" | "unit" | "probe"; raises BudgetExceededError on budget.

    ``probes``: optional integer polynomials tested for membership as the
    basis grows; if one reduces to zero the run stops with status "probe" and
    ``probe_hit`` is its index.  ``degree_bound`` with ``weights`` truncates
    the run to S-pairs whose lcm has weighted degree <= bound (complete for
    membership of elements of weighted degree <= bound when all generators
    are weighted-homogeneous).  ``modulus`` switches coefficient arithmetic
    to GF(modulus) — scouting only, never a certificate.
    """
    if modulus:
        gens = [{m: v for m, v in ((m, c % modulus) for m, c in g.items())
                 if v} for g in gens]
    red = _Reducer(order, modulus)
    state = _RunState()
    key = order.key

    def wdeg(m: tuple) -> int:
        if weights is None:
            return sum(m)
        return sum(e * w for e, w in zip(m, weights))

    def charge():
        state.reductions += 1
        if state.reductions % 4096 == 0:
            _check_budget(red, state, budget)

    pairs: list = []  # heap of (sel_key, lcm, i, j)

    def push_pair(i: int, j: int) -> None:
        l = _mlcm(red.lms[i], red.lms[j])
        if degree_bound is not None and wdeg(l) > degree_bound:
            return
        heappush(pairs, (key(l), l, i, j))

    def update_pairs(t: int) -> None:
        """Gebauer-Moeller update after adding basis element t."""
        lt = red.lms[t]
        cand = []
        for i in range(t):
            if not red.alive[i]:
                continue
            l = _mlcm(red.lms[i], lt)
            cand.append((l, i))
        # drop B-criterion pairs from the existing queue: lm(t) divides the
        # lcm and both new lcms differ from it
        keep: list = []
        for entry in pairs:
            _, l, i, j = entry
            if (_divides(lt, l)
                    and _mlcm(red.lms[i], lt) != l
                    and _mlcm(red.lms[j], lt) != l):
                continue
            keep.append(entry)
        if len(keep) != len(pairs):
            pairs[:] = keep
            import heapq as _h
            _h.heapify(pairs)
        # M-criterion among the new pairs: keep only minimal lcms
        cand.sort(key=lambda e: key(e[0]))
        kept: list = []
        for l, i in cand:
            if any(_divides(lk, l) and lk != l for lk, _ in kept):
                continue
            kept.append((l, i))
        # F-criterion: for identical lcms keep one representative
        seen = {}
        for l, i in kept:
            seen.setdefault(l, i)
        for l, i in seen.items():
            # Buchberger's coprime criterion
            if _mmul(red.lms[i], lt) == l:
                continue
            if degree_bound is not None and wdeg(l) > degree_bound:
                continue
            heappush(pairs, (key(l), l, i, t))
        # mark superseded basis elements (still valid reducers)
        for i in range(t):
            if red.alive[i] and _divides(lt, red.lms[i]):
                red.alive[i] = False

    pending_probes: dict[int, dict] = {}
    if probes:
        if modulus:
            probes = [{m: v for m, v in
                       ((m, c % modulus) for m, c in p.items()) if v}
                      for p in probes]
        pending_probes = {i: p for i, p in enumerate(probes) if p}

    def run_probes(force=False) -> int | None:
        for idx in list(pending_probes):
            r = red.top_reduce(pending_probes[idx], charge)
            r = red.full_reduce(r, charge) if r else r
            if not r:
                return idx
            pending_probes[idx] = r  # keep partial progress
        return None

    for g in gens:
        if not g:
            continue
        if degree_bound is None:
            g = red.full_reduce(g, charge)
            if not g:
                continue
        t = red.add(g)
        if stop_on_unit and not any(red.lms[t]):
            return red, "unit", None
        update_pairs(t)

    since_probe = 0
    while pairs:
        _check_budget(red, state, budget)
        if state.pairs_done >= budget.max_pairs:
            raise BudgetExceededError(
                f"pair budget {budget.max_pairs} exhausted",
                partial=_export(red, order), pairs_done=state.pairs_done,
                elapsed=time.monotonic() - state.start)
        _, l, i, j = heappop(pairs)
        state.pairs_done += 1
        s = _spoly(red.polys[i], red.lms[i], red.lcs[i],
                   red.polys[j], red.lms[j], red.lcs[j], modulus)
        if not s:
            continue
        r = red.top_reduce(s, charge)
        if not r:
            continue
        t = red.add(r)
        if stop_on_unit and not any(red.lms[t]):
            return red, "unit", None
        update_pairs(t)
        since_probe += 1
        if pending_probes and since_probe >= probe_interval:
            since_probe = 0
            hit = run_probes()
            if hit is not None:
                return red, "probe", hit
    if pending_probes:
        hit = run_probes(force=True)
        if hit is not None:
            return red, "probe", hit
    return red, "done", None


def _check_budget(red: _Reducer, state: _RunState, budget: Budget) -> None:
    elapsed = time.monotonic() - state.start
    if elapsed > budget.max_seconds:
        raise BudgetExceededError(
            f"wall-clock budget {budget.max_seconds}s exhausted",
            partial=list(red.polys), pairs_done=state.pairs_done,
            elapsed=elapsed)
    if state.reductions % 65536 == 0:
        total_terms = sum(len(p) for p in red.polys)
        if total_terms > budget.max_terms:
            raise BudgetExceededError(
                f"term budget {budget.max_terms} exhausted",
                partial=list(red.polys), pairs_done=state.pairs_done,
                elapsed=elapsed)


def _export(red: _Reducer, order: MonomialOrder) -> list[dict]:
    return list(red.polys)


def _interreduce(polys: list[dict], order: MonomialOrder) -> list[dict]:
    """Turn a Groebner set into the reduced basis (integer-primitive)."""
    key = order.key
    # keep only lm-minimal elements
    items = [(max(p, key=key), p) for p in polys if p]
    items.sort(key=lambda t: key(t[0]))
    kept: list = []
    for lm, p in items:
        if any(_divides(klm, lm) for klm, _ in kept):
            continue
        kept.append((lm, p))
    # tail-reduce each against the others
    out: list[dict] = []
    for idx, (lm, p) in enumerate(kept):
        red = _Reducer(order)
        for j, (lm2, q) in enumerate(kept):
            if j != idx:
                red.add(q)
        r = red.full_reduce(p)
        if r:
            out.append(r)
    out.sort(key=lambda p: key(max(p, key=key)))
    return out


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def normal_form(f: Polynomial, G, order: MonomialOrder = GREVLEX,
                budget: Budget | None = None) -> Polynomial:
    """Remainder of multivariate division of f by G.

    No term of the result is divisible by any leading term of G, and
    ``f - result`` lies in the ideal generated by G.  Deterministic: the
    divisor picked is always the first eligible element of G in list order.
    """
    if isinstance(G, GroebnerBasis):
        G = list(G.basis)
    G = [g for g in G if not g.is_zero()]
    if not G:
        return f
    ring = f.ring
    for g in G:
        if g.ring != ring:
            raise RingMismatchError("divisors live in a different ring")
    red = _Reducer(order)
    for g in G:
        red.add(_to_ipoly(g))
    # fraction-free reduction scales f by a positive integer s; recover the
    # true remainder as (scaled remainder)/s by tracking the scale.
    # Simpler and still exact: reduce with rational bookkeeping per step.
    return _rational_full_reduce(f, red, order,
                                 budget or Budget())


def _rational_full_reduce(f: Polynomial, red: _Reducer,
                          order: MonomialOrder, budget: Budget) -> Polynomial:
    key = order.key
    work = dict(f.terms)
    out: dict = {}
    heap = []
    state = _RunState()
    for m in work:
        heappush(heap, (_neg_key(key(m)), m))
    steps = 0
    while heap:
        _, m = heappop(heap)
        c = work.get(m)
        if not c:
            continue
        gi = red.find_divisor(m, _mask(m))
        if gi < 0:
            out[m] = c
            del work[m]
            continue
        steps += 1
        if steps % 4096 == 0:
            _check_budget(red, state, budget)
        g = red.polys[gi]
        glm = red.lms[gi]
        glc = red.lcs[gi]
        fac = c / glc  # Fraction
        del work[m]
        for gm, gc in g.items():
            if gm == glm:
                continue
            t = _mmul(gm, _msub(m, glm))
            v = work.get(t)
            if v is None:
                work[t] = -fac * gc
                heappush(heap, (_neg_key(key(t)), t))
            else:
                v = v - fac * gc
                if v:
                    work[t] = v
                else:
                    del work[t]
    return Polynomial(f.ring, out)


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX,
               budget: Budget | None = None) -> GroebnerBasis:
    """The reduced, monic Groebner basis of I under ``order``.

    Idempotent: recomputation returns an identical basis.  Budget overruns
    raise ``BudgetExceededError`` with partial state attached.
    """
    budget = budget or Budget()
    t0 = time.monotonic()
    gens = [_to_ipoly(g) for g in I.generators]
    try:
        red, status, _ = _buchberger_core(gens, order, budget)
    except BudgetExceededError as e:
        e.partial = [_to_polynomial(p, I.ring, order, monic=False)
                     for p in (e.partial or [])]
        raise
    reduced = _interreduce([p for p in red.polys], order)
    basis = tuple(_to_polynomial(p, I.ring, order) for p in reduced)
    # deterministic order: ascending leading monomial
    return GroebnerBasis(order=order, basis=basis, ring=I.ring,
                         pairs_done=0, elapsed=time.monotonic() - t0)


def is_member(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX,
              budget: Budget | None = None) -> bool:
    """True iff f lies in I (normal form against a Groebner basis is 0)."""
    gb = buchberger(I, order, budget)
    return normal_form(f, gb, order).is_zero()


def divide_exact(f: Polynomial, g: Polynomial,
                 order: MonomialOrder = GREVLEX) -> Polynomial:
    """Exact quotient f/g; raises ValueError if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    q: dict = {}
    rem = f
    glm = g.leading_monomial(order)
    glc = g.leading_coefficient(order)
    while not rem.is_zero():
        lm = rem.leading_monomial(order)
        if not _divides(glm, lm):
            raise ValueError("not divisible")
        shift = _msub(lm, glm)
        coef = rem.leading_coefficient(order) / glc
        q[shift] = coef
        rem = rem - g * Polynomial(ring, {shift: coef})
    return Polynomial(ring, q)


def ideal_quotient(I: Ideal, g: Polynomial,
                   order: MonomialOrder = GREVLEX,
                   budget: Budget | None = None) -> Ideal:
    """(I : g) = {f : f*g in I} for principal divisor g."""
    if g.is_zero():
        raise ValueError("quotient by zero polynomial")
    inter = intersect_principal(I, g, order, budget)
    gens = [divide_exact(h, g, order) for h in inter.generators]
    return Ideal(I.ring, gens)


def intersect_principal(I: Ideal, g: Polynomial,
                        order: MonomialOrder = GREVLEX,
                        budget: Budget | None = None) -> Ideal:
    """I ∩ <g> via the auxiliary-variable trick: eliminate t from
    <t*I, (1-t)*g>."""
    ring = I.ring
    tname = _fresh(ring, "t_int")
    big = (tname,) + ring
    t = Polynomial.variable(big, tname)
    gens = [t * f.extend_ring(big) for f in I.generators]
    gens.append((1 - t) * g.extend_ring(big))
    J = Ideal(big, gens)
    elim = eliminate(J, ring, order=order, budget=budget)
    return Ideal(ring, elim.generators)


def saturate(I: Ideal, g: Polynomial, order: MonomialOrder = GREVLEX,
             budget: Budget | None = None, method: str = "aux") -> Ideal:
    """(I : g^infinity), the stabilized union of iterated quotients.

    ``method="aux"`` adjoins a fresh w, forms <I, 1 - w*g> and eliminates w;
    ``method="quotient"`` iterates ideal_quotient until it stabilizes (the
    oracle path, used on small inputs).
    """
    if g.is_zero():
        raise ValueError("saturation by zero polynomial")
    if method == "aux":
        ring = I.ring
        wname = _fresh(ring, "w_sat")
        big = (wname,) + ring
        w = Polynomial.variable(big, wname)
        gens = [f.extend_ring(big) for f in I.generators]
        gens.append(1 - w * g.extend_ring(big))
        J = Ideal(big, gens)
        elim = eliminate(J, ring, order=order, budget=budget)
        return Ideal(ring, elim.generators)
    if method == "quotient":
        current = I
        cur_gb = buchberger(current, order, budget)
        while True:
            nxt = ideal_quotient(current, g, order, budget)
            nxt_gb = buchberger(nxt, order, budget)
            if nxt_gb.basis == cur_gb.basis:
                return Ideal(I.ring, nxt_gb.basis)
            current, cur_gb = nxt, nxt_gb
    raise ValueError(f"unknown saturation method {method!r}")


def saturate_by_variables(I: Ideal, names: Sequence[str],
                          order: MonomialOrder = GREVLEX,
                          budget: Budget | None = None) -> Ideal:
    """Saturation by a product of variables, performed variable by variable
    (equal to saturating by the product, with smaller intermediate bases)."""
    current = I
    for name in names:
        v = Polynomial.variable(I.ring, name)
        current = saturate(current, v, order, budget)
    return current


def eliminate(I: Ideal, keep: Sequence[str],
              order: MonomialOrder = GREVLEX,
              budget: Budget | None = None) -> Ideal:
    """The elimination ideal I ∩ Q[keep].

    Computed under a block order ranking the eliminated variables above the
    kept ones (grevlex within each block); basis elements supported entirely
    on ``keep`` generate the elimination ideal.  The result lives in the
    restricted ring, in the original relative variable order.
    """
    keep = tuple(keep)
    if not keep:
        raise ValueError("keep must be nonempty")
    ring = I.ring
    for v in keep:
        if v not in ring:
            raise ValueError(f"{v!r} not a ring variable")
    elim_idx = [i for i, v in enumerate(ring) if v not in keep]
    keep_idx = [i for i, v in enumerate(ring) if v in keep]
    if not elim_idx:
        gb = buchberger(I, order, budget)
        return Ideal(ring, gb.basis)
    block = MonomialOrder(order.kind,
                          permutation=tuple(elim_idx + keep_idx),
                          blocks=(len(elim_idx), len(keep_idx)))
    gb = buchberger(I, block, budget)
    keep_ring = tuple(ring[i] for i in keep_idx)
    out = []
    for b in gb.basis:
        if all(all(m[i] == 0 for i in elim_idx) for m in b.terms):
            out.append(b.restrict_ring(keep_ring))
    return Ideal(keep_ring, out)


def is_unit_ideal(I: Ideal, order: MonomialOrder = GREVLEX,
                  budget: Budget | None = None) -> bool:
    """True iff I is the whole ring (1 belongs to I)."""
    budget = budget or Budget()
    gens = [_to_ipoly(g) for g in I.generators]
    for g in gens:
        if g and not any(max(g, key=order.key)):
            return True
    red, status, _ = _buchberger_core(gens, order, budget,
                                      stop_on_unit=True)
    if status == "unit":
        return True
    return any(not any(lm) for lm in red.lms)


def contains_difference_variety(I: Ideal, J: Ideal,
                                order: MonomialOrder = GREVLEX,
                                budget: Budget | None = None) -> Ideal:
    """(I : J^infinity) for principal J; its zero set contains every common
    zero of I that is not a zero of J."""
    if len(J.generators) != 1:
        raise ValueError("J must be principal")
    return saturate(I, J.generators[0], order, budget)


def groebner_with_probes(I: Ideal, probes: Sequence[Polynomial],
                         order: MonomialOrder = GREVLEX,
                         budget: Budget | None = None,
                         stop_on_unit: bool = True,
                         degree_bound: int | None = None,
                         weights: tuple | None = None,
                         modulus: int | None = None):
    """Run the engine with membership probes; returns (status, hit, basis).

    status: "unit" (a constant entered the basis), "probe" (probes[hit]
    reduced to zero — it lies in the ideal), or "done" (full basis computed,
    no probe hit).  The returned basis is the raw engine state (not reduced).
    Raises BudgetExceededError like the other entry points.

    ``modulus`` runs the whole computation over GF(modulus).  That mode is
    for planning only (e.g. picking a saturation strategy before an exact
    run): its verdicts are strong evidence but never certificates, and no
    certification path in this package consumes them as proof.
    """
    budget = budget or Budget()
    gens = [_to_ipoly(g) for g in I.generators]
    iprobes = [_to_ipoly(p) for p in probes]
    red, status, hit = _buchberger_core(
        gens, order, budget, stop_on_unit=stop_on_unit, probes=iprobes,
        degree_bound=degree_bound, weights=weights, modulus=modulus)
    basis = tuple(_to_polynomial(p, I.ring, order, monic=not modulus)
                  for p in red.polys)
    return status, hit, basis


def _fresh(ring: Sequence[str], base: str) -> str:
    name = base
    while name in ring:
        name += "_"
    return name


# ---------------------------------------------------------------------------
# Certified ideal membership
#
# Exact saturation runs on hard ideals routinely outgrow any budget, so
# membership certification splits the work:
#
#   discovery   — a GF(p) Buchberger run that keeps a construction journal
#                 (how every basis element was formed) and finds a candidate
#                 member by reduction to zero;
#   replay      — the journal is re-executed over the integers with
#                 fraction-free arithmetic, reconstructing exact rational
#                 cofactors c_i with  sum_i c_i * g_i == member;
#   verification— the identity is re-evaluated from scratch over Q.
#
# Soundness rests on the verification step alone: the modular run and the
# replay only decide *what* to certify and *which* combination to try.  A
# replay can fail (the modular path may be invalid over Q when a coefficient
# vanishes mod p); then the next prime in a fixed ladder is tried.  All
# prime choices, pair orderings, and probe schedules are deterministic, so
# identical inputs yield identical certificates.
# ---------------------------------------------------------------------------

_DISCOVERY_PRIMES = (
    2305843009213693951,  # 2^61 - 1
    2305843009213693967,
    2305843009213693973,
)

# hard caps for the exact replay: coefficient bit length of any intermediate
# polynomial and live stored terms; beyond these the reconstruction is
# declared out of budget rather than ground on
_REPLAY_MAX_BITS = 600_000
_REPLAY_MAX_TERMS = 40_000_000


class _ReplayDivergence(RuntimeError):
    """The modular reduction path is not valid over the rationals."""


class _JournalEngine:
    """GF(p) Buchberger with a construction journal.

    Every basis element records its origin: either ``("gen", v)`` for the
    v-th input generator (added raw, never pre-reduced, so replays start
    from pristine inputs) or ``("spair", i, j, uf, ug)`` plus the list of
    top-reduction steps ``(gi, shift, c)`` that produced the stored element.
    The journal is what makes exact replay possible.
    """

    def __init__(self, gens: list, order: MonomialOrder, prime: int,
                 degree_bound: int | None = None,
                 weights: tuple | None = None):
        self.order = order
        self.key = order.key
        self.p = prime
        self.degree_bound = degree_bound
        self.weights = weights
        self.polys: list[dict] = []
        self.lms: list[tuple] = []
        self.masks: list[int] = []
        self.alive: list[bool] = []
        self.journal: list = []
        self.pairs: list = []
        self.completed = False
        self.nvars = 0
        for v, g in enumerate(gens):
            gp = {m: c % prime for m, c in g.items() if c % prime}
            if not gp:
                continue
            self.nvars = len(next(iter(gp)))
            t = self._add(gp, ("gen", v), [])
            self._update_pairs(t)

    # -- basics ------------------------------------------------------------

    def _wdeg(self, m: tuple) -> int:
        if self.weights is None:
            return sum(m)
        return sum(e * w for e, w in zip(m, self.weights))

    def _add(self, p: dict, seed, steps) -> int:
        lm = max(p, key=self.key)
        inv = pow(p[lm], -1, self.p)
        if inv != 1:
            p = {m: (c * inv) % self.p for m, c in p.items()}
        self.polys.append(p)
        self.lms.append(lm)
        self.masks.append(_mask(lm))
        self.alive.append(True)
        self.journal.append((seed, steps))
        return len(self.polys) - 1

    def _find_divisor(self, m: tuple, mmask: int) -> int:
        masks = self.masks
        lms = self.lms
        for i in range(len(lms)):
            if masks[i] & ~mmask:
                continue
            ok = True
            for x, y in zip(lms[i], m):
                if x > y:
                    ok = False
                    break
            if ok:
                return i
        return -1

    def reduce_tracked(self, p: dict, charge=None, full: bool = True):
        """Reduce ``p`` mod p recording steps; returns (residual, steps).

        ``full=True`` reduces every monomial (normal form); ``full=False``
        stops once the leading monomial is irreducible (top reduction).
        Each recorded step is ``(gi, shift, c)``: the coefficient ``c`` of
        the monomial ``lm(gi) * shift`` cancelled against basis element gi.
        """
        P = self.p
        key = self.key
        steps: list = []
        out: dict = {}
        heap: list = []
        work = dict(p)
        for m in work:
            heappush(heap, (_neg_key(key(m)), m))
        while heap:
            _, m = heappop(heap)
            c = work.get(m)
            if not c:
                continue
            gi = self._find_divisor(m, _mask(m))
            if gi < 0:
                if full:
                    out[m] = c
                    del work[m]
                    continue
                work.update(out)
                return work, steps
            if charge is not None:
                charge()
            steps.append((gi, _msub(m, self.lms[gi]), c))
            g = self.polys[gi]
            glm = self.lms[gi]
            shift = _msub(m, glm)
            del work[m]
            for gm, gc in g.items():
                if gm == glm:
                    continue
                t = _mmul(gm, shift)
                v = work.get(t)
                if v is None:
                    work[t] = (-c * gc) % P
                    heappush(heap, (_neg_key(key(t)), t))
                else:
                    v = (v - c * gc) % P
                    if v:
                        work[t] = v
                    else:
                        del work[t]
        out.update(work)
        return out, steps

    def normal_form(self, p: dict, charge=None) -> dict:
        r, _ = self.reduce_tracked(p, charge, full=True)
        return r

    # -- pair management (Gebauer-Moeller, as in the exact engine) ----------

    def _update_pairs(self, t: int) -> None:
        lt = self.lms[t]
        key = self.key
        cand = []
        for i in range(t):
            if self.alive[i]:
                cand.append((_mlcm(self.lms[i], lt), i))
        keep = []
        for entry in self.pairs:
            _, l, i, j = entry
            if (_divides(lt, l)
                    and _mlcm(self.lms[i], lt) != l
                    and _mlcm(self.lms[j], lt) != l):
                continue
            keep.append(entry)
        if len(keep) != len(self.pairs):
            self.pairs[:] = keep
            import heapq as _h
            _h.heapify(self.pairs)
        cand.sort(key=lambda e: key(e[0]))
        kept: list = []
        for l, i in cand:
            if any(_divides(lk, l) and lk != l for lk, _ in kept):
                continue
            kept.append((l, i))
        seen: dict = {}
        for l, i in kept:
            seen.setdefault(l, i)
        for l, i in seen.items():
            if _mmul(self.lms[i], lt) == l:
                continue
            if (self.degree_bound is not None
                    and self._wdeg(l) > self.degree_bound):
                continue
            heappush(self.pairs, (key(l), l, i, t))
        for i in range(t):
            if self.alive[i] and _divides(lt, self.lms[i]):
                self.alive[i] = False

    # -- the run -------------------------------------------------------------

    def run(self, budget: Budget, state: _RunState,
            probes: dict | None = None, probe_interval: int = 16):
        """Process pairs until exhaustion or a probe reduces to zero.

        ``probes`` maps labels to integer-dict polynomials; partial
        reduction progress is kept between rounds.  Returns
        ``("probe", label)`` on a hit or ``("done", None)``; resumable.
        """
        P = self.p

        def charge():
            state.reductions += 1
            if state.reductions % 4096 == 0:
                _check_budget(self, state, budget)

        pending = {}
        if probes:
            for label, q in probes.items():
                qp = {m: c % P for m, c in q.items() if c % P}
                if not qp:
                    return "probe", label
                pending[label] = qp

        def run_probes():
            for label in sorted(pending):
                r = self.normal_form(pending[label], charge)
                if not r:
                    return label
                pending[label] = r
            return None

        if pending:
            hit = run_probes()
            if hit is not None:
                return "probe", hit
        since = 0
        while self.pairs:
            if state.pairs_done >= budget.max_pairs:
                raise BudgetExceededError(
                    f"pair budget {budget.max_pairs} exhausted",
                    pairs_done=state.pairs_done,
                    elapsed=time.monotonic() - state.start)
            _check_budget(self, state, budget)
            _, l, i, j = heappop(self.pairs)
            state.pairs_done += 1
            fi, fj = self.polys[i], self.polys[j]
            uf = _msub(l, self.lms[i])
            ug = _msub(l, self.lms[j])
            s: dict = {}
            for m, c in fi.items():
                s[_mmul(m, uf)] = c
            for m, c in fj.items():
                t2 = _mmul(m, ug)
                v = (s.get(t2, 0) - c) % P
                if v:
                    s[t2] = v
                else:
                    s.pop(t2, None)
            if not s:
                continue
            r, steps = self.reduce_tracked(s, charge, full=False)
            if not r:
                continue
            t = self._add(r, ("spair", i, j, uf, ug), steps)
            self._update_pairs(t)
            since += 1
            if pending and since >= probe_interval:
                since = 0
                hit = run_probes()
                if hit is not None:
                    return "probe", hit
        self.completed = True
        if pending:
            hit = run_probes()
            if hit is not None:
                return "probe", hit
        return "done", None


def _dependency_cone(engine: _JournalEngine, trail) -> list:
    """All basis elements the trail depends on, in construction order."""
    cone = set(gi for gi, _, _ in trail)
    queue = sorted(cone, reverse=True)
    while queue:
        t = queue.pop(0)
        seed, steps = engine.journal[t]
        refs = []
        if seed[0] == "spair":
            refs += [seed[1], seed[2]]
        refs += [gi for gi, _, _ in steps]
        fresh = [e for e in refs if e not in cone]
        if fresh:
            cone.update(fresh)
            queue.extend(fresh)
            queue.sort(reverse=True)
    return sorted(cone)


def _replay_exact(engine: _JournalEngine, trail, gens: list, target: dict,
                  state: _RunState, budget: Budget) -> list:
    """Reconstruct exact cofactors for ``target`` from a modular journal.

    ``gens`` are integer-dict generators (exactly as fed to the engine);
    ``target`` an integer-dict polynomial whose modular image reduced to
    zero along ``trail``.  Returns one Fraction-dict cofactor per generator
    with  sum_i cofactor_i * gens_i == target  — the caller must still run
    that verification; this function only promises best effort.

    Raises ``_ReplayDivergence`` when the modular path is invalid over Q and
    ``BudgetExceededError`` on time or coefficient blowup.
    """
    from math import lcm

    key = engine.key
    nvars = engine.nvars
    ngens = len(gens)
    order = _dependency_cone(engine, trail)

    # last-use counts so large representations are freed eagerly
    users: dict = {}
    for t in order:
        seed, steps = engine.journal[t]
        refs = set(gi for gi, _, _ in steps)
        if seed[0] == "spair":
            refs.update((seed[1], seed[2]))
        for e in refs:
            users[e] = users.get(e, 0) + 1
    for e in set(gi for gi, _, _ in trail):
        users[e] = users.get(e, 0) + 1

    F: dict = {}    # element -> primitive integer polynomial
    LC: dict = {}   # element -> its (positive) leading coefficient
    REP: dict = {}  # element -> (sigma: Fraction, [ngens integer dicts])

    def release(e):
        users[e] -= 1
        if users[e] == 0:
            REP.pop(e, None)

    def check_guards():
        _check_budget(engine, state, budget)
        live_terms = sum(len(d) for _, ds in REP.values() for d in ds)
        if live_terms > _REPLAY_MAX_TERMS:
            raise BudgetExceededError(
                "replay term growth exceeded the cap",
                pairs_done=state.pairs_done,
                elapsed=time.monotonic() - state.start)

    max_bits = 0
    for idx, t in enumerate(order):
        seed, steps = engine.journal[t]
        contribs = []  # (q: Fraction, shift, source)
        if seed[0] == "spair":
            _, i, j, uf, ug = seed
            w: dict = {}
            add_scaled = _add_scaled_int
            add_scaled(w, F[i], uf, LC[j])
            add_scaled(w, F[j], ug, -LC[i])
            scale = Fraction(1, LC[i] * LC[j])
            # REP holds representations of the *monic* elements, which is
            # exactly what the S-polynomial combines
            contribs.append((REP[i][0], uf, i))
            contribs.append((-REP[j][0], ug, j))
        else:
            v = seed[1]
            w = dict(gens[v])
            scale = Fraction(1)
            contribs.append((Fraction(1), (0,) * nvars, ("gen", v)))
        k = _content(w) or 1
        if k > 1:
            for mm in w:
                w[mm] //= k
            scale *= k

        for gi, shift, _cp in steps:
            m = _mmul(engine.lms[gi], shift)
            cm = w.get(m)
            if cm is None:
                raise _ReplayDivergence(
                    f"recorded cancellation target absent over Q "
                    f"(element {t})")
            q = scale * cm
            contribs.append((-q * REP[gi][0], shift, gi))
            lcg = LC[gi]
            if lcg != 1:
                for mm in w:
                    w[mm] *= lcg
            _add_scaled_int(w, F[gi], shift, -cm)
            if m in w:
                raise _ReplayDivergence(
                    f"cancellation failed over Q (element {t})")
            scale /= lcg
            k = _content(w) or 1
            if k > 1:
                for mm in w:
                    w[mm] //= k
                scale *= k

        if not w:
            raise _ReplayDivergence(f"element {t} vanished over Q")
        lm = max(w, key=key)
        if lm != engine.lms[t]:
            raise _ReplayDivergence(
                f"leading monomial drifted over Q (element {t})")
        if w[lm] < 0:
            w = {m: -c for m, c in w.items()}
            scale = -scale
        F[t] = w
        LC[t] = w[lm]

        lam = 1 / (scale * LC[t])
        L = 1
        for q, _, _ in contribs:
            L = lcm(L, q.denominator)
        acc = [dict() for _ in range(ngens)]
        for q, shift, src in contribs:
            qL = q * L
            if qL.denominator != 1:
                raise _ReplayDivergence("non-integral replay multiplier")
            mult = qL.numerator
            if mult == 0:
                continue
            if isinstance(src, tuple):
                v = src[1]
                nv = acc[v].get(shift, 0) + mult
                if nv:
                    acc[v][shift] = nv
                else:
                    acc[v].pop(shift, None)
            else:
                rsrc = REP[src][1]
                for vv in range(ngens):
                    _add_scaled_int(acc[vv], rsrc[vv], shift, mult)
        g = 0
        for d in acc:
            for c in d.values():
                g = gcd(g, c)
                if g == 1:
                    break
            if g == 1:
                break
        g = g or 1
        if g != 1:
            for d in acc:
                for m in d:
                    d[m] //= g
        REP[t] = (lam * Fraction(g, L), acc)

        bits = max((abs(c).bit_length() for d in acc for c in d.values()),
                   default=0)
        max_bits = max(max_bits, bits,
                       max(abs(c).bit_length() for c in w.values()))
        if max_bits > _REPLAY_MAX_BITS:
            raise BudgetExceededError(
                "replay coefficient growth exceeded the cap",
                pairs_done=state.pairs_done,
                elapsed=time.monotonic() - state.start)

        seen = set(gi for gi, _, _ in steps)
        if seed[0] == "spair":
            seen.update((seed[1], seed[2]))
        for e in seen:
            release(e)
        if idx % 32 == 0:
            check_guards()

    # assemble the target's cofactors along its own reduction trail
    w = dict(target)
    scale = Fraction(1)
    pieces = []
    for gi, shift, _cp in trail:
        m = _mmul(engine.lms[gi], shift)
        cm = w.get(m)
        if cm is None:
            raise _ReplayDivergence("trail cancellation target absent over Q")
        q = scale * cm
        pieces.append((q * REP[gi][0], shift, gi))
        lcg = LC[gi]
        if lcg != 1:
            for mm in w:
                w[mm] *= lcg
        _add_scaled_int(w, F[gi], shift, -cm)
        scale /= lcg
        k = _content(w) or 1
        if k > 1:
            for mm in w:
                w[mm] //= k
            scale *= k
    if w:
        raise _ReplayDivergence(
            f"target residual nonzero over Q ({len(w)} terms)")

    cof = [dict() for _ in range(ngens)]
    for q, shift, gi in pieces:
        rsrc = REP[gi][1]
        for vv in range(ngens):
            dv = cof[vv]
            for m, c in rsrc[vv].items():
                t2 = _mmul(m, shift)
                nv = dv.get(t2, 0) + q * c
                if nv:
                    dv[t2] = nv
                else:
                    dv.pop(t2, None)
    return cof


def _add_scaled_int(acc: dict, src: dict, shift: tuple, c: int) -> None:
    """acc += c * x^shift * src over the integers."""
    if not c:
        return
    if not any(shift):
        for m, cc in src.items():
            w = acc.get(m, 0) + c * cc
            if w:
                acc[m] = w
            else:
                acc.pop(m, None)
    else:
        for m, cc in src.items():
            t = _mmul(m, shift)
            w = acc.get(t, 0) + c * cc
            if w:
                acc[t] = w
            else:
                acc.pop(t, None)


@dataclass(frozen=True)
class MembershipCertificate:
    """Exact evidence that ``member`` lies in the ideal of ``generators``.

    The cofactors satisfy ``sum_i cofactors[i] * generators[i] == member``
    over Q; :meth:`verify` re-evaluates that identity from scratch.  The
    discovery metadata (prime, pair count) is informational only — nothing
    in the verification depends on it.
    """

    ring: tuple
    member: Polynomial
    generators: tuple
    cofactors: tuple
    discovery_prime: int = 0
    pairs_used: int = 0

    def verify(self) -> bool:
        total = Polynomial.zero(self.ring)
        for c, g in zip(self.cofactors, self.generators):
            total = total + c * g
        return (total - self.member).is_zero()

    def term_counts(self) -> tuple:
        return tuple(len(c.terms) for c in self.cofactors)


@dataclass(frozen=True)
class UnivariateSaturationWitness:
    """A univariate member of a saturated ideal, certified exactly.

    ``certificate`` shows ``univariate * product**multiplier_power`` inside
    the original ideal, where ``product`` multiplies the stated variables;
    hence ``univariate`` (a polynomial in ``variable`` alone) lies in the
    saturation of the ideal by that product, and every common zero with all
    those coordinates nonzero has its ``variable`` coordinate among the
    univariate's roots.
    """

    variable: str
    univariate: Polynomial
    multiplier_power: int
    multiplier_variables: tuple
    certificate: MembershipCertificate


class MembershipProver:
    """Certified membership for one ideal, sharing a single discovery run.

    The first query runs a journaled GF(p) Buchberger computation; later
    queries reuse it.  Every answer is an exact rational-cofactor
    certificate verified over Q before being returned — the modular run
    only *finds* combinations, it never vouches for them.  Queries that the
    completed modular basis refutes return None.
    """

    def __init__(self, ideal: Ideal, order: MonomialOrder = GREVLEX,
                 budget: Budget | None = None,
                 degree_bound: int | None = None,
                 weights: tuple | None = None,
                 primes: Sequence[int] = _DISCOVERY_PRIMES):
        self.ideal = ideal
        self.order = order
        self.budget = budget or Budget()
        self.degree_bound = degree_bound
        self.weights = weights
        self.primes = tuple(primes)
        self._prime_index = 0
        self._gens_int = [_to_ipoly(g) for g in ideal.generators]
        # cofactors are reconstructed against the integer-primitive images;
        # scale them back to the generators actually supplied
        self._gen_scale = []
        for g, gi in zip(ideal.generators, self._gens_int):
            lm = max(gi, key=order.key)
            self._gen_scale.append(
                Fraction(gi[lm]) / g.terms[lm])
        self._engine: _JournalEngine | None = None
        self._state = _RunState()
        self._status: str | None = None

    @property
    def pairs_used(self) -> int:
        return self._state.pairs_done

    @property
    def discovery_prime(self) -> int:
        return self.primes[self._prime_index]

    # -- engine lifecycle ---------------------------------------------------

    def _fresh_engine(self) -> _JournalEngine:
        return _JournalEngine(self._gens_int, self.order,
                              self.primes[self._prime_index],
                              degree_bound=self.degree_bound,
                              weights=self.weights)

    def _ensure_complete(self) -> _JournalEngine:
        if self._engine is None:
            self._engine = self._fresh_engine()
        if not self._engine.completed:
            status, _ = self._engine.run(self.budget, self._state)
            self._status = status
        return self._engine

    def _next_prime(self) -> bool:
        if self._prime_index + 1 >= len(self.primes):
            return False
        self._prime_index += 1
        self._engine = None
        self._status = None
        return True

    # -- certification ------------------------------------------------------

    def _certify_target(self, target_int: dict,
                        member: Polynomial) -> MembershipCertificate:
        """Replay + exact verification for a target whose modular normal
        form is zero; raises _ReplayDivergence to signal a prime retry."""
        engine = self._engine
        assert engine is not None
        state, budget = self._state, self.budget

        def charge():
            state.reductions += 1
            if state.reductions % 4096 == 0:
                _check_budget(engine, state, budget)

        tmod = {m: c % engine.p for m, c in target_int.items()
                if c % engine.p}
        residual, trail = engine.reduce_tracked(tmod, charge)
        if residual:
            raise _ReplayDivergence("target no longer reduces to zero")
        cof_int = _replay_exact(engine, trail, self._gens_int, target_int,
                                self._state, self.budget)
        # target_int may be a scalar multiple of the stated member
        lmord = self.order.key
        tlm = max(target_int, key=lmord)
        ratio = member.terms[tlm] / target_int[tlm]
        ring = self.ideal.ring
        cofs = []
        for ci, sc in zip(cof_int, self._gen_scale):
            cofs.append(Polynomial(
                ring, {m: c * sc * ratio for m, c in ci.items()}))
        cert = MembershipCertificate(
            ring=ring, member=member,
            generators=self.ideal.generators,
            cofactors=tuple(cofs),
            discovery_prime=engine.p,
            pairs_used=self._state.pairs_done)
        if not cert.verify():
            raise _ReplayDivergence("exact verification failed")
        return cert

    def membership_certificate(
            self, f: Polynomial) -> MembershipCertificate | None:
        """An exact certificate that f lies in the ideal, or None when the
        completed modular basis refutes membership."""
        if f.ring != self.ideal.ring:
            raise RingMismatchError("member lives in a different ring")
        if f.is_zero():
            raise ValueError("the zero polynomial is trivially a member")
        f_int = _to_ipoly(f)
        while True:
            engine = self._ensure_complete()
            fmod = {m: c % engine.p for m, c in f_int.items()
                    if c % engine.p}
            if engine.normal_form(fmod):
                return None
            try:
                return self._certify_target(f_int, f)
            except _ReplayDivergence:
                if not self._next_prime():
                    raise BudgetExceededError(
                        "discovery prime ladder exhausted",
                        pairs_done=self._state.pairs_done,
                        elapsed=time.monotonic() - self._state.start)

    def saturation_unit_certificate(
            self, variables: Sequence[str],
            max_power: int = 8) -> MembershipCertificate | None:
        """A certificate that (product of variables)**N lies in the ideal
        for some N <= max_power — equivalently, that the saturation of the
        ideal by that product is the unit ideal.  None when the completed
        modular basis rules out every such power."""
        ring = self.ideal.ring
        idx = [ring.index(v) for v in variables]
        nvars = len(ring)

        def power_mono(n: int) -> tuple:
            m = [0] * nvars
            for i in idx:
                m[i] = n
            return tuple(m)

        while True:
            if self._engine is None:
                self._engine = self._fresh_engine()
            engine = self._engine
            probes = {n: {power_mono(n): 1} for n in range(1, max_power + 1)}
            status, hit = engine.run(self.budget, self._state, probes=probes)
            self._status = status
            if status == "done" and hit is None:
                return None
            n = hit
            member = Polynomial(ring, {power_mono(n): Fraction(1)})
            try:
                return self._certify_target({power_mono(n): 1}, member)
            except _ReplayDivergence:
                if not self._next_prime():
                    raise BudgetExceededError(
                        "discovery prime ladder exhausted",
                        pairs_done=self._state.pairs_done,
                        elapsed=time.monotonic() - self._state.start)

    def univariate_saturation_certificate(
            self, variable: str, multiplier_variables: Sequence[str],
            max_multiplier_power: int = 8,
            max_degree: int = 48) -> UnivariateSaturationWitness | None:
        """A certified univariate member of the saturation.

        Searches, in increasing multiplier power M and degree d, for a monic
        g(variable) of degree d with  g * product**M  in the ideal, then
        certifies that membership exactly.  Returns None when the completed
        modular basis admits no such g within the stated caps.
        """
        ring = self.ideal.ring
        vi = ring.index(variable)
        midx = [ring.index(v) for v in multiplier_variables]
        nvars = len(ring)

        def basis_mono(k: int, M: int) -> tuple:
            m = [0] * nvars
            for i in midx:
                m[i] += M
            m[vi] += k
            return tuple(m)

        state, budget = self._state, self.budget

        def charge():
            state.reductions += 1
            if state.reductions % 4096 == 0:
                _check_budget(self._engine, state, budget)

        prod_mono = basis_mono(0, 1)
        v_mono = basis_mono(1, 0)

        def shifted(f: dict, mono: tuple) -> dict:
            return {tuple(a + b for a, b in zip(m, mono)): c
                    for m, c in f.items()}

        while True:
            engine = self._ensure_complete()
            found = None
            # normal forms chain under monomial multiplication
            # (NF(v*f) == NF(v*NF(f))), so each vector is one monomial
            # shift plus an incremental re-reduction, never a from-scratch
            # reduction of a high-degree monomial
            base = engine.normal_form({basis_mono(0, 0): 1}, charge)
            for M in range(0, max_multiplier_power + 1):
                # incremental Gaussian elimination over the normal forms of
                # v^k * product^M: the first linear dependence yields g
                if M > 0:
                    base = engine.normal_form(shifted(base, prod_mono),
                                              charge)
                pivots: dict = {}   # monomial -> (row: dict, expr: dict)
                cur = base
                for k in range(0, max_degree + 1):
                    if k > 0:
                        cur = engine.normal_form(shifted(cur, v_mono),
                                                 charge)
                    nf = dict(cur)
                    expr = {k: 1}
                    while nf:
                        lm = max(nf, key=engine.key)
                        hit = pivots.get(lm)
                        if hit is None:
                            break
                        prow, pexpr = hit
                        c = nf[lm]
                        for m, cc in prow.items():
                            v = (nf.get(m, 0) - c * cc) % engine.p
                            if v:
                                nf[m] = v
                            else:
                                nf.pop(m, None)
                        for kk, cc in pexpr.items():
                            v = (expr.get(kk, 0) - c * cc) % engine.p
                            if v:
                                expr[kk] = v
                            else:
                                expr.pop(kk, None)
                    if nf:
                        lm = max(nf, key=engine.key)
                        inv = pow(nf[lm], -1, engine.p)
                        pivots[lm] = (
                            {m: (c * inv) % engine.p for m, c in nf.items()},
                            {kk: (c * inv) % engine.p
                             for kk, c in expr.items()})
                        continue
                    found = (M, expr)
                    break
                if found:
                    break
            if found is None:
                return None
            M, expr = found
            d = max(expr)
            lead_inv = pow(expr[d], -1, engine.p)
            coeffs_mod = {k: (c * lead_inv) % engine.p
                          for k, c in expr.items()}
            try:
                coeffs = {k: _rational_reconstruct(c, engine.p)
                          for k, c in coeffs_mod.items()}
            except ValueError:
                if not self._next_prime():
                    raise BudgetExceededError(
                        "discovery prime ladder exhausted",
                        pairs_done=self._state.pairs_done,
                        elapsed=time.monotonic() - self._state.start)
                continue
            den = 1
            for c in coeffs.values():
                den = den * c.denominator // gcd(den, c.denominator)
            g_int = {}
            for k, c in coeffs.items():
                mono = [0] * nvars
                mono[vi] = k
                g_int[tuple(mono)] = int(c * den)
            cg = 0
            for c in g_int.values():
                cg = gcd(cg, c)
            if cg > 1:
                g_int = {m: c // cg for m, c in g_int.items()}
            g_poly = Polynomial(ring, {m: Fraction(c)
                                       for m, c in g_int.items()})
            target_int = {}
            for m, c in g_int.items():
                target_int[basis_mono(m[vi], M)] = c
            member = Polynomial(ring, {m: Fraction(c)
                                       for m, c in target_int.items()})
            try:
                cert = self._certify_target(target_int, member)
            except _ReplayDivergence:
                if not self._next_prime():
                    raise BudgetExceededError(
                        "discovery prime ladder exhausted",
                        pairs_done=self._state.pairs_done,
                        elapsed=time.monotonic() - self._state.start)
                continue
            return UnivariateSaturationWitness(
                variable=variable,
                univariate=g_poly,
                multiplier_power=M,
                multiplier_variables=tuple(multiplier_variables),
                certificate=cert)


def _rational_reconstruct(a: int, p: int) -> Fraction:
    """The unique fraction n/d == a mod p with |n|, d <= sqrt(p/2), by the
    half-extended Euclidean algorithm; raises ValueError when none exists."""
    bound = int((p / 2) ** 0.5)
    r0, r1 = p, a % p
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        raise ValueError("no balanced rational preimage")
    n, d = r1, s1
    if d < 0:
        n, d = -n, -d
    if gcd(abs(n), d) != 1:
        g = gcd(abs(n), d)
        n, d = n // g, d // g
    return Fraction(n, d)


# ---------------------------------------------------------------------------
# Ideal file format: one polynomial per line, "#" comments
# ---------------------------------------------------------------------------

def format_ideal(I: Ideal) -> str:
    lines = [f"# ring: {' '.join(I.ring)}"]
    from .polycore import format_polynomial
    lines += [format_polynomial(g) for g in I.generators]
    return "\n".join(lines) + "\n"


def parse_ideal(text: str, ring: Sequence[str] | None = None) -> Ideal:
    gens = []
    declared = None
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("# ring:"):
            declared = tuple(line[len("# ring:"):].split())
            continue
        if not line or line.startswith("#"):
            continue
        if ring is None and declared is None:
            raise ValueError("no ring declared and none supplied")
        gens.append(parse_polynomial(line, ring or declared))
    use = tuple(ring or declared or ())
    return Ideal(use, gens)

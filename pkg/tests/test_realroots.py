"""Tests for exact univariate real-root counting.

Oracle discipline: counts are checked against an independent
Descartes-bisection oracle and a refined sign-change grid scan
(tests/oracles.py), never against the implementation itself.
"""

import random
from fractions import Fraction

import pytest

from hurwitzcert.realroots import (
    SturmChain,
    UniPoly,
    ZeroPolynomialError,
    count_roots_open,
    deflate_at,
    format_unipoly,
    no_roots_in_unit_interval,
    parse_unipoly,
    poly_gcd,
    recheck_certificate,
    squarefree_part,
    sturm_sequence,
    unipoly_from_polynomial,
)
from oracles import descartes_count_open, grid_count_open


def U(*coeffs):
    return UniPoly(coeffs)


class TestUniPoly:
    def test_trailing_zeros_stripped(self):
        assert U(1, 2, 0, 0).coeffs == (1, 2)
        assert U(0, 0).is_zero()

    def test_degree(self):
        assert U().degree() == -1
        assert U(5).degree() == 0
        assert U(0, 0, 3).degree() == 2

    def test_arithmetic(self):
        p, q = U(1, 1), U(-1, 1)  # x+1, x-1
        assert (p * q).coeffs == (-1, 0, 1)
        assert (p + q).coeffs == (0, 2)
        assert (p - q).coeffs == (2,)

    def test_divmod(self):
        p = U(-1, 0, 1)  # x^2 - 1
        q, r = divmod(p, U(-1, 1))
        assert q.coeffs == (1, 1) and r.is_zero()
        q, r = divmod(U(1, 0, 1), U(0, 1))
        assert q.coeffs == (0, 1) and r.coeffs == (1,)

    def test_evaluate_horner(self):
        p = U(Fraction(1, 3), -2, 1)
        assert p.evaluate(Fraction(1, 2)) == Fraction(1, 3) - 1 + Fraction(1, 4)

    def test_derivative(self):
        assert U(7, 3, 0, 5).derivative().coeffs == (3, 0, 15)
        assert U(4).derivative().is_zero()

    def test_from_roots(self):
        p = UniPoly.from_roots([Fraction(1, 2), Fraction(1, 3)])
        assert p.evaluate(Fraction(1, 2)) == 0
        assert p.evaluate(Fraction(1, 3)) == 0
        assert p.degree() == 2

    def test_primitive_preserves_sign(self):
        p = U(Fraction(-2, 3), Fraction(4, 9))
        q = p.primitive()
        assert q.coeffs == (-3, 2)
        assert (p.evaluate(0) < 0) == (q.evaluate(0) < 0)

    def test_text_round_trip(self):
        p = U(Fraction(-1, 2), 0, 3)
        assert parse_unipoly(format_unipoly(p)) == p
        assert parse_unipoly("t^2 - t") == U(0, -1, 1)
        with pytest.raises(ValueError):
            parse_unipoly("x + y")

    def test_from_polynomial(self):
        from hurwitzcert.polycore import parse_polynomial
        poly = parse_polynomial("y^3 - 2*y", ("x", "y", "z"))
        assert unipoly_from_polynomial(poly) == U(0, -2, 0, 1)
        mixed = parse_polynomial("x*y", ("x", "y", "z"))
        with pytest.raises(ValueError):
            unipoly_from_polynomial(mixed)


class TestSquarefree:
    def test_repeated_linear_factor(self):
        p = U(Fraction(-1, 2), 1)
        assert squarefree_part(p * p) == p.monic()

    def test_already_squarefree(self):
        p = U(1, 0, 1)  # x^2 + 1
        assert squarefree_part(p) == p

    def test_cube_times_linear(self):
        # x^3 - x^2 = x^2 (x - 1) -> x^2 - x
        assert squarefree_part(U(0, 0, -1, 1)) == U(0, -1, 1)

    def test_gcd_with_derivative_is_constant(self):
        rng = random.Random(7)
        for _ in range(25):
            p = UniPoly([rng.randint(-9, 9) for _ in range(rng.randint(2, 9))])
            if p.is_zero() or p.degree() < 1:
                continue
            sf = squarefree_part(p)
            g = poly_gcd(sf, sf.derivative())
            assert g.degree() == 0

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            squarefree_part(UniPoly.zero())


class TestSturmChain:
    def test_pinned_quadratic_chain(self):
        chain = sturm_sequence(U(Fraction(-1, 4), 0, 1))
        assert [q.coeffs for q in chain] == [
            (Fraction(-1, 4), 0, 1), (0, 2), (Fraction(1, 4),)]

    def test_linear_chain(self):
        chain = sturm_sequence(U(0, 1))
        assert [q.coeffs for q in chain] == [(0, 1), (1,)]

    def test_negated_remainder_invariant(self):
        p = U(-2, 0, -3, 0, 1)
        chain = sturm_sequence(p)
        seq = chain.sequence
        for i in range(2, len(seq)):
            assert seq[i] == -(seq[i - 2] % seq[i - 1])

    def test_structural_properties_random_degree5(self):
        rng = random.Random(11)
        for _ in range(10):
            p = UniPoly([rng.randint(-9, 9) for _ in range(6)])
            if p.degree() != 5:
                continue
            sf = squarefree_part(p)
            chain = sturm_sequence(sf)
            assert len(chain) <= sf.degree() + 1
            assert chain.sequence[-1].degree() == 0

    def test_primitive_mode_preserves_all_signs(self):
        p = U(6, -5, 1) * U(1, 1) + U(Fraction(1, 7))
        exact = sturm_sequence(squarefree_part(p), "exact")
        prim = sturm_sequence(squarefree_part(p), "primitive")
        for x in (Fraction(-3), 0, Fraction(1, 2), 1, Fraction(7, 3)):
            assert exact.signs_at(x) == prim.signs_at(x)

    def test_consecutive_elements_share_no_real_root(self):
        p = squarefree_part(U(-1, -1, 0, 1, 1, 0, 1))
        chain = sturm_sequence(p)
        seq = chain.sequence
        for i in range(len(seq) - 1):
            g = poly_gcd(seq[i], seq[i + 1])
            # any common root would be a real root of the gcd
            if g.degree() > 0:
                assert descartes_count_open(g, -100, 100) == 0

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            sturm_sequence(UniPoly.zero())


class TestCountRootsOpen:
    def test_two_rational_roots(self):
        p = UniPoly.from_roots([Fraction(1, 2), Fraction(1, 3)])
        assert count_roots_open(p, 0, 1) == 2

    def test_no_real_roots(self):
        assert count_roots_open(U(1, 0, 1), 0, 1) == 0

    def test_one_of_three(self):
        p = UniPoly.from_roots([2, Fraction(1, 2), -1])
        assert count_roots_open(p, 0, 1) == 1

    def test_multiplicities_collapse(self):
        p = UniPoly.from_roots([Fraction(1, 2), Fraction(1, 2), Fraction(3, 4)])
        assert count_roots_open(p, 0, 1) == 2

    def test_degenerate_interval_rejected(self):
        with pytest.raises(ValueError):
            count_roots_open(U(0, 1), 1, 1)
        with pytest.raises(ValueError):
            count_roots_open(U(0, 1), 2, 1)

    def test_endpoint_root_rejected(self):
        with pytest.raises(ValueError):
            count_roots_open(U(0, 1), 0, 1)  # root at 0

    def test_additivity_over_split(self):
        rng = random.Random(13)
        done = 0
        while done < 20:
            p = UniPoly([rng.randint(-6, 6) for _ in range(rng.randint(2, 8))])
            if p.is_zero() or p.degree() < 1:
                continue
            sf = squarefree_part(p)
            a, b, c = Fraction(-3), Fraction(1, 7), Fraction(3)
            if any(sf.evaluate(x) == 0 for x in (a, b, c)):
                continue
            total = count_roots_open(p, a, c)
            left = count_roots_open(p, a, b)
            right = count_roots_open(p, b, c)
            assert left + right == total
            done += 1

    def test_against_descartes_and_grid_oracles(self):
        rng = random.Random(17)
        done = 0
        while done < 60:
            deg = rng.randint(1, 8)
            p = UniPoly([rng.randint(-9, 9) for _ in range(deg + 1)])
            if p.is_zero() or p.degree() < 1:
                continue
            a, b = Fraction(-2), Fraction(2)
            sf = squarefree_part(p)
            if sf.evaluate(a) == 0 or sf.evaluate(b) == 0:
                continue
            expected = descartes_count_open(p, a, b)
            assert count_roots_open(p, a, b) == expected
            assert grid_count_open(p, a, b) == expected
            done += 1


class TestUnitIntervalCheck:
    def test_endpoint_roots_only(self):
        ok, cert = no_roots_in_unit_interval(U(0, -1, 1))  # x(x-1)
        assert ok
        assert cert.multiplicity_at_0 == 1
        assert cert.multiplicity_at_1 == 1
        assert cert.roots_in_open_interval == 0

    def test_interior_rational_root(self):
        ok, cert = no_roots_in_unit_interval(U(-1, 2))  # 2x - 1
        assert not ok
        assert cert.roots_in_open_interval == 1

    def test_interior_irrational_root(self):
        ok, cert = no_roots_in_unit_interval(U(1, -3, 1))  # x^2 - 3x + 1
        assert not ok

    def test_constant_is_rootless(self):
        ok, cert = no_roots_in_unit_interval(U(7))
        assert ok and cert.roots_in_open_interval == 0

    def test_certificate_rechecks(self):
        for p in (U(0, -1, 1), U(-1, 2), U(1, -3, 1), U(2, 0, 0, 5),
                  UniPoly.from_roots([0, 0, 1, 3, Fraction(-1, 2)])):
            ok, cert = no_roots_in_unit_interval(p)
            assert recheck_certificate(cert)

    def test_certificate_text_is_structured(self):
        _, cert = no_roots_in_unit_interval(U(1, -3, 1))
        text = cert.text()
        assert "sturm chain" in text
        assert "signs at 0" in text and "signs at 1" in text
        assert "roots" in text

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            no_roots_in_unit_interval(UniPoly.zero())


class TestDeflate:
    def test_deflation_multiplicity(self):
        p = U(0, 0, 1) * U(-1, 1)  # x^2 (x-1)
        q, m = deflate_at(p, 0)
        assert m == 2 and q == U(-1, 1)
        q2, m2 = deflate_at(q, 1)
        assert m2 == 1 and q2.degree() == 0

    def test_no_root_no_change(self):
        p = U(1, 1)
        q, m = deflate_at(p, 5)
        assert m == 0 and q == p

"""Tests for polynomial matrices and Hurwitz word sums.

The brute-force word enumeration is the oracle: it is validated first on
hand-expanded small cases, then the recurrence is required to agree with it.
"""

import random
from fractions import Fraction

import pytest

from hurwitzcert.polycore import Polynomial, parse_polynomial
from hurwitzcert.symmatrix import (
    DimensionMismatchError,
    PolyMatrix,
    format_matrix,
    hurwitz,
    hurwitz_bruteforce,
    hurwitz_table,
    parse_matrix,
    stationarity_residual,
    trace_coefficients,
    verify_trace_identity,
)

EX_RING = ("x1", "x2")


def example_pair():
    """The worked two-variable example: A = diag(1, x1, x2), fixed integer B."""
    one = Polynomial.one(EX_RING)
    x1 = Polynomial.variable(EX_RING, "x1")
    x2 = Polynomial.variable(EX_RING, "x2")
    A = PolyMatrix.diagonal([one, x1, x2])
    B = PolyMatrix.from_scalars([[-2, 1, 0], [-1, 2, 3], [1, -1, 3]], EX_RING)
    return A, B


def random_rational_matrix(rng, n=3, ring=()):
    return PolyMatrix.from_scalars(
        [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
         for _ in range(n)], ring)


class TestBruteForceOracle:
    """Validate the oracle itself against hand expansion before using it."""

    def test_m1(self):
        A = PolyMatrix.symbolic(2, "a")
        B = PolyMatrix.symbolic(2, "b")
        ring = A.ring + B.ring
        A = A.map_entries(lambda e: e.extend_ring(ring))
        B = B.map_entries(lambda e: e.extend_ring(ring))
        assert hurwitz_bruteforce(A, B, 1, 0) == A
        assert hurwitz_bruteforce(A, B, 1, 1) == B

    def test_m2_k1_is_ab_plus_ba(self):
        A = PolyMatrix.symbolic(2, "a")
        B = PolyMatrix.symbolic(2, "b")
        ring = A.ring + B.ring
        A = A.map_entries(lambda e: e.extend_ring(ring))
        B = B.map_entries(lambda e: e.extend_ring(ring))
        assert hurwitz_bruteforce(A, B, 2, 1) == A * B + B * A

    def test_m3_k1_three_words(self):
        A = PolyMatrix.symbolic(2, "a")
        B = PolyMatrix.symbolic(2, "b")
        ring = A.ring + B.ring
        A = A.map_entries(lambda e: e.extend_ring(ring))
        B = B.map_entries(lambda e: e.extend_ring(ring))
        expected = A * A * B + A * B * A + B * A * A
        assert hurwitz_bruteforce(A, B, 3, 1) == expected

    def test_word_count(self):
        rng = random.Random(7)
        A = random_rational_matrix(rng)
        B = random_rational_matrix(rng)
        # S_{m,k}(I, I) = C(m,k) I
        I = PolyMatrix.identity(3, ())
        s = hurwitz_bruteforce(I, I, 6, 3)
        assert s == I * Fraction(20)
        del A, B


class TestRecurrence:
    def test_s21_concrete(self):
        A = PolyMatrix.from_scalars([[1, 0], [0, 2]])
        B = PolyMatrix.from_scalars([[0, 1], [1, 0]])
        s = hurwitz(A, B, 2, 1)
        assert s == PolyMatrix.from_scalars([[0, 3], [3, 0]])

    def test_k0_is_matrix_power(self):
        rng = random.Random(11)
        A = random_rational_matrix(rng)
        B = random_rational_matrix(rng)
        assert hurwitz(A, B, 5, 0) == A**5

    def test_kmax_is_b_power(self):
        rng = random.Random(13)
        A = random_rational_matrix(rng)
        B = random_rational_matrix(rng)
        assert hurwitz(A, B, 5, 5) == B**5

    def test_k_out_of_range(self):
        A, B = example_pair()
        with pytest.raises(ValueError):
            hurwitz(A, B, 3, 4)
        with pytest.raises(ValueError):
            hurwitz(A, B, 3, -1)

    def test_dimension_mismatch(self):
        A = PolyMatrix.identity(2, ())
        B = PolyMatrix.identity(3, ())
        with pytest.raises(DimensionMismatchError):
            hurwitz(A, B, 2, 1)

    def test_table_boundary_invariants(self):
        rng = random.Random(17)
        A = random_rational_matrix(rng)
        B = random_rational_matrix(rng)
        table = hurwitz_table(A, B, 5)
        for length in range(6):
            assert table[(length, 0)] == A**length
            assert table[(length, length)] == B**length

    def test_matches_bruteforce_m6_k3(self):
        rng = random.Random(19)
        A = random_rational_matrix(rng)
        B = random_rational_matrix(rng)
        assert hurwitz(A, B, 6, 3) == hurwitz_bruteforce(A, B, 6, 3)

    def test_matches_bruteforce_all_cells_small(self):
        rng = random.Random(23)
        A = random_rational_matrix(rng, n=2)
        B = random_rational_matrix(rng, n=2)
        for m in range(0, 6):
            for k in range(m + 1):
                assert hurwitz(A, B, m, k) == hurwitz_bruteforce(A, B, m, k)


class TestTraceCoefficients:
    def test_identity_matrices_binomial(self):
        I = PolyMatrix.identity(3, ())
        tc = trace_coefficients(I, I, 6)
        vals = [c.constant_value() for c in tc]
        assert vals == [3, 18, 45, 60, 45, 18, 3]

    def test_example_m4(self):
        A, B = example_pair()
        tc = trace_coefficients(A, B, 4)
        expected = parse_polynomial(
            "20 - 4*x1 + 8*x1^2 - 12*x1*x2 + 42*x2^2", EX_RING)
        assert tc[2] == expected

    def test_example_m3(self):
        A, B = example_pair()
        assert trace_coefficients(A, B, 3)[2] == parse_polynomial(
            "9 + 18*x2", EX_RING)

    def test_two_paths_agree(self):
        A, B = example_pair()
        for m in range(0, 5):
            assert (trace_coefficients(A, B, m)
                    == trace_coefficients(A, B, m, method="adjoin_t"))

    def test_sum_over_k_is_trace_of_power(self):
        rng = random.Random(29)
        A = random_rational_matrix(rng)
        B = random_rational_matrix(rng)
        for m in (1, 3, 5):
            total = sum((c for c in trace_coefficients(A, B, m)),
                        Polynomial.zero(()))
            assert total == ((A + B) ** m).trace()

    def test_swap_symmetry(self):
        rng = random.Random(31)
        A = random_rational_matrix(rng)
        B = random_rational_matrix(rng)
        for m in (2, 4, 5):
            fw = trace_coefficients(A, B, m)
            bw = trace_coefficients(B, A, m)
            for k in range(m + 1):
                assert fw[k] == bw[m - k]


class TestTraceIdentity:
    def test_fully_symbolic_2x2(self):
        A = PolyMatrix.symbolic(2, "a")
        B = PolyMatrix.symbolic(2, "b")
        ring = A.ring + B.ring
        A = A.map_entries(lambda e: e.extend_ring(ring))
        B = B.map_entries(lambda e: e.extend_ring(ring))
        assert verify_trace_identity(A, B, 4, 2)

    def test_identity_A_reduces_to_binomial(self):
        rng = random.Random(37)
        B = random_rational_matrix(rng)
        I = PolyMatrix.identity(3, ())
        assert verify_trace_identity(I, B, 5, 2)

    def test_example_m4_k2_vs_m3(self):
        A, B = example_pair()
        t4 = trace_coefficients(A, B, 4)[2]
        table_prod = (A * hurwitz(A, B, 3, 2)).trace()
        assert t4 == table_prod * 2

    def test_k_equal_m_rejected(self):
        A, B = example_pair()
        with pytest.raises(ValueError):
            verify_trace_identity(A, B, 4, 4)

    def test_symbolic_suite_m_le_6(self):
        ring = ("a1", "a2", "a3") + tuple(
            f"b{i}{j}" for i in range(1, 4) for j in range(1, 4))
        A = PolyMatrix.diagonal(
            [Polynomial.variable(ring, f"a{i}") for i in (1, 2, 3)])
        B = PolyMatrix([[Polynomial.variable(ring, f"b{i}{j}")
                         for j in range(1, 4)] for i in range(1, 4)])
        for m in range(1, 7):
            for k in range(m):
                assert verify_trace_identity(A, B, m, k), (m, k)


class TestStationarityResidual:
    def test_example_minimizer_residual_zero(self):
        Amin = PolyMatrix.diagonal([
            Polynomial.constant((), 1),
            Polynomial.constant((), Fraction(7, 25)),
            Polynomial.constant((), Fraction(1, 25))])
        B = PolyMatrix.from_scalars([[-2, 1, 0], [-1, 2, 3], [1, -1, 3]])
        D = PolyMatrix.identity(3, ())
        res = stationarity_residual(Amin, B, D, 4, 2)
        assert res.is_zero()
        value = trace_coefficients(Amin, B, 4)[2].constant_value()
        assert value == Fraction(486, 25)

    def test_all_ones_reduces_to_trace_identity(self):
        rng = random.Random(41)
        B = random_rational_matrix(rng)
        A1 = PolyMatrix.identity(3, ())
        D = PolyMatrix.identity(3, ())
        assert stationarity_residual(A1, B, D, 5, 2).is_zero()

    def test_non_minimizer_nonzero(self):
        Ahalf = PolyMatrix.diagonal([
            Polynomial.constant((), 1),
            Polynomial.constant((), Fraction(1, 2)),
            Polynomial.constant((), Fraction(1, 2))])
        B = PolyMatrix.from_scalars([[-2, 1, 0], [-1, 2, 3], [1, -1, 3]])
        D = PolyMatrix.identity(3, ())
        assert not stationarity_residual(Ahalf, B, D, 4, 2).is_zero()

    def test_malformed_D_rejected(self):
        A, B = example_pair()
        D = PolyMatrix.diagonal([Polynomial.one(EX_RING),
                                 Polynomial.constant(EX_RING, 2),
                                 Polynomial.one(EX_RING)])
        with pytest.raises(ValueError):
            stationarity_residual(A, B, D, 4, 2)

    def test_zero_entry_pattern_enforced(self):
        # a_2 = 0 but d_2 = 1 must be rejected
        zero = Polynomial.zero(())
        one = Polynomial.one(())
        Az = PolyMatrix.diagonal([one, zero,
                                  Polynomial.constant((), Fraction(1, 3))])
        B = PolyMatrix.from_scalars([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        D_bad = PolyMatrix.identity(3, ())
        with pytest.raises(ValueError):
            stationarity_residual(Az, B, D_bad, 4, 2)
        D_ok = PolyMatrix.diagonal([one, zero, one])
        stationarity_residual(Az, B, D_ok, 4, 2)  # no error


class TestMatrixFormat:
    def test_round_trip(self):
        A, B = example_pair()
        for M in (A, B):
            assert parse_matrix(format_matrix(M), EX_RING) == M

    def test_format_example(self):
        M = PolyMatrix.from_scalars([[1, 2], [3, 4]], ("x",))
        assert format_matrix(M) == "1, 2; 3, 4"

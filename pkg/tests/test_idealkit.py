"""Tests for the Groebner engine: division, bases, quotients, saturation,
elimination, unit detection, budgets, and the ideal file format.

Oracle discipline: the defining properties (Buchberger's S-pair criterion,
division-remainder invariants, quotient/saturation inclusion chains) are
checked directly rather than trusting the implementation's own claims.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hurwitzcert.polycore import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    format_polynomial,
    parse_polynomial,
)
from hurwitzcert.idealkit import (
    Budget,
    BudgetExceededError,
    GroebnerBasis,
    Ideal,
    buchberger,
    contains_difference_variety,
    divide_exact,
    eliminate,
    format_ideal,
    groebner_with_probes,
    ideal_quotient,
    intersect_principal,
    is_member,
    is_unit_ideal,
    normal_form,
    parse_ideal,
    saturate,
    saturate_by_variables,
)

RING = ("x", "y", "z")


def P(text, ring=RING):
    return parse_polynomial(text, ring)


def gb_strings(gb):
    return sorted(format_polynomial(b) for b in gb.basis)


def spoly_rational(f, g, order):
    """Independent S-polynomial construction used as a test oracle."""
    lmf, lmg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = tuple(max(a, b) for a, b in zip(lmf, lmg))
    mf = Polynomial(f.ring, {tuple(a - b for a, b in zip(lcm, lmf)):
                             Fraction(1) / f.leading_coefficient(order)})
    mg = Polynomial(g.ring, {tuple(a - b for a, b in zip(lcm, lmg)):
                             Fraction(1) / g.leading_coefficient(order)})
    return mf * f - mg * g


def assert_is_groebner_basis(gb, generators):
    """Buchberger criterion + generator membership: the checkable half of
    'gb generates the same ideal and is a Groebner basis'."""
    basis = list(gb.basis)
    order = gb.order
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = spoly_rational(basis[i], basis[j], order)
            assert normal_form(s, basis, order).is_zero()
    for g in generators:
        assert normal_form(g, basis, order).is_zero()


def assert_reduced_and_monic(gb):
    order = gb.order
    for i, b in enumerate(gb.basis):
        assert b.leading_coefficient(order) == 1
        for j, other in enumerate(gb.basis):
            if i == j:
                continue
            lm = other.leading_monomial(order)
            for mono in b.terms:
                assert not all(a <= c for a, c in zip(lm, mono)), (
                    f"term of basis[{i}] divisible by lm of basis[{j}]")


class TestNormalForm:
    def test_member_reduces_to_zero(self):
        G = [P("x^2 - y"), P("y^2 - z")]
        f = P("x^2*y^2 - y*z")  # = y^2(x^2-y) + y(y^2-z)
        gb = buchberger(Ideal(RING, G))
        assert normal_form(f, gb).is_zero()

    def test_remainder_has_no_reducible_term(self):
        G = [P("x^2 - y"), P("y^3 - 1")]
        gb = buchberger(Ideal(RING, G))
        f = P("x^7 + 3*x^4*y^2 + x*y^5 - 2")
        r = normal_form(f, gb)
        lms = [b.leading_monomial(GREVLEX) for b in gb.basis]
        for mono in r.terms:
            for lm in lms:
                assert not all(a <= c for a, c in zip(lm, mono))

    def test_difference_lies_in_ideal(self):
        G = [P("x^2 - y"), P("y^3 - 1")]
        I = Ideal(RING, G)
        f = P("x^5*y + x^3 - y + 7")
        r = normal_form(f, buchberger(I))
        assert is_member(f - r, I)

    def test_deterministic(self):
        G = [P("x*y - 1"), P("y^2 - 1")]
        f = P("x^2*y^3 + x*y^2 + y")
        a = normal_form(f, G)
        b = normal_form(f, G)
        assert a == b

    def test_no_divisors_returns_input(self):
        f = P("x + y + 1")
        assert normal_form(f, []) == f

    def test_rational_coefficients_exact(self):
        G = [P("3*x - 2*y")]
        r = normal_form(P("x"), G)
        assert r == P("2/3*y")


class TestBuchberger:
    def test_example_pair(self):
        gb = buchberger(Ideal(("x", "y"),
                              [parse_polynomial("x + y", ("x", "y")),
                               parse_polynomial("x - y", ("x", "y"))]))
        assert gb_strings(gb) == ["x", "y"]

    def test_zero_ideal(self):
        gb = buchberger(Ideal(RING, []))
        assert gb.basis == ()

    def test_unit_ideal_basis_is_one(self):
        gb = buchberger(Ideal(RING, [P("2")]))
        assert gb_strings(gb) == ["1"]

    def test_cyclic4_known_size_and_criterion(self):
        ring = ("a", "b", "c", "d")
        gens = [parse_polynomial(s, ring) for s in
                ["a + b + c + d",
                 "a*b + b*c + c*d + d*a",
                 "a*b*c + b*c*d + c*d*a + d*a*b",
                 "a*b*c*d - 1"]]
        gb = buchberger(Ideal(ring, gens))
        assert len(gb) == 7
        assert_is_groebner_basis(gb, gens)
        assert_reduced_and_monic(gb)

    def test_idempotent(self):
        gens = [P("x^2 + y^2 + z^2 - 1"), P("x - y*z")]
        gb1 = buchberger(Ideal(RING, gens))
        gb2 = buchberger(Ideal(RING, list(gb1.basis)))
        assert gb1.basis == gb2.basis

    def test_lex_order(self):
        ring = ("x", "y")
        gens = [parse_polynomial("x^2 + y^2 - 1", ring),
                parse_polynomial("x - y", ring)]
        gb = buchberger(Ideal(ring, gens), order=LEX)
        assert_is_groebner_basis(gb, gens)
        # lex basis exposes the univariate eliminant in the last variable
        univ = [b for b in gb.basis
                if all(m[0] == 0 for m in b.terms)]
        assert univ and univ[0] == parse_polynomial("y^2 - 1/2", ring)

    def test_katsura3(self):
        ring = ("u0", "u1", "u2", "u3")
        gens = [parse_polynomial(s, ring) for s in
                ["u0 + 2*u1 + 2*u2 + 2*u3 - 1",
                 "u0^2 + 2*u1^2 + 2*u2^2 + 2*u3^2 - u0",
                 "2*u0*u1 + 2*u1*u2 + 2*u2*u3 - u1",
                 "u1^2 + 2*u0*u2 + 2*u1*u3 - u2"]]
        gb = buchberger(Ideal(ring, gens))
        assert_is_groebner_basis(gb, gens)
        assert_reduced_and_monic(gb)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(
        st.builds(
            lambda monos: monos,
            st.dictionaries(
                st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.integers(0, 2)),
                st.integers(-4, 4).filter(lambda v: v != 0),
                min_size=1, max_size=3)),
        min_size=1, max_size=3))
    def test_random_small_ideals_satisfy_criterion(self, term_dicts):
        gens = [Polynomial(RING, {m: Fraction(c) for m, c in d.items()})
                for d in term_dicts]
        gens = [g for g in gens if not g.is_zero()]
        gb = buchberger(Ideal(RING, gens),
                        budget=Budget(max_pairs=20000, max_seconds=30))
        assert_is_groebner_basis(gb, gens)
        assert_reduced_and_monic(gb)


class TestMembership:
    def test_member_and_nonmember(self):
        I = Ideal(RING, [P("x^2 - y"), P("y^2 - z")])
        assert is_member(P("x^4 - z"), I)  # x^4 - z = (x^2+y)(x^2-y)+(y^2-z)
        assert not is_member(P("x - 1"), I)

    def test_zero_is_member_of_anything(self):
        assert is_member(Polynomial.zero(RING), Ideal(RING, []))


class TestQuotientAndSaturation:
    def test_monomial_quotient(self):
        I = Ideal(RING, [P("x*y")])
        Q = ideal_quotient(I, P("x"))
        assert gb_strings(buchberger(Q)) == ["y"]

    def test_quotient_definition_property(self):
        # every generator f of (I : g) satisfies f*g in I
        I = Ideal(RING, [P("x^2*y - x*z"), P("y^2*z")])
        g = P("x*y")
        Q = ideal_quotient(I, g)
        for f in Q.generators:
            assert is_member(f * g, I)

    def test_intersection_with_principal(self):
        I = Ideal(RING, [P("x")])
        J = intersect_principal(I, P("y"))
        assert gb_strings(buchberger(J)) == ["x*y"]

    def test_saturation_of_power(self):
        I = Ideal(RING, [P("x^2")])
        S = saturate(I, P("x"))
        assert is_unit_ideal(S)

    def test_saturation_strips_component(self):
        # <x*y, x*z> : x^inf = <y, z>
        I = Ideal(RING, [P("x*y"), P("x*z")])
        S = saturate(I, P("x"))
        assert gb_strings(buchberger(S)) == ["y", "z"]

    def test_two_methods_agree(self):
        cases = [
            (Ideal(RING, [P("x^2*y - x*y")]), P("x")),
            (Ideal(RING, [P("x*y"), P("x*z")]), P("x")),
            (Ideal(RING, [P("x^3")]), P("x")),
            (Ideal(RING, [P("x^2 + y^2"), P("x*y*z")]), P("z")),
        ]
        for I, g in cases:
            a = buchberger(saturate(I, g, method="aux")).basis
            b = buchberger(saturate(I, g, method="quotient")).basis
            assert a == b

    def test_quotient_chain_is_increasing(self):
        I = Ideal(RING, [P("x^3*y - x^2*z")])
        g = P("x")
        q1 = ideal_quotient(I, g)
        q2 = ideal_quotient(q1, g)
        sat = saturate(I, g)
        for f in I.generators:
            assert is_member(f, q1)
        for f in q1.generators:
            assert is_member(f, q2)
        for f in q2.generators:
            assert is_member(f, sat)

    def test_variablewise_product_saturation(self):
        I = Ideal(RING, [P("x^2*y^2*z - x*y*z^2")])
        a = saturate_by_variables(I, ["x", "y"])
        b = saturate(I, P("x*y"))
        assert buchberger(a).basis == buchberger(b).basis

    def test_difference_variety_wrapper(self):
        I = Ideal(RING, [P("x*y")])
        J = Ideal(RING, [P("x")])
        out = contains_difference_variety(I, J)
        assert gb_strings(buchberger(out)) == ["y"]
        with pytest.raises(ValueError):
            contains_difference_variety(I, Ideal(RING, [P("x"), P("y")]))


class TestEliminate:
    def test_circle_line(self):
        ring = ("x", "y")
        I = Ideal(ring, [parse_polynomial("x^2 + y^2 - 1", ring),
                         parse_polynomial("x - y", ring)])
        E = eliminate(I, ["y"])
        assert E.ring == ("y",)
        gb = buchberger(E)
        assert gb_strings(gb) == ["y^2 - 1/2"]

    def test_parametrized_curve(self):
        # x = t^2, y = t^3: eliminant is y^2 - x^3
        ring = ("t", "x", "y")
        I = Ideal(ring, [parse_polynomial("x - t^2", ring),
                         parse_polynomial("y - t^3", ring)])
        E = eliminate(I, ["x", "y"])
        gb = buchberger(E)
        assert gb_strings(gb) == ["x^3 - y^2"]

    def test_keeps_original_variable_order(self):
        ring = ("a", "b", "c")
        I = Ideal(ring, [parse_polynomial("a - b*c", ring)])
        E = eliminate(I, ["c", "b"])
        assert E.ring == ("b", "c")

    def test_no_eliminated_variable_in_result(self):
        ring = ("t", "u", "x", "y")
        I = Ideal(ring, [parse_polynomial("x - t - u", ring),
                         parse_polynomial("y - t*u", ring),
                         parse_polynomial("t^2 + u^2 - 1", ring)])
        E = eliminate(I, ["x", "y"])
        assert E.ring == ("x", "y")
        # the relation: x^2 - 2y = t^2+u^2 = 1
        gb = buchberger(E)
        assert gb_strings(gb) == ["x^2 - 2*y - 1"]

    def test_agrees_with_lex_block(self):
        ring = ("x", "y", "z")
        I = Ideal(ring, [parse_polynomial("x^2 - y", ring),
                         parse_polynomial("x^3 - z", ring)])
        e1 = eliminate(I, ["y", "z"], order=GREVLEX)
        e2 = eliminate(I, ["y", "z"], order=LEX)
        assert buchberger(e1).basis == buchberger(e2).basis

    def test_error_on_unknown_variable(self):
        I = Ideal(RING, [P("x")])
        with pytest.raises(ValueError):
            eliminate(I, ["q"])


class TestUnitIdeal:
    def test_unit_cases(self):
        assert is_unit_ideal(Ideal(RING, [P("5")]))
        assert is_unit_ideal(Ideal(RING, [P("x^2 + 1"), P("x")]))
        assert is_unit_ideal(Ideal(RING, [P("x - 1"), P("x")]))

    def test_non_unit_cases(self):
        assert not is_unit_ideal(Ideal(RING, [P("x"), P("y"), P("z")]))
        assert not is_unit_ideal(Ideal(RING, []))
        assert not is_unit_ideal(Ideal(RING, [P("x^2 + y^2")]))


class TestBudgets:
    def test_pair_budget_raises_with_partial_state(self):
        ring = ("a", "b", "c", "d")
        gens = [parse_polynomial(s, ring) for s in
                ["a + b + c + d",
                 "a*b + b*c + c*d + d*a",
                 "a*b*c + b*c*d + c*d*a + d*a*b",
                 "a*b*c*d - 1"]]
        with pytest.raises(BudgetExceededError) as exc:
            buchberger(Ideal(ring, gens), budget=Budget(max_pairs=2))
        assert exc.value.pairs_done == 2
        assert len(exc.value.partial) >= 4
        assert all(isinstance(p, Polynomial) for p in exc.value.partial)

    def test_generous_budget_succeeds(self):
        gb = buchberger(Ideal(RING, [P("x^2 - y"), P("y^2 - z")]),
                        budget=Budget(max_pairs=1000, max_seconds=60))
        assert len(gb) >= 2


class TestProbes:
    def test_probe_membership_hit(self):
        ring = ("x", "y")
        I = Ideal(ring, [parse_polynomial("x^2 - y^2", ring),
                         parse_polynomial("y^3", ring)])
        probe = parse_polynomial("x^2*y", ring)
        status, hit, _ = groebner_with_probes(I, [probe])
        assert status == "probe" and hit == 0

    def test_probe_miss_completes(self):
        ring = ("x", "y")
        I = Ideal(ring, [parse_polynomial("x^2", ring)])
        probe = parse_polynomial("y", ring)
        status, hit, basis = groebner_with_probes(I, [probe],
                                                  stop_on_unit=False)
        assert status == "done" and hit is None

    def test_degree_bounded_homogeneous_run(self):
        ring = ("x", "y")
        I = Ideal(ring, [parse_polynomial("x^2 - y^2", ring),
                         parse_polynomial("y^3", ring)])
        probe = parse_polynomial("x^2*y", ring)
        status, hit, _ = groebner_with_probes(
            I, [probe], degree_bound=3, weights=(1, 1))
        assert status == "probe" and hit == 0


class TestDivideExact:
    def test_exact_division(self):
        f = P("x^2*y + x*y^2")
        g = P("x*y")
        assert divide_exact(f, g) == P("x + y")

    def test_not_divisible_raises(self):
        with pytest.raises(ValueError):
            divide_exact(P("x + 1"), P("y"))

    def test_rational_leading_coefficients(self):
        f = P("3/2*x^2 - 3/2*y^2")
        g = P("3*x - 3*y")
        assert divide_exact(f, g) == P("1/2*x + 1/2*y")


class TestFileFormat:
    def test_round_trip(self):
        I = Ideal(RING, [P("x^2 - 2/3*y"), P("z^3 + x*y*z - 1")])
        text = format_ideal(I)
        J = parse_ideal(text)
        assert J.ring == I.ring
        assert J.generators == I.generators

    def test_comments_and_blank_lines_ignored(self):
        text = "# ring: x y z\n# a comment\n\nx + y\n  # more\nz^2\n"
        I = parse_ideal(text)
        assert I.generators == (P("x + y"), P("z^2"))

    def test_explicit_ring_overrides(self):
        I = parse_ideal("x + y\n", ring=("x", "y"))
        assert I.ring == ("x", "y")

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dmod_hodge.errors import AmbientMismatchError, InexactDivisionError, NonrationalFactorError
from dmod_hodge.polys import (
    MonomialOrder,
    Poly,
    UniPoly,
    divide_exact,
    poly_gcd,
    rational_roots,
    squarefree_test,
)

VARS = ("x", "y")


def P(src_terms):
    return Poly(VARS, src_terms)


coeffs = st.integers(-6, 6).map(Fraction) | st.fractions(
    min_value=-4, max_value=4, max_denominator=5
)
exponents = st.tuples(st.integers(0, 5), st.integers(0, 5))
polys = st.dictionaries(exponents, coeffs, max_size=6).map(P)


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Poly.zero(VARS) == a
    assert a * Poly.constant(1, VARS) == a


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_product_rule(a, b):
    for v in VARS:
        assert (a * b).partial(v) == a.partial(v) * b + a * b.partial(v)


@given(polys, polys)
@settings(max_examples=40, deadline=None)
def test_divide_exact_inverts_multiplication(a, b):
    if not b:
        return
    assert divide_exact(a * b, b) == a


def test_divide_exact_rejects_nondivisible():
    x = Poly.variable("x", VARS)
    y = Poly.variable("y", VARS)
    with pytest.raises(InexactDivisionError):
        divide_exact(x * x + y, x)


@given(polys, polys)
@settings(max_examples=30, deadline=None)
def test_gcd_divides_both(a, b):
    if not a and not b:
        return
    g = poly_gcd(a, b)
    if a:
        divide_exact(a, g)
    if b:
        divide_exact(b, g)


def test_gcd_known():
    x = Poly.variable("x", VARS)
    y = Poly.variable("y", VARS)
    g = poly_gcd((x + y) ** 2 * x, (x + y) * y)
    # up to a scalar
    assert divide_exact(g, x + y).is_constant()


def test_squarefree():
    x = Poly.variable("x", VARS)
    y = Poly.variable("y", VARS)
    assert squarefree_test(x * x + y ** 3)
    assert squarefree_test(x ** 5 + y ** 5 + x ** 2 * y ** 2)
    assert not squarefree_test(x * x)
    assert not squarefree_test((x + y) ** 2 * (x - y))
    assert squarefree_test(x * y)


def test_subs_and_evaluate():
    x = Poly.variable("x", VARS)
    y = Poly.variable("y", VARS)
    f = x ** 2 + 3 * y - 1
    g = f.subs("x", Fraction(1, 2))
    assert g == 3 * y - Fraction(3, 4)
    assert f.subs("x", y) == y ** 2 + 3 * y - 1


def test_extend_restrict_round_trip():
    f = Poly.variable("x", ("x",)) ** 3
    big = f.extend(("x", "y"))
    assert big.vars == ("x", "y")
    assert big.restrict(("x",)) == f
    with pytest.raises(AmbientMismatchError):
        (big + Poly.variable("y", ("x", "y"))).restrict(("x",))


def test_mixing_ambients_raises():
    with pytest.raises(AmbientMismatchError):
        Poly.variable("x", ("x",)) + Poly.variable("x", ("x", "y"))


# -- monomial orders ----------------------------------------------------


def test_degrevlex_classic_tiebreak():
    o = MonomialOrder.degrevlex(3)
    # x*z vs y^2: same degree, revlex compares last exponents
    assert o.compare((1, 0, 1), (0, 2, 0)) < 0
    assert o.compare((2, 0, 0), (1, 1, 0)) > 0


def test_lex_vs_deglex():
    lex = MonomialOrder.lex(2)
    deglex = MonomialOrder.deglex(2)
    assert lex.compare((1, 0), (0, 5)) > 0
    assert deglex.compare((1, 0), (0, 5)) < 0


def test_block_order_validates_partition():
    with pytest.raises(ValueError):
        MonomialOrder.block(3, [([0, 1], "degrevlex")])
    with pytest.raises(ValueError):
        MonomialOrder.block(2, [([0, 0, 1], "lex")])


def test_block_order_dominance():
    o = MonomialOrder.block(2, [([1], "lex"), ([0], "lex")])
    # any power of the dominant slot beats all of the other
    assert o.compare((9, 1), (0, 2)) < 0
    assert o.compare((9, 2), (0, 2)) > 0


def test_weight_order_needs_tie():
    with pytest.raises(ValueError):
        MonomialOrder(2, "weight", weights=[1, 0])
    o = MonomialOrder.weight(2, [2, 1], MonomialOrder.lex(2))
    assert o.compare((1, 0), (0, 1)) > 0
    # equal weight 2, lex tie puts x first
    assert o.compare((1, 0), (0, 2)) > 0


@given(exponents, exponents)
@settings(max_examples=80, deadline=None)
def test_orders_are_total_and_antisymmetric(a, b):
    for o in (MonomialOrder.degrevlex(2), MonomialOrder.lex(2), MonomialOrder.deglex(2)):
        assert o.compare(a, b) == -o.compare(b, a)
        if a == b:
            assert o.compare(a, b) == 0


@given(exponents)
@settings(max_examples=40, deadline=None)
def test_one_is_smallest(e):
    for o in (MonomialOrder.degrevlex(2), MonomialOrder.lex(2)):
        assert o.compare((0, 0), e) <= 0


@given(exponents, exponents, exponents)
@settings(max_examples=60, deadline=None)
def test_orders_respect_multiplication(a, b, c):
    from dmod_hodge.polys import mono_mul

    for o in (MonomialOrder.degrevlex(2), MonomialOrder.lex(2)):
        if o.compare(a, b) > 0:
            assert o.compare(mono_mul(a, c), mono_mul(b, c)) > 0


# -- univariate ---------------------------------------------------------


def test_unipoly_roots_round_trip():
    roots = [(Fraction(-1), 2), (Fraction(-5, 6), 1), (Fraction(1, 3), 1)]
    b = UniPoly.from_roots(roots)
    assert rational_roots(b) == sorted(roots)


def test_unipoly_divexact():
    b = UniPoly.from_roots([(Fraction(-1), 1), (Fraction(-1, 2), 1)])
    q = b.divexact(UniPoly.linear_root(Fraction(-1)))
    assert q == UniPoly.linear_root(Fraction(-1, 2))
    with pytest.raises(InexactDivisionError):
        b.divexact(UniPoly.linear_root(Fraction(7)))


def test_rational_roots_rejects_irrational_splitting():
    with pytest.raises(NonrationalFactorError):
        rational_roots(UniPoly([1, 0, 1]))  # s^2 + 1


def test_unipoly_evaluate_and_text():
    b = UniPoly([Fraction(1, 2), 1, 1])
    assert b(Fraction(-1, 2)) == Fraction(1, 4)
    assert b.text() == "s^2+s+1/2"
    assert UniPoly.zero().text() == "0"


def test_poly_text_stable():
    x = Poly.variable("x", VARS)
    y = Poly.variable("y", VARS)
    f = y * x + 2 * x - y ** 2
    assert f.text() == f.text()
    assert "x*y" in f.text()

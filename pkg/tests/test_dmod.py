from fractions import Fraction

import pytest

from dmod_hodge.dmod import (
    FsValue,
    annihilates_shifted_power,
    ann_fs,
    apply_to_fs,
    bernstein_sato,
    default_level_hint,
    minimal_exponent,
    s_minimal_polynomial,
    s_minimal_polynomial_elim,
)
from dmod_hodge.parsing import parse_poly
from dmod_hodge.polys import Poly, UniPoly
from dmod_hodge.weyl import AlgebraSignature

F = Fraction


def _roots(f_text, vars, method="bm"):
    bs = bernstein_sato(parse_poly(f_text, vars), method)
    return dict(bs.roots)


def test_smooth_function():
    assert _roots("x", ("x",)) == {F(-1): 1}
    assert _roots("x", ("x", "y")) == {F(-1): 1}


def test_square():
    assert _roots("x^2", ("x",)) == {F(-1): 1, F(-1, 2): 1}


def test_cusp():
    assert _roots("x^2+y^3", ("x", "y")) == {F(-1): 1, F(-5, 6): 1, F(-7, 6): 1}


def test_normal_crossings():
    assert _roots("x*y", ("x", "y")) == {F(-1): 2}
    # product formula: prod(s+i/2, i<=2) * prod(s+j/3, j<=3) sharing (s+1)
    assert _roots("x^2*y^3", ("x", "y")) == {
        F(-1): 2,
        F(-1, 2): 1,
        F(-1, 3): 1,
        F(-2, 3): 1,
    }


@pytest.mark.parametrize(
    "text,vars",
    [
        ("x", ("x",)),
        ("x*y", ("x", "y")),
        ("x^2+y^2", ("x", "y")),
        ("x^2+y^3", ("x", "y")),
    ],
)
def test_bm_and_malgrange_agree(text, vars):
    f = parse_poly(text, vars)
    a = bernstein_sato(f, "bm")
    b = bernstein_sato(f, "malgrange")
    assert a.b == b.b
    assert a.roots == b.roots


@pytest.mark.parametrize("method", ["bm", "malgrange"])
@pytest.mark.parametrize("text,vars", [("x^2+y^3", ("x", "y")), ("x*y", ("x", "y"))])
def test_annihilator_kills_fs(method, text, vars):
    # independent of the Groebner engine: act on the symbol directly
    f = parse_poly(text, vars)
    ann = ann_fs(f, method)
    assert ann.generators
    for g in ann.generators:
        assert annihilates_shifted_power(g, f, 0)


def test_non_annihilator_detected():
    f = parse_poly("x^2+y^3", ("x", "y"))
    sig = AlgebraSignature.weyl_s(f.vars)
    assert not annihilates_shifted_power(sig.gen("Dx"), f, 0)


def test_apply_to_fs_first_derivative():
    # Dx applied to x^s: s * x^(s-1)
    f = parse_poly("x", ("x",))
    sig = AlgebraSignature.weyl_s(("x",))
    start = FsValue(Poly.constant(1, ("x", "s")), 0)
    out = apply_to_fs(sig.gen("Dx"), f, start)
    assert out.m == 1
    assert out.num == Poly.variable("s", ("x", "s"))


def test_apply_to_fs_respects_composition():
    f = parse_poly("x^2+y^3", ("x", "y"))
    sig = AlgebraSignature.weyl_s(f.vars)
    op1 = sig.gen("Dx") * sig.gen("x") + sig.gen("s")
    op2 = sig.gen("Dy") ** 2 - sig.gen("y")
    start = FsValue(Poly.constant(1, f.vars + ("s",)), 0)
    once = apply_to_fs(op1 * op2, f, start)
    twice = apply_to_fs(op1, f, apply_to_fs(op2, f, start))
    # compare as fractions: num/f^m
    fx = f.extend(f.vars + ("s",))
    assert once.num * fx ** twice.m == twice.num * fx ** once.m


def test_shifted_power_level_matters():
    # x*Dx - (s-1) kills x^(s-1) but not x^s
    f = parse_poly("x", ("x",))
    sig = AlgebraSignature.weyl_s(("x",))
    op = sig.gen("x") * sig.gen("Dx") - (sig.gen("s") - 1)
    assert annihilates_shifted_power(op, f, 1)
    assert not annihilates_shifted_power(op, f, 0)


@pytest.mark.parametrize("text,vars", [("x^2", ("x",)), ("x^2+y^3", ("x", "y"))])
def test_s_minimal_polynomial_routes_agree(text, vars):
    f = parse_poly(text, vars)
    ann = ann_fs(f)
    gens = list(ann.generators) + [ann.sig.from_poly(f.extend(f.vars))]
    fast = s_minimal_polynomial(gens)
    slow = s_minimal_polynomial_elim(gens)
    assert fast == slow


def test_minimal_exponent_values():
    assert minimal_exponent(bernstein_sato(parse_poly("x", ("x",)))) is None
    assert minimal_exponent(bernstein_sato(parse_poly("x^2", ("x",)))) == F(1, 2)
    assert minimal_exponent(
        bernstein_sato(parse_poly("x^2+y^3", ("x", "y")))
    ) == F(5, 6)


def test_default_level_hint():
    assert default_level_hint(F(1, 2), None, 3) == 0
    # cusp in two variables
    assert default_level_hint(F(5, 6), F(5, 6), 2) == 0
    assert default_level_hint(F(1, 6), F(5, 6), 2) == 1
    # never negative, nonincreasing in alpha
    prev = None
    for num in range(1, 13):
        h = default_level_hint(F(num, 12), F(5, 6), 2)
        assert h >= 0
        if prev is not None:
            assert h <= prev
        prev = h

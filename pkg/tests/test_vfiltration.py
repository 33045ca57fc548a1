from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dmod_hodge.dmod import ann_fs
from dmod_hodge.errors import AlphaRangeError, NotReducedError, ValidationError
from dmod_hodge.groebner import left_groebner, module_groebner
from dmod_hodge.parsing import parse_poly
from dmod_hodge.polys import MonomialOrder, Poly
from dmod_hodge.vfiltration import (
    candidate_window,
    from_factorial_basis,
    gpv,
    kernel_nilpotent,
    lookup_piece,
    restriction_ideal,
    shift_annihilator,
    subs_s_shift,
    to_factorial_basis,
    vectors_at_level,
)
from dmod_hodge.weyl import AlgebraSignature, VectorElement

from conftest import corpus_poly

F = Fraction


def test_subs_s_shift():
    sig = AlgebraSignature.weyl_s(("x",))
    s, x, Dx = sig.gen("s"), sig.gen("x"), sig.gen("Dx")
    e = s ** 2 * x + Dx * s
    shifted = subs_s_shift(e, -1)
    expected = (s - 1) ** 2 * x + Dx * (s - 1)
    assert shifted == expected
    assert subs_s_shift(shifted, 1) == e


def test_shift_annihilator_adds_power():
    f = parse_poly("x^2+y^3", ("x", "y"))
    ann = ann_fs(f)
    J1 = shift_annihilator(ann, 1)
    assert len(J1) == len(ann.generators) + 1
    assert J1[-1] == ann.sig.from_poly(f) ** 2


def test_candidate_window_single_root():
    window, deep = candidate_window([(F(-1), 1)], 0)
    assert window == ((F(-1), 1),)
    assert deep == ()


def test_candidate_window_cusp_shape():
    table = [(F(-7, 6), 1), (F(-1), 1), (F(-5, 6), 1)]
    window, deep = candidate_window(table, 1)
    assert window == ((F(-1), 1), (F(-5, 6), 1), (F(-1, 6), 1))
    assert deep == ((F(-7, 6), 1),)


def test_candidate_window_drops_nonnegative_shifts():
    window, deep = candidate_window([(F(-1), 2)], 1)
    assert window == ((F(-1), 2),)
    assert deep == ()


@given(
    st.lists(
        st.tuples(
            st.fractions(min_value=F(-3), max_value=F(-1, 100), max_denominator=12),
            st.integers(1, 3),
        ),
        min_size=1,
        max_size=5,
        unique_by=lambda t: t[0],
    ),
    st.integers(0, 3),
)
@settings(max_examples=60, deadline=None)
def test_candidate_window_properties(table, p):
    window, deep = candidate_window(table, p)
    vals = dict(window) | dict(deep)
    assert all(-1 <= v < 0 for v, _ in window)
    assert all(v < -1 for v, _ in deep)
    # every kept value is a nonpositive shift of some root, with the
    # largest multiplicity among the roots reaching it
    for v, m in vals.items():
        hits = [mm for r, mm in table for k in range(p + 1) if r + k == v]
        assert hits and m == max(hits)
    # every negative shift is kept
    for r, _ in table:
        for k in range(p + 1):
            if r + k < 0:
                assert r + k in vals


S_SMALL = ("x", ("x",))


def test_smooth_one_variable_levels():
    f = parse_poly(*S_SMALL)
    r0 = gpv(f, 0)
    assert r0.candidates == (F(1),)
    assert [(str(a), m) for a, m in r0.level_roots] == [("-1", 1)]
    assert [tuple(c.text() for c in v) for v in r0.pieces[F(1)].vectors] == [("1",)]
    r1 = gpv(f, 1)
    assert r1.candidates == (F(1),)
    assert [tuple(c.text() for c in v) for v in r1.pieces[F(1)].vectors] == [
        ("0", "1"),
        ("1", "0"),
    ]


def test_node_nilpotency_two():
    r = gpv(corpus_poly("node"), 1)
    assert r.candidates == (F(1),)
    piece = r.pieces[F(1)]
    assert piece.nilpotency == 2
    assert dict(r.level_roots)[F(-1)] == 2
    assert [tuple(c.text() for c in v) for v in piece.vectors] == [
        ("0", "x"),
        ("0", "y"),
        ("1", "0"),
    ]


def test_input_validation():
    f = parse_poly("x^2", ("x",))
    with pytest.raises(NotReducedError):
        gpv(f, 0)
    # explicit opt-out works
    r = gpv(f, 0, check_reduced=False)
    assert r.candidates[-1] == F(1)
    with pytest.raises(ValidationError):
        gpv(parse_poly("x", ("x",)), -1)
    with pytest.raises(ValidationError):
        gpv(parse_poly("x", ("x",)), True)


def test_lookup_piece_boundaries(filtrations):
    r = filtrations("cusp", 1)
    assert r.candidates == (F(1, 6), F(5, 6), F(1))
    assert lookup_piece(r, F(1, 6)) is r.pieces[F(1, 6)]
    # between candidates: the next one up
    assert lookup_piece(r, F(1, 2)) is r.pieces[F(5, 6)]
    assert lookup_piece(r, F(899, 1000)) is r.pieces[F(1)]
    assert lookup_piece(r, F(1, 1000)) is r.pieces[F(1, 6)]
    assert lookup_piece(r, F(1)) is r.pieces[F(1)]
    for bad in (F(0), F(-1, 2), F(3, 2)):
        with pytest.raises(AlphaRangeError):
            lookup_piece(r, bad)


def _vector_module(piece, xvars):
    csig = AlgebraSignature.polynomial(xvars)
    vecs = [
        VectorElement(csig, [csig.from_poly(c) for c in v]) for v in piece.vectors
    ]
    ncomp = len(piece.vectors[0])
    return module_groebner(
        vecs, MonomialOrder.degrevlex(len(xvars)), list(range(ncomp))
    ), csig


@pytest.mark.parametrize("name,p", [("cusp", 1), ("f1", 1), ("f3", 1)])
def test_pieces_decrease(filtrations, name, p):
    """V-filtration axiom: the piece at a larger alpha sits inside the
    piece at a smaller one."""
    r = filtrations(name, p)
    xvars = r.f.vars
    for lo, hi in zip(r.candidates, r.candidates[1:]):
        mgb, csig = _vector_module(r.pieces[lo], xvars)
        for v in r.pieces[hi].vectors:
            vec = VectorElement(csig, [csig.from_poly(c) for c in v])
            assert mgb.contains(vec), f"piece({hi}) not inside piece({lo})"


@pytest.mark.parametrize("name,p", [("cusp", 1), ("f1", 1)])
def test_nilpotency_matches_kernel_chain(filtrations, name, p):
    """The recorded index equals the literal stabilization count of the
    kernels of (s - lam)^i, computed by colon ideals from scratch."""
    r = filtrations(name, p)
    pvars = r.f.vars + ("s",)
    csig = AlgebraSignature.polynomial(pvars)
    rest = [csig.from_poly(q) for q in r.restriction]
    order = MonomialOrder.degrevlex(len(pvars))
    for lam, mult in r.kernel_index.items():
        steps, _ = kernel_nilpotent(rest, lam, order, mult)
        assert steps == mult
        alpha = -lam
        if 0 < alpha <= 1:
            assert r.pieces[alpha].nilpotency == mult


def test_candidates_from_level_roots(filtrations):
    for name, p in [("cusp", 1), ("f1", 1)]:
        r = filtrations(name, p)
        for lam, _ in r.level_roots:
            if lam >= 0:
                continue
            if lam >= -1:
                assert -lam in r.candidates
            else:
                assert lam in r.deep_roots
        assert all(0 < a <= 1 for a in r.candidates)
        assert list(r.candidates) == sorted(set(r.candidates))
        assert all(d < -1 for d in r.deep_roots)


def test_restriction_contains_f_power(filtrations):
    r = filtrations("cusp", 1)
    pvars = r.f.vars + ("s",)
    csig = AlgebraSignature.polynomial(pvars)
    n = len(r.f.vars)
    order = MonomialOrder.block(
        n + 1, [([n], "lex"), (list(range(n)), "degrevlex")]
    )
    gb = left_groebner([csig.from_poly(q) for q in r.restriction], order)
    assert gb.contains(csig.from_poly(r.f.extend(pvars) ** (r.p + 1)))
    # the level polynomial itself lies in the restriction ideal
    lp = r.level_poly
    sP = Poly.variable("s", pvars)
    acc = Poly.zero(pvars)
    for i, c in enumerate(lp.coeffs):
        acc = acc + sP ** i * c
    assert gb.contains(csig.from_poly(acc))


def test_dual_route_piece_ideals(filtrations):
    """Colon-by-eigenvalue-product against the literal accumulate route:
    level ideal plus the stable kernels of all kept eigenvalues."""
    r = filtrations("cusp", 1)
    pvars = r.f.vars + ("s",)
    csig = AlgebraSignature.polynomial(pvars)
    rest = [csig.from_poly(q) for q in r.restriction]
    order = MonomialOrder.degrevlex(len(pvars))
    kernels = {}
    for lam, mult in r.kernel_index.items():
        _, ker = kernel_nilpotent(rest, lam, order, mult)
        kernels[lam] = ker
    sorder = MonomialOrder.block(
        len(pvars), [([len(pvars) - 1], "lex"), (list(range(len(r.f.vars))), "degrevlex")]
    )
    for alpha in r.candidates:
        gens = list(rest)
        for lam, ker in kernels.items():
            if lam <= -alpha:
                gens.extend(ker)
        gb = left_groebner(gens, sorder)
        accumulated = [e.to_poly(pvars).text() for e in gb]
        assert accumulated == [h.text() for h in r.pieces[alpha].h_basis]


def test_truncation_consistent_across_levels(filtrations):
    """Computing at level 2 and truncating to s-degree <= 1 reproduces
    the level-1 pieces exactly, including normalization."""
    f = corpus_poly("cusp")
    r1 = filtrations("cusp", 1)
    r2 = filtrations("cusp", 2)
    assert r1.candidates == r2.candidates
    for alpha in r1.candidates:
        trunc, added = vectors_at_level(r2.pieces[alpha].h_basis, f, 2, 1)
        assert not added
        assert [tuple(c.text() for c in v) for v in trunc] == [
            tuple(c.text() for c in v) for v in r1.pieces[alpha].vectors
        ]


def test_deep_roots_shift_into_candidates(filtrations):
    # cusp at level 1 sees the deep root -7/6; one level up its shift
    # -1/6 is a candidate with the same piece data showing up
    r1 = filtrations("cusp", 1)
    assert r1.deep_roots == (F(-7, 6),)
    assert F(1, 6) in r1.candidates


_PVARS = ("x", "y", "s")


@given(
    st.lists(
        st.tuples(
            st.integers(0, 2),
            st.integers(0, 2),
            st.integers(0, 6),
            st.fractions(min_value=-3, max_value=3, max_denominator=6),
        ),
        max_size=8,
    )
)
@settings(max_examples=80, deadline=None)
def test_factorial_basis_round_trip(terms):
    p = Poly(
        _PVARS,
        {(a, b, c): F(q) for a, b, c, q in terms if q},
    )
    # dense coefficient vector indexed by s-degree
    dense = [Poly.zero(("x", "y")) for _ in range(7)]
    for j, c in p.coefficients_in("s").items():
        dense[j] = c.restrict(("x", "y"))
    assert from_factorial_basis(to_factorial_basis(dense)) == dense
    assert to_factorial_basis(from_factorial_basis(dense)) == dense


def test_factorial_basis_known_values():
    one = Poly.constant(1, ("x",))
    zero = Poly.zero(("x",))
    # Q_1(-s) = -s, so the power-basis vector (0, 1) becomes (0, -1)
    assert to_factorial_basis([zero, one]) == [zero, -one]
    # Q_2(-s) = s^2 - s, so s^2 = Q_2(-s) + s = Q_2(-s) - Q_1(-s)
    assert to_factorial_basis([zero, zero, one]) == [zero, -one, one]
    # constants are untouched
    assert to_factorial_basis([one]) == [one]


def test_jobs_deterministic():
    f = corpus_poly("cusp")
    a = gpv(f, 1, jobs=1)
    b = gpv(f, 1, jobs=3)
    assert a.candidates == b.candidates
    for alpha in a.candidates:
        va = [tuple(c.text() for c in v) for v in a.pieces[alpha].vectors]
        vb = [tuple(c.text() for c in v) for v in b.pieces[alpha].vectors]
        assert va == vb
        assert [h.text() for h in a.pieces[alpha].h_basis] == [
            h.text() for h in b.pieces[alpha].h_basis
        ]


def test_restriction_ideal_direct():
    # one stage by hand for f = x in one variable, level 0: the ideal
    # from x*Dx - s and x eliminates Dx to x, s... the reduced s-top
    # basis is {s, x}
    f = parse_poly("x", ("x",))
    ann = ann_fs(f)
    rest = restriction_ideal(shift_annihilator(ann, 0))
    assert sorted(q.text() for q in rest) == ["s", "x"]

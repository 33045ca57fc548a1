"""Hodge ideals, multiplier ideals and generating levels.

Each filtration piece pairs with the rising-factorial weights to give
one ideal per truncation level k: the generators are

    sum_j Q_j(alpha) f^(k-j) v_j,   Q_0 = 1, Q_j(a) = a(a+1)...(a+j-1)

over the canonical vectors of the level-k truncation of the piece at
alpha.  The map is R-linear in the vector, so any generating set of the
truncated module yields the same ideal.

alpha can stay a formal parameter: the weights become polynomials in an
extra commuting variable and the generators are emitted raw, without a
basis computation over a rational-function field.  A rational alpha is
specialized up front and the result canonicalized by a reduced
commutative basis.

Multiplier ideals come from the level-0 run: on the half-open interval
ending at a candidate, the multiplier ideal is that candidate's piece
met with R.  Jumping numbers are the candidates in (0, 1) where the
ideal actually drops, which is verified rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    AlphaRangeError,
    AmbientMismatchError,
    ConstantInputError,
    InternalError,
    LevelInsufficientError,
    NotReducedError,
    ValidationError,
)
from .polys import MonomialOrder, Poly, squarefree_test
from .vfiltration import VFiltrationResult, gpv, lookup_piece, vectors_at_level
from .weyl import AlgebraSignature

PARAMETER = "alpha"


def rising_factorial(alpha: Fraction, j: int) -> Fraction:
    """Q_j(alpha) = alpha (alpha+1) ... (alpha+j-1); empty product is 1."""
    v = Fraction(1)
    for i in range(j):
        v *= alpha + i
    return v


def rising_factorial_poly(j: int, vars: Sequence[str]) -> Poly:
    """Q_j as a polynomial in the formal parameter variable."""
    a = Poly.variable(PARAMETER, vars)
    v = Poly.constant(Fraction(1), tuple(vars))
    for i in range(j):
        v = v * (a + i)
    return v


def _basis(gens: Sequence[Poly], strategy: str = "normal") -> tuple[Poly, ...]:
    """Reduced commutative degrevlex basis, text-sorted."""
    from .groebner import left_groebner

    nonzero = [g for g in gens if g]
    if not nonzero:
        return ()
    vars = nonzero[0].vars
    sig = AlgebraSignature.polynomial(vars)
    gb = left_groebner(
        [sig.from_poly(g) for g in nonzero],
        MonomialOrder.degrevlex(len(vars)),
        strategy=strategy,
    )
    out = [e.to_poly(vars) for e in gb]
    out.sort(key=lambda q: q.text())
    return tuple(out)


def _members(basis: Sequence[Poly], others: Sequence[Poly]) -> bool:
    from .groebner import left_groebner

    if not others:
        return True
    if not basis:
        return all(not q for q in others)
    vars = basis[0].vars
    sig = AlgebraSignature.polynomial(vars)
    gb = left_groebner(
        [sig.from_poly(g) for g in basis], MonomialOrder.degrevlex(len(vars))
    )
    return all(not gb.reduce(sig.from_poly(q)) for q in others)


def ideal_equal(A: Sequence[Poly], B: Sequence[Poly]) -> bool:
    """Two-way membership between generator lists in the same ambient."""
    A = [g for g in A if g]
    B = [g for g in B if g]
    if not A or not B:
        return not A and not B
    if A[0].vars != B[0].vars:
        raise AmbientMismatchError(
            f"cannot compare ideals over {A[0].vars} and {B[0].vars}"
        )
    return _members(A, B) and _members(B, A)


@dataclass(frozen=True)
class HodgeIdeal:
    """One ideal I_k(alpha D).

    For symbolic output the generators carry the extra parameter
    variable and are the raw pairing combinations; for rational alpha
    they form a reduced commutative basis.
    """

    level: int
    alpha: Fraction
    symbolic: bool
    generators: tuple[Poly, ...]


def _check_alpha(alpha) -> Fraction:
    try:
        a = Fraction(alpha)
    except (TypeError, ValueError):
        raise AlphaRangeError(f"alpha must be rational, got {alpha!r}") from None
    if not (0 < a <= 1):
        raise AlphaRangeError(f"alpha must lie in (0, 1], got {a}")
    return a


def hodge_ideals(
    vres: VFiltrationResult,
    alpha,
    kmax: int | None = None,
    *,
    symbolic: bool = False,
    check_reduced: bool = True,
    strategy: str = "normal",
) -> list[HodgeIdeal]:
    """I_k(alpha D) for k = 0..kmax from a level-p filtration run.

    alpha picks the piece (smallest candidate >= alpha); with symbolic
    output the weights Q_j stay polynomials in the parameter while the
    piece is still anchored at alpha.  The pairing only carries its
    Hodge-theoretic meaning for reduced f; the check can be skipped to
    inspect the raw combinations anyway.
    """
    a = _check_alpha(alpha)
    if check_reduced and not squarefree_test(vres.f):
        raise NotReducedError("Hodge ideals are defined for reduced f only")
    p = vres.p
    if kmax is None:
        kmax = p
    if not (0 <= kmax <= p):
        raise ValidationError(f"kmax must lie in 0..{p}, got {kmax}")
    f = vres.f
    piece = lookup_piece(vres, a)
    evars = f.vars + (PARAMETER,)
    fe = f.extend(evars) if symbolic else f
    weights = (
        [rising_factorial_poly(j, evars) for j in range(kmax + 1)]
        if symbolic
        else [rising_factorial(a, j) for j in range(kmax + 1)]
    )
    out = []
    for k in range(kmax + 1):
        vecs, _ = vectors_at_level(piece.h_basis, f, p, k)
        gens = []
        for v in vecs:
            g = Poly.zero(evars if symbolic else f.vars)
            for j in range(k + 1):
                vj = v[j].extend(evars) if symbolic else v[j]
                g = g + vj * fe ** (k - j) * weights[j]
            if g:
                gens.append(g)
        if symbolic:
            gens.sort(key=lambda q: q.text())
            out.append(HodgeIdeal(k, a, True, tuple(gens)))
        else:
            out.append(HodgeIdeal(k, a, False, _basis(gens, strategy)))
    return out


def extend_by_derivations(
    prev: HodgeIdeal, f: Poly, alpha, k: int, *, strategy: str = "normal"
) -> HodgeIdeal:
    """Push I_(k-1) one level up: f*h and f dh/dx_i - (alpha+k-1) h df/dx_i.

    The scale is alpha plus the source level: the generators come from
    applying each coordinate derivation to h f^(-alpha-(k-1)).  Valid as
    I_k only above the generating level of the filtration.
    """
    if k < 1:
        raise ValidationError(f"extension needs a target level >= 1, got {k}")
    if prev.level != k - 1:
        raise ValidationError(
            f"extending level {prev.level} cannot produce level {k}"
        )
    a = _check_alpha(alpha)
    if prev.symbolic:
        evars = f.vars + (PARAMETER,)
        fe = f.extend(evars)
        scale = rising_factorial_poly(1, evars) + (k - 1)
    else:
        fe = f
        scale = a + k - 1
    gens = [fe * h for h in prev.generators]
    for h in prev.generators:
        for v in f.vars:
            gens.append(fe * h.partial(v) - h * fe.partial(v) * scale)
    gens = [g for g in gens if g]
    if prev.symbolic:
        gens.sort(key=lambda q: q.text())
        return HodgeIdeal(k, a, True, tuple(gens))
    return HodgeIdeal(k, a, False, _basis(gens, strategy))


def generating_level(vres: VFiltrationResult, alpha, p: int | None = None) -> int:
    """Smallest l with every I_k, l < k <= p, reachable by extension.

    Raises when even the step into level p fails, since certifying
    l = p would need level p+1 data.
    """
    a = _check_alpha(alpha)
    if p is None:
        p = vres.p
    if not (0 <= p <= vres.p):
        raise ValidationError(f"p must lie in 0..{vres.p}, got {p}")
    if p == 0:
        raise LevelInsufficientError(
            "generating level needs at least one extension step; rerun with p >= 1"
        )
    rows = hodge_ideals(vres, a, p)
    level = 0
    for k in range(1, p + 1):
        ext = extend_by_derivations(rows[k - 1], vres.f, a, k)
        if not ideal_equal(ext.generators, rows[k].generators):
            level = k
    if level == p:
        raise LevelInsufficientError(
            f"extension fails at level {p}; rerun with a higher level to certify"
        )
    return level


@dataclass(frozen=True)
class MultiplierFamily:
    """Multiplier ideals of f on (0, 1) plus the piece at 1.

    ideals[i] is the multiplier ideal on the half-open interval ending
    at breaks[i]; breaks are the level-0 candidates and end at 1.  The
    piece at 1 itself is not J(1 D) and is reported separately.
    """

    f: Poly
    breaks: tuple[Fraction, ...]
    ideals: tuple[tuple[Poly, ...], ...]
    jumps: tuple[Fraction, ...]
    lct: Fraction
    v_one: tuple[Poly, ...]
    vres: VFiltrationResult

    def ideal_at(self, alpha) -> tuple[Poly, ...]:
        """J(alpha D) for alpha in [0, 1)."""
        from bisect import bisect_right

        a = Fraction(alpha)
        if not (0 <= a < 1):
            raise AlphaRangeError(f"multiplier ideals cover [0, 1), got {a}")
        return self.ideals[bisect_right(self.breaks, a)]


def multiplier_ideals(
    f: Poly,
    *,
    method: str = "bm",
    strategy: str = "normal",
    jobs: int = 1,
    cache=None,
) -> MultiplierFamily:
    """Jumping numbers in (0, 1) and the ideal on each interval.

    Runs the level-0 filtration with the reducedness check off; the
    construction is valid for any nonconstant f.
    """
    if f.is_constant():
        raise ConstantInputError("f must be nonconstant")
    vres = gpv(
        f, 0, method=method, check_reduced=False, strategy=strategy,
        jobs=jobs, cache=cache,
    )
    breaks = vres.candidates
    ideals = []
    for c in breaks:
        piece = vres.pieces[c]
        ideals.append(_basis([v[0] for v in piece.vectors], strategy))
    unit = (Poly.constant(Fraction(1), f.vars),)
    if not ideal_equal(ideals[0], unit):
        raise InternalError(
            "multiplier ideal below the first candidate is not the unit ideal"
        )
    for i in range(len(breaks) - 1):
        if not _members(ideals[i], ideals[i + 1]):
            raise InternalError(
                f"multiplier ideals fail to decrease across {breaks[i]}"
            )
    jumps = tuple(
        breaks[i]
        for i in range(len(breaks) - 1)
        if not _members(ideals[i + 1], ideals[i])
    )
    lct = jumps[0] if jumps else Fraction(1)
    return MultiplierFamily(
        f=f,
        breaks=breaks,
        ideals=tuple(ideals),
        jumps=jumps,
        lct=lct,
        v_one=ideals[-1],
        vres=vres,
    )

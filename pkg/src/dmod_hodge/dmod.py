"""Annihilators of f^s, Bernstein-Sato polynomials, minimal exponents.

Two independent routes produce the annihilator ideal Ann(f^s) in D[s]:

* the default one adjoins a single operator Dt with Dt*s = s*Dt - Dt
  and eliminates it from < s + f*Dt, Dx_i + f_i*Dt >;
* the alternative works in D<t,Dt>[u,v] on the graph of f, eliminates
  u, v, and converts the weighted-homogeneous survivors into D[s] via
  t^c Dt^c -> prod (-s-1-i).

Both land in the same left ideal; the test suite cross-checks them.

The Bernstein-Sato polynomial is the monic generator of
(Ann(f^s) + <f>) intersected with k[s], obtained by eliminating all
x and Dx.  The same elimination applied to the level-p shifted ideal
yields the minimal polynomial of s on the level-p module, which drives
the filtration candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .errors import (
    ConstantInputError,
    EliminationEmptyError,
    InternalError,
    NonnegativeRootError,
    ValidationError,
)
from .polys import MonomialOrder, Poly, UniPoly, rational_roots
from .weyl import AlgebraSignature, WeylElement

RESERVED_NAMES = frozenset({"s", "t", "u", "v", "Dt", "alpha"})


def validate_variables(vars: Sequence[str]) -> tuple[str, ...]:
    """Reject names that collide with the working generators."""
    vars = tuple(vars)
    if not vars:
        raise ValidationError("need at least one variable")
    if len(set(vars)) != len(vars):
        raise ValidationError(f"duplicate variable names in {vars}")
    for v in vars:
        if not v.isidentifier():
            raise ValidationError(f"bad variable name {v!r}")
        if v in RESERVED_NAMES:
            raise ValidationError(f"variable name {v!r} is reserved")
        if v.startswith("D") and len(v) > 1:
            raise ValidationError(
                f"variable name {v!r} collides with derivation naming"
            )
    for v in vars:
        if "D" + v in vars:
            raise ValidationError(f"variables {v!r} and {'D' + v!r} collide")
    return vars


def uni_from_poly(p: Poly, var: str = "s") -> UniPoly:
    coeffs = [Fraction(0)] * (p.degree_in(var) + 1)
    i = p.vars.index(var)
    for e, c in p.terms.items():
        if any(e[k] for k in range(len(e)) if k != i):
            raise InternalError("polynomial is not univariate in " + var)
        coeffs[e[i]] = c
    return UniPoly(coeffs, var)


@dataclass(frozen=True)
class AnnFs:
    """Generators of Ann(f^s) inside D[s] (PBW order x.., Dx.., s)."""

    f: Poly
    sig: AlgebraSignature
    generators: tuple[WeylElement, ...]
    method: str


def ann_fs(f: Poly, method: str = "bm") -> AnnFs:
    if f.is_constant():
        raise ConstantInputError("f must be nonconstant")
    xvars = validate_variables(f.vars)
    if method == "bm":
        gens = _ann_bm(f, xvars)
    elif method == "malgrange":
        gens = _ann_malgrange(f, xvars)
    else:
        raise ValidationError(f"unknown annihilator method {method!r}")
    sig = AlgebraSignature.weyl_s(xvars)
    return AnnFs(f, sig, tuple(gens), method)


def _ann_bm(f: Poly, xvars) -> list[WeylElement]:
    from .groebner import eliminate_variables

    sig = AlgebraSignature.bm(xvars)
    fe = sig.from_poly(f)
    Dt = sig.gen("Dt")
    gens = [sig.gen("s") + fe * Dt]
    for x in xvars:
        gens.append(sig.gen("D" + x) + sig.from_poly(f.partial(x)) * Dt)
    res = eliminate_variables(gens, ["Dt"])
    target = AlgebraSignature.weyl_s(xvars)
    return [e.convert(target) for e in res.survivors]


def _ann_malgrange(f: Poly, xvars) -> list[WeylElement]:
    from .groebner import eliminate_variables

    sig = AlgebraSignature.malgrange(xvars)
    fe = sig.from_poly(f)
    t, Dt, u, v = (sig.gen(n) for n in ("t", "Dt", "u", "v"))
    gens = [u * fe - t, u * v - 1]
    for x in xvars:
        gens.append(sig.gen("D" + x) + u * sig.from_poly(f.partial(x)) * Dt)
    res = eliminate_variables(gens, ["u", "v"])
    it, iDt = sig.index("t"), sig.index("Dt")
    target = AlgebraSignature.weyl_s(xvars)
    s = target.gen("s")
    out = []
    for g in res.survivors:
        weights = {e[iDt] - e[it] for e in g.terms}
        if len(weights) != 1:
            raise InternalError("graph-embedding survivor is not weight-homogeneous")
        d = weights.pop()
        if d > 0:
            g = sig.gen("t") ** d * g
        elif d < 0:
            g = sig.gen("Dt") ** (-d) * g
        # now every monomial carries t^c Dt^c; replace it by the
        # falling product (-s-1)(-s-2)...(-s-c)
        acc = target.zero()
        for e, c in g.terms.items():
            cc = e[it]
            if cc != e[iDt]:
                raise InternalError("weight-zero element with unbalanced t, Dt powers")
            d2 = list(e)
            d2[it] = 0
            d2[iDt] = 0
            rest = WeylElement(sig, {tuple(d2): c}).convert(target)
            for i in range(cc):
                rest = rest * (-s - 1 - i)
            acc = acc + rest
        if acc:
            out.append(acc)
    return out


def s_minimal_polynomial_elim(gens: Sequence[WeylElement]) -> UniPoly:
    """Monic generator of (left ideal) intersect k[s], via elimination.

    Block-order route; slower than s_minimal_polynomial but independent
    of it, which makes it a useful cross-check.
    Raises EliminationEmptyError when the intersection is zero.
    """
    from .groebner import left_groebner

    sig = gens[0].sig
    n = len(sig.vars)
    i_s = sig.index("s")
    others = [i for i in range(n) if i != i_s]
    order = MonomialOrder.block(n, [(others, "degrevlex"), ([i_s], "lex")])
    gb = left_groebner(gens, order)
    sonly = [e for e in gb if e.support_indices() <= {i_s}]
    if not sonly:
        raise EliminationEmptyError("ideal meets k[s] trivially")
    if len(sonly) > 1:
        raise InternalError("reduced basis has two pure s elements")
    return uni_from_poly(sonly[0].to_poly(("s",)))


def s_minimal_polynomial(
    gens: Sequence[WeylElement],
    *,
    basis=None,
    max_degree: int = 128,
) -> UniPoly:
    """Monic generator of (left ideal) intersect k[s].

    Reduces 1, s, s^2, ... to normal form against a degrevlex basis and
    returns the first linear dependence among the normal forms; since
    powers are tried in increasing degree, that dependence is the monic
    generator. Pass `basis` to reuse an already computed degrevlex
    GBasis of the same ideal. Falls back to the block-order elimination
    if no dependence appears within `max_degree` powers, so an empty
    intersection still raises EliminationEmptyError.
    """
    from .groebner import left_groebner

    sig = gens[0].sig
    if basis is None:
        basis = left_groebner(gens, MonomialOrder.degrevlex(len(sig.vars)))
    s = sig.gen("s")
    neg = basis.order.negkey
    # pivot rows of an incremental Gaussian elimination, keyed by their
    # leading monomial; each row remembers its expansion in s-powers
    pivots: dict = {}
    nf = basis.reduce(sig.one())
    for k in range(max_degree + 1):
        if k:
            nf = basis.reduce(nf * s)
        vec = dict(nf.terms)
        combo = [Fraction(0)] * k + [Fraction(1)]
        while vec:
            lead = min(vec, key=neg)
            hit = pivots.get(lead)
            if hit is None:
                break
            pvec, pcombo = hit
            c = vec.pop(lead)
            for m, v in pvec.items():
                if m == lead:
                    continue
                nv = vec.get(m, 0) - c * v
                if nv:
                    vec[m] = nv
                else:
                    vec.pop(m, None)
            for j, v in enumerate(pcombo):
                if v:
                    combo[j] -= c * v
        if not vec:
            return UniPoly(tuple(combo)).monic()
        lead = min(vec, key=neg)
        c = vec[lead]
        pivots[lead] = (
            {m: v / c for m, v in vec.items()},
            tuple(v / c for v in combo),
        )
    return s_minimal_polynomial_elim(list(basis.elements))


@dataclass(frozen=True)
class BernsteinSato:
    b: UniPoly
    roots: tuple[tuple[Fraction, int], ...]
    ann: AnnFs


def bernstein_sato(f: Poly, method: str = "bm", ann: AnnFs | None = None) -> BernsteinSato:
    if ann is None:
        ann = ann_fs(f, method)
    gens = list(ann.generators) + [ann.sig.from_poly(f.extend(f.vars))]
    b = s_minimal_polynomial(gens)
    roots = tuple(rational_roots(b))
    for r, _ in roots:
        if r >= 0:
            raise NonnegativeRootError(f"Bernstein-Sato root {r} is not negative")
    return BernsteinSato(b, roots, ann)


def minimal_exponent(bs: BernsteinSato) -> Fraction | None:
    """Negative of the largest root of b(s)/(s+1); None means infinity."""
    reduced = bs.b.divexact(UniPoly.linear_root(Fraction(-1)))
    if reduced.degree() <= 0:
        return None
    roots = rational_roots(reduced)
    return -max(r for r, _ in roots)


def default_level_hint(alpha: Fraction, alpha_tilde: Fraction | None, nvars: int) -> int:
    """Smallest filtration level known to determine I_k(alpha D) for
    all k up to it; 0 when the minimal exponent is infinite (smooth)."""
    if alpha_tilde is None:
        return 0
    return max(0, nvars - ceil(alpha_tilde + alpha))


@dataclass(frozen=True)
class FsValue:
    """N / f^m times f^s, with N a polynomial in the x's and s."""

    num: Poly
    m: int


def apply_to_fs(op: WeylElement, f: Poly, value: FsValue) -> FsValue:
    """Apply an operator in D[s] to a symbolic multiple of f^s.

    An independent oracle for annihilator membership: the operator
    annihilates the value iff the resulting numerator is zero.
    """
    sig = op.sig
    xvars = f.vars
    pvars = xvars + ("s",)
    fx = f.extend(pvars)
    n = len(xvars)
    parts = {x: f.partial(x).extend(pvars) for x in xvars}
    s_poly = Poly.variable("s", pvars)
    results = []
    for e, c in op.terms.items():
        num, m = value.num, value.m
        # rightmost factors act first: s powers, then derivations
        # (ascending index is fine, they commute), then x multiplication
        k_s = e[sig.index("s")]
        for _ in range(k_s):
            num = num * s_poly
        for i, x in enumerate(xvars):
            for _ in range(e[n + i]):
                num = fx * num.partial(x) - m * num * parts[x] + s_poly * num * parts[x]
                m += 1
        mono = [0] * len(pvars)
        for i in range(n):
            mono[i] = e[i]
        num = num * Poly(pvars, {tuple(mono): Fraction(1)})
        results.append((num * c, m))
    top = max(m for _, m in results) if results else value.m
    total = Poly.zero(pvars)
    for num, m in results:
        total = total + num * fx ** (top - m)
    return FsValue(total, top)


def annihilates_shifted_power(op: WeylElement, f: Poly, p: int) -> bool:
    """True when op kills f^(s-p), checked by direct symbolic action."""
    pvars = f.vars + ("s",)
    start = FsValue(Poly.constant(1, pvars), p)
    return not apply_to_fs(op, f, start).num

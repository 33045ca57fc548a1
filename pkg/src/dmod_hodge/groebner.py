"""Left Groebner bases in PBW algebras and their free modules.

The engine is fraction-free: inputs are scaled to primitive integer
coefficients and every reduction step is a pseudo-reduction

    p  <-  (lc_g / d) * p - (lc_p / d) * (x^m o g),      d = gcd(lc_p, lc_g)

which keeps coefficients integral (corrections in the supported
signatures are integers).  Content is stripped periodically.  Normal
forms track the accumulated rational scale so exact reductions can be
recovered; membership tests only need the remainder.

Pair management is Gebauer-Moeller: the chain criterion and the
minimal-lcm filter are lattice facts about leading exponents and stay
valid in any PBW algebra.  The product (coprime-lead) criterion is NOT
valid noncommutatively - x and Dx have coprime leads yet generate 1 -
so it only fires when every generator appearing in either element
commutes with the whole combined support.  For submodules of free
modules it is never used.

Output bases are reduced: minimal leads, tails in normal form, monic,
sorted by ascending leading monomial.  A reduced left Groebner basis is
unique for the given ideal and order, so results are independent of the
selection strategy and of how work was scheduled.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable, Sequence

from .errors import InternalError, RankMismatchError, SignatureMismatchError
from .polys import (
    Monomial,
    MonomialOrder,
    mono_degree,
    mono_div,
    mono_lcm,
    mono_mul,
)
from .weyl import AlgebraSignature, VectorElement, WeylElement

logger = logging.getLogger("dmod_hodge")


class BudgetExceededError(Exception):
    """Internal signal: a guarded Groebner run blew its resource budget.

    Raised only when explicit limits are passed to left_groebner; used
    by callers that race several monomial orders and fall back rather
    than letting one bad order run away.  Never escapes the package.
    """


_SHIFT = 16
_FIELD_MAX = 1 << 15


def _pack(e: Monomial) -> int:
    acc = 0
    for i, x in enumerate(e):
        acc |= x << (_SHIFT * i)
    return acc


class _ScalarCtx:
    """Keys are plain exponent tuples."""

    kind = "scalar"

    def __init__(self, sig: AlgebraSignature, order: MonomialOrder):
        self.sig = sig
        self.order = order
        self.product_criterion = True
        # one spare high bit per field flags a borrow, so divisibility
        # of packed exponents is a subtraction and a mask
        self.guard = sum(1 << (_SHIFT * i + _SHIFT - 1) for i in range(order.nvars))
        self._pk: dict = {}

    def pack(self, key) -> int:
        v = self._pk.get(key)
        if v is None:
            if any(x >= _FIELD_MAX for x in key):
                raise InternalError("exponent too large for packed comparisons")
            v = _pack(key)
            self._pk[key] = v
        return v

    def negkey(self, key):
        return self.order.negkey(key)

    def samecomp(self, k1, k2) -> bool:
        return True

    def divide(self, lead, key):
        return mono_div(key, lead)

    def pair_lcm(self, l1, l2):
        return mono_lcm(l1, l2)

    def tau_deg(self, tau) -> int:
        return mono_degree(tau)

    def coprime_leads(self, l1, l2) -> bool:
        return all(min(a, b) == 0 for a, b in zip(l1, l2))

    def premul(self, m: Monomial, terms: dict) -> dict:
        if not any(m):
            return terms
        if self.sig.commutative:
            return {mono_mul(m, e): c for e, c in terms.items()}
        tm = self.sig.term_mul
        out: dict[Monomial, int] = {}
        for e, c in terms.items():
            for e2, k in tm(m, e).items():
                v = out.get(e2, 0) + c * k
                if v:
                    out[e2] = v
                else:
                    del out[e2]
        return out

    def support(self, terms) -> frozenset[int]:
        out = set()
        for e in terms:
            for i, k in enumerate(e):
                if k:
                    out.add(i)
        return frozenset(out)

    def commuting_union(self, s1: frozenset[int], s2: frozenset[int]) -> bool:
        if self.sig.commutative:
            return True
        u = sorted(s1 | s2)
        for a in range(len(u)):
            for b in range(a + 1, len(u)):
                if not self.sig.commute(u[a], u[b]):
                    return False
        return True


class _ModuleCtx:
    """Keys are (component, exponent tuple); position-over-term order.

    `priorities` lists components from most to least dominant; leading
    keys in a dominant component beat everything in later ones, which
    is what component elimination needs.
    """

    kind = "module"

    def __init__(self, sig, order, priorities: Sequence[int], ncomp: int):
        if sorted(priorities) != list(range(ncomp)):
            raise RankMismatchError(
                f"priorities {list(priorities)} must permute range({ncomp})"
            )
        self.sig = sig
        self.order = order
        self.rank = {c: r for r, c in enumerate(priorities)}
        self.product_criterion = False
        self.guard = sum(1 << (_SHIFT * i + _SHIFT - 1) for i in range(order.nvars))
        self._pk: dict = {}
        self._nk: dict = {}

    def pack(self, mono) -> int:
        v = self._pk.get(mono)
        if v is None:
            if any(x >= _FIELD_MAX for x in mono):
                raise InternalError("exponent too large for packed comparisons")
            v = _pack(mono)
            self._pk[mono] = v
        return v

    def negkey(self, key):
        k = self._nk.get(key)
        if k is None:
            k = (self.rank[key[0]], self.order.negkey(key[1]))
            self._nk[key] = k
        return k

    def samecomp(self, k1, k2) -> bool:
        return k1[0] == k2[0]

    def divide(self, lead, key):
        if lead[0] != key[0]:
            return None
        return mono_div(key[1], lead[1])

    def pair_lcm(self, l1, l2):
        return (l1[0], mono_lcm(l1[1], l2[1]))

    def tau_deg(self, tau) -> int:
        return mono_degree(tau[1])

    def coprime_leads(self, l1, l2) -> bool:
        return False

    def premul(self, m: Monomial, terms: dict) -> dict:
        if not any(m):
            return terms
        if self.sig.commutative:
            return {(k[0], mono_mul(m, k[1])): c for k, c in terms.items()}
        tm = self.sig.term_mul
        out: dict = {}
        for (comp, e), c in terms.items():
            for e2, k in tm(m, e).items():
                key = (comp, e2)
                v = out.get(key, 0) + c * k
                if v:
                    out[key] = v
                else:
                    del out[key]
        return out

    def support(self, terms) -> frozenset[int]:
        out = set()
        for _, e in terms:
            for i, k in enumerate(e):
                if k:
                    out.add(i)
        return frozenset(out)

    def commuting_union(self, s1, s2) -> bool:
        return False


class _Entry:
    __slots__ = ("terms", "lead", "lc", "supp", "seq", "cache", "pk", "comp")

    def __init__(self, terms: dict, ctx, seq: int):
        self.terms = terms
        self.lead = min(terms, key=ctx.negkey)
        self.lc = terms[self.lead]
        self.supp = ctx.support(terms)
        self.seq = seq
        self.cache: dict = {}
        if ctx.kind == "scalar":
            self.pk = ctx.pack(self.lead)
            self.comp = None
        else:
            self.pk = ctx.pack(self.lead[1])
            self.comp = self.lead[0]

    def premul(self, m, ctx) -> dict:
        t = self.cache.get(m)
        if t is None:
            t = ctx.premul(m, self.terms)
            self.cache[m] = t
        return t


def _strip(coeffs: dict, rem: dict, scale: Fraction) -> Fraction:
    g = 0
    for v in coeffs.values():
        if v:
            g = math.gcd(g, v)
            if g == 1:
                return scale
    for v in rem.values():
        g = math.gcd(g, v)
        if g == 1:
            return scale
    if g > 1:
        for k in coeffs:
            if coeffs[k]:
                coeffs[k] //= g
        for k in rem:
            rem[k] //= g
        scale = scale / g
    return scale


def _normal_form(terms: dict, reducers: Sequence[_Entry], ctx, limit=None):
    """Fully reduce integer-coefficient `terms`; returns (rem, scale).

    rem is primitive with positive leading coefficient; the exact
    normal form of the input is rem / scale.  `limit` caps the number
    of reduction steps; beyond it the input is declared stuck and
    BudgetExceededError is raised.
    """
    coeffs = dict(terms)
    rem: dict = {}
    heap = [(ctx.negkey(k), k) for k in coeffs]
    heapify(heap)
    scale = Fraction(1)
    scale = _strip(coeffs, rem, scale)
    growth = 0
    steps = 0
    guard = ctx.guard
    pack = ctx.pack
    scalar = ctx.kind == "scalar"
    while heap:
        _, key = heappop(heap)
        c = coeffs.get(key)
        if not c:
            continue
        # packed-exponent scan: lead divides key iff subtracting the
        # packed leads borrows nowhere, i.e. no guard bit flips
        ent = None
        if scalar:
            kp = pack(key)
            for g in reducers:
                d = kp - g.pk
                if d >= 0 and not (d & guard):
                    ent = g
                    break
        else:
            comp = key[0]
            kp = pack(key[1])
            for g in reducers:
                if g.comp == comp:
                    d = kp - g.pk
                    if d >= 0 and not (d & guard):
                        ent = g
                        break
        if ent is None:
            rem[key] = c
            coeffs[key] = 0
            continue
        steps += 1
        if limit is not None and steps > limit:
            raise BudgetExceededError("normal form exceeded its step budget")
        m = ctx.divide(ent.lead, key)
        prem = ent.premul(m, ctx)
        d = math.gcd(c, ent.lc)
        a = ent.lc // d
        b = c // d
        if a != 1:
            for k2 in coeffs:
                if coeffs[k2]:
                    coeffs[k2] *= a
            for k2 in rem:
                rem[k2] *= a
            scale = scale * a
            growth += a.bit_length()
        for k2, v in prem.items():
            cur = coeffs.get(k2)
            if cur is None:
                nv = -b * v
                if nv:
                    coeffs[k2] = nv
                    heappush(heap, (ctx.negkey(k2), k2))
            else:
                coeffs[k2] = cur - b * v
        coeffs[key] = 0
        # strip accumulated content only once the rescales above have
        # really inflated the integers; stripping is a full-dict scan
        if growth >= 24:
            for k2 in [k for k, v in coeffs.items() if not v]:
                del coeffs[k2]
            scale = _strip(coeffs, rem, scale)
            growth = 0
    rem = {k: v for k, v in rem.items() if v}
    if rem:
        g = 0
        for v in rem.values():
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            rem = {k: v // g for k, v in rem.items()}
            scale = scale / g
        lead = min(rem, key=ctx.negkey)
        if rem[lead] < 0:
            rem = {k: -v for k, v in rem.items()}
            scale = -scale
    return rem, scale


def _spoly(f: _Entry, g: _Entry, tau, ctx) -> dict:
    mf = ctx.divide(f.lead, tau)
    mg = ctx.divide(g.lead, tau)
    pf = f.premul(mf, ctx)
    pg = g.premul(mg, ctx)
    d = math.gcd(f.lc, g.lc)
    a = g.lc // d
    b = f.lc // d
    out = {k: a * v for k, v in pf.items()}
    for k, v in pg.items():
        cur = out.get(k, 0) - b * v
        if cur:
            out[k] = cur
        else:
            out.pop(k, None)
    return out


class _Engine:
    def __init__(
        self,
        ctx,
        strategy: str,
        max_pairs=None,
        max_entry_bits=None,
        max_nf_steps=None,
    ):
        self.ctx = ctx
        self.strategy = strategy
        self.max_pairs = max_pairs
        self.max_entry_bits = max_entry_bits
        self.max_nf_steps = max_nf_steps
        self.G: list[_Entry] = []
        self.pairs: dict[int, tuple[_Entry, _Entry, object]] = {}
        self.heap: list = []
        self._pid = 0
        self._seq = 0

    def _selkey(self, tau, e1: _Entry, e2: _Entry):
        if self.strategy == "normal":
            return (self.ctx.tau_deg(tau), self.ctx.negkey(tau), e1.seq, e2.seq)
        if self.strategy == "degree":
            return (self.ctx.tau_deg(tau), e1.seq, e2.seq)
        if self.strategy == "first":
            return (e2.seq, e1.seq)
        raise InternalError(f"unknown selection strategy {self.strategy!r}")

    def _update(self, f: _Entry):
        """Gebauer-Moeller pair update with the new element f."""
        ctx = self.ctx
        lmf = f.lead
        # chain criterion: drop old pairs whose lcm is a proper multiple
        # of lm(f) relative to both members
        for pid in list(self.pairs):
            g1, g2, tau = self.pairs[pid]
            if not ctx.samecomp(tau, lmf):
                continue
            if ctx.divide(lmf, tau) is not None:
                if ctx.pair_lcm(g1.lead, lmf) != tau and ctx.pair_lcm(g2.lead, lmf) != tau:
                    del self.pairs[pid]
        # group candidate pairs by their lcm and keep only minimal lcms
        cands: dict = {}
        for g in self.G:
            if not ctx.samecomp(g.lead, lmf):
                continue
            tau = ctx.pair_lcm(g.lead, lmf)
            cands.setdefault(tau, []).append(g)
        kept: list = []
        for tau in sorted(cands, key=lambda t: (ctx.tau_deg(t), ctx.negkey(t))):
            if any(ctx.divide(t2, tau) is not None for t2 in kept):
                continue
            group = cands[tau]
            if ctx.product_criterion:
                witness = None
                for g in group:
                    if ctx.coprime_leads(g.lead, lmf) and ctx.commuting_union(g.supp, f.supp):
                        witness = g
                        break
                if witness is not None:
                    kept.append(tau)
                    continue
            kept.append(tau)
            g = min(group, key=lambda e: e.seq)
            self._pid += 1
            self.pairs[self._pid] = (g, f, tau)
            heappush(self.heap, (self._selkey(tau, g, f), self._pid))
        # drop basis elements made redundant by f
        self.G = [g for g in self.G if ctx.divide(lmf, g.lead) is None]
        self.G.append(f)

    def add_input(self, terms: dict):
        rem, _ = _normal_form(terms, self.G, self.ctx, self.max_nf_steps)
        if rem:
            ent = _Entry(rem, self.ctx, self._seq)
            self._seq += 1
            self._update(ent)

    def _tail_reduce_all(self):
        """Tail-reduce every basis element against the whole basis.

        Leads never change (a lead cannot divide the strictly smaller
        monomials of its own tail), so pair bookkeeping stays valid;
        trimming tails keeps reducer coefficients close to their final
        reduced size instead of dragging blowup through the whole run.
        """
        ctx = self.ctx
        for g in self.G:
            if len(g.terms) <= 1:
                continue
            tail = dict(g.terms)
            del tail[g.lead]
            rem, scale = _normal_form(tail, self.G, ctx, self.max_nf_steps)
            sn, sd = scale.numerator, scale.denominator
            new = {k: sd * v for k, v in rem.items()}
            new[g.lead] = sn * g.lc
            cont = 0
            for v in new.values():
                cont = math.gcd(cont, v)
                if cont == 1:
                    break
            if cont > 1:
                new = {k: v // cont for k, v in new.items()}
            if new[g.lead] < 0:
                new = {k: -v for k, v in new.items()}
            if new == g.terms:
                continue
            g.terms = new
            g.lc = new[g.lead]
            g.supp = ctx.support(new)
            g.cache = {}

    def run(self):
        next_ir = 24
        debug = logger.isEnabledFor(logging.DEBUG)
        done = 0
        since_ir = 0
        while self.heap:
            _, pid = heappop(self.heap)
            trip = self.pairs.pop(pid, None)
            if trip is None:
                continue
            f, g, tau = trip
            done += 1
            if debug and done % 200 == 0:
                bits = max(
                    (abs(c).bit_length() for e in self.G for c in e.terms.values()),
                    default=0,
                )
                logger.debug(
                    "gb: pairs=%d queued=%d basis=%d taudeg=%d coefbits=%d",
                    done,
                    len(self.pairs),
                    len(self.G),
                    self.ctx.tau_deg(tau),
                    bits,
                )
            if self.max_pairs is not None and done > self.max_pairs:
                raise BudgetExceededError
            s = _spoly(f, g, tau, self.ctx)
            if not s:
                continue
            rem, _ = _normal_form(s, self.G, self.ctx, self.max_nf_steps)
            if rem:
                ent = _Entry(rem, self.ctx, self._seq)
                self._seq += 1
                if self.max_entry_bits is not None:
                    bits = max(abs(v).bit_length() for v in rem.values())
                    if bits > self.max_entry_bits:
                        raise BudgetExceededError
                self._update(ent)
                since_ir += 1
                # interreduce on basis growth, or early when coefficient
                # explosion sets in: newer elements often shrink a huge
                # tail by many orders of magnitude
                big = since_ir >= 8 and max(
                    abs(v).bit_length() for v in ent.terms.values()
                ) > 256
                if len(self.G) >= next_ir or big:
                    self._tail_reduce_all()
                    since_ir = 0
                    next_ir = len(self.G) + max(12, len(self.G) // 3)

    def finalize(self) -> list[_Entry]:
        """Minimalize, tail-reduce, leave entries primitive-integer."""
        ctx = self.ctx
        # ascending leading monomial: big negkey first
        ordered = sorted(self.G, key=lambda e: ctx.negkey(e.lead), reverse=True)
        minimal: list[_Entry] = []
        for e in ordered:
            if any(ctx.divide(m.lead, e.lead) is not None for m in minimal):
                continue
            minimal.append(e)
        reduced: list[_Entry] = []
        for i, e in enumerate(minimal):
            others = [m for j, m in enumerate(minimal) if j != i]
            rem, _ = _normal_form(e.terms, others, ctx)
            if not rem:
                raise InternalError("minimal basis element reduced to zero")
            reduced.append(_Entry(rem, ctx, e.seq))
        reduced.sort(key=lambda e: ctx.negkey(e.lead), reverse=True)
        return reduced


def _intify_scaled(terms: dict) -> tuple[dict, Fraction]:
    """Primitive integer form plus the factor relating it to the input."""
    den = 1
    for c in terms.values():
        den = math.lcm(den, c.denominator)
    out = {k: int(c * den) for k, c in terms.items()}
    g = 0
    for v in out.values():
        g = math.gcd(g, v)
        if g == 1:
            return out, Fraction(den)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out, Fraction(den, g if g else 1)


def _intify(terms: dict) -> dict:
    return _intify_scaled(terms)[0]


def _monic_fraction_terms(entry: _Entry) -> dict:
    lc = entry.lc
    return {k: Fraction(v, lc) for k, v in entry.terms.items()}


@dataclass(frozen=True)
class GBasis:
    """A reduced left Groebner basis of a left ideal."""

    sig: AlgebraSignature
    order: MonomialOrder
    elements: tuple[WeylElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "_ctx", _ScalarCtx(self.sig, self.order))
        entries = []
        for i, e in enumerate(self.elements):
            entries.append(_Entry(_intify(e.terms), self._ctx, i))
        object.__setattr__(self, "_entries", tuple(entries))

    def leads(self) -> list[Monomial]:
        return [e.lead for e in self._entries]

    def reduce(self, e: WeylElement) -> WeylElement:
        """Exact normal form; zero iff e lies in the ideal."""
        if e.sig != self.sig:
            raise SignatureMismatchError("element from a different algebra")
        if not e:
            return e
        ints, factor = _intify_scaled(e.terms)
        rem, scale = _normal_form(ints, self._entries, self._ctx)
        if not rem:
            return self.sig.zero()
        full = scale * factor
        return WeylElement(self.sig, {k: Fraction(v) / full for k, v in rem.items()})

    def contains(self, e: WeylElement) -> bool:
        if not e:
            return True
        rem, _ = _normal_form(_intify(e.terms), self._entries, self._ctx)
        return not rem

    def contains_all(self, elems: Iterable[WeylElement]) -> bool:
        return all(self.contains(e) for e in elems)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def left_groebner(
    gens: Sequence[WeylElement],
    order: MonomialOrder,
    *,
    strategy: str = "normal",
    max_pairs: int | None = None,
    max_entry_bits: int | None = None,
    max_nf_steps: int | None = None,
) -> GBasis:
    """Reduced left Groebner basis of the left ideal the gens generate.

    The optional limits cap the number of S-pairs processed, the
    coefficient size of any new basis element, and the reduction steps
    spent inside a single normal form; exceeding any of them raises
    BudgetExceededError so a caller can retry under a different order.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    sig = gens[0].sig
    for g in gens:
        if g.sig != sig:
            raise SignatureMismatchError("generators from different algebras")
    if order.nvars != len(sig.vars):
        raise SignatureMismatchError("order arity does not match the algebra")
    if not sig.integer_corrections():
        raise InternalError("fraction-free engine needs integer correction scalars")
    ctx = _ScalarCtx(sig, order)
    eng = _Engine(ctx, strategy, max_pairs, max_entry_bits, max_nf_steps)
    for g in gens:
        eng.add_input(_intify(g.terms))
    eng.run()
    out = []
    for ent in eng.finalize():
        out.append(WeylElement(sig, _monic_fraction_terms(ent)))
    return GBasis(sig, order, tuple(out))


def homogenized_groebner(
    gens: Sequence[WeylElement],
    order: MonomialOrder,
    *,
    strategy: str = "normal",
    max_pairs: int | None = None,
    max_entry_bits: int | None = None,
) -> list[WeylElement]:
    """Groebner basis for `order`, computed through the graded cover.

    The generators are padded to homogeneity with an extra central
    generator, and the basis is computed under a degree-first order
    whose ties are broken by `order` with the grading generator last.
    Homogeneity confines every S-polynomial and reduction to a single
    graded slice, so the mixed-degree term cascades that can stall a
    direct run cannot form.  Substituting 1 back gives a basis whose
    leading terms under `order` match the cover's slice by slice, hence
    a Groebner basis of the original ideal; it is minimal but its tails
    are reduced only up to the cover, so callers needing the reduced
    basis should rerun left_groebner on the output (cheap once a basis
    is known).
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    sig = gens[0].sig
    n = len(sig.vars)
    hsig = sig.homogenized()
    lifted = [g.homogenize(hsig) for g in gens]
    tie = MonomialOrder(
        n + 1,
        "block",
        blocks=[(tuple(range(n)), order), ((n,), MonomialOrder.lex(1))],
    )
    horder = MonomialOrder.weight(n + 1, [1] * (n + 1), tie)
    gb = left_groebner(
        lifted,
        horder,
        strategy=strategy,
        max_pairs=max_pairs,
        max_entry_bits=max_entry_bits,
    )
    out = [e.dehomogenize(sig) for e in gb]
    # minimalize under the target order: dropping the grading generator
    # can make one lead divide another
    keyed = sorted(out, key=lambda e: order.negkey(e.leading(order)[0]), reverse=True)
    kept: list[WeylElement] = []
    leads: list = []
    for e in keyed:
        lead = e.leading(order)[0]
        if any(_mono_divides(l2, lead) for l2 in leads):
            continue
        kept.append(e)
        leads.append(lead)
    return kept


def _mono_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class ModuleGBasis:
    """Reduced left Groebner basis of a submodule of a free module."""

    sig: AlgebraSignature
    order: MonomialOrder
    priorities: tuple[int, ...]
    ncomp: int
    vectors: tuple[VectorElement, ...]

    def __post_init__(self):
        ctx = _ModuleCtx(self.sig, self.order, self.priorities, self.ncomp)
        object.__setattr__(self, "_ctx", ctx)
        entries = []
        for i, v in enumerate(self.vectors):
            entries.append(_Entry(_intify(_vec_terms(v)), ctx, i))
        object.__setattr__(self, "_entries", tuple(entries))

    def contains(self, v: VectorElement) -> bool:
        if not v:
            return True
        rem, _ = _normal_form(_intify(_vec_terms(v)), self._entries, self._ctx)
        return not rem

    def pure_component(self, comp: int) -> list[WeylElement]:
        """Basis vectors supported on a single component, extracted.

        Under position-over-term order with that component least
        dominant, these generate (and are a Groebner basis of) the
        image of the submodule's intersection with it.
        """
        out = []
        for v in self.vectors:
            if all(not p for i, p in enumerate(v.parts) if i != comp) and v.parts[comp]:
                out.append(v.parts[comp])
        return out

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)


def _vec_terms(v: VectorElement) -> dict:
    out = {}
    for comp, part in enumerate(v.parts):
        for e, c in part.terms.items():
            out[(comp, e)] = c
    return out


def _vec_from_terms(sig: AlgebraSignature, ncomp: int, terms: dict) -> VectorElement:
    parts: list[dict] = [{} for _ in range(ncomp)]
    for (comp, e), c in terms.items():
        parts[comp][e] = c
    return VectorElement(sig, [WeylElement(sig, p) for p in parts])


def module_groebner(
    vectors: Sequence[VectorElement],
    order: MonomialOrder,
    priorities: Sequence[int],
    *,
    strategy: str = "normal",
) -> ModuleGBasis:
    vectors = [v for v in vectors if v]
    if not vectors:
        raise ValueError("need at least one nonzero vector")
    sig = vectors[0].sig
    ncomp = len(vectors[0])
    for v in vectors:
        if v.sig != sig:
            raise SignatureMismatchError("vectors from different algebras")
        if len(v) != ncomp:
            raise RankMismatchError("vectors of different rank")
    if not sig.integer_corrections():
        raise InternalError("fraction-free engine needs integer correction scalars")
    ctx = _ModuleCtx(sig, order, priorities, ncomp)
    eng = _Engine(ctx, strategy)
    for v in vectors:
        eng.add_input(_intify(_vec_terms(v)))
    eng.run()
    out = []
    for ent in eng.finalize():
        out.append(_vec_from_terms(sig, ncomp, _monic_fraction_terms(ent)))
    return ModuleGBasis(sig, order, tuple(priorities), ncomp, tuple(out))


def modulo(
    phi: WeylElement,
    gens: Sequence[WeylElement],
    order: MonomialOrder,
    *,
    strategy: str = "normal",
) -> list[WeylElement]:
    """Generators of {u : u * phi lies in the left ideal of gens}.

    Built from the rank-2 module spanned by (phi, 1) and (g, 0): the
    vectors whose first component vanishes have second components u
    with u*phi in the ideal, and eliminating the first component makes
    those second components a Groebner basis of the whole transporter.
    """
    sig = phi.sig
    cols = [VectorElement(sig, [phi, sig.one()])]
    for g in gens:
        cols.append(VectorElement(sig, [g, sig.zero()]))
    mgb = module_groebner(cols, order, [0, 1], strategy=strategy)
    return mgb.pure_component(1)


@dataclass(frozen=True)
class EliminationResult:
    basis: GBasis
    survivors: tuple[WeylElement, ...]


def eliminate_variables(
    gens: Sequence[WeylElement],
    elim: Sequence[str],
    *,
    inner: str = "degrevlex",
    strategy: str = "normal",
) -> EliminationResult:
    """Groebner basis under a block order killing `elim` first.

    The survivors (elements free of the eliminated generators) generate
    the intersection with the subalgebra on the remaining generators,
    provided that subalgebra is closed under the relations - true for
    every use in this package (the eliminated generators only appear in
    corrections of their own pairs).
    """
    if not gens:
        raise ValueError("need at least one generator")
    sig = gens[0].sig
    n = len(sig.vars)
    idx = [sig.index(nm) for nm in elim]
    rest = [i for i in range(n) if i not in idx]
    order = MonomialOrder.block(n, [(idx, "degrevlex"), (rest, inner)])
    gb = left_groebner(gens, order, strategy=strategy)
    iset = set(idx)
    surv = tuple(e for e in gb.elements if e.support_indices().isdisjoint(iset))
    return EliminationResult(gb, surv)


def verify_groebner(gb: GBasis) -> bool:
    """Full S-pair check with no shortcuts; for tests and audits."""
    ctx = gb._ctx
    ents = gb._entries
    for i in range(len(ents)):
        for j in range(i + 1, len(ents)):
            tau = ctx.pair_lcm(ents[i].lead, ents[j].lead)
            s = _spoly(ents[i], ents[j], tau, ctx)
            if not s:
                continue
            rem, _ = _normal_form(s, ents, ctx)
            if rem:
                return False
    return True


def verify_module_groebner(mgb: ModuleGBasis) -> bool:
    ctx = mgb._ctx
    ents = mgb._entries
    for i in range(len(ents)):
        for j in range(i + 1, len(ents)):
            if not ctx.samecomp(ents[i].lead, ents[j].lead):
                continue
            tau = ctx.pair_lcm(ents[i].lead, ents[j].lead)
            s = _spoly(ents[i], ents[j], tau, ctx)
            if not s:
                continue
            rem, _ = _normal_form(s, ents, ctx)
            if rem:
                return False
    return True

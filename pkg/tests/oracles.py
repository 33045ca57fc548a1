"""Independent reference implementations used only by the tests.

Nothing here calls the package's normal-ordering formulas or Groebner
engine except where a test explicitly wants a cross-check of one layer
against another: the word rewriter below multiplies operators by
adjacent transpositions on letter sequences, and the linear-algebra
helpers work on sparse Fraction rows with no polynomial code at all.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from dmod_hodge.weyl import AlgebraSignature, WeylElement

Word = tuple[int, ...]


def _word_of(mono: tuple[int, ...]) -> Word:
    out: list[int] = []
    for i, e in enumerate(mono):
        out.extend([i] * e)
    return tuple(out)


def _mono_of(word: Word, n: int) -> tuple[int, ...]:
    e = [0] * n
    for i in word:
        e[i] += 1
    return tuple(e)


def word_normal_order(sig: AlgebraSignature, word: Word) -> dict[Word, Fraction]:
    """Sort a letter sequence into normal order one swap at a time.

    Each adjacent out-of-order pair (g_j, g_i) with i < j is replaced
    using g_j g_i = g_i g_j + correction, where the correction comes
    straight from the signature's pair table.  No closed-form power
    formulas are involved, so this is a genuinely different route than
    the package's term_mul.
    """
    pending: dict[Word, Fraction] = {word: Fraction(1)}
    done: dict[Word, Fraction] = {}
    while pending:
        w, c = pending.popitem()
        spot = None
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                spot = k
                break
        if spot is None:
            done[w] = done.get(w, Fraction(0)) + c
            continue
        j, i = w[spot], w[spot + 1]
        swapped = w[:spot] + (i, j) + w[spot + 2 :]
        pending[swapped] = pending.get(swapped, Fraction(0)) + c
        spec = sig.pairs.get((i, j))
        if spec is None:
            continue
        kind = spec[0]
        if kind == "const":
            extra = {w[:spot] + w[spot + 2 :]: Fraction(spec[1])}
        elif kind == "later":
            extra = {w[:spot] + (j,) + w[spot + 2 :]: Fraction(spec[1])}
        elif kind == "earlier":
            extra = {w[:spot] + (i,) + w[spot + 2 :]: Fraction(spec[1])}
        else:
            extra = {}
            for mono, coef in spec[1].items():
                piece = w[:spot] + _word_of(mono) + w[spot + 2 :]
                extra[piece] = extra.get(piece, Fraction(0)) + Fraction(coef)
        for ww, cc in extra.items():
            if cc:
                v = pending.get(ww, Fraction(0)) + c * cc
                if v:
                    pending[ww] = v
                else:
                    pending.pop(ww, None)
    return {w: c for w, c in done.items() if c}


def word_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Product computed by the letter-sequence rewriter."""
    sig = a.sig
    n = len(sig.vars)
    acc: dict[tuple[int, ...], Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            word = _word_of(ma) + _word_of(mb)
            for w, c in word_normal_order(sig, word).items():
                e = _mono_of(w, n)
                v = acc.get(e, Fraction(0)) + ca * cb * c
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
    return WeylElement(sig, acc)


class SparseEchelon:
    """Row echelon set over Fraction with sparse dict rows.

    Keys can be any totally ordered hashables (exponent tuples here).
    add() reduces a row against the pivots and absorbs what survives;
    reduce() returns the remainder without absorbing.  rank is the
    number of stored pivots.
    """

    def __init__(self):
        self.pivots: dict = {}

    def reduce(self, row: dict) -> dict:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            lead = max(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            c = row[lead]
            for k, v in piv.items():
                w = row.get(k, Fraction(0)) - c * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        rem = self.reduce(row)
        if not rem:
            return False
        lead = max(rem)
        lc = rem[lead]
        self.pivots[lead] = {k: v / lc for k, v in rem.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def monomials_up_to(nvars: int, deg: int):
    """All exponent tuples of total degree <= deg, low degrees first."""
    out = []
    for k in range(deg + 1):
        for picks in itertools.combinations_with_replacement(range(nvars), k):
            e = [0] * nvars
            for i in picks:
                e[i] += 1
            out.append(tuple(e))
    return out


def left_span_echelon(gens, W: int) -> SparseEchelon:
    """Echelon of {m * g : deg(m * g) <= W} for left ideal truncations."""
    sig = gens[0].sig
    n = len(sig.vars)
    ech = SparseEchelon()
    for g in gens:
        dg = g.degree()
        for m in monomials_up_to(n, max(0, W - dg)):
            prod = WeylElement(sig, {m: 1}) * g
            if prod.degree() <= W:
                ech.add(dict(prod.terms))
    return ech


def transporter_dimension(phi, gens, d: int, W: int) -> int:
    """dim of {u : deg u <= d, u*phi in span_W(gens)} by plain rank count."""
    sig = phi.sig
    n = len(sig.vars)
    ech = left_span_echelon(gens, W)
    images = SparseEchelon()
    monos = monomials_up_to(n, d)
    rank = 0
    for m in monos:
        img = ech.reduce(dict((WeylElement(sig, {m: 1}) * phi).terms))
        if images.add(img):
            rank += 1
    return len(monos) - rank


def lead_ideal_dimension(gb, d: int) -> int:
    """dim of the degree <= d slice of a left ideal from a reduced GB.

    Valid for degree-compatible orders: the slice has a triangular basis
    whose leads are exactly the monomials of degree <= d divisible by
    some basis lead.
    """
    sig = gb.sig
    n = len(sig.vars)
    leads = gb.leads()
    count = 0
    for m in monomials_up_to(n, d):
        if any(all(m[i] >= l[i] for i in range(n)) for l in leads):
            count += 1
    return count


def rref_nullity(rows: list[dict], ncols_keys) -> int:
    """Nullity of the matrix whose rows are dicts over the given keys."""
    ech = SparseEchelon()
    rank = 0
    for r in rows:
        if ech.add(r):
            rank += 1
    return len(list(ncols_keys)) - rank

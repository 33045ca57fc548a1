"""Noncommutative PBW algebras: Weyl algebras and their relatives.

An algebra is fixed by an ordered generator list together with a
correction table.  For generators g_i, g_j with i < j the defining
relation is

    g_j * g_i = g_i * g_j + c_ij

where the correction c_ij is affine in g_i, g_j (degree <= 1, using only
the pair's own generators).  That restriction makes every global
monomial order admissible, so normal forms do not depend on the order in
use.  Elements are stored in normal (PBW) form with exponent tuples
against the generator list, exactly as commutative polynomials in
`polys`, and all the monomial-order machinery applies unchanged.

Correction kinds:

    ('const', k)    c = k, a scalar            (canonical Weyl pair: 1)
    ('later', l)    c = l * g_j
    ('earlier', m)  c = m * g_i
    ('general', d)  c given as {monomial: coeff}, affine in g_i, g_j

The product of two PBW monomials is computed by the straightening
recursion with closed forms for the three special kinds; results are
memoised per signature because Groebner reduction multiplies the same
monomials constantly.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatchError,
    SignatureMismatchError,
    SubalgebraNotClosedError,
)
from .polys import Monomial, MonomialOrder, Poly, mono_mul

PairSpec = tuple


def _unit(n: int, i: int, k: int = 1) -> Monomial:
    e = [0] * n
    e[i] = k
    return tuple(e)


class AlgebraSignature:
    """Generator list plus correction table; owns the product caches."""

    def __init__(self, vars: Sequence[str], pairs: dict[tuple[int, int], PairSpec] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise SignatureMismatchError("duplicate generator names")
        n = len(self.vars)
        self.pairs: dict[tuple[int, int], PairSpec] = {}
        outside: set[int] = set()
        for (i, j), spec in (pairs or {}).items():
            if not (0 <= i < j < n):
                raise SignatureMismatchError(f"bad generator pair ({i}, {j})")
            kind = spec[0]
            if kind in ("const", "later", "earlier"):
                if not spec[1]:
                    continue
            elif kind == "general":
                terms = {tuple(e): c for e, c in dict(spec[1]).items() if c}
                for e in terms:
                    if sum(e) > 2:
                        raise SignatureMismatchError(
                            "corrections cannot exceed the relation degree"
                        )
                    outside.update(
                        k for k in range(n) if e[k] and k not in (i, j)
                    )
                if not terms:
                    continue
                spec = ("general", terms)
            else:
                raise SignatureMismatchError(f"unknown correction kind {kind!r}")
            self.pairs[(i, j)] = spec
        # straightening stays confluent when every generator a correction
        # borrows from outside its own pair commutes with everything
        for k in outside:
            if any(k in pair for pair in self.pairs):
                raise SignatureMismatchError(
                    f"correction references non-central generator {self.vars[k]!r}"
                )
        self.commutative = not self.pairs
        self._tm_cache: dict[tuple[Monomial, Monomial], dict[Monomial, int]] = {}
        self._swap_cache: dict[tuple, dict[Monomial, int]] = {}

    def __eq__(self, other):
        if not isinstance(other, AlgebraSignature):
            return NotImplemented
        return self.vars == other.vars and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.vars)

    def __repr__(self):
        return f"AlgebraSignature({self.vars})"

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise AmbientMismatchError(f"no generator {name!r} in {self.vars}") from None

    def integer_corrections(self) -> bool:
        """True when every correction coefficient is an integer.

        The fraction-free Groebner engine relies on this to keep
        coefficients integral during reduction.
        """
        for spec in self.pairs.values():
            if spec[0] == "general":
                vals = spec[1].values()
            else:
                vals = (spec[1],)
            for v in vals:
                if isinstance(v, Fraction) and v.denominator != 1:
                    return False
        return True

    def commute(self, i: int, j: int) -> bool:
        if i == j:
            return True
        if i > j:
            i, j = j, i
        return (i, j) not in self.pairs

    # -- constructors for the algebras the pipeline uses --------------

    @staticmethod
    def polynomial(vars: Sequence[str]) -> "AlgebraSignature":
        return AlgebraSignature(vars)

    @staticmethod
    def weyl(xvars: Sequence[str], extra_central: Sequence[str] = ()) -> "AlgebraSignature":
        """D = k<x, Dx>, optionally followed by central generators."""
        xvars = tuple(xvars)
        n = len(xvars)
        vars = xvars + tuple("D" + x for x in xvars) + tuple(extra_central)
        pairs = {(i, n + i): ("const", 1) for i in range(n)}
        return AlgebraSignature(vars, pairs)

    @staticmethod
    def weyl_s(xvars: Sequence[str]) -> "AlgebraSignature":
        """D[s] with s central, the ambient ring for annihilators."""
        return AlgebraSignature.weyl(xvars, extra_central=("s",))

    @staticmethod
    def bm(xvars: Sequence[str]) -> "AlgebraSignature":
        """D<s, Dt> with relations Dx*x = x*Dx + 1 and Dt*s = s*Dt - Dt.

        s plays the role of -Dt*t; eliminating Dt from an ideal here
        lands in the subalgebra D[s].
        """
        xvars = tuple(xvars)
        n = len(xvars)
        vars = xvars + tuple("D" + x for x in xvars) + ("s", "Dt")
        pairs = {(i, n + i): ("const", 1) for i in range(n)}
        pairs[(2 * n, 2 * n + 1)] = ("later", -1)
        return AlgebraSignature(vars, pairs)

    def homogenized(self, name: str = "h") -> "AlgebraSignature":
        """Graded cover of the algebra.

        A central generator is appended and every correction is padded
        with its powers until both sides of each relation reach total
        degree two, e.g. Dx*x = x*Dx + h^2.  Homogeneous inputs then
        stay homogeneous through products, S-polynomials and reductions,
        which is what makes degree-by-degree basis computations possible
        on inputs where direct runs drown in mixed-degree tails.
        """
        if name in self.vars:
            raise SignatureMismatchError(f"generator {name!r} already present")
        n = len(self.vars)
        pairs: dict[tuple[int, int], PairSpec] = {}
        for (i, j), (kind, val) in self.pairs.items():
            if kind == "const":
                terms = {tuple([0] * n): val}
            elif kind == "later":
                terms = {_unit(n, j): val}
            elif kind == "earlier":
                terms = {_unit(n, i): val}
            else:
                terms = dict(val)
            pairs[(i, j)] = (
                "general",
                {e + (2 - sum(e),): c for e, c in terms.items()},
            )
        return AlgebraSignature(self.vars + (name,), pairs)

    @staticmethod
    def malgrange(xvars: Sequence[str]) -> "AlgebraSignature":
        """D<t, Dt>[u, v] with u, v central; the graph-embedding ambient."""
        xvars = tuple(xvars)
        n = len(xvars)
        vars = xvars + tuple("D" + x for x in xvars) + ("t", "Dt", "u", "v")
        pairs = {(i, n + i): ("const", 1) for i in range(n)}
        pairs[(2 * n, 2 * n + 1)] = ("const", 1)
        return AlgebraSignature(vars, pairs)

    # -- normal ordering ----------------------------------------------

    def _pair_swap(self, j: int, a: int, i: int, b: int) -> dict[Monomial, int]:
        """Normal form of g_j^a * g_i^b for i < j, as {monomial: coeff}."""
        key = (j, a, i, b)
        out = self._swap_cache.get(key)
        if out is not None:
            return out
        n = len(self.vars)
        spec = self.pairs.get((i, j))

        def mono(bi: int, aj: int) -> Monomial:
            e = [0] * n
            e[i] = bi
            e[j] = aj
            return tuple(e)

        if spec is None:
            out = {mono(b, a): 1}
        else:
            kind, val = spec
            if kind == "const":
                out = {}
                for k in range(min(a, b) + 1):
                    out[mono(b - k, a - k)] = comb(a, k) * comb(b, k) * factorial(k) * val ** k
            elif kind == "later":
                # g_j^a g_i = (g_i + a*val) g_j^a, hence the binomial sum below
                out = {}
                for k in range(b + 1):
                    c = comb(b, k) * (a * val) ** (b - k)
                    if c:
                        out[mono(k, a)] = c
            elif kind == "earlier":
                out = {}
                for k in range(a + 1):
                    c = comb(a, k) * (b * val) ** (a - k)
                    if c:
                        out[mono(b, k)] = c
            else:
                out = self._general_swap(j, a, i, b, val)
        self._swap_cache[key] = out
        return out

    def _general_swap(self, j, a, i, b, corr) -> dict[Monomial, int]:
        # one straightening step, then renormalise both sides; the
        # total exponent a+b drops in every nested swap, so this ends
        n = len(self.vars)
        base = {mono_mul(_unit(n, i), _unit(n, j)): 1}
        for e, c in corr.items():
            base[e] = base.get(e, 0) + c
        out: dict[Monomial, int] = {}
        left = _unit(n, j, a - 1)
        right = _unit(n, i, b - 1)
        for e, c in base.items():
            for e1, c1 in self.term_mul(left, e).items():
                for e2, c2 in self.term_mul(e1, right).items():
                    v = out.get(e2, 0) + c * c1 * c2
                    if v:
                        out[e2] = v
                    else:
                        out.pop(e2, None)
        return out

    def term_mul(self, ea: Monomial, eb: Monomial) -> dict[Monomial, int]:
        """Product of two PBW monomials in normal form."""
        key = (ea, eb)
        out = self._tm_cache.get(key)
        if out is not None:
            return out
        j = -1
        for k in range(len(ea) - 1, -1, -1):
            if ea[k]:
                j = k
                break
        i = len(eb)
        for k in range(len(eb)):
            if eb[k]:
                i = k
                break
        if j <= i:
            out = {mono_mul(ea, eb): 1}
        else:
            m1 = list(ea)
            a = m1[j]
            m1[j] = 0
            m1 = tuple(m1)
            m2 = list(eb)
            b = m2[i]
            m2[i] = 0
            m2 = tuple(m2)
            out = {}
            for es, cs in self._pair_swap(j, a, i, b).items():
                for e1, c1 in self.term_mul(m1, es).items():
                    for e2, c2 in self.term_mul(e1, m2).items():
                        v = out.get(e2, 0) + cs * c1 * c2
                        if v:
                            out[e2] = v
                        else:
                            out.pop(e2, None)
        self._tm_cache[key] = out
        return out

    # -- element constructors -----------------------------------------

    def zero(self) -> "WeylElement":
        return WeylElement(self, {})

    def one(self) -> "WeylElement":
        return WeylElement(self, {tuple([0] * len(self.vars)): Fraction(1)})

    def gen(self, name: str) -> "WeylElement":
        return WeylElement(self, {_unit(len(self.vars), self.index(name)): Fraction(1)})

    def element(self, terms: dict[Monomial, Fraction | int]) -> "WeylElement":
        return WeylElement(self, terms)

    def from_poly(self, p: Poly) -> "WeylElement":
        """Embed a commutative polynomial by matching variable names."""
        pos = [self.index(v) for v in p.vars]
        n = len(self.vars)
        out = {}
        for e, c in p.terms.items():
            d = [0] * n
            for slot, k in zip(pos, e):
                d[slot] = k
            out[tuple(d)] = c
        return WeylElement(self, out)


class WeylElement:
    """An element of a PBW algebra in normal form."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: AlgebraSignature, terms: dict[Monomial, Fraction | int] | None = None):
        self.sig = sig
        clean: dict[Monomial, Fraction] = {}
        n = len(sig.vars)
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise AmbientMismatchError(f"exponent {e} does not fit {n} generators")
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    def _check(self, other: "WeylElement"):
        if self.sig is not other.sig and self.sig != other.sig:
            raise SignatureMismatchError("elements live in different algebras")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == WeylElement(self.sig, {tuple([0] * len(self.sig.vars)): other})
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement(self.sig, {tuple([0] * len(self.sig.vars)): other})
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return WeylElement(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.sig, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement(self.sig, {tuple([0] * len(self.sig.vars)): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return WeylElement(self.sig, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        tm = self.sig.term_mul
        out: dict[Monomial, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                cab = ca * cb
                for e, k in tm(ea, eb).items():
                    v = out.get(e, 0) + cab * k
                    if v:
                        out[e] = v
                    else:
                        out.pop(e, None)
        return WeylElement(self.sig, out)

    def __rmul__(self, other):
        # scalars commute with everything; anything else must use __mul__
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power in a noncommutative ring")
        out = self.sig.one()
        for _ in range(k):
            out = out * self
        return out

    # -- queries ------------------------------------------------------

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.sig.index(name)
        return max(e[i] for e in self.terms)

    def leading(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero element has no leading term")
        e = min(self.terms, key=order.negkey)
        return e, self.terms[e]

    def support_indices(self) -> set[int]:
        out: set[int] = set()
        for e in self.terms:
            for k, x in enumerate(e):
                if x:
                    out.add(k)
        return out

    def coefficients_in(self, name: str) -> dict[int, "WeylElement"]:
        """Left coefficients of powers of one generator.

        Only meaningful for the last PBW generator or a central one,
        where x^e = (rest) * g^k holds literally.
        """
        i = self.sig.index(name)
        if i != len(self.sig.vars) - 1 and any(
            not self.sig.commute(i, k) for k in range(len(self.sig.vars))
        ):
            raise SubalgebraNotClosedError(
                f"{name!r} is neither last in PBW order nor central"
            )
        out: dict[int, dict[Monomial, Fraction]] = {}
        for e, c in self.terms.items():
            k = e[i]
            d = list(e)
            d[i] = 0
            out.setdefault(k, {})[tuple(d)] = c
        return {k: WeylElement(self.sig, t) for k, t in sorted(out.items())}

    def to_poly(self, vars: Sequence[str]) -> Poly:
        """Extract into a commutative ring; the listed generators must
        pairwise commute and carry the whole support."""
        vars = tuple(vars)
        pos = [self.sig.index(v) for v in vars]
        for a in range(len(pos)):
            for b in range(a + 1, len(pos)):
                if not self.sig.commute(pos[a], pos[b]):
                    raise SubalgebraNotClosedError(
                        f"{vars[a]!r} and {vars[b]!r} do not commute"
                    )
        keep = set(pos)
        out: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            if any(e[k] for k in range(len(e)) if k not in keep):
                raise SubalgebraNotClosedError(
                    "element uses generators outside the requested subring"
                )
            out[tuple(e[p] for p in pos)] = c
        return Poly(vars, out)

    def homogenize(self, hsig: AlgebraSignature) -> "WeylElement":
        """Pad every term with the grading generator of the cover until
        the element is homogeneous of its own top degree."""
        if hsig.vars[:-1] != self.sig.vars:
            raise AmbientMismatchError("not the graded cover of this algebra")
        top = self.degree()
        return WeylElement(
            hsig, {e + (top - sum(e),): c for e, c in self.terms.items()}
        )

    def dehomogenize(self, sig: AlgebraSignature) -> "WeylElement":
        """Substitute 1 for the grading generator."""
        if self.sig.vars[:-1] != sig.vars:
            raise AmbientMismatchError("not a graded cover of the target algebra")
        out: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            key = e[:-1]
            out[key] = out.get(key, 0) + c
        return WeylElement(sig, out)

    def convert(self, target: AlgebraSignature) -> "WeylElement":
        """Rebuild in another algebra by generator name.

        Sound when the generators actually used carry the same
        relations in both signatures; the PBW normal form transfers
        term by term.
        """
        pos = {}
        n = len(target.vars)
        out: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            d = [0] * n
            for k, x in enumerate(e):
                if x:
                    if k not in pos:
                        pos[k] = target.index(self.sig.vars[k])
                    d[pos[k]] = x
            key = tuple(d)
            out[key] = out.get(key, 0) + c
        return WeylElement(target, out)

    def text(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        if order is None:
            order = MonomialOrder.degrevlex(len(self.sig.vars))
        parts = []
        for e in sorted(self.terms, key=order.negkey):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.sig.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"WeylElement({self.text()!r})"


class VectorElement:
    """A row of algebra elements, one per free-module component."""

    __slots__ = ("sig", "parts")

    def __init__(self, sig: AlgebraSignature, parts: Sequence[WeylElement]):
        self.sig = sig
        for p in parts:
            if p.sig != sig:
                raise SignatureMismatchError("component in a different algebra")
        self.parts = tuple(parts)

    @staticmethod
    def from_columns(sig: AlgebraSignature, *parts) -> "VectorElement":
        return VectorElement(sig, parts)

    def __len__(self):
        return len(self.parts)

    def __bool__(self):
        return any(self.parts)

    def __eq__(self, other):
        if not isinstance(other, VectorElement):
            return NotImplemented
        return self.sig == other.sig and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __add__(self, other):
        return VectorElement(self.sig, [a + b for a, b in zip(self.parts, other.parts)])

    def __sub__(self, other):
        return VectorElement(self.sig, [a - b for a, b in zip(self.parts, other.parts)])

    def __neg__(self):
        return VectorElement(self.sig, [-a for a in self.parts])

    def leftmul(self, op: WeylElement) -> "VectorElement":
        return VectorElement(self.sig, [op * p for p in self.parts])

    def scale(self, c) -> "VectorElement":
        return VectorElement(self.sig, [p * c for p in self.parts])

    def text(self, order: MonomialOrder | None = None) -> str:
        return "[" + ", ".join(p.text(order) for p in self.parts) + "]"

    def __repr__(self):
        return f"VectorElement({self.text()!r})"

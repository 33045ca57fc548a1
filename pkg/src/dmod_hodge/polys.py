"""Exact multivariate polynomial arithmetic over the rationals.

Monomials are exponent tuples against a fixed, ordered variable list; a
polynomial is a map from monomials to nonzero Fractions.  Everything is
immutable by convention: arithmetic returns fresh objects and nothing
mutates terms after construction.

The module also provides global monomial orders (lex, degrevlex, block,
weight), exact division, gcd / squarefree testing, and dense univariate
polynomials with rational root extraction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatchError,
    ConstantInputError,
    InexactDivisionError,
    NonrationalFactorError,
)

Monomial = tuple[int, ...]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when the division is not exact."""
    out = tuple(x - y for x, y in zip(a, b))
    return out if all(e >= 0 for e in out) else None


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


class MonomialOrder:
    """A global monomial order on exponent tuples of fixed length.

    Comparisons run through `negkey`: negkey(a) < negkey(b) exactly when
    a is the larger monomial.  Negated keys let heaps and sorted lists
    use plain ascending tuple comparison while treating the leading
    monomial as minimal, and they are memoised per order instance
    because the same monomials are compared over and over during
    Groebner reduction.
    """

    def __init__(self, nvars: int, kind: str, *, blocks=None, weights=None, tie=None):
        self.nvars = nvars
        self.kind = kind
        self.blocks = blocks
        self.weights = tuple(weights) if weights is not None else None
        self.tie = tie
        self._cache: dict[Monomial, tuple] = {}
        if kind == "block":
            if not blocks:
                raise ValueError("block order needs at least one block")
            seen = [s for slots, _ in blocks for s in slots]
            if sorted(seen) != list(range(nvars)):
                raise ValueError("block slots must partition the variable range")
        elif kind == "weight":
            if self.weights is None or len(self.weights) != nvars:
                raise ValueError("weight order needs one weight per variable")
            if any(w < 0 for w in self.weights):
                raise ValueError("weights must be nonnegative to keep the order global")
            if tie is None:
                raise ValueError("weight order needs a tie-breaking order")
        elif kind not in ("lex", "deglex", "degrevlex"):
            raise ValueError(f"unknown order kind {kind!r}")

    @staticmethod
    def lex(nvars: int) -> "MonomialOrder":
        return MonomialOrder(nvars, "lex")

    @staticmethod
    def deglex(nvars: int) -> "MonomialOrder":
        return MonomialOrder(nvars, "deglex")

    @staticmethod
    def degrevlex(nvars: int) -> "MonomialOrder":
        return MonomialOrder(nvars, "degrevlex")

    @staticmethod
    def block(nvars: int, parts: Sequence[tuple[Sequence[int], str]]) -> "MonomialOrder":
        """Earlier parts dominate; each part carries its own order kind."""
        blocks = []
        for slots, kind in parts:
            slots = tuple(slots)
            blocks.append((slots, MonomialOrder(len(slots), kind)))
        return MonomialOrder(nvars, "block", blocks=blocks)

    @staticmethod
    def weight(nvars: int, weights: Sequence[int], tie: "MonomialOrder") -> "MonomialOrder":
        return MonomialOrder(nvars, "weight", weights=weights, tie=tie)

    def _raw_negkey(self, e: Monomial) -> tuple:
        kind = self.kind
        if kind == "degrevlex":
            # a > b iff deg a > deg b, or degrees tie and the last nonzero
            # entry of a-b is negative; reversing makes that a plain
            # lexicographic comparison.
            return (-sum(e),) + tuple(reversed(e))
        if kind == "lex":
            return tuple(-x for x in e)
        if kind == "deglex":
            return (-sum(e),) + tuple(-x for x in e)
        if kind == "block":
            return tuple(
                sub._raw_negkey(tuple(e[s] for s in slots)) for slots, sub in self.blocks
            )
        # weight
        w = -sum(wi * xi for wi, xi in zip(self.weights, e))
        return (w, self.tie._raw_negkey(e))

    def negkey(self, e: Monomial) -> tuple:
        k = self._cache.get(e)
        if k is None:
            k = self._raw_negkey(e)
            self._cache[e] = k
        return k

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0, or 1 according to a < b, a == b, a > b."""
        ka, kb = self.negkey(a), self.negkey(b)
        if ka == kb:
            return 0
        return 1 if ka < kb else -1

    def describe(self) -> str:
        if self.kind == "block":
            parts = ";".join(f"{list(s)}:{sub.kind}" for s, sub in self.blocks)
            return f"block({parts})"
        if self.kind == "weight":
            return f"weight({list(self.weights)},{self.tie.describe()})"
        return self.kind

    def __repr__(self):
        return f"MonomialOrder({self.describe()}, nvars={self.nvars})"


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected a rational coefficient, got {type(c).__name__}")


class Poly:
    """Multivariate polynomial with Fraction coefficients.

    `vars` fixes the ambient ring; mixing polynomials over different
    variable lists raises AmbientMismatchError rather than guessing an
    embedding.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: dict[Monomial, Fraction] | None = None):
        self.vars = tuple(vars)
        clean: dict[Monomial, Fraction] = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                c = _as_fraction(c)
                if len(e) != n:
                    raise AmbientMismatchError(
                        f"exponent tuple {e} does not match {n} variables"
                    )
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(vars: Sequence[str]) -> "Poly":
        return Poly(vars)

    @staticmethod
    def constant(c, vars: Sequence[str]) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly(vars)
        return Poly(vars, {tuple([0] * len(vars)): c})

    @staticmethod
    def variable(name: str, vars: Sequence[str]) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise AmbientMismatchError(f"variable {name!r} not among {vars}")
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return Poly(vars, {tuple(e): Fraction(1)})

    # -- basic protocol ----------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def _check(self, other: "Poly"):
        if self.vars != other.vars:
            raise AmbientMismatchError(f"cannot mix {self.vars} with {other.vars}")

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.vars)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return Poly(self.vars)
            return Poly(self.vars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = mono_mul(ea, eb)
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- queries ------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def is_constant(self) -> bool:
        return all(mono_degree(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get(tuple([0] * len(self.vars)), Fraction(0))

    def leading(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = min(self.terms, key=order.negkey)
        return e, self.terms[e]

    def partial(self, name: str) -> "Poly":
        i = self.vars.index(name)
        out: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Poly(self.vars, out)

    def coefficients_in(self, name: str) -> dict[int, "Poly"]:
        """Split into coefficients of powers of one variable.

        The returned polynomials keep the full ambient variable list
        with exponent 0 in the split variable.
        """
        i = self.vars.index(name)
        out: dict[int, dict[Monomial, Fraction]] = {}
        for e, c in self.terms.items():
            k = e[i]
            d = list(e)
            d[i] = 0
            out.setdefault(k, {})[tuple(d)] = c
        return {k: Poly(self.vars, t) for k, t in sorted(out.items())}

    def subs(self, name: str, value) -> "Poly":
        """Substitute a rational value or a polynomial for one variable."""
        i = self.vars.index(name)
        if isinstance(value, (int, Fraction)):
            value = Poly.constant(value, self.vars)
        self._check(value)
        out = Poly(self.vars)
        powers: dict[int, Poly] = {0: Poly.constant(1, self.vars)}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k
            d = list(e)
            d[i] = 0
            out = out + Poly(self.vars, {tuple(d): c}) * powers[k]
        return out

    def extend(self, vars: Sequence[str]) -> "Poly":
        """Reinterpret over a larger variable list (superset, any layout)."""
        vars = tuple(vars)
        pos = []
        for v in self.vars:
            if v not in vars:
                raise AmbientMismatchError(f"variable {v!r} missing from {vars}")
            pos.append(vars.index(v))
        out: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            d = [0] * len(vars)
            for p, k in zip(pos, e):
                d[p] = k
            out[tuple(d)] = c
        return Poly(vars, out)

    def restrict(self, vars: Sequence[str]) -> "Poly":
        """Project onto a smaller variable list; dropped slots must be unused."""
        vars = tuple(vars)
        pos = [self.vars.index(v) for v in vars]
        keep = set(pos)
        out: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            if any(e[i] for i in range(len(e)) if i not in keep):
                raise AmbientMismatchError("polynomial uses a variable being dropped")
            out[tuple(e[i] for i in pos)] = c
        return Poly(vars, out)

    def content(self) -> Fraction:
        """Positive rational content (gcd of coefficients); 0 for zero."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, c.numerator)
            den = math.lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        c = self.content()
        if not c:
            return self
        return self * (1 / c)

    def monic(self, order: MonomialOrder) -> "Poly":
        if not self.terms:
            return self
        _, lc = self.leading(order)
        return self * (1 / lc)

    # -- canonical text ----------------------------------------------

    def text(self, order: MonomialOrder | None = None) -> str:
        """Canonical string: terms descending in the active order.

        Coefficients print as num or num/den, exponent 1 is elided, and
        factors are joined with '*'.  The zero polynomial prints as '0'.
        """
        if not self.terms:
            return "0"
        if order is None:
            order = MonomialOrder.degrevlex(len(self.vars))
        parts = []
        for e in sorted(self.terms, key=order.negkey):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
                continue
            body = "*".join(factors)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"Poly({self.text()!r}, vars={self.vars})"


def divide_exact(p: Poly, q: Poly) -> Poly:
    """Exact quotient p / q; raises InexactDivisionError otherwise."""
    if p.vars != q.vars:
        raise AmbientMismatchError("quotient requires a common ambient ring")
    if not q:
        raise InexactDivisionError("division by zero polynomial")
    if not p:
        return Poly(p.vars)
    order = MonomialOrder.degrevlex(len(p.vars))
    qe, qc = q.leading(order)
    rest = p
    quot: dict[Monomial, Fraction] = {}
    # When an exact quotient exists, every intermediate leading monomial
    # is divisible by lm(q), so a failed step certifies inexactness.
    while rest:
        pe, pc = rest.leading(order)
        m = mono_div(pe, qe)
        if m is None:
            raise InexactDivisionError(
                f"{p.text()} is not divisible by {q.text()}"
            )
        c = pc / qc
        quot[m] = c
        rest = rest - Poly(p.vars, {m: c}) * q
    return Poly(p.vars, quot)


# -- gcd and squarefree testing --------------------------------------


def _uni_coeffs(p: Poly, i: int) -> dict[int, Poly]:
    out: dict[int, dict[Monomial, Fraction]] = {}
    for e, c in p.terms.items():
        k = e[i]
        d = list(e)
        d[i] = 0
        out.setdefault(k, {})[tuple(d)] = c
    return {k: Poly(p.vars, t) for k, t in out.items()}


def _from_uni(coeffs: dict[int, Poly], i: int, vars) -> Poly:
    out: dict[Monomial, Fraction] = {}
    for k, p in coeffs.items():
        for e, c in p.terms.items():
            d = list(e)
            d[i] += k
            key = tuple(d)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return Poly(vars, out)


def _poly_content_in(p: Poly, i: int) -> Poly:
    """Gcd of the coefficients of p as a univariate polynomial in slot i."""
    g = Poly(p.vars)
    for c in _uni_coeffs(p, i).values():
        g = poly_gcd(g, c)
    return g


def _pseudo_rem(a: dict[int, Poly], b: dict[int, Poly], vars, i: int) -> dict[int, Poly]:
    """Pseudo-remainder of univariate polynomials with Poly coefficients."""
    da = max(a) if a else -1
    db = max(b)
    lb = b[db]
    while a and max(a) >= db:
        da = max(a)
        la = a[da]
        # multiply a by lb and subtract la * x^(da-db) * b
        a = {k: v * lb for k, v in a.items()}
        for k, v in b.items():
            key = k + da - db
            cur = a.get(key, Poly(vars)) - la * v
            if cur:
                a[key] = cur
            else:
                a.pop(key, None)
    return a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Gcd over Q, normalised to content 1 (monic up to rational scale)."""
    if a.vars != b.vars:
        raise AmbientMismatchError("gcd requires a common ambient ring")
    if not a:
        return b.primitive() if b else b
    if not b:
        return a.primitive()
    used = [i for i in range(len(a.vars)) if any(e[i] for e in a.terms) or any(e[i] for e in b.terms)]
    if not used:
        return Poly.constant(1, a.vars)
    i = used[-1]
    ca, cb = _poly_content_in(a, i), _poly_content_in(b, i)
    pa = divide_exact(a, ca) if not ca.is_constant() else a.primitive()
    pb = divide_exact(b, cb) if not cb.is_constant() else b.primitive()
    ua, ub = _uni_coeffs(pa, i), _uni_coeffs(pb, i)
    if max(ua) < max(ub):
        ua, ub = ub, ua
    while ub:
        r = _pseudo_rem(ua, ub, a.vars, i)
        ua, ub = ub, r
        if ub:
            # strip the content of the remainder to keep growth in check
            rp = _from_uni(ub, i, a.vars)
            cr = _poly_content_in(rp, i)
            if not cr.is_constant():
                rp = divide_exact(rp, cr)
            else:
                rp = rp.primitive()
            ub = _uni_coeffs(rp, i)
    g = _from_uni(ua, i, a.vars)
    if not g.degree_in(a.vars[i]):
        g = Poly.constant(1, a.vars)
    cont = poly_gcd(ca, cb)
    return (g.primitive() * cont).primitive() if cont.is_constant() else (g.primitive() * cont)


def squarefree_test(f: Poly) -> bool:
    """True when f has no repeated irreducible factor (characteristic 0).

    Tests whether gcd(f, f_x1, ..., f_xn) is constant; constant input is
    rejected because reducedness is undefined for units.
    """
    if f.is_constant():
        raise ConstantInputError("squarefree test needs a nonconstant polynomial")
    g = f
    for v in f.vars:
        g = poly_gcd(g, f.partial(v))
        if g.is_constant():
            return True
    return g.is_constant()


# -- dense univariate polynomials ------------------------------------


class UniPoly:
    """Dense univariate polynomial over Q, used for b-functions."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable, var: str = "s"):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @staticmethod
    def zero(var: str = "s") -> "UniPoly":
        return UniPoly([], var)

    @staticmethod
    def constant(c, var: str = "s") -> "UniPoly":
        return UniPoly([c], var)

    @staticmethod
    def linear_root(r, var: str = "s") -> "UniPoly":
        """The monic factor (x - r)."""
        return UniPoly([-_as_fraction(r), 1], var)

    @staticmethod
    def from_roots(roots: Iterable[tuple[Fraction, int]], var: str = "s") -> "UniPoly":
        out = UniPoly([1], var)
        for r, m in roots:
            for _ in range(m):
                out = out * UniPoly.linear_root(r, var)
        return out

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)],
            self.var,
        )

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def divexact(self, other: "UniPoly") -> "UniPoly":
        if not other:
            raise InexactDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        db = other.degree()
        lb = other.coeffs[-1]
        out = [Fraction(0)] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) - 1 < db:
                break
            k = len(rem) - 1 - db
            c = rem[-1] / lb
            out[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
        if any(rem):
            raise InexactDivisionError(
                f"{self.text()} is not divisible by {other.text()}"
            )
        return UniPoly(out, self.var)

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                body = self.var if k == 1 else f"{self.var}^{k}"
                if c == 1:
                    parts.append(body)
                elif c == -1:
                    parts.append(f"-{body}")
                else:
                    parts.append(f"{c}*{body}")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"UniPoly({self.text()!r})"


def rational_roots(b: UniPoly) -> list[tuple[Fraction, int]]:
    """All roots with multiplicity, sorted ascending.

    The polynomial must split over Q; a leftover nonconstant factor with
    no rational root raises NonrationalFactorError.
    """
    if not b:
        raise ValueError("zero polynomial has every root")
    coeffs = list(b.coeffs)
    found: dict[Fraction, int] = {}
    # strip roots at zero first
    k0 = 0
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
        k0 += 1
    if k0:
        found[Fraction(0)] = k0

    def deflate(cs: list[Fraction], r: Fraction) -> list[Fraction] | None:
        # synthetic division by (x - r); None when r is not a root
        out = [Fraction(0)] * (len(cs) - 1)
        acc = Fraction(0)
        for i in range(len(cs) - 1, 0, -1):
            acc = acc * r + cs[i]
            out[i - 1] = acc
        if acc * r + cs[0]:
            return None
        return out

    while len(coeffs) > 1:
        den = math.lcm(*[c.denominator for c in coeffs])
        ints = [int(c * den) for c in coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        a0, an = abs(ints[0]), abs(ints[-1])
        hit = None
        for p in sorted(_divisors(a0)):
            for q in sorted(_divisors(an)):
                for sign in (1, -1):
                    r = Fraction(sign * p, q)
                    d = deflate(coeffs, r)
                    if d is not None:
                        hit = (r, d)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            raise NonrationalFactorError(
                f"no rational root in remaining factor of degree {len(coeffs) - 1}"
            )
        r, coeffs = hit
        found[r] = found.get(r, 0) + 1
    return sorted(found.items())


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)

"""Exact multivariate polynomials over QQ and GF(p).

Monomials are plain exponent tuples.  Polynomials keep their terms in a dict
``{exponents: coefficient}`` with no zero coefficients; every algorithm in the
package works on these dicts directly and :class:`Polynomial` is the public,
immutable wrapper around them.

Coefficients over QQ are ``gmpy2.mpq`` values, over GF(p) they are ints
reduced into ``range(p)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import gmpy2
from gmpy2 import mpq

Monomial = tuple  # exponent vector


class CoefficientField:
    """The rationals (characteristic 0) or a prime field GF(p), p < 2**31."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        characteristic = int(characteristic)
        if characteristic < 0:
            raise ValueError("characteristic must be nonnegative")
        if characteristic:
            if characteristic >= 2**31:
                raise ValueError("prime fields are limited to p < 2^31")
            if not gmpy2.is_prime(characteristic):
                raise ValueError(f"characteristic {characteristic} is not prime")
        self.characteristic = characteristic

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    @property
    def zero(self):
        return 0 if self.characteristic else mpq(0)

    @property
    def one(self):
        return 1 if self.characteristic else mpq(1)

    def __call__(self, value):
        p = self.characteristic
        if p:
            if isinstance(value, (Fraction, type(mpq()))):
                num, den = int(value.numerator), int(value.denominator)
                if den % p == 0:
                    raise ZeroDivisionError(f"denominator {den} vanishes in GF({p})")
                return num * pow(den, -1, p) % p
            return int(value) % p
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    def inv(self, a):
        p = self.characteristic
        if p:
            return pow(int(a), -1, p)
        return 1 / a

    def sample(self, rng, bound: int = 7):
        """Random element: all residues for GF(p), integers in [-bound, bound] for QQ."""
        p = self.characteristic
        if p:
            return rng.randrange(p)
        return mpq(rng.randint(-bound, bound))

    def __eq__(self, other):
        return isinstance(other, CoefficientField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("field", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})" if self.characteristic else "QQ"


QQ = CoefficientField(0)


def GF(p: int) -> CoefficientField:
    return CoefficientField(p)


class MonomialOrder:
    """Graded monomial orders; variable precedence follows the ring's variable list."""

    KINDS = ("degrevlex", "deglex")

    __slots__ = ("kind",)

    def __init__(self, kind: str = "degrevlex"):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind

    def key(self, m: Monomial):
        # larger key == larger monomial
        if self.kind == "degrevlex":
            return (sum(m), tuple(-x for x in reversed(m)))
        return (sum(m), m)

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != len(b):
            raise ValueError("exponent vectors of different lengths")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(("order", self.kind))

    def __repr__(self):
        return self.kind


def compare(a: Monomial, b: Monomial, order: MonomialOrder | None = None) -> int:
    """-1, 0 or 1 according to the position of ``a`` relative to ``b``."""
    return (order or MonomialOrder()).compare(a, b)


# -- raw term-dict arithmetic ------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def terms_add(f: dict, g: Mapping, p: int, scale=1) -> dict:
    """Return ``f + scale * g`` as a new dict."""
    out = dict(f)
    for m, c in g.items():
        v = out.get(m, 0) + scale * c
        if p:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def terms_scale(f: Mapping, c, p: int) -> dict:
    if p:
        c %= p
        return {m: a * c % p for m, a in f.items()} if c else {}
    return {m: a * c for m, a in f.items()} if c else {}


def terms_mul_term(f: Mapping, c, mono: Monomial, p: int) -> dict:
    out = {}
    for m, a in f.items():
        v = a * c
        if p:
            v %= p
        if v:
            out[mono_mul(m, mono)] = v
    return out


def terms_mul(f: Mapping, g: Mapping, p: int) -> dict:
    out: dict = {}
    for m1, a in f.items():
        for m2, b in g.items():
            m = mono_mul(m1, m2)
            v = out.get(m, 0) + a * b
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


class PolynomialRing:
    """``field[variables]`` with a graded monomial order."""

    def __init__(self, field: CoefficientField, variables: Iterable[str],
                 order: MonomialOrder | str = "degrevlex"):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        self.order = order if isinstance(order, MonomialOrder) else MonomialOrder(order)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def key(self, m: Monomial):
        return self.order.key(m)

    def gen(self, i: int) -> "Polynomial":
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def __call__(self, terms: Mapping) -> "Polynomial":
        return Polynomial(self, {m: self.field(c) for m, c in terms.items()})

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.field == other.field
                and self.variables == other.variables and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.variables)}]"


def format_coefficient(c) -> str:
    if isinstance(c, int):
        return str(c)
    c = Fraction(int(c.numerator), int(c.denominator))
    return str(c)


def format_terms(terms: Mapping, ring: PolynomialRing) -> str:
    if not terms:
        return "0"
    p = ring.characteristic
    parts = []
    for m in sorted(terms, key=ring.key, reverse=True):
        c = terms[m]
        if not p:
            c = Fraction(int(c.numerator), int(c.denominator))
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(ring.variables, m) if e
        )
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append(("- " if neg else "+ ") + body)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[1:]


class Polynomial:
    """Immutable polynomial; arithmetic requires a shared ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: Mapping | None = None):
        self.ring = ring
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial) or other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, terms_add(self.terms, other.terms, self.ring.characteristic))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, terms_scale(self.terms, -1, self.ring.characteristic))

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, terms_add(self.terms, other.terms, self.ring.characteristic, -1))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        p = self.ring.characteristic
        if isinstance(other, Polynomial):
            self._check(other)
            return Polynomial(self.ring, terms_mul(self.terms, other.terms, p))
        return Polynomial(self.ring, terms_scale(self.terms, self.ring.field(other), p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> list[Monomial]:
        """Monomials in strictly decreasing order."""
        return sorted(self.terms, key=self.ring.key, reverse=True)

    def sorted_terms(self) -> list[tuple]:
        return [(self.terms[m], m) for m in self.monomials()]

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def leading_term(self) -> "Polynomial":
        m = self.leading_monomial()
        return Polynomial(self.ring, {m: self.terms[m]})

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def monic(self) -> "Polynomial":
        return self * self.ring.field.inv(self.leading_coefficient())

    def __repr__(self):
        return format_terms(self.terms, self.ring)

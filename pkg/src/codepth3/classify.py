"""Classification of codepth <= 3 local rings from numerical invariants,
and the Poincaré and Bass series attached to each class."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb
from typing import Sequence

import yaml

from .invariants import InvariantBundle
from .parse import evaluate_integer_expression


class MissingInvariantError(ValueError):
    def __init__(self, name: str, branch: str):
        super().__init__(f"invariant {name} is required to decide the {branch} branch")
        self.name = name


class ConsistencyError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RingClass:
    """One of C(c), S, B, T, G(r), H(p,q), plus 'codepth > 3' and 'zero ring'."""

    tag: str
    params: tuple[int, ...] = ()

    TAGS = ("C", "S", "B", "T", "G", "H", "codepth > 3", "zero ring")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown class tag {self.tag!r}")
        arity = {"C": 1, "G": 1, "H": 2}.get(self.tag, 0)
        if len(self.params) != arity:
            raise ValueError(f"class {self.tag} takes {arity} parameter(s)")
        if self.tag == "C" and not 0 <= self.params[0] <= 3:
            raise ValueError("C(c) needs 0 <= c <= 3")
        if self.tag == "G" and self.params[0] < 2:
            raise ValueError("G(r) needs r >= 2")
        if self.tag == "H" and min(self.params) < 0:
            raise ValueError("H(p,q) needs p, q >= 0")

    def __str__(self):
        if self.params:
            return f"{self.tag}({','.join(map(str, self.params))})"
        return self.tag

    @classmethod
    def parse(cls, text: str) -> "RingClass":
        text = text.strip()
        if text in ("codepth > 3", "zero ring", "S", "B", "T"):
            return cls(text)
        if len(text) >= 4 and text[1] == "(" and text.endswith(")"):
            return cls(text[0], tuple(int(x) for x in text[2:-1].split(",")))
        raise ValueError(f"not a class string: {text!r}")


def C(c: int) -> RingClass:
    return RingClass("C", (c,))


def G(r: int) -> RingClass:
    return RingClass("G", (r,))


def H(p: int, q: int) -> RingClass:
    return RingClass("H", (p, q))


B = RingClass("B")
S = RingClass("S")
T = RingClass("T")
CODEPTH_GT_3 = RingClass("codepth > 3")
ZERO_RING = RingClass("zero ring")


@dataclass(frozen=True)
class PQR:
    p: int | None
    q: int | None
    r: int | None


def binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def compute_pq(e: int, l: int, n: int, b2: int, b3: int, b4: int) -> tuple[int, int]:
    p = n + l * e + b2 - b3 + binom(e - 1, 3)
    q = (n - p) * e + l * b2 + b3 - b4 + binom(e - 1, 4)
    return p, q


def compute_r(l: int, n: int, mu_e2: int) -> int:
    return l + n - mu_e2


def compute_pqr(e: int, l: int, n: int, b2: int, b3: int, b4: int, mu_e2: int | None = None) -> PQR:
    p, q = compute_pq(e, l, n, b2, b3, b4)
    return PQR(p, q, None if mu_e2 is None else compute_r(l, n, mu_e2))


# canonical (p, q, r) of each class, from the multiplicative structure
def canonical_pqr(cls: RingClass) -> PQR:
    if cls.tag == "T":
        return PQR(3, 0, 0)
    if cls.tag == "B":
        return PQR(1, 1, 2)
    if cls.tag == "G":
        return PQR(0, 1, cls.params[0])
    if cls.tag == "H":
        p, q = cls.params
        return PQR(p, q, q)
    if cls.tag == "C":
        # exterior algebra on c generators
        c = cls.params[0]
        return PQR(binom(c, 2), binom(c, 3), binom(c, 2) if c == 3 else 0)
    if cls.tag == "S":
        return PQR(0, 0, 0)
    return PQR(None, None, None)


def _need(b: InvariantBundle, name: str, value, branch: str):
    if value is None:
        raise MissingInvariantError(name, branch)
    return value


def classify_with_parameters(b: InvariantBundle) -> tuple[RingClass, PQR]:
    """Decision tree for codepth <= 3; returns the class and (p, q, r).

    Parameters not needed by the branch taken are filled from the class.
    """
    c = b.c
    if c > 3:
        return CODEPTH_GT_3, PQR(None, None, None)
    if c <= 1:
        cls = C(c)
        return cls, canonical_pqr(cls)
    gorenstein = b.h == 0 and b.n == 1
    if c == 2:
        cls = C(2) if gorenstein else S
        return cls, canonical_pqr(cls)
    if gorenstein:
        r = b.l + 1
        cls = C(3) if r == 3 else G(r)
        return cls, canonical_pqr(cls)
    if b.h == 2:
        return H(0, 0), PQR(0, 0, 0)
    branch = "codepth 3"
    b2 = _need(b, "beta_2", b.beta(2), branch)
    b3 = _need(b, "beta_3", b.beta(3), branch)
    b4 = _need(b, "beta_4", b.beta(4), branch)
    p, q = compute_pq(b.e, b.l, b.n, b2, b3, b4)
    if p < 0 or q < 0:
        raise ConsistencyError(f"negative p={p} or q={q}; Betti numbers are inconsistent")
    if q >= 2 or p == 2 or p >= 4:
        return H(p, q), PQR(p, q, q)
    mu2 = _need(b, "mu_{e-2}", b.mu(b.e - 2), f"p={p}")
    r = compute_r(b.l, b.n, mu2)
    if p == 0:
        return (H(0, q) if q == r else G(r)), PQR(p, q, r)
    if p == 1:
        return (H(1, q) if q == r else B), PQR(p, q, r)
    mu1 = _need(b, "mu_{e-1}", b.mu(b.e - 1), "p=3")
    if mu1 == mu2 + b.l * b.n - 2:
        return T, PQR(p, q, r)
    return H(3, q), PQR(p, q, r)


def classify_from_invariants(b: InvariantBundle) -> RingClass:
    return classify_with_parameters(b)[0]


def beta5_discriminant(l: int, n: int, b2: int, b3: int, b4: int, b5: int, *,
                       e: int = 3, q: int = 0) -> RingClass | str:
    """Separate T from H(3,q) through beta_5.

    tau = b5 - b4 - l*b3 - (n-3)*b2, corrected by q*e - C(e-1, 5) so that the
    test holds for every embedding dimension and q (no correction when q = 0
    and e <= 5).  tau = 1 means T, tau = 0 means H(3,q).
    """
    tau = b5 - b4 - l * b3 - (n - 3) * b2 + q * e - binom(e - 1, 5)
    if tau == 1:
        return T
    if tau == 0:
        return "H(3,q)"
    raise ConsistencyError(f"beta_5 discriminant tau={tau} is neither 0 nor 1")


# -- rational series -------------------------------------------------------------

def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (0,)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_pow(a: Sequence[int], k: int) -> tuple[int, ...]:
    out: tuple[int, ...] = (1,)
    for _ in range(k):
        out = poly_mul(out, a)
    return out


@dataclass(frozen=True)
class RationalSeries:
    """t^shift * numerator(t) / denominator(t), integer coefficients lowest first."""

    shift: int
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "numerator", _trim(self.numerator))
        object.__setattr__(self, "denominator", _trim(self.denominator))
        if self.denominator[0] != 1:
            raise ValueError("denominator must have constant term 1")
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")

    def expand(self, count: int) -> list[int]:
        """First ``count`` coefficients of numerator/denominator (shift excluded)."""
        num, den = self.numerator, self.denominator
        out: list[int] = []
        for k in range(count):
            v = num[k] if k < len(num) else 0
            for j in range(1, min(k, len(den) - 1) + 1):
                v -= den[j] * out[k - j]
            out.append(v)
        return out

    def coefficients(self, count: int) -> list[int]:
        """First ``count`` coefficients of the whole series, shift included."""
        body = self.expand(max(count - self.shift, 0))
        return ([0] * self.shift + body)[:count]

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return (self.shift == other.shift
                and poly_mul(self.numerator, other.denominator)
                == poly_mul(other.numerator, self.denominator))

    def __hash__(self):
        return hash(self.shift)

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denominator": list(self.denominator),
                "shift": self.shift}

    @classmethod
    def from_json(cls, data: dict) -> "RationalSeries":
        return cls(int(data["shift"]), tuple(data["numerator"]), tuple(data["denominator"]))

    def render(self, var: str = "T") -> str:
        from .render import render_series

        return render_series(self, var)

    def __str__(self):
        from .render import series_one_line

        return series_one_line(self)


def series_crosscheck(s: RationalSeries, observed: Sequence[int]) -> bool:
    """True iff the expansion of ``s`` (shift excluded) starts with ``observed``."""
    return s.expand(len(observed)) == list(observed)


# -- the per-class series table --------------------------------------------------

@lru_cache(maxsize=None)
def series_table() -> dict:
    text = resources.files("codepth3").joinpath("data/series_table.yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text)


def _eval_coeffs(exprs: Sequence, env: dict) -> tuple[int, ...]:
    return tuple(evaluate_integer_expression(str(x), env) for x in exprs)


def _table_entry(cls: RingClass, gorenstein: bool) -> dict:
    table = series_table()["classes"]
    if cls.tag == "C":
        return table[f"C{cls.params[0]}"]
    if cls.tag == "G" and gorenstein:
        return table["G_gorenstein"]
    if cls.tag == "H" and cls.params == (0, 0):
        return table["H00"]
    if cls.tag not in table:
        raise ValueError(f"no series for class {cls}")
    return table[cls.tag]


def _env(cls: RingClass, e: int, l: int, n: int) -> dict:
    pqr = canonical_pqr(cls)
    return {"e": e, "l": l, "n": n, "p": pqr.p, "q": pqr.q, "r": pqr.r}


def poincare_series(cls: RingClass, e: int, l: int, n: int) -> RationalSeries:
    """(1+t)^(e-1) / g(t) with the class-dependent denominator g."""
    entry = _table_entry(cls, gorenstein=False)
    env = _env(cls, e, l, n)
    den = _eval_coeffs(entry["poincare_denominator"], env)
    extra = _eval_coeffs(entry.get("poincare_numerator_extra", [1]), env)
    if e >= 1:
        num = poly_mul(poly_pow((1, 1), e - 1), extra)
    else:
        # only the field itself has e = 0; (1+t)^(-1) cancels against extra
        num = (1,)
    return RationalSeries(0, num, den)


def bass_series(cls: RingClass, e: int, c: int, l: int, n: int, gorenstein: bool = False) -> RationalSeries:
    """t^d f(t) / g(t), d = e - c."""
    entry = _table_entry(cls, gorenstein)
    env = _env(cls, e, l, n)
    num = _eval_coeffs(entry["bass_numerator"], env)
    den = _eval_coeffs(entry.get("bass_denominator", entry["poincare_denominator"]), env)
    return RationalSeries(e - c, num, den)

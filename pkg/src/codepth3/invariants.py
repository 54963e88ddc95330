"""Homological invariants of R = Q/I feeding the classification.

e, c, h, l, n come from the minimal resolution of R over Q; the Betti
numbers of k from its minimal resolution over R; the Bass numbers from the
dual of that resolution, after cutting R down to depth zero by random linear
nonzerodivisors when necessary (mu_{d+i}(R) = mu_i(R/(x))).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Sequence

from .groebner import DEFAULT_STEP_LIMIT, _Reducer, colon_equals
from .linalg import Echelon
from .poly import Polynomial, PolynomialRing
from .resolution import (
    GradedComplex,
    hilbert_data,
    ideal_groebner,
    min_resolution_over_Q,
    regularity,
    resolve_residue_field,
)

REDUCTION_FAILURE_MESSAGE = (
    "Failed to compute Bass numbers. You may raise the number of attempts to "
    "compute Bass numbers via a generic reduction with --attempts and try again."
)


class UnsupportedInputError(ValueError):
    """The input lies outside the supported class (homogeneous ideals)."""


class ReductionFailure(RuntimeError):
    """No random draw produced a regular sequence of linear forms."""

    def __init__(self, tries: int):
        super().__init__(REDUCTION_FAILURE_MESSAGE)
        self.tries = tries


@dataclass(frozen=True)
class PresentedRing:
    """Q/I with I inside the square of the irrelevant ideal, minimally generated."""

    ring: PolynomialRing
    generators: tuple[Polynomial, ...]
    zero_ring: bool = False

    @property
    def e(self) -> int:
        return self.ring.nvars

    @property
    def is_regular(self) -> bool:
        return not self.zero_ring and not self.generators

    def groebner(self) -> list[dict]:
        return ideal_groebner(self.ring, self.generators)


@dataclass
class InvariantBundle:
    c: int
    e: int
    h: int
    l: int
    n: int
    betti: list[int] | None = None  # beta_0, beta_1, ...
    bass: list[int] | None = None  # mu_d, mu_{d+1}, ...
    p: int | None = None
    q: int | None = None
    r: int | None = None
    regularity: int | None = None
    resolution_ranks: list[int] = field(default_factory=list)

    @property
    def m(self) -> int:
        return self.l + 1

    @property
    def d(self) -> int:
        return self.e - self.c

    def beta(self, i: int) -> int | None:
        if self.betti is None or i >= len(self.betti):
            return None
        return self.betti[i]

    def mu(self, i: int) -> int | None:
        """mu_i(R) = dim Ext^i(k, R); zero below the depth."""
        if i < self.d:
            return 0
        if self.bass is None or i - self.d >= len(self.bass):
            return None
        return self.bass[i - self.d]


@dataclass(frozen=True)
class ReductionConfig:
    """``attempts`` a gives a**2 tries; each try draws a whole linear sequence."""

    attempts: int = 25
    seed: int = 0
    sample_bound: int = 7

    def __post_init__(self):
        if self.attempts < 1:
            raise ValueError("attempts must be at least 1")

    @property
    def tries(self) -> int:
        return self.attempts ** 2


def _substitute(f: Polynomial, var: int, image: dict, target: PolynomialRing, keep: list[int]) -> dict:
    """Replace variable ``var`` of f by the linear form ``image`` (terms over target)."""
    p = target.characteristic
    out: dict = {}
    powers = [{(0,) * target.nvars: target.field.one}]
    for (m, c) in f.terms.items():
        k = m[var]
        while len(powers) <= k:
            nxt: dict = {}
            for a, x in powers[-1].items():
                for b, y in image.items():
                    mm = tuple(u + v for u, v in zip(a, b))
                    val = nxt.get(mm, 0) + x * y
                    if p:
                        val %= p
                    if val:
                        nxt[mm] = val
                    else:
                        nxt.pop(mm, None)
            powers.append(nxt)
        base = tuple(m[i] for i in keep)
        for a, x in powers[k].items():
            mm = tuple(u + v for u, v in zip(base, a))
            val = out.get(mm, 0) + c * x
            if p:
                val %= p
            if val:
                out[mm] = val
            else:
                out.pop(mm, None)
    return out


def presented_ring(ring: PolynomialRing, gens: Sequence[Polynomial]) -> PresentedRing:
    """Normalize Q/I: detect the unit ideal, eliminate linear generators and
    drop redundant ones so that I sits minimally inside the square of the
    irrelevant ideal."""
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if g.ring != ring:
            raise ValueError("generator does not belong to the declared ring")
        if not g.is_homogeneous():
            raise UnsupportedInputError(
                f"only homogeneous ideals are supported; {g} is not homogeneous"
            )
    if any(g.total_degree() == 0 for g in gens):
        return PresentedRing(ring, (), zero_ring=True)
    F = ring.field
    p = ring.characteristic
    while True:
        linear = [g for g in gens if g.total_degree() == 1]
        if not linear:
            break
        f = linear[0]
        # eliminate the last variable occurring in f
        var = max(next(i for i, e in enumerate(m) if e) for m in f.terms)
        unit = tuple(int(i == var) for i in range(ring.nvars))
        inv = F.inv(f.terms[unit])
        keep = [i for i in range(ring.nvars) if i != var]
        target = PolynomialRing(F, [ring.variables[i] for i in keep], ring.order)
        image = {}
        for m, c in f.terms.items():
            if m == unit:
                continue
            v = -c * inv
            if p:
                v %= p
            image[tuple(m[i] for i in keep)] = v
        gens = [Polynomial(target, _substitute(g, var, image, target, keep)) for g in gens if g is not f]
        gens = [g for g in gens if not g.is_zero()]
        ring = target
    # minimal generating set, degree by degree
    kept: list[Polynomial] = []
    gb: list[dict] = []

    rk = ring.key
    for g in sorted(gens, key=lambda g: g.total_degree()):
        red = _Reducer(lambda t: rk(t[1]), p)
        for b in gb:
            red.add({(0, m): c for m, c in b.items()})
        if red.reduce({(0, m): c for m, c in g.terms.items()}):
            kept.append(g)
            gb = ideal_groebner(ring, kept)
    return PresentedRing(ring, tuple(kept))


def basic_invariants(P: PresentedRing, *, step_limit: int = DEFAULT_STEP_LIMIT) -> InvariantBundle:
    """c, e, h, l, n (and the regularity) from the minimal resolution over Q."""
    if P.zero_ring:
        raise ValueError("the zero ring has no invariants")
    F = min_resolution_over_Q(P.ring, P.generators, step_limit=step_limit)
    c = F.length
    e = P.e
    H = hilbert_data(F)
    h = H.dimension - (e - c)
    l = F.modules[1].rank - 1 if c >= 1 else -1
    n = F.modules[c].rank
    return InvariantBundle(c=c, e=e, h=h, l=l, n=n, regularity=regularity(F),
                           resolution_ranks=F.ranks)


def betti_numbers(P: PresentedRing, upto: int) -> list[int]:
    """beta_0 .. beta_upto of the residue field over R."""
    C = resolve_residue_field(P.ring, P.groebner(), upto)
    return C.ranks


def betti_of_residue_field(P: PresentedRing) -> tuple[int, int, int]:
    b = betti_numbers(P, 4)
    return b[2], b[3], b[4]


def random_linear_form(ring: PolynomialRing, rng: random.Random, bound: int) -> Polynomial:
    F = ring.field
    terms = {}
    for i in range(ring.nvars):
        c = F.sample(rng, bound)
        if c:
            terms[tuple(int(j == i) for j in range(ring.nvars))] = c
    return Polynomial(ring, terms)


def generic_reduction(P: PresentedRing, d: int, cfg: ReductionConfig = ReductionConfig()) -> PresentedRing:
    """Presentation of R/(l_1..l_d) for random linear nonzerodivisors l_i.

    Every try draws a full sequence; a draw that is zero, a zerodivisor or
    fails to lower the embedding dimension by one spoils the try.
    """
    if d <= 0:
        raise ValueError("generic reduction needs positive depth")
    rng = random.Random(cfg.seed)
    for _ in range(cfg.tries):
        cur = P
        ok = True
        for _ in range(d):
            ell = random_linear_form(cur.ring, rng, cfg.sample_bound)
            if ell.is_zero() or not colon_equals(cur.generators, ell):
                ok = False
                break
            nxt = presented_ring(cur.ring, list(cur.generators) + [ell])
            if nxt.zero_ring or nxt.e != cur.e - 1:
                ok = False
                break
            cur = nxt
        if ok:
            return cur
    raise ReductionFailure(cfg.tries)


def ext_dimension(C: GradedComplex, i: int, reg: int) -> int:
    """dim_k Ext^i_R(k, R) from the dual of a resolution of k of length > i.

    Ext^i(k, R) vanishes in degrees above reg(R) - i, and Hom(F_i, R) vanishes
    below minus the top twist of F_i, so the count runs over a finite range.
    """
    A = C.quotient
    if A is None:
        raise ValueError("complex must be over a quotient ring")
    if C.length < i + 1:
        raise ValueError(f"need a resolution of length at least {i + 1}")
    p = A.p
    tw = [M.twists for M in C.modules]

    def rows(k):
        # for each generator g of F_k, the entries (g', a) of d_{k+1} in row g
        out = [[] for _ in tw[k]]
        for gp, col in enumerate(C.maps[k].columns):
            for g, a in col.items():
                if a:
                    out[g].append((gp, a))
        return out

    def rank_of(k, j, row_data):
        """rank of (phi -> phi o d_{k+1}) : Hom(F_k, R)_j -> Hom(F_{k+1}, R)_j."""
        index: dict = {}
        for gp, dg in enumerate(tw[k + 1]):
            for u in A.basis(j + dg):
                index[(gp, u)] = len(index)
        if not index:
            return 0
        E = Echelon(p)
        for g, dg in enumerate(tw[k]):
            for s in A.basis(j + dg):
                vec: dict = {}
                for gp, a in row_data[g]:
                    for m, c in a.items():
                        mm = tuple(x + y for x, y in zip(m, s))
                        for u, b in A.nf_monomial(mm).items():
                            key = index[(gp, u)]
                            v = vec.get(key, 0) + c * b
                            if p:
                                v %= p
                            if v:
                                vec[key] = v
                            else:
                                vec.pop(key, None)
                if vec:
                    E.add(vec)
        return E.rank

    out_rows = rows(i)
    in_rows = rows(i - 1) if i >= 1 else None
    total = 0
    for j in range(-max(tw[i]), reg - i + 1):
        dim = sum(len(A.basis(j + dg)) for dg in tw[i])
        if not dim:
            continue
        total += dim - rank_of(i, j, out_rows)
        if in_rows is not None:
            total -= rank_of(i - 1, j, in_rows)
    return total


def depth_zero_model(P: PresentedRing, bundle: InvariantBundle,
                     cfg: ReductionConfig = ReductionConfig()) -> PresentedRing:
    return generic_reduction(P, bundle.d, cfg) if bundle.d > 0 else P


def bass_numbers(P: PresentedRing, bundle: InvariantBundle, cfg: ReductionConfig = ReductionConfig(),
                 count: int = 3) -> list[int]:
    """mu_d, ..., mu_{d+count-1} of R, computed on a depth-zero reduction."""
    Rbar = depth_zero_model(P, bundle, cfg)
    if Rbar.is_regular:
        return [1] + [0] * (count - 1)
    reg = regularity(min_resolution_over_Q(Rbar.ring, Rbar.generators))
    C = resolve_residue_field(Rbar.ring, Rbar.groebner(), count)
    return [ext_dimension(C, i, reg) for i in range(count)]


def bass_numbers_direct(P: PresentedRing, upto: int) -> list[int]:
    """mu_0 .. mu_upto straight from R, with no reduction (small rings only)."""
    if P.is_regular:
        return [int(i == P.e) for i in range(upto + 1)]
    reg = regularity(min_resolution_over_Q(P.ring, P.generators))
    C = resolve_residue_field(P.ring, P.groebner(), upto + 1)
    return [ext_dimension(C, i, reg) for i in range(upto + 1)]


def with_bass(bundle: InvariantBundle, bass: list[int]) -> InvariantBundle:
    return replace(bundle, bass=bass)

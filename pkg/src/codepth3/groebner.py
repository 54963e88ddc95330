"""Buchberger's algorithm for ideals and submodules of free modules.

Module elements are term dicts keyed by ``(component, exponents)``; an ideal
is treated as a submodule of the rank-one free module.  Orders on module terms
are given as key functions (larger key == larger term).
"""

from __future__ import annotations

import heapq
import itertools
from typing import Callable, Iterable, Sequence

from .poly import (
    Polynomial,
    PolynomialRing,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_STEP_LIMIT = 10**6


class ResourceLimitError(RuntimeError):
    """Raised when a computation exceeds its configured step budget."""


class ModuleVector:
    """Element of a free module ``Q^rank`` over a polynomial ring."""

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring: PolynomialRing, rank: int, terms: dict | None = None):
        self.ring = ring
        self.rank = rank
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def from_components(cls, components: Sequence[Polynomial]) -> "ModuleVector":
        if not components:
            raise ValueError("need at least one component")
        ring = components[0].ring
        terms = {}
        for i, f in enumerate(components):
            if f.ring != ring:
                raise ValueError("components live in different rings")
            for m, c in f.terms.items():
                terms[(i, m)] = c
        return cls(ring, len(components), terms)

    def components(self) -> list[Polynomial]:
        comps: list[dict] = [{} for _ in range(self.rank)]
        for (i, m), c in self.terms.items():
            comps[i][m] = c
        return [Polynomial(self.ring, t) for t in comps]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, ModuleVector) and self.ring == other.ring
                and self.rank == other.rank and self.terms == other.terms)

    def __repr__(self):
        return "(" + ", ".join(map(repr, self.components())) + ")"


def pot_key(ring: PolynomialRing) -> Callable:
    """Position over term: lower component index wins, then the ring order."""
    rk = ring.key
    return lambda t: (-t[0], rk(t[1]))


def top_key(ring: PolynomialRing) -> Callable:
    rk = ring.key
    return lambda t: (rk(t[1]), -t[0])


def vec_add(f: dict, g: dict, p: int, scale=1) -> dict:
    out = dict(f)
    for k, c in g.items():
        v = out.get(k, 0) + scale * c
        if p:
            v %= p
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def vec_mul_term(f: dict, c, mono, p: int) -> dict:
    out = {}
    for (i, m), a in f.items():
        v = a * c
        if p:
            v %= p
        if v:
            out[(i, mono_mul(m, mono))] = v
    return out


def _inv(c, p):
    return pow(int(c), -1, p) if p else 1 / c


class _Reducer:
    """Leading-term index used by normal form computations."""

    def __init__(self, key: Callable, p: int):
        self.key = key
        self.p = p
        self.by_comp: dict[int, list] = {}

    def add(self, vec: dict):
        i, m = max(vec, key=self.key)
        self.by_comp.setdefault(i, []).append((m, vec[(i, m)], vec))

    def find(self, term):
        for m, lc, vec in self.by_comp.get(term[0], ()):
            if mono_divides(m, term[1]):
                return m, lc, vec
        return None

    def reduce(self, v: dict, full: bool = True, track: list | None = None) -> dict:
        """Normal form of ``v``.  With ``track`` a list of (basis_index, coeff, mono)."""
        key, p = self.key, self.p
        v = dict(v)
        rest = {}
        while v:
            t = max(v, key=key)
            hit = self.find(t)
            if hit is None:
                if not full:
                    rest.update(v)
                    return rest
                rest[t] = v.pop(t)
                continue
            m, lc, vec = hit
            q = mono_div(t[1], m)
            c = v[t] * _inv(lc, p)
            if p:
                c %= p
            if track is not None:
                track.append((id(vec), c, q))
            v = vec_add(v, vec_mul_term(vec, c, q, p), p, -1)
        return rest


class GroebnerBasis:
    """Reduced Gröbner basis of an ideal (``rank is None``) or a submodule."""

    def __init__(self, ring: PolynomialRing, generators: list[dict], key: Callable,
                 rank: int | None, reduced: bool = True):
        self.ring = ring
        self.vectors = generators
        self.key = key
        self.rank = rank
        self.reduced = reduced
        self._reducer = _Reducer(key, ring.characteristic)
        for g in generators:
            self._reducer.add(g)

    @property
    def generators(self) -> list:
        if self.rank is None:
            return [Polynomial(self.ring, {m: c for (_, m), c in g.items()}) for g in self.vectors]
        return [ModuleVector(self.ring, self.rank, g) for g in self.vectors]

    def leading_terms(self) -> list[tuple]:
        return [max(g, key=self.key) for g in self.vectors]

    def reduce(self, v: dict) -> dict:
        return self._reducer.reduce(v)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"GroebnerBasis({self.generators!r})"


def _as_vectors(gens) -> tuple[PolynomialRing, int | None, list[dict]]:
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    first = gens[0]
    ring = first.ring
    if isinstance(first, Polynomial):
        rank = None
        vecs = []
        for g in gens:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise ValueError("generators live in different rings")
            vecs.append({(0, m): c for m, c in g.terms.items()})
    else:
        rank = first.rank
        vecs = []
        for g in gens:
            if g.ring != ring or g.rank != rank:
                raise ValueError("generators live in different modules")
            vecs.append(dict(g.terms))
    return ring, rank, vecs


def buchberger_vectors(vecs: Iterable[dict], key: Callable, p: int, *,
                       ideal: bool = False, step_limit: int = DEFAULT_STEP_LIMIT) -> list[dict]:
    """Reduced, monic Gröbner basis of the module spanned by ``vecs``.

    Pairs are processed by increasing lcm degree, pruned with the
    Gebauer-Möller update; the product criterion is used only for ideals.
    """
    basis: list[dict] = []
    leads: list[tuple] = []
    red = _Reducer(key, p)
    pairs: list = []
    counter = itertools.count()
    live: set = set()

    def lcm_of(i, j):
        return mono_lcm(leads[i][1], leads[j][1])

    def add(h: dict):
        lc = h[max(h, key=key)]
        h = vec_mul_term(h, _inv(lc, p), (0,) * len(next(iter(h))[1]), p)
        k = len(basis)
        basis.append(h)
        leads.append(max(h, key=key))
        red.add(h)
        comp, mh = leads[k]
        cand = [i for i in range(k) if leads[i][0] == comp]
        # criteria M and F on the new pairs
        kept: list[int] = []
        lcms = {i: lcm_of(i, k) for i in cand}
        for idx, i in enumerate(cand):
            li = lcms[i]
            coprime = ideal and li == mono_mul(leads[i][1], mh)
            if coprime:
                kept.append(i)
                continue
            dominated = False
            for j in cand[idx + 1:]:
                if mono_divides(lcms[j], li):
                    dominated = True
                    break
            if not dominated:
                for j in kept:
                    if mono_divides(lcms[j], li):
                        dominated = True
                        break
            if not dominated:
                kept.append(i)
        new_pairs = [i for i in kept if not (ideal and lcms[i] == mono_mul(leads[i][1], mh))]
        # criterion B on the old pairs
        for pr in list(live):
            i, j = pr
            if leads[i][0] != comp:
                continue
            lij = lcm_of(i, j)
            if mono_divides(mh, lij) and lcm_of(i, k) != lij and lcm_of(j, k) != lij:
                live.discard(pr)
        for i in new_pairs:
            pr = (i, k)
            live.add(pr)
            heapq.heappush(pairs, (sum(lcms[i]), next(counter), pr))

    for v in sorted((dict(v) for v in vecs if v), key=lambda v: key(max(v, key=key))):
        r = red.reduce(v)
        if r:
            add(r)

    steps = 0
    while pairs:
        _, _, pr = heapq.heappop(pairs)
        if pr not in live:
            continue
        live.discard(pr)
        steps += 1
        if steps > step_limit:
            raise ResourceLimitError(f"Buchberger exceeded {step_limit} pair reductions")
        i, j = pr
        L = lcm_of(i, j)
        s = vec_add(
            vec_mul_term(basis[i], 1, mono_div(L, leads[i][1]), p),
            vec_mul_term(basis[j], 1, mono_div(L, leads[j][1]), p),
            p, -1,
        )
        r = red.reduce(s)
        if r:
            add(r)

    return interreduce(basis, key, p)


def interreduce(basis: list[dict], key: Callable, p: int) -> list[dict]:
    """Drop redundant generators, fully tail-reduce, normalize and sort."""
    leads = [max(b, key=key) for b in basis]
    keep = []
    for i, (ci, mi) in enumerate(leads):
        redundant = False
        for j, (cj, mj) in enumerate(leads):
            if j == i or cj != ci or not mono_divides(mj, mi):
                continue
            if mj != mi or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    kept = [basis[i] for i in keep]
    out = []
    for idx, b in enumerate(kept):
        red = _Reducer(key, p)
        for jdx, other in enumerate(kept):
            if jdx != idx:
                red.add(other)
        lead = max(b, key=key)
        tail = {k: c for k, c in b.items() if k != lead}
        nb = red.reduce(tail)
        nb[lead] = b[lead]
        inv = _inv(b[lead], p)
        nb = {k: (c * inv % p if p else c * inv) for k, c in nb.items()}
        out.append(nb)
    out.sort(key=lambda v: key(max(v, key=key)), reverse=True)
    return out


def buchberger(gens, order: str | Callable = "pot", *, step_limit: int = DEFAULT_STEP_LIMIT) -> GroebnerBasis:
    """Reduced Gröbner basis of polynomials (an ideal) or module vectors.

    ``order`` selects the module extension of the ring order: ``"pot"``,
    ``"top"`` or an explicit key on ``(component, exponents)`` terms.
    """
    ring, rank, vecs = _as_vectors(gens)
    if rank is None:
        rk = ring.key
        key = lambda t: rk(t[1])  # noqa: E731
    elif callable(order):
        key = order
    elif order == "pot":
        key = pot_key(ring)
    elif order == "top":
        key = top_key(ring)
    else:
        raise ValueError(f"unknown module order {order!r}")
    basis = buchberger_vectors(vecs, key, ring.characteristic, ideal=rank is None, step_limit=step_limit)
    return GroebnerBasis(ring, basis, key, rank)


def normal_form(f, G: GroebnerBasis):
    """Remainder of ``f`` on division by ``G``; zero iff ``f`` lies in the span."""
    if isinstance(f, Polynomial):
        if G.rank is not None or f.ring != G.ring:
            raise ValueError("polynomial and basis do not match")
        r = G.reduce({(0, m): c for m, c in f.terms.items()})
        return Polynomial(f.ring, {m: c for (_, m), c in r.items()})
    if f.ring != G.ring or f.rank != G.rank:
        raise ValueError("vector and basis do not match")
    return ModuleVector(f.ring, f.rank, G.reduce(f.terms))


def s_pairs_reduce_to_zero(G: GroebnerBasis) -> bool:
    """Buchberger's criterion checked over every pair, with no pruning."""
    p = G.ring.characteristic
    vecs, key = G.vectors, G.key
    leads = [max(v, key=key) for v in vecs]
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if leads[i][0] != leads[j][0]:
                continue
            L = mono_lcm(leads[i][1], leads[j][1])
            s = vec_add(
                vec_mul_term(vecs[i], _inv(vecs[i][leads[i]], p), mono_div(L, leads[i][1]), p),
                vec_mul_term(vecs[j], _inv(vecs[j][leads[j]], p), mono_div(L, leads[j][1]), p),
                p, -1,
            )
            if G.reduce(s):
                return False
    return True


def syzygies(vectors: Sequence, *, step_limit: int = DEFAULT_STEP_LIMIT) -> list[ModuleVector]:
    """Generators of the module of relations among ``vectors``.

    Elimination via the augmented module ``(v_i | e_i)`` with the original
    components ranked first; basis elements vanishing there are syzygies.
    Polynomials are accepted as rank-one vectors.
    """
    ring, rank, vecs = _as_vectors(vectors)
    n = rank or 1
    r = len(vecs)
    aug = []
    for i, v in enumerate(vecs):
        w = dict(v)
        w[(n + i, (0,) * ring.nvars)] = ring.field.one
        aug.append(w)
    key = pot_key(ring)
    basis = buchberger_vectors(aug, key, ring.characteristic, step_limit=step_limit)
    out = []
    for b in basis:
        if all(i >= n for i, _ in b):
            out.append(ModuleVector(ring, r, {(i - n, m): c for (i, m), c in b.items()}))
    return out


def colon_equals(ideal: Sequence[Polynomial], ell: Polynomial, *,
                 step_limit: int = DEFAULT_STEP_LIMIT) -> bool:
    """True iff ``(I : ell) == I``, i.e. ``ell`` is a nonzerodivisor on ``Q/I``."""
    if ell.is_zero():
        raise ValueError("colon by the zero polynomial")
    gens = [g for g in ideal if not g.is_zero()]
    if not gens:
        return True
    G = buchberger(gens, step_limit=step_limit)
    for s in syzygies([ell] + gens, step_limit=step_limit):
        first = s.components()[0]
        if not normal_form(first, G).is_zero():
            return False
    return True

"""Graded free resolutions.

Over the polynomial ring Q the minimal resolution of Q/I is built with
Schreyer's algorithm and then minimalized by cancelling unit entries.  Over
R = Q/I the (infinite) minimal resolution of the residue field is built
degree by degree with linear algebra on graded pieces, up to a requested
homological step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .groebner import DEFAULT_STEP_LIMIT, ResourceLimitError, buchberger_vectors
from .linalg import Echelon
from .poly import (
    Polynomial,
    PolynomialRing,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    terms_add,
    terms_mul,
    terms_scale,
)


@dataclass(frozen=True)
class GradedFreeModule:
    twists: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)


class GradedMatrix:
    """Map of graded free modules; ``columns[j]`` is ``{row: term dict}``."""

    def __init__(self, ring: PolynomialRing, source: GradedFreeModule,
                 target: GradedFreeModule, columns: list[dict]):
        self.ring = ring
        self.source = source
        self.target = target
        self.columns = columns

    @property
    def shape(self) -> tuple[int, int]:
        return self.target.rank, self.source.rank

    def entry(self, i: int, j: int) -> Polynomial:
        return Polynomial(self.ring, self.columns[j].get(i, {}))

    def entry_degrees_ok(self) -> bool:
        """Every nonzero entry is homogeneous of degree source twist - target twist."""
        for j, col in enumerate(self.columns):
            for i, f in col.items():
                want = self.source.twists[j] - self.target.twists[i]
                if any(sum(m) != want for m in f):
                    return False
        return True

    def has_unit_entries(self) -> bool:
        return any(
            any(sum(m) == 0 for m in f) for col in self.columns for f in col.values() if f
        )

    def __repr__(self):
        return f"GradedMatrix({self.target.rank}x{self.source.rank})"


class GradedComplex:
    """``F_0 <- F_1 <- ... <- F_n``; ``maps[i]`` is the differential F_{i+1} -> F_i.

    When ``quotient`` is set, entries are normal forms in that quotient ring.
    """

    def __init__(self, ring: PolynomialRing, modules: list[GradedFreeModule],
                 maps: list[GradedMatrix], quotient: "GradedQuotient | None" = None):
        if len(maps) != max(len(modules) - 1, 0):
            raise ValueError("need one map between each pair of consecutive modules")
        self.ring = ring
        self.modules = modules
        self.maps = maps
        self.quotient = quotient

    @property
    def ranks(self) -> list[int]:
        return [F.rank for F in self.modules]

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def differential(self, i: int) -> GradedMatrix:
        """The map F_i -> F_{i-1}."""
        return self.maps[i - 1]

    def _mul(self, f: dict, g: dict) -> dict:
        prod = terms_mul(f, g, self.ring.characteristic)
        return self.quotient.nf(prod) if self.quotient is not None else prod

    def compose_is_zero(self, i: int) -> bool:
        """Check d_i o d_{i+1} = 0 exactly."""
        p = self.ring.characteristic
        d_low, d_high = self.maps[i - 1], self.maps[i]
        for col in d_high.columns:
            acc: dict = {}
            for k, f in col.items():
                for r, g in d_low.columns[k].items():
                    acc[r] = terms_add(acc.get(r, {}), self._mul(g, f), p)
            if any(acc.values()):
                return False
        return True

    def is_complex(self) -> bool:
        return all(self.compose_is_zero(i) for i in range(1, len(self.maps)))

    def is_minimal(self) -> bool:
        return not any(M.has_unit_entries() for M in self.maps)

    def __repr__(self):
        return f"GradedComplex(ranks={self.ranks})"


# -- quotient rings in graded pieces ------------------------------------------

class GradedQuotient:
    """R = Q/I for homogeneous I, through standard monomials of a reduced GB."""

    def __init__(self, ring: PolynomialRing, gb: Sequence[dict]):
        self.ring = ring
        self.p = ring.characteristic
        self.n = ring.nvars
        self.rules = []
        for g in gb:
            lead = max(g, key=ring.key)
            inv = ring.field.inv(g[lead])
            tail = {m: -c * inv for m, c in g.items() if m != lead}
            if self.p:
                tail = {m: c % self.p for m, c in tail.items() if c % self.p}
            self.rules.append((lead, tail))
        self.leads = [r[0] for r in self.rules]
        self.unit = any(sum(m) == 0 for m in self.leads)
        self._basis: dict[int, list] = {}
        self._index: dict[int, dict] = {}
        self._nf: dict = {}

    @classmethod
    def from_ideal(cls, ring: PolynomialRing, gens: Sequence[Polynomial]) -> "GradedQuotient":
        vecs = [{(0, m): c for m, c in g.terms.items()} for g in gens if g.terms]
        if not vecs:
            return cls(ring, [])
        rk = ring.key
        gb = buchberger_vectors(vecs, lambda t: rk(t[1]), ring.characteristic, ideal=True)
        return cls(ring, [{m: c for (_, m), c in g.items()} for g in gb])

    @property
    def max_relation_degree(self) -> int:
        return max((sum(m) for m in self.leads), default=0)

    def is_standard(self, m) -> bool:
        return not any(mono_divides(l, m) for l in self.leads)

    def basis(self, t: int) -> list:
        """Standard monomials of degree t, in decreasing order."""
        if t in self._basis:
            return self._basis[t]
        if t < 0 or self.unit:
            out = []
        elif t == 0:
            out = [(0,) * self.n]
        else:
            seen = set()
            for m in self.basis(t - 1):
                for v in range(self.n):
                    u = m[:v] + (m[v] + 1,) + m[v + 1:]
                    if u not in seen and self.is_standard(u):
                        seen.add(u)
            out = sorted(seen, key=self.ring.key, reverse=True)
        self._basis[t] = out
        self._index[t] = {m: i for i, m in enumerate(out)}
        return out

    def index(self, t: int) -> dict:
        self.basis(t)
        return self._index[t]

    def hilbert_function(self, t: int) -> int:
        return len(self.basis(t))

    def nf_monomial(self, m) -> dict:
        memo = self._nf
        hit = memo.get(m)
        if hit is not None:
            return hit
        p = self.p
        stack = [m]
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            rule = None
            for lead, tail in self.rules:
                if mono_divides(lead, cur):
                    rule = (lead, tail)
                    break
            if rule is None:
                memo[cur] = {cur: 1 if p else self.ring.field.one}
                stack.pop()
                continue
            q = mono_div(cur, rule[0])
            deps = [mono_mul(q, u) for u in rule[1]]
            missing = [d for d in deps if d not in memo]
            if missing:
                stack.extend(missing)
                continue
            res: dict = {}
            for u, c in rule[1].items():
                for s, a in memo[mono_mul(q, u)].items():
                    v = res.get(s, 0) + c * a
                    if p:
                        v %= p
                    if v:
                        res[s] = v
                    else:
                        res.pop(s, None)
            memo[cur] = res
            stack.pop()
        return memo[m]

    def nf(self, f: dict) -> dict:
        p = self.p
        out: dict = {}
        for m, c in f.items():
            for s, a in self.nf_monomial(m).items():
                v = out.get(s, 0) + c * a
                if p:
                    v %= p
                if v:
                    out[s] = v
                else:
                    out.pop(s, None)
        return out

    def multiply(self, f: dict, g: dict) -> dict:
        return self.nf(terms_mul(f, g, self.p))


# -- Schreyer resolution over Q ---------------------------------------------

def _divide_tracked(v: dict, basis: list[dict], leads: list[tuple], key: Callable, p: int,
                    inv: Callable) -> dict[int, dict]:
    """Quotients of v on division by basis; v must reduce to zero."""
    quot: dict[int, dict] = {}
    by_comp: dict[int, list[int]] = {}
    for idx, (c, _) in enumerate(leads):
        by_comp.setdefault(c, []).append(idx)
    v = dict(v)
    while v:
        t = max(v, key=key)
        for idx in by_comp.get(t[0], ()):
            if mono_divides(leads[idx][1], t[1]):
                break
        else:
            raise ArithmeticError("S-vector did not reduce to zero; input is not a Gröbner basis")
        q = mono_div(t[1], leads[idx][1])
        c = v[t] * inv(basis[idx][leads[idx]])
        if p:
            c %= p
        qd = quot.setdefault(idx, {})
        nv = qd.get(q, 0) + c
        if p:
            nv %= p
        if nv:
            qd[q] = nv
        else:
            qd.pop(q, None)
        for (i, m), a in basis[idx].items():
            k = (i, mono_mul(m, q))
            nv = v.get(k, 0) - c * a
            if p:
                nv %= p
            if nv:
                v[k] = nv
            else:
                v.pop(k, None)
    return quot


def schreyer_resolution(ring: PolynomialRing, gb: Sequence[dict], *,
                        step_limit: int = DEFAULT_STEP_LIMIT) -> GradedComplex:
    """Free resolution of Q/I from a Gröbner basis ``gb`` (term dicts) of I.

    Each stage's syzygies come from S-pair standard representations and form a
    Gröbner basis for the induced Schreyer order, so no completion is needed.
    Generators are sorted by one variable per stage, which bounds the length
    by the number of variables.  The output is usually not minimal.
    """
    p = ring.characteristic
    inv = ring.field.inv
    rkey = ring.key
    n = ring.nvars
    zero = (0,) * n
    modules = [GradedFreeModule((0,))]
    maps: list[GradedMatrix] = []
    # Schreyer data of the current target module: total monomial and tie tuple per basis element
    frame_mono = [zero]
    frame_tie: list[tuple] = [()]
    vectors = [{(0, m): c for m, c in g.items()} for g in gb if g]
    stage = 0
    budget = step_limit
    while vectors:
        def key(t, fm=frame_mono, ft=frame_tie):
            return (rkey(mono_mul(t[1], fm[t[0]])), ft[t[0]])

        var = stage % n if n else 0
        leads = [max(v, key=key) for v in vectors]
        order = sorted(range(len(vectors)),
                       key=lambda a: (leads[a][0], -leads[a][1][var] if n else 0))
        vectors = [vectors[a] for a in order]
        leads = [leads[a] for a in order]

        tw_prev = modules[-1].twists
        twists = tuple(tw_prev[c] + sum(m) for c, m in leads)
        src = GradedFreeModule(twists)
        cols = []
        for v in vectors:
            col: dict = {}
            for (i, m), c in v.items():
                col.setdefault(i, {})[m] = c
            cols.append(col)
        maps.append(GradedMatrix(ring, src, modules[-1], cols))
        modules.append(src)

        # pairs with minimal leading monomials per first index
        syz = []
        for a in range(len(vectors)):
            cands = []
            for b in range(a + 1, len(vectors)):
                if leads[b][0] != leads[a][0]:
                    continue
                L = mono_lcm(leads[a][1], leads[b][1])
                cands.append((mono_div(L, leads[a][1]), b, L))
            minimal = []
            for q, b, L in cands:
                if any(mono_divides(q2, q) and (q2 != q or b2 < b) for q2, b2, _ in cands):
                    continue
                minimal.append((q, b, L))
            for qa, b, L in minimal:
                budget -= 1
                if budget < 0:
                    raise ResourceLimitError(f"resolution exceeded {step_limit} pair reductions")
                qb = mono_div(L, leads[b][1])
                ca = inv(vectors[a][leads[a]])
                cb = inv(vectors[b][leads[b]])
                s: dict = {}
                for (i, m), c in vectors[a].items():
                    s[(i, mono_mul(m, qa))] = c * ca % p if p else c * ca
                for (i, m), c in vectors[b].items():
                    k = (i, mono_mul(m, qb))
                    nv = s.get(k, 0) - c * cb
                    if p:
                        nv %= p
                    if nv:
                        s[k] = nv
                    else:
                        s.pop(k, None)
                quot = _divide_tracked(s, vectors, leads, key, p, inv)
                w: dict = {(a, qa): ca}
                k = (b, qb)
                w[k] = (w.get(k, 0) - cb) % p if p else w.get(k, 0) - cb
                for idx, qd in quot.items():
                    for m, c in qd.items():
                        k = (idx, m)
                        nv = w.get(k, 0) - c
                        if p:
                            nv %= p
                        if nv:
                            w[k] = nv
                        else:
                            w.pop(k, None)
                syz.append(w)
        frame_mono = [mono_mul(m, frame_mono[c]) for c, m in leads]
        frame_tie = [frame_tie[c] + (-a,) for a, (c, _) in enumerate(leads)]
        vectors = [w for w in syz if w]
        stage += 1
        if stage > n + 1:
            raise ArithmeticError("Schreyer resolution failed to terminate")
    return GradedComplex(ring, modules, maps)


def minimalize(C: GradedComplex) -> GradedComplex:
    """Cancel unit entries until no differential has a degree-0 entry.

    For a unit ``u`` at (a, b) of d: F_k -> F_{k-1}, basis element b of F_k
    and a of F_{k-1} are dropped, d becomes ``d - d[:, b] u^-1 d[a, :]`` on
    the rest, and the neighbouring maps simply lose the matching row/column.
    """
    ring = C.ring
    p = ring.characteristic
    inv = ring.field.inv
    nf = C.quotient.nf if C.quotient is not None else (lambda f: f)
    twists = [list(F.twists) for F in C.modules]
    # maps[k]: list of columns (F_{k+1} basis), each {row (F_k basis): terms}
    maps = [[{i: dict(f) for i, f in col.items() if f} for col in M.columns] for M in C.maps]

    def drop_row(k, a):
        for col in maps[k]:
            col.pop(a, None)
            for i in sorted([i for i in col if i > a]):
                col[i - 1] = col.pop(i)

    for k in range(len(maps)):
        while True:
            found = None
            for b, col in enumerate(maps[k]):
                for a, f in col.items():
                    if len(f) == 1:
                        (m, u), = f.items()
                        if sum(m) == 0:
                            found = (a, b, u)
                            break
                if found:
                    break
            if found is None:
                break
            a, b, u = found
            ui = inv(u)
            colb = maps[k][b]
            for j, col in enumerate(maps[k]):
                if j == b or a not in col:
                    continue
                factor = terms_scale(col[a], ui, p)
                for i, f in colb.items():
                    upd = terms_add(col.get(i, {}), nf(terms_mul(f, factor, p)), p, -1)
                    if upd:
                        col[i] = upd
                    else:
                        col.pop(i, None)
            del maps[k][b]
            drop_row(k, a)
            del twists[k][a]
            del twists[k + 1][b]
            if k + 1 < len(maps):
                drop_row(k + 1, b)
            if k >= 1:
                del maps[k - 1][a]
    while len(twists) > 1 and not twists[-1]:
        twists.pop()
        maps.pop()
    modules = [GradedFreeModule(tuple(t)) for t in twists]
    out = [GradedMatrix(ring, modules[k + 1], modules[k], maps[k]) for k in range(len(maps))]
    return GradedComplex(ring, modules, out, C.quotient)


def ideal_groebner(ring: PolynomialRing, gens: Sequence[Polynomial], *,
                   step_limit: int = DEFAULT_STEP_LIMIT) -> list[dict]:
    vecs = [{(0, m): c for m, c in g.terms.items()} for g in gens if g.terms]
    if not vecs:
        return []
    rk = ring.key
    gb = buchberger_vectors(vecs, lambda t: rk(t[1]), ring.characteristic, ideal=True,
                            step_limit=step_limit)
    return [{m: c for (_, m), c in g.items()} for g in gb]


def min_resolution_over_Q(ring: PolynomialRing, gens: Sequence[Polynomial], *,
                          step_limit: int = DEFAULT_STEP_LIMIT) -> GradedComplex:
    """Minimal graded free resolution of Q/I over Q."""
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("resolutions require homogeneous generators")
    gb = ideal_groebner(ring, gens, step_limit=step_limit)
    return minimalize(schreyer_resolution(ring, gb, step_limit=step_limit))


# -- Hilbert data ------------------------------------------------------------

@dataclass(frozen=True)
class HilbertData:
    numerator: tuple[int, ...]  # K(t), lowest degree first
    nvars: int
    dimension: int
    multiplicity_one_minus_t: int


def _divide_one_minus_t(coeffs: list[int]) -> list[int] | None:
    if sum(coeffs) != 0:
        return None
    out, acc = [], 0
    for c in coeffs[:-1]:
        acc += c
        out.append(acc)
    return out


def hilbert_data(F: GradedComplex) -> HilbertData:
    """K(t) = sum (-1)^i t^twist over the resolution, and the Krull dimension."""
    deg = max((max(M.twists, default=0) for M in F.modules), default=0)
    K = [0] * (deg + 1)
    for i, M in enumerate(F.modules):
        for t in M.twists:
            K[t] += (-1) ** i
    while len(K) > 1 and K[-1] == 0:
        K.pop()
    mult, cur = 0, K
    while any(cur):
        nxt = _divide_one_minus_t(cur)
        if nxt is None:
            break
        mult += 1
        cur = nxt or [0]
    e = F.ring.nvars
    return HilbertData(tuple(K), e, e - mult, mult)


def regularity(F: GradedComplex) -> int:
    """Castelnuovo-Mumford regularity, max_i (max twist of F_i) - i."""
    return max(max(M.twists) - i for i, M in enumerate(F.modules) if M.twists)


# -- minimal resolution of the residue field over R -------------------------

def _free_variables(ring: PolynomialRing, gb: Sequence[dict]) -> list[int]:
    used = set()
    for g in gb:
        for m in g:
            used.update(i for i, e in enumerate(m) if e)
    return [i for i in range(ring.nvars) if i not in used]


def _resolve_core(A: GradedQuotient, steps: int, limit: int) -> list[list[tuple[int, dict]]]:
    """Generators (degree, image) of F_1..F_steps of the minimal resolution of k.

    Images are dicts ``{(generator of F_{j-1}, standard monomial): coeff}``.
    Generators of F_j lie in degrees <= 1 + (j-1)*max(1, D-1) with D the top
    degree of the Gröbner basis of I (rate bound for monomial rings plus
    upper semicontinuity under Gröbner deformation).
    """
    p = A.p
    n = A.n
    one = (0,) * n
    unit = 1 if p else A.ring.field.one
    rate = max(1, A.max_relation_degree - 1)
    T = [0] + [1 + (j - 1) * rate for j in range(1, steps + 1)] + [-1]
    gens: list[list[tuple[int, dict]]] = [[(0, {})]] + [[] for _ in range(steps)]
    prev_cols: list[dict] = [{} for _ in range(steps + 1)]
    work = 0
    for t in range(1, T[steps] + 1 if steps else 0):
        kernel: list[dict] | None = None
        for j in range(1, steps + 1):
            need_gens = t <= T[j]
            need_kernel = j < steps and t <= T[j + 1]
            if not (need_gens or need_kernel):
                kernel = None
                prev_cols[j] = {}
                continue
            # basis of the target F_{j-1} in degree t
            tindex: dict = {}
            for h, (dh, _) in enumerate(gens[j - 1]):
                for s in A.basis(t - dh):
                    tindex[(h, s)] = len(tindex)
            if j == 1:
                kernel = [{(0, s): unit} for s in A.basis(t)]
            cols: dict = {}
            old = prev_cols[j]
            for g, (dg, img) in enumerate(gens[j]):
                if dg >= t:
                    continue
                for s in A.basis(t - dg):
                    v = next(i for i, e in enumerate(s) if e)
                    sp = s[:v] + (s[v] - 1,) + s[v + 1:]
                    base = old[(g, sp)]
                    col: dict = {}
                    for (h, u), c in base.items():
                        u2 = u[:v] + (u[v] + 1,) + u[v + 1:]
                        for w, a in A.nf_monomial(u2).items():
                            k = (h, w)
                            nv = col.get(k, 0) + c * a
                            if p:
                                nv %= p
                            if nv:
                                col[k] = nv
                            else:
                                col.pop(k, None)
                    cols[(g, s)] = col
            E = Echelon(p, track=need_kernel)
            next_kernel: list[dict] = []
            for label, col in cols.items():
                res = E.add({tindex[k]: c for k, c in col.items()}, label)
                if res:
                    next_kernel.append(res)
            work += len(cols)
            if work > limit:
                raise ResourceLimitError("residue field resolution exceeded its work budget")
            if need_gens and kernel:
                for kv in kernel:
                    if E.add({tindex[k]: c for k, c in kv.items()}, ("new",)) is None:
                        g = len(gens[j])
                        gens[j].append((t, kv))
                        cols[(g, one)] = kv
            prev_cols[j] = cols
            kernel = next_kernel if need_kernel else None
    return gens[1:]


def _koszul_tensor(ring: PolynomialRing, core_ring: PolynomialRing, embed: list[int],
                   free: list[int], core_gens: list[list[tuple[int, dict]]], steps: int,
                   quotient: GradedQuotient) -> GradedComplex:
    """Tensor the core resolution with the Koszul complex on the free variables."""
    p = ring.characteristic
    one_c = ring.field.one
    n = ring.nvars

    def lift(m):
        out = [0] * n
        for i, e in zip(embed, m):
            out[i] = e
        return tuple(out)

    # core modules: degrees and columns {row: terms} in the big ring
    core_deg = [[0]] + [[d for d, _ in level] for level in core_gens]
    core_cols = [[]]
    for level in core_gens:
        cols = []
        for _, img in level:
            col: dict = {}
            for (h, s), c in img.items():
                col.setdefault(h, {})[lift(s)] = c
            cols.append(col)
        core_cols.append(cols)
    ncore = len(core_deg) - 1
    labels = []
    for k in range(steps + 1):
        lab = []
        for a in range(0, min(k, ncore) + 1):
            q = k - a
            if q > len(free):
                continue
            for g in range(len(core_deg[a])):
                for S in itertools.combinations(range(len(free)), q):
                    lab.append((a, g, S))
        labels.append(lab)
    modules = [GradedFreeModule(tuple(core_deg[a][g] + len(S) for a, g, S in lab)) for lab in labels]
    maps = []
    for k in range(1, steps + 1):
        idx = {lab: i for i, lab in enumerate(labels[k - 1])}
        cols = []
        for a, g, S in labels[k]:
            col: dict = {}
            if a >= 1:
                for h, f in core_cols[a][g].items():
                    col[idx[(a - 1, h, S)]] = dict(f)
            sign = -1 if a % 2 else 1
            for pos, v in enumerate(S):
                S2 = S[:pos] + S[pos + 1:]
                mono = [0] * n
                mono[free[v]] = 1
                c = sign * (-1) ** pos * one_c
                if p:
                    c %= p
                col[idx[(a, g, S2)]] = {tuple(mono): c}
            cols.append(col)
        maps.append(GradedMatrix(ring, modules[k], modules[k - 1], cols))
    return GradedComplex(ring, modules, maps, quotient)


def resolve_residue_field(ring: PolynomialRing, gb: Sequence[dict], steps: int, *,
                          limit: int = 10**7) -> GradedComplex:
    """Minimal resolution F_0 <- ... <- F_steps of k over R = Q/I.

    ``gb`` is the reduced Gröbner basis of I.  Variables that occur in no
    relation split off as a Koszul factor, which keeps the linear algebra in
    the smallest polynomial ring carrying the relations.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    quotient = GradedQuotient(ring, gb)
    free = _free_variables(ring, gb)
    embed = [i for i in range(ring.nvars) if i not in free]
    core_ring = PolynomialRing(ring.field, [ring.variables[i] for i in embed], ring.order)
    core_gb = [{tuple(m[i] for i in embed): c for m, c in g.items()} for g in gb]
    core = GradedQuotient(core_ring, core_gb)
    core_gens = _resolve_core(core, steps, limit) if embed else []
    if embed and not core_gens:
        core_gens = []
    return _koszul_tensor(ring, core_ring, embed, free, core_gens, steps, quotient)

"""From a presented quotient ring to the full data table.

The order of work mirrors the classification: the cheap invariants
(c, e, h, m, n) first, Betti numbers of k only when they are needed, Bass
numbers (through a generic reduction when the depth is positive) last.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .classify import (
    CODEPTH_GT_3,
    PQR,
    ZERO_RING,
    C,
    ConsistencyError,
    RationalSeries,
    RingClass,
    bass_series,
    beta5_discriminant,
    canonical_pqr,
    classify_with_parameters,
    compute_pq,
    poincare_series,
)
from .invariants import (
    InvariantBundle,
    PresentedRing,
    ReductionConfig,
    basic_invariants,
    bass_numbers,
    betti_numbers,
    presented_ring,
)
from .parse import InputSpec
from .poly import Polynomial, PolynomialRing

KEYS = ("c", "e", "h", "m", "n", "Class", "p", "q", "r", "PoincareSeries", "BassSeries")


class UnknownKeyError(KeyError):
    def __init__(self, key: str):
        super().__init__(key)
        self.key = key

    def __str__(self):
        return f"unknown key {self.key!r}; valid keys are {', '.join(KEYS)}"


@dataclass(frozen=True)
class DataTable:
    c: int
    e: int
    h: int
    m: int
    n: int
    ring_class: RingClass
    p: int | None
    q: int | None
    r: int | None
    poincare: RationalSeries | None
    bass: RationalSeries | None

    @property
    def class_letter(self) -> str:
        return self.ring_class.tag

    def value(self, key: str):
        if key not in KEYS:
            raise UnknownKeyError(key)
        return {
            "Class": self.class_letter,
            "PoincareSeries": self.poincare,
            "BassSeries": self.bass,
        }.get(key, getattr(self, key, None))

    def to_json(self) -> dict:
        out = {}
        for k in KEYS:
            v = self.value(k)
            out[k] = v.to_json() if isinstance(v, RationalSeries) else v
        return out

    @classmethod
    def from_json(cls, data: dict) -> "DataTable":
        if set(data) != set(KEYS):
            raise ValueError("data table must have exactly the keys " + ", ".join(KEYS))
        series = {k: None if data[k] is None else RationalSeries.from_json(data[k])
                  for k in ("PoincareSeries", "BassSeries")}
        tag = data["Class"]
        p, q, r = data["p"], data["q"], data["r"]
        if tag == "C":
            rc = C(data["c"])
        elif tag == "G":
            rc = RingClass("G", (r,))
        elif tag == "H":
            rc = RingClass("H", (p, q))
        else:
            rc = RingClass(tag)
        return cls(data["c"], data["e"], data["h"], data["m"], data["n"], rc, p, q, r,
                   series["PoincareSeries"], series["BassSeries"])


def _table(b: InvariantBundle, cls: RingClass, pqr: PQR) -> DataTable:
    gorenstein = b.h == 0 and b.n == 1
    return DataTable(
        c=b.c, e=b.e, h=b.h, m=b.m, n=b.n, ring_class=cls, p=pqr.p, q=pqr.q, r=pqr.r,
        poincare=poincare_series(cls, b.e, b.l, b.n),
        bass=bass_series(cls, b.e, b.c, b.l, b.n, gorenstein=gorenstein),
    )


def classify_presented(P: PresentedRing, cfg: ReductionConfig = ReductionConfig()) -> tuple[InvariantBundle, RingClass, PQR]:
    b = basic_invariants(P)
    if b.c == 3 and not (b.h == 0 and b.n == 1) and b.h != 2:
        b = replace(b, betti=betti_numbers(P, 4))
        p, q = compute_pq(b.e, b.l, b.n, b.beta(2), b.beta(3), b.beta(4))
        if q < 2 and p in (0, 1, 3):
            mus = bass_numbers(P, b, cfg, count=3 if p == 3 else 2)
            if mus[0] != b.n:
                raise ConsistencyError(f"mu_d = {mus[0]} differs from the type n = {b.n}")
            b = replace(b, bass=mus)
    cls, pqr = classify_with_parameters(b)
    if pqr.p == 3 and pqr.q is not None and pqr.q <= 1 and cls.tag in ("T", "H"):
        _check_beta5(P, b, cls, pqr)
    return b, cls, pqr


def _check_beta5(P: PresentedRing, b: InvariantBundle, cls: RingClass, pqr: PQR) -> None:
    betti = betti_numbers(P, 5)
    hint = beta5_discriminant(b.l, b.n, *betti[2:6], e=b.e, q=pqr.q)
    if (hint == "H(3,q)") != (cls.tag == "H"):
        raise ConsistencyError(f"beta_5 test says {hint}, Bass numbers say {cls}")


def tor_alg_data_presented(P: PresentedRing, cfg: ReductionConfig = ReductionConfig()) -> DataTable:
    if P.zero_ring:
        return DataTable(0, 0, 0, 1, 0, ZERO_RING, None, None, None, None, None)
    if P.is_regular:
        cls = C(0)
        pqr = canonical_pqr(cls)
        return DataTable(0, P.e, 0, 0, 1, cls, pqr.p, pqr.q, pqr.r,
                         poincare_series(cls, P.e, -1, 1), bass_series(cls, P.e, 0, -1, 1, True))
    b, cls, pqr = classify_presented(P, cfg)
    if cls == CODEPTH_GT_3:
        return DataTable(b.c, b.e, b.h, b.m, b.n, cls, None, None, None, None, None)
    return _table(b, cls, pqr)


def tor_alg_data(ring: PolynomialRing, generators: Sequence[Polynomial],
                 cfg: ReductionConfig = ReductionConfig()) -> DataTable:
    return tor_alg_data_presented(presented_ring(ring, generators), cfg)


def tor_alg_class(ring: PolynomialRing, generators: Sequence[Polynomial],
                  cfg: ReductionConfig = ReductionConfig()) -> RingClass:
    return tor_alg_data(ring, generators, cfg).ring_class


def data_for_spec(spec: InputSpec, cfg: ReductionConfig = ReductionConfig()) -> DataTable:
    return tor_alg_data(spec.ring, spec.generators, cfg)

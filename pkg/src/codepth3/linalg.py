"""Sparse exact Gaussian elimination over QQ (mpq) or GF(p) (ints).

Vectors are dicts ``{index: coefficient}``.  A row's pivot is its largest
index, so reducing a vector in decreasing index order never revisits a pivot.
"""

from __future__ import annotations

import heapq


class Echelon:
    """Incrementally built row echelon basis of a subspace.

    With ``track=True`` every stored row remembers the combination of inserted
    vectors (labelled by the caller) that produced it, so vectors reducing to
    zero yield kernel elements.
    """

    __slots__ = ("p", "pivots", "origins", "track")

    def __init__(self, p: int = 0, track: bool = False):
        self.p = p
        self.pivots: dict[int, dict] = {}
        self.origins: dict[int, dict] = {}
        self.track = track

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, v: dict, origin: dict | None):
        p = self.p
        pivots = self.pivots
        heap = [-k for k in v]
        heapq.heapify(heap)
        while heap:
            k = -heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            row = pivots.get(k)
            if row is None:
                continue
            for kk, rc in row.items():
                old = v.get(kk)
                nv = (old or 0) - c * rc
                if p:
                    nv %= p
                if nv:
                    if old is None:
                        heapq.heappush(heap, -kk)
                    v[kk] = nv
                elif old is not None:
                    del v[kk]
            if origin is not None:
                for kk, oc in self.origins[k].items():
                    nv = origin.get(kk, 0) - c * oc
                    if p:
                        nv %= p
                    if nv:
                        origin[kk] = nv
                    else:
                        origin.pop(kk, None)
        return v

    def reduce(self, v: dict) -> dict:
        """Remainder of ``v`` modulo the stored rows (a new dict)."""
        return self._reduce(dict(v), None)

    def add(self, v: dict, label=None) -> dict | None:
        """Insert ``v``.  Returns None if it was independent, else the kernel
        combination (when tracking) or an empty dict."""
        origin = {label: 1} if self.track else None
        r = self._reduce(dict(v), origin)
        if not r:
            return origin if self.track else {}
        k = max(r)
        c = r[k]
        p = self.p
        inv = pow(int(c), -1, p) if p else 1 / c
        if p:
            r = {kk: x * inv % p for kk, x in r.items()}
            if origin is not None:
                origin = {kk: x * inv % p for kk, x in origin.items()}
        else:
            r = {kk: x * inv for kk, x in r.items()}
            if origin is not None:
                origin = {kk: x * inv for kk, x in origin.items()}
        self.pivots[k] = r
        if origin is not None:
            self.origins[k] = origin
        return None


def rank(vectors, p: int = 0) -> int:
    e = Echelon(p)
    for v in vectors:
        e.add(v)
    return e.rank

from __future__ import annotations

from functools import lru_cache

import pytest

from codepth3.invariants import basic_invariants, bass_numbers_direct, betti_numbers, presented_ring
from codepth3.parse import parse_input

FLAGSHIP_GENS = "x*y^2, x*y*z, y*z^2, x^4-y^3*z, x*z^3-y^4"
FLAGSHIP = f"QQ[x,y,z] / ({FLAGSHIP_GENS})"
FLAGSHIP_GF2 = f"GF 2[u,v,w,x,y,z] / ({FLAGSHIP_GENS})"
KOSZUL = "QQ[x,y,z] / (x^2, y^2, z^2)"
MAX_IDEAL_SQUARED = "QQ[x,y,z] / (x^2, x*y, x*z, y^2, y*z, z^2)"
CLASS_S = "QQ[x,y] / (x^2, x*y)"
HYPERSURFACE = "QQ[x,y,z] / (x^3 + y^3 + z^3)"

# one ring per class, all over QQ in three variables; used to audit the series table
CLASS_CORPUS = {
    "B": "x*y, y*z, x^3, x*y - z^2",
    "T": "x*y - z^2, x*z, y^3",
    "G(2)": FLAGSHIP_GENS,
    "G(3)": "x*y^2 + z^3, x^2*z, x^3, y^4, y^3*z, y^2*z^2",
    "G(4)": "x*y^2, x^2*z, x^2*y, z^4, y^4 + x*z^3, x^4 + y*z^3, y^3*z",
    "G(5)": "x*y, x*z, y*z, x^2 - y^2, x^2 - z^2",
    "C(3)": "x^2, y^2, z^2",
    "H(0,0)": "x*y, y^2*z, y^3",
    "H(0,1)": "x*y^2 - y^3, x^2*y - x*y*z, x^2*z - y^3, y*z, x^3 - y^3",
    "H(1,0)": "x*y*z, x^3 - x*z^2, y^3",
    "H(1,1)": "x^2*z - y^3, x^2, y^2*z, x*y*z",
    "H(2,0)": "x^2*y, x^3 - x*y*z, z^2",
    "H(2,1)": "x^2 - y^2, y^2*z, x^2*y",
    "H(2,2)": "x^2*z, y*z^2 - y^3, x*y*z - x^3, x^3, x*z - y^2",
    "H(3,0)": "x*z^2 - x^2*z, x*z - y^2, y*z^2, x^3 - z^3",
    "H(3,1)": "y^2 - x*z, x^3, y*z^2, x*y*z",
    "H(3,2)": "y*z, x^2, z^2, y^2",
    "H(4,3)": "x^3 - x^2*z, z^3, y*z^2 - x^3, x*z^2, z^2 - y^2",
}


def spec(text: str):
    return parse_input(text)


def presented(text: str):
    s = parse_input(text)
    return presented_ring(s.ring, s.generators)


@lru_cache(maxsize=None)
def direct_numbers(text: str, betti_count: int = 7, bass_count: int = 4):
    """beta_0.. and mu_d.. computed from resolutions alone; shared across modules."""
    P = presented(text)
    d = basic_invariants(P).d
    betti = betti_numbers(P, betti_count - 1)
    bass = bass_numbers_direct(P, d + bass_count - 1)[d:]
    return tuple(betti), tuple(bass)


@pytest.fixture
def flagship():
    return presented(FLAGSHIP)


@pytest.fixture
def koszul():
    return presented(KOSZUL)

from math import comb

import pytest

from codepth3.poly import QQ, PolynomialRing
from codepth3.resolution import (
    GradedComplex,
    GradedFreeModule,
    GradedMatrix,
    hilbert_data,
    ideal_groebner,
    min_resolution_over_Q,
    minimalize,
    regularity,
    resolve_residue_field,
)

from conftest import FLAGSHIP_GENS, presented

R = PolynomialRing(QQ, "xyz")
x, y, z = R.gens()


def q_resolution(text):
    P = presented(text)
    return min_resolution_over_Q(P.ring, P.generators)


def check_structure(F):
    assert F.is_complex()
    assert F.is_minimal()
    assert all(M.entry_degrees_ok() for M in F.maps)


@pytest.mark.parametrize("text, ranks", [
    ("QQ[x,y,z] / (x^2, y^2, z^2)", [1, 3, 3, 1]),
    (f"QQ[x,y,z] / ({FLAGSHIP_GENS})", [1, 5, 6, 2]),
    ("QQ[x,y] / (x^2)", [1, 1]),
    ("QQ[x,y] / (x^2, x*y)", [1, 2, 1]),
    ("QQ[x,y,z] / (x^2, x*y, x*z, y^2, y*z, z^2)", [1, 6, 8, 3]),
    ("QQ[w,x,y,z] / (w^2, x^2, y^2, z^2)", [1, 4, 6, 4, 1]),
])
def test_q_resolution_ranks(text, ranks):
    F = q_resolution(text)
    assert F.ranks == ranks
    check_structure(F)


def test_hilbert_data():
    K = hilbert_data(q_resolution("QQ[x,y,z] / (x^2, y^2, z^2)"))
    # (1 - t^2)^3
    assert K.numerator == (1, 0, -3, 0, 3, 0, -1)
    assert K.dimension == 0
    H = hilbert_data(q_resolution(f"QQ[x,y,z] / ({FLAGSHIP_GENS})"))
    assert H.multiplicity_one_minus_t == 2 and H.dimension == 1
    assert hilbert_data(q_resolution("QQ[x,y] / (x^2, x*y)")).dimension == 1


def test_regularity():
    assert regularity(q_resolution("QQ[x,y,z] / (x^2, y^2, z^2)")) == 3
    assert regularity(q_resolution("QQ[x,y,z] / (x^2, x*y, x*z, y^2, y*z, z^2)")) == 1


def residue(text, steps):
    P = presented(text)
    return resolve_residue_field(P.ring, P.groebner(), steps)


def test_residue_field_examples():
    assert residue("QQ[x] / (x^2)", 4).ranks == [1, 1, 1, 1, 1]
    assert residue("QQ[x,y,z] / (x^2, y^2, z^2)", 4).ranks == [comb(i + 2, 2) for i in range(5)]
    C = residue(f"QQ[x,y,z] / ({FLAGSHIP_GENS})", 5)
    assert C.ranks == [1, 3, 8, 22, 59, 160]
    check_structure(C)


def test_residue_field_with_free_variables():
    # tensoring with a Koszul complex on the free variable multiplies by (1+t)
    base = residue(f"QQ[x,y,z] / ({FLAGSHIP_GENS})", 4).ranks
    C = residue(f"QQ[w,x,y,z] / ({FLAGSHIP_GENS})", 4)
    assert C.ranks == [base[i] + (base[i - 1] if i else 0) for i in range(5)]
    check_structure(C)


def _koszul():
    F = min_resolution_over_Q(R, [x**2, y**2, z**2])
    return F


def test_minimalize_keeps_minimal_complex():
    F = _koszul()
    G = minimalize(F)
    assert G.ranks == F.ranks
    check_structure(G)


def test_minimalize_cancels_spliced_unit():
    F = _koszul()
    mods = [list(M.twists) for M in F.modules]
    mods[1].append(4)
    mods[2].append(4)
    modules = [GradedFreeModule(tuple(t)) for t in mods]
    d1 = F.maps[0].columns + [{}]
    d2 = F.maps[1].columns + [{3: {(0, 0, 0): QQ.one}}]
    d3 = F.maps[2].columns
    maps = [GradedMatrix(R, modules[k + 1], modules[k], cols) for k, cols in enumerate([d1, d2, d3])]
    C = GradedComplex(R, modules, maps)
    assert C.is_complex() and not C.is_minimal()
    G = minimalize(C)
    assert G.ranks == [1, 3, 3, 1]
    check_structure(G)


def test_minimalize_trivial_complex():
    S = PolynomialRing(QQ, "x")
    one = GradedFreeModule((0,))
    C = GradedComplex(S, [one, one], [GradedMatrix(S, one, one, [{0: {(0,): QQ.one}}])])
    assert set(minimalize(C).ranks) == {0}


def test_groebner_of_ideal_is_reduced():
    gb = ideal_groebner(R, [x * y**2, x * y * z, y * z**2, x**4 - y**3 * z, x * z**3 - y**4])
    assert len(gb) == 7
    assert max(sum(m) for g in gb for m in g) == 6

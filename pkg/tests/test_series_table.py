"""Audit of the per-class series table against directly computed numbers.

Betti numbers of k come from the minimal resolution of k over R and Bass
numbers from dimensions of Ext(k, R); neither uses the table.
"""

import pytest

from codepth3.classify import RingClass
from codepth3.pipeline import data_for_spec

from conftest import CLASS_CORPUS, CLASS_S, FLAGSHIP_GENS, FLAGSHIP_GF2, HYPERSURFACE, direct_numbers, spec

BETTI_COUNT = 7
BASS_COUNT = 4

RINGS = {name: f"QQ[x,y,z] / ({gens})" for name, gens in CLASS_CORPUS.items()}
RINGS["S"] = CLASS_S
RINGS["G(2) depth 1"] = f"QQ[w,x,y,z] / ({FLAGSHIP_GENS})"
RINGS["T depth 1"] = f"QQ[w,x,y,z] / ({CLASS_CORPUS['T']})"
RINGS["C(1)"] = HYPERSURFACE
RINGS["G(2) over GF(2)"] = FLAGSHIP_GF2


@pytest.fixture(scope="module", params=sorted(RINGS))
def computed(request):
    name = request.param
    table = data_for_spec(spec(RINGS[name]))
    betti, bass = direct_numbers(RINGS[name], BETTI_COUNT, BASS_COUNT)
    return name, table, list(betti), list(bass)


def test_class_matches_corpus_label(computed):
    name, table, _, _ = computed
    assert table.ring_class == RingClass.parse(name.split()[0])


def test_poincare_series_matches_betti_numbers(computed):
    _, table, betti, _ = computed
    assert table.poincare.expand(BETTI_COUNT) == betti


def test_bass_series_matches_bass_numbers(computed):
    _, table, _, bass = computed
    d = table.e - table.c
    assert table.bass.shift == d
    assert table.bass.expand(BASS_COUNT) == bass

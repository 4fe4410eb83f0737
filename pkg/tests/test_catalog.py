from fractions import Fraction

import pytest

from liemult import catalog
from liemult.catalog import CatalogKey, MissingEpsilon, UnknownKey
from liemult.lie import center, derived, nilpotency_class, validate
from liemult.linalg import GF, QQ


def test_counts_per_dimension():
    assert {d: len(catalog.nilpotent_keys(d)) for d in range(1, 7)} == {
        1: 1, 2: 1, 3: 2, 4: 3, 5: 9, 6: 27}
    assert catalog.NILPOTENT_COUNTS[6] == 26


@pytest.mark.parametrize("key", catalog.all_keys(), ids=str)
def test_every_entry_is_a_lie_algebra(key):
    for field in (QQ, GF(3)):
        assert validate(catalog.get(key, field)).ok


@pytest.mark.parametrize("d", range(1, 7))
def test_low_dimensional_entries_are_nilpotent(d):
    for key in catalog.nilpotent_keys(d):
        L = catalog.get(key)
        assert L.dim == d and nilpotency_class(L) is not None


def test_classical_dimensions():
    dims = {str(k): catalog.get(k).dim for k in catalog.CLASSICAL_KEYS}
    assert dims == {"sl:2": 3, "sl:3": 8, "sl:4": 15, "so:5": 10, "so:7": 21, "so:8": 28, "sp:3": 21}
    for k in catalog.CLASSICAL_KEYS:
        L = catalog.get(k)
        assert derived(L).dim == L.dim and center(L).dim == 0


def test_key_parsing():
    k = CatalogKey.parse("catalog:L:6:24?eps=1")
    assert k.eps == Fraction(1) and k.display == "L6,24(1)"
    assert str(CatalogKey.parse("H:2+A:1")) == "H:2+A:1"
    assert catalog.get("H:2+A:1").dim == 6
    assert catalog.get("L:6:19?eps=-1/2").dim == 6


@pytest.mark.parametrize("text,exc", [
    ("L:6:19", MissingEpsilon),
    ("L:5:10", UnknownKey),
    ("L:5:6?eps=1", UnknownKey),
    ("Z:3", UnknownKey),
    ("H:0", UnknownKey),
    ("L:x:1", UnknownKey),
])
def test_bad_keys(text, exc):
    with pytest.raises(exc):
        catalog.get(text)


def test_heisenberg_labels_put_center_last():
    H = catalog.heisenberg(2)
    assert H.labels[-1] == "v"
    assert center(H).basis() == [tuple([0] * 4 + [1])]


def test_expected_results_cover_every_table():
    by_table = {}
    for er in catalog.expected_results():
        by_table.setdefault(catalog.table_of(er), []).append(er)
    assert {t: len(v) for t, v in by_table.items()} == {
        "dim3": 4, "dim4": 3, "dim5": 9, "dim6": 27, "heisenberg": 13, "classical": 7}
    positive = {str(e.key) for e in by_table["dim6"] if e.expected_B0 == "positive"}
    assert len(positive) == 11


def test_expected_result_matching():
    er = catalog.ExpectedResult(CatalogKey.parse("L:5:6"), 1, "Thm 6.4")
    assert er.matches(1) and not er.matches(0) and not er.matches(2)
    pos = catalog.ExpectedResult(CatalogKey.parse("L:6:6"), "positive", "Thm 6.5")
    assert pos.matches(3) and not pos.matches(0)

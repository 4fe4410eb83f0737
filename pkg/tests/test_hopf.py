import pytest
from hypothesis import given, strategies as st

from liemult import catalog
from liemult.bogomolov import Exhaustive, ModeUnsupported, Sampled, Status, bogomolov_report
from liemult.exterior import ExteriorSquare, schur_dim
from liemult.hopf import (
    free_nilpotent,
    hall_basis,
    hopf_bogomolov,
    hopf_schur,
    lyndon_words,
    moebius,
    presentation,
    seq42_middle,
    seq43_dimension_check,
    seq43_terms,
    standard_factorization,
    witt_dimension,
)
from liemult.lie import NotNilpotent, center, derived, nilpotency_class, validate
from liemult.linalg import GF, Subspace

DIM5 = [k for d in range(1, 6) for k in catalog.nilpotent_keys(d)]


def test_moebius_and_witt():
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert [witt_dimension(2, w) for w in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert [witt_dimension(3, w) for w in range(1, 5)] == [3, 3, 8, 18]


def test_lyndon_words_weight_major():
    words = lyndon_words(2, 4)
    assert words == [(0,), (1,), (0, 1), (0, 0, 1), (0, 1, 1), (0, 0, 0, 1), (0, 0, 1, 1),
                     (0, 1, 1, 1)]


def test_standard_factorization():
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))
    assert standard_factorization((0, 0, 1, 1)) == ((0,), (0, 1, 1))


@pytest.mark.parametrize("d,c", [(2, 2), (2, 3), (2, 5), (3, 3), (3, 4), (4, 3)])
def test_free_nilpotent_dimensions(d, c):
    F = free_nilpotent(d, c)
    assert F.dim == sum(witt_dimension(d, w) for w in range(1, c + 1))
    assert len(hall_basis(d, c)) == F.dim
    assert validate(F).ok
    assert nilpotency_class(F) == c
    assert derived(F).dim == F.dim - d


def test_free_nilpotent_rank_two_class_two_is_heisenberg():
    F = free_nilpotent(2, 2)
    assert F.dim == 3 and center(F) == derived(F)


def test_presentation_numbers():
    P = presentation(catalog.abelian(2))
    assert (P.F.dim, P.R.dim, P.RF.dim, hopf_schur(P)) == (3, 1, 0, 1)
    P = presentation(catalog.heisenberg(1))
    assert (P.F.dim, P.R.dim, P.RF.dim, hopf_schur(P)) == (5, 2, 0, 2)
    assert P.surjective()


def test_presentation_needs_nilpotent():
    with pytest.raises(NotNilpotent):
        presentation(catalog.get("sl:2"))


@pytest.mark.parametrize("key", DIM5, ids=str)
def test_hopf_schur_matches_exterior_path(key):
    L = catalog.get(key)
    assert hopf_schur(presentation(L)) == schur_dim(ExteriorSquare(L))


@pytest.mark.parametrize("key", DIM5, ids=str)
def test_hopf_bogomolov_matches_exterior_path(key):
    L = catalog.get(key, GF(5))
    a = hopf_bogomolov(presentation(L), Exhaustive())
    b = bogomolov_report(L, Exhaustive())
    assert (a.dim_M, a.dim_B0) == (b.dim_M, b.dim_B0)


def test_hopf_sampled_over_rationals():
    r = hopf_bogomolov(presentation(catalog.heisenberg(1)), Sampled(0))
    assert r.status == Status.EXACT_CERTIFIED_ZERO
    with pytest.raises(ModeUnsupported):
        hopf_bogomolov(presentation(catalog.heisenberg(1)), Exhaustive())


def test_seq43_terms_for_l56_center():
    L = catalog.get("L:5:6", GF(5))
    P = presentation(L)
    t = seq43_terms(P, center(L))
    assert t.holds and t.b0_L == 1
    with pytest.raises(ModeUnsupported):
        seq43_terms(P, center(L), Sampled(0))


@given(st.sampled_from(DIM5))
def test_seq43_on_center(key):
    L = catalog.get(key, GF(3))
    assert seq43_dimension_check(presentation(L), center(L))


@given(st.sampled_from(DIM5))
def test_seq42_middle_is_exact(key):
    L = catalog.get(key, GF(3))
    P = presentation(L)
    for M in (center(L), derived(L), Subspace.zero(GF(3), L.dim)):
        m = seq42_middle(P, M)
        assert m.image_dim == m.kernel_dim

import pytest
from hypothesis import given, strategies as st

from liemult import catalog
from liemult.lie import (
    LieAlgebra,
    NotAnIdeal,
    StructureError,
    center,
    centralizer,
    derived,
    direct_sum,
    ideal_closure,
    is_ideal,
    is_subalgebra,
    lower_central_series,
    nilpotency_class,
    quotient_algebra,
    subalgebra_closure,
    validate,
)
from liemult.linalg import GF, QQ, FieldMismatch, Subspace

SMALL_KEYS = [k for k in catalog.all_keys() if catalog.get(k).dim <= 6]


def test_from_brackets_flips_reversed_pairs():
    a = LieAlgebra.from_brackets("x", 3, {(1, 2): {3: 1}}, one_based=True)
    b = LieAlgebra.from_brackets("x", 3, {(2, 1): {3: -1}}, one_based=True)
    assert a.structurally_equal(b)


@pytest.mark.parametrize("brackets", [{(1, 1): {2: 1}}, {(1, 4): {2: 1}}, {(1, 2): {5: 1}}])
def test_from_brackets_rejects_bad_indices(brackets):
    with pytest.raises(StructureError):
        LieAlgebra.from_brackets("bad", 3, brackets, one_based=True)


def test_jacobi_violation_is_reported():
    # [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 breaks Jacobi
    L = LieAlgebra.from_brackets("bad", 3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {1: 1}},
                                 one_based=True)
    rep = validate(L)
    assert not rep.ok and rep.violations[0].triple == (0, 1, 2)


def test_heisenberg_structure():
    for m in range(1, 5):
        H = catalog.heisenberg(m)
        assert H.dim == 2 * m + 1
        assert derived(H) == center(H)
        assert derived(H).dim == 1
        assert nilpotency_class(H) == 2


def test_lower_central_series_of_filiform():
    L = catalog.get("L:5:7")
    dims = [s.dim for s in lower_central_series(L)]
    assert dims == [5, 3, 2, 1, 0, 0]
    assert nilpotency_class(L) == 4


def test_semisimple_is_not_nilpotent():
    L = catalog.get("sl:2")
    assert nilpotency_class(L) is None
    assert derived(L).dim == 3 and center(L).dim == 0


def test_direct_sum_and_field_mismatch():
    S = direct_sum(catalog.heisenberg(1), catalog.abelian(2))
    assert S.dim == 5 and center(S).dim == 3
    with pytest.raises(FieldMismatch):
        direct_sum(catalog.abelian(1), catalog.abelian(1, GF(3)))


def test_quotient_by_center_of_heisenberg_is_abelian():
    H = catalog.heisenberg(2)
    Q, proj = quotient_algebra(H, center(H))
    assert Q.dim == 4 and Q.is_abelian()
    with pytest.raises(NotAnIdeal):
        quotient_algebra(H, Subspace.span(QQ, 5, [H.basis()[0]]))


def test_closures():
    H = catalog.heisenberg(1)
    x, y, _ = H.basis()
    s = Subspace.span(QQ, 3, [x, y])
    assert subalgebra_closure(H, s).dim == 3
    assert ideal_closure(H, Subspace.span(QQ, 3, [x])).dim == 2
    assert is_ideal(H, derived(H)) and is_subalgebra(H, derived(H))


def test_over_reduces_mod_p():
    L = catalog.get("L:6:19?eps=1")
    Lp = L.over(GF(3))
    assert Lp.field == GF(3) and validate(Lp).ok
    with pytest.raises(FieldMismatch):
        Lp.over(QQ)


@st.composite
def algebra_and_vectors(draw):
    key = draw(st.sampled_from(SMALL_KEYS))
    L = catalog.get(key)
    vec = st.tuples(*[st.integers(-3, 3)] * L.dim)
    return L, draw(vec), draw(vec), draw(vec), draw(st.integers(-3, 3))


@given(algebra_and_vectors())
def test_bracket_antisymmetric_and_bilinear(data):
    L, x, y, z, a = data
    f = L.field
    neg = tuple(f.norm(-c) for c in L.bracket(y, x))
    assert L.bracket(x, y) == neg
    xz = tuple(f.norm(p + a * q) for p, q in zip(x, z))
    lhs = L.bracket(xz, y)
    rhs = tuple(f.norm(p + a * q) for p, q in zip(L.bracket(x, y), L.bracket(z, y)))
    assert lhs == rhs


@given(algebra_and_vectors())
def test_jacobi_on_random_vectors(data):
    L, x, y, z, _ = data
    terms = [L.bracket(L.bracket(x, y), z), L.bracket(L.bracket(y, z), x),
             L.bracket(L.bracket(z, x), y)]
    assert not any(sum(t) for t in zip(*terms))


@given(algebra_and_vectors())
def test_centralizer_contains_center(data):
    L, x, *_ = data
    assert center(L) <= centralizer(L, x)
    assert x in centralizer(L, x)

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from liemult.linalg import (
    GF,
    QQ,
    AmbientMismatch,
    FieldSpec,
    Matrix,
    SpanBuilder,
    Subspace,
    kernel,
    preimage,
    rref,
)

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]


def vectors(field, n, max_count=6):
    if field.is_prime_field:
        entry = st.integers(0, field.characteristic - 1)
    else:
        entry = st.fractions(min_value=-4, max_value=4, max_denominator=3)
    return st.lists(st.tuples(*[entry] * n), max_size=max_count)


@st.composite
def field_and_vectors(draw, count=2):
    field = draw(st.sampled_from(FIELDS))
    n = draw(st.integers(1, 5))
    return (field, n, *[draw(vectors(field, n)) for _ in range(count)])


def test_field_coercion():
    assert QQ("-3/2") == Fraction(-3, 2)
    assert GF(5)("1/2") == 3
    assert GF(5)(-1) == 4
    with pytest.raises(ZeroDivisionError):
        GF(5)("1/5")
    with pytest.raises(TypeError):
        QQ(0.5)


def test_field_parse_and_label():
    assert FieldSpec.parse("Q") is QQ
    assert FieldSpec.parse("Fp:7") == GF(7)
    assert GF(7).label() == "Fp:7"
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        FieldSpec.parse("R")


def test_inverses_in_prime_field():
    f = GF(7)
    assert all(f.norm(a * f.inv(a)) == 1 for a in range(1, 7))
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_rref_small():
    m = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, piv = rref(m)
    assert piv == (0, 1)
    assert m.rank() == 2
    assert kernel(m).dim == 1
    (v,) = kernel(m).basis()
    assert not any(m.apply(v))


def test_subspace_is_canonical():
    a = Subspace.span(QQ, 3, [(1, 1, 0), (0, 1, 1)])
    b = Subspace.span(QQ, 3, [(1, 2, 1), (1, 0, -1)])
    assert a == b and hash(a) == hash(b)


def test_ambient_mismatch():
    a = Subspace.span(QQ, 3, [(1, 0, 0)])
    b = Subspace.span(QQ, 2, [(1, 0)])
    with pytest.raises(AmbientMismatch):
        a.join(b)
    with pytest.raises(AmbientMismatch):
        SpanBuilder(QQ, 3).add((1, 2))


def test_preimage():
    m = Matrix.from_rows(GF(5), [[1, 0, 0], [0, 1, 0]])
    w = Subspace.span(GF(5), 2, [(1, 0)])
    p = preimage(m, w)
    assert p == Subspace.span(GF(5), 3, [(1, 0, 0), (0, 0, 1)])


@given(field_and_vectors())
def test_rank_nullity(data):
    field, n, rows, _ = data
    if not rows:
        return
    m = Matrix.from_rows(field, rows, n)
    assert m.rank() + kernel(m).dim == n


@given(field_and_vectors())
def test_rref_is_idempotent(data):
    field, n, rows, _ = data
    if not rows:
        return
    r, piv = rref(Matrix.from_rows(field, rows, n))
    r2, piv2 = rref(r)
    assert r2 == r and piv2 == piv


@given(field_and_vectors())
def test_join_intersect_dimension_formula(data):
    field, n, u, v = data
    a, b = Subspace.span(field, n, u), Subspace.span(field, n, v)
    assert a.join(b).dim + a.intersect(b).dim == a.dim + b.dim
    assert a.intersect(b) <= a and a <= a.join(b)


@given(field_and_vectors())
def test_annihilator_is_orthogonal(data):
    field, n, u, _ = data
    a = Subspace.span(field, n, u)
    ann = a.annihilator()
    assert ann.dim == n - a.dim
    for x in a.basis():
        for y in ann.basis():
            assert field.norm(sum(p * q for p, q in zip(x, y))) == 0


@given(field_and_vectors())
def test_reduce_is_a_projection(data):
    field, n, u, v = data
    a = Subspace.span(field, n, u)
    for x in v:
        r = a.reduce(x)
        assert a.reduce(r) == r
        diff = tuple(field.norm(p - q) for p, q in zip(x, r))
        assert diff in a


@given(field_and_vectors())
def test_builder_matches_frozen_span(data):
    field, n, u, _ = data
    b = SpanBuilder(field, n)
    grew = [b.add(x) for x in u]
    s = b.freeze()
    assert s == Subspace.span(field, n, u)
    assert sum(grew) == s.dim

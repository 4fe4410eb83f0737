"""Exact linear algebra over the rationals and prime fields.

Every value here is exact: rationals are ``fractions.Fraction`` and prime
field elements are plain ints in ``range(p)``.  Subspaces are kept in
reduced row echelon form so that equality and hashing are structural.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence


class AmbientMismatch(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: ``FieldSpec("Q")`` or ``FieldSpec("Fp", p)``."""

    kind: str
    characteristic: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.characteristic not in (None, 0):
                raise ValueError("the rationals have no prime characteristic")
            object.__setattr__(self, "characteristic", None)
        elif self.kind == "Fp":
            if self.characteristic is None or not _is_prime(self.characteristic):
                raise ValueError(f"Fp needs a prime characteristic, got {self.characteristic!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "Fp"

    @property
    def zero(self):
        return 0 if self.is_prime_field else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime_field else Fraction(1)

    def __call__(self, value):
        """Coerce an int, Fraction or rational string ("-3/2") into the field."""
        if self.kind == "Q":
            if isinstance(value, float):
                raise TypeError("floats are not exact field elements")
            return Fraction(value)
        p = self.characteristic
        if isinstance(value, int):
            return value % p
        if isinstance(value, float):
            raise TypeError("floats are not exact field elements")
        q = Fraction(value)
        if q.denominator % p == 0:
            raise ZeroDivisionError(f"{value} has no image in F_{p}")
        return q.numerator * pow(q.denominator, -1, p) % p

    def norm(self, x):
        return x % self.characteristic if self.kind == "Fp" else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Fp":
            return pow(x, -1, self.characteristic)
        return 1 / x

    def to_str(self, x) -> str:
        return str(x)

    def label(self) -> str:
        return "Q" if self.kind == "Q" else f"Fp:{self.characteristic}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text in ("Q", "QQ"):
            return QQ
        if text.startswith("Fp:"):
            return GF(int(text[3:]))
        raise ValueError(f"cannot parse field {text!r}; use Q or Fp:p")

    def elements(self):
        """All field elements (prime fields only)."""
        if not self.is_prime_field:
            raise ValueError("the rationals are not enumerable here")
        return range(self.characteristic)

    def __repr__(self):
        return self.label()


QQ = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("Fp", p)


# ---------------------------------------------------------------------------
# incremental echelon form
# ---------------------------------------------------------------------------

class SpanBuilder:
    """Mutable reduced echelon basis, grown one vector at a time.

    Rows are sparse dicts ``{col: value}`` keyed by pivot column, always
    fully reduced (zero in every other pivot column).
    """

    __slots__ = ("field", "dim_ambient", "rows")

    def __init__(self, field: FieldSpec, dim_ambient: int, vectors=()):
        self.field = field
        self.dim_ambient = dim_ambient
        self.rows: dict[int, dict[int, object]] = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _sparse(self, v) -> dict:
        if isinstance(v, dict):
            return {c: x for c, x in v.items() if x != 0}
        if len(v) != self.dim_ambient:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient {self.dim_ambient}")
        return {c: x for c, x in enumerate(v) if x != 0}

    def reduce_sparse(self, v: dict) -> dict:
        """Reduce ``v`` (consumed) against the basis; returns the remainder."""
        rows = self.rows
        norm = self.field.norm
        for c in [c for c in v if c in rows]:
            a = v.get(c, 0)
            if a == 0:
                continue
            for k, r in rows[c].items():
                t = norm(v.get(k, 0) - a * r)
                if t == 0:
                    v.pop(k, None)
                else:
                    v[k] = t
        return v

    def add(self, v) -> bool:
        """Insert ``v``; returns True when the span grew."""
        w = self.reduce_sparse(self._sparse(v))
        if not w:
            return False
        f = self.field
        piv = min(w)
        s = f.inv(w[piv])
        if s != 1:
            w = {k: f.norm(x * s) for k, x in w.items()}
        norm = f.norm
        for r in self.rows.values():
            a = r.get(piv, 0)
            if a == 0:
                continue
            for k, x in w.items():
                t = norm(r.get(k, 0) - a * x)
                if t == 0:
                    r.pop(k, None)
                else:
                    r[k] = t
        self.rows[piv] = w
        return True

    def contains(self, v) -> bool:
        return not self.reduce_sparse(self._sparse(v))

    def freeze(self) -> "Subspace":
        f = self.field
        pivots = tuple(sorted(self.rows))
        dense = []
        for p in pivots:
            row = [f.zero] * self.dim_ambient
            for k, x in self.rows[p].items():
                row[k] = x
            dense.append(tuple(row))
        return Subspace(f, self.dim_ambient, tuple(dense), pivots)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence], nrows: int):
        ncols = len(cols)
        rows = tuple(tuple(cols[j][i] for j in range(ncols)) for i in range(nrows))
        return cls(field, nrows, ncols, rows)

    @classmethod
    def zero(cls, field: FieldSpec, nrows: int, ncols: int):
        return cls(field, nrows, ncols, tuple((field.zero,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int):
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise AmbientMismatch(f"vector of length {len(v)} for {self.nrows}x{self.ncols} matrix")
        norm = self.field.norm
        nz = [(j, x) for j, x in enumerate(v) if x != 0]
        zero = self.field.zero
        return tuple(norm(sum((r[j] * x for j, x in nz), zero)) for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows,
                      tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)))

    def compose(self, other: "Matrix") -> "Matrix":
        """``self @ other``."""
        if self.ncols != other.nrows:
            raise AmbientMismatch("inner dimensions disagree")
        cols = [self.apply([r[j] for r in other.rows]) for j in range(other.ncols)]
        return Matrix.from_columns(self.field, cols, self.nrows)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def rank(self) -> int:
        return SpanBuilder(self.field, self.ncols, self.rows).dim

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return self.compose(other)
        return self.apply(other)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form (zero rows dropped) and 0-based pivot columns."""
    s = SpanBuilder(m.field, m.ncols, m.rows).freeze()
    return Matrix(m.field, s.dim, m.ncols, s.rows), s.pivots


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Row space of a canonical reduced echelon basis."""

    field: FieldSpec
    ambient_dim: int
    rows: tuple = ()
    pivots: tuple = ()
    _builder: SpanBuilder | None = dc_field(default=None, compare=False, hash=False, repr=False)

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable = ()) -> "Subspace":
        return SpanBuilder(field, ambient_dim, vectors).freeze()

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim)

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim).rows,
                   tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.rows)

    def basis(self) -> list[tuple]:
        return list(self.rows)

    def builder(self) -> SpanBuilder:
        """A fresh mutable copy of this basis, for incremental growth."""
        b = SpanBuilder(self.field, self.ambient_dim)
        for p, r in zip(self.pivots, self.rows):
            b.rows[p] = {k: x for k, x in enumerate(r) if x != 0}
        return b

    def _cached_builder(self) -> SpanBuilder:
        if self._builder is None:
            object.__setattr__(self, "_builder", self.builder())
        return self._builder

    def reduce(self, v: Sequence) -> tuple:
        """Canonical representative of ``v`` modulo this subspace."""
        b = self._cached_builder()
        w = b.reduce_sparse(b._sparse(v))
        out = [self.field.zero] * self.ambient_dim
        for k, x in w.items():
            out[k] = x
        return tuple(out)

    def free_columns(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in piv)

    def quotient_coords(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in ambient/self, indexed by the free columns."""
        b = self._cached_builder()
        w = b.reduce_sparse(b._sparse(v))
        return tuple(w.get(c, self.field.zero) for c in self.free_columns())

    def contains(self, v: Sequence) -> bool:
        b = self._cached_builder()
        return not b.reduce_sparse(b._sparse(v))

    def __contains__(self, v):
        return self.contains(v)

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.rows)

    def join(self, other: "Subspace") -> "Subspace":
        self._check(other)
        b = self.builder()
        for r in other.rows:
            b.add(r)
        return b.freeze()

    def annihilator(self) -> "Subspace":
        """Linear forms (as vectors) vanishing on this subspace."""
        return kernel(Matrix(self.field, self.dim, self.ambient_dim, self.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        dual = self.annihilator().join(other.annihilator())
        return kernel(Matrix(self.field, dual.dim, self.ambient_dim, dual.rows))

    def image(self, m: Matrix) -> "Subspace":
        if m.ncols != self.ambient_dim:
            raise AmbientMismatch("matrix domain does not match subspace ambient")
        return Subspace.span(self.field, m.nrows, (m.apply(r) for r in self.rows))

    def __or__(self, other):
        return self.join(other)

    def __and__(self, other):
        return self.intersect(other)

    def __le__(self, other):
        return self.is_subspace_of(other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field})"


def kernel(m: Matrix) -> Subspace:
    """Null space ``{x : m x = 0}``."""
    f = m.field
    ech = SpanBuilder(f, m.ncols, m.rows)
    pivots = set(ech.rows)
    vecs = []
    for free in range(m.ncols):
        if free in pivots:
            continue
        v = {free: f.one}
        for p, r in ech.rows.items():
            a = r.get(free, 0)
            if a != 0:
                v[p] = f.norm(-a)
        vecs.append(v)
    return SpanBuilder(f, m.ncols, vecs).freeze()


def join(a: Subspace, b: Subspace) -> Subspace:
    return a.join(b)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def contains(a: Subspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise AmbientMismatch(f"vector of length {len(v)} in ambient {a.ambient_dim}")
    return a.contains(v)


def preimage(m: Matrix, w: Subspace) -> Subspace:
    """``{x : m x in w}``."""
    if w.ambient_dim != m.nrows:
        raise AmbientMismatch("target subspace does not live in the codomain")
    ann = w.annihilator()
    if ann.dim == 0:
        return Subspace.full(m.field, m.ncols)
    a = Matrix(m.field, ann.dim, m.nrows, ann.rows)
    return kernel(a.compose(m))


def unit_vector(field: FieldSpec, n: int, i: int) -> tuple:
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def add_vectors(field: FieldSpec, *vs) -> tuple:
    norm = field.norm
    return tuple(norm(sum(xs)) for xs in zip(*vs))


def scale_vector(field: FieldSpec, a, v) -> tuple:
    return tuple(field.norm(a * x) for x in v)

"""Lie algebras given by structure constants.

Only the brackets ``[b_i, b_j]`` with ``i < j`` are stored (0-based
indices internally); antisymmetry is structural.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, NamedTuple, Sequence

from .linalg import (
    QQ,
    AmbientMismatch,
    FieldMismatch,
    FieldSpec,
    Matrix,
    SpanBuilder,
    Subspace,
    kernel,
    unit_vector,
)


class StructureError(ValueError):
    """Malformed structure-constant table."""


class NotAnIdeal(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class JacobiViolation(NamedTuple):
    triple: tuple[int, int, int]
    residual: tuple


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[JacobiViolation, ...]
    triples_checked: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Finite dimensional Lie algebra over an exact field.

    ``sc`` maps ``(i, j)`` with ``0 <= i < j < dim`` to the sparse
    coefficient tuple ``((k, c_ij^k), ...)`` of ``[b_i, b_j]``.
    """

    name: str
    dim: int
    field: FieldSpec
    sc: Mapping[tuple[int, int], tuple] = dc_field(default_factory=dict)
    labels: tuple[str, ...] | None = None

    @classmethod
    def from_brackets(cls, name, dim, brackets, field=QQ, labels=None, one_based=False):
        """Build from ``{(i, j): {k: coeff}}`` or ``{(i, j): dense_vector}``.

        Pairs with ``i > j`` are accepted and flipped with a sign change.
        """
        off = 1 if one_based else 0
        sc: dict[tuple[int, int], dict[int, object]] = {}
        for (i, j), val in brackets.items():
            i, j = i - off, j - off
            if not (0 <= i < dim and 0 <= j < dim):
                raise StructureError(f"bracket index ({i + off}, {j + off}) out of range for dim {dim}")
            if i == j:
                raise StructureError(f"[b_{i + off}, b_{i + off}] must be zero, not listed")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if isinstance(val, Mapping):
                items = val.items()
            else:
                if len(val) != dim:
                    raise StructureError(f"coefficient vector of length {len(val)} for dim {dim}")
                items = enumerate(val)
            entry = sc.setdefault((i, j), {})
            for k, c in items:
                k = k - off if isinstance(val, Mapping) else k
                if not 0 <= k < dim:
                    raise StructureError(f"output index {k + off} out of range for dim {dim}")
                c = field(c)
                entry[k] = field.norm(entry.get(k, field.zero) + sign * c)
        clean = {}
        for key in sorted(sc):
            coeffs = tuple((k, c) for k, c in sorted(sc[key].items()) if c != 0)
            if coeffs:
                clean[key] = coeffs
        return cls(name, dim, field, clean, tuple(labels) if labels else None)

    # -- basic structure -------------------------------------------------

    def basis(self) -> list[tuple]:
        return [unit_vector(self.field, self.dim, i) for i in range(self.dim)]

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def vector(self, values: Sequence) -> tuple:
        if len(values) != self.dim:
            raise AmbientMismatch(f"vector of length {len(values)} for dim {self.dim}")
        return tuple(self.field(x) for x in values)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"x{i + 1}"

    def is_abelian(self) -> bool:
        return not self.sc

    def basis_bracket(self, i: int, j: int) -> tuple:
        if i == j:
            return self.zero_vector()
        out = [self.field.zero] * self.dim
        if i < j:
            for k, c in self.sc.get((i, j), ()):
                out[k] = c
        else:
            for k, c in self.sc.get((j, i), ()):
                out[k] = self.field.norm(-c)
        return tuple(out)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise AmbientMismatch(f"bracket of vectors with lengths {len(x)}, {len(y)} in dim {self.dim}")
        f = self.field
        acc = [f.zero] * self.dim
        for (i, j), coeffs in self.sc.items():
            a = x[i] * y[j] - x[j] * y[i]
            if a == 0:
                continue
            for k, c in coeffs:
                acc[k] += a * c
        return tuple(f.norm(v) for v in acc)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> [x, y]``."""
        if len(x) != self.dim:
            raise AmbientMismatch(f"vector of length {len(x)} for dim {self.dim}")
        f = self.field
        n = self.dim
        m = [[f.zero] * n for _ in range(n)]
        for (i, j), coeffs in self.sc.items():
            xi, xj = x[i], x[j]
            if xi != 0:
                for k, c in coeffs:
                    m[k][j] += xi * c
            if xj != 0:
                for k, c in coeffs:
                    m[k][i] -= xj * c
        return Matrix(f, n, n, tuple(tuple(f.norm(v) for v in r) for r in m))

    def over(self, field: FieldSpec) -> "LieAlgebra":
        """Same structure constants read in another field (e.g. reduction mod p)."""
        if field == self.field:
            return self
        if self.field != QQ:
            raise FieldMismatch(f"can only change field from Q, not from {self.field}")
        sc = {}
        for key, coeffs in self.sc.items():
            c2 = tuple((k, field(c)) for k, c in coeffs)
            c2 = tuple((k, c) for k, c in c2 if c != 0)
            if c2:
                sc[key] = c2
        return LieAlgebra(self.name, self.dim, field, sc, self.labels)

    def structurally_equal(self, other: "LieAlgebra") -> bool:
        return (self.dim == other.dim and self.field == other.field
                and dict(self.sc) == dict(other.sc))

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim}, field={self.field})"


def validate(L: LieAlgebra) -> ValidationReport:
    """Check the Jacobi identity on every basis triple ``i < j < k``."""
    n = L.dim
    basis = L.basis()
    brackets = {(i, j): L.basis_bracket(i, j) for i in range(n) for j in range(n)}
    bad = []
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                count += 1
                r1 = L.bracket(brackets[i, j], basis[k])
                r2 = L.bracket(brackets[j, k], basis[i])
                r3 = L.bracket(brackets[k, i], basis[j])
                res = tuple(L.field.norm(a + b + c) for a, b, c in zip(r1, r2, r3))
                if any(res):
                    bad.append(JacobiViolation((i, j, k), res))
    return ValidationReport(tuple(bad), count)


def bracket(L: LieAlgebra, x, y) -> tuple:
    return L.bracket(x, y)


def bracket_space(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of ``[u, v]`` for ``u`` in ``a`` and ``v`` in ``b``."""
    out = SpanBuilder(L.field, L.dim)
    for u in a.rows:
        for v in b.rows:
            out.add(L.bracket(u, v))
    return out.freeze()


def derived(L: LieAlgebra) -> Subspace:
    out = SpanBuilder(L.field, L.dim)
    for (i, j) in L.sc:
        out.add(L.basis_bracket(i, j))
    return out.freeze()


def centralizer(L: LieAlgebra, x) -> Subspace:
    return kernel(L.ad(x))


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    if n == 0:
        return Subspace.zero(L.field, 0)
    # stack ad(b_i) for every i; the common kernel is the center
    rows = []
    for i in range(n):
        rows.extend(L.ad(unit_vector(L.field, n, i)).rows)
    return kernel(Matrix(L.field, len(rows), n, tuple(rows)))


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """``[L, L^2, L^3, ...]`` up to and including the first repeated term."""
    full = Subspace.full(L.field, L.dim)
    series = [full]
    while True:
        nxt = bracket_space(L, full, series[-1])
        series.append(nxt)
        if nxt == series[-2]:
            return series


def nilpotency_class(L: LieAlgebra) -> int | None:
    """Nilpotency class, or ``None`` when ``L`` is not nilpotent."""
    series = lower_central_series(L)
    if series[-1].dim != 0:
        return None
    for idx, s in enumerate(series):
        if s.dim == 0:
            return idx
    return None


def is_nilpotent(L: LieAlgebra) -> bool:
    return nilpotency_class(L) is not None


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    if L1.field != L2.field:
        raise FieldMismatch(f"{L1.field} vs {L2.field}")
    n1 = L1.dim
    sc = dict(L1.sc)
    for (i, j), coeffs in L2.sc.items():
        sc[(i + n1, j + n1)] = tuple((k + n1, c) for k, c in coeffs)
    labels = None
    if L1.labels or L2.labels:
        labels = tuple(L1.label(i) for i in range(n1)) + tuple(
            L2.label(i) + "'" for i in range(L2.dim))
    return LieAlgebra(name or f"{L1.name}+{L2.name}", n1 + L2.dim, L1.field, dict(sorted(sc.items())), labels)


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    for u in S.rows:
        for i in range(L.dim):
            if not S.contains(L.bracket(unit_vector(L.field, L.dim, i), u)):
                return False
    return True


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return all(S.contains(L.bracket(u, v)) for u in S.rows for v in S.rows)


def subalgebra_closure(L: LieAlgebra, S: Subspace) -> Subspace:
    """Smallest subalgebra containing ``S``."""
    cur = S
    while True:
        b = cur.builder()
        rows = cur.rows
        for a in range(len(rows)):
            for c in range(a + 1, len(rows)):
                b.add(L.bracket(rows[a], rows[c]))
        nxt = b.freeze()
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def ideal_closure(L: LieAlgebra, S: Subspace) -> Subspace:
    """Smallest ideal containing ``S``."""
    b = S.builder()
    queue = list(S.rows)
    basis = L.basis()
    while queue:
        u = queue.pop()
        for e in basis:
            w = L.bracket(e, u)
            if b.add(w):
                queue.append(w)
    return b.freeze()


def complement_indices(S: Subspace) -> tuple[int, ...]:
    """Standard basis positions completing the echelon basis of ``S``."""
    return S.free_columns()


def quotient_algebra(L: LieAlgebra, I: Subspace, name: str | None = None) -> tuple[LieAlgebra, Matrix]:
    """``L / I`` in the basis of standard vectors at the non-pivot columns of ``I``.

    Returns the quotient and the projection matrix ``L -> L/I``.
    """
    if I.ambient_dim != L.dim:
        raise AmbientMismatch("ideal does not live in L")
    if not is_ideal(L, I):
        raise NotAnIdeal(f"subspace of dim {I.dim} is not an ideal of {L.name}")
    free = I.free_columns()
    q = len(free)
    proj_cols = [I.quotient_coords(e) for e in L.basis()]
    proj = Matrix.from_columns(L.field, proj_cols, q)
    brackets = {}
    for a in range(q):
        for b in range(a + 1, q):
            v = L.basis_bracket(free[a], free[b])
            coords = I.quotient_coords(v)
            if any(coords):
                brackets[(a, b)] = {k: c for k, c in enumerate(coords) if c != 0}
    labels = tuple(L.label(i) for i in free) if L.labels else None
    Q = LieAlgebra.from_brackets(name or f"{L.name}/I", q, brackets, L.field, labels)
    return Q, proj

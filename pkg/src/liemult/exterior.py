"""Nonabelian exterior square ``L ^ L`` as ``Lambda^2 L`` modulo Jacobi boundaries.

Coordinates of ``Lambda^2 L`` are the pairs ``(i, j)``, ``i < j``, in
lexicographic order.  The relation subspace is spanned by

    r(i, j, k) = [b_i, b_j] ^ b_k - b_i ^ [b_j, b_k] + b_j ^ [b_i, b_k]

over basis triples.  Quotient coordinates of ``L ^ L`` are the free
(non-pivot) columns of that relation subspace.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import NamedTuple, Sequence

from .lie import LieAlgebra, derived
from .linalg import AmbientMismatch, Matrix, SpanBuilder, Subspace, kernel


class SubspaceNotContained(ValueError):
    pass


def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(combinations(range(n), 2))}


def wedge_coords(field, n: int, x: Sequence, y: Sequence, index=None) -> tuple:
    """Coordinates of ``x ^ y`` in ``Lambda^2``: ``(i, j) -> x_i y_j - x_j y_i``."""
    norm = field.norm
    out = []
    for i in range(n):
        xi, yi = x[i], y[i]
        for j in range(i + 1, n):
            out.append(norm(xi * y[j] - x[j] * yi))
    return tuple(out)


def _wedge_sparse(field, n, x, y, index) -> dict:
    norm = field.norm
    nx = [i for i in range(n) if x[i] != 0]
    ny = [i for i in range(n) if y[i] != 0]
    out = {}
    for i in nx:
        for j in ny:
            if i == j:
                continue
            a, b = (i, j) if i < j else (j, i)
            s = 1 if i < j else -1
            c = index[a, b]
            out[c] = out.get(c, 0) + s * x[i] * y[j]
    return {c: norm(v) for c, v in out.items() if norm(v) != 0}


@dataclass(frozen=True, eq=False)
class WedgeElement:
    """Element of ``L ^ L``, stored as its canonical ``Lambda^2`` representative."""

    coords: tuple

    def __eq__(self, other):
        return isinstance(other, WedgeElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


class ExteriorSquare:
    """Quotient data for ``L ^ L``: relations, the commutator map, coordinates."""

    def __init__(self, L: LieAlgebra):
        self.algebra = L
        self.field = L.field
        n = L.dim
        self.n = n
        self.pairs = list(combinations(range(n), 2))
        self.index = {p: k for k, p in enumerate(self.pairs)}
        self.wedge_dim = len(self.pairs)
        self.relationsB = self._relations()
        cols = [L.basis_bracket(i, j) for (i, j) in self.pairs]
        self.kappa = Matrix.from_columns(L.field, cols, n) if n else Matrix.zero(L.field, 0, 0)
        self.free = self.relationsB.free_columns()

    def relation_vector(self, i: int, j: int, k: int) -> dict:
        L, f = self.algebra, self.field
        basis = L.basis()
        terms = (
            (1, L.basis_bracket(i, j), basis[k]),
            (-1, basis[i], L.basis_bracket(j, k)),
            (1, basis[j], L.basis_bracket(i, k)),
        )
        out: dict[int, object] = {}
        for s, x, y in terms:
            for c, v in _wedge_sparse(f, self.n, x, y, self.index).items():
                out[c] = f.norm(out.get(c, 0) + s * v)
        return {c: v for c, v in out.items() if v != 0}

    def _relations(self) -> Subspace:
        b = SpanBuilder(self.field, self.wedge_dim)
        for i, j, k in combinations(range(self.n), 3):
            r = self.relation_vector(i, j, k)
            if r:
                b.add(r)
        return b.freeze()

    # -- dimensions --------------------------------------------------------

    @property
    def dim(self) -> int:
        """``dim L ^ L``."""
        return self.wedge_dim - self.relationsB.dim

    @cached_property
    def derived(self) -> Subspace:
        return derived(self.algebra)

    # -- elements ----------------------------------------------------------

    def wedge(self, x: Sequence, y: Sequence) -> WedgeElement:
        if len(x) != self.n or len(y) != self.n:
            raise AmbientMismatch(f"wedge of vectors with lengths {len(x)}, {len(y)} in dim {self.n}")
        raw = wedge_coords(self.field, self.n, x, y)
        return WedgeElement(self.relationsB.reduce(raw))

    def element(self, coords: Sequence) -> WedgeElement:
        """A ``Lambda^2`` vector read in ``L ^ L``."""
        return WedgeElement(self.relationsB.reduce(coords))

    def to_quotient(self, coords: Sequence) -> tuple:
        """Quotient coordinates (indexed by ``self.free``) of a ``Lambda^2`` vector."""
        return self.relationsB.quotient_coords(coords)

    def wedge_quotient(self, x: Sequence, y: Sequence) -> tuple:
        return self.to_quotient(wedge_coords(self.field, self.n, x, y))

    def from_quotient(self, q: Sequence) -> tuple:
        out = [self.field.zero] * self.wedge_dim
        for c, v in zip(self.free, q):
            out[c] = v
        return tuple(out)

    def kappa_of(self, coords: Sequence) -> tuple:
        return self.kappa.apply(coords)

    @cached_property
    def kappa_quotient(self) -> Matrix:
        """The commutator map on quotient coordinates."""
        cols = [self.kappa.column(c) for c in self.free]
        if not cols:
            return Matrix.zero(self.field, self.n, 0)
        return Matrix.from_columns(self.field, cols, self.n)

    def pair_label(self, c: int) -> str:
        i, j = self.pairs[c]
        L = self.algebra
        return f"{L.label(i)}^{L.label(j)}"


def exterior_square(L: LieAlgebra) -> ExteriorSquare:
    return ExteriorSquare(L)


def wedge(ES: ExteriorSquare, x, y) -> WedgeElement:
    return ES.wedge(x, y)


def schur_multiplier(ES: ExteriorSquare) -> Subspace:
    """``M(L) = ker(kappa)`` inside the quotient coordinates of ``L ^ L``."""
    return kernel(ES.kappa_quotient)


def schur_dim(ES: ExteriorSquare) -> int:
    """``dim L ^ L - dim L^2`` (the commutator map is onto ``L^2``)."""
    return ES.dim - ES.derived.dim


def wedge_bracket(ES: ExteriorSquare, gen1: tuple, gen2: tuple) -> WedgeElement:
    """``[(m ^ n), (m' ^ n')] = -[n, m] ^ [m', n'] = [m, n] ^ [m', n']``."""
    (m, n), (m2, n2) = gen1, gen2
    L = ES.algebra
    return ES.wedge(L.bracket(m, n), L.bracket(m2, n2))


class CurlyDims(NamedTuple):
    curly: int
    bogomolov: int
    derived: int


def curly_dims(ES: ExteriorSquare, M0: Subspace, M: Subspace | None = None) -> CurlyDims:
    """Dimensions of ``L curly L``, ``B0~(L)`` and ``L^2`` given ``M0``.

    ``M0`` lives in quotient coordinates and must lie inside ``M(L)``.
    """
    if M is None:
        M = schur_multiplier(ES)
    if not M0.is_subspace_of(M):
        raise SubspaceNotContained("M0 is not contained in M(L)")
    curly = ES.dim - M0.dim
    b0 = M.dim - M0.dim
    d2 = ES.derived.dim
    assert curly == b0 + d2, "0 -> B0 -> L curly L -> L^2 -> 0 fails to be exact"
    return CurlyDims(curly, b0, d2)


class TSInvariants(NamedTuple):
    t: int
    s: int
    s_negative: bool
    s_standard: int


def t_s_invariants(L: LieAlgebra, ES: ExteriorSquare | None = None) -> TSInvariants:
    """The ``t(L)`` and ``s(L)`` defects.

    ``s`` uses ``n(n-1)(n-2)/2 + 1 - dim M`` literally; ``s_standard`` uses
    ``(n-1)(n-2)/2 + 1 - dim M`` for comparison.
    """
    ES = ES or ExteriorSquare(L)
    n = L.dim
    dm = schur_dim(ES)
    t = n * (n - 1) // 2 - dm
    s = n * (n - 1) * (n - 2) // 2 + 1 - dm
    s_std = (n - 1) * (n - 2) // 2 + 1 - dm
    return TSInvariants(t, s, s < 0, s_std)

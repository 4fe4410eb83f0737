"""Built-in algebras: abelian, Heisenberg, nilpotent of dimension <= 6, and
the classical families sl, so, sp on matrix-unit bases.

Keys use the textual grammar ``A:n``, ``H:m``, ``L:d:k`` (with ``?eps=e``
for the one-parameter families), ``sl:n``, ``so:n``, ``sp:n``; a ``+``
joins keys into a direct sum, e.g. ``H:2+A:1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .lie import LieAlgebra, direct_sum
from .linalg import QQ, FieldSpec, SpanBuilder


class UnknownKey(KeyError):
    pass


class MissingEpsilon(ValueError):
    pass


EPSILON_FAMILIES = {19, 21, 22, 24}

# brackets of the indecomposable nilpotent algebras, 1-based [x_i, x_j] = c x_k
_NILPOTENT = {
    (3, 2): {(1, 2): {3: 1}},
    (4, 3): {(1, 2): {3: 1}, (1, 3): {4: 1}},
    (5, 4): {(1, 2): {5: 1}, (3, 4): {5: 1}},
    (5, 5): {(1, 2): {3: 1}, (1, 3): {5: 1}, (2, 4): {5: 1}},
    (5, 6): {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}},
    (5, 7): {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}},
    (5, 8): {(1, 2): {4: 1}, (1, 3): {5: 1}},
    (5, 9): {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 3): {5: 1}},
    (6, 10): {(1, 2): {3: 1}, (1, 3): {6: 1}, (4, 5): {6: 1}},
    (6, 11): {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {6: 1}, (2, 3): {6: 1}, (2, 5): {6: 1}},
    (6, 12): {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {6: 1}, (2, 5): {6: 1}},
    (6, 13): {(1, 2): {3: 1}, (1, 3): {5: 1}, (2, 4): {5: 1}, (1, 5): {6: 1}, (3, 4): {6: 1}},
    (6, 14): {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1},
              (2, 5): {6: 1}, (3, 4): {6: -1}},
    (6, 15): {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1},
              (1, 5): {6: 1}, (2, 4): {6: 1}},
    (6, 16): {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 5): {6: 1}, (3, 4): {6: -1}},
    (6, 17): {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (1, 5): {6: 1}, (2, 3): {6: 1}},
    (6, 18): {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (1, 5): {6: 1}},
    (6, 20): {(1, 2): {4: 1}, (1, 3): {5: 1}, (1, 5): {6: 1}, (2, 4): {6: 1}},
    (6, 23): {(1, 2): {3: 1}, (1, 3): {5: 1}, (2, 4): {5: 1}, (1, 4): {6: 1}},
    (6, 25): {(1, 2): {3: 1}, (1, 3): {5: 1}, (1, 4): {6: 1}},
    (6, 26): {(1, 2): {4: 1}, (1, 3): {5: 1}, (2, 3): {6: 1}},
}


def _eps_brackets(k: int, eps) -> dict:
    if k == 19:
        return {(1, 2): {4: 1}, (1, 3): {5: 1}, (2, 4): {6: 1}, (3, 5): {6: eps}}
    if k == 21:
        return {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 3): {5: 1}, (1, 4): {6: 1}, (2, 5): {6: eps}}
    if k == 22:
        return {(1, 2): {5: 1}, (1, 3): {6: 1}, (2, 4): {6: eps}, (3, 4): {5: 1}}
    if k == 24:
        return {(1, 2): {3: 1}, (1, 3): {5: 1}, (2, 4): {5: 1}, (1, 4): {6: eps}, (2, 3): {6: 1}}
    raise UnknownKey(f"L:6:{k} has no parameter")


# number of isomorphism classes listed per dimension
NILPOTENT_COUNTS = {1: 1, 2: 1, 3: 2, 4: 3, 5: 9, 6: 26}


@dataclass(frozen=True)
class CatalogKey:
    family: str
    params: tuple[int, ...]
    eps: Union[Fraction, None] = None
    summands: tuple["CatalogKey", ...] = ()

    def __str__(self):
        if self.family == "sum":
            return "+".join(str(s) for s in self.summands)
        text = ":".join([self.family, *map(str, self.params)])
        if self.eps is not None:
            text += f"?eps={self.eps}"
        return text

    @property
    def display(self) -> str:
        if self.family == "sum":
            return " + ".join(s.display for s in self.summands)
        if self.family == "L":
            d, k = self.params
            base = f"L{d},{k}"
            return base + (f"({self.eps})" if self.eps is not None else "")
        return f"{self.family}({self.params[0]})"

    @classmethod
    def parse(cls, text: str) -> "CatalogKey":
        text = text.strip()
        if text.startswith("catalog:"):
            text = text[len("catalog:"):]
        if "+" in text:
            return cls("sum", (), None, tuple(cls.parse(t) for t in text.split("+")))
        eps = None
        if "?" in text:
            text, query = text.split("?", 1)
            for part in query.split("&"):
                k, _, v = part.partition("=")
                if k != "eps":
                    raise UnknownKey(f"unknown catalog option {k!r}")
                eps = Fraction(v)
        parts = text.split(":")
        family = parts[0]
        try:
            params = tuple(int(p) for p in parts[1:])
        except ValueError:
            raise UnknownKey(f"bad catalog key {text!r}") from None
        key = cls(family, params, eps)
        key.check()
        return key

    def check(self):
        f, p = self.family, self.params
        if f == "sum":
            for s in self.summands:
                s.check()
            return
        if f in ("A", "H", "sl", "so", "sp") and len(p) != 1:
            raise UnknownKey(f"{f} takes one parameter")
        if f == "A" and p[0] < 0:
            raise UnknownKey("A(n) needs n >= 0")
        elif f == "H" and p[0] < 1:
            raise UnknownKey("H(m) needs m >= 1")
        elif f == "sl" and p[0] < 2:
            raise UnknownKey("sl(n) needs n >= 2")
        elif f == "so" and p[0] < 3:
            raise UnknownKey("so(n) needs n >= 3")
        elif f == "sp" and p[0] < 1:
            raise UnknownKey("sp(n) needs n >= 1")
        elif f == "L":
            if len(p) != 2:
                raise UnknownKey("L takes dimension and index")
            d, k = p
            if d not in NILPOTENT_COUNTS or not 1 <= k <= NILPOTENT_COUNTS[d]:
                raise UnknownKey(f"no algebra L{d},{k}")
            if d == 6 and k in EPSILON_FAMILIES:
                if self.eps is None:
                    raise MissingEpsilon(f"L6,{k} needs ?eps=")
            elif self.eps is not None:
                raise UnknownKey(f"L{d},{k} takes no parameter")
        elif f not in ("A", "H", "sl", "so", "sp"):
            raise UnknownKey(f"unknown family {f!r}")


def abelian(n: int, field: FieldSpec = QQ) -> LieAlgebra:
    return LieAlgebra(f"A({n})", n, field, {})


def heisenberg(m: int, field: FieldSpec = QQ) -> LieAlgebra:
    n = 2 * m + 1
    br = {(2 * i, 2 * i + 1): {n - 1: 1} for i in range(m)}
    labels = tuple(f"v{i + 1}" for i in range(2 * m)) + ("v",)
    return LieAlgebra.from_brackets(f"H({m})", n, br, field, labels)


def nilpotent(d: int, k: int, eps=None, field: FieldSpec = QQ) -> LieAlgebra:
    """The algebra ``L_{d,k}`` of the standard low-dimensional list."""
    key = CatalogKey("L", (d, k), None if eps is None else Fraction(eps))
    key.check()
    name = key.display
    if d == 1:
        return LieAlgebra(name, 1, field, {})
    if d == 2:
        return LieAlgebra(name, 2, field, {})
    if d == 3 and k == 1:
        return LieAlgebra(name, 3, field, {})
    # L_{d,k} = L_{d-1,k} + I for the decomposable ones
    if (d == 4 and k <= 2) or (d == 5 and k <= 3) or (d == 6 and k <= 9):
        lower = nilpotent(d - 1, k, field=field)
        s = direct_sum(lower, abelian(1, field), name)
        return LieAlgebra(name, d, field, s.sc, tuple(f"x{i + 1}" for i in range(d)))
    if d == 6 and k in EPSILON_FAMILIES:
        br = _eps_brackets(k, key.eps)
    else:
        br = _NILPOTENT[(d, k)]
    return LieAlgebra.from_brackets(name, d, br, field, tuple(f"x{i + 1}" for i in range(d)),
                                    one_based=True)


# ---------------------------------------------------------------------------
# classical algebras on matrix bases
# ---------------------------------------------------------------------------

def _unit(n, i, j):
    return {(i, j): 1}


def _mat_add(*terms):
    out = {}
    for c, m in terms:
        for ij, v in m.items():
            out[ij] = out.get(ij, 0) + c * v
    return {ij: v for ij, v in out.items() if v != 0}


def _commutator(a, b):
    out = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            if j == k:
                out[(i, l)] = out.get((i, l), 0) + x * y
            if l == i:
                out[(k, j)] = out.get((k, j), 0) - x * y
    return {ij: v for ij, v in out.items() if v != 0}


def from_matrix_basis(name: str, size: int, mats: list[dict], labels, field: FieldSpec = QQ) -> LieAlgebra:
    """Structure constants of the matrix Lie algebra spanned by ``mats``.

    Commutators are expressed in the basis by an exact left inverse; a
    commutator outside the span raises ``ValueError``.
    """
    N = size * size
    n = len(mats)

    def flat(m):
        v = [0] * N
        for (i, j), x in m.items():
            v[i * size + j] = x
        return v

    # rows [vec(b_r) | e_r]; reduced echelon gives a left inverse on pivots
    aug = SpanBuilder(QQ, N + n)
    for r, m in enumerate(mats):
        aug.add([Fraction(x) for x in flat(m)] + [Fraction(int(r == c)) for c in range(n)])
    pivot_rows = {p: row for p, row in aug.rows.items() if p < N}
    if len(pivot_rows) != n:
        raise ValueError("matrix basis is linearly dependent")

    def coords(m):
        v = flat(m)
        out = [Fraction(0)] * n
        for p, row in pivot_rows.items():
            if v[p]:
                for k, x in row.items():
                    if k >= N:
                        out[k - N] += v[p] * x
        check = [0] * N
        for c, b in zip(out, mats):
            for (i, j), x in b.items():
                check[i * size + j] += c * x
        if check != v:
            raise ValueError("commutator leaves the span")
        return out

    br = {}
    for a in range(n):
        for b in range(a + 1, n):
            c = _commutator(mats[a], mats[b])
            if c:
                co = coords(c)
                br[(a, b)] = {k: x for k, x in enumerate(co) if x != 0}
    L = LieAlgebra.from_brackets(name, n, br, QQ, labels)
    return L.over(field)


def special_linear(n: int, field: FieldSpec = QQ) -> LieAlgebra:
    """sl(n) on ``E_ii - E_{i+1,i+1}`` and the off-diagonal ``E_ij``."""
    mats, labels = [], []
    for i in range(n - 1):
        mats.append(_mat_add((1, _unit(n, i, i)), (-1, _unit(n, i + 1, i + 1))))
        labels.append(f"D{i + 1}{i + 2}")
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(_unit(n, i, j))
                labels.append(f"E{i + 1}{j + 1}")
    return from_matrix_basis(f"sl({n})", n, mats, labels, field)


def special_orthogonal(m: int, field: FieldSpec = QQ) -> LieAlgebra:
    """so(m) on ``D_ij = E_ij - E_ji``, ``i < j``."""
    mats, labels = [], []
    for i in range(m):
        for j in range(i + 1, m):
            mats.append(_mat_add((1, _unit(m, i, j)), (-1, _unit(m, j, i))))
            labels.append(f"D{i + 1},{j + 1}")
    return from_matrix_basis(f"so({m})", m, mats, labels, field)


def symplectic(n: int, field: FieldSpec = QQ) -> LieAlgebra:
    """sp(n) (2n x 2n matrices) on the H, X, Y, Z, U, V basis."""
    s = 2 * n
    mats, labels = [], []
    for i in range(n):
        mats.append(_mat_add((1, _unit(s, i, i)), (-1, _unit(s, n + i, n + i))))
        labels.append(f"H{i + 1}")
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(_mat_add((1, _unit(s, i, j)), (-1, _unit(s, n + j, n + i))))
                labels.append(f"X{i + 1}{j + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(_mat_add((1, _unit(s, i, n + j)), (1, _unit(s, j, n + i))))
            labels.append(f"Y{i + 1}{j + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(_mat_add((1, _unit(s, n + i, j)), (1, _unit(s, n + j, i))))
            labels.append(f"Z{i + 1}{j + 1}")
    for i in range(n):
        mats.append(_unit(s, i, n + i))
        labels.append(f"U{i + 1}")
    for i in range(n):
        mats.append(_unit(s, n + i, i))
        labels.append(f"V{i + 1}")
    return from_matrix_basis(f"sp({n})", s, mats, labels, field)


@lru_cache(maxsize=None)
def _get_cached(key: CatalogKey, field: FieldSpec) -> LieAlgebra:
    f, p = key.family, key.params
    if f == "sum":
        parts = [_get_cached(s, field) for s in key.summands]
        out = parts[0]
        for q in parts[1:]:
            out = direct_sum(out, q)
        return LieAlgebra(key.display, out.dim, field, out.sc, out.labels)
    if f == "A":
        return abelian(p[0], field)
    if f == "H":
        return heisenberg(p[0], field)
    if f == "L":
        return nilpotent(p[0], p[1], key.eps, field)
    if f == "sl":
        return special_linear(p[0], field)
    if f == "so":
        return special_orthogonal(p[0], field)
    if f == "sp":
        return symplectic(p[0], field)
    raise UnknownKey(str(key))


def get(key: Union[CatalogKey, str], field: FieldSpec = QQ) -> LieAlgebra:
    if isinstance(key, str):
        key = CatalogKey.parse(key)
    key.check()
    return _get_cached(key, field)


def nilpotent_keys(dim: int) -> list[CatalogKey]:
    """Catalog entries of the given dimension, with the fixed eps instances."""
    keys = []
    for k in range(1, NILPOTENT_COUNTS[dim] + 1):
        if dim == 6 and k in EPSILON_FAMILIES:
            for e in DEFAULT_EPSILONS[k]:
                keys.append(CatalogKey("L", (6, k), Fraction(e)))
        else:
            keys.append(CatalogKey("L", (dim, k)))
    return keys


DEFAULT_EPSILONS = {19: (1,), 21: (1,), 22: (0,), 24: (0, 1)}

CLASSICAL_KEYS = [CatalogKey.parse(t) for t in
                  ("sl:2", "sl:3", "sl:4", "so:5", "so:7", "so:8", "sp:3")]


def all_keys() -> list[CatalogKey]:
    keys = []
    for d in range(1, 7):
        keys.extend(nilpotent_keys(d))
    keys.extend(CatalogKey("H", (m,)) for m in range(1, 5))
    keys.extend(CLASSICAL_KEYS)
    return keys


# ---------------------------------------------------------------------------
# expected results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpectedResult:
    key: CatalogKey
    expected_B0: Union[str, int]  # "zero", "positive" or an exact dimension
    source: str

    def matches(self, dim_b0: int) -> bool:
        if self.expected_B0 == "zero":
            return dim_b0 == 0
        if self.expected_B0 == "positive":
            return dim_b0 > 0
        return dim_b0 == self.expected_B0


DIM6_NONZERO = {(6, 6, None), (6, 13, None), (6, 14, None), (6, 15, None), (6, 19, Fraction(1)),
                (6, 20, None), (6, 21, Fraction(1)), (6, 22, Fraction(0)), (6, 23, None),
                (6, 24, Fraction(0)), (6, 24, Fraction(1))}

_TABLE_OF_DIM = {1: "dim3", 2: "dim3", 3: "dim3", 4: "dim4", 5: "dim5", 6: "dim6"}
_THM_OF_DIM = {1: "Thm 6.1", 2: "Thm 6.1", 3: "Thm 6.2", 4: "Thm 6.3", 5: "Thm 6.4", 6: "Thm 6.5"}


def expected_results() -> list[ExpectedResult]:
    out = []
    for d in range(1, 7):
        for key in nilpotent_keys(d):
            k = key.params[1]
            if d == 5 and k == 6:
                out.append(ExpectedResult(key, 1, "Thm 6.4"))
            elif d == 6 and (6, k, key.eps) in DIM6_NONZERO:
                out.append(ExpectedResult(key, "positive", "Thm 6.5"))
            else:
                out.append(ExpectedResult(key, "zero", _THM_OF_DIM[d]))
    out.append(ExpectedResult(CatalogKey("H", (1,)), "zero", "Thm 5.1"))
    for m in range(2, 5):
        out.append(ExpectedResult(CatalogKey("H", (m,)), "zero", "Thm 5.2"))
    for m in range(1, 4):
        for k in range(1, 4):
            out.append(ExpectedResult(CatalogKey.parse(f"H:{m}+A:{k}"), "zero", "Lemma 5.3"))
    tags = {"sl": "Thm 7.4", "so": "Thm 7.5", "sp": "Thm 7.7"}
    for key in CLASSICAL_KEYS:
        tag = tags[key.family]
        if key.family == "so" and key.params[0] % 2 == 0:
            tag = "Thm 7.6"
        out.append(ExpectedResult(key, "zero", tag))
    return out


def table_of(er: ExpectedResult) -> str:
    key = er.key
    if key.family == "L":
        return _TABLE_OF_DIM[key.params[0]]
    if key.family in ("H", "sum"):
        return "heisenberg"
    return "classical"

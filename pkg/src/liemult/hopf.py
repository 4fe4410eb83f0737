"""Free nilpotent Lie algebras and the Hopf-formula route to ``M(L)`` and ``B0~(L)``.

The free Lie algebra on ``d`` generators is coordinatized by the Lyndon
family of Hall words: the standard bracketing ``P_w`` of a Lyndon word
``w`` expands in the free associative algebra as ``w`` plus
lexicographically larger words, so any Lie polynomial is rewritten in the
basis by repeatedly peeling off its smallest word.

For ``L`` nilpotent of class ``c`` the free algebra is truncated at class
``c + 1``: weight ``c + 2`` and above lies in ``[R, F]``, so the cover
``F / [R, F]`` is unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import NamedTuple

from .bogomolov import (
    Exhaustive,
    Mode,
    ModeUnsupported,
    MultiplierReport,
    Sampled,
    Sweeper,
    SweepStats,
    _dense,
    _status,
    run_sweep,
)
from .lie import (
    LieAlgebra,
    NotAnIdeal,
    NotNilpotent,
    derived,
    is_ideal,
    nilpotency_class,
    quotient_algebra,
    subalgebra_closure,
)
from .linalg import QQ, FieldSpec, Matrix, SpanBuilder, Subspace, kernel, preimage


# ---------------------------------------------------------------------------
# Hall (Lyndon) basis
# ---------------------------------------------------------------------------

def lyndon_words(d: int, max_len: int) -> list[tuple[int, ...]]:
    """Lyndon words over ``range(d)`` of length <= ``max_len`` (Duval), weight-major."""
    words = []
    if d <= 0 or max_len <= 0:
        return words
    w = [-1]
    while w:
        w[-1] += 1
        words.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == d - 1:
            w.pop()
    return sorted(words, key=lambda t: (len(t), t))


def _is_lyndon(w) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w))) if len(w) > 1 else True


def standard_factorization(w: tuple) -> tuple[tuple, tuple]:
    """``w = u v`` with ``v`` the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


def moebius(n: int) -> int:
    res, k, m = 1, 2, n
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            res = -res
        k += 1
    return -res if m > 1 else res


def witt_dimension(d: int, w: int) -> int:
    """Dimension of the weight-``w`` part of the free Lie algebra on ``d`` generators."""
    return sum(moebius(e) * d ** (w // e) for e in range(1, w + 1) if w % e == 0) // w


@dataclass(frozen=True)
class HallBasis:
    generators: int
    max_weight: int
    elements: tuple[tuple[int, ...], ...]   # Lyndon words
    weights: tuple[int, ...]

    def weight_of(self, idx: int) -> int:
        return self.weights[idx]

    def factors(self, idx: int) -> tuple[int, int] | None:
        """Indices of the standard factors of element ``idx`` (None for generators)."""
        w = self.elements[idx]
        if len(w) == 1:
            return None
        u, v = standard_factorization(w)
        pos = self.position
        return pos[u], pos[v]

    @property
    def position(self) -> dict:
        return {w: i for i, w in enumerate(self.elements)}

    def tree(self, idx: int) -> str:
        w = self.elements[idx]
        if len(w) == 1:
            return f"x{w[0] + 1}"
        a, b = self.factors(idx)
        return f"[{self.tree(a)},{self.tree(b)}]"

    def __len__(self):
        return len(self.elements)


@lru_cache(maxsize=None)
def hall_basis(d: int, c: int) -> HallBasis:
    if d < 1 or c < 1:
        raise ValueError("need d >= 1 and c >= 1")
    words = lyndon_words(d, c)
    return HallBasis(d, c, tuple(words), tuple(len(w) for w in words))


def _poly_bracket(a: dict, b: dict) -> dict:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            out[u + v] = out.get(u + v, 0) + x * y
            out[v + u] = out.get(v + u, 0) - x * y
    return {w: c for w, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def _free_nilpotent_constants(d: int, c: int) -> tuple[int, dict]:
    hb = hall_basis(d, c)
    pos = hb.position
    polys: list[dict] = []
    for i, w in enumerate(hb.elements):
        if len(w) == 1:
            polys.append({w: 1})
        else:
            a, b = hb.factors(i)
            polys.append(_poly_bracket(polys[a], polys[b]))

    def decompose(q: dict) -> dict:
        q = dict(q)
        out = {}
        while q:
            w = min(q)
            k = q[w]
            idx = pos[w]  # the smallest word of a Lie polynomial is Lyndon
            out[idx] = k
            for u, x in polys[idx].items():
                t = q.get(u, 0) - k * x
                if t:
                    q[u] = t
                else:
                    q.pop(u, None)
        return out

    sc = {}
    n = len(hb)
    for i in range(n):
        for j in range(i + 1, n):
            if hb.weights[i] + hb.weights[j] > c:
                continue
            val = decompose(_poly_bracket(polys[i], polys[j]))
            if val:
                sc[(i, j)] = val
    return n, sc


def free_nilpotent(d: int, c: int, field: FieldSpec = QQ) -> LieAlgebra:
    """Free nilpotent Lie algebra of class ``c`` on ``d`` generators (Lyndon basis)."""
    n, sc = _free_nilpotent_constants(d, c)
    hb = hall_basis(d, c)
    labels = tuple(hb.tree(i) for i in range(n))
    return LieAlgebra.from_brackets(f"F({d},{c})", n, sc, field, labels)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

class FreePresentation:
    """``L = F / R`` with ``F`` free nilpotent of class ``class(L) + 1``."""

    def __init__(self, L: LieAlgebra):
        cls = nilpotency_class(L)
        if cls is None:
            raise NotNilpotent(f"{L.name} is not nilpotent")
        self.L = L
        f = L.field
        self.field = f
        L2 = derived(L)
        self.gens = L2.free_columns()
        self.d = len(self.gens)
        self.cls = max(cls, 1)
        self.hall = hall_basis(self.d, self.cls + 1) if self.d else None
        if self.d == 0:
            # only the zero algebra has L = L^2 among nilpotent ones
            self.F = LieAlgebra("F(0)", 0, f, {})
        else:
            self.F = free_nilpotent(self.d, self.cls + 1, f)
        nF = self.F.dim
        images: list[tuple] = []
        for i in range(nF):
            fac = self.hall.factors(i)
            if fac is None:
                g = self.gens[self.hall.elements[i][0]]
                v = [f.zero] * L.dim
                v[g] = f.one
                images.append(tuple(v))
            else:
                a, b = fac
                images.append(L.bracket(images[a], images[b]))
        self.images = images
        self.pi = Matrix.from_columns(f, images, L.dim) if nF else Matrix.zero(f, L.dim, 0)
        self.R = kernel(self.pi)
        self.F2 = derived(self.F)
        rf = SpanBuilder(f, nF)
        basis = self.F.basis()
        for r in self.R.rows:
            for e in basis:
                rf.add(self.F.bracket(r, e))
        self.RF = rf.freeze()

    def surjective(self) -> bool:
        return self.pi.rank() == self.L.dim

    # -- the cover F / [R, F] -------------------------------------------

    @property
    def cover(self) -> tuple[LieAlgebra, Matrix]:
        if not hasattr(self, "_cover"):
            self._cover = quotient_algebra(self.F, self.RF, f"cover({self.L.name})")
        return self._cover

    def to_cover(self, S: Subspace) -> Subspace:
        C, proj = self.cover
        return S.image(proj)

    def cover_lifts(self) -> list[tuple]:
        """Images in the cover of chosen lifts of the basis of ``L``."""
        if hasattr(self, "_lifts"):
            return self._lifts
        f = self.field
        C, proj = self.cover
        # solve pi(u) = b_i in F by one echelon of [pi | I]
        n, nF = self.L.dim, self.F.dim
        aug = SpanBuilder(f, n + nF)
        for j in range(nF):
            col = list(self.pi.column(j)) + [f.one if k == j else f.zero for k in range(nF)]
            aug.add(col)
        lifts = []
        rows = {p: r for p, r in aug.rows.items() if p < n}
        for i in range(n):
            # b_i = sum over pivot rows p of coefficient ... rows are reduced, so row i is e_i | u_i
            r = rows[i]
            u = [f.zero] * nF
            for k, x in r.items():
                if k >= n:
                    u[k - n] = x
            lifts.append(proj.apply(tuple(u)))
        self._lifts = lifts
        return lifts


def presentation(L: LieAlgebra) -> FreePresentation:
    return FreePresentation(L)


def hopf_schur(P: FreePresentation) -> int:
    """``dim (R cap F^2) / [R, F]``."""
    return P.R.intersect(P.F2).dim - P.RF.dim


class CoverSpan(NamedTuple):
    span: Subspace        # inside the cover
    stats: SweepStats


def cover_bracket_span(P: FreePresentation, W: Subspace, mode: Mode,
                       target_dim: int | None = None) -> CoverSpan:
    """Span in ``F/[R,F]`` of brackets ``[u, v]`` landing in the preimage of ``W``.

    ``R/[R,F]`` is central in the cover, so ``[u, v]`` depends only on the
    images ``x, y`` in ``L`` and lands over ``W`` exactly when
    ``[x, y] in W``; the sweep runs over ``L`` and lifts each pair.
    """
    L, f = P.L, P.field
    C, _ = P.cover
    lifts = P.cover_lifts()
    n = L.dim
    # lifted bracket of basis pairs
    lb = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = C.bracket(lifts[i], lifts[j])
            if any(v):
                lb[(i, j)] = {k: a for k, a in enumerate(v) if a != 0}
    acc = SpanBuilder(f, C.dim)
    norm = f.norm

    def consume(x, ys):
        grew = False
        nx = [i for i in range(n) if x[i] != 0]
        for y in ys:
            out: dict = {}
            for (i, j), vec in lb.items():
                a = x[i] * y.get(j, 0) - x[j] * y.get(i, 0)
                if a == 0:
                    continue
                for k, c in vec.items():
                    out[k] = out.get(k, 0) + a * c
            out = {k: norm(v) for k, v in out.items() if norm(v) != 0}
            if out and acc.add(out):
                grew = True
        return grew

    stop = (lambda: acc.dim >= target_dim) if target_dim is not None else (lambda: False)
    stats = run_sweep(Sweeper(L, W), mode, consume, stop)
    return CoverSpan(acc.freeze(), stats)


def _check_mode(P: FreePresentation, mode: Mode):
    if isinstance(mode, Exhaustive) and not P.field.is_prime_field:
        raise ModeUnsupported("exhaustive mode is only available over F_p")


def hopf_bogomolov(P: FreePresentation, mode: Mode) -> MultiplierReport:
    """``B0~(L) = (R cap F^2) / <K(F) cap R>``, computed in the cover."""
    _check_mode(P, mode)
    L, f = P.L, P.field
    C, _ = P.cover
    Rbar = P.to_cover(P.R.intersect(P.F2))
    dim_M = Rbar.dim
    res = cover_bracket_span(P, Subspace.zero(f, L.dim), mode, target_dim=dim_M)
    G = subalgebra_closure(C, res.span)
    if not G.is_subspace_of(Rbar):
        raise AssertionError("commutator of a commuting pair left R/[R,F]")
    lower = G.dim
    upper = lower if isinstance(mode, Exhaustive) else dim_M
    d2 = derived(L).dim
    ev = {"sweep": res.stats.as_dict(), "path": "hopf", "free_rank": P.d,
          "truncation_class": P.cls + 1, "cover_dim": C.dim}
    return MultiplierReport(L.name, f, mode.name, L.dim, d2, dim_M + d2, dim_M,
                            lower, upper, _status(mode, lower, dim_M), ev)


class Seq43Terms(NamedTuple):
    kernel_term: int        # (R cap <K(F) cap T>) / <K(F) cap R>
    b0_L: int
    b0_quotient: int
    cokernel_term: int      # (M cap L^2) / <K(L) cap M>
    holds: bool


def _T_in_cover(P: FreePresentation, M: Subspace) -> Subspace:
    """Image in the cover of ``T = pi^{-1}(M)``."""
    T = preimage(P.pi, M)
    return P.to_cover(T)


def seq43_terms(P: FreePresentation, M: Subspace, mode: Mode | None = None) -> Seq43Terms:
    L, f = P.L, P.field
    if not is_ideal(L, M):
        raise NotAnIdeal("M is not an ideal")
    mode = mode or Exhaustive()
    if not isinstance(mode, Exhaustive):
        raise ModeUnsupported("the four-term check needs exact spans (exhaustive over F_p)")
    _check_mode(P, mode)
    C, _ = P.cover
    F2 = P.to_cover(P.F2)
    Rbar = P.to_cover(P.R)
    Tbar = _T_in_cover(P, M)
    KR = subalgebra_closure(C, cover_bracket_span(P, Subspace.zero(f, L.dim), mode).span)
    KT = subalgebra_closure(C, cover_bracket_span(P, M, mode).span)
    term1 = Rbar.intersect(KT).dim - KR.dim
    b0_L = Rbar.intersect(F2).dim - KR.dim
    b0_Q = Tbar.intersect(F2).dim - KT.dim
    # fourth term computed downstairs in L
    from .bogomolov import relative_terms
    term4 = relative_terms(L, M, mode).dim_M_L2_mod
    holds = term1 - b0_L + b0_Q - term4 == 0
    return Seq43Terms(term1, b0_L, b0_Q, term4, holds)


def seq43_dimension_check(P: FreePresentation, M: Subspace) -> bool:
    """Alternating dimension sum of the four-term sequence vanishes (exhaustive over F_p)."""
    return seq43_terms(P, M).holds


class Seq42Middle(NamedTuple):
    image_dim: int      # dim im(B0(L) -> B0(L/M))
    kernel_dim: int     # dim ker(B0(L/M) -> M/<K(L) cap M>)


def seq42_middle(P: FreePresentation, M: Subspace, mode: Mode | None = None) -> Seq42Middle:
    """Image and kernel at the ``B0~(L/M)`` node, realized as subspace chains in the cover.

    Image of ``(R cap F^2)/<K cap R> -> (T cap F^2)/<K cap T>`` is
    ``((R cap F^2) + <K cap T>) / <K cap T>``; kernel of
    ``(T cap F^2)/<K cap T> -> T/(<K cap T> + R)`` is
    ``((T cap F^2) cap (<K cap T> + R)) / <K cap T>``.
    """
    L, f = P.L, P.field
    if not is_ideal(L, M):
        raise NotAnIdeal("M is not an ideal")
    mode = mode or Exhaustive()
    if not isinstance(mode, Exhaustive):
        raise ModeUnsupported("exact spans need exhaustive mode over F_p")
    _check_mode(P, mode)
    C, _ = P.cover
    F2 = P.to_cover(P.F2)
    Rbar = P.to_cover(P.R)
    Tbar = _T_in_cover(P, M)
    KT = subalgebra_closure(C, cover_bracket_span(P, M, mode).span)
    image = Rbar.intersect(F2).join(KT).dim - KT.dim
    ker = Tbar.intersect(F2).intersect(KT.join(Rbar)).dim - KT.dim
    return Seq42Middle(image, ker)

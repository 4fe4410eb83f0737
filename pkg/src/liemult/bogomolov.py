"""Commuting-wedge spans, Bogomolov multipliers and CP checks.

Everything here rests on one linearization: for a fixed ``x`` the set
``{y : [x, y] in W}`` is the subspace ``preimage(ad x, W)``.  Sweeping
``x`` over projective representatives of ``F_p^n`` therefore gives exact
spans over ``F_p``; sweeping a seeded sample of integer vectors over the
rationals gives a certified subset of the true span.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from itertools import combinations, product
from typing import Callable, Iterator, NamedTuple, Sequence

from .exterior import ExteriorSquare, _wedge_sparse, schur_multiplier
from .lie import (
    LieAlgebra,
    NotAnIdeal,
    center,
    derived,
    is_ideal,
    subalgebra_closure,
)
from .linalg import (
    FieldSpec,
    Matrix,
    SpanBuilder,
    Subspace,
    kernel,
    preimage,
    unit_vector,
)


class ModeUnsupported(ValueError):
    pass


class KernelNotCentral(ValueError):
    pass


class NotAbelian(ValueError):
    pass


DEFAULT_WINDOW = 25
DEFAULT_BUDGET = 5000
SAMPLE_RANGE = 9


@dataclass(frozen=True)
class Exhaustive:
    """Sweep every projective point of ``F_p^n`` (prime fields only)."""

    shuffle_seed: int | None = None

    name = "exhaustive"


@dataclass(frozen=True)
class Sampled:
    """Structured family, then seeded random vectors with entries in [-9, 9]."""

    seed: int
    budget: int = DEFAULT_BUDGET
    window: int = DEFAULT_WINDOW

    name = "sampled"


Mode = Exhaustive | Sampled


def parse_mode(name: str, seed: int | None = None, budget: int | None = None) -> Mode:
    if name == "exhaustive":
        return Exhaustive()
    if name == "sampled":
        if seed is None:
            raise ValueError("sampled mode needs an explicit seed")
        return Sampled(seed, budget if budget is not None else DEFAULT_BUDGET)
    raise ValueError(f"unknown mode {name!r}")


class Status(str, Enum):
    EXACT_EXHAUSTIVE = "ExactExhaustive"
    EXACT_CERTIFIED_ZERO = "ExactCertifiedZero"
    BOUNDED = "Bounded"


# ---------------------------------------------------------------------------
# the sweep
# ---------------------------------------------------------------------------

def projective_points(field: FieldSpec, n: int) -> Iterator[tuple]:
    """Vectors of ``F_p^n`` whose first nonzero coordinate is 1."""
    p = field.characteristic
    for lead in range(n):
        head = (0,) * lead + (1,)
        for tail in product(range(p), repeat=n - lead - 1):
            yield head + tail


def count_projective(p: int, n: int) -> int:
    return (p ** n - 1) // (p - 1)


def structured_family(field: FieldSpec, n: int) -> Iterator[tuple]:
    """``b_i``, ``b_i +- b_j`` and ``b_i + b_j + b_k``."""
    one = field.one
    basis = [unit_vector(field, n, i) for i in range(n)]
    yield from basis
    for i, j in combinations(range(n), 2):
        for s in (1, -1):
            v = list(basis[i])
            v[j] = field.norm(s * one)
            yield tuple(v)
    for i, j, k in combinations(range(n), 3):
        v = [field.zero] * n
        v[i] = v[j] = v[k] = one
        yield tuple(v)


def random_vectors(field: FieldSpec, n: int, seed: int) -> Iterator[tuple]:
    rng = random.Random(seed)
    while True:
        yield tuple(field(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)) for _ in range(n))


@dataclass
class SweepStats:
    mode: str
    points: int = 0
    structured: int = 0
    random: int = 0
    last_growth: int = 0
    stopped: str = ""
    total_points: int | None = None

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def _kernel_small(field: FieldSpec, m: list[list], n: int) -> list[dict]:
    """Null space of a small dense matrix, as sparse dicts (not canonical)."""
    b = SpanBuilder(field, n, m)
    piv = b.rows
    out = []
    for free in range(n):
        if free in piv:
            continue
        v = {free: field.one}
        for p, r in piv.items():
            a = r.get(free, 0)
            if a != 0:
                v[p] = field.norm(-a)
        out.append(v)
    return out


class Sweeper:
    """Enumerates ``x`` and a basis of ``{y : [x, y] in W}`` for each ``x``."""

    def __init__(self, L: LieAlgebra, W: Subspace | None = None):
        self.L = L
        self.field = L.field
        self.W = W if W is not None else Subspace.zero(L.field, L.dim)
        if self.W.ambient_dim != L.dim:
            raise ValueError("target subspace does not live in L")
        # linear forms cutting out W, pre-composed with the structure constants
        ann = self.W.annihilator()
        self._ann = [dict((k, c) for k, c in enumerate(r) if c != 0) for r in ann.rows]
        n = L.dim
        # ad-tensor: T[i][j] = sparse [b_i, b_j]
        self._br = [[dict((k, c) for k, c in enumerate(L.basis_bracket(i, j)) if c != 0)
                     for j in range(n)] for i in range(n)]
        # phi_a(i, j) = a([b_i, b_j]) for each annihilating form a
        self._forms = []
        for a in self._ann:
            t = [[L.field.norm(sum(a.get(k, 0) * c for k, c in self._br[i][j].items()))
                  for j in range(n)] for i in range(n)]
            self._forms.append(t)

    def slice(self, x: Sequence) -> list[dict]:
        """Basis of ``{y : [x, y] in W}`` as sparse vectors."""
        n = self.L.dim
        f = self.field
        nz = [(i, xi) for i, xi in enumerate(x) if xi != 0]
        rows = []
        for t in self._forms:
            rows.append([f.norm(sum(xi * t[i][j] for i, xi in nz)) for j in range(n)])
        return _kernel_small(f, rows, n)

    def points(self, mode: Mode, stats: SweepStats) -> Iterator[tuple]:
        """Exhaustive: basis of Z(L), then projective points of a complement.

        Shifting ``x`` by a central element leaves its slice unchanged and
        adds ``z ^ y`` (a commuting pair), so the center basis followed by a
        complement of the center reaches every pair.
        """
        f, n = self.field, self.L.dim
        if isinstance(mode, Exhaustive):
            if not f.is_prime_field:
                raise ModeUnsupported("exhaustive enumeration needs a prime field")
            Z = center(self.L)
            free = Z.free_columns()
            stats.total_points = Z.dim + (count_projective(f.characteristic, len(free)) if free else 0)
            yield from Z.rows
            pts = projective_points(f, len(free))
            if mode.shuffle_seed is not None:
                pts = list(pts)
                random.Random(mode.shuffle_seed).shuffle(pts)
            for q in pts:
                v = [0] * n
                for c, a in zip(free, q):
                    v[c] = a
                yield tuple(v)
            return
        for v in structured_family(f, n):
            stats.structured += 1
            yield v
        for v in random_vectors(f, n, mode.seed):
            stats.random += 1
            yield v


def run_sweep(sweeper: Sweeper, mode: Mode, consume: Callable[[tuple, list[dict]], bool],
              stop: Callable[[], bool] = lambda: False) -> SweepStats:
    """Feed ``(x, slice basis)`` into ``consume`` until exhausted or stopped.

    ``consume`` returns True when its span grew.  In sampled mode the sweep
    ends after ``window`` consecutive non-growing random samples or when
    ``budget`` points have been used in total.
    """
    stats = SweepStats(mode.name)
    if sweeper.L.dim == 0:
        stats.stopped = "empty"
        return stats
    since_growth = 0
    for x in sweeper.points(mode, stats):
        if stop():
            stats.stopped = "target reached"
            break
        stats.points += 1
        grew = consume(x, sweeper.slice(x))
        if grew:
            stats.last_growth = stats.points
            since_growth = 0
        elif isinstance(mode, Sampled) and stats.random > 0:
            since_growth += 1
        if isinstance(mode, Sampled):
            if stats.random > 0 and since_growth >= mode.window:
                stats.stopped = "stabilized"
                break
            if stats.points >= mode.budget:
                stats.stopped = "budget"
                break
    else:
        stats.stopped = "exhausted"
    if not stats.stopped:
        stats.stopped = "target reached"
    return stats


def _dense(field, n, v: dict) -> tuple:
    out = [field.zero] * n
    for k, x in v.items():
        out[k] = x
    return tuple(out)


# ---------------------------------------------------------------------------
# pair spans and the multiplier report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairSpanQuery:
    algebra: LieAlgebra
    target: Subspace | None = None
    mode: Mode = dc_field(default_factory=Exhaustive)

    def __post_init__(self):
        if isinstance(self.mode, Exhaustive) and not self.algebra.field.is_prime_field:
            raise ModeUnsupported("exhaustive mode is only available over F_p")


class PairSpanResult(NamedTuple):
    span: Subspace          # in quotient coordinates of L ^ L
    stats: SweepStats


def pair_span_detailed(q: PairSpanQuery, ES: ExteriorSquare | None = None,
                       target_dim: int | None = None) -> PairSpanResult:
    """Span of ``x ^ y`` over pairs with ``[x, y] in W``, in ``L ^ L`` coordinates.

    ``target_dim`` lets the sweep stop once a known upper bound is met
    (the span can never exceed it, so the answer stays exact).
    """
    L = q.algebra
    ES = ES or ExteriorSquare(L)
    f, n = L.field, L.dim
    sw = Sweeper(L, q.target)
    acc = SpanBuilder(f, len(ES.free))
    relB = ES.relationsB
    rb = relB._cached_builder()
    free = ES.free

    def consume(x, ys):
        grew = False
        xd = x
        for y in ys:
            yd = _dense(f, n, y)
            w = _wedge_sparse(f, n, xd, yd, ES.index)
            if not w:
                continue
            w = rb.reduce_sparse(w)
            if not w:
                continue
            qv = {pos: w[c] for pos, c in enumerate(free) if c in w}
            if acc.add(qv):
                grew = True
        return grew

    stop = (lambda: acc.dim >= target_dim) if target_dim is not None else (lambda: False)
    stats = run_sweep(sw, q.mode, consume, stop)
    return PairSpanResult(acc.freeze(), stats)


def pair_span(q: PairSpanQuery) -> Subspace:
    return pair_span_detailed(q).span


def commuting_span(L: LieAlgebra, mode: Mode, ES: ExteriorSquare | None = None,
                   target_dim: int | None = None) -> PairSpanResult:
    """``M0(L)``: span of commuting wedges, in quotient coordinates."""
    return pair_span_detailed(PairSpanQuery(L, None, mode), ES, target_dim)


@dataclass
class MultiplierReport:
    algebra: str
    field: FieldSpec
    mode: str
    dim_L: int
    dim_derived: int
    dim_wedge: int
    dim_M: int
    dim_M0_lower: int
    dim_M0_upper: int
    status: Status
    evidence: dict = dc_field(default_factory=dict)

    @property
    def dim_B0_lower(self) -> int:
        return self.dim_M - self.dim_M0_upper

    @property
    def dim_B0_upper(self) -> int:
        return self.dim_M - self.dim_M0_lower

    @property
    def exact(self) -> bool:
        return self.dim_M0_lower == self.dim_M0_upper

    @property
    def dim_B0(self) -> int | None:
        return self.dim_B0_lower if self.exact else None

    @property
    def dim_curly_lower(self) -> int:
        return self.dim_wedge - self.dim_M0_upper

    @property
    def dim_curly_upper(self) -> int:
        return self.dim_wedge - self.dim_M0_lower

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "field": self.field.label(),
            "mode": self.mode,
            "status": self.status.value,
            "dims": {
                "L": self.dim_L,
                "L2": self.dim_derived,
                "wedge": self.dim_wedge,
                "M": self.dim_M,
                "M0": [self.dim_M0_lower, self.dim_M0_upper],
                "B0": [self.dim_B0_lower, self.dim_B0_upper],
                "curly": [self.dim_curly_lower, self.dim_curly_upper],
            },
            "evidence": self.evidence,
        }


def _status(mode: Mode, lower: int, dim_M: int) -> Status:
    if isinstance(mode, Exhaustive):
        return Status.EXACT_EXHAUSTIVE
    return Status.EXACT_CERTIFIED_ZERO if lower == dim_M else Status.BOUNDED


def bogomolov_report(L: LieAlgebra, mode: Mode, ES: ExteriorSquare | None = None) -> MultiplierReport:
    """``B0~(L) = M(L) / M0(L)`` with certification status."""
    if isinstance(mode, Exhaustive) and not L.field.is_prime_field:
        raise ModeUnsupported("exhaustive mode is only available over F_p")
    ES = ES or ExteriorSquare(L)
    M = schur_multiplier(ES)
    res = commuting_span(L, mode, ES, target_dim=M.dim)
    M0 = res.span
    # each sampled generator has kappa = 0, so M0 sits inside M
    member_check = all(M.contains(v) for v in M0.rows)
    if not member_check:
        raise AssertionError("a commuting wedge left ker(kappa)")
    lower = M0.dim
    upper = lower if isinstance(mode, Exhaustive) else M.dim
    ev = {"sweep": res.stats.as_dict(), "M0_in_kernel_checked": member_check,
          "relations_dim": ES.relationsB.dim}
    if L.field.is_prime_field:
        ev["note"] = ("exact over F_%d; the characteristic-zero statement is not implied"
                      % L.field.characteristic)
    else:
        ev["note"] = ("sampled commuting wedges over Q form a subset of M0; reaching dim M "
                      "certifies B0 = 0 over Q and, by extension of scalars, over C")
    return MultiplierReport(L.name, L.field, mode.name, L.dim, ES.derived.dim, ES.dim,
                            M.dim, lower, upper, _status(mode, lower, M.dim), ev)


# ---------------------------------------------------------------------------
# bracket-form certificate
# ---------------------------------------------------------------------------

class FormCertificate(NamedTuple):
    forms: Subspace            # span of bracket-component forms on Lambda^2
    certified_B0_lower: int
    note: str


def bracket_form_certificate(L: LieAlgebra, ES: ExteriorSquare | None = None) -> FormCertificate:
    """Lower bound on ``dim B0~`` from the bracket-component forms.

    Each form ``e_ij -> coefficient of b_k in [b_i, b_j]`` vanishes on every
    commuting pair and on the relation subspace, so ``M0`` lies in the
    common kernel ``M1`` of these forms on ``M``; ``dim M - dim M1`` is a
    sound lower bound.  These forms are the coordinates of the commutator
    map itself, so on ``M`` they vanish identically and the bound is 0: the
    certificate never detects a nonzero multiplier.
    """
    ES = ES or ExteriorSquare(L)
    forms = Subspace.span(L.field, ES.wedge_dim, ES.kappa.rows)
    M = schur_multiplier(ES)
    # restrict forms to quotient coordinates
    restricted = [tuple(r[c] for c in ES.free) for r in ES.kappa.rows]
    if M.dim and restricted:
        vals = Matrix(L.field, len(restricted), len(ES.free), tuple(restricted))
        M1 = M.intersect(kernel(vals))
    else:
        M1 = M
    bound = M.dim - M1.dim
    return FormCertificate(forms, bound,
                           "bracket-component forms are the commutator map; "
                           "they vanish on all of M, so the bound is trivially 0")


def form_vanishes_on_commuting_pairs(L: LieAlgebra, form: Sequence, ES: ExteriorSquare | None = None) -> bool:
    """Exhaustively check that a form on ``Lambda^2`` kills every commuting wedge (F_p)."""
    if not L.field.is_prime_field:
        raise ModeUnsupported("exhaustive check needs a prime field")
    ES = ES or ExteriorSquare(L)
    f, n = L.field, L.dim
    sw = Sweeper(L)
    ok = True

    def consume(x, ys):
        nonlocal ok
        for y in ys:
            w = _wedge_sparse(f, n, x, _dense(f, n, y), ES.index)
            if f.norm(sum(form[c] * v for c, v in w.items())) != 0:
                ok = False
        return False

    run_sweep(sw, Exhaustive(), consume, lambda: not ok)
    return ok


# ---------------------------------------------------------------------------
# CP extensions and bracket values inside a subspace
# ---------------------------------------------------------------------------

class CPVerdict(NamedTuple):
    verdict: str               # "CP", "NotCP" or "Unknown"
    witness: tuple | None      # (x, y) with 0 != [x, y] in M
    stats: SweepStats | None = None

    def __eq__(self, other):
        if isinstance(other, str):
            return self.verdict == other
        return tuple.__eq__(self, other)

    __hash__ = tuple.__hash__


@dataclass(frozen=True)
class CentralExtensionSpec:
    total: LieAlgebra
    kernel: Subspace

    def check(self):
        C, M = self.total, self.kernel
        if not is_ideal(C, M):
            raise NotAnIdeal("kernel is not an ideal")
        if not M.is_subspace_of(center(C)):
            raise KernelNotCentral("kernel is not central")


def _search_bracket_in(C: LieAlgebra, M: Subspace, mode: Mode, points_algebra: LieAlgebra | None = None,
                       lift=None) -> CPVerdict:
    """Look for ``x, y`` with ``0 != [x, y] in M``."""
    f, n = C.field, C.dim
    sw = Sweeper(C, M)
    found = []
    if points_algebra is not None:
        # sweep x over a complement only; lift maps its coordinates into C
        inner = Sweeper(points_algebra)
        sw_points = inner.points
    else:
        sw_points = sw.points

    class _Wrap:
        L = C if points_algebra is None else points_algebra

        def points(self, mode, stats):
            return sw_points(mode, stats)

        def slice(self, x):
            return [x]

    def consume(x, _):
        xc = lift(x) if lift else x
        for y in sw.slice(xc):
            yd = _dense(f, n, y)
            v = C.bracket(xc, yd)
            if any(v):
                found.append((xc, yd))
                return True
        return False

    if isinstance(mode, Sampled):
        # no stabilization window for witness hunting: spend the whole budget
        mode = Sampled(mode.seed, mode.budget, window=mode.budget + 1)
    stats = run_sweep(_Wrap(), mode, consume, lambda: bool(found))
    if found:
        return CPVerdict("NotCP", found[0], stats)
    if isinstance(mode, Exhaustive):
        return CPVerdict("CP", None, stats)
    return CPVerdict("Unknown", None, stats)


def is_cp_central_extension(e: CentralExtensionSpec, mode: Mode) -> CPVerdict:
    """Decide whether ``M`` meets the bracket values of ``C`` (CP iff it does not)."""
    e.check()
    C, M = e.total, e.kernel
    if isinstance(mode, Exhaustive) and not C.field.is_prime_field:
        raise ModeUnsupported("exhaustive mode is only available over F_p")
    # M is central, so [x, y] only depends on x modulo M: sweep a complement
    free = M.free_columns()
    f = C.field

    def lift(x):
        v = [f.zero] * C.dim
        for c, a in zip(free, x):
            v[c] = a
        return tuple(v)

    comp = LieAlgebra("complement", len(free), f, {})
    return _search_bracket_in(C, M, mode, comp, lift)


def cp_subalgebra_check(L: LieAlgebra, M: Subspace, mode: Mode) -> CPVerdict:
    """An abelian ideal ``M`` is CP iff no nonzero bracket value lies in it."""
    if not is_ideal(L, M):
        raise NotAnIdeal("M is not an ideal")
    if any(any(L.bracket(u, v)) for u in M.rows for v in M.rows):
        raise NotAbelian("M is not abelian")
    if isinstance(mode, Exhaustive) and not L.field.is_prime_field:
        raise ModeUnsupported("exhaustive mode is only available over F_p")
    return _search_bracket_in(L, M, mode)


def bracket_values_span(L: LieAlgebra, W: Subspace, mode: Mode,
                        target_dim: int | None = None) -> tuple[Subspace, SweepStats]:
    """Span of ``{[x, y] : [x, y] in W}``."""
    f, n = L.field, L.dim
    sw = Sweeper(L, W)
    acc = SpanBuilder(f, n)

    def consume(x, ys):
        grew = False
        for y in ys:
            if acc.add(L.bracket(x, _dense(f, n, y))):
                grew = True
        return grew

    stop = (lambda: acc.dim >= target_dim) if target_dim is not None else (lambda: False)
    stats = run_sweep(sw, mode, consume, stop)
    return acc.freeze(), stats


class RelativeTerms(NamedTuple):
    generated: Subspace        # <K(L) cap M>
    dim_generated: int
    dim_M_mod: int             # dim M / <K(L) cap M>
    dim_M_L2_mod: int          # dim (M cap L^2) / <K(L) cap M>


def relative_terms(L: LieAlgebra, M: Subspace, mode: Mode) -> RelativeTerms:
    if not is_ideal(L, M):
        raise NotAnIdeal("M is not an ideal")
    if isinstance(mode, Exhaustive) and not L.field.is_prime_field:
        raise ModeUnsupported("exhaustive mode is only available over F_p")
    L2 = derived(L)
    ML2 = M.intersect(L2)
    D, _ = bracket_values_span(L, M, mode, target_dim=ML2.dim)
    G = subalgebra_closure(L, D)
    return RelativeTerms(G, G.dim, M.dim - G.dim, ML2.dim - G.dim)


def seq42_tail_check(L: LieAlgebra, M: Subspace, mode: Mode | None = None) -> bool:
    """Exactness of ``M/<K(L) cap M> -> L/L^2 -> (L/M)/(L/M)^2 -> 0`` at the last two nodes."""
    if not is_ideal(L, M):
        raise NotAnIdeal("M is not an ideal")
    f, n = L.field, L.dim
    if mode is None:
        mode = Exhaustive() if f.is_prime_field else Sampled(0)
    G = relative_terms(L, M, mode).generated
    L2 = derived(L)
    # first map: M -> L/L^2, well defined on M/<K cap M> because G lies in L^2
    if not G.is_subspace_of(L2):
        return False
    first_image = Subspace.span(f, L2.codim, (L2.quotient_coords(v) for v in M.rows))
    # second map: L/L^2 -> L/(M + L^2), which is (L/M)/(L/M)^2
    ML2 = M.join(L2)
    cols = []
    for c in L2.free_columns():
        cols.append(ML2.quotient_coords(unit_vector(f, n, c)))
    if L2.codim == 0:
        return ML2.codim == 0
    second = Matrix.from_columns(f, cols, ML2.codim)
    surjective = second.rank() == ML2.codim
    return surjective and kernel(second) == first_image

"""Acceptance gate: one PASS/FAIL line per criterion.

Run standalone with ``python3 tests/test_acceptance.py`` or under pytest,
where the lines are repeated in the terminal summary.
"""
import random
import time

import pytest

from liemult import catalog, reproduce
from liemult.bogomolov import (
    CentralExtensionSpec,
    Exhaustive,
    Sampled,
    bogomolov_report,
    commuting_span,
    is_cp_central_extension,
    seq42_tail_check,
)
from liemult.exterior import ExteriorSquare, schur_dim, schur_multiplier, wedge_coords
from liemult.hopf import hopf_bogomolov, hopf_schur, presentation, seq43_dimension_check
from liemult.lie import center, derived, ideal_closure, lower_central_series
from liemult.linalg import GF, QQ, Subspace

F5 = GF(5)
LINES: list[str] = []


def record(n: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"criterion {n} {'PASS' if ok else 'FAIL'} {title} ({seconds:.1f}s) {detail}"
    LINES.append(line)
    print(line)


def _table_detail(rows):
    bad = [r for r in rows if not r.passed]
    if not bad:
        return f"{len(rows)}/{len(rows)} rows agree"
    return f"{len(rows) - len(bad)}/{len(rows)} rows agree; mismatches: " + "; ".join(
        f"{r.algebra} B0={r.dim_B0} expected {r.expected} [{r.source}] consistent={r.consistent}"
        for r in bad)


def criterion_1():
    t = time.perf_counter()
    rows = [r for tab in ("dim3", "dim4", "dim5") for r in reproduce.run_table(tab, [5])]
    dt = time.perf_counter() - t
    nonzero = {r.algebra: r.dim_B0 for r in rows if r.dim_B0 != "0"}
    ok = all(r.passed for r in rows) and nonzero == {"L5,6": "1"} and dt < 10
    return ok, _table_detail(rows) + f"; nonzero {nonzero}", dt


def criterion_2():
    t = time.perf_counter()
    rows = reproduce.run_table("dim6", [5, 3, 7])
    dt = time.perf_counter() - t
    return all(r.passed for r in rows) and dt < 60, _table_detail(rows), dt


def criterion_3():
    t = time.perf_counter()
    rows = reproduce.run_table("heisenberg", seed=0)
    dt = time.perf_counter() - t
    dims = {r.algebra: r.dim_M for r in rows if r.algebra.startswith("H(") and "+" not in r.algebra}
    ok = all(r.passed for r in rows) and dims == {"H(1)": 2, "H(2)": 5, "H(3)": 14, "H(4)": 27}
    return ok and dt < 30, _table_detail(rows) + f"; dim M {dims}", dt


def criterion_4():
    t = time.perf_counter()
    rows = reproduce.run_table("classical")
    dt = time.perf_counter() - t
    noted = all("Q" in r.detail["note"] and "C" in r.detail["note"] for r in rows)
    return all(r.passed for r in rows) and noted and dt < 120, _table_detail(rows), dt


def criterion_5():
    t = time.perf_counter()
    bad = []
    count = 0
    for d in range(1, 7):
        for key in catalog.nilpotent_keys(d):
            L = catalog.get(key, F5)
            ES = ExteriorSquare(L)
            ext = bogomolov_report(L, Exhaustive(), ES)
            P = presentation(L)
            hop = hopf_bogomolov(P, Exhaustive())
            count += 1
            if hopf_schur(P) != schur_dim(ES) or (hop.dim_M, hop.dim_B0) != (ext.dim_M, ext.dim_B0):
                bad.append(f"{key.display}: hopf M={hopf_schur(P)} B0={hop.dim_B0} "
                           f"exterior M={schur_dim(ES)} B0={ext.dim_B0}")
    dt = time.perf_counter() - t
    return not bad, f"{count} algebras, {len(bad)} mismatches " + "; ".join(bad), dt


def _b0_and_curly(L):
    r = bogomolov_report(L, Exhaustive())
    return r.dim_B0, r.dim_curly_lower


def criterion_6(seed=20240601, pairs=20):
    t = time.perf_counter()
    keys = [k for d in range(1, 6) for k in catalog.nilpotent_keys(d)]
    rng = random.Random(seed)
    bad = []
    drawn = []
    for _ in range(pairs):
        k1, k2 = rng.choice(keys), rng.choice(keys)
        drawn.append(f"{k1.display}+{k2.display}")
        b1, c1 = _b0_and_curly(catalog.get(k1, F5))
        b2, c2 = _b0_and_curly(catalog.get(k2, F5))
        b, c = _b0_and_curly(catalog.get(f"{k1}+{k2}", F5))
        if (b, c) != (b1 + b2, c1 + c2):
            bad.append(f"{k1.display}+{k2.display}: B0 {b} vs {b1}+{b2}, curly {c} vs {c1}+{c2}")
    dt = time.perf_counter() - t
    return not bad, f"{pairs} pairs, {len(bad)} failures " + "; ".join(bad), dt


def _ideal_choices(L):
    series = lower_central_series(L)
    out = [center(L), derived(L), Subspace.zero(L.field, L.dim), Subspace.full(L.field, L.dim)]
    out += series[2:-1]
    return out


def criterion_7(seed=7):
    t = time.perf_counter()
    rng = random.Random(seed)
    keys = [k for d in range(2, 7) for k in catalog.nilpotent_keys(d)]
    bad = []
    for _ in range(10):
        key = rng.choice(keys)
        L = catalog.get(key, F5)
        choices = _ideal_choices(L)
        # also the ideal generated by a random vector
        v = tuple(F5(rng.randint(0, 4)) for _ in range(L.dim))
        choices.append(ideal_closure(L, Subspace.span(F5, L.dim, [v])))
        M = rng.choice(choices)
        if not seq42_tail_check(L, M):
            bad.append(f"tail {key.display} dim M={M.dim}")
    pairs = [("L:5:6", "center"), ("H:1", "center"), ("L:6:14", "center"),
             ("L:6:23", "derived"), ("L:4:3", "derived")]
    for key, which in pairs:
        L = catalog.get(key, F5)
        M = center(L) if which == "center" else derived(L)
        if not seq43_dimension_check(presentation(L), M):
            bad.append(f"four-term {key} {which}")
    dt = time.perf_counter() - t
    return not bad, "10 tail pairs, 5 four-term pairs; failures: " + ("; ".join(bad) or "none"), dt


def criterion_8():
    t = time.perf_counter()
    notes = []
    H = catalog.heisenberg(1)
    v = is_cp_central_extension(CentralExtensionSpec(H, center(H)), Sampled(0))
    ok1 = v == "NotCP" and v.witness is not None and any(H.bracket(*v.witness))
    wit = [[str(c) for c in u] for u in v.witness] if v.witness else None
    notes.append(f"H(1),span(v): {v.verdict} witness={wit}")
    A = catalog.get("A:2+A:1", F5)
    M = Subspace.span(F5, 3, [A.basis()[2]])
    v2 = is_cp_central_extension(CentralExtensionSpec(A, M), Exhaustive())
    ok2 = v2 == "CP"
    notes.append(f"A(2)+A(1),A(1): {v2.verdict}")
    L = catalog.get("L:5:6", F5)
    ES = ExteriorSquare(L)
    x = L.basis()
    w = tuple(F5.norm(a - b) for a, b in zip(wedge_coords(F5, 5, x[0], x[3]),
                                              wedge_coords(F5, 5, x[1], x[2])))
    q = ES.to_quotient(w)
    in_M = q in schur_multiplier(ES)
    in_M0 = q in commuting_span(L, Exhaustive(), ES).span
    ok3 = in_M and not in_M0
    notes.append(f"L5,6 x1^x4-x2^x3: in M={in_M}, in M0={in_M0}")
    dt = time.perf_counter() - t
    return ok1 and ok2 and ok3, "; ".join(notes), dt


def criterion_9():
    t = time.perf_counter()
    rows = reproduce.invariant_suite(seed=0)
    dt = time.perf_counter() - t
    return all(r.passed for r in rows), ", ".join(f"{r.algebra}={r.verdict}" for r in rows), dt


CRITERIA = {
    1: ("dims <= 5 table over F5", criterion_1),
    2: ("dim 6 table over F5, F3, F7", criterion_2),
    3: ("Heisenberg algebras sampled over Q", criterion_3),
    4: ("classical algebras have M = 0", criterion_4),
    5: ("Hopf path agrees with exterior path", criterion_5),
    6: ("additivity over direct sums", criterion_6),
    7: ("exact sequence checks", criterion_7),
    8: ("CP extension suite", criterion_8),
    9: ("invariant suites", criterion_9),
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    title, fn = CRITERIA[n]
    ok, detail, dt = fn()
    record(n, title, ok, detail, dt)
    assert ok, detail


if __name__ == "__main__":
    import sys
    failed = 0
    for n, (title, fn) in sorted(CRITERIA.items()):
        ok, detail, dt = fn()
        record(n, title, ok, detail, dt)
        failed += not ok
    sys.exit(1 if failed else 0)

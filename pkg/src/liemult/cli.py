"""Command-line frontend.

    liemult bogomolov --algebra catalog:L:5:6 --field Fp:5 --mode exhaustive
    liemult reproduce --table dim6 --primes 3,5,7

Reports go to stdout (or ``--out``), diagnostics to stderr as
``liemult: error code=<exit> kind=<kind>: <message>``.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import catalog, io, reproduce
from .bogomolov import (
    CentralExtensionSpec,
    Exhaustive,
    KernelNotCentral,
    ModeUnsupported,
    NotAbelian,
    Sampled,
    bogomolov_report,
    cp_subalgebra_check,
    is_cp_central_extension,
)
from .catalog import MissingEpsilon, UnknownKey
from .exterior import ExteriorSquare, schur_multiplier, t_s_invariants
from .hopf import hopf_bogomolov, hopf_schur, presentation
from .lie import (
    NotAnIdeal,
    NotNilpotent,
    StructureError,
    center,
    derived,
    nilpotency_class,
    validate,
)
from .linalg import FieldMismatch, FieldSpec, Subspace

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_INTERNAL, EXIT_MISMATCH = range(5)

SUBSTITUTION_NOTE = ("finite-field runs are exact over F_p only; rational sampling certifies "
                     "zero over Q and hence over C, otherwise it only bounds B0")


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code, self.kind = code, kind


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_INVALID, "usage", message)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _field(text: str | None) -> FieldSpec | None:
    if text is None:
        return None
    try:
        return FieldSpec.parse(text)
    except ValueError as e:
        raise CliError(EXIT_UNSUPPORTED, "unsupported-field", str(e)) from None


def _algebra(args):
    if not args.algebra:
        raise CliError(EXIT_INVALID, "usage", "--algebra is required")
    field = _field(args.field)
    try:
        L = io.load_algebra(args.algebra, field)
    except FileNotFoundError as e:
        raise CliError(EXIT_INVALID, "file-not-found", str(e)) from None
    except (io.AlgebraFileError, UnknownKey, MissingEpsilon, StructureError) as e:
        raise CliError(EXIT_INVALID, "bad-algebra", str(e)) from None
    except FieldMismatch as e:
        raise CliError(EXIT_UNSUPPORTED, "unsupported-field", str(e)) from None
    except ZeroDivisionError as e:
        raise CliError(EXIT_UNSUPPORTED, "unsupported-field", f"bad reduction: {e}") from None
    rep = validate(L)
    if not rep.ok:
        i, j, k = rep.violations[0].triple
        raise CliError(EXIT_INVALID, "jacobi",
                       f"{len(rep.violations)} Jacobi violation(s), first at basis triple "
                       f"({i + 1}, {j + 1}, {k + 1})")
    return L


def _mode(args, L):
    name = args.mode or ("exhaustive" if L.field.is_prime_field else "sampled")
    args.mode = name
    if name == "exhaustive":
        if not L.field.is_prime_field:
            raise CliError(EXIT_UNSUPPORTED, "mode-unsupported",
                           "exhaustive mode needs a prime field; use --field Fp:p or --mode sampled")
        return Exhaustive()
    return Sampled(args.seed, args.budget)


def _primes(text: str | None) -> list[int] | None:
    if not text:
        return None
    try:
        ps = [int(t) for t in text.split(",") if t.strip()]
        for p in ps:
            FieldSpec("Fp", p)
    except ValueError as e:
        raise CliError(EXIT_UNSUPPORTED, "unsupported-field", f"bad --primes: {e}") from None
    return ps


def _vec(v) -> list[str]:
    return [str(x) for x in v]


def _meta(L) -> dict:
    return {"name": L.name, "dim": L.dim, "field": L.field.label()}


def _envelope(command: str, args, **body) -> dict:
    doc = {"schema_version": io.SCHEMA_VERSION, "command": command}
    for k in ("seed", "budget"):
        doc[k] = getattr(args, k)
    doc["mode"] = args.mode
    doc.update(body)
    return doc


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = ",".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def _tsv(rows: list[dict]) -> str:
    cols = list(rows[0]) if rows else []
    lines = ["\t".join(cols)]
    lines += ["\t".join("" if r.get(c) is None else str(r.get(c)) for c in cols) for r in rows]
    return "\n".join(lines) + "\n"


def _emit(args, doc: dict, tsv_rows: list[dict] | None = None, text: str | None = None):
    fmt = args.format or ("text" if text is not None else "json")
    if fmt == "json":
        out = io.dumps(doc)
    elif fmt == "tsv":
        out = _tsv(tsv_rows if tsv_rows is not None else [_flatten(doc.get("result", doc))])
    else:
        out = text if text is not None else io.dumps(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        L = io.load_algebra(args.algebra, _field(args.field)) if args.algebra else None
    except (io.AlgebraFileError, UnknownKey, MissingEpsilon, StructureError) as e:
        raise CliError(EXIT_INVALID, "bad-algebra", str(e)) from None
    except FileNotFoundError as e:
        raise CliError(EXIT_INVALID, "file-not-found", str(e)) from None
    if L is None:
        raise CliError(EXIT_INVALID, "usage", "--algebra is required")
    rep = validate(L)
    result = {"jacobi_ok": rep.ok, "triples_checked": rep.triples_checked,
              "violations": [{"triple": [t + 1 for t in v.triple], "residual": _vec(v.residual)}
                             for v in rep.violations]}
    _emit(args, _envelope("validate", args, algebra=_meta(L), result=result))
    if not rep.ok:
        print(f"liemult: error code={EXIT_INVALID} kind=jacobi: "
              f"{len(rep.violations)} violation(s)", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_info(args) -> int:
    L = _algebra(args)
    ES = ExteriorSquare(L)
    ts = t_s_invariants(L, ES)
    cls = nilpotency_class(L)
    result = {"dim": L.dim, "dim_L2": derived(L).dim, "dim_center": center(L).dim,
              "nilpotent": cls is not None, "nilpotency_class": cls,
              "dim_M": ES.dim - ES.derived.dim, "t": ts.t, "s": ts.s,
              "s_negative": ts.s_negative, "s_standard": ts.s_standard}
    _emit(args, _envelope("info", args, algebra=_meta(L), result=result))
    return EXIT_OK


def cmd_schur(args) -> int:
    L = _algebra(args)
    ES = ExteriorSquare(L)
    M = schur_multiplier(ES)
    basis = []
    for q in M.rows:
        rep = ES.from_quotient(q)
        basis.append(" + ".join(f"({c})*{ES.pair_label(k)}" for k, c in enumerate(rep) if c != 0))
    result = {"dim_L2": ES.derived.dim, "dim_wedge": ES.dim, "dim_M": M.dim}
    _emit(args, _envelope("schur", args, algebra=_meta(L), result=result, basis=basis))
    return EXIT_OK


def cmd_exterior(args) -> int:
    L = _algebra(args)
    ES = ExteriorSquare(L)
    result = {"dim_Lambda2": ES.wedge_dim, "dim_relations": ES.relationsB.dim,
              "dim_wedge": ES.dim, "dim_L2": ES.derived.dim, "dim_M": ES.dim - ES.derived.dim}
    _emit(args, _envelope("exterior", args, algebra=_meta(L), result=result))
    return EXIT_OK


def cmd_bogomolov(args) -> int:
    primes = _primes(args.primes)
    if primes:
        if args.mode == "sampled":
            raise CliError(EXIT_UNSUPPORTED, "mode-unsupported", "--primes runs exhaustive sweeps")
        reports = []
        for p in primes:
            args.field = f"Fp:{p}"
            L = _algebra(args)
            reports.append(bogomolov_report(L, Exhaustive()).as_dict())
        b0 = [r["dims"]["B0"][0] for r in reports]
        consistent = len(set(b0)) == 1
        rows = [dict(_flatten(r), consistent="yes" if consistent else "NO") for r in reports]
        doc = _envelope("bogomolov", args, algebra=_meta(L) | {"field": None}, primes=primes,
                        consistent=consistent, reports=reports, note=SUBSTITUTION_NOTE)
        _emit(args, doc, rows)
        if not consistent:
            print(f"liemult: error code={EXIT_MISMATCH} kind=prime-disagreement: "
                  + ", ".join(f"Fp:{p} B0={v}" for p, v in zip(primes, b0)), file=sys.stderr)
            return EXIT_MISMATCH
        return EXIT_OK
    L = _algebra(args)
    mode = _mode(args, L)
    rep = bogomolov_report(L, mode)
    _emit(args, _envelope("bogomolov", args, algebra=_meta(L), result=rep.as_dict(),
                          note=SUBSTITUTION_NOTE))
    return EXIT_OK


def cmd_hopf(args) -> int:
    L = _algebra(args)
    mode = _mode(args, L)
    try:
        P = presentation(L)
    except NotNilpotent as e:
        raise CliError(EXIT_UNSUPPORTED, "not-nilpotent", str(e)) from None
    rep = hopf_bogomolov(P, mode)
    result = {"free_rank": P.d, "truncation_class": P.cls + 1, "dim_F": P.F.dim,
              "dim_R": P.R.dim, "dim_RF": P.RF.dim, "dim_M": hopf_schur(P),
              "bogomolov": rep.as_dict()}
    _emit(args, _envelope("hopf", args, algebra=_meta(L), result=result))
    return EXIT_OK


def _parse_ideal(text: str, L) -> Subspace:
    if text == "center":
        return center(L)
    if text == "derived":
        return derived(L)
    vecs = []
    for part in text.split(";"):
        vals = [L.field(Fraction(t)) for t in part.split(",")]
        if len(vals) != L.dim:
            raise CliError(EXIT_INVALID, "usage", f"--ideal vector {part!r} needs {L.dim} entries")
        vecs.append(tuple(vals))
    return Subspace.span(L.field, L.dim, vecs)


def cmd_cp_check(args) -> int:
    L = _algebra(args)
    mode = _mode(args, L)
    M = _parse_ideal(args.ideal, L)
    try:
        if M.is_subspace_of(center(L)):
            kind = "central-extension"
            v = is_cp_central_extension(CentralExtensionSpec(L, M), mode)
        else:
            kind = "abelian-ideal"
            v = cp_subalgebra_check(L, M, mode)
    except (NotAnIdeal, NotAbelian, KernelNotCentral) as e:
        raise CliError(EXIT_INVALID, "bad-ideal", str(e)) from None
    result = {"check": kind, "dim_ideal": M.dim, "verdict": v.verdict,
              "witness": None if v.witness is None else [_vec(v.witness[0]), _vec(v.witness[1])],
              "sweep": v.stats.as_dict() if v.stats else None}
    _emit(args, _envelope("cp-check", args, algebra=_meta(L), result=result))
    return EXIT_OK


def cmd_catalog(args) -> int:
    rows = []
    for key in catalog.all_keys():
        L = catalog.get(key)
        rows.append({"key": f"catalog:{key}", "name": key.display, "dim": L.dim})
    if args.format == "tsv":
        _emit(args, {}, rows)
    elif args.format == "json":
        _emit(args, {"schema_version": io.SCHEMA_VERSION, "command": "catalog", "entries": rows})
    else:
        _emit(args, {}, text="".join(f"{r['key']}\t{r['name']}\t{r['dim']}\n" for r in rows))
    return EXIT_OK


def cmd_export(args) -> int:
    L = _algebra(args)
    text = io.dumps(io.algebra_to_json(L))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    if not args.table:
        raise CliError(EXIT_INVALID, "usage", "--table is required")
    primes = _primes(args.primes)
    rows = reproduce.run_table(args.table, primes, args.seed, args.budget)
    bad = [r for r in rows if not r.passed]
    doc = {"schema_version": io.SCHEMA_VERSION, "command": "reproduce", "table": args.table,
           "primes": primes, "seed": args.seed, "budget": args.budget, "note": SUBSTITUTION_NOTE,
           "rows": [r.as_dict() for r in rows], "mismatches": len(bad)}
    text = "".join(r.line() + "\n" for r in rows)
    text += f"{len(rows) - len(bad)}/{len(rows)} rows agree\n"
    if args.format == "tsv":
        _emit(args, doc, [{c: getattr(r, c) for c in reproduce.TSV_COLUMNS} for r in rows])
    else:
        _emit(args, doc, text=text)
    for r in bad:
        print(f"liemult: error code={EXIT_MISMATCH} kind=mismatch: {r.algebra} computed B0={r.dim_B0} "
              f"expected={r.expected} [{r.source}] consistent={r.consistent}", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "schur": cmd_schur,
    "exterior": cmd_exterior,
    "bogomolov": cmd_bogomolov,
    "hopf": cmd_hopf,
    "cp-check": cmd_cp_check,
    "catalog": cmd_catalog,
    "export": cmd_export,
    "reproduce": cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--algebra", help="JSON file or catalog:KEY")
    common.add_argument("--field", help="Q or Fp:p")
    common.add_argument("--mode", choices=["exhaustive", "sampled"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=5000)
    common.add_argument("--primes", help="comma-separated primes")
    common.add_argument("--format", choices=["json", "tsv", "text"])
    common.add_argument("--out", help="write the report here instead of stdout")
    parser = _Parser(prog="liemult", description="Schur and Bogomolov multipliers of Lie algebras")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "cp-check":
            p.add_argument("--ideal", default="center",
                           help="center, derived, or vectors like '0,0,1;0,1,0'")
        if name == "catalog":
            p.add_argument("--list", action="store_true", default=True)
        if name == "reproduce":
            p.add_argument("--table", choices=reproduce.TABLES)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise CliError(EXIT_INVALID, "usage", "no command given; see --help")
        if args.seed < 0:
            raise CliError(EXIT_INVALID, "usage", "--seed must be nonnegative")
        if args.budget < 1:
            raise CliError(EXIT_INVALID, "usage", "--budget must be positive")
        return COMMANDS[args.command](args)
    except CliError as e:
        print(f"liemult: error code={e.code} kind={e.kind}: {e}", file=sys.stderr)
        return e.code
    except ModeUnsupported as e:
        print(f"liemult: error code={EXIT_UNSUPPORTED} kind=mode-unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except Exception as e:  # anything else is a bug
        print(f"liemult: error code={EXIT_INTERNAL} kind=internal: {type(e).__name__}: {e}",
              file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``homfano list | invariants | verify``."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from typing import Any, TextIO

from .bundlecalc import BundleError, normalize
from .chow import LocalizationError, anticanonical_degree
from .koszul import (
    CodimensionError,
    FanoConstraints,
    HodgeTable,
    InconsistentIntervals,
    ZeroLocusProblem,
    h0_anticanonical,
    hodge_numbers,
    tangent_cohomology,
)
from .models import (
    DslError,
    ModelRecord,
    VerifyReport,
    catalog,
    default_jobs,
    id_sort_key,
    lookup,
    parse,
    parse_bundle,
    parse_space,
    print_space,
    verify_many,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _cell(lo: int, hi: int) -> int | list[int]:
    return lo if lo == hi else [lo, hi]


def _text_cell(lo: int, hi: int) -> str:
    return str(lo) if lo == hi else f"[{lo},{hi}]"


def _read_records(path: str | None, stdin: TextIO) -> Sequence[ModelRecord]:
    if path is None:
        return catalog()
    if path == "-":
        return parse(stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- list -----------------------------------------------------------------------------


def cmd_list(records: Sequence[ModelRecord], prefix: str | None, fmt: str, out: TextIO) -> int:
    groups: dict[str, list[ModelRecord]] = {}
    for rec in records:
        if prefix is None or rec.id.startswith(prefix):
            groups.setdefault(rec.id, []).append(rec)
    for ident in sorted(groups, key=id_sort_key):
        recs = sorted(groups[ident], key=lambda r: r.variant)
        primary = recs[0]
        tags = sorted(set().union(*(r.tags for r in recs)))
        if fmt == "machine":
            out.write(_dump({
                "id": ident,
                "variants": [r.variant for r in recs],
                "tags": tags,
                "space": print_space(primary.space),
            }) + "\n")
        else:
            extra = f"  +{len(recs) - 1} alt" if len(recs) > 1 else ""
            tag_text = f"  [{', '.join(tags)}]" if tags else ""
            out.write(f"{ident:<8} {print_space(primary.space)}{extra}{tag_text}\n")
    return EXIT_OK


# -- invariants -----------------------------------------------------------------------


def _hodge_payload(table: HodgeTable) -> list[list[int | list[int]]]:
    return [[_cell(*table.interval(p, q)) for q in range(table.dim + 1)] for p in range(table.dim + 1)]


def cmd_invariants(args: argparse.Namespace, out: TextIO) -> int:
    space = parse_space(args.space)
    bundle = normalize(parse_bundle(args.bundle, space), space)
    constraints = FanoConstraints(
        vanishing=args.fano,
        hodge_symmetry=not args.no_hodge_symmetry,
        serre_duality=not args.no_serre_duality,
    )
    problem = ZeroLocusProblem(space, bundle, constraints, args.restricted_section)
    problem.check_dim(args.dim)
    d = problem.dim
    degree = anticanonical_degree(space, bundle, d)
    chi = h0_anticanonical(problem)
    table = hodge_numbers(problem)
    tangent = tangent_cohomology(problem) if not args.no_tangent else None

    result: dict[str, Any] = {
        "space": print_space(space),
        "dim": d,
        "rank": bundle.rank,
        "anticanonical_degree": degree,
        "chi_anticanonical": chi,
        "hodge": _hodge_payload(table),
        "constraints_used": list(table.constraints_used),
        "formal": table.formal,
    }
    if tangent is not None:
        result["tangent"] = {
            "h0_TX": _cell(*tangent.tx.interval(0)),
            "h0_F": _cell(*tangent.f.interval(0)),
            "h0_TY": _cell(*tangent.h0_bounds),
            "h1_TY": _cell(*tangent.h1_bounds),
            "difference": tangent.difference,
        }
    if args.format == "machine":
        out.write(_dump(result) + "\n")
        return EXIT_OK

    out.write(f"space        {result['space']}\n")
    out.write(f"dim          {d}\n")
    out.write(f"rank(F)      {bundle.rank}\n")
    out.write(f"(-K)^{d}       {degree}\n")
    out.write(f"chi(-K)      {chi}\n")
    out.write("hodge numbers h^{p,q} (row p, column q):\n")
    for line in table.format().splitlines():
        out.write(f"  {line}\n")
    if table.constraints_used:
        out.write(f"constraints  {', '.join(table.constraints_used)}\n")
    if table.formal:
        out.write("note         restricted section: results assume the Koszul resolution applies\n")
    if tangent is not None:
        out.write(f"h0(T_X|Y)    {_text_cell(*tangent.tx.interval(0))}\n")
        out.write(f"h0(F|Y)      {_text_cell(*tangent.f.interval(0))}\n")
        diff = "unknown" if tangent.difference is None else str(tangent.difference)
        out.write(f"h1(T_Y)-h0(T_Y) {diff}\n")
    return EXIT_OK


# -- verify ---------------------------------------------------------------------------


def _report_payload(rep: VerifyReport) -> dict[str, Any]:
    checks = {}
    for c in rep.checks:
        comp = c.computed
        checks[c.name] = {
            "computed": list(comp) if isinstance(comp, tuple) else comp,
            "expected": c.expected,
            "ok": c.ok,
        }
    return {
        "id": rep.id,
        "variant": rep.variant,
        "status": rep.status,
        "checks": checks,
        "constraints_used": list(rep.constraints_used),
        "formal": rep.formal,
        "unpinched": list(rep.unpinched),
        "note": rep.note,
    }


def cmd_verify(records: Sequence[ModelRecord], ids: list[str], run_all: bool, jobs: int,
               fmt: str, out: TextIO, err: TextIO) -> int:
    if run_all:
        chosen = list(records)
    else:
        if not ids:
            err.write("verify: give record ids or --all\n")
            return EXIT_USAGE
        by_id: dict[str, list[ModelRecord]] = {}
        for rec in records:
            by_id.setdefault(rec.id, []).append(rec)
        chosen = []
        for ident in ids:
            if ident not in by_id:
                err.write(f"verify: unknown model id {ident!r}\n")
                return EXIT_USAGE
            chosen.extend(by_id[ident])
    reports = verify_many(chosen, jobs)
    counts = {"PASS": 0, "FAIL": 0, "SKIPPED": 0}
    for rep in reports:
        counts[rep.status] += 1
        if fmt == "machine":
            out.write(_dump(_report_payload(rep)) + "\n")
            continue
        name = rep.id if rep.variant == 0 else f"{rep.id} alt {rep.variant}"
        details = "; ".join(c.format() for c in rep.checks if c.name != "dim")
        line = f"{rep.status:<8}{name:<14}{details}"
        if rep.note:
            line += f"  ({rep.note})"
        out.write(line.rstrip() + "\n")
    unpinched = sorted({r.id for r in reports if r.unpinched}, key=id_sort_key)
    if fmt == "machine":
        out.write(_dump({"summary": counts, "unpinched": unpinched}) + "\n")
    else:
        out.write(f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIPPED']} skipped\n")
        if unpinched:
            out.write(f"not pinched: {' '.join(unpinched)}\n")
    return EXIT_FAIL if counts["FAIL"] else EXIT_OK


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homfano", description="Zero loci of homogeneous bundles and the Fano catalog.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list catalog families")
    p_list.add_argument("prefix", nargs="?", help="only ids starting with this prefix")
    p_list.add_argument("--file", help="read records from a DSL file instead of the catalog ('-' for stdin)")
    p_list.add_argument("--format", choices=("text", "machine"), default="text")

    p_inv = sub.add_parser("invariants", help="invariants of the zero locus of a general section")
    p_inv.add_argument("--space", required=True, help='ambient space, e.g. "P(2) x Gr(2,4)"')
    p_inv.add_argument("--bundle", required=True, help='bundle expression, e.g. "dual(U2)(1,0)+O(0,2)"')
    p_inv.add_argument("--dim", type=int, help="expected dimension of the zero locus")
    p_inv.add_argument("--fano", action="store_true", help="impose Kodaira vanishing h^{0,q}=0 for q>0")
    p_inv.add_argument("--no-hodge-symmetry", action="store_true")
    p_inv.add_argument("--no-serre-duality", action="store_true")
    p_inv.add_argument("--restricted-section", action="store_true",
                       help="the section is not general; mark the results as formal")
    p_inv.add_argument("--no-tangent", action="store_true", help="skip the tangent bundle summary")
    p_inv.add_argument("--format", choices=("text", "machine"), default="text")

    p_ver = sub.add_parser("verify", help="check catalog records against their reference invariants")
    p_ver.add_argument("ids", nargs="*", help="model ids such as 2-16")
    p_ver.add_argument("--all", action="store_true", dest="run_all", help="verify every record")
    p_ver.add_argument("--jobs", type=int, default=None, help="worker processes (default: $HOMFANO_JOBS or 1)")
    p_ver.add_argument("--file", help="read records from a DSL file instead of the catalog ('-' for stdin)")
    p_ver.add_argument("--format", choices=("text", "machine"), default="text")
    return parser


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None,
         stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            return cmd_list(_read_records(args.file, stdin), args.prefix, args.format, out)
        if args.command == "invariants":
            return cmd_invariants(args, out)
        jobs = default_jobs() if args.jobs is None else args.jobs
        return cmd_verify(_read_records(args.file, stdin), args.ids, args.run_all, jobs, args.format, out, err)
    except DslError as exc:
        err.write(f"{exc.__class__.__name__}: {exc}\n")
        return EXIT_USAGE
    except (CodimensionError, BundleError, InconsistentIntervals, LocalizationError) as exc:
        err.write(f"{exc.__class__.__name__}: {exc}\n")
        return EXIT_FAIL
    except OSError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())

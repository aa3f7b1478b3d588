"""Command line for computing, verifying and exporting volume polynomials.

Exit codes: 0 success, 1 relation or cache-verification failure, 2 usage or
domain error, 3 internal mathematical inconsistency, 4 I/O failure.
Results go to stdout, diagnostics to stderr; identical flags against an
identical cache produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .compute import ensure_volume
from .intersections import (
    admissible_dilaton2,
    admissible_string2,
    dilaton2_case,
    string2_case,
)
from .store import CacheError, VolumeStore, resolve_cache_dir, serialize_entry
from .stringdilaton import (
    boundary_cofactor,
    check_dilaton,
    check_second_derivative,
    check_string,
    dilaton_defect,
    second_derivative_defect,
    string_defect,
)
from .volume import (
    ConsistencyError,
    InvariantError,
    UnstableSurfaceError,
    is_stable,
)
from .symmetric import LiftError

EXIT_OK = 0
EXIT_RELATION = 1
EXIT_USAGE = 2
EXIT_MATH = 3
EXIT_IO = 4

RELATIONS = ("string", "dilaton", "second", "factor", "string2", "dilaton2", "all")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpvol",
        description="Exact volume polynomials of moduli spaces of bordered "
        "hyperbolic surfaces, and their intersection numbers.",
    )
    parser.add_argument(
        "--cache-dir",
        default=None,
        help="cache directory (default: $WPVOL_CACHE or ./wpvol-cache)",
    )
    # also accepted after the subcommand; SUPPRESS keeps the global value
    # when the per-command flag is absent
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", parents=[common], help="compute one volume polynomial")
    p_compute.add_argument("--genus", type=int, required=True)
    p_compute.add_argument("--boundaries", type=int, required=True)
    p_compute.add_argument(
        "--method",
        choices=("lift", "mirzakhani", "both"),
        default=None,
        help="generation method (default: lift for genus <= 1, else mirzakhani)",
    )
    p_compute.add_argument("--latex", action="store_true", help="print LaTeX instead")

    p_verify = sub.add_parser("verify", parents=[common], help="exhaustively check relations")
    p_verify.add_argument("--relation", choices=RELATIONS, required=True)
    p_verify.add_argument("--max-genus", type=int, default=1)
    p_verify.add_argument("--max-boundaries", type=int, default=4)

    p_intersect = sub.add_parser("intersect", parents=[common], help="one psi/kappa intersection number")
    p_intersect.add_argument("--genus", type=int, required=True)
    p_intersect.add_argument("--n", type=int, required=True)
    p_intersect.add_argument("--alpha", required=True, help="comma-separated exponents")
    p_intersect.add_argument("--kappa", type=int, default=0)

    p_export = sub.add_parser("export", parents=[common], help="export one volume as JSON or LaTeX")
    p_export.add_argument("--format", choices=("json", "latex"), required=True)
    p_export.add_argument("--genus", type=int, required=True)
    p_export.add_argument("--boundaries", type=int, required=True)
    p_export.add_argument("--output", default=None, help="write to a file instead of stdout")

    p_cache = sub.add_parser("cache", parents=[common], help="cache maintenance")
    p_cache.add_argument("action", choices=("verify", "clear"))

    return parser


def _open_store(args) -> VolumeStore:
    return VolumeStore(resolve_cache_dir(args.cache_dir))


def _cmd_compute(args) -> int:
    g, n = args.genus, args.boundaries
    if not is_stable(g, n):
        print(f"error: (g, n) = ({g}, {n}) is not stable", file=sys.stderr)
        return EXIT_USAGE
    method = args.method or ("lift" if g <= 1 else "mirzakhani")
    if method in ("lift", "both") and g > 1:
        print(f"error: method {method!r} needs genus <= 1", file=sys.stderr)
        return EXIT_USAGE
    store = _open_store(args)
    vol = ensure_volume(store, g, n, method)
    print(vol.poly.to_latex() if args.latex else str(vol.poly))
    return EXIT_OK


def run_verification(
    store: VolumeStore, relation: str, max_genus: int, max_boundaries: int
) -> dict:
    """Run one relation sweep (or all) and return the JSON-ready report.

    Volumes come from the store, computed on demand: the lift chain for
    genus 0 and 1 and the kernel recursion for higher genus.
    """
    if relation == "all":
        reports = [
            run_verification(store, name, max_genus, max_boundaries)
            for name in RELATIONS
            if name != "all"
        ]
        return {
            "relation": "all",
            "max_genus": max_genus,
            "max_boundaries": max_boundaries,
            "checked": sum(r["checked"] for r in reports),
            "failed": sum(r["failed"] for r in reports),
            "vacuous": sum(r["vacuous"] for r in reports),
            "reports": reports,
        }

    def volume(g: int, n: int):
        # n = 0 comes from the one-boundary factorization, so the n = 0
        # string/dilaton checks exercise the closed-volume formulas
        method = "lift" if g <= 1 and n > 0 else "mirzakhani"
        return ensure_volume(store, g, n, method)

    cases = []
    failed = vacuous = 0

    def record(g, n, ok, detail="", is_vacuous=False, **extra):
        nonlocal failed, vacuous
        entry = {"g": g, "n": n, "ok": bool(ok)}
        if detail:
            entry["detail"] = detail
        if is_vacuous:
            entry["vacuous"] = True
            vacuous += 1
        entry.update(extra)
        if not ok:
            failed += 1
        cases.append(entry)

    if relation in ("string", "dilaton", "second"):
        checker, defect = {
            "string": (check_string, string_defect),
            "dilaton": (check_dilaton, dilaton_defect),
            "second": (check_second_derivative, second_derivative_defect),
        }[relation]
        for g in range(max_genus + 1):
            for n in range(max_boundaries):
                if not (is_stable(g, n) and is_stable(g, n + 1)):
                    continue
                smaller = volume(g, n)
                bigger = volume(g, n + 1)
                ok = checker(bigger, smaller)
                record(g, n, ok, detail="" if ok else str(defect(bigger, smaller)))
    elif relation == "factor":
        for g in range(1, max_genus + 1):
            vol = volume(g, 1)
            try:
                boundary_cofactor(vol)
                ok = not vol.poly.eval_two_pi_i(1)
                detail = "" if ok else "nonzero value at L = 2*pi*i"
            except ConsistencyError as exc:
                ok, detail = False, str(exc)
            record(g, 1, ok, detail=detail)
    elif relation in ("string2", "dilaton2"):
        admissible, case_fn = {
            "string2": (admissible_string2, string2_case),
            "dilaton2": (admissible_dilaton2, dilaton2_case),
        }[relation]
        for g in range(max_genus + 1):
            for n in range(1, max_boundaries):
                if not (is_stable(g, n) and is_stable(g, n + 1)):
                    continue
                for alpha, m in admissible(g, n):
                    case = case_fn(g, n, alpha, m, store)
                    record(
                        g,
                        n,
                        case.ok,
                        detail="" if case.ok else f"{case.lhs} != {case.rhs}",
                        is_vacuous=case.vacuous,
                        alpha=list(alpha),
                        m=m,
                    )
    else:
        raise ValueError(f"unknown relation {relation!r}")

    return {
        "relation": relation,
        "max_genus": max_genus,
        "max_boundaries": max_boundaries,
        "checked": len(cases),
        "failed": failed,
        "vacuous": vacuous,
        "cases": cases,
    }


def _cmd_verify(args) -> int:
    store = _open_store(args)
    report = run_verification(store, args.relation, args.max_genus, args.max_boundaries)
    print(json.dumps(report, separators=(",", ":")))
    if report["failed"]:
        flat = report.get("reports", [report])
        for sub_report in flat:
            for case in sub_report.get("cases", []):
                if not case["ok"]:
                    print(
                        f"first failure: {sub_report['relation']} at "
                        f"(g={case['g']}, n={case['n']}): {case.get('detail', '')}",
                        file=sys.stderr,
                    )
                    return EXIT_RELATION
        return EXIT_RELATION
    return EXIT_OK


def _cmd_intersect(args) -> int:
    try:
        # empty alpha means the closed surface (n = 0, pure kappa classes)
        alpha = tuple(int(part) for part in args.alpha.split(",") if part != "")
    except ValueError:
        print(f"error: bad alpha list {args.alpha!r}", file=sys.stderr)
        return EXIT_USAGE
    if len(alpha) != args.n:
        print(
            f"error: alpha has {len(alpha)} entries for n = {args.n}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if not is_stable(args.genus, args.n):
        print(
            f"error: (g, n) = ({args.genus}, {args.n}) is not stable",
            file=sys.stderr,
        )
        return EXIT_USAGE
    from .intersections import psi_kappa

    value = psi_kappa(args.genus, args.n, alpha, args.kappa, _open_store(args))
    print(value)
    return EXIT_OK


def _cmd_export(args) -> int:
    g, n = args.genus, args.boundaries
    if not is_stable(g, n):
        print(f"error: (g, n) = ({g}, {n}) is not stable", file=sys.stderr)
        return EXIT_USAGE
    store = _open_store(args)
    method = "lift" if g <= 1 else "mirzakhani"
    vol = ensure_volume(store, g, n, method)
    if args.format == "json":
        provenance = "seed" if (g, n) in ((0, 3), (1, 1)) else (
            "genus0_lift" if g == 0 else "genus1_lift" if g == 1 else "mirzakhani"
        )
        text = serialize_entry(vol, provenance)
    else:
        text = vol.poly.to_latex() + "\n"
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_cache(args) -> int:
    store = _open_store(args)
    if args.action == "clear":
        count = store.clear()
        print(f"cleared {count} entries")
        return EXIT_OK
    try:
        report = store.verify_all()
    except CacheError as exc:
        print(f"cache verification failed: {exc}", file=sys.stderr)
        return EXIT_RELATION
    if report["failures"]:
        for check in report["checks"]:
            if not check["ok"]:
                print(
                    f"FAIL {check['kind']} ({check['g']},{check['n']}): "
                    f"{check['detail']}",
                    file=sys.stderr,
                )
        print(f"{report['entries']} entries, {report['failures']} failures")
        return EXIT_RELATION
    print(f"{report['entries']} entries, OK")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    handler = {
        "compute": _cmd_compute,
        "verify": _cmd_verify,
        "intersect": _cmd_intersect,
        "export": _cmd_export,
        "cache": _cmd_cache,
    }[args.command]
    try:
        return handler(args)
    except UnstableSurfaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConsistencyError, LiftError, InvariantError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        defect = getattr(exc, "defect", None) or getattr(exc, "residual", None)
        if defect is not None:
            print(f"difference polynomial: {defect}", file=sys.stderr)
        return EXIT_MATH
    except CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_RELATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())

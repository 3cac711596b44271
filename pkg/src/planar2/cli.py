"""Command line entry point: ``planar2 <command> ...``.

Results go to stdout (JSON or CSV, deterministic).  A run manifest is written
before the results, to stderr or to ``--manifest FILE``.  Exit codes: 0 ok,
2 guard or bad input, 3 property mismatch, 4 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import sys
import time
from pathlib import Path

from . import __version__
from .errors import ContextMismatch, GuardError, PropertyMismatch
from .gf2 import ctx_new, moduli_checksum
from .gr4 import ring_ctx_new
from .planar import FuncTable, exponent_family, is_planar, is_power_of_two, search_planar_monomials

EXIT_OK, EXIT_GUARD, EXIT_MISMATCH, EXIT_INTERNAL = 0, 2, 3, 4


class CheckFailed(Exception):
    """A requested verification came out false; the result is still printed."""


def parse_function(spec: str, n: int) -> FuncTable:
    """'t,0x<hex>' monomial, 'zero', or the path of a table file."""
    ctx = ctx_new(n)
    if spec == "zero":
        return FuncTable.zero(ctx)
    if "," in spec and not Path(spec).exists():
        t_text, c_text = spec.split(",", 1)
        t, c = int(t_text), int(c_text, 0)
        if not 0 <= t:
            raise ValueError("exponent must be nonnegative")
        return FuncTable.monomial(ctx, t, ctx.check(c))
    f = FuncTable.load(spec)
    if f.ctx.n != n:
        raise ContextMismatch(f"table file is over F_2^{f.ctx.n}, not F_2^{n}")
    return f


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------- commands; each returns (text, n, ctx_for_manifest)


def cmd_planar_search(args):
    n = args.n
    exps = [args.t] if args.t is not None else None
    results = search_planar_monomials(n, exponents=exps, sample=args.sample, seed=args.seed, jobs=args.jobs)
    ctx = ctx_new(n)
    q1 = ctx.order - 1
    records = []
    gcd_ok = True
    for t, cs in results:
        violates = bool(cs) and math.gcd(t - 2, q1) == 1 and not is_power_of_two(t)
        gcd_ok &= not violates
        records.append({"t": t, "c": [ctx.format(c) for c in cs], "count": len(cs),
                        "family": exponent_family(n, t) if cs else None})
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("t,count,family,c\n")
        for r in records:
            buf.write(f"{r['t']},{r['count']},{r['family'] or ''},{' '.join(r['c'])}\n")
        text = buf.getvalue()
    else:
        text = _dump_json({"n": n, "exhaustive": args.sample is None, "records": records,
                           "gcd_filter_ok": gcd_ok})
    if not gcd_ok:
        raise CheckFailed(text)
    return text, ctx


def cmd_lee_table(args):
    from .z4code import dual_lee_distribution, expected_dual_distribution

    f = parse_function(args.f, args.n)
    dist = dual_lee_distribution(f, ring_ctx_new(f.ctx))
    match = dist == expected_dual_distribution(args.n)
    if args.format == "json":
        text = _dump_json({"n": args.n, "f": f.describe(), "metric": dist.metric,
                           "distribution": {str(w): c for w, c in dist.counts.items()},
                           "matches_table": match})
    else:
        text = dist.to_csv()
    if args.check_table and not match:
        raise CheckFailed(text)
    return text, f.ctx


def cmd_rds_verify(args):
    from .rds import rds_report

    f = parse_function(args.f, args.n)
    rep = rds_report(f, ring_ctx_new(f.ctx))
    text = _dump_json(rep)
    if not rep["planar_equiv"]:
        raise CheckFailed(text)
    return text, f.ctx


def cmd_min_lee(args):
    from .z4code import min_lee_distance_Cf

    f = parse_function(args.f, args.n)
    R = ring_ctx_new(f.ctx)
    d = min_lee_distance_Cf(f, R, route=args.route)
    planar = is_planar(f, first_failure_only=True).planar
    rep = {"n": args.n, "f": f.describe(), "min_lee": d, "is_planar": planar,
           "route": args.route or ("enumerate" if args.n <= 3 else "macwilliams")}
    text = _dump_json(rep)
    if d < 4:
        raise CheckFailed(text)
    return text, f.ctx


def cmd_curve_report(args):
    from .curve import b_set, singular_points

    ctx = ctx_new(args.n)
    if args.a is not None:
        targets = [ctx.check(int(args.a, 0))]
        complete = None
    else:
        bs = b_set(args.n, args.t, args.c, args.ext)
        targets, complete = bs.elements, bs.complete
    reports = [singular_points(args.t, a, args.n, args.ext).to_json() for a in targets]
    keys = ("within_bounds", "infinity_types_ok", "affine_multiplicities_ok")
    summary = {k: all(r[k] for r in reports) for k in keys}
    summary["cones_squarefree"] = all(p["cone_squarefree"] for r in reports
                                      for p in r["infinity"] + r["affine"])
    summary["max_infinity"] = max((len(r["infinity"]) for r in reports), default=0)
    summary["max_offdiag_classes"] = max((r["offdiag_classes"] for r in reports), default=0)
    summary["search_complete"] = all(r["search_complete"] for r in reports)
    text = _dump_json({"t": args.t, "n": args.n, "c": ctx.format(args.c),
                       "b_set_complete": complete, "count": len(reports),
                       "summary": summary, "reports": reports})
    if not all(summary[k] for k in keys + ("cones_squarefree",)):
        raise CheckFailed(text)
    return text, ctx


def cmd_bset(args):
    from .curve import b_set
    from .planar import a_set_size

    ctx = ctx_new(args.n)
    bs = b_set(args.n, args.t, args.c, args.ext)
    text = _dump_json({"t": args.t, "n": args.n, "c": ctx.format(args.c),
                       "a_set_size": a_set_size(args.n, args.t),
                       "elements": [ctx.format(a) for a in bs.elements],
                       "contains_non_one": any(a != 1 for a in bs.elements),
                       "complete": bs.complete, "search_complete_up_to": bs.M_max})
    return text, ctx


COMMANDS = {
    "planar-search": cmd_planar_search,
    "lee-table": cmd_lee_table,
    "rds-verify": cmd_rds_verify,
    "min-lee": cmd_min_lee,
    "curve-report": cmd_curve_report,
    "bset": cmd_bset,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planar2", description="Planar functions over binary fields.")
    p.add_argument("--version", action="version", version=f"planar2 {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="json"):
        sp.add_argument("--format", choices=("json", "csv"), default=fmt_default)
        sp.add_argument("--manifest", metavar="FILE", help="write the run manifest here instead of stderr")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes (results do not depend on it)")

    sp = sub.add_parser("planar-search", help="planar monomials c*x^t over F_2^n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=int)
    sp.add_argument("--sample", type=int, help="random coefficients per exponent (required above n = 7)")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)

    sp = sub.add_parser("lee-table", help="Lee weight distribution of the dual code")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--f", required=True, help="'t,0x<hex>', 'zero' or a table file")
    sp.add_argument("--check-table", action="store_true", help="exit 3 unless the closed form matches")
    common(sp, "csv")

    sp = sub.add_parser("rds-verify", help="difference-set, character and planarity checks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--f", required=True)
    common(sp)

    sp = sub.add_parser("min-lee", help="minimum Lee distance of C_f")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--f", required=True)
    sp.add_argument("--route", choices=("enumerate", "macwilliams"))
    common(sp)

    for name, hlp in (("curve-report", "singular points of the curves for a in B_n"),
                      ("bset", "the coefficient set B_n")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("--t", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--c", type=lambda s: int(s, 0), default=1)
        sp.add_argument("--ext", type=int, help="extension degree M of the search field")
        if name == "curve-report":
            sp.add_argument("--a", help="analyse this single a (hex) instead of all of B_n")
        common(sp)
    return p


def _manifest(args, ctx, elapsed, text, status, error=None) -> dict:
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("command", "manifest", "jobs", "format")}
    m = {
        "tool": "planar2",
        "version": __version__,
        "command": args.command,
        "params": params,
        "format": args.format,
        "n": getattr(args, "n", None),
        "modulus": None,
        "lifted_modulus": None,
        "moduli_checksum": moduli_checksum(),
        "elapsed_s": round(elapsed, 6),
        "result_digest": hashlib.sha256(text.encode("utf-8")).hexdigest() if text is not None else None,
        "status": status,
    }
    if ctx is not None:
        from .gr4 import graeffe_lift

        m["modulus"] = f"{ctx.modulus:#x}"
        m["lifted_modulus"] = graeffe_lift(ctx.modulus)
    if error is not None:
        m["error"] = error
    return m


def _emit_manifest(args, manifest: dict) -> None:
    data = json.dumps(manifest, sort_keys=True) + "\n"
    if args.manifest:
        Path(args.manifest).write_text(data, encoding="utf-8")
    else:
        sys.stderr.write(data)
        sys.stderr.flush()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    text, ctx, code, error = None, None, EXIT_OK, None
    try:
        ctx = ctx_new(args.n) if 1 <= getattr(args, "n", 0) <= 24 else None
        text, ctx = COMMANDS[args.command](args)
    except CheckFailed as exc:
        text, code, error = exc.args[0], EXIT_MISMATCH, "check failed"
    except GuardError as exc:
        code, error = EXIT_GUARD, f"guard: {exc}"
    except (ValueError, ContextMismatch, FileNotFoundError) as exc:
        code, error = EXIT_GUARD, f"bad input: {exc}"
    except PropertyMismatch as exc:
        code, error = EXIT_MISMATCH, f"property mismatch: {exc}"
    except Exception as exc:  # noqa: BLE001 - every failure still gets a manifest
        code, error = EXIT_INTERNAL, f"internal: {type(exc).__name__}: {exc}"
    status = "ok" if code == EXIT_OK else "error"
    _emit_manifest(args, _manifest(args, ctx, time.perf_counter() - start, text, status, error))
    if text is not None:
        sys.stdout.write(text)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

One executable, five modes:

  bs          Bernstein-Sato polynomial and its root table
  vfilt       filtration pieces at a level p
  hodge       Hodge ideals I_k(alpha D), k = 0..p
  multiplier  multiplier ideals and jumping numbers in (0, 1)
  level       generating level of the filtration at alpha

JSON output is canonical: sorted keys, rationals as strings, two-space
indent, newline-terminated.  Reruns, warm caches and parallel runs all
produce byte-identical documents; wall-clock timings are only included
on request since they would break that.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .dmod import bernstein_sato, default_level_hint, minimal_exponent
from .errors import InternalError, ValidationError
from .hodge import (
    generating_level,
    hodge_ideals,
    multiplier_ideals,
)
from .parsing import parse_poly, parse_rational
from .vfiltration import gpv, lookup_piece

MODES = ("bs", "vfilt", "hodge", "multiplier", "level")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dmod-hodge",
        description="Exact filtration, Hodge-ideal and multiplier-ideal "
        "computations for a polynomial f.",
    )
    ap.add_argument("--mode", required=True, choices=MODES)
    ap.add_argument("--f", required=True, metavar="EXPR",
                    help="polynomial, e.g. 'x^5+y^5+x^2*y^2'")
    ap.add_argument("--vars", required=True, metavar="x,y,z",
                    help="comma-separated variable names")
    ap.add_argument("--p", type=int, default=None, metavar="N",
                    help="filtration level (default 0; mode level defaults "
                    "to one above the known bound)")
    ap.add_argument("--alpha", default=None, metavar="a/b",
                    help="rational in (0,1], or 'sym' for a formal "
                    "parameter (hodge mode)")
    ap.add_argument("--format", default="text", choices=("text", "json"))
    ap.add_argument("--method", default="bm", choices=("bm", "malgrange"),
                    help="annihilator construction")
    ap.add_argument("--no-check-reduced", action="store_true",
                    help="skip the squarefree check")
    ap.add_argument("--cache", default=None, metavar="DIR",
                    help="artifact cache directory")
    ap.add_argument("--jobs", type=int, default=1, metavar="N",
                    help="worker threads for independent pieces")
    ap.add_argument("--timings", action="store_true",
                    help="include wall-clock stage timings in the report")
    return ap


def _frac(q: Fraction) -> str:
    return str(q)


def _piece_json(piece) -> dict:
    return {
        "alpha": _frac(piece.alpha),
        "nilpotency": piece.nilpotency,
        "generators": [[c.text() for c in vec] for vec in piece.vectors],
        "closure_added": piece.closure_added,
    }


def run(args) -> dict:
    """Execute one request; returns the full report dictionary."""
    vars = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    f = parse_poly(args.f, vars)
    mode = args.mode
    check_reduced = not args.no_check_reduced
    cache = None
    if args.cache:
        from .cache import ArtifactCache

        cache = ArtifactCache(args.cache)

    symbolic = False
    alpha = None
    if args.alpha is not None:
        if args.alpha.strip().lower() in ("sym", "symbolic"):
            symbolic = True
        else:
            alpha = parse_rational(args.alpha)
    if mode in ("hodge", "level") and alpha is None and not symbolic:
        raise ValidationError(f"mode {mode} needs --alpha")
    if symbolic and mode != "hodge":
        raise ValidationError("symbolic alpha only makes sense in hodge mode")
    if args.jobs < 1:
        raise ValidationError(f"--jobs must be positive, got {args.jobs}")

    report = {
        "version": __version__,
        "request": {
            "mode": mode,
            "f": args.f,
            "vars": list(vars),
            "p": args.p,
            "alpha": "symbolic" if symbolic else (
                _frac(alpha) if alpha is not None else None),
            "method": args.method,
            "check_reduced": check_reduced,
            "format": args.format,
        },
        "bernstein_sato": None,
        "roots": None,
        "pieces": None,
        "hodge": None,
        "multiplier": None,
        "generating_level": None,
        "timings": None,
    }
    timings: dict[str, float] = {}

    if mode == "bs":
        t0 = time.perf_counter()
        bs = bernstein_sato(f, args.method)
        timings["bernstein_sato"] = time.perf_counter() - t0
        report["bernstein_sato"] = bs.b.text()
        report["roots"] = [[_frac(r), m] for r, m in bs.roots]
    elif mode == "multiplier":
        t0 = time.perf_counter()
        fam = multiplier_ideals(
            f, method=args.method, jobs=args.jobs, cache=cache
        )
        timings["multiplier"] = time.perf_counter() - t0
        vres = fam.vres
        report["bernstein_sato"] = vres.bernstein.text()
        report["roots"] = [[_frac(r), m] for r, m in vres.root_table]
        report["pieces"] = [_piece_json(vres.pieces[c]) for c in vres.candidates]
        report["multiplier"] = {
            "jumps": [_frac(j) for j in fam.jumps],
            "ideals": [
                {"end": _frac(b), "generators": [p.text() for p in ideal]}
                for b, ideal in zip(fam.breaks, fam.ideals)
            ],
            "lct": _frac(fam.lct),
            "v_one": [p.text() for p in fam.v_one],
        }
    else:
        p = args.p
        t0 = time.perf_counter()
        if mode == "level" and p is None:
            bs = bernstein_sato(f, args.method)
            hint = default_level_hint(alpha, minimal_exponent(bs), len(vars))
            p = hint + 1
        if p is None:
            p = 0
        vres = gpv(
            f, p, method=args.method, check_reduced=check_reduced,
            jobs=args.jobs, cache=cache,
        )
        timings["gpv"] = time.perf_counter() - t0
        report["request"]["p"] = p
        report["bernstein_sato"] = vres.bernstein.text()
        report["roots"] = [[_frac(r), m] for r, m in vres.root_table]
        if mode == "vfilt" and alpha is not None:
            shown = [lookup_piece(vres, alpha)]
        else:
            shown = [vres.pieces[c] for c in vres.candidates]
        report["pieces"] = [_piece_json(pc) for pc in shown]
        if mode == "hodge":
            t0 = time.perf_counter()
            anchors = vres.candidates if symbolic else [alpha]
            hodge: dict[str, dict[str, list[str]]] = {}
            for a in anchors:
                rows = hodge_ideals(
                    vres, a, symbolic=symbolic, check_reduced=check_reduced
                )
                hodge[_frac(a)] = {
                    str(row.level): [g.text() for g in row.generators]
                    for row in rows
                }
            report["hodge"] = hodge
            timings["hodge"] = time.perf_counter() - t0
        elif mode == "level":
            t0 = time.perf_counter()
            report["generating_level"] = generating_level(vres, alpha)
            timings["generating_level"] = time.perf_counter() - t0

    if args.timings:
        report["timings"] = {k: round(v, 6) for k, v in sorted(timings.items())}
    return report


def render_text(report: dict) -> str:
    out = []
    req = report["request"]
    out.append(f"mode: {req['mode']}  f: {req['f']}  vars: {','.join(req['vars'])}")
    if report["bernstein_sato"] is not None:
        out.append(f"bernstein_sato: {report['bernstein_sato']}")
        roots = " ".join(f"{r}({m})" for r, m in report["roots"])
        out.append(f"roots: {roots}")
    if report["pieces"] is not None:
        for pc in report["pieces"]:
            out.append(
                f"piece alpha={pc['alpha']} nilpotency={pc['nilpotency']}"
                + (" closure_added" if pc["closure_added"] else "")
            )
            for vec in pc["generators"]:
                out.append("  [" + ", ".join(vec) + "]")
    if report["hodge"] is not None:
        for a in sorted(report["hodge"], key=lambda t: Fraction(t)):
            for k, gens in sorted(report["hodge"][a].items(), key=lambda kv: int(kv[0])):
                out.append(f"I_{k}({a}): (" + ", ".join(gens) + ")")
    if report["multiplier"] is not None:
        m = report["multiplier"]
        out.append("jumping numbers: {" + ", ".join(m["jumps"]) + "}")
        prev = "0"
        for entry in m["ideals"]:
            out.append(
                f"J on [{prev}, {entry['end']}): ("
                + ", ".join(entry["generators"]) + ")"
            )
            prev = entry["end"]
        out.append(f"lct: {m['lct']}")
        out.append("piece at 1: (" + ", ".join(m["v_one"]) + ")")
    if report["generating_level"] is not None:
        out.append(f"generating level: {report['generating_level']}")
    if report["timings"]:
        for k, v in report["timings"].items():
            out.append(f"time {k}: {v:.3f}s")
    return "\n".join(out) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except ValidationError as e:
        print(f"dmod-hodge: {e}", file=sys.stderr)
        return 2
    except InternalError as e:
        print(f"dmod-hodge: internal error: {e}", file=sys.stderr)
        return 3
    if args.format == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())

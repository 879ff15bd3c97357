"""Command line front end.

    segrezeta zeta ideal.txt [--tmax N] [--smax N] [--order N] [--no-crosscheck]
    segrezeta body ideal.txt [--level S]
    segrezeta fiber-volume ideal.txt [--level S] [--export-plot out.csv]
    segrezeta index ideal.txt --s S

Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 budget
exceeded, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from fractions import Fraction

from . import serialize as ser
from .errors import ConsistencyError, NotMonomial, SegreZetaError
from .exactnum import as_fraction, format_poly, rf_to_series
from .idealfile import parse_ideal
from .polyhedra import fiber_volume_function, polytope_normalized_volume, slice_at_level
from .polyring import format_multipoly, generating_degree, is_monomial_ideal
from .segre import (
    compute_body,
    default_s_max,
    intersection_index_monomial,
    rational_index,
    segre_zeta,
)


class _Timer:
    def __init__(self):
        self.marks = {}

    def run(self, name, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        self.marks[name] = round(time.perf_counter() - t0, 6)
        return out


def _input_echo(ideal, cfg, source, args) -> dict:
    names = source.variables
    return {
        "variables": list(names),
        "generators": [format_multipoly(g, names) for g in ideal.generators],
        "dehom": names[cfg.dehomogenize_index],
        "order": [names[i] for i in cfg.variable_order],
        "flags": {
            "tmax": args.tmax,
            "smax": args.smax,
            "order": getattr(args, "order", None),
            "crosscheck": not getattr(args, "no_crosscheck", False),
        },
    }


def _body_summary(sampled) -> dict:
    p = sampled.polyhedron
    doc = ser.polyhedron_to_json(p)
    doc.update({
        "vertex_count": len(p.vertices),
        "ray_count": len(p.rays),
        "exact": sampled.exact,
        "t_max": None if sampled.exact else sampled.t_max,
        "stabilized": sampled.stabilized,
    })
    return doc


def _slice_doc(body, level) -> dict:
    sl = slice_at_level(body, level)
    return {
        "level": ser.q(sl.level),
        "vertices": [ser.vec(v) for v in sl.vertices],
        "normalized_volume": ser.q(polytope_normalized_volume(sl)),
    }


def _export_plot(path, vol, n):
    lo = max(vol.breakpoints[0] - 1, Fraction(0))
    hi = vol.breakpoints[-1] + n + 2
    step = Fraction(1, 4)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["level", "volume", "volume_float"])
        s = lo
        while s <= hi:
            v = vol(s)
            w.writerow([ser.q(s), ser.q(v), float(v)])
            s += step


def cmd_zeta(ideal, cfg, source, args) -> tuple[dict, int]:
    timer = _Timer()
    res = timer.run("pipeline", segre_zeta, ideal, cfg, t_max=args.tmax, s_max=args.smax,
                    crosscheck=not args.no_crosscheck)
    n = ideal.n
    order = args.order if args.order is not None else n
    failures = []
    if res.exact:
        if res.crosscheck == "fail":
            failures.append("oracle mismatch: interpolation sigma differs from integral sigma")
        if not res.report.pole_check:
            failures.append("zeta denominator does not divide prod(1 + d_i t)")
        if not all(c.passed for c in res.fiber_volume.checks):
            failures.append("interpolation verification sample failed")
    rep = res.report
    doc = {
        "schema_version": ser.SCHEMA_VERSION,
        "command": "zeta",
        "input": _input_echo(ideal, cfg, source, args),
        "exact": res.exact,
        "body": _body_summary(res.sampled),
        "fiber_volume": ser.piecewise_to_json(res.fiber_volume),
        "integral": ser.rf_to_json(res.integral),
        "sigma": list(res.sigma.sigma) if res.sigma else None,
        "zeta": {**ser.rf_to_json(rep.zeta),
                 "series": [ser.q(c) for c in rf_to_series(rep.zeta, order).coeffs]},
        "zeta_report": {
            "degree_sequence_used": list(rep.degree_sequence_used),
            "numerator_A": ser.poly_coeffs(rep.numerator_A),
            "pole_check": rep.pole_check,
            "nonneg_check": rep.nonneg_check,
        },
        "crosscheck": {
            "verdict": res.crosscheck,
            "oracle_sigma": list(res.oracle_sigma.sigma) if res.oracle_sigma else None,
        },
        "warnings": list(res.warnings),
        "checks": {"ok": not failures, "failures": failures},
    }
    if args.timings:
        doc["timings"] = timer.marks
    if getattr(args, "export_plot", None):
        _export_plot(args.export_plot, res.fiber_volume, n)
    return doc, (ConsistencyError.exit_code if failures else 0)


def cmd_body(ideal, cfg, source, args) -> tuple[dict, int]:
    timer = _Timer()
    sampled = timer.run("body", compute_body, ideal, cfg, args.tmax, args.smax)
    doc = {
        "schema_version": ser.SCHEMA_VERSION,
        "command": "body",
        "input": _input_echo(ideal, cfg, source, args),
        "exact": sampled.exact,
        "body": _body_summary(sampled),
    }
    if args.level is not None:
        doc["slice"] = _slice_doc(sampled.polyhedron, as_fraction(args.level))
    if args.timings:
        doc["timings"] = timer.marks
    return doc, 0


def cmd_fiber_volume(ideal, cfg, source, args) -> tuple[dict, int]:
    timer = _Timer()
    sampled = timer.run("body", compute_body, ideal, cfg, args.tmax, args.smax)
    vol = timer.run("fiber_volume", fiber_volume_function, sampled.polyhedron)
    doc = {
        "schema_version": ser.SCHEMA_VERSION,
        "command": "fiber-volume",
        "input": _input_echo(ideal, cfg, source, args),
        "exact": sampled.exact,
        "body": _body_summary(sampled),
        "fiber_volume": ser.piecewise_to_json(vol),
    }
    if args.level is not None:
        doc["slice"] = _slice_doc(sampled.polyhedron, as_fraction(args.level))
    if args.timings:
        doc["timings"] = timer.marks
    if args.export_plot:
        _export_plot(args.export_plot, vol, ideal.n)
    ok = all(c.passed for c in vol.checks)
    return doc, (0 if ok else ConsistencyError.exit_code)


def cmd_index(ideal, cfg, source, args) -> tuple[dict, int]:
    if not is_monomial_ideal(ideal):
        raise NotMonomial("intersection indices are only computed for monomial ideals")
    s = as_fraction(args.s)
    value = intersection_index_monomial(ideal, int(s)) if s.denominator == 1 else rational_index(ideal, s)
    doc = {
        "schema_version": ser.SCHEMA_VERSION,
        "command": "index",
        "input": _input_echo(ideal, cfg, source, args),
        "exact": True,
        "s": ser.q(s),
        "generating_degree": generating_degree(ideal),
        "index": ser.q(value),
    }
    return doc, 0


def render_plain(doc: dict) -> str:
    lines = [f"command: {doc['command']}"]
    inp = doc.get("input", {})
    if inp:
        lines.append(f"ideal:   ({', '.join(inp['generators'])}) in "
                     f"{len(inp['variables'])} variables")
    lines.append(f"exact:   {doc.get('exact')}")
    body = doc.get("body")
    if body:
        lines.append(f"body:    {body['vertex_count']} vertices, {body['ray_count']} rays"
                     + ("" if body["exact"] else
                        f", t_max={body['t_max']}, stabilized={body['stabilized']}"))
        for v in body["vertices"]:
            lines.append(f"         vertex ({', '.join(v)})")
    fv = doc.get("fiber_volume")
    if fv:
        for piece in fv["pieces"]:
            p = _poly_from(piece["coefficients"])
            lines.append(f"volume:  [{piece['lo']}, {piece['hi']}]  {format_poly(p, 's')}")
        lines.append(f"volume:  [{fv['tail']['lo']}, oo)  "
                     f"{format_poly(_poly_from(fv['tail']['coefficients']), 's')}")
    if "slice" in doc:
        sl = doc["slice"]
        lines.append(f"slice:   level {sl['level']}, normalized volume {sl['normalized_volume']}")
    if "integral" in doc:
        f = ser.rf_from_json(doc["integral"])
        lines.append(f"1-zeta:  ({format_poly(f.num)}) / ({format_poly(f.den)})")
        z = ser.rf_from_json(doc["zeta"])
        lines.append(f"zeta:    ({format_poly(z.num)}) / ({format_poly(z.den)})")
        lines.append(f"series:  {', '.join(doc['zeta']['series'])}")
        lines.append(f"sigma:   {doc['sigma']}")
        zr = doc["zeta_report"]
        lines.append(f"report:  poles ok={zr['pole_check']}, A nonneg={zr['nonneg_check']}, "
                     f"degrees used={zr['degree_sequence_used']}")
        lines.append(f"oracle:  {doc['crosscheck']['verdict']}")
        for w in doc.get("warnings", []):
            lines.append(f"warning: {w}")
        for f in doc["checks"]["failures"]:
            lines.append(f"FAILED:  {f}")
    if "index" in doc:
        lines.append(f"index:   [I_{doc['s']}, ..., I_{doc['s']}] = {doc['index']}")
    return "\n".join(lines) + "\n"


def _poly_from(coeffs):
    from .exactnum import PolyT
    return PolyT(ser.unq(c) for c in coeffs)


COMMANDS = {
    "zeta": cmd_zeta,
    "body": cmd_body,
    "fiber-volume": cmd_fiber_volume,
    "index": cmd_index,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("ideal", help="ideal file, or - for stdin")
    common.add_argument("--tmax", type=int, default=1, help="semigroup power level (default 1)")
    common.add_argument("--smax", type=int, default=None,
                        help="degree bound for sampling (default generating degree + n + 2)")
    common.add_argument("--vars-order", default=None,
                        help="comma separated valuation order, overrides the file")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="plain", action="store_false", default=False)
    out.add_argument("--plain", dest="plain", action="store_true")

    parser = argparse.ArgumentParser(prog="segrezeta",
                                     description="Segre zeta functions from Newton-Okounkov bodies")
    sub = parser.add_subparsers(dest="command", required=True)
    z = sub.add_parser("zeta", parents=[common], help="full pipeline")
    z.add_argument("--order", type=int, default=None, help="series truncation order")
    z.add_argument("--no-crosscheck", action="store_true", help="skip the interpolation oracle")
    z.add_argument("--export-plot", default=None, help="write slice volumes as CSV")
    b = sub.add_parser("body", parents=[common], help="Newton-Okounkov body")
    b.add_argument("--level", default=None, help="also report the slice at this level")
    f = sub.add_parser("fiber-volume", parents=[common], help="slice volume function")
    f.add_argument("--level", default=None, help="also report the slice at this level")
    f.add_argument("--export-plot", default=None, help="write slice volumes as CSV")
    i = sub.add_parser("index", parents=[common], help="intersection index of I_s")
    i.add_argument("--s", required=True, help="degree (integer or p/q)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.ideal == "-":
            text = sys.stdin.read()
        else:
            with open(args.ideal, encoding="utf-8") as fh:
                text = fh.read()
        order = args.vars_order.replace(",", " ").split() if args.vars_order else None
        ideal, cfg, source = parse_ideal(text, order)
        if args.smax is None and args.command != "index":
            args.smax = default_s_max(ideal, args.tmax)
        doc, code = COMMANDS[args.command](ideal, cfg, source, args)
    except SegreZetaError as err:
        doc = {"schema_version": ser.SCHEMA_VERSION, "command": args.command,
               "error": {"type": type(err).__name__, "message": str(err),
                         "exit_code": err.exit_code}}
        print(f"segrezeta: {type(err).__name__}: {err}", file=sys.stderr)
        if not args.plain:
            sys.stdout.write(ser.dumps(doc))
        return err.exit_code
    except OSError as err:
        print(f"segrezeta: {err}", file=sys.stderr)
        return 2
    sys.stdout.write(render_plain(doc) if args.plain else ser.dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes follow the verdicts: 0 Holds (or success), 1 Fails, 2 Inconclusive,
3 for errors in the model or computation, 4 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .criteria import (
    Outcome,
    Verdict,
    gross_popescu_check,
    k_very_ample_check,
    koszul_check,
    np_check,
    reider_global_generation,
    reider_very_ample,
    seshadri,
    singular_divisor_certificate,
)
from .errors import NOKError
from .exactnum import format_exact
from .lattice import SurfaceModel
from .models import resolve_model
from .polygon import NOKPolygon, envelope_check
from .verify import SUITES, run_suite
from .zariski import ray_chambers, zariski_decompose

EXIT_ERROR = 3
EXIT_USAGE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _pos_fraction(text: str) -> Fraction:
    q = _fraction(text)
    if q <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return q


def _fmt_vec(v) -> list[str]:
    return [format_exact(x) for x in v]


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _verdict_line(v: Verdict, model: SurfaceModel) -> str:
    if v.outcome is Outcome.Fails and hasattr(v.witness, "cls"):
        deg = format_exact(model.degree(v.witness))
        return f"Fails (witness: {v.witness.name}, L·{v.witness.name} = {deg})"
    return v.outcome.value


def _finish(v: Verdict, model: SurfaceModel, as_json: bool, line: str | None = None) -> int:
    if as_json:
        _emit(v.to_dict())
    else:
        print(line or _verdict_line(v, model))
        print(f"justification: {v.justification}")
        for note in v.notes:
            print(f"note: {note}")
    return v.outcome.exit_code


def polygon_dict(poly: NOKPolygon) -> dict:
    return {
        "vertices": [_fmt_vec(p) for p in poly.vertices],
        "area": format_exact(poly.area()),
        "mu_prime": format_exact(poly.mu_prime),
        "upper_boundary": [
            {"slope": format_exact(p.slope), "intercept": format_exact(p.intercept),
             "interval": [format_exact(p.lo), format_exact(p.hi)]}
            for p in poly.upper_boundary
        ],
    }


def chambers_dict(rc) -> dict:
    return {
        "mu_prime": format_exact(rc.mu_prime),
        "breakpoints": [[format_exact(t), list(names)] for t, names in rc.breakpoints],
        "chambers": [
            {
                "interval": [format_exact(ch.start), format_exact(ch.end)],
                "support": list(ch.support),
                "coefficients": {n: [format_exact(f.c0), format_exact(f.c1)] for n, f in sorted(ch.coefficients.items())},
                "slice": [format_exact(ch.slice_fn.c0), format_exact(ch.slice_fn.c1)],
            }
            for ch in rc.chambers
        ],
    }


# -- subcommands -----------------------------------------------------------
def _analysis(model: SurfaceModel) -> tuple[dict, list[list[str]]]:
    L = model.L
    rc = ray_chambers(L, model.catalog)
    poly = NOKPolygon.from_chambers(rc)
    ses = seshadri(model)
    rows = [["check", "p", "outcome", "justification", "witness"]]
    report = {
        "model": model.name,
        "L^2": format_exact(L.square()),
        "seshadri": format_exact(ses.value),
        "seshadri_achieved_by": ses.achieved_by if isinstance(ses.achieved_by, str) else ses.achieved_by.name,
        "polygon": polygon_dict(poly),
        "chambers": chambers_dict(rc),
        "envelope_ok": envelope_check(poly, rc).ok,
        "verdicts": [],
        "certificates": [],
    }

    def add(name: str, p, v: Verdict):
        rec = v.to_dict()
        rec.update(check=name, p=p)
        report["verdicts"].append(rec)
        rows.append([name, "" if p is None else str(p), v.outcome.value, v.justification, rec["witness"] or ""])

    if model.abelian:
        for p in range(4):
            add("np", p, np_check(model, p))
            add("kva", p + 1, k_very_ample_check(model, p + 1))
        add("koszul", None, koszul_check(model))
        add("very-ample", None, reider_very_ample(model))
        add("globally-generated", None, reider_global_generation(model))
    for p in range(4):
        cert = singular_divisor_certificate(model, p).to_dict()
        cert["p"] = p
        report["certificates"].append(cert)
        rows.append(["certificate", str(p), cert["kind"], f"slice(2) = {cert['slice_at_2']}", ""])
    return report, rows


def cmd_analyze(args) -> int:
    model = resolve_model(args.model)
    report, rows = _analysis(model)
    tsv = "".join("\t".join(r) + "\n" for r in rows)
    if args.json:
        _emit(report)
    else:
        print(f"model\t{model.name or args.model}")
        print(f"L^2\t{report['L^2']}")
        print(f"seshadri\t{report['seshadri']}\t{report['seshadri_achieved_by']}")
        print("vertices\t" + " ".join(f"({x}, {y})" for x, y in report["polygon"]["vertices"]))
        sys.stdout.write(tsv)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(json.dumps(report, indent=2) + "\n")
        (out / "verdicts.tsv").write_text(tsv)
        from .plotting import plot_polygon

        poly = NOKPolygon.from_chambers(ray_chambers(model.L, model.catalog))
        plot_polygon(poly, out / "polygon.svg", title=model.name or "")
    return 0


def cmd_polygon(args) -> int:
    model = resolve_model(args.model)
    B = model.L * args.scale
    rc = ray_chambers(B, model.catalog)
    poly = NOKPolygon.from_chambers(rc)
    if args.json:
        d = polygon_dict(poly)
        d["B"] = _fmt_vec(B.coeffs)
        d["chambers"] = chambers_dict(rc)
        _emit(d)
    else:
        print("vertices: " + ", ".join(f"({format_exact(x)}, {format_exact(y)})" for x, y in poly.vertices))
        print(f"area: {format_exact(poly.area())}")
        print(f"mu': {format_exact(poly.mu_prime)}")
        for t, names in rc.breakpoints:
            print(f"breakpoint {format_exact(t)}: {', '.join(names)}")
    return 0


def cmd_zariski(args) -> int:
    model = resolve_model(args.model)
    bl, _ = model.blown_up
    D = bl.pullback(model.L * args.scale) - args.t * bl.exceptional
    z = zariski_decompose(D, model.catalog)
    if args.json:
        _emit({
            "input": _fmt_vec(D.coeffs),
            "positive": _fmt_vec(z.positive.coeffs),
            "negative": {k: format_exact(v) for k, v in sorted(z.negative_coeffs.items())},
            "positive_square": format_exact(z.positive.square()),
            "slice": format_exact(z.positive.dot(bl.exceptional)),
        })
    else:
        print(f"P = {z.positive}")
        parts = [(c.name, z.negative_coeffs[c.name]) for c in model.catalog if c.name in z.negative_coeffs]
        neg = " + ".join(k if v == 1 else f"{format_exact(v)}*{k}" for k, v in parts) or "0"
        print(f"N = {neg}")
        print(f"P^2 = {format_exact(z.positive.square())}")
        print(f"P.E = {format_exact(z.positive.dot(bl.exceptional))}")
    return 0


def cmd_np(args) -> int:
    model = resolve_model(args.model)
    return _finish(np_check(model, args.p), model, args.json)


def cmd_koszul(args) -> int:
    model = resolve_model(args.model)
    return _finish(koszul_check(model), model, args.json)


def cmd_kva(args) -> int:
    model = resolve_model(args.model)
    return _finish(k_very_ample_check(model, args.k), model, args.json)


def cmd_gp(args) -> int:
    model = resolve_model(args.model)
    v = gross_popescu_check(model, args.d)
    line = None
    if v.outcome is Outcome.Holds:
        line = "Holds: ideal generated by quadrics and cubics"
    return _finish(v, model, args.json, line)


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(n, args.seed, args.cases) for n in names]
    if args.json:
        _emit([r.to_dict() for r in reports])
    else:
        for r in reports:
            print(r.summary())
            for f in r.failures[:10]:
                print(f"  {f['input']}: expected {f['expected']}, got {f['got']}")
    return 0 if all(r.ok for r in reports) else 1


def cmd_plot(args) -> int:
    from .plotting import plot_polygon

    model = resolve_model(args.model)
    B = model.L * args.scale
    poly = NOKPolygon.from_chambers(ray_chambers(B, model.catalog))
    triangles = []
    if args.triangles:
        ses = seshadri(model.with_polarization(B))
        z = Fraction(0)
        if ses.curve_data is not None:
            p, q = ses.curve_data
            if q >= 2:
                triangles.append([(z, z), (p / q, p / q), (p / (q - 1), z)])
            else:
                mu = poly.mu_prime
                triangles.append([(z, z), (p, p), (mu, p), (mu, z)])
    plot_polygon(poly, args.out, show_lambda=args.show_lambda, triangles=triangles,
                 title=model.name or "")
    print(args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nokpoly", description="Newton-Okounkov polygons and positivity criteria.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_cmd(name, help_text, func):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("model", help="JSON model file or shorthand such as exe:4,3,2, rho1:1,23, prod:40")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = model_cmd("analyze", "full report for a model", cmd_analyze)
    p.add_argument("--out-dir", help="also write report.json, verdicts.tsv and polygon.svg here")
    p = model_cmd("polygon", "generic infinitesimal polygon of scale*L", cmd_polygon)
    p.add_argument("--scale", type=_pos_fraction, default=Fraction(1), help="e.g. 1/3 for L/(p+2) with p=1")
    p = model_cmd("zariski", "Zariski decomposition of pi^*(scale*L) - tE", cmd_zariski)
    p.add_argument("--t", type=_fraction, required=True)
    p.add_argument("--scale", type=_pos_fraction, default=Fraction(1))
    p = model_cmd("np", "property (N_p)", cmd_np)
    p.add_argument("--p", type=int, required=True)
    model_cmd("koszul", "Koszulness of the section ring", cmd_koszul)
    p = model_cmd("kva", "k-very ampleness", cmd_kva)
    p.add_argument("--k", type=int, required=True)
    p = model_cmd("gp", "ideal generated by quadrics and cubics, type (1,d)", cmd_gp)
    p.add_argument("--d", type=int, required=True)
    p = model_cmd("plot", "SVG figure of the polygon", cmd_plot)
    p.add_argument("--out", required=True, help="output .svg path")
    p.add_argument("--scale", type=_pos_fraction, default=Fraction(1))
    p.add_argument("--lambda", dest="show_lambda", action="store_true", help="shade the region Lambda")
    p.add_argument("--triangles", action="store_true", help="draw the Seshadri bounding region")

    p = sub.add_parser("verify", help="randomized property suites")
    p.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NOKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

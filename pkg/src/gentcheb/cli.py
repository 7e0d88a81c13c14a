"""Command line front door: ``gentcheb <command> ...``.

Exit codes: 0 when everything passes, 1 when a check fails (the report
carries the witness), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import gvector as gv
from .polynomials import BiPoly, UniPoly, poly_from_json, real_roots_with_multiplicity, sturm_distinct_roots
from .simplicial_core import SimplicialComplex, betti_numbers, f_polynomial, h_from_f, F_polynomial
from .suites import SUITES, SuiteConfig, run_suite
from .tch import GuardError, TchFamily
from .templates import Template, TemplateError, build_template, census, magic_polynomial, validate_template
from .triangulate import PlanError, SubdivisionPlan, random_plan, tchebyshev_triangulation

OK, FAILED, USAGE = 0, 1, 2


class InputError(Exception):
    pass


class Result:
    """Payload for JSON output plus a table for CSV output."""

    def __init__(self, payload, header, rows, code=OK):
        self.payload, self.header, self.rows, self.code = payload, header, rows, code


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"environment variable {name}={raw!r} is not an integer") from None


def _defaults() -> dict:
    return {
        "max_n": _env_int("GENTCHEB_MAX_N", 12),
        "max_d": _env_int("GENTCHEB_MAX_D", 6),
        "guard": _env_int("GENTCHEB_GUARD", 7),
    }


# -- loading ---------------------------------------------------------------------

def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def _load_complex(path: str) -> SimplicialComplex:
    try:
        return SimplicialComplex.from_json(_read_json(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_template(path: str, check: bool = True) -> Template:
    L = Template.from_json(_read_json(path), name=Path(path).stem)
    if check:
        problems = validate_template(L)
        if problems:
            raise InputError(f"invalid template {path}: " + "; ".join(problems))
    return L


def _load_poly(path: str) -> UniPoly:
    try:
        p = poly_from_json(_read_json(path))
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from None
    if isinstance(p, BiPoly):
        raise InputError(f"{path}: root counting needs a univariate polynomial")
    return p


def _fraction(text: str):
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return None
    if t in ("-inf", "-infinity"):
        return None
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{text!r} is not a rational number") from None


def _coeffs(text: str) -> UniPoly:
    try:
        return UniPoly([Fraction(c) for c in text.replace(" ", "").split(",") if c])
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--h expects comma-separated rationals, got {text!r}") from None


def _poly_rows(p: UniPoly):
    return ["power", "coeff"], [[i, str(c)] for i, c in enumerate(p.coeffs)]


def _poly_result(p: UniPoly, var: str = "x", **extra) -> Result:
    header, rows = _poly_rows(p)
    return Result({**p.to_json(var), "text": str(p), **extra}, header, rows)


# -- commands --------------------------------------------------------------------

def cmd_validate_template(args) -> Result:
    L = _load_template(args.file, check=False)
    problems = validate_template(L)
    return Result({"valid": not problems, "problems": problems}, ["problem"],
                  [[p] for p in problems], OK if not problems else FAILED)


def cmd_template(args) -> Result:
    try:
        L = build_template(args.kind, *[int(a) for a in args.args])
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    rows = [[" ".join(map(str, f))] for f in L.to_json()["facets"]]
    return Result(L.to_json(), ["facet"], rows)


def cmd_census(args) -> Result:
    counts = census(_load_template(args.file))
    rows = [[b, i, c] for (b, i), c in counts.items()]
    return Result({"census": rows}, ["boundary", "interior", "count"], rows)


def cmd_magic(args) -> Result:
    r = magic_polynomial(_load_template(args.file))
    payload = r.to_json(("u", "v"))
    payload["text"] = r.format("u", "v")
    return Result(payload, ["u_power", "v_power", "coeff"], payload["terms"])


def cmd_triangulate(args) -> Result:
    K = _load_complex(args.complex)
    L = _load_template(args.template)
    if args.plan:
        try:
            plan = SubdivisionPlan.from_json(_read_json(args.plan))
        except (TypeError, ValueError) as exc:
            raise InputError(f"{args.plan}: {exc}") from None
    elif args.seed is not None:
        plan = random_plan(K, L, args.seed)
    else:
        plan = None
    C = tchebyshev_triangulation(K, L, plan, check_template=False)
    payload = C.complex.to_json()
    rows = [[" ".join(map(str, f))] for f in payload["facets"]]
    return Result(payload, ["facet"], rows)


def cmd_fvec(args) -> Result:
    f = _load_complex(args.file).f_vector()
    return Result({"f": f}, ["dim", "count"], [[i - 1, c] for i, c in enumerate(f)])


def cmd_hvec(args) -> Result:
    h = h_from_f(_load_complex(args.file).f_vector())
    return Result({"h": h}, ["index", "h"], [[i, c] for i, c in enumerate(h)])


def cmd_fpoly(args) -> Result:
    return _poly_result(f_polynomial(_load_complex(args.file)), "t")


def cmd_Fpoly(args) -> Result:
    return _poly_result(F_polynomial(_load_complex(args.file)), "x")


def cmd_betti(args) -> Result:
    b = betti_numbers(_load_complex(args.file))
    return Result({"reduced_betti": b}, ["dim", "betti"], [[i - 1, c] for i, c in enumerate(b)])


def _check_n(n: int, bounds: dict):
    if n < 0:
        raise InputError("-n must be nonnegative")
    if n > bounds["max_n"]:
        raise GuardError(f"n={n} exceeds max_n={bounds['max_n']} (raise with --max-n or GENTCHEB_MAX_N)")


def _check_d(d: int, bounds: dict):
    if d > bounds["max_d"]:
        raise GuardError(f"cross-polytope dimension {d} exceeds max_d={bounds['max_d']}")


def cmd_tpoly(args) -> Result:
    bounds = _bounds(args)
    _check_n(args.n, bounds)
    fam = TchFamily(_load_template(args.template), bounds["guard"], check=False)
    if args.route == "direct":
        p = fam.T_L_direct(args.n)
    elif args.route == "rec":
        p = fam.T_L_rec(args.n)
    else:
        _check_d(args.n, bounds)
        p = fam.T_L_from_cross_polytope(args.n)
    return _poly_result(p, n=args.n, route=args.route)


def cmd_upoly(args) -> Result:
    bounds = _bounds(args)
    _check_n(args.n, bounds)
    fam = TchFamily(_load_template(args.template), bounds["guard"], check=False)
    if not 2 <= args.j <= fam.k + 1:
        raise InputError(f"-j must lie in 2..{fam.k + 1} for a template of dimension {fam.k}")
    if args.route == "direct":
        p = fam.U_L_direct(args.j, args.n)
    elif args.route == "rec":
        p = fam.U_L_rec(args.j, args.n)
    else:
        _check_d(args.n + args.j - 1, bounds)
        p = fam.U_L_from_cross_polytope(args.j, args.n)
    return _poly_result(p, n=args.n, j=args.j, route=args.route)


def cmd_roots(args) -> Result:
    p = _load_poly(args.file)
    if p.is_zero():
        raise InputError("the zero polynomial has no finite root count")
    lo, hi = (None, None) if args.interval is None else (_fraction(args.interval[0]), _fraction(args.interval[1]))
    if lo is not None and hi is not None and lo >= hi:
        raise InputError("interval needs a < b")
    count = real_roots_with_multiplicity(p, lo, hi) if args.multiplicity else sturm_distinct_roots(p, lo, hi)
    payload = {
        "polynomial": str(p),
        "interval": [None if lo is None else str(lo), None if hi is None else str(hi)],
        "multiplicity": args.multiplicity,
        "count": count,
        "degree": p.degree,
    }
    return Result(payload, ["count", "degree"], [[count, p.degree]])


def cmd_gvec(args) -> Result:
    if (args.file is None) == (args.h is None):
        raise InputError("give exactly one of a complex file or --h")
    if args.file is not None:
        h, d = gv.h_vector_of(_load_complex(args.file))
        if args.d is not None and args.d != d:
            raise InputError(f"-d {args.d} does not match the complex (d = {d})")
    else:
        h = _coeffs(args.h)
        d = args.d if args.d is not None else h.degree
    if args.i < 1:
        raise InputError("-i must be at least 1")
    try:
        g = gv.g_vector(h, d, args.i)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    entries = [str(c) for c in g.entries]
    payload = {"d": d, "i": args.i, "g": entries, "nonnegative": g.nonnegative(),
               "first_negative": g.first_negative()}
    return Result(payload, ["index", "g"], [[j, c] for j, c in enumerate(entries)])


def cmd_verify(args) -> Result:
    bounds = _bounds(args)
    cfg = SuiteConfig(args.suite, args.seed, bounds["max_n"], bounds["max_d"], bounds["guard"])
    report = run_suite(cfg)
    rows = [[it["check"], it["instance"], it["pass"], it["claim"],
             "" if it["witness"] is None else json.dumps(it["witness"], sort_keys=True, default=str)]
            for it in report["items"]]
    return Result(report, ["check", "instance", "pass", "claim", "witness"], rows,
                  OK if report["pass"] else FAILED)


def _bounds(args) -> dict:
    b = _defaults()
    for key in ("max_n", "max_d", "guard"):
        value = getattr(args, key, None)
        if value is not None:
            b[key] = value
    return b


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    guards = argparse.ArgumentParser(add_help=False)
    guards.add_argument("--max-n", type=int, dest="max_n")
    guards.add_argument("--max-d", type=int, dest="max_d")
    guards.add_argument("--guard", type=int)

    parser = argparse.ArgumentParser(prog="gentcheb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, parents=(common,)):
        p = sub.add_parser(name, help=help_text, parents=list(parents))
        p.set_defaults(func=func)
        return p

    add("validate-template", cmd_validate_template, "check a template JSON").add_argument("file")
    p = add("template", cmd_template, "write a built-in template as JSON")
    p.add_argument("kind", choices=("path", "star", "ring"))
    p.add_argument("args", nargs="*", help="builder arguments, e.g. the number of points")
    add("census", cmd_census, "interior faces by (boundary, interior) vertex counts").add_argument("file")
    add("magic", cmd_magic, "magic polynomial r_L(u, v)").add_argument("file")
    p = add("triangulate", cmd_triangulate, "subdivide every k-face of K by L")
    p.add_argument("complex")
    p.add_argument("template")
    how = p.add_mutually_exclusive_group()
    how.add_argument("--seed", type=int)
    how.add_argument("--plan")
    add("fvec", cmd_fvec, "f-vector, starting with the empty face").add_argument("file")
    add("hvec", cmd_hvec, "h-vector").add_argument("file")
    add("fpoly", cmd_fpoly, "f-polynomial sum f_(i-1) t^i").add_argument("file")
    add("Fpoly", cmd_Fpoly, "f-polynomial at (x-1)/2").add_argument("file")
    add("betti", cmd_betti, "reduced rational Betti numbers").add_argument("file")
    p = add("tpoly", cmd_tpoly, "first-kind polynomial T_n", (common, guards))
    p.add_argument("template")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--route", choices=("direct", "rec", "cross"), default="rec")
    p = add("upoly", cmd_upoly, "j-th kind polynomial U_n", (common, guards))
    p.add_argument("template")
    p.add_argument("-j", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--route", choices=("direct", "rec", "cross"), default="rec")
    p = add("roots", cmd_roots, "count real roots with Sturm sequences")
    p.add_argument("file")
    p.add_argument("--interval", nargs=2, metavar=("A", "B"), help="open interval; use inf/-inf for unbounded")
    p.add_argument("--multiplicity", action="store_true", help="count roots with multiplicity")
    p = add("gvec", cmd_gvec, "g^(i)-vector of a complex or a symmetric h")
    p.add_argument("file", nargs="?")
    p.add_argument("--h", help="comma-separated h coefficients h_0,...,h_d")
    p.add_argument("-d", type=int)
    p.add_argument("-i", type=int, required=True)
    p = add("verify", cmd_verify, "run a named verification suite", (common, guards))
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    return parser


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.payload, indent=2, sort_keys=True, default=str) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.header)
    writer.writerows(result.rows)
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        result = args.func(args)
    except (InputError, TemplateError, PlanError, GuardError) as exc:
        print(f"gentcheb: error: {exc}", file=sys.stderr)
        return USAGE
    text = render(result, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return result.code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``zk <subcommand> [flags] [--format json|csv]``.

Exit codes: 0 success, 2 usage error, 3 numerical failure.  Data goes to
stdout, diagnostics to stderr.
"""

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import acoustics, besselquad, cosinerep, otf, shiftscale, zernike
from .exceptions import InvalidIndex, InvalidSpec, NonConvergence, RankDeficient, SingularTransform

__all__ = ["run", "main", "to_json", "build_parser"]

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3
_USAGE_ERRORS = (InvalidIndex, InvalidSpec, ValueError)
_NUMERIC_ERRORS = (NonConvergence, SingularTransform, RankDeficient, ArithmeticError)


class UsageError(Exception):
    pass


# --- serialization ----------------------------------------------------------

def _fmt_float(x):
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".eEn"):
        s += ".0"
    return s


def to_json(obj):
    """Deterministic JSON with 17-significant-digit floats.

    Fractions become ``{"num": p, "den": q}``; complex numbers ``{"re", "im"}``.
    """
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, Fraction):
        return to_json({"num": obj.numerator, "den": obj.denominator})
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return to_json({"re": float(obj.real), "im": float(obj.imag)})
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        body = ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items())
        return "{" + body + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_cell(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (float, np.floating)):
        return _fmt_float(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        raise TypeError("complex values must be split into columns")
    return str(v)


def _write_csv(header, rows, out):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    out.write(buf.getvalue())


# --- subcommands ------------------------------------------------------------
# Each handler returns (results, meta, header, rows).

def _cmd_eval(args):
    if args.method == "dct":
        value = zernike.radial_eval_dct(args.n, args.m, args.rho, args.N or args.n + abs(args.m) + 1)
    elif args.method == "exact":
        value = float(zernike.radial_eval_exact(args.n, args.m, args.rho))
    else:
        value = zernike.radial_eval(args.n, args.m, args.rho)
    if args.theta is None:
        return {"value": value}, {"method": args.method}, ["n", "m", "rho", "value"], [
            [args.n, args.m, args.rho, value]
        ]
    z = value * complex(math.cos(args.m * args.theta), math.sin(args.m * args.theta))
    return (
        {"value": z},
        {"method": args.method},
        ["n", "m", "rho", "theta", "re", "im"],
        [[args.n, args.m, args.rho, args.theta, z.real, z.imag]],
    )


def _cmd_cosine_table(args):
    results, rows = [], []
    for m in range(0, args.nmax + 1):
        for n in range(m, args.nmax + 1, 2):
            rep = cosinerep.cosine_coeffs(n, m)
            coeffs = rep.as_dict()
            results.append({"n": n, "m": m, "coeffs": [{"k": k, "a": a} for k, a in rep.coeffs]})
            # harmonics of the wrong parity are left blank
            rows.append([n, m] + [coeffs.get(k, "") for k in range(args.nmax + 1)])
    header = ["n", "m"] + [f"a{k}" for k in range(args.nmax + 1)]
    return results, {"rows": len(rows)}, header, rows


def _transform(args):
    if args.extended:
        return shiftscale.PupilTransform.extended(args.a, args.b)
    return shiftscale.PupilTransform(args.a, args.b)


def _cmd_shift_expand(args):
    pt = _transform(args)
    if args.matrix is not None:
        tm = shiftscale.transform_matrix(args.matrix, pt)
        labels = [f"({k.n},{k.m})" for k in tm.indices]
        rows = [[labels[i]] + list(tm.matrix[i]) for i in range(len(labels))]
        results = {
            "indices": [[k.n, k.m] for k in tm.indices],
            "matrix": [list(r) for r in tm.matrix],
        }
        return results, {"size": len(labels)}, ["index"] + labels, rows
    if args.n is None or args.m is None:
        raise UsageError("shift-expand needs --n and --m, or --matrix N")
    exp = shiftscale.expand_shifted(args.n, args.m, pt)
    items = [(k.n, k.m, float(v)) for k, v in exp.items()]
    results = [{"n": n, "m": m, "K": v} for n, m, v in items]
    return results, {"terms": len(items)}, ["n_prime", "m_prime", "K"], [list(t) for t in items]


def _cmd_gram_cond(args):
    pt = shiftscale.PupilTransform(args.a, args.b)
    value = shiftscale.gram_condition(args.N, pt)
    return {"condition": value}, {"N": args.N}, ["N", "a", "b", "condition"], [
        [args.N, args.a, args.b, value]
    ]


def _cmd_otf_gamma(args):
    g = otf.gamma_coeff_exact(args.n, args.m, args.n1, args.m1, args.n2, args.m2)
    c = math.pi / 4 * (args.n2 + 1) * float(g)
    results = {"gamma": g, "gamma_float": float(g), "C": c}
    return results, {}, ["n", "m", "n1", "m1", "n2", "m2", "gamma", "C"], [
        [args.n, args.m, args.n1, args.m1, args.n2, args.m2, g, c]
    ]


def _cmd_otf_point(args):
    val = otf.corr_point(args.n, args.m, args.n1, args.m1, args.rho, args.theta, method=args.method)
    return {"value": val}, {"method": args.method}, ["rho", "theta", "re", "im"], [
        [args.rho, args.theta, val.real, val.imag]
    ]


def _parse_pupil(args):
    if args.pupil_json:
        with open(args.pupil_json) as fh:
            data = json.load(fh)
        entries = [(e["n"], e["m"], complex(e.get("re", 0.0), e.get("im", 0.0))) for e in data]
    else:
        entries = []
        for chunk in args.pupil.split(";"):
            if not chunk.strip():
                continue
            parts = [p.strip() for p in chunk.split(",")]
            if len(parts) not in (3, 4):
                raise UsageError(f"--pupil entry {chunk!r} must be n,m,re[,im]")
            im = float(parts[3]) if len(parts) == 4 else 0.0
            entries.append((int(parts[0]), int(parts[1]), complex(float(parts[2]), im)))
    return zernike.ZernikeExpansion({(n, m): c for n, m, c in entries})


def _cmd_otf_expand(args):
    if not args.pupil and not args.pupil_json:
        raise UsageError("otf-expand needs --pupil or --pupil-json")
    exp = otf.otf_expand(_parse_pupil(args), args.nmax)
    items = [(k.n, k.m, complex(v)) for k, v in exp.items()]
    results = [{"n": n, "m": m, "coeff": c} for n, m, c in items]
    rows = [[n, m, c.real, c.imag] for n, m, c in items]
    return results, {"terms": len(items), "variable": "rho/2"}, ["n", "m", "re", "im"], rows


def _parse_profile(args):
    if args.profile_json:
        with open(args.profile_json) as fh:
            data = json.load(fh)
        u = data["u"] if isinstance(data, dict) else data
    else:
        u = [float(x) for x in args.profile.split(",") if x.strip()]
    return acoustics.RadialProfile(tuple(u))


def _cmd_transient(args):
    cfg = acoustics.PistonConfig(a=args.a, c=args.c, Delta=args.delta, Vs=args.vs)
    fp = acoustics.FieldPoint(w=args.w, z=args.z)
    profile = _parse_profile(args)
    if args.times:
        times = [float(x) for x in args.times.split(",")]
    else:
        times = list(np.linspace(args.t0, args.t1, args.nt))
    values = [acoustics.transient_response(cfg, fp, profile, t) for t in times]
    results = [{"t": t, "phi": v} for t, v in zip(times, values)]
    return results, {"samples": len(times)}, ["t", "phi"], [[t, v] for t, v in zip(times, values)]


def _parse_factor(text):
    try:
        k, c = text.split(",")
        return int(k), float(c)
    except ValueError:
        raise UsageError(f"--factor {text!r} must be order,scale") from None


def _cmd_quad(args):
    factors = [_parse_factor(f) for f in args.factor]
    tol = args.tol if args.tol is not None else besselquad.default_tol()
    spec = besselquad.BesselProduct(tuple(factors), args.power, tol)
    value, info = besselquad.integrate_product(spec, full_output=True)
    meta = {"error": info.error, "panels": info.panels, "split": info.split, "slow": info.slow, "tol": tol}
    return {"value": value, "error": info.error}, meta, ["value", "error", "panels", "slow"], [
        [value, info.error, info.panels, str(info.slow).lower()]
    ]


# --- parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser():
    parser = _Parser(prog="zk", description="Zernike circle-polynomial calculus.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.set_defaults(func=func)
        return p

    p = add("eval", _cmd_eval, "radial or circle polynomial value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--theta", type=float)
    p.add_argument("--method", choices=("recurrence", "exact", "dct"), default="recurrence")
    p.add_argument("--N", type=int, help="DCT length (default n + |m| + 1)")

    p = add("cosine-table", _cmd_cosine_table, "exact cosine coefficients for n <= nmax")
    p.add_argument("--nmax", type=int, default=8)

    p = add("shift-expand", _cmd_shift_expand, "expansion of Z_n^m(a + b z)")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--extended", action="store_true", help="allow any real (a, b)")
    p.add_argument("--matrix", type=int, metavar="N", help="emit the full matrix up to degree N")

    p = add("gram-cond", _cmd_gram_cond, "condition number of the restricted basis")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)

    p = add("otf-gamma", _cmd_otf_gamma, "Gamma coefficient of a polynomial correlation")
    for flag in ("--n", "--m", "--n1", "--m1", "--n2", "--m2"):
        p.add_argument(flag, type=int, required=True)

    p = add("otf-point", _cmd_otf_point, "correlation of two circle polynomials at a point")
    for flag in ("--n", "--m", "--n1", "--m1"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--method", choices=("series", "quad"), default="series")

    p = add("otf-expand", _cmd_otf_expand, "Zernike expansion of a pupil autocorrelation")
    p.add_argument("--pupil", help="entries n,m,re[,im] separated by ';'")
    p.add_argument("--pupil-json", help="file with a list of {n, m, re, im}")
    p.add_argument("--nmax", type=int, required=True)

    p = add("transient", _cmd_transient, "piston impulse response over time")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--vs", type=float, default=1.0)
    p.add_argument("--w", type=float, default=0.0)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--profile", default="1", help="comma-separated u_0, u_2, ...")
    p.add_argument("--profile-json", help="file with {\"u\": [...]}")
    p.add_argument("--times", help="comma-separated sample times")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--nt", type=int, default=11)

    p = add("quad", _cmd_quad, "raw Bessel-product integral")
    p.add_argument("--factor", action="append", required=True, help="order,scale (2 or 3 times)")
    p.add_argument("--power", type=int, choices=(0, -1, -2), default=0)
    p.add_argument("--tol", type=float)

    return parser


def run(argv, out=None, err=None):
    """Run one CLI invocation; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    saved = sys.stderr
    sys.stderr = err
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    finally:
        sys.stderr = saved
    try:
        results, meta, header, rows = args.func(args)
    except UsageError as exc:
        err.write(f"zk {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except _NUMERIC_ERRORS as exc:
        err.write(f"zk {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC
    except _USAGE_ERRORS as exc:
        err.write(f"zk {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    if args.format == "csv":
        _write_csv(header, rows, out)
    else:
        inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "format", "command")}
        envelope = {"command": args.command, "inputs": inputs, "results": results, "meta": meta}
        out.write(to_json(envelope) + "\n")
    return EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

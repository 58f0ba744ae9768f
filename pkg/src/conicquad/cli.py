"""Command-line interface: ``conicquad <command> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 bad flags or input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources

from . import catalog
from .classify import LocalData, classify_local
from .curves import Conic, DegenerateCircle, conic_polynomial, genus_report, invert_curve, singular_points
from .engine import QuadratureIdentity, euclidean_identity, scaled_identity, spherical_identity
from .maps import REAL_AXIS, branch_points, power_map, standard_map
from .plot import render_svg
from .sphere import is_infinity
from .verify import TestFunction, standard_family, verify_identity

__all__ = ["main", "run", "UsageError", "round_json", "build_map", "run_report"]


class UsageError(ValueError):
    pass


def _r12(x: float) -> float:
    if not math.isfinite(x):
        return x
    y = float(f"{x:.12g}")
    return 0.0 if y == 0 else y


def round_json(obj):
    """Round every float to 12 significant digits."""
    if isinstance(obj, float):
        return _r12(obj)
    if isinstance(obj, dict):
        return {k: round_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_json(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(round_json(obj), indent=2, sort_keys=False)


def _conic(args) -> Conic:
    if args.a is None:
        raise UsageError("--a is required")
    if args.conic == "parabola":
        if args.b is not None:
            raise UsageError("a parabola takes no --b")
        return Conic("parabola", args.a)
    if args.b is None:
        raise UsageError(f"--b is required for a {args.conic}")
    try:
        return Conic(args.conic, args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def build_map(entry: dict):
    """``(f, surface)`` from a config entry ``{conic, params, side?, invert?}``."""
    kind = entry.get("conic")
    params = entry.get("params", {})
    if kind == "power":
        f, s = power_map(int(params["n"])), REAL_AXIS
    else:
        if kind not in ("ellipse", "hyperbola", "parabola"):
            raise UsageError(f"unknown conic {kind!r}")
        try:
            c = Conic(kind, float(params["a"]), None if kind == "parabola" else float(params["b"]))
            f, s = standard_map(c)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad parameters {params}: {exc}") from exc
    if entry.get("side", "interior_of_disk") == "exterior":
        s = s.other_half()
    if entry.get("invert") == "antipodal":
        f = f.post_mobius(*catalog.INVERSION)
    return f, s


def _map_from_args(args):
    c = _conic(args)
    entry = {"conic": c.kind, "params": {"a": c.a, "b": c.b}, "side": args.side}
    return build_map(entry)


# --- commands -------------------------------------------------------------------


def _identity_from_args(args) -> QuadratureIdentity:
    f, s = _map_from_args(args)
    if args.eps is not None:
        if args.eps <= 0:
            raise UsageError("--eps must be positive")
        ident = scaled_identity(f, s, args.eps)
    elif args.measure == "euclidean":
        if s.involution != "unit_circle" or s.half != 1:
            raise UsageError("the plain Euclidean identity is available on the unit disk only; pass --eps")
        ident = euclidean_identity(f, s)
    else:
        ident = spherical_identity(f, s)
    return ident.physical() if args.plane == "physical" else ident


def _fmt(z) -> str:
    if not isinstance(z, complex):
        return str(z)
    return f"{_r12(z.real):.12g}{_r12(z.imag):+.12g}i"


def cmd_nodes(args, out) -> int:
    ident = _identity_from_args(args)
    if args.json:
        out.write(_dump(ident.to_json()) + "\n")
        return 0
    out.write(f"measure {ident.measure}, plane {ident.plane}, degree {ident.degree}\n")
    for n in ident.nodes:
        coeffs = ", ".join(_fmt(complex(c)) for c in n.coefficients)
        out.write(f"zeta={_fmt(n.zeta)}  z={_fmt(n.z)}  order={n.order}  coeffs=[{coeffs}]\n")
    return 0


def cmd_verify(args, out) -> int:
    f, s = _map_from_args(args)
    ident = spherical_identity(f, s)
    report = verify_identity(ident, standard_family(s, f), args.tol)
    out.write((_dump(report.to_json()) if args.json else report.table()) + "\n")
    return 0 if report.passed else 1


def _curve_data(args):
    c = _conic(args)
    curve = conic_polynomial(c)
    if args.invert == "antipodal":
        curve = invert_curve(curve, "antipodal")
    elif args.invert == "focus":
        if c.kind != "parabola":
            raise UsageError("--invert focus is defined for the parabola")
        curve = invert_curve(curve, complex(c.a))
    return c, curve


def cmd_curve(args, out) -> int:
    _, curve = _curve_data(args)
    sing = [] if curve.degree <= 2 else singular_points(curve)
    rep = genus_report(curve.degree, len(sing), 2)
    data = {"curve": curve.to_json(), "genus": rep.to_json(),
            "singular_points": [[[p.real, p.imag] for p in pt] for pt in sing]}
    if args.json:
        out.write(_dump(data) + "\n")
    else:
        out.write(f"P(z,w) = {curve!r}\n")
        out.write(" ".join(f"{k}={v}" for k, v in rep.to_json().items()) + "\n")
    return 0


def cmd_classify(args, out) -> int:
    try:
        d = LocalData(args.k, args.l, args.j, args.r, args.s, args.s is not None)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out.write(str(classify_local(d, args.which)) + "\n")
    return 0


def cmd_catalog(args, out) -> int:
    if args.action == "list":
        names = catalog.list_entries()
        out.write((_dump(names) if args.json else "\n".join(names)) + "\n")
        return 0
    if not args.name:
        raise UsageError("catalog show needs a name")
    try:
        entry = catalog.show(args.name)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    out.write(_dump(entry.to_json()) + "\n")
    return 0


def cmd_plot(args, out) -> int:
    c, curve = _curve_data(args)
    cuts = []
    if args.invert == "focus":
        ident = catalog.cardioid_entry(c.a).planar
        f = ident.map
    else:
        f, s = build_map({"conic": c.kind, "params": {"a": c.a, "b": c.b}, "invert": args.invert})
        ident = spherical_identity(f, s)
    if not args.invert:
        far = 1e3
        cuts = {"ellipse": [(-c.c, c.c)], "hyperbola": [(c.c, far), (-c.c, -far)], "parabola": [(c.a, far)]}[c.kind]
    nodes = [n.z for n in ident.nodes]
    branches = [v for _, v, _ in branch_points(f)]
    finite = [abs(complex(z)) for z in nodes + branches if not is_infinity(z)]
    scale = max([1.0] + [x for x in finite if x < 20])
    if not args.invert:
        scale = max(scale, c.a, c.b or 0.0)
    with open(args.out, "w") as fh:
        fh.write(render_svg(curve, 1.3 * scale, nodes, branches, cuts))
    out.write(f"wrote {args.out}\n")
    return 0


def _family(entry, s, f):
    fam = entry.get("family", "standard")
    if fam == "standard":
        return standard_family(s, f)
    if not isinstance(fam, list):
        raise UsageError("family must be 'standard' or a list of test functions")
    return [TestFunction.from_json(t) for t in fam]


def run_report(config: list, out=None):
    """Verify every entry of a batch config; returns ``(all_passed, rows)``."""
    if not isinstance(config, list):
        raise UsageError("the report config must be a JSON list")
    rows = []
    for i, entry in enumerate(config):
        if not isinstance(entry, dict):
            raise UsageError(f"entry {i} is not an object")
        tol = float(entry.get("tol", 1e-6))
        if "identity" in entry:
            ident = QuadratureIdentity.from_json(entry["identity"])
            f, s = ident.map, ident.surface
        else:
            f, s = build_map(entry)
            ident = spherical_identity(f, s)
        rep = verify_identity(ident, _family(entry, s, f), tol)
        name = entry.get("name", f"entry {i}")
        rows.append({"name": name, "pass": rep.passed, "max_abs_err": rep.max_abs_err, "tol": tol,
                     "failing": [r.label for r in rep.rows if not r.passed]})
    return all(r["pass"] for r in rows), rows


def cmd_report(args, out) -> int:
    path = args.config
    try:
        if path is None:
            text = resources.files("conicquad").joinpath("data/acceptance_config.json").read_text()
        else:
            with open(path) as fh:
                text = fh.read()
        config = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    ok, rows = run_report(config)
    if args.json:
        out.write(_dump({"pass": ok, "rows": rows}) + "\n")
    else:
        out.write(f"{'entry':<32} {'max_abs_err':>12} {'tol':>9} status\n")
        for r in rows:
            flag = "PASS" if r["pass"] else "FAIL  <-- " + ", ".join(r["failing"])
            out.write(f"{r['name']:<32} {r['max_abs_err']:>12.3e} {r['tol']:>9.1e} {flag}\n")
        out.write(f"{sum(r['pass'] for r in rows)}/{len(rows)} entries pass\n")
    return 0 if ok else 1


# --- parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _conic_flags(p, need_conic=True):
    p.add_argument("--conic", choices=["ellipse", "hyperbola", "parabola"], required=need_conic)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conicquad", description="Spherical quadrature identities for conic domains.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("nodes", help="print the quadrature identity")
    _conic_flags(p)
    p.add_argument("--side", choices=["interior_of_disk", "exterior"], default="interior_of_disk")
    p.add_argument("--measure", choices=["spherical", "euclidean"], default="spherical")
    p.add_argument("--eps", type=float)
    p.add_argument("--plane", choices=["parameter", "physical"], default="physical")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="check the identity by numerical integration")
    _conic_flags(p)
    p.add_argument("--side", choices=["interior_of_disk", "exterior"], default="interior_of_disk")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("curve", help="boundary polynomial and genus bookkeeping")
    _conic_flags(p)
    p.add_argument("--invert", choices=["antipodal", "focus"])
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="local residue classification")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--which", choices=["first", "second"], default="first")

    p = sub.add_parser("catalog", help="closed-form identities")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("plot", help="schematic SVG of the real locus")
    _conic_flags(p)
    p.add_argument("--invert", choices=["antipodal", "focus"])
    p.add_argument("--out", required=True)

    p = sub.add_parser("report", help="batch verification from a JSON config")
    p.add_argument("config", nargs="?")
    p.add_argument("--json", action="store_true")
    return parser


_COMMANDS = {
    "nodes": cmd_nodes,
    "verify": cmd_verify,
    "curve": cmd_curve,
    "classify": cmd_classify,
    "catalog": cmd_catalog,
    "plot": cmd_plot,
    "report": cmd_report,
}


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "tol", 1.0) is not None and getattr(args, "tol", 1.0) <= 0:
            raise UsageError("--tol must be positive")
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"conicquad: error: {exc}\n")
        return 2
    except DegenerateCircle as exc:
        err.write(f"conicquad: error: {exc}; the circle identity applies instead\n")
        return 2
    except ValueError as exc:
        err.write(f"conicquad: error: {exc}\n")
        return 2
    except RuntimeError as exc:
        err.write(f"conicquad: computation failed: {exc}\n")
        return 1


def main(argv=None) -> int:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()

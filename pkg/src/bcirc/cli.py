"""Command-line front end.

Measures and characteristic pairs are read as JSON (``-`` is stdin) and written
as JSON; grids are written as CSV. Exit codes: 1 invalid input, 2 numerical
precondition failure, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import gallery, jsonio
from .config import TWO_PI, working_order
from .convolution import (convolve, operator_model_build, operator_model_moments,
                          product_moments_combinatorial, verify_multiplicativity, MAX_ORACLE_ORDER)
from .errors import InvalidInput, NumericalError, VerificationFailure
from .levy import (Divisible, DivisibleUpToRadius, HaarDivisible, InteriorZero, NotDivisible,
                   char_pair, is_infinitely_divisible, measure_from_char_pair, nth_root,
                   semigroup_measure)
from .measure import (AtomicMeasure, FiniteCircleMeasure, atom_mass_estimate, density_approx,
                      moments_of, validate)
from .transform import (BlaschkeF, F_callable, F_from_measure, cauchy_eval, psi_from_moments)

ORACLE_TOL = 1e-9


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInput(str(exc)) from None


def _load_measure(path: str):
    mu = jsonio.measure_from_json(jsonio.loads(_read(path)))
    report = validate(mu)
    if not report:
        raise InvalidInput(f"{path}: invalid measure: {'; '.join(report.violations)}")
    return mu


def _load_pair(path: str):
    return jsonio.pair_from_json(jsonio.loads(_read(path)))


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _emit_json(doc, out: str | None) -> None:
    _emit(jsonio.dumps(doc), out)


def _emit_csv(header, rows, out: str | None) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) for v in row])
    _emit(buf.getvalue(), out)


# -- subcommands ---------------------------------------------------------------

def cmd_convolve(args) -> int:
    mu, nu = _load_measure(args.a), _load_measure(args.b)
    result = convolve(mu, nu, args.order)
    _emit_json(jsonio.measure_to_json(result), args.out)
    if args.oracle is None:
        return 0
    n = min(args.order, 8)
    got = moments_of(result, n)
    report = {}
    if args.oracle in ("combinatorial", "both"):
        want = np.array([product_moments_combinatorial(mu, nu, k) for k in range(1, min(n, MAX_ORACLE_ORDER) + 1)])
        report["combinatorial"] = float(np.max(np.abs(got[: want.size] - want)))
    if args.oracle in ("operator", "both"):
        if not (isinstance(mu, AtomicMeasure) and isinstance(nu, AtomicMeasure)):
            raise InvalidInput("the operator oracle needs atomic measures")
        want = operator_model_moments(operator_model_build(mu, nu), n)
        report["operator"] = float(np.max(np.abs(got - want)))
    sys.stderr.write(json.dumps({"oracle_max_deviation": report}) + "\n")
    if max(report.values()) > ORACLE_TOL:
        raise VerificationFailure(f"oracle deviation {max(report.values())} exceeds {ORACLE_TOL}")
    return 0


def cmd_transform(args) -> int:
    mu = _load_measure(args.measure)
    f = F_from_measure(mu, args.order)
    if args.grid is not None:
        if args.radius is None:
            raise InvalidInput("--grid needs --radius")
        theta = TWO_PI * np.arange(args.grid) / args.grid
        pts = args.radius * np.exp(1j * theta)
        if args.show == "cauchy":
            vals = np.array([cauchy_eval(f, w) for w in pts])
        elif args.show == "F":
            vals = np.asarray(F_callable(mu, args.order)(pts))
        else:
            from .measure import psi_eval
            vals = np.asarray(psi_eval(mu, pts, args.order + 1))
        _emit_csv(["angle", "re", "im"], zip(theta, vals.real, vals.imag), args.csv or args.out)
        return 0
    if args.show == "psi":
        doc = {"psi": jsonio.cplx_list(psi_from_moments(moments_of(mu, args.order)).coeffs)}
    elif args.show == "F":
        doc = {"kind": f.kind, "F": jsonio.cplx_list(f.to_series(args.order).coeffs)}
    else:
        radius = 2.0 if args.radius is None else args.radius
        doc = {"w": jsonio.cplx(radius), "cauchy": jsonio.cplx(cauchy_eval(f, radius))}
    _emit_json(doc, args.out)
    return 0


def _verdict_json(v) -> dict:
    if isinstance(v, HaarDivisible):
        return {"verdict": "haar_divisible"}
    if isinstance(v, Divisible):
        return {"verdict": "divisible", "pair": jsonio.pair_to_json(v.pair)}
    if isinstance(v, DivisibleUpToRadius):
        return {"verdict": "divisible_up_to_radius", "r": v.r, "pair": jsonio.pair_to_json(v.pair)}
    assert isinstance(v, NotDivisible)
    if isinstance(v.witness, InteriorZero):
        w = {"type": "interior_zero", "location": jsonio.cplx(v.witness.location), "radius": v.witness.radius}
    else:
        w = {"type": "zero_at_origin"}
    return {"verdict": "not_divisible", "witness": w}


def cmd_divisible(args) -> int:
    v = is_infinitely_divisible(_load_measure(args.measure), args.rmax, args.order)
    _emit_json(_verdict_json(v), args.out)
    return 0


def cmd_charpair(args) -> int:
    _emit_json(jsonio.pair_to_json(char_pair(_load_measure(args.measure), args.order)), args.out)
    return 0


def cmd_synth(args) -> int:
    _emit_json(jsonio.measure_to_json(measure_from_char_pair(_load_pair(args.pair), args.order)), args.out)
    return 0


def cmd_root(args) -> int:
    _emit_json(jsonio.measure_to_json(nth_root(_load_measure(args.measure), args.n, args.order)), args.out)
    return 0


def cmd_semigroup(args) -> int:
    _emit_json(jsonio.measure_to_json(semigroup_measure(_load_pair(args.pair), args.t, args.order)), args.out)
    return 0


def cmd_density(args) -> int:
    theta, dens = density_approx(_load_measure(args.measure), args.radius, args.grid, args.order)
    _emit_csv(["angle", "density"], zip(theta, dens), args.csv or args.out)
    return 0


def cmd_atom(args) -> int:
    mass = atom_mass_estimate(_load_measure(args.measure), args.angle, args.radii, args.order)
    _emit_json({"angle": args.angle, "mass": mass}, args.out)
    return 0


def cmd_gallery(args) -> int:
    kind = args.kind
    if kind == "dirac":
        mu = gallery.dirac(args.b)
    elif kind == "twopoint":
        mu = gallery.two_point(args.p, args.b1, args.b2)
    elif kind == "haar":
        mu = gallery.haar()
    elif kind == "cyclic":
        mu = gallery.cyclic_haar(args.n)
    elif kind == "poisson":
        mu = gallery.poisson(args.r, args.b)
    elif kind == "singular":
        mu = gallery.singular_measure(args.beta)
        if args.report:
            res = gallery.singular_example(args.beta, args.count)
            doc = {"beta": res.beta, "zeros": res.zeros.tolist(), "atom_angles": res.atom_angles.tolist(),
                   "atom_masses": res.atom_masses.tolist()}
            with open(args.report, "w") as fh:
                fh.write(jsonio.dumps(doc))
    elif kind == "bso":
        mu = _bso_from_spec(jsonio.loads(_read(args.spec)), args.order).mu
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidInput(kind)
    _emit_json(jsonio.measure_to_json(mu), args.out)
    return 0


def _bso_from_spec(doc: dict, order: int):
    """``{"blaschke": F-json|null, "tau": rho-json|null, "q": [..]|null, "c": [re, im]}``."""
    if not isinstance(doc, dict):
        raise InvalidInput("bso spec must be a JSON object")
    B = None
    if doc.get("blaschke") is not None:
        B = jsonio.F_from_json(doc["blaschke"])
        if not isinstance(B, BlaschkeF):
            raise InvalidInput("bso 'blaschke' must have kind 'blaschke'")
    tau = jsonio.rho_from_json(doc["tau"]) if doc.get("tau") is not None else FiniteCircleMeasure.zero()
    c = complex(*doc.get("c", [1.0, 0.0]))
    return gallery.bso_compose(B, tau, doc.get("q"), c, order)


def cmd_verify(args) -> int:
    rep = verify_multiplicativity(args.seed, args.pairs, args.moments)
    doc = {"seed": rep.seed, "pairs": rep.pairs, "moments": rep.max_moment,
           "max_dev_combinatorial": rep.max_dev_combinatorial, "max_dev_operator": rep.max_dev_operator,
           "tolerance": ORACLE_TOL, "passed": rep.max_deviation <= ORACLE_TOL}
    _emit_json(doc, args.out)
    return 0 if doc["passed"] else 3


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    order = working_order()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=order, help=f"truncation order (default {order}, env BCIRC_ORDER)")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    p = argparse.ArgumentParser(prog="bcirc", description="Boolean convolution of measures on the circle.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("convolve", parents=[common], help="boolean convolution of two measures")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--oracle", choices=["combinatorial", "operator", "both"])
    s.set_defaults(func=cmd_convolve)

    s = sub.add_parser("transform", parents=[common], help="psi / F coefficients or grid samples")
    s.add_argument("measure", nargs="?", default="-")
    s.add_argument("--show", choices=["psi", "F", "cauchy"], default="F")
    s.add_argument("--radius", type=float)
    s.add_argument("--grid", type=int)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("divisible", parents=[common], help="infinite divisibility verdict")
    s.add_argument("measure")
    s.add_argument("--rmax", type=float, default=0.999)
    s.set_defaults(func=cmd_divisible)

    s = sub.add_parser("charpair", parents=[common], help="characteristic pair (b, rho)")
    s.add_argument("measure")
    s.set_defaults(func=cmd_charpair)

    s = sub.add_parser("synth", parents=[common], help="measure from a characteristic pair")
    s.add_argument("pair")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("root", parents=[common], help="n-th convolution root")
    s.add_argument("measure")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_root)

    s = sub.add_parser("semigroup", parents=[common], help="convolution semigroup member at time t")
    s.add_argument("pair")
    s.add_argument("--t", type=float, required=True)
    s.set_defaults(func=cmd_semigroup)

    s = sub.add_parser("density", parents=[common], help="Poisson-smoothed density on a grid")
    s.add_argument("measure")
    s.add_argument("--radius", type=float, default=0.99)
    s.add_argument("--grid", type=int, default=1024)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("atom", parents=[common], help="estimate the atom mass at an angle")
    s.add_argument("measure")
    s.add_argument("--angle", type=float, required=True)
    s.add_argument("--radii", type=float, nargs="+", default=[0.9, 0.99, 0.999])
    s.set_defaults(func=cmd_atom)

    s = sub.add_parser("gallery", parents=[common], help="worked example measures")
    s.add_argument("kind", choices=["dirac", "twopoint", "haar", "cyclic", "poisson", "singular", "bso"])
    s.add_argument("--b", type=float, default=0.0)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--b1", type=float, default=0.0)
    s.add_argument("--b2", type=float, default=np.pi)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--r", type=float, default=0.5)
    s.add_argument("--beta", type=float, default=np.pi)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--report", help="singular: write zeros and atom masses here")
    s.add_argument("--spec", help="bso: JSON file with blaschke, tau, q, c")
    s.set_defaults(func=cmd_gallery)

    s = sub.add_parser("verify", help="randomized check of F-multiplicativity against both oracles")
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--pairs", type=int, default=200)
    s.add_argument("--moments", type=int, default=8)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ValueError as exc:
        sys.stderr.write(f"bcirc: {exc}\n")
        return 1
    try:
        return args.func(args)
    except InvalidInput as exc:
        sys.stderr.write(f"bcirc: invalid input: {exc}\n")
        return 1
    except VerificationFailure as exc:
        sys.stderr.write(f"bcirc: verification failed: {exc}\n")
        return 3
    except NumericalError as exc:
        sys.stderr.write(f"bcirc: numerical precondition failed: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 success, 1 a ``verify`` identity failed, 2 domain error
(e.g. a derivation that is not inner), 3 inconsistent derivation spec,
64 usage error, 70 internal assertion failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    AlgebraError,
    NotADerivation,
    NotInner,
    ObstructedShape,
    ParseError,
    SchemaError,
    UnknownGenerator,
)

EX_OK = 0
EX_FAIL = 1
EX_DOMAIN = 2
EX_SPEC = 3
EX_USAGE = 64
EX_SOFTWARE = 70

ALGEBRAS = ("so5", "so5[E4^-1]", "so5[E4^-1,E3^-1]", "b", "r")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


class _Once(argparse.Action):
    """Store action that rejects a flag given twice."""

    def __call__(self, parser, namespace, values, option_string=None):
        seen = getattr(namespace, "_seen", None)
        if seen is None:
            seen = set()
            namespace._seen = seen
        if self.dest in seen:
            parser.error(f"{option_string} given more than once")
        seen.add(self.dest)
        setattr(namespace, self.dest, values)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return p


def _params_args(p, defaults=True):
    d = "1" if defaults else None
    tail = " (default 1)" if defaults else " (give both, or neither for the default set)"
    p.add_argument("--alpha", action=_Once, default=d, help="ratq expression in q" + tail)
    p.add_argument("--beta", action=_Once, default=d, help="ratq expression in q" + tail)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="qso5", description="Exact computations in U_q^+(so5), its quotients "
                 "B_{alpha,beta} and the associated quantum GWA.", parents=[common])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser, required=True)

    nf = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    nf.add_argument("--algebra", action=_Once, default="so5", choices=ALGEBRAS)
    _params_args(nf)
    nf.add_argument("expr")

    cm = sub.add_parser("commute", parents=[common], help="commutator [a, b] = ab - ba")
    cm.add_argument("--algebra", action=_Once, default="so5", choices=ALGEBRAS)
    _params_args(cm)
    cm.add_argument("a")
    cm.add_argument("b")

    ce = sub.add_parser("central", parents=[common], help="central elements chi1, chi2")
    ce.add_argument("--algebra", action=_Once, default="so5", choices=ALGEBRAS[:3])

    sub.add_parser("dda", parents=[common], help="deleting derivation elements and T_i data")

    gw = sub.add_parser("gwa", parents=[common], help="quantum GWA tools")
    gsub = gw.add_subparsers(dest="gwa_command", parser_class=_Parser, required=True)
    gnf = gsub.add_parser("nf", parents=[common], help="normal form in h, x, y")
    gnf.add_argument("--alpha", action=_Once, default="1")
    gnf.add_argument("expr")
    gdec = gsub.add_parser("decompose", parents=[common], help="write D as ad_w + delta_lam")
    gdec.add_argument("--alpha", action=_Once, default="1")
    gdec.add_argument("--spec", action=_Once, required=True, help='JSON {"Dh","Dx","Dy"}')

    dv = sub.add_parser("derivation", parents=[common], help="derivations of B_{alpha,beta}")
    dsub = dv.add_subparsers(dest="deriv_command", parser_class=_Parser, required=True)
    for name, text in (("check", "check the Leibniz rule on all relations"),
                       ("innerize", "find x with D = ad_x")):
        d = dsub.add_parser(name, parents=[common], help=text)
        _params_args(d)
        d.add_argument("--spec", action=_Once, required=True, help='JSON {"De1","De2","De4"}')

    hh = sub.add_parser("hh1", parents=[common], help="truncated dim HH^1 estimate")
    _params_args(hh)
    hh.add_argument("--degree", action=_Once, type=int, default=3)

    vf = sub.add_parser("verify", parents=[common], help="run the identity suite")
    _params_args(vf, defaults=False)
    vf.add_argument("--degree", action=_Once, type=int, default=3)
    vf.add_argument("--quick", action="store_true", help="smaller random samples")
    return ap


# --- helpers -------------------------------------------------------------------

def _ratq(text):
    from .exprio import parse_ratq
    return parse_ratq(text)


def _params(args):
    from .bquot import Params
    return Params(_ratq(args.alpha), _ratq(args.beta))


def _algebra(args):
    from .bquot import make_b, make_r
    from .so5 import localized_e4, localized_e4_e3, make_so5
    name = args.algebra
    if name == "so5":
        return make_so5()
    if name == "so5[E4^-1]":
        return localized_e4()
    if name == "so5[E4^-1,E3^-1]":
        return localized_e4_e3()
    if name == "b":
        return make_b(_params(args))
    return make_r(_params(args))


def _emit_elem(args, e, out):
    from .exprio import element_to_obj, print_canonical
    if args.json:
        out.write(json.dumps(element_to_obj(e)) + "\n")
    else:
        out.write(print_canonical(e) + "\n")


def _load_spec(path, keys):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"spec file is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or set(obj) != set(keys):
        raise SchemaError(f"spec must be an object with exactly the keys {', '.join(keys)}")
    return obj


def _spec_value(v, alg):
    from .exprio import element_from_obj, parse_element
    if isinstance(v, str):
        return parse_element(v, alg)
    return element_from_obj(v, alg)


# --- commands ------------------------------------------------------------------

def cmd_nf(args, out):
    from .exprio import parse_element
    _emit_elem(args, parse_element(args.expr, _algebra(args)), out)
    return EX_OK


def cmd_commute(args, out):
    from .exprio import parse_element
    alg = _algebra(args)
    a, b = parse_element(args.a, alg), parse_element(args.b, alg)
    _emit_elem(args, alg.commutator(a, b), out)
    return EX_OK


def cmd_central(args, out):
    from .exprio import element_to_obj, print_canonical
    from .so5 import chi
    alg = _algebra(args)
    rows = []
    for k in (1, 2):
        z = chi(k, alg)
        central = all(alg.commutator(z, g).is_zero() for g in alg.gens())
        rows.append((f"chi{k}", z, central))
    if args.json:
        out.write(json.dumps([{"name": n, "element": element_to_obj(z), "central": c}
                              for n, z, c in rows]) + "\n")
    else:
        for n, z, c in rows:
            out.write(f"{n} = {print_canonical(z)}\n  central: {'yes' if c else 'NO'}\n")
    return EX_OK if all(c for _, _, c in rows) else EX_FAIL


def cmd_dda(args, out):
    from .exprio import element_to_obj, format_ratq, print_canonical
    from .so5 import dda_elements, dda_identities, t_commutation
    dd = dda_elements()
    named = [("E14", dd.E14), ("E24", dd.E24), ("E13", dd.E13)]
    named += [(f"T{i + 1}", t) for i, t in enumerate(dd.T)]
    lam = t_commutation()
    ids = [(n, (lhs - rhs).is_zero()) for n, lhs, rhs in dda_identities()]
    note = "E_{3,4} is read as E3 (the display E_{3,4}=E_4 is treated as a typo)"
    if args.json:
        out.write(json.dumps({
            "elements": {n: element_to_obj(z) for n, z in named},
            "lambda": [[format_ratq(c) for c in row] for row in lam],
            "identities": [{"identity": n, "status": "pass" if ok else "fail"} for n, ok in ids],
            "note": note,
        }) + "\n")
    else:
        for n, z in named:
            out.write(f"{n} = {print_canonical(z)}\n")
        out.write("T_j T_i = lambda[i][j] T_i T_j:\n")
        for i, row in enumerate(lam):
            out.write(f"  T{i + 1}: " + ", ".join(format_ratq(c) for c in row) + "\n")
        for n, ok in ids:
            out.write(f"{'pass' if ok else 'FAIL'}  {n}\n")
        out.write(f"note: {note}\n")
    return EX_OK if all(ok for _, ok in ids) else EX_FAIL


def cmd_gwa(args, out):
    from .exprio import element_to_obj, format_ratq, parse_element, print_canonical
    from .gwa import gwa_decompose, so5_gwa
    A = so5_gwa(_ratq(args.alpha))
    if args.gwa_command == "nf":
        _emit_elem(args, parse_element(args.expr, A), out)
        return EX_OK
    spec = _load_spec(args.spec, ("Dh", "Dx", "Dy"))
    dec = gwa_decompose(A, *(_spec_value(spec[k], A) for k in ("Dh", "Dx", "Dy")))
    if args.json:
        out.write(json.dumps({"w": element_to_obj(dec.w), "lambda": format_ratq(dec.lam)}) + "\n")
    else:
        out.write(f"w = {print_canonical(dec.w)}\nlambda = {format_ratq(dec.lam)}\n")
    return EX_OK


def cmd_derivation(args, out):
    from .bquot import make_b
    from .deriv import DerivSpec, innerize_full, relation_residuals
    from .exprio import element_to_obj, print_canonical
    B = make_b(_params(args))
    spec = _load_spec(args.spec, ("De1", "De2", "De4"))
    D = DerivSpec(*(_spec_value(spec[k], B) for k in ("De1", "De2", "De4")))
    if args.deriv_command == "check":
        bad = [(n, r) for n, r in relation_residuals(B, D) if r]
        if args.json:
            out.write(json.dumps({"derivation": not bad, "residuals": [
                {"relation": n, "residual": element_to_obj(r)} for n, r in bad]}) + "\n")
        else:
            out.write("derivation: yes\n" if not bad else "derivation: NO\n")
            for n, r in bad:
                out.write(f"  {n}: {print_canonical(r)}\n")
        return EX_OK if not bad else EX_SPEC
    try:
        inn = innerize_full(B, D)
    except ValueError as exc:
        raise _DomainError(str(exc)) from exc
    _emit_elem(args, inn.x, out)
    return EX_OK


class _DomainError(AlgebraError):
    pass


def cmd_hh1(args, out):
    from .bquot import make_b
    from .deriv import hh1_details
    if args.degree < 2:
        raise UsageError("--degree must be at least 2")
    est = hh1_details(make_b(_params(args)), args.degree)
    if args.json:
        out.write(json.dumps({"degree": est.degree, "dim_derivations": est.dim_derivations,
                              "dim_inner": est.dim_inner, "hh1": est.dim_outer,
                              "note": est.note}) + "\n")
    else:
        out.write(f"hh1 (N={est.degree}) = {est.dim_outer}\n"
                  f"  derivations: {est.dim_derivations}, inner among them: {est.dim_inner}\n"
                  f"  {est.note}\n")
    return EX_OK


def cmd_verify(args, out):
    from .verify import run_verify
    if (args.alpha is None) != (args.beta is None):
        raise UsageError("--alpha and --beta must be given together")
    if args.degree < 2:
        raise UsageError("--degree must be at least 2")
    params = None
    if args.alpha is not None:
        params = [(_ratq(args.alpha), _ratq(args.beta))]
    rep = run_verify(params, degree=args.degree, full=not args.quick)
    if args.json:
        out.write(json.dumps(rep.to_obj(), indent=1) + "\n")
    else:
        for c in rep.checks:
            out.write(f"{'pass' if c.passed else 'FAIL'}  {c.identity}\n")
            if c.detail and (not c.passed or "typo" in c.detail):
                out.write(f"      {c.detail}\n")
        out.write(f"{sum(c.passed for c in rep.checks)}/{len(rep.checks)} identities pass\n")
    return EX_OK if rep.ok else EX_FAIL


COMMANDS = {"nf": cmd_nf, "commute": cmd_commute, "central": cmd_central, "dda": cmd_dda,
            "gwa": cmd_gwa, "derivation": cmd_derivation, "hh1": cmd_hh1, "verify": cmd_verify}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    except (UsageError, ParseError, UnknownGenerator, SchemaError) as exc:
        err.write(f"usage error: {exc}\n")
        return EX_USAGE
    except NotInner as exc:
        err.write(f"not inner: {exc}\n")
        return EX_DOMAIN
    except (NotADerivation, ObstructedShape) as exc:
        err.write(f"inconsistent spec: {exc}\n")
        return EX_SPEC
    except AlgebraError as exc:
        err.write(f"error: {exc}\n")
        return EX_DOMAIN
    except AssertionError as exc:
        err.write(f"internal error: {exc}\n")
        return EX_SOFTWARE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

    wilc invariants FILE [--w K]... [--trace WORD]... [--det K]... [--format text|json]
    wilc reparam FILE --lambda EXPR [--check-w K]...
    wilc star FILE --u EXPR
    wilc modular {mlde --k INT --alpha RAT | nsz | hm --m INT [--k INT]}
    wilc siegel {chain|anomaly|odet|bracket} [--seed INT]
    wilc verify {ore|invariants|reparam|modular|siegel|all} [--seed INT]

Exit codes: 0 ok, 1 usage error, 2 parse error, 3 math error or failed
verification.  JSON output renders every value exactly as a string; no
floating point appears anywhere.
"""

import argparse
import json
import sys
from fractions import Fraction

from .errors import MathError, ParseError, SpecSyntax
from .invariants import det_invariant, miura_extract, star_action, trace_invariants, w_currents
from .modular import (
    discriminant_current,
    mldo_second_order,
    nsz_currents,
    nsz_example_mldo,
    nsz_hm,
)
from .reparam import ReparamJet, pullback_operator, reparam_Ik, verify_w_tensoriality
from .rings.matrix import Mat
from .specfile import _Scalar, _eval, parse_expression, parse_spec
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_MATH = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    p = _Parser(prog="wilc", description="exact gauge/reparametrization covariants of Ore operators")
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="I_k, W_k and trace invariants of a spec file")
    inv.add_argument("file")
    inv.add_argument("--w", action="append", type=int, default=[], metavar="K")
    inv.add_argument("--trace", action="append", default=[], metavar="WORD")
    inv.add_argument("--det", action="append", type=int, default=[], metavar="K")
    inv.add_argument("--format", choices=("text", "json"), default="text")

    rep = sub.add_parser("reparam", help="pullback, I_k laws and Schwarzian data")
    rep.add_argument("file")
    rep.add_argument("--lambda", dest="lam", required=True, metavar="EXPR")
    rep.add_argument("--check-w", action="append", type=int, default=[], metavar="K")
    rep.add_argument("--format", choices=("text", "json"), default="text")

    st = sub.add_parser("star", help="the u*-action on the coefficient tuple")
    st.add_argument("file")
    st.add_argument("--u", required=True, metavar="EXPR")
    st.add_argument("--format", choices=("text", "json"), default="text")

    mod = sub.add_parser("modular", help="worked modular operators and h_m extraction")
    modsub = mod.add_subparsers(dest="modcmd", required=True)
    mlde = modsub.add_parser("mlde")
    mlde.add_argument("--k", type=int, required=True)
    mlde.add_argument("--alpha", required=True)
    mlde.add_argument("--format", choices=("text", "json"), default="text")
    nsz = modsub.add_parser("nsz")
    nsz.add_argument("--format", choices=("text", "json"), default="text")
    hm = modsub.add_parser("hm")
    hm.add_argument("--m", type=int, required=True)
    hm.add_argument("--k", type=int, default=0)
    hm.add_argument("--format", choices=("text", "json"), default="text")

    sie = sub.add_parser("siegel", help="genus-2 one-gamma verification commands")
    sie.add_argument("check", choices=("chain", "anomaly", "odet", "bracket"))
    sie.add_argument("--seed", type=int, default=0)
    sie.add_argument("--format", choices=("text", "json"), default="text")

    ver = sub.add_parser("verify", help="run a seeded property suite")
    ver.add_argument("suite")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _emit(report, fmt):
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for key, value in report.items():
        if isinstance(value, dict):
            print(f"{key}:")
            for k2, v2 in value.items():
                print(f"  {k2} = {v2}")
        elif isinstance(value, list):
            print(f"{key}:")
            for item in value:
                print(f"  {item}")
        else:
            print(f"{key}: {value}")


def _scalar_expr(text, what):
    """Parse a CLI expression into a scalar rational function."""
    node = parse_expression(text)
    value = _eval(node, _Scalar("ratfunc"), None, 1)
    if isinstance(value, Mat):
        raise SpecSyntax(f"{what} must be a scalar expression")
    return value


def _ring_expr(text, spec):
    node = parse_expression(text)
    scal = _Scalar("ratfunc" if spec.kind in ("ratfunc", "matrf") else "quasimodular")
    value = _eval(node, scal, spec.r, 1)
    from .specfile import _finalize

    return _finalize(value, spec.kind, spec.r, 1)


def _parse_trace_word(word):
    """WORDs like "I2", "I2*I3", "d1I2*I3": products of d<m>I<k> factors."""
    out = []
    for token in word.split("*"):
        token = token.strip()
        m = 0
        if token.startswith("d"):
            rest = token[1:]
            digits = ""
            while rest and rest[0].isdigit():
                digits += rest[0]
                rest = rest[1:]
            if not digits or not rest.startswith("I"):
                raise SpecSyntax(f"bad trace factor {token!r} (want d<m>I<k>)")
            m = int(digits)
            token = rest
        if not token.startswith("I") or not token[1:].isdigit():
            raise SpecSyntax(f"bad trace factor {token!r} (want I<k>)")
        out.append((int(token[1:]), m))
    if not out:
        raise SpecSyntax("empty trace word")
    return out


def cmd_invariants(args):
    spec = parse_spec(open(args.file, encoding="utf-8").read())
    L = spec.operator()
    data = miura_extract(L)
    report = {
        "ring": spec.ring_label(),
        "n": spec.n,
        "a1": str(L.a[0]),
        "invariants": {f"I{k}": str(v) for k, v in data.items()},
        "w": {},
        "residuals": {},
        "status": "ok",
    }
    if args.w:
        top = max(args.w)
        currents = w_currents(L, top)
        for k in sorted(set(args.w)):
            report["w"][f"W{k}"] = str(currents[k])
    traces = {}
    for word in args.trace:
        factors = _parse_trace_word(word)
        value = trace_invariants(L, [factors])[0]
        traces[f"tr({word})"] = str(value)
    for k in args.det:
        traces[f"det(I{k})"] = str(det_invariant(L, k))
    if traces:
        report["traces"] = traces
    return report


def cmd_reparam(args):
    spec = parse_spec(open(args.file, encoding="utf-8").read())
    L = spec.operator()
    lam = _scalar_expr(args.lam, "lambda")
    if lam.is_const():
        raise SpecSyntax("lambda must be a nonconstant rational map")
    jet = ReparamJet(lam)
    s, s1, s2 = jet.schwarzian()
    pulled = pullback_operator(L, jet)
    ik = reparam_Ik(L, jet)
    report = {
        "ring": spec.ring_label(),
        "n": spec.n,
        "lambda": str(lam),
        "schwarzian": {"S": str(s), "S'": str(s1), "S''": str(s2)},
        "pullback": {f"a{i}": str(c) for i, c in enumerate(pulled.a, start=1)},
        "invariants": {f"I{k}^lambda": str(v) for k, v in sorted(ik.items())},
        "residuals": {},
        "status": "ok",
    }
    failed = False
    for k in sorted(set(args.check_w)):
        rep = verify_w_tensoriality(L, jet, k)
        report["residuals"][f"W{k}-tensoriality"] = "0" if rep["ok"] else str(rep["residual"])
        failed = failed or not rep["ok"]
    if failed:
        report["status"] = "failed"
    return report


def cmd_star(args):
    spec = parse_spec(open(args.file, encoding="utf-8").read())
    L = spec.operator()
    u = _ring_expr(args.u, spec)
    Ls = star_action(u, L)
    before = miura_extract(L)
    after = miura_extract(Ls)
    residuals = {}
    failed = False
    for k in range(2, spec.n + 1):
        diff = after[k] - before[k]
        residuals[f"I{k}-shift"] = "0" if diff.is_zero() else str(diff)
        failed = failed or not diff.is_zero()
    return {
        "ring": spec.ring_label(),
        "n": spec.n,
        "u": str(u),
        "coefficients": {f"a{i}": str(c) for i, c in enumerate(Ls.a, start=1)},
        "invariants": {f"I{k}": str(v) for k, v in after.items()},
        "residuals": residuals,
        "status": "failed" if failed else "ok",
    }


def cmd_modular(args):
    if args.modcmd == "mlde":
        alpha = Fraction(args.alpha)
        L = mldo_second_order(args.k, alpha)
        data = miura_extract(L)
        return {
            "operator": "D_{k+2} o D_k + alpha E4",
            "k": str(args.k),
            "alpha": str(alpha),
            "coefficients": {"a1": str(L.a[0]), "a2": str(L.a[1])},
            "invariants": {"I2": str(data[2])},
            "status": "ok",
        }
    if args.modcmd == "nsz":
        cur = nsz_currents()
        rep = discriminant_current(cur["W2"], cur["W3"])
        return {
            "invariants": {"I2": str(cur["I2"]), "I3": str(cur["I3"])},
            "w": {"W2": str(cur["W2"]), "W3": str(cur["W3"])},
            "discriminant_current": str(rep["current"]),
            "discriminant_basis": {k: str(v) for k, v in rep.get("basis", {}).items()},
            "constant_q_coefficient": str(rep.get("constant_q_coefficient", "")),
            "status": "ok",
        }
    co = nsz_example_mldo()
    if args.k != co.k:
        co = type(co)(co.coeffs, k=args.k, K=co.K)
    h = nsz_hm(co, args.m)
    return {
        "m": str(args.m),
        "k": str(args.k),
        "h_m": str(h.value),
        "weight": str(h.weight),
        "depth0": str(h.is_modular()),
        "status": "ok",
    }


def cmd_siegel(args):
    import random

    from . import siegel as sg
    from .verify import rand_mvrat_poly, rand_siegel_element

    rng = random.Random(args.seed)
    residuals = {}
    if args.check == "chain":
        for i in range(6):
            f = rand_mvrat_poly(rng, 2)
            g = sg.random_symplectic(rng)
            rep = sg.chain_rule_check(f, g)
            residuals[f"chain-{i}"] = "0" if rep["ok"] else str(rep["residual"])
    elif args.check == "anomaly":
        for i in range(6):
            k, m = rng.choice([(0, 0), (2, 0), (1, 2), (4, 2)])
            phi = rand_siegel_element(rng, k, m)
            g = sg.random_symplectic(rng)
            rep = sg.anomaly_check(phi, g)
            residuals[f"anomaly-{i}-k{k}m{m}"] = "0" if rep["ok"] else str(rep["residual"])
    elif args.check == "odet":
        t1, _, _ = sg.z_entries()
        for i in range(4):
            x = Mat([[rand_mvrat_poly(rng), rand_mvrat_poly(rng)], [sg.MVRat.const(0), rand_mvrat_poly(rng)]])
            x = x + x.transpose()
            y = Mat([[rand_mvrat_poly(rng), rand_mvrat_poly(rng)], [sg.MVRat.const(0), rand_mvrat_poly(rng)]])
            y = y + y.transpose()
            m = Mat([[sg.MVRat.const(2), t1], [sg.MVRat.const(0), sg.MVRat.const(1)]])
            diff = sg.odet([m * x * m.transpose(), m * y * m.transpose()]) - (m.det() ** 2) * sg.odet([x, y])
            residuals[f"odet-covariance-{i}"] = "0" if diff.is_zero() else str(diff)
    else:
        t1, t2, t3 = sg.z_entries()
        detz = t1 * t3 - t2 * t2
        conn = sg.maurer_cartan_A(sg.SiegelElement.scalar(2, detz), e=Fraction(1))
        for i in range(2):
            f1 = rand_siegel_element(rng, 1, 0)
            f2 = rand_siegel_element(rng, 2, 0)
            bracket = sg.det_bracket([f1, f2], conn)
            g = sg.random_symplectic(rng, 3)
            slashed = sg.det_bracket([sg.slash(f1, g), sg.slash(f2, g)], conn.gamma_transform(g))
            diff = slashed - sg.slash(bracket, g)
            residuals[f"bracket-modularity-{i}"] = "0" if diff.is_zero() else "nonzero"
    ok = all(v == "0" for v in residuals.values())
    return {
        "check": args.check,
        "seed": args.seed,
        "residuals": residuals,
        "status": "ok" if ok else "failed",
    }


def cmd_verify(args):
    if args.suite != "all" and args.suite not in SUITES:
        raise _UsageError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)} or 'all'")
    report = run_suite(args.suite, seed=args.seed)
    return report


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "invariants":
            report = cmd_invariants(args)
        elif args.command == "reparam":
            report = cmd_reparam(args)
        elif args.command == "star":
            report = cmd_star(args)
        elif args.command == "modular":
            report = cmd_modular(args)
        elif args.command == "siegel":
            report = cmd_siegel(args)
        elif args.command == "verify":
            report = cmd_verify(args)
        else:  # pragma: no cover
            raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"parse error: cannot read {exc.filename}", file=sys.stderr)
        return EXIT_PARSE
    except MathError as exc:
        print(f"math error: {exc}", file=sys.stderr)
        return EXIT_MATH
    fmt = getattr(args, "format", "text")
    if args.command == "verify":
        if fmt == "json":
            print(json.dumps(report, indent=2, sort_keys=True))
        else:
            print(f"suite {report['suite']} (seed {report['seed']}): {report['status']}")
            for c in report["checks"]:
                mark = "PASS" if c["ok"] else "FAIL"
                line = f"  [{mark}] {c['name']}"
                if c["detail"]:
                    line += f" -- {c['detail']}"
                print(line)
        return EXIT_OK if report["status"] == "ok" else EXIT_MATH
    _emit(report, fmt)
    return EXIT_OK if report.get("status", "ok") == "ok" else EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())

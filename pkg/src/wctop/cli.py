"""Command line front end.

::

    wct gallery symmetric 8 | wct classify --kmax 2
    wct gallery geometric 0.5 60 | wct spectrum
    wct report space.json --p 3

Exit status: 0 with a verdict payload (a "false" verdict is not an
error), 2 for a malformed space description or bad usage, 3 when the
analysis does not apply (for instance ``classify`` with ``p != 2``).
"""

import argparse
import csv
import io
import sys

import numpy as np

from . import gallery
from .condexp import cond_expect
from .errors import InvalidExponent, SpecError, WctError
from .expansivity import classify, reduce_to_emv
from .jsonio import dumps, from_spec, loads, to_spec
from .measure import build_space
from .operator import WctOperator, domain_verdict, norm_bound
from .structure import polar_decompose, polar_residuals, spectral_radius, spectrum

CSV_COMMANDS = ("spectrum", "classify")


class UsageError(Exception):
    pass


def _r(x):
    """Report-grade float: 12 significant digits, roundoff-level values snapped to 0."""
    x = float(x)
    if abs(x) < 1e-12:
        return 0.0
    return float(f"{x:.12g}")


def _c(z):
    z = complex(z)
    return [_r(z.real), _r(z.imag)]


def _cs(values):
    return [_c(z) for z in values]


def _operator(space, partition, functions, p):
    n = space.n
    u = functions.get("u", np.ones(n))
    w = functions.get("w", np.ones(n))
    return WctOperator(u, w, partition, space, p)


def cmd_report(args, space, partition, functions):
    T = _operator(space, partition, functions, args.p)
    verdict = domain_verdict(T)
    out = {
        "command": "report",
        "p": _r(args.p),
        "domain": {
            "J_minus_1": [_r(x) for x in verdict.J_minus_1],
            "finite_ae": verdict.finite_ae,
            "sigma_finite_restriction": verdict.sigma_finite_restriction,
            "stabilized": verdict.stabilized,
            "status": verdict.status,
        },
    }
    try:
        out["norm_bound"] = _r(norm_bound(T))
    except WctError as e:
        out["norm_bound"] = None
        out["error"] = {"field": "norm_bound", "message": str(e)}
    return out


def cmd_expect(args, space, partition, functions):
    return {
        "command": "expect",
        "expectations": {k: _cs(cond_expect(f, partition, space)) for k, f in functions.items()},
    }


def cmd_spectrum(args, space, partition, functions):
    T = _operator(space, partition, functions, args.p)
    rep = spectrum(T, tol=args.tol)
    return {
        "command": "spectrum",
        "predicted": _cs(rep.predicted),
        "nonzero_predicted": _cs(rep.nonzero_predicted(args.tol)),
        "zero_in_spectrum": rep.zero_in_spectrum,
        "eigenvalues": _cs(rep.oracle_eigenvalues),
        "radius": _r(rep.radius),
        "radius_formula": _r(spectral_radius(T)),
        "sets_agree": rep.sets_agree(max(args.tol, 1e-8)),
    }


def cmd_polar(args, space, partition, functions):
    T = _operator(space, partition, functions, args.p)
    pair = polar_decompose(T)
    res = polar_residuals(T, pair)
    return {
        "command": "polar",
        "polar_residuals": {k: _r(v) for k, v in res.items()},
        "u_prime": _cs(pair.u_prime),
        "w_prime": _cs(pair.w_prime),
        "support_S": sorted(pair.support_S),
        "support_G": sorted(pair.support_G),
    }


def cmd_classify(args, space, partition, functions):
    if args.p != 2:
        raise InvalidExponent(f"classify needs p = 2, got p = {args.p!r}")
    if "v" in functions:
        v = functions["v"]
    else:
        v = reduce_to_emv(_operator(space, partition, functions, 2.0))
    rep = classify(
        v, partition, space, k_max=args.kmax, horizon=args.horizon, tol=args.tol, seed=args.seed
    )
    out = {"command": "classify", "k_max": rep.k_max, "horizon": rep.horizon}
    for lv in rep.levels:
        k = lv["k"]
        out[f"is_{k}_isometry"] = lv["is_k_isometry"]
        out[f"is_{k}_expansive"] = lv["is_k_expansive"]
        out[f"is_{k}_hyperexpansive"] = lv["is_k_hyperexpansive"]
    out["completely_hyperexpansive_up_to_horizon"] = rep.completely_hyperexpansive_up_to_horizon
    out["levels"] = [
        {"k": lv["k"], "max_eig": _r(lv["max_eig"]), "min_eig": _r(lv["min_eig"]), "tol": _r(lv["tol"])}
        for lv in rep.levels
    ]
    out["necessary_A0"] = [
        {
            "k": fl["k"],
            "block_values": [_r(x) for x in fl["values"]],
            "isometry_ok": fl["isometry_ok"],
            "expansive_ok": fl["expansive_ok"],
        }
        for fl in rep.necessary_condition_flags
    ]
    out["witnesses"] = [
        {"k": wt.n, "property": wt.property, "theta": _r(wt.theta), "f": _cs(wt.f)}
        for wt in rep.witnesses
    ]
    return out


def cmd_gallery(args):
    fam, params = args.family, args.params
    try:
        if fam == "symmetric":
            (n_pairs,) = params or ["8"]
            space, part, _ = gallery.symmetric_space(int(n_pairs))
            fns = gallery.symmetric_functions(space)
        elif fam == "geometric":
            p_param, N = params or ["0.5", "60"]
            space, part = gallery.geometric_nat_space(float(p_param), int(N))
            fns = gallery.geometric_functions(space)
        elif fam == "product":
            n1, n2 = params or ["3", "3"]
            s1 = build_space(np.full(int(n1), 1.0 / int(n1)))
            s2 = build_space(np.full(int(n2), 1.0 / int(n2)))
            space, part = gallery.product_space(s1, s2)
            a = np.repeat(np.arange(1, int(n1) + 1, dtype=float), int(n2))
            fns = {"u": a, "w": np.ones(space.n), "v": a}
        else:
            raise UsageError(f"unknown gallery family {fam!r} (symmetric, geometric, product)")
    except (ValueError, TypeError) as e:
        if isinstance(e, WctError):
            raise
        raise UsageError(f"bad parameters for {fam}: {params}") from e
    return to_spec(space, part, fns)


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", nargs="?", default="-", help="space description file (default: stdin)")
    common.add_argument("--p", type=float, default=None, help="exponent (default: the description's p, else 2)")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--kmax", type=int, default=4)
    common.add_argument("--horizon", type=int, default=20)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="wct", description="weighted conditional type operators")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, hlp in [
        ("report", "domain verdict and norm bound"),
        ("expect", "conditional expectation of every function"),
        ("spectrum", "predicted and computed spectrum"),
        ("polar", "polar decomposition and its residuals"),
        ("classify", "k-isometry / k-expansive classification"),
    ]:
        sub.add_parser(name, parents=[common], help=hlp)
    g = sub.add_parser("gallery", help="emit a worked example as a space description")
    g.add_argument("family")
    g.add_argument("params", nargs="*")
    return ap


COMMANDS = {
    "report": cmd_report,
    "expect": cmd_expect,
    "spectrum": cmd_spectrum,
    "polar": cmd_polar,
    "classify": cmd_classify,
}


def _to_csv(out):
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    if out["command"] == "spectrum":
        wr.writerow(["kind", "re", "im"])
        for key in ("predicted", "eigenvalues"):
            for re, im in out[key]:
                wr.writerow([key, re, im])
    else:
        wr.writerow(["k", "is_k_isometry", "is_k_expansive", "is_k_hyperexpansive", "max_eig", "min_eig"])
        for lv in out["levels"]:
            k = lv["k"]
            wr.writerow(
                [k, out[f"is_{k}_isometry"], out[f"is_{k}_expansive"], out[f"is_{k}_hyperexpansive"],
                 lv["max_eig"], lv["min_eig"]]
            )
    return buf.getvalue()


def run(argv=None, stdin=None, stdout=None, stderr=None):
    """Run the CLI; returns the exit status."""
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "gallery":
            stdout.write(dumps(cmd_gallery(args)))
            return 0
        if args.format == "csv" and args.command not in CSV_COMMANDS:
            raise UsageError(f"--format csv is only available for {', '.join(CSV_COMMANDS)}")
        if args.spec == "-":
            text = stdin.read()
        else:
            with open(args.spec) as fh:
                text = fh.read()
        space, partition, functions, p = from_spec(loads(text))
        if args.p is None:
            args.p = 2.0 if p is None else p
        out = COMMANDS[args.command](args, space, partition, functions)
    except (SpecError, UsageError, OSError) as e:
        stderr.write(f"wct: error: {e}\n")
        return 2
    except WctError as e:
        stderr.write(f"wct: {type(e).__name__}: {e}\n")
        return 3
    stdout.write(_to_csv(out) if args.format == "csv" else dumps(out))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

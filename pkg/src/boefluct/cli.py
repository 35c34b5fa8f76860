"""Command line entry point: ``boefluct <subcommand> ...`` or ``python -m boefluct``.

Reports go to stdout as JSON (default) or CSV.  Exit status is 0 on success,
1 when an identity or tolerance check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import acceptance
from . import band_matrix as bm
from . import chebyshev_basis as cbb
from . import combinatorics as comb
from . import ensembles as en
from . import ginibre as gin
from . import laurent as la
from . import path_cumulants as pc
from . import polynomials as poly
from . import right_limits as rl
from . import szego as sz
from .polynomials import ParseError

SCHEMA = "boe-fluct/1"
SEED_ENV = "BOEFLUCT_SEED"


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return _finite(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, float):
        return _finite(obj)
    if hasattr(obj, "to_json"):
        return _jsonable(obj.to_json())
    return obj


def _finite(x: float):
    return x if math.isfinite(x) else str(x)


def _emit(payload: dict, out) -> None:
    body = {"schema": SCHEMA, **_jsonable(payload)}
    out.write(json.dumps(body, indent=2, sort_keys=False) + "\n")


def _emit_csv(header: Sequence[str], rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_jsonable(v) for v in r])


def _poly(text: str):
    return poly.parse_polynomial(text)


def _symbol(text: str):
    return la.parse_symbol(text)


def _ints(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _rationals(text: str) -> list:
    out = []
    for part in text.split(","):
        v = poly.parse_number(part)
        out.append(int(v) if v.denominator == 1 else v)
    return out


_FUNCTION_NAMES = {name: getattr(np, name) for name in ("sin", "cos", "tan", "exp", "log", "sqrt", "abs", "tanh",
                                                        "arctan", "sinh", "cosh", "maximum", "minimum", "sign")}
_FUNCTION_NAMES["pi"] = np.pi


def _function(text: str):
    """A vectorized ``x -> ...`` built from numpy elementary functions only."""
    try:
        code = compile(text, "<function>", "eval")
    except SyntaxError as exc:
        raise ParseError("bad function expression", text, (exc.offset or 1) - 1) from None
    for name in code.co_names:
        if name != "x" and name not in _FUNCTION_NAMES:
            raise ParseError(f"unknown name {name!r}", text, text.find(name))

    def f(x):
        return eval(code, {"__builtins__": {}}, {**_FUNCTION_NAMES, "x": x})

    return f


def _matrix_from(args) -> bm.BandMatrix:
    kind = args.jacobi
    if args.matrix:
        with open(args.matrix) as fh:
            return bm.BandMatrix.from_json(json.load(fh))
    if kind == "free":
        return bm.free_jacobi()
    if kind == "hermite":
        return rl.hermite_jacobi(args.size)
    if kind == "ginibre":
        eta = _ints(args.eta) if args.eta else None
        return gin.recurrence_matrix(gin.GinibreParams(args.m, args.size, eta=eta), exact=True)
    if kind == "periodic":
        return rl.periodic_jacobi(_rationals(args.a), _rationals(args.b))
    raise UsageError(f"unknown matrix {kind!r}")


# ---------------------------------------------------------------------------
# Subcommands

def cmd_cumulant(args, out) -> int:
    J = _matrix_from(args)
    F = _poly(args.poly)
    if args.order == 1:
        val = pc.cumulant_traces(J, F, 1, args.size)
        _emit({"command": "cumulant", "N": args.size, "n": 1, "value_traces": val}, out)
        return 0
    rep = pc.cumulant_report(J, F, args.order, args.size)
    ok = rep.agreement <= args.tol * (1 + abs(float(rep.value_traces)))
    _emit({"command": "cumulant", **rep.to_json(), "matrix": J.label, "poly": poly.format_polynomial(F),
           "agree": ok}, out)
    return 0 if ok else 1


def cmd_varpi(args, out) -> int:
    F = _poly(args.poly)
    if args.symbol:
        s = _symbol(args.symbol)
        M = bm.laurent(s)
        via_g = pc.laurent_varpi_via_g(s, F, args.order)
    else:
        M = rl.periodic_jacobi(_rationals(args.a), _rationals(args.b), kind=bm.BI)
        via_g = None
    val = pc.varpi(M, F, args.order, omega=args.omega)
    payload = {"command": "varpi", "n": args.order, "omega": args.omega, "matrix": M.label, "value": val}
    ok = True
    if via_g is not None:
        payload["value_via_g"] = via_g
        ok = abs(val - via_g) <= 1e-10 * (1 + abs(float(via_g)))
        payload["agree"] = ok
    _emit(payload, out)
    return 0 if ok else 1


def cmd_mcl(args, out) -> int:
    rng = np.random.default_rng(args.seed)
    certs = []
    for _ in range(args.trials):
        x = acceptance._random_zero_sum(rng, args.n)
        val = comb.mcl_symmetrized(x)
        want = abs(x[0]) if args.n == 2 else Fraction(0)
        certs.append(comb.certificate("mcl", args.n, x, val, want))
    ok = all(c["equal"] for c in certs)
    _emit({"command": "mcl", "n": args.n, "trials": args.trials, "seed": args.seed, "all_equal": ok,
           "certificates": certs}, out)
    return 0 if ok else 1


def cmd_identities(args, out) -> int:
    rng = np.random.default_rng(args.seed)
    which = ["dhk", "rs", "spitzer", "mobius", "binomial"] if args.identity == "all" else [args.identity]
    certs = []
    n = args.n
    for name in which:
        for _ in range(args.trials):
            if name == "dhk":
                x = [acceptance._random_rational(rng) for _ in range(n)]
                certs.append(comb.certificate("dhk", n, x, *comb.dhk_both_sides(x)))
            elif name == "rs":
                x = [acceptance._random_rational(rng) for _ in range(n - 1)]
                x.append(-sum(x))
                certs.append(comb.certificate("rs", n, x, *comb.rs_both_sides(x)))
            elif name == "spitzer":
                vals = [acceptance._random_rational(rng) for _ in range(3)]
                raw = [int(v) for v in rng.integers(1, 6, 3)]
                probs = [Fraction(r, sum(raw)) for r in raw]
                lhs, rhs = comb.spitzer_check(list(zip(vals, probs)), n)
                certs.append(comb.certificate("spitzer", n, [f"{v}@{p}" for v, p in zip(vals, probs)], lhs, rhs))
            elif name == "mobius":
                certs.append(comb.certificate("mobius", n, [], comb.mobius_identity(n), 1 if n == 1 else 0))
                break
            else:
                d = int(rng.integers(0, n + 1))
                R = [acceptance._random_rational(rng) for _ in range(d + 1)]
                certs.append(comb.certificate("binomial", n, R, *comb.binomial_identity_check(R, n)))
    ok = all(c["equal"] for c in certs)
    _emit({"command": "identities", "n": n, "seed": args.seed, "all_equal": ok, "certificates": certs}, out)
    return 0 if ok else 1


def cmd_variance(args, out) -> int:
    F = _poly(args.poly)
    s = _symbol(args.symbol) if args.symbol else la.chebyshev_symbol()
    rep = la.variance_report(F, s, args.grid_devinatz, args.grid_h12)
    _emit({"command": "variance", "poly": poly.format_polynomial(F), "symbol": s.to_json(), **rep.to_json()}, out)
    return 0


_FAMILIES = {
    "hermite": rl.hermite_jacobi,
    "free": rl.free_family,
    "alternating": rl.alternating_family,
}


def cmd_right_limit(args, out) -> int:
    if args.family == "ginibre":
        family = gin.ginibre_family(args.m, _ints(args.eta) if args.eta else None)
    else:
        family = _FAMILIES[args.family]
    Ns = _ints(args.N)
    res = rl.detect_right_limit(family, Ns, args.radius, args.tol)
    if res == rl.NO_LIMIT:
        if args.format == "csv":
            out.write("status\nno-limit\n")
        else:
            _emit({"command": "right-limit", "status": "no-limit", "N_values": Ns}, out)
        return 0
    sym = rl.is_laurent(res.limit, args.laurent_tol)
    r = args.radius
    if args.format == "csv":
        rows = []
        for i in range(-r, r + 1):
            for j in range(-r, r + 1):
                if abs(i - j) >= family(Ns[-1]).bandwidth:
                    continue
                dev = [float(abs(float(rl.extract_window(family, N, r).at(i, j)) - res.limit.at(i, j))) for N in Ns]
                rows.append([i, j, float(res.limit.at(i, j)), *dev, res.rates[i + r, j + r]])
        _emit_csv(["i", "j", "limit", *[f"dev_N{N}" for N in Ns], "rate"], rows, out)
    else:
        _emit({"command": "right-limit", "status": "limit", "N_values": Ns, "limit": res.limit,
               "rates": res.rates, "max_deviation": res.deviations,
               "symbol": sym.to_json() if isinstance(sym, la.LaurentPoly) else sym}, out)
    return 0


def _theta(args, m: int):
    if args.theta:
        th = _rationals(args.theta)
        if len(th) != m + 1:
            raise UsageError(f"--theta needs {m + 1} values for m={m}")
        return tuple(th)
    return tuple([1] * (m + 1))


def cmd_ginibre(args, out) -> int:
    if args.action == "symbol":
        theta = _theta(args, args.m)
        _emit({"command": "ginibre symbol", "m": args.m, "theta": theta, "symbol": gin.limit_symbol(theta)}, out)
        return 0
    if args.action == "variance":
        theta = _theta(args, args.m)
        F = _poly(args.poly)
        v = gin.mop_variance(F, theta)
        _emit({"command": "ginibre variance", "m": args.m, "theta": theta, "poly": poly.format_polynomial(F),
               "variance": v, "negative": v < 0}, out)
        return 0
    Ns = _ints(args.N)
    eta = _ints(args.eta) if args.eta else None
    rows = gin.right_limit_rate_check(gin.GinibreParams(args.m, Ns[0], eta=eta), Ns)
    ok = all(r.converged for r in rows)
    if args.format == "csv":
        _emit_csv(["k", "target", *[f"dev_N{N}" for N in Ns], "exponent", "converged"],
                  [[r.k, r.target, *r.deviations, r.exponent, r.converged] for r in rows], out)
    else:
        _emit({"command": "ginibre rates", "m": args.m, "N_values": Ns, "rows": rows, "all_converged": ok}, out)
    return 0 if ok else 1


def cmd_simulate(args, out) -> int:
    ens = args.ensemble
    F = f = symbol = params = None
    if args.function:
        f = _function(args.function)
    elif args.symbol:
        symbol = _symbol(args.symbol)
    elif args.poly:
        F = _poly(args.poly)
    else:
        F = (0, 1)
    if ens == "cue" and symbol is None:
        if F is not None and F != (0, 1):
            raise UsageError("cue statistics take --symbol or --function")
        symbol = la.LaurentPoly({-1: 1, 1: 1}) if f is None else None
    if ens == "ginibre":
        eta = _ints(args.eta) if args.eta else None
        theta = tuple(_rationals(args.theta)) if args.theta else None
        params = gin.GinibreParams(args.m, args.n, eta=eta, theta=theta)
    summary, values = en.clt_experiment(ens, args.n, args.samples, args.seed, F=F, f=f, symbol=symbol,
                                        params=params, support_pm1=args.support_pm1)
    if args.format == "csv":
        _emit_csv(["sample_index", "statistic_value"], [[i, repr(float(v))] for i, v in enumerate(values)], out)
        return 0
    z = summary.z_scores
    ok = all(abs(v) <= args.z_max for v in z.values())
    _emit({"command": "simulate", "ensemble": ens, "N": args.n, "samples": args.samples, "seed": args.seed,
           "summary": summary.to_json(), "within_z_max": ok}, out)
    return 0 if ok else 1


def cmd_szego(args, out) -> int:
    f = _symbol(args.symbol)
    Ns = _ints(args.N)
    rep = sz.szego_limit_check(f, args.lam, Ns, args.modes)
    ok = rep.deviations[-1] <= args.tol
    if args.format == "csv":
        _emit_csv(["N", "log_det", "deviation"], zip(rep.N_values, rep.log_det, rep.deviations), out)
    else:
        _emit({"command": "szego", **rep.to_json(), "within_tol": ok}, out)
    return 0 if ok else 1


def cmd_chebyshev_basis(args, out) -> int:
    data = cbb.build_basis(args.n)
    _, _, cov = cbb.covariance_factorization(args.n)
    _, gram = cbb.gram_check(args.n)
    checks = {"Y_is_2T": cbb.basis_is_chebyshev(data), "covariance_factorization": cov, "gram_2I": gram,
              "monomial_expansion": cbb.monomial_expansion_check(args.n)}
    _emit({"command": "chebyshev-basis", **data.to_json(), "checks": checks}, out)
    return 0 if all(checks.values()) else 1


def cmd_acceptance(args, out) -> int:
    ids = args.only.split(",") if args.only else None
    if ids:
        unknown = [i for i in ids if i not in acceptance.CHECKS]
        if unknown:
            raise UsageError(f"unknown check ids {unknown}")
    results = acceptance.run_suite(ids)
    for r in results:
        print(r.line(), file=sys.stderr)
    _emit({"command": "acceptance", "suite": args.suite, "results": [r.to_json() for r in results],
           "all_passed": all(r.passed for r in results)}, out)
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="boefluct", description="Cumulants and CLTs of linear statistics via lattice paths.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", dest="format", action="store_const", const="json")
        g.add_argument("--csv", dest="format", action="store_const", const="csv")

    c = sub.add_parser("cumulant", help="C^n_N[F] by path sums, checked against the trace formula")
    c.add_argument("--jacobi", choices=["free", "hermite", "ginibre", "periodic"], default="free")
    c.add_argument("--matrix", help="JSON band-matrix window file (overrides --jacobi)")
    c.add_argument("--poly", default="x")
    c.add_argument("--order", type=int, default=2)
    c.add_argument("--size", type=int, default=10)
    c.add_argument("--m", type=int, default=1)
    c.add_argument("--eta")
    c.add_argument("--a", default="1/2,1/4")
    c.add_argument("--b", default="0")
    c.add_argument("--tol", type=float, default=1e-9)
    fmt(c)

    v = sub.add_parser("varpi", help="limit path sum on a Laurent or periodic bi-infinite matrix")
    v.add_argument("--symbol")
    v.add_argument("--a", default="1/2,1/4")
    v.add_argument("--b", default="0")
    v.add_argument("--poly", default="x")
    v.add_argument("--order", type=int, default=2)
    v.add_argument("--omega", type=int, default=0)
    fmt(v)

    m = sub.add_parser("mcl", help="exact check of the symmetrized G_n identity")
    m.add_argument("--n", type=int, default=3)
    m.add_argument("--trials", type=int, default=50)
    m.add_argument("--seed", type=int)
    fmt(m)

    i = sub.add_parser("identities", help="exact random-walk identity certificates")
    i.add_argument("--identity", choices=["dhk", "rs", "spitzer", "mobius", "binomial", "all"], default="all")
    i.add_argument("--n", type=int, default=4)
    i.add_argument("--trials", type=int, default=10)
    i.add_argument("--seed", type=int)
    fmt(i)

    va = sub.add_parser("variance", help="limit variance by every applicable formula")
    va.add_argument("--poly", default="x")
    va.add_argument("--symbol")
    va.add_argument("--grid-devinatz", type=int, default=512)
    va.add_argument("--grid-h12", type=int, default=256)
    fmt(va)

    r = sub.add_parser("right-limit", help="right-limit detection and convergence rates (CSV by default)")
    r.add_argument("--family", choices=["hermite", "free", "alternating", "ginibre"], default="hermite")
    r.add_argument("--N", default="100,200,400")
    r.add_argument("--radius", type=int, default=2)
    r.add_argument("--tol", type=float, default=1e-3)
    r.add_argument("--laurent-tol", type=float, default=1e-3)
    r.add_argument("--m", type=int, default=1)
    r.add_argument("--eta")
    fmt(r)

    g = sub.add_parser("ginibre", help="Ginibre-product symbol, variance and rate table")
    g.add_argument("action", choices=["symbol", "variance", "rates"])
    g.add_argument("--m", type=int, default=1)
    g.add_argument("--theta")
    g.add_argument("--eta")
    g.add_argument("--poly", default="x")
    g.add_argument("--N", default="200,400,800")
    fmt(g)

    s = sub.add_parser("simulate", help="Monte Carlo CLT experiment")
    s.add_argument("--ensemble", choices=list(en.ENSEMBLES), default="gue")
    s.add_argument("--n", type=int, default=100)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int)
    src = s.add_mutually_exclusive_group()
    src.add_argument("--poly")
    src.add_argument("--function", help="numpy expression in x, e.g. 'abs(x)**3'")
    src.add_argument("--symbol", help="CUE statistic as a Laurent symbol in e^{iθ}")
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--theta")
    s.add_argument("--eta")
    s.add_argument("--support-pm1", action="store_true")
    s.add_argument("--z-max", type=float, default=4.0)
    fmt(s)

    z = sub.add_parser("szego", help="Toeplitz log-determinants against the strong Szego limit")
    z.add_argument("--symbol", default="{-1: 1, 1: 1}")
    z.add_argument("--lam", type=float, default=0.3)
    z.add_argument("--N", default="10,20,40")
    z.add_argument("--modes", type=int, default=1024)
    z.add_argument("--tol", type=float, default=1e-4)
    fmt(z)

    cb = sub.add_parser("chebyshev-basis", help="binomial matrix, Chebyshev basis and their identities")
    cb.add_argument("--n", type=int, default=8)
    fmt(cb)

    a = sub.add_parser("acceptance", help="run the acceptance suite")
    a.add_argument("--suite", choices=["primary"], default="primary")
    a.add_argument("--only", help="comma-separated check ids, e.g. AC1,AC4")
    fmt(a)
    return p


_COMMANDS = {
    "cumulant": cmd_cumulant,
    "varpi": cmd_varpi,
    "mcl": cmd_mcl,
    "identities": cmd_identities,
    "variance": cmd_variance,
    "right-limit": cmd_right_limit,
    "ginibre": cmd_ginibre,
    "simulate": cmd_simulate,
    "szego": cmd_szego,
    "chebyshev-basis": cmd_chebyshev_basis,
    "acceptance": cmd_acceptance,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "format", None) is None:
            args.format = "csv" if args.command == "right-limit" else "json"
        if hasattr(args, "seed") and args.seed is None:
            args.seed = _default_seed()
        return _COMMANDS[args.command](args, out)
    except (UsageError, ParseError) as exc:
        print(f"boefluct: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"boefluct: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())

"""Command-line front end: ``halfwalk <subcommand> [flags] [--json]``.

Exit status is 0 on success, 1 on a domain error (the exception name goes to
stderr) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from . import asymptotics, closed_forms, combinatorial_identities, dfinite, exact_series, guessing
from .asymptotics import estimate_constant, poincare_expansion
from .closed_forms import METHODS, lagrange_f0
from .combinatorial_identities import bounded_dp, cf_convergent, cycle_brute, cycle_count, reflection_count
from .config import SelfcheckConfig, default_order
from .dfinite import PRec, algebraic_to_ode, even_part, first_relation, ode_to_rec, rec_unroll
from .exact_series import SeriesT, rat, rat_str, valuation
from .guessing import EXCURSION_POLY, guess_algebraic, kernel_certificate, tripoly
from .polys import ParseError, parse_upoly, split_top_level
from .serialize import count_table_to_json, dumps, series_to_json, tripoly_to_json
from .walk_engine import SIMPLE, StepSet, dp_count, fixpoint_solve

SOLVE_METHODS = ("fixpoint", "classical", "wiener-hopf", "orbit-sum", "factorization", "lagrange")
CHECKS = ("five-way", "convergents", "cycle", "pipeline")

_DOMAIN_MODULES = (exact_series, closed_forms, combinatorial_identities, guessing, dfinite, asymptotics)
DOMAIN_ERRORS = tuple(
    obj
    for mod in _DOMAIN_MODULES
    for obj in vars(mod).values()
    if isinstance(obj, type) and issubclass(obj, Exception) and obj.__module__ == mod.__name__
)

_NEGATIVE_VALUE = re.compile(r"^-[\d(./]")


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(self.prog, message)


# ---------------------------------------------------------------------------
# flag parsing


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    """``--steps -1,1`` -> ``--steps=-1,1`` so argparse does not read -1,1 as a flag."""
    out: List[str] = []
    skip = False
    for k, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        nxt = argv[k + 1] if k + 1 < len(argv) else None
        if tok.startswith("--") and "=" not in tok and nxt is not None and _NEGATIVE_VALUE.match(nxt):
            out.append(f"{tok}={nxt}")
            skip = True
        else:
            out.append(tok)
    return out


def _steps(text: str) -> StepSet:
    try:
        return StepSet(int(v) for v in split_top_level(text, ","))
    except ValueError as exc:
        raise UsageError("--steps", str(exc)) from None


def _rationals(flag: str, text: str) -> List:
    try:
        return [rat(v) for v in split_top_level(text, ",") if v != ""]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(flag, f"expected comma-separated rationals ({exc})") from None


def _ints(flag: str, text: str) -> List[int]:
    try:
        return [int(v) for v in split_top_level(text, ",") if v != ""]
    except ValueError:
        raise UsageError(flag, f"expected comma-separated integers, got {text!r}") from None


def _rec(text: str) -> PRec:
    try:
        coeffs = tuple(parse_upoly(part, "n") for part in split_top_level(text, ","))
        return PRec(coeffs)
    except (ParseError, ValueError) as exc:
        raise UsageError("--rec", str(exc)) from None


def _poly(text: str):
    try:
        P = tripoly(text)
    except ParseError as exc:
        raise UsageError("--poly", str(exc)) from None
    if P.degree("x") > 0:
        raise UsageError("--poly", "expected a polynomial in t and Y only")
    return P


def _nonneg(flag: str, value: int) -> int:
    if value < 0:
        raise UsageError(flag, "must be non-negative")
    return value


# ---------------------------------------------------------------------------
# subcommands; each returns a JSON-ready dict


def cmd_count(a) -> dict:
    S = _steps(a.steps)
    N = _nonneg("--len", a.len if a.len is not None else a.order)
    T = dp_count(S, N)
    return {"steps": list(S.steps), **count_table_to_json(T)}


def _solve_series(method: str, N: int, S: StepSet) -> SeriesT:
    if method == "fixpoint":
        return fixpoint_solve(S, N)
    closed_forms._require_simple(S)
    if method == "lagrange":
        return SeriesT.from_scalars([lagrange_f0(n) for n in range(N + 1)], N)
    return METHODS[method](N)


def cmd_solve(a) -> dict:
    S = _steps(a.steps)
    N = _nonneg("--order", a.order)
    F = _solve_series(a.method, N, S)
    return {"method": a.method, "series": series_to_json(F), "text": F.to_str()}


def cmd_convergent(a) -> dict:
    k = _nonneg("--k", a.k)
    N = _nonneg("--order", a.order)
    C = cf_convergent(k, N)
    return {"k": k, "series": series_to_json(C.series), "text": C.series.to_str()}


def cmd_identities(a) -> dict:
    if a.kind == "reflection":
        if a.i is None or a.n is None:
            raise UsageError("--kind", "reflection needs --i and --n")
        i, n = _nonneg("--i", a.i), _nonneg("--n", a.n)
        out = {"kind": "reflection", "i": i, "n": n, "count": rat_str(reflection_count(i, n))}
        out["dp"] = rat_str(dp_count(SIMPLE, n).count(i, n))
        return out
    if a.kind == "cycle":
        if a.r is None or a.s is None:
            raise UsageError("--kind", "cycle needs --r and --s")
        out = {"kind": "cycle", "r": a.r, "s": a.s, "count": rat_str(cycle_count(a.r, a.s))}
        if a.brute:
            out["brute"] = rat_str(cycle_brute(a.r, a.s))
        return out
    if a.n is None:
        raise UsageError("--kind", "lagrange needs --n")
    n = _nonneg("--n", a.n)
    return {"kind": "lagrange", "n": n, "count": rat_str(lagrange_f0(n))}


def cmd_guess(a) -> dict:
    S = _steps(a.steps)
    N = _nonneg("--order", a.order)
    for flag, v in (("--dx", a.dx), ("--dt", a.dt), ("--dY", a.dY)):
        _nonneg(flag, v)
    F = fixpoint_solve(S, N)
    A = F if a.source == "F" else F.x_coefficient(0)
    rep = guess_algebraic(A, a.dx, a.dt, a.dY)
    out = {
        "source": a.source,
        "order": N,
        "equations": rep.equations,
        "unknowns": rep.unknowns,
        "nullspace_dim": rep.nullspace_dim,
        "candidate": tripoly_to_json(rep.candidate) if rep.candidate else None,
        "text": rep.candidate.to_str() if rep.candidate else None,
    }
    if a.verify is not None and rep.candidate is not None:
        cert = kernel_certificate(rep.candidate, _nonneg("--verify", a.verify))
        out["certificate"] = {
            "ok": cert.ok,
            "y_multiplicity": cert.y_multiplicity,
            "required_order": cert.required_order,
            "first_separating_order": cert.first_separating_order,
            "cofactor": cert.cofactor.to_str(),
        }
    return out


def cmd_ode(a) -> dict:
    P = _poly(a.poly)
    L = (first_relation(P) if a.first else algebraic_to_ode(P)).normalized()
    return {"ode": L.to_json(), "text": L.to_str()}


def cmd_rec(a) -> dict:
    R = ode_to_rec(algebraic_to_ode(_poly(a.poly)))
    if a.even:
        R = even_part(R).normalized()
    return {"rec": R.to_json(), "text": R.to_str()}


def cmd_unroll(a) -> dict:
    R = _rec(a.rec)
    init = _rationals("--init", a.init)
    if len(init) != R.order:
        raise UsageError("--init", f"need {R.order} initial values, got {len(init)}")
    N = _nonneg("--len", a.len)
    vals = rec_unroll(R, init, N)
    return {"rec": R.to_json(), "values": [rat_str(v) for v in vals]}


def cmd_asymp(a) -> dict:
    R = _rec(a.rec)
    K = _nonneg("--depth", a.depth)
    return {"rec": R.to_json(), "expansions": [E.to_json() for E in poincare_expansion(R, K)]}


def cmd_estimate(a) -> dict:
    R = _rec(a.rec)
    init = _rationals("--init", a.init)
    if len(init) != R.order:
        raise UsageError("--init", f"need {R.order} initial values, got {len(init)}")
    points = _ints("--points", a.points)
    if not points:
        raise UsageError("--points", "need at least one index")
    if min(points) < 1:
        raise UsageError("--points", "indices must be positive")
    K = _nonneg("--depth", a.depth)
    if a.precision < 1:
        raise UsageError("--precision", "must be positive")
    exps = [E for E in poincare_expansion(R, K) if E.phi > 0]
    if not exps:
        raise asymptotics.NonPositivePhi("no expansion with positive phi")
    E = max(exps, key=lambda e: e.phi)
    vals = rec_unroll(R, init, max(points))
    est = estimate_constant(vals, E, points, a.precision)
    return {"expansion": E.to_json(), **est.to_json()}


# ---------------------------------------------------------------------------
# self-check battery


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class SelfcheckReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [r.to_json() for r in self.results]}


def _first_difference(A: SeriesT, B: SeriesT) -> Optional[int]:
    d = valuation((A - B))
    return None if d == exact_series.INF else int(d)


def _check_five_way(cfg: SelfcheckConfig, methods: Dict[str, Callable[[int], SeriesT]]) -> CheckResult:
    N = cfg.agreement_order
    ref = fixpoint_solve(SIMPLE, N)
    bad = []
    for name, fn in methods.items():
        k = _first_difference(fn(N), ref)
        if k is not None:
            bad.append(f"{name} differs from fixpoint at t^{k}")
    if bad:
        return CheckResult("five-way", False, "; ".join(bad))
    return CheckResult("five-way", True, f"{len(methods) + 1} methods agree to order {N}")


def _check_convergents(cfg: SelfcheckConfig) -> CheckResult:
    N = cfg.convergent_order
    for k in range(cfg.max_height + 1):
        series = cf_convergent(k, N).series.scalars()
        dp = bounded_dp(k, N).column(0)
        if series != dp:
            n = next(i for i, (u, v) in enumerate(zip(series, dp)) if u != v)
            return CheckResult("convergents", False, f"height {k} disagrees at length {n}")
    return CheckResult("convergents", True, f"heights 0..{cfg.max_height} agree to length {N}")


def _check_cycle(cfg: SelfcheckConfig) -> CheckResult:
    from math import gcd

    pairs = [(r, s) for r in range(1, cfg.cycle_bound) for s in range(1, cfg.cycle_bound)
             if r + s <= cfg.cycle_bound and gcd(r, s) == 1]
    for r, s in pairs:
        if cycle_count(r, s) != cycle_brute(r, s):
            return CheckResult("cycle", False, f"formula and exhaustion disagree at ({r}, {s})")
    return CheckResult("cycle", True, f"{len(pairs)} coprime pairs with r+s <= {cfg.cycle_bound}")


def _check_pipeline(cfg: SelfcheckConfig) -> CheckResult:
    N = cfg.pipeline_len
    R = ode_to_rec(algebraic_to_ode(tripoly(EXCURSION_POLY)))
    vals = rec_unroll(R, [1, 0], N)
    dp = dp_count(SIMPLE, N).column(0)
    if vals != dp:
        n = next(i for i, (u, v) in enumerate(zip(vals, dp)) if u != v)
        return CheckResult("pipeline", False, f"unrolled recurrence disagrees with DP at n={n}")
    return CheckResult("pipeline", True, f"algebraic -> ODE -> recurrence reproduces excursions to n={N}")


def selfcheck(
    only: Optional[Sequence[str]] = None,
    methods: Optional[Dict[str, Callable[[int], SeriesT]]] = None,
    config: SelfcheckConfig = SelfcheckConfig(),
) -> SelfcheckReport:
    """Run the cross-method battery; ``methods`` overrides entries of the solver table."""
    names = CHECKS if only is None else tuple(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise UsageError("--only", f"unknown check(s) {unknown}; choose from {list(CHECKS)}")
    table = dict(METHODS)
    table.update(methods or {})
    runners = {
        "five-way": lambda: _check_five_way(config, table),
        "convergents": lambda: _check_convergents(config),
        "cycle": lambda: _check_cycle(config),
        "pipeline": lambda: _check_pipeline(config),
    }
    report = SelfcheckReport()
    for name in names:
        try:
            report.results.append(runners[name]())
        except DOMAIN_ERRORS as exc:
            report.results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return report


def cmd_selfcheck(a) -> dict:
    only = None if a.only is None else [s for s in split_top_level(a.only, ",") if s]
    return selfcheck(only).to_json()


# ---------------------------------------------------------------------------
# output


def _is_leaf(v) -> bool:
    return v is None or isinstance(v, (str, int, float, bool))


def _pretty(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if _is_leaf(v) or (isinstance(v, list) and all(_is_leaf(x) for x in v)):
                lines.append(f"{pad}{k}: {_leaf_text(v)}")
            else:
                lines.append(f"{pad}{k}:")
                lines.extend(_pretty(v, indent + 1))
    elif isinstance(obj, list):
        for item in obj:
            if _is_leaf(item) or (isinstance(item, list) and all(_is_leaf(x) for x in item)):
                lines.append(f"{pad}{_leaf_text(item)}")
            elif isinstance(item, list) and all(isinstance(x, list) for x in item):
                lines.append(pad + "  ".join(_leaf_text(x) for x in item))
            else:
                lines.append(f"{pad}-")
                lines.extend(_pretty(item, indent + 1))
    else:
        lines.append(pad + _leaf_text(obj))
    return lines


def _leaf_text(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_leaf_text(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _selfcheck_pretty(data: dict) -> List[str]:
    lines = [f"{'PASS' if c['ok'] else 'FAIL'} {c['name']}: {c['detail']}" for c in data["checks"]]
    lines.append(f"overall: {'PASS' if data['ok'] else 'FAIL'} ({len(data['checks'])} checks)")
    return lines


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    order = default_order()
    p = _Parser(prog="halfwalk", description="Exact enumeration of simple walks on the half-line.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("count", cmd_count, "DP table of walk counts")
    sp.add_argument("--steps", default="-1,1")
    sp.add_argument("--len", type=int)
    sp.add_argument("--order", type=int, default=order, help=argparse.SUPPRESS)

    sp = add("solve", cmd_solve, "series solution of the kernel equation")
    sp.add_argument("--method", choices=SOLVE_METHODS, default="fixpoint")
    sp.add_argument("--order", type=int, default=order)
    sp.add_argument("--steps", default="-1,1")

    sp = add("convergent", cmd_convergent, "continued-fraction convergent F_k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--order", type=int, default=order)

    sp = add("identities", cmd_identities, "reflection, cycle-lemma and Lagrange counts")
    sp.add_argument("--kind", choices=("reflection", "cycle", "lagrange"), required=True)
    for flag in ("--i", "--n", "--r", "--s"):
        sp.add_argument(flag, type=int)
    sp.add_argument("--brute", action="store_true", help="also count the cycle case exhaustively")

    sp = add("guess", cmd_guess, "guess an algebraic equation from the series")
    sp.add_argument("--source", choices=("F", "F0"), default="F")
    sp.add_argument("--steps", default="-1,1")
    sp.add_argument("--order", type=int, default=8)
    sp.add_argument("--dx", type=int, default=2)
    sp.add_argument("--dt", type=int, default=2)
    sp.add_argument("--dY", type=int, default=2)
    sp.add_argument("--verify", type=int, metavar="N", help="certify the candidate at order N")

    sp = add("ode", cmd_ode, "linear ODE of an algebraic series")
    sp.add_argument("--poly", default=EXCURSION_POLY)
    sp.add_argument("--first", action="store_true", help="stop at the first (inhomogeneous) relation")

    sp = add("rec", cmd_rec, "P-recurrence of an algebraic series")
    sp.add_argument("--poly", default=EXCURSION_POLY)
    sp.add_argument("--even", action="store_true", help="recurrence for the even-index subsequence")

    sp = add("unroll", cmd_unroll, "unroll a P-recurrence")
    sp.add_argument("--rec", required=True, help="comma-separated q_0..q_r in n; q_0 multiplies f(n+r)")
    sp.add_argument("--init", required=True)
    sp.add_argument("--len", type=int, default=order)

    sp = add("asymp", cmd_asymp, "formal asymptotic expansions of a P-recurrence")
    sp.add_argument("--rec", required=True)
    sp.add_argument("--depth", type=int, default=4)

    sp = add("estimate", cmd_estimate, "numerical constant in front of the leading expansion")
    sp.add_argument("--rec", required=True)
    sp.add_argument("--init", required=True)
    sp.add_argument("--points", default="100,1000,10000")
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--precision", type=int, default=50)

    sp = add("selfcheck", cmd_selfcheck, "cross-method consistency battery")
    sp.add_argument("--only", help=f"comma-separated subset of {','.join(CHECKS)}")
    return p


def run(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        parser = build_parser()
    except ValueError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    try:
        args = parser.parse_args(_glue_negative_values(list(argv)))
        data = args.func(args)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except DOMAIN_ERRORS as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except (ValueError, ArithmeticError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    if args.json:
        out.write(dumps(data) + "\n")
    elif args.command == "selfcheck":
        out.write("\n".join(_selfcheck_pretty(data)) + "\n")
    else:
        out.write("\n".join(_pretty(data)) + "\n")
    if args.command == "selfcheck" and not data["ok"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""Command-line front end: exact counts, tables, and cross-verification.

Commands
--------
count   quiddity counts (bracket = eps*Id) or counts for an explicit target
sigma   all-ideal-entry counts over Z/p^r at one or all levels
pi      counts split by the second entry, for an explicit target
tau     unit-second-entry totals, for an explicit target
table   grids over a length range (quiddity: columns eps; sigma: columns level)
verify  run the cross-verification suites

Engines: ``formula`` (closed forms, CRT-composed for composite moduli),
``recursion`` (length recursions seeded by the oracle), ``oracle`` (the
enumeration DP), ``all`` (every applicable engine, compared cell by cell).

Counts are serialized as decimal strings in JSON (never floats).  Exit
codes: 0 success/agreement, 1 usage or parameter error, 2 engine
disagreement (the first differing cell is echoed on stderr).  The env var
QUIDDITY_MAX_BUDGET raises the oracle's operation ceiling.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import oracle, recursion, verify
from .formulas import count_quiddity_formula, sigma_closed
from .matrices import Mat2
from .oracle import BudgetError
from .ring import UnsupportedRingError, ring

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREE = 2


class CliError(Exception):
    """Usage/parameter error -> exit code 1."""


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


# -- row assembly ---------------------------------------------------------------


def _merge_engines(n: int, per_engine: dict[str, dict[str, int]]):
    """Combine per-engine value dicts into one row; None agree for single engine."""
    engines = sorted(per_engine)
    if len(engines) == 1:
        eng = engines[0]
        return {"n": n, "values": dict(per_engine[eng]), "engine": eng, "agree": True}, None
    keys = sorted({k for vals in per_engine.values() for k in vals})
    disagreement = None
    for key in keys:
        seen = {eng: per_engine[eng].get(key) for eng in engines}
        if len(set(seen.values())) != 1 and disagreement is None:
            disagreement = (n, key, seen)
    if disagreement is None:
        return {"n": n, "values": dict(per_engine[engines[0]]), "engine": "all", "agree": True}, None
    values = {f"{k}[{eng}]": per_engine[eng][k] for eng in engines for k in per_engine[eng]}
    return {"n": n, "values": values, "engine": "all", "agree": False}, disagreement


def _emit(params: dict, rows: list[dict], output: str, stream=None):
    stream = stream or sys.stdout
    if output == "json":
        doc = {
            "params": params,
            "rows": [
                {
                    "n": row["n"],
                    "values": {k: str(v) for k, v in row["values"].items()},
                    "engine": row["engine"],
                    "agree": row["agree"],
                }
                for row in rows
            ],
        }
        json.dump(doc, stream, indent=2)
        stream.write("\n")
    elif output == "csv":
        keys = sorted({k for row in rows for k in row["values"]})
        writer = csv.writer(stream)
        writer.writerow(["n", *keys, "engine", "agree"])
        for row in rows:
            writer.writerow(
                [row["n"], *(row["values"].get(k, "") for k in keys),
                 row["engine"], str(row["agree"]).lower()]
            )
    else:
        items = " ".join(f"{k}={v}" for k, v in params.items() if v is not None)
        stream.write(f"# {items}\n")
        for row in rows:
            vals = "  ".join(f"{k}: {v}" for k, v in sorted(row["values"].items()))
            stream.write(f"n={row['n']}  {vals}  engine={row['engine']} agree={str(row['agree']).lower()}\n")


def _report_disagreement(disagreement):
    n, key, seen = disagreement
    detail = ", ".join(f"{eng}={val}" for eng, val in sorted(seen.items()))
    print(f"engine disagreement at n={n}, {key}: {detail}", file=sys.stderr)


# -- per-command helpers ---------------------------------------------------------


def _resolve_modulus(args) -> int:
    if getattr(args, "modulus", None) is not None:
        if args.modulus < 2:
            raise CliError("--modulus must be >= 2")
        return args.modulus
    if getattr(args, "p", None) is not None:
        if args.r is None:
            raise CliError("--p requires --r")
        return args.p**args.r
    raise CliError("a modulus is required (--modulus N or --p P --r R)")


def _target_matrix(ctx, entries) -> Mat2:
    A = Mat2.of(ctx, *entries)
    if A.det().value != 1:
        raise CliError(
            f"target {tuple(entries)} has det = {A.det().value} (mod {ctx.modulus}); "
            "only det-1 targets are reachable"
        )
    return A


def _engines(requested: str, applicable: dict):
    if requested == "all":
        return applicable
    if requested not in applicable:
        raise CliError(f"engine '{requested}' does not apply to this command")
    return {requested: applicable[requested]}


def cmd_count(args) -> int:
    N = _resolve_modulus(args)
    ctx = ring(N)
    if args.n < 1:
        raise CliError("--n must be >= 1")
    if (args.epsilon is None) == (args.target is None):
        raise CliError("count needs exactly one of --epsilon or --target")
    rows = []
    if args.epsilon is not None:
        eps = args.epsilon
        applicable = {
            "formula": lambda: count_quiddity_formula(N, args.n, eps).value,
            "oracle": lambda: oracle.count_quiddity(ctx, args.n, eps),
        }
        if args.engine == "recursion":
            raise CliError("the recursion engine applies to targets, sigma, pi and tau; "
                           "use formula/oracle for epsilon counts")
        per_engine = {eng: {"count": fn()} for eng, fn in _engines(args.engine, applicable).items()}
    else:
        A = _target_matrix(ctx, args.target)

        def by_recursion():
            if not ctx.is_prime_power:
                raise CliError("the recursion engine needs a prime-power modulus; "
                               "CRT-split composite moduli first")
            table = recursion.pi_recursive(ctx, A, max(args.n, 3))
            return table.row_total(args.n)

        applicable = {
            "oracle": lambda: oracle.count_all_targets(ctx, args.n)[A],
            "recursion": by_recursion,
        }
        if args.engine == "formula":
            raise CliError("no closed formula is available for an arbitrary target; "
                           "use oracle/recursion")
        per_engine = {eng: {"count": fn()} for eng, fn in _engines(args.engine, applicable).items()}
    row, disagreement = _merge_engines(args.n, per_engine)
    rows.append(row)
    _emit(vars_of(args, modulus=N), rows, args.output)
    if disagreement:
        _report_disagreement(disagreement)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_sigma(args) -> int:
    if args.p is None or args.r is None:
        raise CliError("sigma needs --p and --r")
    p, r = args.p, args.r
    if args.n % 2 == 1:
        raise CliError("sigma counts exist only for even lengths")
    ctx = ring(p**r)
    levels = range(1, r + 1) if args.ell is None else (args.ell,)
    for level in levels:
        if not 1 <= level <= r:
            raise CliError(f"--ell must be in [1, {r}]")
    table_rec = None

    def recursion_value(level):
        nonlocal table_rec
        if table_rec is None:
            table_rec = recursion.sigma_recursive(p, r, max(args.n, 4))
        return table_rec.value(args.n, level)

    applicable = {
        "formula": lambda level: sigma_closed(p, r, args.n, level),
        "recursion": recursion_value,
        "oracle": lambda level: oracle.count_sigma(ctx, args.n, level),
    }
    per_engine = {
        eng: {f"ell={level}": fn(level) for level in levels}
        for eng, fn in _engines(args.engine, applicable).items()
    }
    row, disagreement = _merge_engines(args.n, per_engine)
    _emit(vars_of(args, modulus=p**r), [row], args.output)
    if disagreement:
        _report_disagreement(disagreement)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_pi(args) -> int:
    N = _resolve_modulus(args)
    ctx = ring(N)
    if not ctx.is_prime_power:
        raise CliError("pi counts need a prime-power modulus")
    A = _target_matrix(ctx, args.target)
    if args.n < 3:
        raise CliError("pi counts need n >= 3")

    def by_recursion():
        table = recursion.pi_recursive(ctx, A, max(args.n, 3))
        return {f"u={u}": v for u, v in table.rows[args.n].items()}

    applicable = {
        "recursion": by_recursion,
        "oracle": lambda: {f"u={u}": v for u, v in oracle.count_fixed_second(ctx, args.n, A).items()},
    }
    if args.engine == "formula":
        raise CliError("no closed formula is exposed for pi counts; use recursion/oracle")
    per_engine = {eng: fn() for eng, fn in _engines(args.engine, applicable).items()}
    row, disagreement = _merge_engines(args.n, per_engine)
    _emit(vars_of(args, modulus=N), [row], args.output)
    if disagreement:
        _report_disagreement(disagreement)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_tau(args) -> int:
    N = _resolve_modulus(args)
    ctx = ring(N)
    if not ctx.is_prime_power:
        raise CliError("tau counts need a prime-power modulus")
    A = _target_matrix(ctx, args.target)
    if args.n < 3:
        raise CliError("tau counts need n >= 3")
    units = set(ctx.units())

    applicable = {
        "recursion": lambda: {"tau": recursion.tau_recursive(ctx, A, args.n)[args.n]},
        "oracle": lambda: {
            "tau": sum(v for u, v in oracle.count_fixed_second(ctx, args.n, A).items() if u in units)
        },
    }
    if args.engine == "formula":
        raise CliError("no closed formula is exposed for tau; use recursion/oracle")
    per_engine = {eng: fn() for eng, fn in _engines(args.engine, applicable).items()}
    row, disagreement = _merge_engines(args.n, per_engine)
    _emit(vars_of(args, modulus=N), [row], args.output)
    if disagreement:
        _report_disagreement(disagreement)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_table(args) -> int:
    if args.n_from < 1:
        raise CliError("--n-from must be >= 1")
    if args.n_from > args.n_to:
        raise CliError("--n-from must not exceed --n-to")
    rows = []
    first_disagreement = None
    if args.kind == "quiddity":
        N = _resolve_modulus(args)
        ctx = ring(N)
        applicable = {
            "formula": lambda n, eps: count_quiddity_formula(N, n, eps).value,
            "oracle": lambda n, eps: oracle.count_quiddity(ctx, n, eps),
        }
        if args.engine == "recursion":
            raise CliError("the recursion engine does not apply to quiddity tables")
        engines = _engines(args.engine, applicable)
        for n in range(args.n_from, args.n_to + 1):
            per_engine = {
                eng: {f"eps={eps}": fn(n, eps) for eps in (1, -1)}
                for eng, fn in engines.items()
            }
            row, disagreement = _merge_engines(n, per_engine)
            rows.append(row)
            first_disagreement = first_disagreement or disagreement
        params = vars_of(args, modulus=N)
    else:  # sigma table
        if args.p is None or args.r is None:
            raise CliError("sigma tables need --p and --r")
        p, r = args.p, args.r
        ns = [n for n in range(args.n_from, args.n_to + 1) if n % 2 == 0]
        if not ns:
            raise CliError("no even lengths in the requested range")
        ctx = ring(p**r)
        table_rec = None

        def recursion_value(n, level):
            nonlocal table_rec
            if table_rec is None:
                table_rec = recursion.sigma_recursive(p, r, max(ns))
            return table_rec.value(n, level)

        applicable = {
            "formula": lambda n, level: sigma_closed(p, r, n, level),
            "recursion": recursion_value,
            "oracle": lambda n, level: oracle.count_sigma(ctx, n, level),
        }
        engines = _engines(args.engine, applicable)
        for n in ns:
            per_engine = {
                eng: {f"ell={level}": fn(n, level) for level in range(1, r + 1)}
                for eng, fn in engines.items()
            }
            row, disagreement = _merge_engines(n, per_engine)
            rows.append(row)
            first_disagreement = first_disagreement or disagreement
        params = vars_of(args, modulus=p**r)
    _emit(params, rows, args.output)
    if first_disagreement:
        _report_disagreement(first_disagreement)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_verify(args) -> int:
    names = [name for name, _ in verify.ALL_SUITES]
    if args.list:
        print("\n".join(names))
        return EXIT_OK
    selected = names if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in names:
        raise CliError(f"unknown suite {args.suite!r}; --list shows the available ones")
    failed = False
    for name, fn in verify.ALL_SUITES:
        if name not in selected:
            continue
        if fn in (verify.suite_reduction_identities, verify.suite_rational_identities):
            result = fn(seed=args.seed)
        else:
            result = fn()
        print(result.summary())
        failed = failed or not result.passed
    return EXIT_DISAGREE if failed else EXIT_OK


# -- argument plumbing -----------------------------------------------------------


def vars_of(args, **extra) -> dict:
    skip = {"func", "output"}
    out = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    out.update(extra)
    if "target" in out:
        out["target"] = list(out["target"])
    return out


def _add_modulus_args(sub):
    sub.add_argument("--modulus", type=int, help="modulus N of Z/N")
    sub.add_argument("--p", type=int, help="prime, together with --r")
    sub.add_argument("--r", type=int, help="exponent, together with --p")


def build_parser() -> Parser:
    parser = Parser(prog="quiddity", description=__doc__,
                    formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    def common(sub, engines_default):
        sub.add_argument("--engine", choices=("formula", "recursion", "oracle", "all"),
                         default=engines_default)
        sub.add_argument("--output", choices=("json", "csv", "plain"), default="plain")

    c = subs.add_parser("count", help="count solutions of bracket = eps*Id or = A")
    _add_modulus_args(c)
    c.add_argument("--n", type=int, required=True, help="sequence length")
    c.add_argument("--epsilon", type=int, choices=(1, -1), help="scalar target eps*Id")
    c.add_argument("--target", type=int, nargs=4, metavar=("A", "B", "C", "D"),
                   help="explicit target matrix, row-major")
    common(c, "formula")
    c.set_defaults(func=cmd_count)

    s = subs.add_parser("sigma", help="all-ideal-entry counts over Z/p^r")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--n", type=int, required=True, help="even sequence length")
    s.add_argument("--ell", type=int, help="level in [1, r]; all levels if omitted")
    common(s, "formula")
    s.set_defaults(func=cmd_sigma)

    p = subs.add_parser("pi", help="counts split by the second entry")
    _add_modulus_args(p)
    p.add_argument("--target", type=int, nargs=4, required=True, metavar=("A", "B", "C", "D"))
    p.add_argument("--n", type=int, required=True)
    common(p, "recursion")
    p.set_defaults(func=cmd_pi)

    t = subs.add_parser("tau", help="unit-second-entry totals")
    _add_modulus_args(t)
    t.add_argument("--target", type=int, nargs=4, required=True, metavar=("A", "B", "C", "D"))
    t.add_argument("--n", type=int, required=True)
    common(t, "recursion")
    t.set_defaults(func=cmd_tau)

    g = subs.add_parser("table", help="grids over a length range")
    g.add_argument("--kind", choices=("quiddity", "sigma"), required=True)
    _add_modulus_args(g)
    g.add_argument("--n-from", type=int, required=True)
    g.add_argument("--n-to", type=int, required=True)
    common(g, "formula")
    g.set_defaults(func=cmd_table)

    v = subs.add_parser("verify", help="run the cross-verification suites")
    v.add_argument("--suite", default="all", help="suite name, or 'all'")
    v.add_argument("--seed", type=int, default=verify.DEFAULT_SEED,
                   help="seed for the sampled identity checks")
    v.add_argument("--list", action="store_true", help="list suite names and exit")
    v.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, UnsupportedRingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

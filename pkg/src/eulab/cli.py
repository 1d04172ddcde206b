"""Command-line verification harness and table emitter.

    eulab verify <identity|all> [--max-n N] [--k K] [--json]
    eulab table <name> --n N [--k K] --format {json,csv}
    eulab expand <basis> [--n N] [--var V]    (reads Poly JSON on stdin)

Exit codes: 0 pass, 1 identity failure, 2 usage, 3 size guard exceeded,
4 parse or precondition error.  Table and expand output is byte-identical
across identical invocations; verify output includes wall times, which are
the one intentionally non-reproducible field.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import expand as expand_mod
from . import identities, permstats, stirlingperm, trees
from .errors import (
    EngineError,
    OutOfRangeError,
    PolyParseError,
    SizeLimitError,
    UnknownIdentityError,
)
from .exactalg import Poly

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SIZE_GUARD = 3
EXIT_PARSE = 4

TABLE_NAMES = (
    "eulerian",
    "trivariate",
    "second-order",
    "kth-order",
    "gamma-nij",
    "gamma-histogram",
    "andre",
)


def _dump(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.identity == "all":
        reports = identities.verify_all(args.max_n, args.k)
    else:
        reports = [identities.verify(args.identity, args.max_n, args.k)]
    if args.json:
        print(_dump([r.to_obj() for r in reports]))
    else:
        for r in reports:
            params = ", ".join(f"{k}={v}" for k, v in r.params.items() if v is not None)
            print(f"{r.name}: {r.status.upper()} ({params}) [{r.seconds:.2f}s]")
            if r.note:
                print(f"  note: {r.note}")
            if r.counterexample is not None:
                print(f"  counterexample: {_dump(r.counterexample)}")
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def _integer_table_rows(name: str, n: int, k: int | None) -> tuple[tuple[str, ...], list[tuple]]:
    if name == "eulerian":
        rows = [
            (m, j, permstats.triangle("eulerian", m, j))
            for m in range(n + 1)
            for j in range(m + 1)
            if permstats.triangle("eulerian", m, j)
        ]
        return ("n", "k", "value"), rows
    if name == "second-order":
        rows = [
            (m, j, permstats.triangle("second-order-eulerian", m, j))
            for m in range(n + 1)
            for j in range(m + 1)
            if permstats.triangle("second-order-eulerian", m, j)
        ]
        return ("n", "k", "value"), rows
    if name == "gamma-nij":
        table = expand_mod.gamma_tables("gamma-nij", n)
        rows = [key + (v,) for key, v in sorted(table.values.items())]
        return ("n", "i", "j", "value"), rows
    if name == "gamma-histogram":
        table = expand_mod.gamma_tables("gamma-n-histogram", n)
        rows = [(key[0], list(key[1:]), v) for key, v in sorted(table.values.items())]
        return ("n", "index", "value"), rows
    raise ValueError(f"{name!r} is not an integer table")


def _poly_table(name: str, n: int, k: int | None) -> Poly:
    if name == "trivariate":
        return permstats.perm_poly(n, "trivariate")
    if name == "kth-order":
        if k is None:
            raise ValueError("kth-order table requires --k")
        return stirlingperm.kth_order_poly(n, k)
    if name == "andre":
        return trees.tree_weight_poly(n, "andre")
    raise ValueError(f"{name!r} is not a polynomial table")


def _cmd_table(args: argparse.Namespace) -> int:
    name, n, k = args.name, args.n, args.k
    if name in ("eulerian", "second-order", "gamma-nij", "gamma-histogram"):
        header, rows = _integer_table_rows(name, n, k)
        if args.format == "csv":
            print(",".join(header))
            for row in rows:
                *index, value = row
                cells = [
                    f'"{" ".join(map(str, c))}"' if isinstance(c, list) else str(c)
                    for c in index
                ]
                print(",".join(cells + [f'"{value}"']))
        else:
            print(_dump([dict(zip(header[:-1], row[:-1])) | {"value": str(row[-1])} for row in rows]))
        return EXIT_PASS
    poly = _poly_table(name, n, k)
    if args.format == "csv":
        print("monomial,coeff")
        for mono, coeff in poly.sorted_terms():
            text = "*".join(f"{v}^{e}" if e > 1 else v for v, e in mono) or "1"
            print(f'{text},"{coeff}"')
    else:
        print(poly.to_json())
    return EXIT_PASS


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------


def _cmd_expand(args: argparse.Namespace) -> int:
    poly = Poly.from_json(sys.stdin.read())
    basis = args.basis
    if basis in ("gamma", "frobenius"):
        var = args.var or "x"
        n = args.n if args.n is not None else poly.degree_in(var)
        if basis == "gamma":
            expansion = expand_mod.gamma_expand(poly, var, n)
        else:
            expansion = expand_mod.frobenius_expand(poly, var, n)
    elif basis == "partial-gamma":
        n = args.n if args.n is not None else poly.total_degree()
        expansion = expand_mod.partial_gamma_expand(poly, n)
    else:  # esym
        variables = poly.variables()
        expansion = expand_mod.esym_expand(poly, variables)
    out: dict = {
        "basis": expansion.basis,
        "coeffs": [
            {"index": list(key), "coeff": str(c)} for key, c in expansion.sorted_items()
        ],
    }
    if expansion.n is not None:
        out["n"] = expansion.n
    if expansion.var is not None:
        out["var"] = expansion.var
    if expansion.variables:
        out["variables"] = list(expansion.variables)
        out["e_positive"] = expansion.is_positive()
    print(_dump(out))
    return EXIT_PASS


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulab",
        description="Exact verification harness for Eulerian-type polynomial identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run one catalog identity (or all)")
    p_verify.add_argument("identity", help=f"identity name or 'all'; known: {', '.join(identities.IDENTITY_NAMES)}")
    p_verify.add_argument("--max-n", type=int, default=None, dest="max_n")
    p_verify.add_argument("--k", type=int, default=None)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(fn=_cmd_verify)

    p_table = sub.add_parser("table", help="emit a polynomial or integer table")
    p_table.add_argument("name", choices=TABLE_NAMES)
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--k", type=int, default=None)
    p_table.add_argument("--format", choices=("json", "csv"), default="json")
    p_table.set_defaults(fn=_cmd_table)

    p_expand = sub.add_parser("expand", help="expand a Poly (JSON on stdin) in a basis")
    p_expand.add_argument("basis", choices=expand_mod.BASES)
    p_expand.add_argument("--n", type=int, default=None)
    p_expand.add_argument("--var", default=None)
    p_expand.set_defaults(fn=_cmd_expand)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UnknownIdentityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SizeLimitError, OutOfRangeError) as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_SIZE_GUARD
    except (PolyParseError, EngineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

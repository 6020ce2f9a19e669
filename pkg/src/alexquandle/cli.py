"""Command-line interface.

Module specs:
    linear:n:a          Z_n with t = multiplication by a, gcd(n, a) = 1
    poly:n:c0,c1,...,1  Z_n[t] / (c0 + c1 t + ... + t^d), ascending, monic
    sum:<spec>+<spec>   direct sum of two or more non-sum specs
    pair:@file.json     {"invariant_factors": [...], "t_generator_images": [[...], ...]}
    table:@file         a raw table, JSON {"order": n, "table": [[...]]} or
                        whitespace-separated rows

Exit codes: 0 predicate true / success, 1 predicate false or axiom failure,
2 malformed spec or usage, 3 invalid input values, 4 internal disagreement
between deciders.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .abelian import AbelianGroup
from .classify import (
    DEFAULT_MAX_ORDER,
    classify_order,
    count_table,
    table1_report,
)
from .lambda_module import (
    LambdaModule,
    Polynomial,
    descriptor_str,
    identify_as_quotient,
    image_one_minus_t,
    linear_module,
    module_from_json_dict,
    module_from_polynomial,
    direct_sum_all,
)
from .linear import linear_connected, linear_dual, linear_iso, linear_self_dual, n_cap
from .quandle import (
    QuandleTable,
    alexander_table,
    brute_iso,
    check_axioms,
    construct_quandle_iso,
    dual,
    is_connected,
    orbits,
    table_from_json_dict,
    table_from_text,
    table_to_json_dict,
    table_to_text,
    theorem1_iso,
)


class SpecParseError(ValueError):
    """A spec string that cannot be parsed; position is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _parse_int(token: str, position: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise SpecParseError(f"expected an integer, got {token!r}", position) from None


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None


def parse_spec(text: str, base: int = 0):
    """Parse a spec string into a LambdaModule or QuandleTable.

    SpecParseError (syntax, with offending position) is distinct from
    ValueError (well-formed but invalid values, e.g. gcd(n, a) != 1).
    """
    if text.startswith("linear:"):
        body = text[7:]
        parts = body.split(":")
        if len(parts) != 2:
            raise SpecParseError("linear spec needs exactly linear:n:a", base + 7)
        n = _parse_int(parts[0], base + 7)
        a = _parse_int(parts[1], base + 8 + len(parts[0]))
        return linear_module(n, a)
    if text.startswith("poly:"):
        body = text[5:]
        parts = body.split(":")
        if len(parts) != 2:
            raise SpecParseError("poly spec needs exactly poly:n:c0,c1,...", base + 5)
        n = _parse_int(parts[0], base + 5)
        coeff_base = base + 6 + len(parts[0])
        coeffs = []
        offset = 0
        for token in parts[1].split(","):
            coeffs.append(_parse_int(token, coeff_base + offset))
            offset += len(token) + 1
        return module_from_polynomial(Polynomial(n, tuple(coeffs)))
    if text.startswith("sum:"):
        body = text[4:]
        offset = base + 4
        modules = []
        for comp in body.split("+"):
            if comp.startswith("sum:"):
                raise SpecParseError("sum components cannot be sums", offset)
            if not comp:
                raise SpecParseError("empty sum component", offset)
            part = parse_spec(comp, offset)
            if not isinstance(part, LambdaModule):
                raise SpecParseError("sum components must be modules", offset)
            modules.append(part)
            offset += len(comp) + 1
        if len(modules) < 2:
            raise SpecParseError("sum needs at least two components", base + 4)
        return direct_sum_all(modules)
    if text.startswith("pair:"):
        body = text[5:]
        if not body.startswith("@"):
            raise SpecParseError("pair spec takes a file: pair:@file.json", base + 5)
        try:
            data = json.loads(_read_file(body[1:]))
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad JSON in {body[1:]}: {exc}") from None
        return module_from_json_dict(data)
    if text.startswith("table:"):
        body = text[6:]
        if not body.startswith("@"):
            raise SpecParseError("table spec takes a file: table:@file", base + 6)
        raw = _read_file(body[1:])
        if raw.lstrip().startswith("{"):
            try:
                return table_from_json_dict(json.loads(raw))
            except json.JSONDecodeError as exc:
                raise ValueError(f"bad JSON in {body[1:]}: {exc}") from None
        return table_from_text(raw)
    raise SpecParseError(
        "spec must start with linear:, poly:, sum:, pair:@, or table:@", base
    )


def _as_table(thing) -> QuandleTable:
    if isinstance(thing, QuandleTable):
        bad = check_axioms(thing)
        if bad is not None:
            axiom, witness = bad
            raise ValueError(
                f"table violates quandle axiom ({axiom}) at {witness}"
            )
        return thing
    return alexander_table(thing)


def _emit_table(table: QuandleTable, args) -> None:
    if args.format == "text":
        out = table_to_text(table) + "\n"
    else:
        out = json.dumps(table_to_json_dict(table)) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _max_order() -> int:
    raw = os.environ.get("QUANDLE_MAX_ORDER", "")
    if not raw:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"QUANDLE_MAX_ORDER must be an integer, got {raw!r}") from None


def _cmd_build(args) -> int:
    module = parse_spec(args.spec)
    table = _as_table(module)
    _emit_table(table, args)
    return 0


def _cmd_axioms(args) -> int:
    thing = parse_spec(args.spec)
    table = thing if isinstance(thing, QuandleTable) else alexander_table(thing)
    bad = check_axioms(table)
    if bad is None:
        print("pass")
        return 0
    axiom, witness = bad
    print(f"axiom ({axiom}) fails at {witness}")
    return 1


def _cmd_iso(args) -> int:
    left, right = parse_spec(args.left), parse_spec(args.right)
    modules = isinstance(left, LambdaModule) and isinstance(right, LambdaModule)
    if args.method in ("theorem1", "both") and not modules:
        raise ValueError("--method theorem1 and both need module specs, not tables")
    witness = None
    if args.method == "theorem1":
        verdict = theorem1_iso(left, right)
        if verdict and args.witness:
            witness = construct_quandle_iso(left, right)
    elif args.method == "brute":
        witness = brute_iso(_as_table(left), _as_table(right))
        verdict = witness is not None
    else:
        verdict = theorem1_iso(left, right)
        brute = brute_iso(_as_table(left), _as_table(right))
        if verdict != (brute is not None):
            print(
                "internal error: theorem1 and brute-force deciders disagree on "
                f"{args.left} vs {args.right}",
                file=sys.stderr,
            )
            return 4
        witness = brute
    print("true" if verdict else "false")
    if verdict and args.witness:
        if witness is None:
            witness = construct_quandle_iso(left, right)
        print(" ".join(str(v) for v in witness.map))
    return 0 if verdict else 1


def _cmd_dual(args) -> int:
    table = _as_table(parse_spec(args.spec))
    d = dual(table)
    if args.self_check and dual(d).rows != table.rows:
        print("internal error: dual is not an involution", file=sys.stderr)
        return 4
    _emit_table(d, args)
    return 0


def _cmd_orbits(args) -> int:
    table = _as_table(parse_spec(args.spec))
    orbs = orbits(table)
    if args.format == "json":
        print(json.dumps({"orbits": orbs, "connected": len(orbs) == 1}))
    else:
        for orb in orbs:
            print(" ".join(str(x) for x in orb))
        print(f"connected: {'true' if len(orbs) == 1 else 'false'}")
    return 0


def _cmd_im1t(args) -> int:
    module = parse_spec(args.spec)
    if not isinstance(module, LambdaModule):
        raise ValueError("im1t needs a module spec, not a table")
    sub = image_one_minus_t(module, args.power)
    info = {
        "members": list(sub.member_indices),
        "invariant_factors": list(sub.as_module.group.invariant_factors),
    }
    if args.identify:
        desc = identify_as_quotient(sub.as_module)
        info["identified"] = None if desc is None else descriptor_str(desc)
    if args.format == "json":
        print(json.dumps(info))
    else:
        print("members:", " ".join(str(x) for x in sub.member_indices))
        print("group:", ",".join(str(d) for d in info["invariant_factors"]) or "1")
        if args.identify:
            print("identified:", info["identified"] or "none")
    return 0


def _cmd_linear(args) -> int:
    if args.linear_cmd == "ncap":
        print(n_cap(args.n, args.a))
        return 0
    if args.linear_cmd == "iso":
        verdict = linear_iso(args.n, args.a, args.b)
    elif args.linear_cmd == "connected":
        verdict = linear_connected(args.n, args.a)
    elif args.linear_cmd == "dual":
        verdict = linear_dual(args.n, args.a, args.b)
    else:
        verdict = linear_self_dual(args.n, args.a)
    print("true" if verdict else "false")
    return 0 if verdict else 1


def _check_guard(n: int) -> None:
    guard = _max_order()
    if n > guard:
        raise ValueError(
            f"order {n} exceeds the guard {guard}; raise QUANDLE_MAX_ORDER to allow"
        )


def _cmd_classify(args) -> int:
    _check_guard(args.order)
    report = classify_order(args.order, allow_large=args.order > DEFAULT_MAX_ORDER)
    classes = [c for c in report.classes if c.connected or not args.connected_only]
    if args.format == "json":
        data = report.to_json_dict()
        if args.connected_only:
            data["classes"] = [c for c in data["classes"] if c["connected"]]
        print(json.dumps(data))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["representative", "connected", "class_size_in_enumeration"])
        for c in classes:
            writer.writerow(
                [
                    descriptor_str(c.representative),
                    str(c.connected).lower(),
                    c.class_size_in_enumeration,
                ]
            )
    else:
        print(
            f"order {report.order}: {report.distinct_count} distinct, "
            f"{report.connected_count} connected"
        )
        for c in classes:
            flag = "connected" if c.connected else "not connected"
            print(
                f"  {descriptor_str(c.representative):<40} {flag:<14} "
                f"size {c.class_size_in_enumeration}"
            )
    return 0


def _cmd_table1(args) -> int:
    rows = table1_report()
    if args.format == "json":
        print(
            json.dumps(
                [
                    {
                        "group": list(group),
                        "module": descriptor_str(desc),
                        "image": descriptor_str(img),
                    }
                    for group, desc, img in rows
                ]
            )
        )
    else:
        for group, desc, img in rows:
            label = "+".join(f"Z{d}" for d in group)
            print(f"{label:<10} {descriptor_str(desc):<44} -> {descriptor_str(img)}")
    return 0


def _cmd_table2(args) -> int:
    _check_guard(args.max)
    rows = count_table(args.max, allow_large=args.max > DEFAULT_MAX_ORDER)
    if args.format == "json":
        print(
            json.dumps(
                [
                    {"order": n, "distinct": d, "connected": c}
                    for n, d, c in rows
                ]
            )
        )
    elif args.format == "csv":
        print("n,distinct,connected")
        for n, d, c in rows:
            print(f"{n},{d},{c}")
    else:
        print(f"{'n':>3} {'distinct':>9} {'connected':>10}")
        for n, d, c in rows:
            print(f"{n:>3} {d:>9} {c:>10}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alexquandle",
        description="Finite Alexander quandles: build, test, classify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, *, csv=False):
        choices = ["text", "json"] + (["csv"] if csv else [])
        p.add_argument("--format", choices=choices, default="text")

    p = sub.add_parser("build", help="emit the Cayley table of a module spec")
    p.add_argument("spec")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.add_argument("--format", choices=["text", "json"], default="json")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("axioms", help="check the quandle axioms")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_axioms)

    p = sub.add_parser("iso", help="decide isomorphism of two quandles")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument(
        "--method", choices=["theorem1", "brute", "both"], default="theorem1"
    )
    p.add_argument(
        "--witness", action="store_true", help="print an explicit bijection"
    )
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("dual", help="emit the dual table")
    p.add_argument("spec")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=["text", "json"], default="json")
    p.add_argument("--self-check", action="store_true")
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("orbits", help="list orbits and connectivity")
    p.add_argument("spec")
    add_format(p)
    p.set_defaults(func=_cmd_orbits)

    p = sub.add_parser("im1t", help="the Im(1-t) submodule of a module spec")
    p.add_argument("spec")
    p.add_argument("--power", type=int, choices=[1, 2], default=1)
    p.add_argument("--identify", action="store_true")
    add_format(p)
    p.set_defaults(func=_cmd_im1t)

    p = sub.add_parser("linear", help="closed-form linear quandle predicates")
    lsub = p.add_subparsers(dest="linear_cmd", required=True)
    for name, nargs in (
        ("iso", 3),
        ("connected", 2),
        ("dual", 3),
        ("selfdual", 2),
        ("ncap", 2),
    ):
        lp = lsub.add_parser(name)
        lp.add_argument("n", type=int)
        lp.add_argument("a", type=int)
        if nargs == 3:
            lp.add_argument("b", type=int)
        lp.set_defaults(func=_cmd_linear)

    p = sub.add_parser("classify", help="classify all quandles of one order")
    p.add_argument("order", type=int)
    p.add_argument("--connected-only", action="store_true")
    add_format(p, csv=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("table1", help="reference module/image identifications")
    add_format(p)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("table2", help="distinct/connected counts per order")
    p.add_argument("--max", type=int, default=DEFAULT_MAX_ORDER)
    add_format(p, csv=True)
    p.set_defaults(func=_cmd_table2)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

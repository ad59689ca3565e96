"""Command-line entry point.

Every command prints one JSON object ``{"status", "payload"[, "trace"]}``.
Exit codes: 0 ok, 1 no (a decision answered false), 2 usage, 3 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import demo, orders, quadform, quaternion, symbols
from .algebra import MultiplicationTable
from .arith import INF, Place, format_rational, to_rational
from .errors import (
    NoStandardInvolutionError,
    QuatringError,
    SingularNormError,
)
from .trace import recording

EXIT = {"ok": 0, "no": 1, "usage": 2, "error": 3}


@dataclass
class CommandResult:
    status: str
    payload: object = None
    trace: list | None = field(default=None)

    def to_json(self) -> dict:
        out = {"status": self.status, "payload": self.payload}
        if self.trace is not None:
            out["trace"] = self.trace
        return out

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(s: str):
    try:
        return to_rational(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from exc


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _val(v):
    return "inf" if v == INF else v


def _vec(v):
    return [format_rational(x) for x in v]


# -- commands ---------------------------------------------------------------


def cmd_recognize(args):
    table = MultiplicationTable.from_json(_read_json(args.table))
    try:
        rec = quaternion.recognize(table)
    except NoStandardInvolutionError as exc:
        return CommandResult("no", {"reason": exc.code, "message": str(exc)})
    except SingularNormError as exc:
        return CommandResult("no", {"reason": exc.code, "message": str(exc),
                                    "radical": [_vec(v) for v in exc.radical]})
    B = rec.algebra
    return CommandResult("ok", {
        "algebra": B.to_json(),
        "i": _vec(rec.i),
        "j": _vec(rec.j),
        "ramified": [str(v) for v in symbols.ramified_set(B.a, B.b)],
    })


def cmd_normalize(args):
    form = quadform.QuadraticForm.from_json(_read_json(args.form))
    ring = quadform.LocalRing.parse(args.p)
    dec = quadform.normalize(form, ring)
    return CommandResult("ok", {
        "ring": str(ring),
        "basis": [_vec(v) for v in dec.basis],
        "blocks": [{"kind": b.kind, "valuation": _val(b.valuation), "coeffs": _vec(b.coeffs)}
                   for b in dec.blocks],
        "form": dec.block_form().to_json(),
    })


def cmd_hilbert(args):
    if args.v == "all":
        ok, syms = symbols.reciprocity_check(args.a, args.b)
        prod = 1
        for s in syms.values():
            prod *= s
        return CommandResult("ok", {"symbols": {str(v): s for v, s in syms.items()},
                                    "product": prod})
    value = symbols.hilbert(args.a, args.b, Place.parse(args.v))
    return CommandResult("ok", {"place": args.v, "value": value})


def cmd_jacobi(args):
    return CommandResult("ok", symbols.jacobi(args.a, args.b))


def cmd_ramified(args):
    ram = symbols.ramified_set(args.a, args.b)
    return CommandResult("ok", {
        "ramified": [str(v) for v in ram],
        "discriminant": symbols.algebra_discriminant(args.a, args.b),
        "split": not ram,
    })


def _split(B: quaternion.QuaternionAlgebra, height: int):
    point = quaternion.find_isotropic_naive(quaternion.conic_of(B), height)
    if point is None:
        return None
    x = B.element((0,) + tuple(point))
    e = quaternion.nilpotent_from_zerodivisor(x)
    return quaternion.split_from_nilpotent(B, e)


def cmd_split(args):
    B = quaternion.QuaternionAlgebra(args.a, args.b)
    if not symbols.is_matrix_ring_global(B.a, B.b):
        return CommandResult("no", {"ramified": [str(v) for v in symbols.ramified_set(B.a, B.b)]})
    data = _split(B, args.H)
    if data is None:
        raise QuatringError(f"no isotropic vector of height at most {args.H}")
    return CommandResult("ok", data.to_json())


def cmd_conic(args):
    B = quaternion.QuaternionAlgebra(args.a, args.b)
    C = quaternion.conic_of(B)
    point = quaternion.find_isotropic_naive(C, args.H)
    payload = {"coefficients": _vec(C.form.q), "point": list(point) if point else None}
    return CommandResult("ok" if point else "no", payload)


def cmd_conicpoint(args):
    C = quaternion.Conic.diagonal(args.c1, args.c2, args.c3)
    point = quaternion.conic_point_mod_p(C, args.p, args.seed)
    return CommandResult("ok", {"p": args.p, "point": list(point)})


def _order_payload(O):
    d = orders.discriminant(O)
    return {"order": O.to_json(), "disc": str(d.disc), "reduced": str(d.reduced)}


def _load_order(args):
    if getattr(args, "standard", False):
        if args.a is None or args.b is None:
            raise UsageError("--standard needs -a and -b")
        return orders.standard_order(quaternion.QuaternionAlgebra(args.a, args.b))
    if not args.order:
        raise UsageError("an order file or --standard is required")
    return orders.Order.from_json(_read_json(args.order))


def cmd_maxorder(args):
    O = orders.max_order(_load_order(args))
    return CommandResult("ok", _order_payload(O))


def cmd_ismaximal(args):
    O = _load_order(args)
    d = orders.discriminant(O).reduced
    D = symbols.algebra_discriminant(O.algebra.a, O.algebra.b)
    return CommandResult("ok" if d == D else "no", {"reduced": str(d), "algebra_discriminant": str(D)})


def cmd_disc(args):
    d = orders.discriminant(_load_order(args))
    return CommandResult("ok", {"disc": str(d.disc), "reduced": str(d.reduced)})


def cmd_demo_factor(args):
    f = demo.factor_via_maxorder(args.n, args.seed)
    return CommandResult("ok", {"n": str(args.n), "factor": str(f)})


def cmd_demo_residuosity(args):
    direct = demo.quadratic_residuosity(args.a, args.b)
    split = demo.residuosity_via_splitting(args.a, args.b, args.seed)
    return CommandResult("ok" if split else "no", {"direct": direct, "via_splitting": split})


# -- parser -----------------------------------------------------------------


def _default_seed() -> int:
    return int(os.environ.get("QUATRING_SEED", "0"))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--trace", action="store_true", help="echo algorithm steps")
    common.add_argument("--seed", type=int, default=_default_seed())

    parser = _Parser(prog="quatring", description="Quaternion algebras over Q", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, help=help, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("recognize", cmd_recognize, "recognize a quaternion algebra from a table")
    p.add_argument("table")

    p = add("normalize", cmd_normalize, "normalize a quadratic form")
    p.add_argument("form")
    p.add_argument("-p", default="Q", help="prime or Q")

    p = add("hilbert", cmd_hilbert, "Hilbert symbol")
    p.add_argument("-a", type=_rational, required=True)
    p.add_argument("-b", type=_rational, required=True)
    p.add_argument("-v", default="all", help="prime, inf or all")

    p = add("jacobi", cmd_jacobi, "Jacobi symbol")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)

    p = add("ramified", cmd_ramified, "ramified places")
    p.add_argument("-a", type=_rational, required=True)
    p.add_argument("-b", type=_rational, required=True)

    p = add("split", cmd_split, "explicit isomorphism with M_2(Q)")
    p.add_argument("-a", type=_rational, required=True)
    p.add_argument("-b", type=_rational, required=True)
    p.add_argument("-H", type=int, default=10**4, help="height bound")

    p = add("conic", cmd_conic, "conic of an algebra and a rational point")
    p.add_argument("-a", type=_rational, required=True)
    p.add_argument("-b", type=_rational, required=True)
    p.add_argument("-H", type=int, default=10**4, help="height bound")

    p = add("conicpoint", cmd_conicpoint, "point on a diagonal conic mod p")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("c1", type=_rational)
    p.add_argument("c2", type=_rational)
    p.add_argument("c3", type=_rational)

    for name, func, help in (
        ("maxorder", cmd_maxorder, "maximal order containing an order"),
        ("ismaximal", cmd_ismaximal, "test maximality"),
        ("disc", cmd_disc, "discriminant of an order"),
    ):
        p = add(name, func, help)
        p.add_argument("order", nargs="?")
        p.add_argument("--standard", action="store_true", help="use Z<1,i,j,ij> in (a, b | Q)")
        p.add_argument("-a", type=_rational)
        p.add_argument("-b", type=_rational)

    p = add("demo", None, "reduction demos")
    dsub = p.add_subparsers(dest="demo", required=True, parser_class=_Parser)
    q = dsub.add_parser("factor", parents=[common], help="factor n via a maximal order")
    q.add_argument("n", type=int)
    q.set_defaults(func=cmd_demo_factor)
    q = dsub.add_parser("residuosity", parents=[common], help="residuosity via splitting")
    q.add_argument("a", type=int)
    q.add_argument("b", type=int)
    q.set_defaults(func=cmd_demo_residuosity)
    return parser


def run(argv=None) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return CommandResult("usage", {"code": "usage", "message": str(exc)})
    with recording() as steps:
        try:
            result = args.func(args)
        except UsageError as exc:
            result = CommandResult("usage", {"code": "usage", "message": str(exc)})
        except json.JSONDecodeError as exc:
            result = CommandResult("error", {"code": "malformed_json", "message": str(exc)})
        except OSError as exc:
            result = CommandResult("error", {"code": "io", "message": str(exc)})
        except QuatringError as exc:
            result = CommandResult("error", {"code": exc.code, "message": str(exc)})
        except (KeyError, TypeError, ValueError) as exc:
            result = CommandResult("error", {"code": "bad_input", "message": str(exc)})
    if args.trace:
        result.trace = list(steps)
    return result


def main(argv=None) -> int:
    result = run(argv)
    print(json.dumps(result.to_json(), indent=2))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

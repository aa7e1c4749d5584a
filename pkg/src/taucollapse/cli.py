"""Command line interface.

Exit codes: 0 computed (either verdict), 2 input or parse error, 3 unknown
knot or missing invariant, 4 unsupported case.
"""
from __future__ import annotations

import argparse
import sys

from . import certificate as certs
from .collapse import (DEEPEST_LEFTMOST, Roles, obstruct_bing_double,
                       obstruct_hopf, shape_string)
from .dsl import parse_tree
from .errors import (BothTreesTrivial, CollapseError, InvalidRecord,
                     MissingInvariant, ParseError, TwistOverflow, UnknownKnot)
from .knots import load_database

EXIT_OK, EXIT_INPUT, EXIT_KNOT, EXIT_UNSUPPORTED = 0, 2, 3, 4

_GLOBALS = ("db", "json", "swap_roles", "strategy")


def _add_globals(p, prefix: str, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--db", action="append", metavar="FILE", dest=prefix + "db", default=default,
                   help="knot database JSON file (repeatable; later files override)")
    p.add_argument("--json", action="store_true", dest=prefix + "json",
                   default=argparse.SUPPRESS if suppress else False,
                   help="emit a JSON certificate instead of a text report")
    p.add_argument("--swap-roles", action="store_true", dest=prefix + "swap_roles",
                   default=argparse.SUPPRESS if suppress else False,
                   help="treat the left sibling as the Q-role (branched) leaf")
    p.add_argument("--strategy", metavar="ORDER", dest=prefix + "strategy", default=default,
                   help="collapse order: deepest-leftmost (default) or custom:<addr>[/p|/q],...")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="taucollapse",
                                     description="tau obstructions for doubled iterated Bing doubles")
    _add_globals(parser, "pre_", suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, **kw):
        p = sub.add_parser(name, **kw)
        _add_globals(p, "", suppress=True)
        return p

    command("tau", help="evaluate tau").add_argument("expr")
    command("normalize", help="print the canonical normal form").add_argument("expr")
    command("sqp", help="strong quasipositivity obstruction").add_argument("expr")

    obstruct = sub.add_parser("obstruct", help="smooth sliceness obstructions")
    osub = obstruct.add_subparsers(dest="target", required=True)
    p = osub.add_parser("expr", help="tau obstruction for a knot expression")
    _add_globals(p, "", suppress=True)
    p.add_argument("expr")
    p = osub.add_parser("bing", help="Wh+ of an iterated Bing double of a knot")
    _add_globals(p, "", suppress=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--knot", required=True)
    p = osub.add_parser("hopf", help="Wh+ of an iterated Bing double of the Hopf link")
    _add_globals(p, "", suppress=True)
    p.add_argument("--tree1", required=True)
    p.add_argument("--tree2", required=True)

    p = command("collapse", help="collapse a Wh+-labeled tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--knot", default="K", help="base knot for the final knot (default K)")
    p.add_argument("--trace", action="store_true", help="print every collapse step")
    return parser


def _merged(args, name):
    pre = getattr(args, "pre_" + name, None)
    post = getattr(args, name, None)
    if name == "db":
        return (pre or []) + (post or [])
    if isinstance(pre, bool):
        return bool(pre or post)
    return post if post is not None else pre


def parse_strategy(text):
    """``deepest-leftmost`` or ``custom:`` followed by comma-separated steps.

    A step is a node address such as ``@L``, optionally suffixed ``/p``
    (left sibling is P) or ``/q`` (left sibling is Q), and for the Hopf
    command prefixed ``1:`` or ``2:`` to select the tree.
    Returns a mapping tree-index -> order (index None for unprefixed steps).
    """
    if text is None or text == DEEPEST_LEFTMOST:
        return None
    if not text.startswith("custom:"):
        raise ParseError(f"unknown strategy {text!r}", text, 0)
    orders = {}
    body = text[len("custom:"):]
    for item in filter(None, (s.strip() for s in body.split(","))):
        tree = None
        if ":" in item:
            idx, item = item.split(":", 1)
            if idx not in ("1", "2"):
                raise ParseError(f"bad tree index {idx!r}", text, text.find(idx))
            tree = int(idx)
        roles = None
        if "/" in item:
            item, r = item.split("/", 1)
            if r not in ("p", "q"):
                raise ParseError(f"bad role suffix {r!r}", text, text.find(item))
            roles = Roles.LEFT_IS_P if r == "p" else Roles.LEFT_IS_Q
        if not item.startswith("@") or set(item[1:]) - set("LR"):
            raise ParseError(f"bad node address {item!r}", text, max(text.find(item), 0))
        orders.setdefault(tree, []).append(item if roles is None else (item, roles))
    return orders


def _order_for(orders, tree_index=None):
    if orders is None:
        return DEEPEST_LEFTMOST
    if tree_index is None:
        return orders.get(None, [])
    return orders.get(tree_index, [])


def _label_text(chain_json) -> str:
    return "[" + ", ".join(f"({c},{t})" for c, t in chain_json) + "]"


def _print_steps(doc, out):
    for i, step in enumerate(doc["steps"], start=1):
        tree = f"tree {step['tree']} " if "tree" in step else ""
        out.write(f"step {i}: {tree}collapse {step['node']} (P={step['p_leaf']}, "
                  f"Q={step['q_leaf']}, {step['case']}): (R,u) = ({step['R']},{step['u']}) "
                  f"-> {_label_text(step['label'])}\n")


def _report(doc, out, trace=True):
    if trace:
        _print_steps(doc, out)
    out.write(f"final knot: {doc['final_knot']}\n")
    out.write(f"tau: {'not evaluated' if doc['tau'] is None else doc['tau']}\n")
    out.write(f"verdict: {doc['verdict']}\n")
    for note in doc["notes"]:
        out.write(f"note: {note}\n")


def _dispatch(args, out) -> int:
    db = load_database(_merged(args, "db"))
    as_json = _merged(args, "json")
    roles = Roles.LEFT_IS_Q if _merged(args, "swap_roles") else Roles.LEFT_IS_P
    orders = parse_strategy(_merged(args, "strategy"))

    if args.command == "tau":
        cert = certs.tau_certificate(args.expr, db)
        doc = cert.to_dict()
        out.write(certs.dumps(doc) if as_json else f"{doc['tau']}\n")
        return EXIT_OK
    if args.command == "normalize":
        doc = certs.normalize_certificate(args.expr, db).to_dict()
        out.write(certs.dumps(doc) if as_json else f"{doc['final_knot']}\n")
        return EXIT_OK
    if args.command == "sqp":
        doc = certs.sqp_certificate(args.expr, db).to_dict()
        if as_json:
            out.write(certs.dumps(doc))
        else:
            out.write(f"sqp: {doc['input']['sqp']}\n")
            _report(doc, out, trace=False)
        return EXIT_OK
    if args.command == "collapse":
        shape = parse_tree(args.tree)
        doc = certs.collapse_certificate(shape, args.knot, db, _order_for(orders), roles).to_dict()
        if as_json:
            out.write(certs.dumps(doc))
        else:
            if args.trace:
                _print_steps(doc, out)
            out.write(f"chain: {_label_text(doc['steps'][-1]['label']) if doc['steps'] else '[(O,-1)]'}\n")
            out.write(f"final knot: {doc['final_knot']}\n")
        return EXIT_OK

    # obstruct
    if args.target == "expr":
        doc = certs.tau_certificate(args.expr, db, command="obstruct expr").to_dict()
        if as_json:
            out.write(certs.dumps(doc))
        else:
            _report(doc, out, trace=False)
            for c in doc["citations"]:
                out.write(f"by: {c}\n")
        return EXIT_OK
    if args.target == "bing":
        shape = parse_tree(args.tree)
        doc = obstruct_bing_double(shape, args.knot, db, _order_for(orders), roles).to_dict()
        out.write(certs.dumps(doc) if as_json else "")
        if not as_json:
            _report(doc, out)
        return EXIT_OK
    if args.target == "hopf":
        shape1, shape2 = parse_tree(args.tree1), parse_tree(args.tree2)
        try:
            doc = obstruct_hopf(shape1, shape2, db, _order_for(orders, 1), _order_for(orders, 2),
                                roles).to_dict()
        except BothTreesTrivial as exc:
            if as_json:
                out.write(certs.dumps(certs.unsupported_document(
                    {"command": "obstruct hopf", "tree1": shape_string(shape1),
                     "tree2": shape_string(shape2), "databases": list(db.sources)}, str(exc))))
            else:
                out.write(f"unsupported: {exc}\n")
            return EXIT_UNSUPPORTED
        if as_json:
            out.write(certs.dumps(doc))
        else:
            _report(doc, out)
        return EXIT_OK
    raise AssertionError(args)


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return _dispatch(args, out)
    except (ParseError, TwistOverflow, InvalidRecord, CollapseError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (UnknownKnot, MissingInvariant) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_KNOT


def main():
    sys.exit(run())

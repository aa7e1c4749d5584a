"""JSON certificates: construction for expression commands, byte-stable dumps, replay."""
from __future__ import annotations

import json
from typing import Optional

from . import tau_engine as taumod
from .collapse import (DEEPEST_LEFTMOST, DEFAULT_ROLES, NOTE_NO_PROOF, NOTE_P2,
                       NOTE_TWIST, CITE_COLLAPSE, CITE_PROPAGATION, Certificate,
                       DoublingChain, Roles, _knots_used, chain_apply,
                       collapse_full, collapse_pair, hopf_final_knot, leaves,
                       shape_string, strategy_name, wh_plus_bing_labeled)
from .dsl import parse_expr, parse_tree, print_expr
from .errors import CollapseError, MissingInvariant, TauCollapseError, UnknownKnot
from .expr import make_base, normalize
from .knots import KnotDatabase, builtin_database
from .quasipos import sqp, sqp_slice_obstruction

VERSION = 1


class ReplayMismatch(TauCollapseError):
    """Replaying a certificate's steps did not reproduce its recorded data."""


def dumps(cert) -> str:
    doc = cert.to_dict() if isinstance(cert, Certificate) else cert
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _expr_input(command: str, text: str, e, db: KnotDatabase) -> dict:
    return {"command": command, "expr": text, "databases": list(db.sources),
            "knots": _knots_used([e], db)}


def _try_tau(e, db: KnotDatabase):
    try:
        value, entries = taumod.tau_trace(normalize(e), db)
    except (UnknownKnot, MissingInvariant) as exc:
        return None, [], str(exc)
    return value, entries, None


def tau_certificate(text: str, db: Optional[KnotDatabase] = None,
                    command: str = "tau") -> Certificate:
    """Certificate for ``tau`` and ``obstruct expr``; tau errors propagate."""
    db = builtin_database() if db is None else db
    e = parse_expr(text)
    value, entries = taumod.tau_trace(normalize(e), db)
    verdict = taumod.verdict_from_tau(value, taumod._rules_used(entries))
    return Certificate(
        input=_expr_input(command, text, e, db), steps=[], final_knot=e, tau=value,
        verdict=verdict.kind.value, citations=list(verdict.justification),
        notes=[] if verdict.obstructed else [NOTE_NO_PROOF], tau_trace=entries,
    )


def normalize_certificate(text: str, db: Optional[KnotDatabase] = None) -> Certificate:
    db = builtin_database() if db is None else db
    e = parse_expr(text)
    value, entries, missing = _try_tau(e, db)
    if value is None:
        verdict, cites, notes = taumod.VerdictKind.NO_OBSTRUCTION.value, [], [f"tau not evaluated: {missing}"]
    else:
        v = taumod.verdict_from_tau(value, taumod._rules_used(entries))
        verdict, cites, notes = v.kind.value, list(v.justification), []
    return Certificate(input=_expr_input("normalize", text, e, db), steps=[], final_knot=e,
                       tau=value, verdict=verdict, citations=cites, notes=notes,
                       tau_trace=entries)


def sqp_certificate(text: str, db: Optional[KnotDatabase] = None) -> Certificate:
    """Strong-quasipositivity route; the tau engine is run only as a cross-check."""
    db = builtin_database() if db is None else db
    e = parse_expr(text)
    judgement = sqp(e, db, surfaces=True)
    verdict = sqp_slice_obstruction(e, db)
    notes = [f"sqp: {judgement.status.value}"]
    value, _, missing = _try_tau(e, db)
    if value is not None:
        notes.append(f"tau engine cross-check: tau = {value}")
    if not verdict.obstructed:
        notes.append("no quasipositivity obstruction established")
    inp = _expr_input("sqp", text, e, db)
    inp["sqp"] = judgement.status.value
    return Certificate(input=inp, steps=[], final_knot=e, tau=verdict.tau,
                       verdict=verdict.kind.value,
                       citations=list(dict.fromkeys(judgement.citations + tuple(verdict.justification))),
                       notes=notes)


def collapse_certificate(shape, knot: str = "K", db: Optional[KnotDatabase] = None,
                         strategy=DEEPEST_LEFTMOST, roles: Roles = DEFAULT_ROLES) -> Certificate:
    """Collapse trace of Wh+(B_T(K)); tau is evaluated only if ``knot`` resolves."""
    db = builtin_database() if db is None else db
    chain, records = collapse_full(wh_plus_bing_labeled(shape), strategy, roles, db,
                                   check_propagation=True)
    base = make_base(knot)
    final = chain_apply(chain, base)
    value, entries, missing = _try_tau(final, db)
    notes = [NOTE_TWIST, NOTE_P2]
    if value is None:
        verdict = taumod.VerdictKind.NO_OBSTRUCTION.value
        notes.append(f"tau not evaluated: {missing}")
    else:
        verdict = taumod.verdict_from_tau(value).kind.value
    return Certificate(
        input={"command": "collapse", "tree": shape_string(shape), "knot": knot,
               "strategy": strategy_name(strategy), "roles": roles.value,
               "databases": list(db.sources), "knots": _knots_used([base], db)},
        steps=records, final_knot=final, tau=value, verdict=verdict,
        citations=[CITE_COLLAPSE, CITE_PROPAGATION], notes=notes, tau_trace=entries,
    )


def unsupported_document(inp: dict, reason: str) -> dict:
    """Complete, explicit answer for inputs outside the supported construction."""
    return {"version": VERSION, "input": inp, "steps": [], "final_knot": None, "tau": None,
            "verdict": "unsupported", "citations": [], "notes": [reason], "tau_trace": []}


# -- replay -------------------------------------------------------------------

def _replay_tree(shape_text: str, steps: list) -> DoublingChain:
    tree = wh_plus_bing_labeled(parse_tree(shape_text))
    for i, step in enumerate(steps):
        try:
            tree, record = collapse_pair(tree, step["node"], Roles(step["roles"]))
        except CollapseError as exc:
            raise ReplayMismatch(f"step {i} at {step['node']}: {exc}") from exc
        if record.label.to_json() != step["label"]:
            raise ReplayMismatch(f"step {i} at {step['node']}: label differs from the record")
    remaining = leaves(tree)
    if len(remaining) != 1:
        raise ReplayMismatch(f"{len(remaining)} leaves remain after replaying the steps")
    return remaining[0][1].label


def replay(doc: dict) -> str:
    """Recompute a certificate's ``final_knot`` from its input and steps alone."""
    inp = doc["input"]
    command = inp["command"]
    if command in ("tau", "normalize", "sqp", "obstruct expr"):
        return print_expr(parse_expr(inp["expr"]))
    if command in ("obstruct bing", "collapse"):
        chain = _replay_tree(inp["tree"], doc["steps"])
        return print_expr(chain_apply(chain, make_base(inp["knot"])))
    if command == "obstruct hopf":
        chains = [_replay_tree(inp[f"tree{i}"], [s for s in doc["steps"] if s["tree"] == i])
                  for i in (1, 2)]
        q_tree = doc["assembly"]["q_tree"]
        final, _, _ = hopf_final_knot(chains[2 - q_tree], chains[q_tree - 1])
        return print_expr(final)
    raise ReplayMismatch(f"cannot replay command {command!r}")


def verify(doc: dict) -> bool:
    """True when replay reproduces ``final_knot`` and it is a fixed point of normalization."""
    final = doc["final_knot"]
    if final is None:
        return doc["verdict"] == "unsupported"
    return replay(doc) == final and print_expr(parse_expr(final)) == final

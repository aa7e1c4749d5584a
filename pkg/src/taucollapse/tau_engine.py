"""Evaluation of the Ozsvath-Szabo tau invariant on knot expressions."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .expr import (Base, Doubling, KnotExpr, Mirror, Reverse, Sum, Unknot,
                   serialize)
from .knots import KnotDatabase, builtin_database

RULE_UNKNOT = "tau(O) = 0"
RULE_BASE = "tau of a base knot read from the knot database"
RULE_MIRROR = "tau(mirror K) = -tau(K)"
RULE_REVERSE = "tau is insensitive to orientation reversal"
RULE_SUM = "tau is additive under connected sum"
RULE_DOUBLING = ("doubling-operator formula: tau(D[J,s](K,t)) = 1 if s < 2tau(J) and t < 2tau(K); "
                 "-1 if s > 2tau(J) and t > 2tau(K); 0 otherwise")
RULE_QSLICE = "tau vanishes on every smoothly rationally slice knot"
RULE_G4 = "|tau(K)| <= smooth 4-genus of K"


def tau_doubling(tau_j: int, s: int, tau_k: int, t: int) -> int:
    if s < 2 * tau_j and t < 2 * tau_k:
        return 1
    if s > 2 * tau_j and t > 2 * tau_k:
        return -1
    return 0


def _tau_wh_plus(tau_k: int, t: int) -> int:
    # Hedden's formula for the positive twisted Whitehead double
    return 1 if t < 2 * tau_k else 0


def tau_whitehead(sign: str, tau_k: int, t: int) -> int:
    if sign == "+":
        return _tau_wh_plus(tau_k, t)
    if sign == "-":
        # Wh-(K,t) is the mirror of Wh+(mirror K, -t)
        return -_tau_wh_plus(-tau_k, -t)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True)
class TraceEntry:
    expr: str
    rule: str
    tau: int

    def to_dict(self):
        return {"expr": self.expr, "rule": self.rule, "tau": self.tau}


def _eval(e: KnotExpr, db: KnotDatabase, trace: Optional[list]) -> int:
    if isinstance(e, Unknot):
        value, rule = 0, RULE_UNKNOT
    elif isinstance(e, Base):
        value, rule = db.tau_of(e.name), RULE_BASE
    elif isinstance(e, Mirror):
        value, rule = -_eval(e.arg, db, trace), RULE_MIRROR
    elif isinstance(e, Reverse):
        value, rule = _eval(e.arg, db, trace), RULE_REVERSE
    elif isinstance(e, Sum):
        value = _eval(e.left, db, trace) + _eval(e.right, db, trace)
        rule = RULE_SUM
    elif isinstance(e, Doubling):
        tj = _eval(e.knot1, db, trace)
        tk = _eval(e.knot2, db, trace)
        value, rule = tau_doubling(tj, e.twist1, tk, e.twist2), RULE_DOUBLING
    else:
        raise TypeError(f"not a knot expression: {e!r}")
    if trace is not None:
        trace.append(TraceEntry(serialize(e), rule, value))
    return value


def tau(e: KnotExpr, db: Optional[KnotDatabase] = None) -> int:
    """tau of ``e``; base knots are resolved in ``db`` (built-ins by default).

    Raises UnknownKnot or MissingInvariant when a base knot cannot be
    evaluated.
    """
    return _eval(e, builtin_database() if db is None else db, None)


def tau_trace(e: KnotExpr, db: Optional[KnotDatabase] = None):
    """Return ``(tau, entries)`` where entries list every subterm post-order."""
    entries = []
    value = _eval(e, builtin_database() if db is None else db, entries)
    return value, entries


class VerdictKind(Enum):
    NOT_SMOOTHLY_SLICE = "not_smoothly_slice"
    NO_OBSTRUCTION = "no_obstruction"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    tau: Optional[int]
    justification: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.tau is not None and (self.kind is VerdictKind.NOT_SMOOTHLY_SLICE) != (self.tau != 0):
            raise ValueError(f"verdict {self.kind.value} inconsistent with tau={self.tau}")

    @property
    def obstructed(self) -> bool:
        return self.kind is VerdictKind.NOT_SMOOTHLY_SLICE


def _rules_used(entries) -> tuple:
    seen = []
    for entry in entries:
        if entry.rule not in seen:
            seen.append(entry.rule)
    return tuple(seen)


def verdict_from_tau(value: int, rules=()) -> Verdict:
    if value != 0:
        return Verdict(VerdictKind.NOT_SMOOTHLY_SLICE, value, tuple(rules) + (RULE_QSLICE,))
    # tau = 0 says nothing about sliceness
    return Verdict(VerdictKind.NO_OBSTRUCTION, 0, tuple(rules))


def slice_obstruction(e: KnotExpr, db: Optional[KnotDatabase] = None) -> Verdict:
    value, entries = tau_trace(e, db)
    return verdict_from_tau(value, _rules_used(entries))


def genus4_lower_bound(e: KnotExpr, db: Optional[KnotDatabase] = None) -> int:
    return abs(tau(e, db))

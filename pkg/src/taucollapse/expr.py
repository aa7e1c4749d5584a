"""Formal knot expressions and their canonical normal form.

A ``KnotExpr`` is an immutable tree built from the unknot, named base knots,
mirror, orientation reversal, connected sum and the two-argument doubling
operator ``D[J,s](K,t)``.  :func:`normalize` picks a canonical representative
modulo the Borromean symmetries of the doubling operator, the connected-sum
axioms and unknot absorption.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import TwistOverflow

TWIST_MIN = -(2**31)
TWIST_MAX = 2**31 - 1

UNKNOT_NAME = "O"


def check_twist(value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"twist must be an int, got {type(value).__name__}")
    if not TWIST_MIN <= value <= TWIST_MAX:
        raise TwistOverflow(f"twist {value} outside [-2^31, 2^31)")
    return value


@dataclass(frozen=True)
class Unknot:
    pass


@dataclass(frozen=True)
class Base:
    name: str


@dataclass(frozen=True)
class Mirror:
    arg: "KnotExpr"


@dataclass(frozen=True)
class Reverse:
    arg: "KnotExpr"


@dataclass(frozen=True)
class Sum:
    left: "KnotExpr"
    right: "KnotExpr"


@dataclass(frozen=True)
class Doubling:
    """``D[knot1,twist1](knot2,twist2)``: Borromean infection along two curves."""

    knot1: "KnotExpr"
    twist1: int
    knot2: "KnotExpr"
    twist2: int

    def __post_init__(self):
        check_twist(self.twist1)
        check_twist(self.twist2)


KnotExpr = Union[Unknot, Base, Mirror, Reverse, Sum, Doubling]

UNKNOT = Unknot()


# -- constructors -----------------------------------------------------------

def make_base(name: str) -> KnotExpr:
    if name == UNKNOT_NAME:
        return UNKNOT
    return Base(name)


def mirror(e: KnotExpr) -> KnotExpr:
    return Mirror(e)


def reverse(e: KnotExpr) -> KnotExpr:
    return Reverse(e)


def negate(e: KnotExpr) -> KnotExpr:
    """Concordance inverse ``-K``, the mirror of the reverse."""
    return Mirror(Reverse(e))


def connected_sum(a: KnotExpr, b: KnotExpr) -> KnotExpr:
    return Sum(a, b)


def doubling(j: KnotExpr, s: int, k: KnotExpr, t: int = 0) -> KnotExpr:
    return Doubling(j, s, k, t)


def whitehead(sign: str, k: KnotExpr, t: int = 0) -> KnotExpr:
    """Twisted Whitehead double; ``Wh+(K,t) = D[O,-1](K,t)``, ``Wh-(K,t) = D[O,+1](K,t)``."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return Doubling(UNKNOT, -1 if sign == "+" else 1, k, t)


# -- serialization ----------------------------------------------------------

def serialize(e: KnotExpr) -> str:
    """Deterministic text form in the expression DSL.

    A ``Sum`` whose right operand is itself a ``Sum`` has no faithful DSL
    spelling (``#`` is left-associative); normal forms never contain one.
    """
    if isinstance(e, Unknot):
        return UNKNOT_NAME
    if isinstance(e, Base):
        return e.name
    if isinstance(e, Mirror):
        return f"m({serialize(e.arg)})"
    if isinstance(e, Reverse):
        return f"r({serialize(e.arg)})"
    if isinstance(e, Sum):
        return f"{serialize(e.left)} # {serialize(e.right)}"
    if isinstance(e, Doubling):
        return (f"D[{serialize(e.knot1)},{e.twist1}]"
                f"({serialize(e.knot2)},{e.twist2})")
    raise TypeError(f"not a knot expression: {e!r}")


# -- normalization ----------------------------------------------------------

def normalize(e: KnotExpr) -> KnotExpr:
    """Canonical representative of ``e``.

    The result satisfies: reverse only directly above a base knot, mirror
    only above a base knot or a reversed base knot, sums flattened with the
    unknot dropped and operands sorted by serialization (left-nested, to
    match the left-associative ``#``), doublings with an ``(O, 0)`` argument
    pair replaced by the unknot, and each doubling's argument pairs in
    canonical order: an unknot argument first, otherwise by serialization.
    """
    return _norm(e, False, False)


def _decorate(e: KnotExpr, mirrored: bool, reversed_: bool) -> KnotExpr:
    if reversed_:
        e = Reverse(e)
    if mirrored:
        e = Mirror(e)
    return e


def _norm(e: KnotExpr, mirrored: bool, reversed_: bool) -> KnotExpr:
    if isinstance(e, Unknot):
        return UNKNOT
    if isinstance(e, Base):
        return _decorate(e, mirrored, reversed_)
    if isinstance(e, Mirror):
        return _norm(e.arg, not mirrored, reversed_)
    if isinstance(e, Reverse):
        return _norm(e.arg, mirrored, not reversed_)
    if isinstance(e, Sum):
        return _build_sum(_summands(_norm(e.left, mirrored, reversed_))
                          + _summands(_norm(e.right, mirrored, reversed_)))
    if isinstance(e, Doubling):
        # mirror negates both twists; reversal may sit on either argument
        sign = -1 if mirrored else 1
        j = _norm(e.knot1, mirrored, reversed_)
        k = _norm(e.knot2, mirrored, False)
        s = check_twist(sign * e.twist1)
        t = check_twist(sign * e.twist2)
        if (j == UNKNOT and s == 0) or (k == UNKNOT and t == 0):
            return UNKNOT
        rj, rk = _norm(j, False, True), _norm(k, False, True)
        candidates = [
            Doubling(j, s, k, t), Doubling(k, t, j, s),
            Doubling(rj, s, rk, t), Doubling(rk, t, rj, s),
        ]
        return min(candidates, key=_doubling_key)
    raise TypeError(f"not a knot expression: {e!r}")


def _doubling_key(d: Doubling):
    # an unknot companion goes first so Whitehead doubles print as D[O,-+1](K,t)
    return (d.knot1 != UNKNOT, serialize(d))


def _summands(e: KnotExpr) -> list:
    if isinstance(e, Unknot):
        return []
    if isinstance(e, Sum):
        return _summands(e.left) + _summands(e.right)
    return [e]


def _build_sum(parts: list) -> KnotExpr:
    if not parts:
        return UNKNOT
    parts = sorted(parts, key=serialize)
    acc = parts[0]
    for p in parts[1:]:
        acc = Sum(acc, p)
    return acc


def is_unknot(e: KnotExpr) -> bool:
    return normalize(e) == UNKNOT


def base_names(e: KnotExpr) -> set:
    """Names of every base knot occurring in ``e``."""
    if isinstance(e, Base):
        return {e.name}
    if isinstance(e, (Mirror, Reverse)):
        return base_names(e.arg)
    if isinstance(e, Sum):
        return base_names(e.left) | base_names(e.right)
    if isinstance(e, Doubling):
        return base_names(e.knot1) | base_names(e.knot2)
    return set()

"""Strong quasipositivity as an independent smooth-sliceness obstruction.

Judgements are three-valued: the implemented rules only ever prove
quasipositivity facts, they cannot decide them, so anything not forced by a
cited rule is ``UNKNOWN``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .expr import (UNKNOT, Base, Doubling, KnotExpr, Sum, Unknot, check_twist,
                   normalize)
from .knots import KnotDatabase, builtin_database
from .tau_engine import Verdict, VerdictKind

RULE_ANNULUS = "the annulus A(K,t) is quasipositive iff t <= TB(K)"
RULE_PLUMBING = "a plumbing A*A' of annuli is quasipositive iff A and A' both are"
RULE_UNKNOT = "the unknot is strongly quasipositive"
RULE_DB_FLAG = "strong quasipositivity flag read from the knot database"
RULE_SUM = "a connected sum of strongly quasipositive knots is strongly quasipositive"
RULE_DOUBLING = ("D[J,s](K,t) is strongly quasipositive when J and K are and s, t <= 0 "
                 "(the plumbing A(J,s)*A(K,t) is a quasipositive Seifert surface)")
RULE_SURFACE = ("D[J,s](K,t) bounds the plumbing A(J,s)*A(K,t); a quasipositive Seifert "
                "surface makes it strongly quasipositive")
RULE_NONTRIVIAL = "D[J,s](K,t) is nontrivial when neither (J,s) nor (K,t) equals (O,0)"
RULE_RUDOLPH = "a nontrivial strongly quasipositive knot is not smoothly slice"
RULE_LIVINGSTON = "tau of a strongly quasipositive knot equals its Seifert genus"

CAVEAT_SIGN = ("plumbing orientation and intersection sign are not modeled; the plumbing "
               "rule is applied sign-agnostically")


class TriState(Enum):
    PROVEN_YES = "proven_yes"
    PROVEN_NO = "proven_no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Judgement:
    status: TriState
    citations: tuple = ()

    def __post_init__(self):
        if self.status is not TriState.UNKNOWN and not self.citations:
            raise ValueError("a proven judgement must cite a rule")

    @property
    def yes(self) -> bool:
        return self.status is TriState.PROVEN_YES

    @property
    def no(self) -> bool:
        return self.status is TriState.PROVEN_NO


UNKNOWN = Judgement(TriState.UNKNOWN)


@dataclass(frozen=True)
class Annulus:
    core: KnotExpr
    framing: int

    def __post_init__(self):
        check_twist(self.framing)


@dataclass(frozen=True)
class Plumbing:
    left: "PlumbingSurface"
    right: "PlumbingSurface"


PlumbingSurface = Union[Annulus, Plumbing]


def _tb(core: KnotExpr, db: KnotDatabase) -> Optional[int]:
    core = normalize(core)
    if isinstance(core, Unknot):
        return db.tb_of("O")
    if isinstance(core, Base):
        return db.tb_of(core.name)
    return None


def annulus_qp(a: Annulus, db: Optional[KnotDatabase] = None) -> Judgement:
    db = builtin_database() if db is None else db
    tb = _tb(a.core, db)
    if tb is None:
        return UNKNOWN
    status = TriState.PROVEN_YES if a.framing <= tb else TriState.PROVEN_NO
    return Judgement(status, (RULE_ANNULUS,))


def _annuli(s: PlumbingSurface) -> list:
    if isinstance(s, Annulus):
        return [s]
    return _annuli(s.left) + _annuli(s.right)


def plumbing_qp(s: PlumbingSurface, db: Optional[KnotDatabase] = None) -> Judgement:
    parts = [annulus_qp(a, db) for a in _annuli(s)]
    cites = (RULE_PLUMBING,) if len(parts) > 1 else ()
    if any(p.no for p in parts):
        return Judgement(TriState.PROVEN_NO, cites + (RULE_ANNULUS,))
    if all(p.yes for p in parts):
        return Judgement(TriState.PROVEN_YES, cites + (RULE_ANNULUS,))
    return UNKNOWN


def _merge(*groups) -> tuple:
    out = []
    for g in groups:
        for c in g:
            if c not in out:
                out.append(c)
    return tuple(out)


def _sqp(e: KnotExpr, db: KnotDatabase, surfaces: bool) -> Judgement:
    if isinstance(e, Unknot):
        return Judgement(TriState.PROVEN_YES, (RULE_UNKNOT,))
    if isinstance(e, Base):
        rec = db.get(e.name)
        if rec is None or rec.sqp is None:
            return UNKNOWN
        return Judgement(TriState.PROVEN_YES if rec.sqp else TriState.PROVEN_NO, (RULE_DB_FLAG,))
    if isinstance(e, Sum):
        a, b = _sqp(e.left, db, surfaces), _sqp(e.right, db, surfaces)
        if a.yes and b.yes:
            return Judgement(TriState.PROVEN_YES, _merge(a.citations, b.citations, (RULE_SUM,)))
        return UNKNOWN
    if isinstance(e, Doubling):
        if e.twist1 <= 0 and e.twist2 <= 0:
            a, b = _sqp(e.knot1, db, surfaces), _sqp(e.knot2, db, surfaces)
            if a.yes and b.yes:
                return Judgement(TriState.PROVEN_YES,
                                 _merge(a.citations, b.citations, (RULE_DOUBLING,)))
        if surfaces:
            surface = plumbing_qp(Plumbing(Annulus(e.knot1, e.twist1),
                                           Annulus(e.knot2, e.twist2)), db)
            if surface.yes:
                return Judgement(TriState.PROVEN_YES, _merge(surface.citations, (RULE_SURFACE,)))
        return UNKNOWN
    # mirror or reverse of a base knot: no rule applies
    return UNKNOWN


def sqp(e: KnotExpr, db: Optional[KnotDatabase] = None, surfaces: bool = False) -> Judgement:
    """Strong quasipositivity of ``e`` by rule closure on its normal form.

    ``surfaces=True`` additionally tries the annulus-plumbing route on
    doubling nodes, which needs Thurston-Bennequin data but can succeed with
    positive twists.  ``PROVEN_NO`` only ever comes from a database flag on a
    bare base knot.
    """
    db = builtin_database() if db is None else db
    return _sqp(normalize(e), db, surfaces)


def _pair_is_trivial(k: KnotExpr, t: int) -> bool:
    return normalize(k) == UNKNOT and t == 0


def sqp_slice_obstruction(e: KnotExpr, db: Optional[KnotDatabase] = None,
                          surfaces: bool = True) -> Verdict:
    """Rudolph's obstruction: nontrivial strongly quasipositive knots are not smoothly slice.

    The verdict's tau is the genus claim from Livingston's theorem when the
    obstruction fires: 1 for a doubling (its plumbing surface has genus 1),
    the recorded genus for a base knot.  Otherwise tau is ``None``.
    """
    db = builtin_database() if db is None else db
    n = normalize(e)
    if isinstance(n, Doubling):
        if _pair_is_trivial(n.knot1, n.twist1) or _pair_is_trivial(n.knot2, n.twist2):
            return Verdict(VerdictKind.NO_OBSTRUCTION, None, ())
        j = _sqp(n, db, surfaces)
        if j.yes:
            return Verdict(VerdictKind.NOT_SMOOTHLY_SLICE, 1,
                           _merge(j.citations, (RULE_NONTRIVIAL, RULE_RUDOLPH, RULE_LIVINGSTON),
                                  (CAVEAT_SIGN,) if RULE_SURFACE in j.citations else ()))
        return Verdict(VerdictKind.NO_OBSTRUCTION, None, j.citations)
    if isinstance(n, Base):
        j = _sqp(n, db, surfaces)
        rec = db.get(n.name)
        if j.yes:
            genus = None if rec is None else rec.genus
            if genus == 0:
                # genus 0 means the unknot, so rule (1) does not apply
                return Verdict(VerdictKind.NO_OBSTRUCTION, 0, j.citations)
            return Verdict(VerdictKind.NOT_SMOOTHLY_SLICE, genus,
                           _merge(j.citations, (RULE_RUDOLPH, RULE_LIVINGSTON)))
        return Verdict(VerdictKind.NO_OBSTRUCTION, None, j.citations)
    return Verdict(VerdictKind.NO_OBSTRUCTION, None, ())

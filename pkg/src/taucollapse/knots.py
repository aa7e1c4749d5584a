"""Knot records and the layered knot database.

Database files are JSON documents of the form::

    {"knots": [{"name": "RHT", "tau": 1, "tb": 1, "genus": 1, "sqp": true}]}

Later layers override earlier ones per knot name.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import InvalidRecord, MissingInvariant, UnknownKnot
from .expr import UNKNOT_NAME

NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")

BUILTIN_SOURCE = "<builtin>"


@dataclass(frozen=True)
class KnotRecord:
    name: str
    tau: Optional[int] = None
    tb: Optional[int] = None
    genus: Optional[int] = None
    genus4: Optional[int] = None
    sqp: Optional[bool] = None
    notes: Optional[str] = None
    provenance: str = "user"

    def __post_init__(self):
        if not NAME_RE.match(self.name):
            raise InvalidRecord(f"invalid knot name {self.name!r}")
        for attr in ("tau", "tb", "genus", "genus4"):
            v = getattr(self, attr)
            if v is not None and (isinstance(v, bool) or not isinstance(v, int)):
                raise InvalidRecord(f"{self.name}: {attr} must be an integer")
        for attr in ("genus", "genus4"):
            v = getattr(self, attr)
            if v is not None and v < 0:
                raise InvalidRecord(f"{self.name}: {attr} must be non-negative")
        if self.sqp is not None and not isinstance(self.sqp, bool):
            raise InvalidRecord(f"{self.name}: sqp must be a boolean")
        if self.tau is not None and self.genus4 is not None and abs(self.tau) > self.genus4:
            raise InvalidRecord(f"{self.name}: |tau| = {abs(self.tau)} exceeds genus4 = {self.genus4}")
        if self.genus is not None and self.genus4 is not None and self.genus4 > self.genus:
            raise InvalidRecord(f"{self.name}: genus4 exceeds genus")
        if self.sqp and self.tau is not None and self.genus is not None and self.tau != self.genus:
            raise InvalidRecord(f"{self.name}: strongly quasipositive but tau != genus")

    def to_dict(self) -> dict:
        out = {"name": self.name}
        for attr in ("tau", "tb", "genus", "genus4", "sqp", "notes"):
            v = getattr(self, attr)
            if v is not None:
                out[attr] = v
        out["provenance"] = self.provenance
        return out


_EXTERNAL = "external: standard knot-table value"

BUILTIN_RECORDS = (
    KnotRecord(UNKNOT_NAME, tau=0, tb=-1, genus=0, genus4=0, sqp=True,
               notes="unknot", provenance="builtin"),
    KnotRecord("RHT", tau=1, tb=1, genus=1, genus4=1, sqp=True,
               notes="right-handed trefoil; " + _EXTERNAL, provenance="external"),
    KnotRecord("LHT", tau=-1, tb=-6, genus=1, genus4=1, sqp=False,
               notes="left-handed trefoil; " + _EXTERNAL, provenance="external"),
    KnotRecord("4_1", tau=0, tb=-3, genus=1, genus4=1, sqp=False,
               notes="figure-eight knot; " + _EXTERNAL, provenance="external"),
)


@dataclass(frozen=True)
class KnotDatabase:
    """Read-only name -> KnotRecord mapping with its load history."""

    records: Mapping[str, KnotRecord] = field(default_factory=dict)
    sources: tuple = ()

    def __contains__(self, name):
        return name in self.records

    def __len__(self):
        return len(self.records)

    def get(self, name: str) -> Optional[KnotRecord]:
        return self.records.get(name)

    def lookup(self, name: str) -> KnotRecord:
        try:
            return self.records[name]
        except KeyError:
            raise UnknownKnot(name) from None

    def tau_of(self, name: str) -> int:
        if name == UNKNOT_NAME:
            return 0
        rec = self.lookup(name)
        if rec.tau is None:
            raise MissingInvariant(name, "tau")
        return rec.tau

    def tb_of(self, name: str) -> Optional[int]:
        rec = self.get(name)
        return None if rec is None else rec.tb

    def layered(self, records: Iterable[KnotRecord], source: str) -> "KnotDatabase":
        """Return a new database with ``records`` overriding existing names."""
        merged = dict(self.records)
        seen = set()
        for rec in records:
            if rec.name in seen:
                raise InvalidRecord(f"duplicate knot name {rec.name!r} in {source}")
            seen.add(rec.name)
            merged[rec.name] = rec
        return KnotDatabase(merged, self.sources + (source,))


def builtin_database() -> KnotDatabase:
    return KnotDatabase().layered(BUILTIN_RECORDS, BUILTIN_SOURCE)


def database_of(*records: KnotRecord, source: str = "<inline>") -> KnotDatabase:
    """Built-in knots plus ``records``; convenient in tests and scripts."""
    return builtin_database().layered(records, source)


_FILE_FIELDS = {"name", "tau", "tb", "genus", "genus4", "sqp", "notes"}


def parse_database(doc, source: str) -> list:
    """Validate a decoded database document and return its records."""
    if not isinstance(doc, dict) or not isinstance(doc.get("knots"), list):
        raise InvalidRecord(f"{source}: expected an object with a 'knots' array")
    records = []
    for i, entry in enumerate(doc["knots"]):
        if not isinstance(entry, dict):
            raise InvalidRecord(f"{source}: knots[{i}] is not an object")
        extra = set(entry) - _FILE_FIELDS
        if extra:
            raise InvalidRecord(f"{source}: knots[{i}] has unknown fields {sorted(extra)}")
        name = entry.get("name")
        if not isinstance(name, str):
            raise InvalidRecord(f"{source}: knots[{i}] lacks a string 'name'")
        if name == UNKNOT_NAME:
            raise InvalidRecord(f"{source}: the reserved name 'O' may not be redefined")
        if entry.get("notes") is not None and not isinstance(entry["notes"], str):
            raise InvalidRecord(f"{source}: knots[{i}].notes must be a string")
        records.append(KnotRecord(provenance=source, **entry))
    return records


def load_database(paths: Iterable[str], base: Optional[KnotDatabase] = None) -> KnotDatabase:
    db = builtin_database() if base is None else base
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InvalidRecord(f"cannot read database {path}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidRecord(f"{path}: invalid JSON ({exc.msg}, line {exc.lineno})") from exc
        db = db.layered(parse_database(doc, path), path)
    return db

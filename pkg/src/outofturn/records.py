"""CSV-backed catalogs and the progressively restricted views over them.

The catalog is immutable after ingestion and shared across sessions; a
View is a cheap value carrying the constraints accumulated so far and the
ids of the records that still satisfy all of them.  An empty CSV cell
means the attribute does not apply to that record, and never matches a
constraint.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field

from .errors import DuplicateHeader, EmptyCatalog, RaggedRow, UnknownAttribute

_PUNCT = re.compile(r"[^\w\s]+")
_SPACES = re.compile(r"\s+")


def normalize_phrase(text: str) -> str:
    """Canonical matching form: casefolded, punctuation-free, single-spaced."""
    return _SPACES.sub(" ", _PUNCT.sub(" ", text.casefold())).strip()


@dataclass(frozen=True)
class Record:
    id: str
    attrs: dict[str, str | None]
    display: dict[str, str | None]

    def label(self) -> str:
        return self.display.get("name") or self.id


@dataclass(frozen=True)
class Catalog:
    attributes: tuple[str, ...]
    records: tuple[Record, ...]

    def fresh_view(self) -> "View":
        return View(self, (), frozenset(r.id for r in self.records))

    def display_form(self, attribute: str, value: str) -> str:
        """First-appearance original casing for a normalized value."""
        for record in self.records:
            if record.attrs.get(attribute) == value:
                raw = record.display.get(attribute)
                if raw is not None:
                    return raw
        return value


@dataclass(frozen=True)
class View:
    catalog: Catalog
    constraints: tuple[tuple[str, str], ...] = ()
    live: frozenset[str] = field(default_factory=frozenset)

    def restrict(self, attribute: str, value: str) -> "View":
        """Add one constraint; the live set can only shrink."""
        self._check(attribute)
        wanted = normalize_phrase(value)
        live = frozenset(
            r.id for r in self.catalog.records if r.id in self.live and r.attrs[attribute] == wanted
        )
        return View(self.catalog, self.constraints + ((attribute, wanted),), live)

    def available_values(self, attribute: str) -> tuple[str, ...]:
        """Distinct non-null values among live records, first-appearance order."""
        self._check(attribute)
        seen: list[str] = []
        for record in self.catalog.records:
            if record.id not in self.live:
                continue
            value = record.attrs[attribute]
            if value is not None and value not in seen:
                seen.append(value)
        return tuple(seen)

    def records(self) -> tuple[Record, ...]:
        return tuple(r for r in self.catalog.records if r.id in self.live)

    def record_count(self) -> int:
        return len(self.live)

    def _check(self, attribute: str) -> None:
        if attribute not in self.catalog.attributes:
            raise UnknownAttribute(f"no attribute {attribute!r} in catalog")


def ingest_csv(text: str) -> Catalog:
    """Parse UTF-8 CSV with a header row into an immutable catalog."""
    rows = list(csv.reader(io.StringIO(text)))
    rows = [row for row in rows if row]  # tolerate trailing blank lines
    if not rows:
        raise EmptyCatalog("no header row")
    header = [h.strip().lower() for h in rows[0]]
    dupes = {h for h in header if header.count(h) > 1}
    if dupes:
        raise DuplicateHeader(f"duplicate column {sorted(dupes)[0]!r}")
    records: list[Record] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise RaggedRow(f"line {line_no}: expected {len(header)} cells, found {len(row)}")
        attrs: dict[str, str | None] = {}
        display: dict[str, str | None] = {}
        for attribute, cell in zip(header, row):
            raw = cell.strip()
            display[attribute] = raw or None
            attrs[attribute] = normalize_phrase(raw) if raw else None
        records.append(Record(f"r{line_no - 1}", attrs, display))
    if not records:
        raise EmptyCatalog("header only, no data rows")
    return Catalog(tuple(header), tuple(records))

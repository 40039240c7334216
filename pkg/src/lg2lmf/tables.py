"""Reading Lexicon-Grammar class tables and the table of classes.

A class table is a dense matrix: one row per lexical item, one column per
feature.  The table of classes states, per (class, feature), whether the
feature holds for the whole class (``+``/``-``), is coded row by row in the
class table (``o``), should be coded but is not yet (``O``) or is undecided
(``?``).  :func:`merge_features` combines both levels into one resolved
value per feature and entry.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from typing import Union

from .diagnostics import Report

LEMMA_COLUMN = "<ENT>"
EXAMPLE_COLUMN = "<OPT>"
TRANSLATION_COLUMN = "<TRAD>"
METADATA_COLUMNS = (LEMMA_COLUMN, EXAMPLE_COLUMN, TRANSLATION_COLUMN)

DEFAULT_DELIMITER = ";"


class TableError(ValueError):
    """Raised on malformed table input; carries the offending position."""

    def __init__(self, message: str, *, source: str = "", row: int | None = None,
                 column: str | None = None):
        self.source = source
        self.row = row
        self.column = column
        parts = [message]
        if source:
            parts.append(f"file {source}")
        if row is not None:
            parts.append(f"row {row}")
        if column is not None:
            parts.append(f"column {column!r}")
        super().__init__(", ".join(parts))

    @property
    def location(self) -> str:
        loc = self.source
        if self.row is not None:
            loc += f":{self.row}"
        return loc


class Category(str, enum.Enum):
    VERB = "verb"

    @property
    def code(self) -> str:
        return CATEGORY_CODES[self]


CATEGORY_CODES = {Category.VERB: "V"}


# -- cell values -------------------------------------------------------------

class _Flag(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    UNENCODED = "~"

    def __repr__(self) -> str:
        return self.name.capitalize()


Plus = _Flag.PLUS
Minus = _Flag.MINUS
Unencoded = _Flag.UNENCODED


@dataclass(frozen=True)
class LexicalValue:
    text: str

    def __post_init__(self):
        if not self.text or self.text in ("+", "-") or self.text in _UNENCODED_MARKS:
            raise ValueError(f"not a lexical value: {self.text!r}")


CellValue = Union[_Flag, LexicalValue]

# Unfilled cells in older tables carry "?"; they hold no information.
_UNENCODED_MARKS = ("~", "?")


def cell_decode(text: str, *, row: int | None = None, column: str | None = None) -> CellValue:
    text = text.strip()
    if not text:
        raise TableError("empty cell", row=row, column=column)
    if text == "+":
        return Plus
    if text == "-":
        return Minus
    if text in _UNENCODED_MARKS:
        return Unencoded
    return LexicalValue(text)


def cell_encode(value: CellValue) -> str:
    if isinstance(value, LexicalValue):
        return value.text
    return value.value


# -- class tables ------------------------------------------------------------

@dataclass(frozen=True)
class EntryRow:
    index: int
    lemma: str
    cells: dict[str, CellValue]
    example: str = ""
    translation: str = ""


@dataclass(frozen=True)
class ClassTable:
    class_id: str
    category: Category
    columns: tuple[str, ...]
    rows: tuple[EntryRow, ...]

    @property
    def feature_columns(self) -> tuple[str, ...]:
        return tuple(c for c in self.columns if c not in METADATA_COLUMNS)


def _read_records(data: bytes | str, delimiter: str, source: str) -> list[list[str]]:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise TableError(f"not UTF-8 ({exc.reason})", source=source) from None
    reader = csv.reader(io.StringIO(data, newline=""), delimiter=delimiter, strict=True)
    try:
        records = [rec for rec in reader]
    except csv.Error as exc:
        raise TableError(f"unparsable record ({exc})", source=source,
                         row=reader.line_num) from None
    # trailing blank lines are not rows
    while records and not any(c.strip() for c in records[-1]):
        records.pop()
    return records


def _check_header(header: list[str], source: str) -> list[str]:
    header = [h.strip() for h in header]
    seen = set()
    for name in header:
        if not name:
            raise TableError("empty column header", source=source, row=0)
        if name in seen:
            raise TableError("duplicate column header", source=source, row=0, column=name)
        seen.add(name)
    return header


def parse_class_table(data: bytes | str, class_id: str, category: Category | str = Category.VERB,
                      *, delimiter: str = DEFAULT_DELIMITER, source: str = "") -> ClassTable:
    """Parse one class table.  The first record holds the feature identifiers."""
    category = Category(category)
    source = source or f"{class_id}.csv"
    records = _read_records(data, delimiter, source)
    if not records:
        raise TableError("missing header", source=source)
    header = _check_header(records[0], source)
    if LEMMA_COLUMN not in header:
        raise TableError(f"missing {LEMMA_COLUMN} column", source=source, row=0)

    rows = []
    for index, record in enumerate(records[1:], start=1):
        if len(record) != len(header):
            raise TableError(f"expected {len(header)} cells, found {len(record)}",
                             source=source, row=index)
        cells: dict[str, CellValue] = {}
        lemma = example = translation = ""
        for name, raw in zip(header, record):
            if name == LEMMA_COLUMN:
                lemma = raw.strip()
                if not lemma:
                    raise TableError("empty lemma", source=source, row=index, column=name)
            elif name == EXAMPLE_COLUMN:
                example = raw.strip()
            elif name == TRANSLATION_COLUMN:
                translation = raw.strip()
            else:
                try:
                    cells[name] = cell_decode(raw, row=index, column=name)
                except TableError as exc:
                    raise TableError("empty cell", source=source, row=index,
                                     column=exc.column) from None
        rows.append(EntryRow(index, lemma, cells, example, translation))
    return ClassTable(class_id, category, tuple(header), tuple(rows))


def serialize_class_table(table: ClassTable, *, delimiter: str = DEFAULT_DELIMITER) -> str:
    out = io.StringIO()
    writer = csv.writer(out, delimiter=delimiter, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        record = []
        for name in table.columns:
            if name == LEMMA_COLUMN:
                record.append(row.lemma)
            elif name == EXAMPLE_COLUMN:
                record.append(row.example)
            elif name == TRANSLATION_COLUMN:
                record.append(row.translation)
            else:
                record.append(cell_encode(row.cells[name]))
        writer.writerow(record)
    return out.getvalue()


# -- table of classes --------------------------------------------------------

class ClassSymbol(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    LOWER_O = "o"
    UPPER_O = "O"
    QUESTION = "?"


@dataclass(frozen=True)
class ClassFeatureMatrix:
    category: Category
    classes: tuple[str, ...]
    features: tuple[str, ...]
    cells: dict[tuple[str, str], ClassSymbol] = field(repr=False)

    def symbol(self, class_id: str, feature: str) -> ClassSymbol:
        return self.cells[class_id, feature]


def parse_table_of_classes(data: bytes | str, category: Category | str = Category.VERB,
                           *, delimiter: str = DEFAULT_DELIMITER,
                           source: str = "classes") -> ClassFeatureMatrix:
    """Parse the table of classes: one row per class, first column = class id."""
    category = Category(category)
    records = _read_records(data, delimiter, source)
    if not records:
        raise TableError("missing header", source=source)
    header = _check_header(records[0], source)
    features = tuple(header[1:])
    classes: list[str] = []
    cells: dict[tuple[str, str], ClassSymbol] = {}
    for index, record in enumerate(records[1:], start=1):
        if len(record) != len(header):
            raise TableError(f"expected {len(header)} cells, found {len(record)}",
                             source=source, row=index)
        class_id = record[0].strip()
        if not class_id:
            raise TableError("empty class id", source=source, row=index)
        if class_id in classes:
            raise TableError(f"duplicate class {class_id!r}", source=source, row=index)
        classes.append(class_id)
        for feature, raw in zip(features, record[1:]):
            try:
                cells[class_id, feature] = ClassSymbol(raw.strip())
            except ValueError:
                raise TableError(f"invalid class symbol {raw.strip()!r}", source=source,
                                 row=index, column=feature) from None
    return ClassFeatureMatrix(category, tuple(classes), features, cells)


# -- merge -------------------------------------------------------------------

@dataclass(frozen=True)
class Lexical:
    text: str


ResolvedValue = Union[bool, _Flag, Lexical]


@dataclass(frozen=True)
class EntryRecord:
    class_id: str
    category: Category
    index: int
    lemma: str
    example: str
    translation: str
    resolved: dict[str, ResolvedValue]
    encoded_count: int
    unencoded_count: int


def _resolve_cell(value: CellValue) -> ResolvedValue:
    if value is Plus:
        return True
    if value is Minus:
        return False
    if value is Unencoded:
        return Unencoded
    return Lexical(value.text)


def merge_features(table: ClassTable, matrix: ClassFeatureMatrix,
                   report: Report | None = None) -> list[EntryRecord]:
    """Resolve every applicable feature of every row of ``table``."""
    if table.class_id not in matrix.classes:
        raise TableError(f"class {table.class_id!r} is not in the table of classes")
    location = f"{table.class_id}.csv"
    columns = set(table.feature_columns)
    if report is not None:
        for name in table.feature_columns:
            if name not in matrix.features:
                report.warning("COLUMN_NOT_IN_CLASSES",
                               f"column {name!r} is not declared in the table of classes",
                               location)

    applicable = [(f, matrix.symbol(table.class_id, f)) for f in matrix.features
                  if matrix.symbol(table.class_id, f) in
                  (ClassSymbol.PLUS, ClassSymbol.MINUS, ClassSymbol.LOWER_O)]
    records = []
    for row in table.rows:
        resolved: dict[str, ResolvedValue] = {}
        for feature, symbol in applicable:
            if symbol is ClassSymbol.LOWER_O:
                cell = row.cells.get(feature, Unencoded)
                resolved[feature] = _resolve_cell(cell)
                continue
            resolved[feature] = symbol is ClassSymbol.PLUS
            cell = row.cells.get(feature) if feature in columns else None
            if report is not None and cell in (Plus, Minus) and \
                    (cell is Plus) != resolved[feature]:
                report.warning("CLASS_CELL_CONFLICT",
                               f"cell {cell.value!r} contradicts class-level "
                               f"{symbol.value!r} for feature {feature!r}",
                               f"{location}:{row.index}")
        unencoded = sum(1 for v in resolved.values() if v is Unencoded)
        records.append(EntryRecord(
            class_id=table.class_id, category=table.category, index=row.index,
            lemma=row.lemma, example=row.example, translation=row.translation,
            resolved=resolved, encoded_count=len(resolved) - unencoded,
            unencoded_count=unencoded))
    return records

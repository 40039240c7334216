"""Intermediate entries and the LMF-side entry objects."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .catalog import FeatureCatalog, FeatureExpr, Opaque, classify_feature, parse_feature_id
from .diagnostics import Report
from .tables import Category, EntryRecord, Lexical


class Status(str, enum.Enum):
    COMPLETED = "completed"
    TO_BE_COMPLETED = "to be completed"
    TO_BE_ENCODED = "to be encoded"

    @property
    def rank(self) -> int:
        return {Status.TO_BE_ENCODED: 0, Status.TO_BE_COMPLETED: 1, Status.COMPLETED: 2}[self]


def make_entry_id(category: Category | str, class_id: str, row_index: int) -> str:
    if row_index < 1:
        raise ValueError("row index starts at 1")
    return f"{Category(category).code}_{class_id}_{row_index}"


def compute_status(encoded_count: int, unencoded_count: int,
                   report: Report | None = None, location: str = "") -> Status:
    if encoded_count < 0 or unencoded_count < 0:
        raise ValueError("feature counts must be non-negative")
    if encoded_count + unencoded_count == 0:
        if report is not None:
            report.warning("DEGENERATE_CLASS", "no applicable feature; status set to "
                           "'to be encoded'", location)
        return Status.TO_BE_ENCODED
    if unencoded_count == 0:
        return Status.COMPLETED
    if Fraction(encoded_count, encoded_count + unencoded_count) < Fraction(1, 3):
        return Status.TO_BE_ENCODED
    return Status.TO_BE_COMPLETED


# -- intermediate (LGLex-like) entries -----------------------------------------

@dataclass(frozen=True)
class PositiveFeature:
    expr: FeatureExpr
    value: Union[bool, str] = True  # str for lexical cell values

    @property
    def id(self) -> str:
        return self.expr.key


@dataclass(frozen=True)
class FeatureTree:
    arguments: dict[int, tuple[PositiveFeature, ...]] = field(default_factory=dict)
    constructions: tuple[PositiveFeature, ...] = ()
    lexeme_properties: tuple[PositiveFeature, ...] = ()
    other: tuple[PositiveFeature, ...] = ()

    def __iter__(self):
        for slot in sorted(self.arguments):
            yield from self.arguments[slot]
        yield from self.constructions
        yield from self.lexeme_properties
        yield from self.other

    def __len__(self) -> int:
        return sum(1 for _ in self)


_ARGUMENT_KINDS = ("constituent", "introducer", "restriction")
_CONSTRUCTION_KINDS = ("construction", "redistribution")


@dataclass(frozen=True)
class LGLexEntry:
    entry_id: str
    lemma: str
    class_id: str
    row_index: int
    positive_features: FeatureTree
    encoded_count: int
    unencoded_count: int
    category: Category = Category.VERB
    translation: str = ""
    example: str = ""
    mwe_trigger: str | None = None

    @property
    def status(self) -> Status:
        return compute_status(self.encoded_count, self.unencoded_count)


def build_lglex_entry(record: EntryRecord, catalog: FeatureCatalog,
                      report: Report | None = None) -> LGLexEntry:
    """Keep the positive features of ``record`` and file them by role."""
    entry_id = make_entry_id(record.category, record.class_id, record.index)
    arguments: dict[int, list[PositiveFeature]] = {}
    constructions, props, other = [], [], []
    mwe_trigger = None
    for name in sorted(record.resolved, key=catalog.order):
        value = record.resolved[name]
        if value is True:
            feature = PositiveFeature(parse_feature_id(name))
        elif isinstance(value, Lexical):
            feature = PositiveFeature(parse_feature_id(name), value.text)
        else:
            continue
        action = classify_feature(feature.expr, catalog, report)
        if isinstance(feature.expr.parsed, Opaque) and catalog.lookup(name) is None \
                and report is not None:
            report.warning("OPAQUE_FEATURE", f"feature {name!r} has no recognizable "
                           f"structure and no catalog entry", entry_id)
        if action.kind in _ARGUMENT_KINDS:
            arguments.setdefault(action.slot, []).append(feature)
        elif action.kind in _CONSTRUCTION_KINDS:
            constructions.append(feature)
        elif action.kind == "lexeme-property":
            props.append(feature)
        else:
            if action.kind == "mwe-trigger" and mwe_trigger is None:
                mwe_trigger = feature.id
            other.append(feature)
    tree = FeatureTree({k: tuple(v) for k, v in sorted(arguments.items())},
                       tuple(constructions), tuple(props), tuple(other))
    return LGLexEntry(entry_id=entry_id, lemma=record.lemma, class_id=record.class_id,
                      row_index=record.index, positive_features=tree,
                      encoded_count=record.encoded_count,
                      unencoded_count=record.unencoded_count, category=record.category,
                      translation=record.translation, example=record.example,
                      mwe_trigger=mwe_trigger)


# -- LMF-side entries ----------------------------------------------------------

@dataclass(frozen=True)
class MweRef:
    pattern_id: str
    components: tuple[str, ...]


@dataclass(frozen=True)
class LexicalEntryOut:
    id: str
    status: Status
    written_form: str
    frame_set_refs: tuple[str, ...]
    translation: str = ""
    example: str = ""
    part_of_speech: str = "verb"
    mwe: MweRef | None = None

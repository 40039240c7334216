"""Consistency checks and statistics over an LMF lexicon.

Finding codes (errors unless noted):

========================  ======================================================
DANGLING_REF              an entry or frame set refers to an absent id
DUPLICATE_ID              two elements of one block share an id
BAD_MNEMONIC              a frame or frame-set id does not parse
ARG_IDS                   argument ids of a frame are not 0..n-1 in order
CONTROL_OUT_OF_RANGE      control names an argument absent from the frame
CONTROL_SELF              an argument controls itself
SET_SIZE                  a frame set has fewer than 1 or more than 4 members
SET_HETEROGENEOUS         set members differ outside the %-section
SET_ID_MISMATCH           set id is not stem + member redistributions
FRAME_REDISTRIBUTION      a frame id does not carry exactly one %-label
ILLEGAL_STATUS            entry status outside the three legal values
EMPTY_BEHAVIOUR           entry points to no frame set
MWE_COMPONENTS            MWE entry component count does not fit its pattern
MWE_RANKS                 pattern component ranks are not 1..k
BAD_VALUE                 feat value outside its closed vocabulary
MOOD_WITHOUT_CLAUSE       mood on an argument without completive clause
MISSING_FEAT              required feat or child element absent
UNKNOWN_ELEMENT           element outside the dialect
COMPAT_ATTR (warning)     ``attr=`` used for ``att=``; error under strict mode
ORDER (warning)           blocks or ids out of canonical order
========================  ======================================================
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .catalog import LEXEME_PROPERTIES, MOODS, RESTRICTIONS, ROLES
from .diagnostics import ERROR, Report
from .frames import CLAUSAL, FUNCTIONS
from .lmf import LmfDocument, LmfError, check_references, load_lmf
from .model import Status

MAX_SET_SIZE = 4
CONSTITUENTS = ("NP", "PP", "infinitive-clause", "completive-clause", "wh-completive-clause",
                "adj", "clitic-nominative", "clitic-accusative", "clitic-pronoun")
STRICT_ESCALATE = ("COMPAT_ATTR",)


def _bad_value(report: Report, what: str, value, path: str) -> None:
    # an empty value stands for a feat the reader already reported missing
    if value != "":
        report.error("BAD_VALUE", f"invalid {what} {value!r}", path)


def validate_document(doc: LmfDocument, report: Report | None = None) -> Report:
    report = report if report is not None else Report()
    check_references(doc, report)
    frames = {f.id: f for f in doc.frames}
    patterns = {p.pattern_id: p for p in doc.mwe_patterns}

    for f in doc.frames:
        path = f"SubcategorizationFrame[{f.id}]"
        if len(f.mnemonic.redistributions) != 1:
            report.error("FRAME_REDISTRIBUTION", "frame id must carry one redistribution",
                         path)
        if f.props.voice not in LEXEME_PROPERTIES["voice"]:
            _bad_value(report, "voice", f.props.voice, path)
        if f.props.auxiliary not in LEXEME_PROPERTIES["auxiliary"]:
            _bad_value(report, "auxiliary", f.props.auxiliary, path)
        if f.props.non_argumental_clitic not in (None,) + \
                LEXEME_PROPERTIES["non-argumental-clitic"]:
            _bad_value(report, "non-argumental-clitic", f.props.non_argumental_clitic, path)
        ids = [a.id for a in f.arguments]
        if ids != list(range(len(ids))):
            report.error("ARG_IDS", f"argument ids {ids} are not 0..{len(ids) - 1}", path)
        for a in f.arguments:
            apath = f"{path}/SyntacticArgument[{a.id}]"
            for c in a.control:
                if c == a.id:
                    report.error("CONTROL_SELF", f"argument {a.id} controls itself", apath)
                elif c not in ids:
                    report.error("CONTROL_OUT_OF_RANGE",
                                 f"control {c} names no argument of the frame", apath)
            if a.function not in FUNCTIONS:
                _bad_value(report, "syntactic function", a.function, apath)
            for c in a.constituents:
                if c not in CONSTITUENTS:
                    _bad_value(report, "constituent", c, apath)
            for r in a.restriction:
                if r not in RESTRICTIONS:
                    _bad_value(report, "restriction", r, apath)
            if a.mood is not None:
                if a.mood not in MOODS:
                    _bad_value(report, "mood", a.mood, apath)
                if "completive-clause" not in a.constituents:
                    report.error("MOOD_WITHOUT_CLAUSE", "mood on a non-completive argument",
                                 apath)
            if a.role is not None and a.role not in ROLES:
                _bad_value(report, "role", a.role, apath)
            if a.control and not any(c in CLAUSAL for c in a.constituents):
                report.warning("CONTROL_WITHOUT_CLAUSE",
                               "control on an argument without clausal constituent", apath)

    for s in doc.frame_sets:
        path = f"SubcategorizationFrameSet[{s.id}]"
        if not 1 <= len(s.frame_ids) <= MAX_SET_SIZE:
            report.error("SET_SIZE", f"{len(s.frame_ids)} members (allowed 1..{MAX_SET_SIZE})",
                         path)
        members = [frames[i] for i in s.frame_ids if i in frames]
        stems = {m.mnemonic.stem for m in members}
        if len(stems) > 1:
            report.error("SET_HETEROGENEOUS", "members differ outside the %-section", path)
        elif members:
            expected = members[0].mnemonic.stem + ";" + ",".join(
                "%" + r for m in members for r in m.mnemonic.redistributions)
            if expected != s.id:
                report.error("SET_ID_MISMATCH", f"expected id {expected!r}", path)

    for e in doc.lexical_entries:
        path = f"LexicalEntry[{e.id}]"
        if not e.frame_set_refs:
            report.error("EMPTY_BEHAVIOUR", "entry refers to no frame set", path)
        if e.mwe is not None:
            pattern = patterns.get(e.mwe.pattern_id)
            if len(e.mwe.components) < 2 or (
                    pattern is not None and len(e.mwe.components) != len(pattern.ranks)):
                report.error("MWE_COMPONENTS", f"{len(e.mwe.components)} components for "
                             f"pattern {e.mwe.pattern_id!r}", path)
    for p in doc.mwe_patterns:
        try:
            p.check()
        except ValueError as exc:
            report.error("MWE_RANKS", str(exc), f"MWEPattern[{p.pattern_id}]")
    return report


def validate_bytes(data: bytes | str, strict: bool = False) -> tuple[LmfDocument | None, Report]:
    """Read and check a document.  Unreadable XML yields a single MALFORMED error."""
    try:
        doc, report = load_lmf(data)
    except LmfError as exc:
        report = Report()
        report.error("MALFORMED", str(exc))
        return None, report
    validate_document(doc, report)
    if strict:
        report.findings = [
            f if f.code not in STRICT_ESCALATE else type(f)(ERROR, f.code, f.message, f.location)
            for f in report.findings]
    return doc, report


# -- statistics ----------------------------------------------------------------

@dataclass
class StatsReport:
    entries: int = 0
    distinct_lemmas: int = 0
    frames: int = 0
    frame_sets: int = 0
    set_size_histogram: dict[int, int] = field(default_factory=dict)
    status_histogram: dict[str, int] = field(default_factory=dict)
    mwe_entries: int = 0
    warnings: int = 0

    def to_json(self) -> str:
        payload = {
            "schema": 1,
            "entries": self.entries,
            "distinct_lemmas": self.distinct_lemmas,
            "frames": self.frames,
            "frame_sets": self.frame_sets,
            "set_size_histogram": {str(k): v for k, v in sorted(self.set_size_histogram.items())},
            "status_histogram": {s.value: self.status_histogram.get(s.value, 0) for s in Status},
            "mwe_entries": self.mwe_entries,
            "warnings": self.warnings,
        }
        return json.dumps(payload, ensure_ascii=False, indent=2)

    def to_text(self) -> str:
        hist = ", ".join(f"{k}:{v}" for k, v in sorted(self.set_size_histogram.items()))
        status = ", ".join(f"{s.value}:{self.status_histogram.get(s.value, 0)}"
                           for s in Status)
        return "\n".join([
            f"entries          {self.entries}",
            f"distinct lemmas  {self.distinct_lemmas}",
            f"frames           {self.frames}",
            f"frame sets       {self.frame_sets}",
            f"set sizes        {hist or '-'}",
            f"statuses         {status}",
            f"MWE entries      {self.mwe_entries}",
            f"warnings         {self.warnings}",
        ]) + "\n"


def compute_stats(doc: LmfDocument, warnings: int = 0) -> StatsReport:
    return StatsReport(
        entries=len(doc.lexical_entries),
        distinct_lemmas=len({e.written_form for e in doc.lexical_entries}),
        frames=len(doc.frames),
        frame_sets=len(doc.frame_sets),
        set_size_histogram=dict(sorted(Counter(len(s.frame_ids)
                                               for s in doc.frame_sets).items())),
        status_histogram=dict(Counter(e.status.value for e in doc.lexical_entries)),
        mwe_entries=sum(1 for e in doc.lexical_entries if e.mwe is not None),
        warnings=warnings)


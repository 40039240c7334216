"""Tables -> LMF document, with per-table parallelism and a sequential merge."""

from __future__ import annotations

import hashlib
import xml.etree.ElementTree as ET
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import FeatureCatalog, classify_feature, load_catalog, parse_feature_id
from .diagnostics import Finding, Report
from .frames import (CompileError, Frame, InternError, compile_frames, detect_frozen_clitic,
                     group_into_sets, intern_frames)
from .lmf import LmfDocument, Metadata, emit_lmf, natural_key, serialize_element
from .model import (LexicalEntryOut, LGLexEntry, MweRef, Status, build_lglex_entry,
                    compute_status)
from .tables import (Category, ClassFeatureMatrix, ClassSymbol, TableError, merge_features,
                     parse_class_table, parse_table_of_classes)
from .validate import validate_bytes


@dataclass
class CompiledEntry:
    lglex: LGLexEntry
    status: Status
    frames: list[Frame]
    mwe: MweRef | None = None


@dataclass
class TableResult:
    class_id: str
    entries: list[CompiledEntry] = field(default_factory=list)
    findings: list[Finding] = field(default_factory=list)


@dataclass
class Conversion:
    document: LmfDocument | None
    report: Report
    entries: list[CompiledEntry]
    output: bytes = b""


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def convert_table(data: bytes, source: str, class_id: str, category: Category,
                  matrix: ClassFeatureMatrix, catalog: FeatureCatalog,
                  delimiter: str = ";") -> TableResult:
    """Parse, merge and compile one class table.  Never raises on bad input."""
    report = Report()
    result = TableResult(class_id)
    try:
        table = parse_class_table(data, class_id, category, delimiter=delimiter, source=source)
        records = merge_features(table, matrix, report)
    except TableError as exc:
        report.error("TABLE", str(exc), exc.location or source)
        result.findings = report.findings
        return result
    for record in records:
        location = f"{source}:{record.index}"
        entry = build_lglex_entry(record, catalog, report)
        status = compute_status(record.encoded_count, record.unencoded_count, report, location)
        try:
            frames = compile_frames(entry, catalog, report)
            mwe = detect_frozen_clitic(entry, catalog)
        except CompileError as exc:
            report.error("COMPILE", str(exc), location)
            continue
        result.entries.append(CompiledEntry(entry, status, frames, mwe))
    result.findings = report.findings
    return result


def _run_tables(jobs: list[tuple], workers: int) -> list[TableResult]:
    if workers <= 1 or len(jobs) <= 1:
        return [convert_table(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(convert_table, *zip(*jobs)))


def build_document(compiled: list[CompiledEntry], catalog: FeatureCatalog,
                   metadata: Metadata) -> LmfDocument:
    """Sequential merge: intern frames, group sets, assemble entries."""
    kept = [c for c in compiled if c.frames]
    store = intern_frames(c.frames for c in kept)
    sets, refs = group_into_sets(store, [[f.id for f in c.frames] for c in kept])
    entries = []
    pattern_ids = set()
    for c, entry_refs in zip(kept, refs):
        entries.append(LexicalEntryOut(
            id=c.lglex.entry_id, status=c.status, written_form=c.lglex.lemma,
            frame_set_refs=entry_refs, translation=c.lglex.translation,
            example=c.lglex.example, part_of_speech=c.lglex.category.value, mwe=c.mwe))
        if c.mwe is not None:
            pattern_ids.add(c.mwe.pattern_id)
    patterns = [catalog.mwe_patterns[p] for p in sorted(pattern_ids)]
    return LmfDocument(tuple(entries), tuple(sets), tuple(store), tuple(patterns), metadata)


def convert(tables_dir: str | Path, classes_file: str | Path, catalog_file: str | Path,
            category: str = "verb", *, delimiter: str = ";", jobs: int = 1,
            exclude_statuses: tuple[Status, ...] = ()) -> Conversion:
    tables_dir, classes_file, catalog_file = Path(tables_dir), Path(classes_file), \
        Path(catalog_file)
    category = Category(category)
    report = Report()
    classes_bytes = classes_file.read_bytes()
    catalog_bytes = catalog_file.read_bytes()
    catalog = load_catalog(catalog_bytes)
    matrix = parse_table_of_classes(classes_bytes, category, delimiter=delimiter,
                                    source=classes_file.name)

    paths = sorted(tables_dir.glob("*.csv"), key=lambda p: natural_key(p.stem))
    sources = [(classes_file.name, _digest(classes_bytes)),
               (catalog_file.name, _digest(catalog_bytes))]
    work = []
    for path in paths:
        data = path.read_bytes()
        sources.append((path.name, _digest(data)))
        if path.stem not in matrix.classes:
            report.error("UNKNOWN_CLASS", f"class {path.stem!r} is not in the table of "
                         f"classes", path.name)
            continue
        work.append((data, path.name, path.stem, category, matrix, catalog, delimiter))

    # features the run will consult, checked against the catalog once
    used = {f for (_, _, cid, *_rest) in work for f in matrix.features
            if matrix.symbol(cid, f) in (ClassSymbol.PLUS, ClassSymbol.MINUS,
                                         ClassSymbol.LOWER_O)}
    for feature in sorted(used):
        classify_feature(parse_feature_id(feature), catalog, report)

    compiled: list[CompiledEntry] = []
    for result in _run_tables(work, jobs):
        report.extend(result.findings)
        compiled.extend(c for c in result.entries if c.status not in exclude_statuses)

    metadata = Metadata(category=category.value, sources=tuple(sources))
    if report.errors:
        return Conversion(None, report, compiled)
    try:
        doc = build_document(compiled, catalog, metadata)
    except InternError as exc:
        report.error("INTERN_CONFLICT", str(exc))
        return Conversion(None, report, compiled)
    output = emit_lmf(doc)
    _, check = validate_bytes(output)
    report.extend(check.findings)
    return Conversion(doc, report, compiled, output)


def dump_lglex(entries: list[CompiledEntry]) -> bytes:
    """Intermediate lexicon as an XML feature tree (positive features only)."""
    root = ET.Element("lglex")
    for c in entries:
        e = c.lglex
        elem = ET.SubElement(root, "entry", {
            "id": e.entry_id, "status": c.status.value, "lemma": e.lemma,
            "class": e.class_id, "row": str(e.row_index),
            "encoded": str(e.encoded_count), "unencoded": str(e.unencoded_count)})
        tree = e.positive_features
        args = ET.SubElement(elem, "arguments")
        for slot, features in tree.arguments.items():
            a = ET.SubElement(args, "argument", {"slot": str(slot)})
            for f in features:
                _dump_feature(a, f)
        for branch, features in (("constructions", tree.constructions),
                                 ("lexeme-properties", tree.lexeme_properties),
                                 ("other", tree.other)):
            b = ET.SubElement(elem, branch)
            for f in features:
                _dump_feature(b, f)
    return ('<?xml version="1.0" encoding="UTF-8"?>\n' + serialize_element(root)).encode()


def _dump_feature(parent: ET.Element, feature) -> None:
    attrs = {"id": feature.id, "type": type(feature.expr.parsed).__name__.lower()}
    if isinstance(feature.value, str):
        attrs["value"] = feature.value
    ET.SubElement(parent, "feature", attrs)

"""LMF XML output and input.

Data is carried by ``<feat att="..." val="..."/>`` children; multi-valued
attributes are space-separated inside ``val``.  The emitted layout is the
canonical one produced by :func:`canonicalize` (2-space indentation, LF
line endings, attributes ordered ``id``, ``status``, then alphabetically),
so emitting is byte-deterministic and golden comparisons are plain string
comparisons.

The ``LexicalResource``/``GlobalInformation`` envelope is a convention of
this tool; it records the sources a lexicon was generated from.
"""

from __future__ import annotations

import re
import warnings
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from . import __version__
from .catalog import MWEComponentRole, MWEPatternDef
from .diagnostics import Report
from .frames import Argument, Frame, FrameSet, LexemeProps
from .mnemonic import MnemonicError, parse_mnemonic
from .model import LexicalEntryOut, MweRef, Status


class LmfError(ValueError):
    """Raised on unreadable or inconsistent LMF documents."""


class LmfWarning(UserWarning):
    """Issued on accepted but non-canonical input."""


def natural_key(text: str) -> tuple:
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", text))


@dataclass(frozen=True)
class Metadata:
    language: str = "fra"
    category: str = "verb"
    generator: str = f"lg2lmf {__version__}"
    sources: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class LmfDocument:
    """A whole lexicon.  Blocks are kept sorted by id."""

    lexical_entries: tuple[LexicalEntryOut, ...] = ()
    frame_sets: tuple[FrameSet, ...] = ()
    frames: tuple[Frame, ...] = ()
    mwe_patterns: tuple[MWEPatternDef, ...] = ()
    metadata: Metadata = field(default_factory=Metadata)

    def __post_init__(self):
        object.__setattr__(self, "lexical_entries", tuple(
            sorted(self.lexical_entries, key=lambda e: natural_key(e.id))))
        object.__setattr__(self, "frame_sets", tuple(sorted(self.frame_sets,
                                                            key=lambda s: s.id)))
        object.__setattr__(self, "frames", tuple(sorted(self.frames, key=lambda f: f.id)))
        object.__setattr__(self, "mwe_patterns", tuple(
            sorted(self.mwe_patterns, key=lambda p: p.pattern_id)))


# -- writing -------------------------------------------------------------------

def _xml_char_ok(ch: str) -> bool:
    c = ord(ch)
    return c in (0x9, 0xA, 0xD) or 0x20 <= c <= 0xD7FF or 0xE000 <= c <= 0xFFFD \
        or 0x10000 <= c <= 0x10FFFF


def _escape(value: str, attribute: bool = True) -> str:
    bad = [ch for ch in value if not _xml_char_ok(ch)]
    if bad:
        raise LmfError(f"character {bad[0]!r} cannot appear in XML: {value!r}")
    value = value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    if attribute:
        value = (value.replace('"', "&quot;").replace("\n", "&#10;")
                 .replace("\r", "&#13;").replace("\t", "&#9;"))
    return value


def _attr_order(item: tuple[str, str]) -> tuple[int, str]:
    return ({"id": 0, "status": 1}.get(item[0], 2), item[0])


def _write(elem: ET.Element, out: list[str], depth: int) -> None:
    pad = "  " * depth
    attrs = "".join(f' {k}="{_escape(v)}"' for k, v in sorted(elem.attrib.items(),
                                                                key=_attr_order))
    text = (elem.text or "").strip()
    children = list(elem)
    if not children:
        if text:
            out.append(f"{pad}<{elem.tag}{attrs}>{_escape(text, False)}</{elem.tag}>")
        else:
            out.append(f"{pad}<{elem.tag}{attrs}/>")
        return
    out.append(f"{pad}<{elem.tag}{attrs}>")
    if text:
        out.append(f"{pad}  {_escape(text, False)}")
    for child in children:
        _write(child, out, depth + 1)
    out.append(f"{pad}</{elem.tag}>")


def serialize_element(elem: ET.Element, depth: int = 0) -> str:
    out: list[str] = []
    _write(elem, out, depth)
    return "\n".join(out) + "\n"


def _document_bytes(root: ET.Element) -> bytes:
    return ('<?xml version="1.0" encoding="UTF-8"?>\n' + serialize_element(root)).encode()


def _feat(parent: ET.Element, att: str, val: str) -> None:
    ET.SubElement(parent, "feat", {"att": att, "val": val})


def entry_element(entry: LexicalEntryOut) -> ET.Element:
    attrs = {"id": entry.id, "status": entry.status.value}
    if entry.mwe is not None:
        attrs["mwePattern"] = entry.mwe.pattern_id
    elem = ET.Element("LexicalEntry", attrs)
    _feat(elem, "partOfSpeech", entry.part_of_speech)
    lemma = ET.SubElement(elem, "Lemma")
    _feat(lemma, "writtenForm", entry.written_form)
    if entry.translation:
        _feat(lemma, "translation", entry.translation)
    if entry.example:
        _feat(lemma, "example", entry.example)
    if entry.mwe is not None:
        comps = ET.SubElement(elem, "ListOfComponents")
        for c in entry.mwe.components:
            ET.SubElement(comps, "Component", {"entry": c})
    ET.SubElement(elem, "SyntacticBehaviour",
                  {"subcategorizationFrameSets": " ".join(entry.frame_set_refs)})
    return elem


def frame_set_element(fs: FrameSet) -> ET.Element:
    return ET.Element("SubcategorizationFrameSet",
                      {"id": fs.id, "subcategorizationFrames": " ".join(fs.frame_ids)})


def frame_element(frame: Frame) -> ET.Element:
    elem = ET.Element("SubcategorizationFrame", {"id": frame.id})
    props = ET.SubElement(elem, "LexemeProperty")
    _feat(props, "voice", frame.props.voice)
    _feat(props, "auxiliary", frame.props.auxiliary)
    if frame.props.negation:
        _feat(props, "negation", "yes")
    if frame.props.non_argumental_clitic:
        _feat(props, "non-argumental-clitic", frame.props.non_argumental_clitic)
    for arg in frame.arguments:
        a = ET.SubElement(elem, "SyntacticArgument")
        _feat(a, "id", str(arg.id))
        _feat(a, "syntacticFunction", arg.function)
        _feat(a, "syntacticConstituent", " ".join(arg.constituents))
        if arg.introducers or arg.locative:
            _feat(a, "introducer", " ".join(arg.introducers + (("loc",) if arg.locative
                                                               else ())))
        if arg.optional:
            _feat(a, "optionality", "optional")
        if arg.mood:
            _feat(a, "mood", arg.mood)
        if arg.restriction:
            _feat(a, "restriction", " ".join(arg.restriction))
        if arg.control:
            _feat(a, "control", " ".join(str(c) for c in arg.control))
        if arg.role:
            _feat(a, "role", arg.role)
    return elem


def mwe_pattern_element(pattern: MWEPatternDef) -> ET.Element:
    elem = ET.Element("MWEPattern", {"id": pattern.pattern_id})
    node = ET.SubElement(elem, "MWENode")
    for dep in pattern.dependents:
        edge = ET.SubElement(node, "MWEEdge")
        _feat(edge, "function", dep.function)
        sub = ET.SubElement(edge, "MWENode")
        _feat(sub, "syntacticConstituent", dep.constituent)
        lex = ET.SubElement(sub, "MWELex")
        _feat(lex, "componentRank", str(dep.rank))
    lex = ET.SubElement(node, "MWELex")
    _feat(lex, "componentRank", str(pattern.head_rank))
    return elem


def document_element(doc: LmfDocument) -> ET.Element:
    root = ET.Element("LexicalResource")
    info = ET.SubElement(root, "GlobalInformation")
    _feat(info, "category", doc.metadata.category)
    _feat(info, "generator", doc.metadata.generator)
    for name, digest in doc.metadata.sources:
        _feat(info, "source", f"{name} {digest}")
    lexicon = ET.SubElement(root, "Lexicon")
    _feat(lexicon, "language", doc.metadata.language)
    lexicon.extend(entry_element(e) for e in doc.lexical_entries)
    lexicon.extend(frame_set_element(s) for s in doc.frame_sets)
    lexicon.extend(frame_element(f) for f in doc.frames)
    lexicon.extend(mwe_pattern_element(p) for p in doc.mwe_patterns)
    return root


def emit_lmf(doc: LmfDocument) -> bytes:
    return _document_bytes(document_element(doc))


# -- canonical form ------------------------------------------------------------

def _parse(data: bytes | str) -> ET.Element:
    try:
        return ET.fromstring(data)
    except ET.ParseError as exc:
        raise LmfError(f"malformed XML: {exc}") from None


def _normalize(elem: ET.Element) -> None:
    attrs = {}
    for k, v in elem.attrib.items():
        attrs["att" if k == "attr" else k] = " ".join(v.split())
    elem.attrib.clear()
    elem.attrib.update(attrs)
    elem.text = (elem.text or "").strip() or None
    elem.tail = None
    for child in elem:
        _normalize(child)


def canonical_element(elem: ET.Element) -> str:
    """Canonical text of one element (no XML declaration)."""
    copy = ET.fromstring(ET.tostring(elem))
    _normalize(copy)
    return serialize_element(copy)


def canonicalize(data: bytes | str) -> bytes:
    root = _parse(data)
    _normalize(root)
    return _document_bytes(root)


def extract_entry(data: bytes | str, entry_id: str) -> str:
    root = _parse(data)
    for elem in root.iter("LexicalEntry"):
        if elem.get("id") == entry_id:
            return canonical_element(elem)
    raise LmfError(f"no entry {entry_id!r}")


# -- reading -------------------------------------------------------------------

BLOCKS = ("LexicalEntry", "SubcategorizationFrameSet", "SubcategorizationFrame", "MWEPattern")


class _Reader:
    def __init__(self, report: Report):
        self.report = report

    def feats(self, elem: ET.Element, path: str) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for child in elem:
            if child.tag != "feat":
                continue
            att = child.get("att")
            if att is None and child.get("attr") is not None:
                att = child.get("attr")
                self.report.warning("COMPAT_ATTR", "feat uses 'attr' instead of 'att'", path)
            val = child.get("val")
            if att is None or val is None:
                self.report.error("MISSING_FEAT", "feat without att/val", path)
                continue
            out.setdefault(att, []).append(val)
        return out

    def need(self, feats: dict[str, list[str]], att: str, path: str) -> str | None:
        if att not in feats:
            self.report.error("MISSING_FEAT", f"missing feat {att!r}", path)
            return None
        return feats[att][0]

    def only(self, elem: ET.Element, allowed: tuple[str, ...], path: str) -> None:
        for child in elem:
            if child.tag not in allowed:
                self.report.error("UNKNOWN_ELEMENT", f"unexpected element <{child.tag}>",
                                  path)

    def entry(self, elem: ET.Element) -> LexicalEntryOut | None:
        eid = elem.get("id", "")
        path = f"LexicalEntry[{eid}]"
        if not eid:
            self.report.error("MISSING_ID", "entry without id", path)
            return None
        self.only(elem, ("feat", "Lemma", "ListOfComponents", "SyntacticBehaviour"), path)
        raw_status = elem.get("status", "")
        try:
            status = Status(raw_status)
        except ValueError:
            self.report.error("ILLEGAL_STATUS", f"illegal status {raw_status!r}", path)
            status = Status.TO_BE_ENCODED
        pos = self.need(self.feats(elem, path), "partOfSpeech", path) or ""
        lemma = elem.find("Lemma")
        lemma_feats = {}
        if lemma is None:
            self.report.error("MISSING_FEAT", "entry without Lemma", path)
        else:
            self.only(lemma, ("feat",), path + "/Lemma")
            lemma_feats = self.feats(lemma, path + "/Lemma")
            self.need(lemma_feats, "writtenForm", path + "/Lemma")
        behaviour = elem.find("SyntacticBehaviour")
        refs: tuple[str, ...] = ()
        if behaviour is None:
            self.report.error("MISSING_FEAT", "entry without SyntacticBehaviour", path)
        else:
            refs = tuple(behaviour.get("subcategorizationFrameSets", "").split())
        mwe = None
        comps = elem.find("ListOfComponents")
        if elem.get("mwePattern") is not None or comps is not None:
            components = tuple(c.get("entry", "") for c in comps.iter("Component")) \
                if comps is not None else ()
            mwe = MweRef(elem.get("mwePattern", ""), components)
        return LexicalEntryOut(
            id=eid, status=status,
            written_form=lemma_feats.get("writtenForm", [""])[0],
            frame_set_refs=refs,
            translation=lemma_feats.get("translation", [""])[0],
            example=lemma_feats.get("example", [""])[0],
            part_of_speech=pos, mwe=mwe)

    def frame_set(self, elem: ET.Element) -> FrameSet:
        sid = elem.get("id", "")
        try:
            parse_mnemonic(sid)
        except MnemonicError as exc:
            self.report.error("BAD_MNEMONIC", str(exc), f"SubcategorizationFrameSet[{sid}]")
        return FrameSet(sid, tuple(elem.get("subcategorizationFrames", "").split()))

    def frame(self, elem: ET.Element) -> Frame | None:
        fid = elem.get("id", "")
        path = f"SubcategorizationFrame[{fid}]"
        try:
            mnemonic = parse_mnemonic(fid)
        except MnemonicError as exc:
            self.report.error("BAD_MNEMONIC", str(exc), path)
            return None
        self.only(elem, ("LexemeProperty", "SyntacticArgument"), path)
        prop_elem = elem.find("LexemeProperty")
        if prop_elem is None:
            self.report.error("MISSING_FEAT", "frame without LexemeProperty", path)
            pf = {}
        else:
            pf = self.feats(prop_elem, path + "/LexemeProperty")
        props = LexemeProps(
            voice=self.need(pf, "voice", path) or "",
            auxiliary=self.need(pf, "auxiliary", path) or "",
            negation="negation" in pf,
            non_argumental_clitic=pf.get("non-argumental-clitic", [None])[0])
        args = []
        for n, a in enumerate(elem.findall("SyntacticArgument")):
            apath = f"{path}/SyntacticArgument[{n}]"
            af = self.feats(a, apath)
            raw_id = self.need(af, "id", apath)
            try:
                arg_id = int(raw_id) if raw_id is not None else n
            except ValueError:
                self.report.error("ARG_IDS", f"non-numeric argument id {raw_id!r}", apath)
                arg_id = n
            intro = af.get("introducer", [""])[0].split()
            try:
                control = tuple(int(c) for c in af.get("control", [""])[0].split())
            except ValueError:
                self.report.error("CONTROL_OUT_OF_RANGE", "non-numeric control", apath)
                control = ()
            args.append(Argument(
                id=arg_id,
                function=self.need(af, "syntacticFunction", apath) or "",
                constituents=tuple((self.need(af, "syntacticConstituent", apath) or "")
                                   .split()),
                introducers=tuple(p for p in intro if p != "loc"),
                locative="loc" in intro,
                restriction=tuple(af.get("restriction", [""])[0].split()),
                optional=af.get("optionality", [""])[0] == "optional",
                mood=af.get("mood", [None])[0],
                control=control,
                role=af.get("role", [None])[0]))
        return Frame(mnemonic, props, tuple(args))

    def mwe_pattern(self, elem: ET.Element) -> MWEPatternDef | None:
        pid = elem.get("id", "")
        path = f"MWEPattern[{pid}]"
        node = elem.find("MWENode")
        if node is None:
            self.report.error("MISSING_FEAT", "pattern without MWENode", path)
            return None
        self.only(node, ("MWEEdge", "MWELex", "feat"), path)
        dependents = []
        head = None
        for child in node:
            if child.tag == "MWELex":
                head = self.need(self.feats(child, path), "componentRank", path)
            elif child.tag == "MWEEdge":
                function = self.need(self.feats(child, path), "function", path)
                sub = child.find("MWENode")
                if sub is None:
                    self.report.error("MISSING_FEAT", "edge without MWENode", path)
                    continue
                constituent = self.need(self.feats(sub, path), "syntacticConstituent", path)
                lex = sub.find("MWELex")
                rank = self.need(self.feats(lex, path), "componentRank", path) \
                    if lex is not None else None
                if None in (function, constituent, rank):
                    continue
                dependents.append(MWEComponentRole(int(rank), function, constituent))
        if head is None:
            self.report.error("MISSING_FEAT", "pattern without head MWELex", path)
            return None
        return MWEPatternDef(pid, int(head), tuple(sorted(dependents, key=lambda d: d.rank)))

    def document(self, root: ET.Element) -> LmfDocument:
        if root.tag != "LexicalResource":
            raise LmfError(f"root element is <{root.tag}>, expected <LexicalResource>")
        self.only(root, ("GlobalInformation", "Lexicon"), "LexicalResource")
        meta = Metadata(generator="", sources=())
        info = root.find("GlobalInformation")
        if info is not None:
            gf = self.feats(info, "GlobalInformation")
            meta = Metadata(
                category=gf.get("category", ["verb"])[0],
                generator=gf.get("generator", [""])[0],
                sources=tuple(tuple(s.rsplit(" ", 1)) if " " in s else (s, "")
                              for s in gf.get("source", [])))
        lexicon = root.find("Lexicon")
        if lexicon is None:
            raise LmfError("document has no <Lexicon>")
        lf = self.feats(lexicon, "Lexicon")
        meta = Metadata(language=lf.get("language", ["fra"])[0], category=meta.category,
                        generator=meta.generator, sources=meta.sources)

        entries, sets, frames, patterns = [], [], [], []
        seen: dict[str, set[str]] = {b: set() for b in BLOCKS}
        last_block, last_key = -1, None
        for child in lexicon:
            if child.tag == "feat":
                continue
            if child.tag not in BLOCKS:
                self.report.error("UNKNOWN_ELEMENT", f"unexpected element <{child.tag}>",
                                  "Lexicon")
                continue
            block = BLOCKS.index(child.tag)
            cid = child.get("id", "")
            key = natural_key(cid) if block == 0 else cid
            if block < last_block or (block == last_block and key < last_key):
                self.report.warning("ORDER", "element out of canonical order",
                                    f"{child.tag}[{cid}]")
            last_block, last_key = block, key
            if cid in seen[child.tag]:
                self.report.error("DUPLICATE_ID", f"duplicate id {cid!r}",
                                  f"{child.tag}[{cid}]")
                continue
            seen[child.tag].add(cid)
            if block == 0:
                item = self.entry(child)
                if item is not None:
                    entries.append(item)
            elif block == 1:
                sets.append(self.frame_set(child))
            elif block == 2:
                item = self.frame(child)
                if item is not None:
                    frames.append(item)
            else:
                item = self.mwe_pattern(child)
                if item is not None:
                    patterns.append(item)
        return LmfDocument(tuple(entries), tuple(sets), tuple(frames), tuple(patterns), meta)


def load_lmf(data: bytes | str) -> tuple[LmfDocument, Report]:
    """Lenient read: structural problems are reported, not raised."""
    report = Report()
    doc = _Reader(report).document(_parse(data))
    return doc, report


def check_references(doc: LmfDocument, report: Report) -> None:
    set_ids = {s.id for s in doc.frame_sets}
    frame_ids = {f.id for f in doc.frames}
    pattern_ids = {p.pattern_id for p in doc.mwe_patterns}
    for e in doc.lexical_entries:
        for ref in e.frame_set_refs:
            if ref not in set_ids:
                report.error("DANGLING_REF", f"entry {e.id!r} refers to missing frame set "
                             f"{ref!r}", f"LexicalEntry[{e.id}]")
        if e.mwe is not None and e.mwe.pattern_id not in pattern_ids:
            report.error("DANGLING_REF", f"entry {e.id!r} refers to missing MWE pattern "
                         f"{e.mwe.pattern_id!r}", f"LexicalEntry[{e.id}]")
    for s in doc.frame_sets:
        for ref in s.frame_ids:
            if ref not in frame_ids:
                report.error("DANGLING_REF", f"frame set {s.id!r} refers to missing frame "
                             f"{ref!r}", f"SubcategorizationFrameSet[{s.id}]")


def read_lmf(data: bytes | str) -> LmfDocument:
    doc, report = load_lmf(data)
    check_references(doc, report)
    if report.errors:
        raise LmfError("; ".join(str(f) for f in report.errors))
    for w in report.warnings:
        warnings.warn(str(w), LmfWarning, stacklevel=2)
    return doc

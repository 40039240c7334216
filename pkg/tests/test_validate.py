from dataclasses import replace

import pytest

from lg2lmf.catalog import MWEComponentRole, MWEPatternDef
from lg2lmf.frames import Frame, FrameSet, LexemeProps
from lg2lmf.lmf import LmfDocument, emit_lmf
from lg2lmf.mnemonic import parse_mnemonic
from lg2lmf.model import MweRef
from lg2lmf.validate import StatsReport, compute_stats, validate_bytes, validate_document

ARRIVER = "[Suj:cln|scomp|sinf|sn,Obj:(à-sn|sn|cla)];@être,@SujN-hum,@ObjNhum;%actif"
CONFIRMER_SET = ("[Suj:cln|scomp|sinf|sn,Obj:sn|cla];@avoir,@ObjN-hum,@SujN-hum,@SujNhum;"
                 "%actif,%passif")


@pytest.fixture(scope="module")
def doc(small_conversion):
    return small_conversion.document


def _errors(doc: LmfDocument) -> set[str]:
    _, report = validate_bytes(emit_lmf(doc))
    return report.codes("error")


def _text_errors(data: bytes) -> set[str]:
    _, report = validate_bytes(data)
    return report.codes("error")


def _with_frame(doc, frame_id, **changes):
    frames = tuple(replace(f, **changes) if f.id == frame_id else f for f in doc.frames)
    return replace(doc, frames=frames)


def _with_arg(doc, frame_id, index, **changes):
    frame = next(f for f in doc.frames if f.id == frame_id)
    args = list(frame.arguments)
    args[index] = replace(args[index], **changes)
    return _with_frame(doc, frame_id, arguments=tuple(args))


def test_fixture_passes(doc, small_conversion):
    report = validate_document(doc)
    assert report.passed and not report.findings
    _, report = validate_bytes(small_conversion.output, strict=True)
    assert report.passed


def test_dangling_ref(doc):
    e = doc.lexical_entries[0]
    bad = replace(e, frame_set_refs=("[Suj:sn];@avoir;%actif",))
    assert _errors(replace(doc, lexical_entries=(bad,) + doc.lexical_entries[1:])) \
        == {"DANGLING_REF"}


def test_dangling_frame_in_set(doc):
    s = doc.frame_sets[0]
    bad = replace(s, frame_ids=s.frame_ids[:-1] + ("[Suj:sn];@avoir;%actif",))
    _, report = validate_bytes(emit_lmf(replace(doc, frame_sets=(bad,) + doc.frame_sets[1:])))
    assert "DANGLING_REF" in report.codes("error")
    assert any("[Suj:sn];@avoir;%actif" in f.message for f in report.errors)


def test_arg_ids(doc):
    frame = next(f for f in doc.frames if f.id.startswith("[Suj:cln|sn,Obl:dans-sn]"))
    assert _errors(_with_arg(doc, frame.id, 1, id=2)) == {"ARG_IDS"}


def test_control_out_of_range(doc):
    assert _errors(_with_arg(doc, ARRIVER, 0, control=(7,))) == {"CONTROL_OUT_OF_RANGE"}


def test_control_self(doc):
    assert _errors(_with_arg(doc, ARRIVER, 0, control=(0,))) == {"CONTROL_SELF"}


def test_control_without_clause_warns(doc):
    _, report = validate_bytes(emit_lmf(_with_arg(doc, ARRIVER, 1, control=(0,))))
    assert report.passed and "CONTROL_WITHOUT_CLAUSE" in report.codes("warning")


def test_mood_without_clause(doc):
    assert _errors(_with_arg(doc, ARRIVER, 1, mood="indicative")) == {"MOOD_WITHOUT_CLAUSE"}


def test_bad_value(doc):
    assert _errors(_with_arg(doc, ARRIVER, 1, function="actor")) == {"BAD_VALUE"}
    assert _errors(_with_frame(doc, ARRIVER, props=LexemeProps(auxiliary="aller"))) \
        == {"BAD_VALUE"}


def _five_member_doc(doc):
    stem = "[Suj:sn,Obj:sn];@avoir"
    labels = ["actif", "passif", "actif_impersonnel", "passif_impersonnel", "moyen"]
    frames = tuple(Frame(parse_mnemonic(f"{stem};%{r}"), LexemeProps(), ()) for r in labels)
    set_id = stem + ";" + ",".join("%" + r for r in labels)
    fs = FrameSet(set_id, tuple(f.id for f in frames))
    e = replace(doc.lexical_entries[0], frame_set_refs=(set_id,))
    return replace(doc, lexical_entries=(e,) + doc.lexical_entries[1:],
                   frame_sets=doc.frame_sets + (fs,), frames=doc.frames + frames)


def test_set_size(doc):
    assert _errors(_five_member_doc(doc)) == {"SET_SIZE"}


def test_heterogeneous_set(doc):
    s = next(s for s in doc.frame_sets if s.id == CONFIRMER_SET)
    bad = replace(s, frame_ids=(s.frame_ids[0], ARRIVER))
    sets = tuple(bad if x.id == s.id else x for x in doc.frame_sets)
    assert _errors(replace(doc, frame_sets=sets)) == {"SET_HETEROGENEOUS"}


def test_set_id_mismatch(doc):
    s = next(s for s in doc.frame_sets if s.id == CONFIRMER_SET)
    bad = replace(s, frame_ids=s.frame_ids[:1])
    sets = tuple(bad if x.id == s.id else x for x in doc.frame_sets)
    assert _errors(replace(doc, frame_sets=sets)) == {"SET_ID_MISMATCH"}


def test_frame_redistribution(small_conversion):
    two = ARRIVER.replace(";%actif", ";%actif,%passif")
    data = small_conversion.output.replace(ARRIVER.encode(), two.encode())
    assert _text_errors(data) == {"FRAME_REDISTRIBUTION"}


def test_illegal_status(small_conversion):
    data = small_conversion.output.replace(b'status="completed"', b'status="done"', 1)
    assert _text_errors(data) == {"ILLEGAL_STATUS"}


def test_empty_behaviour(doc):
    e = replace(doc.lexical_entries[0], frame_set_refs=())
    assert _errors(replace(doc, lexical_entries=(e,) + doc.lexical_entries[1:])) \
        == {"EMPTY_BEHAVIOUR"}


def test_mwe_components(doc):
    (e,) = [e for e in doc.lexical_entries if e.mwe is not None]
    bad = replace(e, mwe=MweRef(e.mwe.pattern_id, e.mwe.components + ("N_x",)))
    entries = tuple(bad if x.id == e.id else x for x in doc.lexical_entries)
    assert _errors(replace(doc, lexical_entries=entries)) == {"MWE_COMPONENTS"}


def test_mwe_ranks(doc):
    bad = MWEPatternDef("en-V_y-V", 3, (MWEComponentRole(1, "adjunct", "clitic-pronoun"),))
    assert "MWE_RANKS" in _errors(replace(doc, mwe_patterns=(bad,)))


def test_bad_mnemonic(small_conversion):
    data = small_conversion.output.replace(ARRIVER.encode(), b"not-a-mnemonic")
    assert "BAD_MNEMONIC" in _text_errors(data)


def test_duplicate_id(small_conversion):
    data = small_conversion.output
    start = data.index(b"<LexicalEntry ")
    end = data.index(b"</LexicalEntry>", start) + len(b"</LexicalEntry>")
    dup = data[:end] + b"\n    " + data[start:end] + data[end:]
    assert _text_errors(dup) == {"DUPLICATE_ID"}


def test_missing_feat(small_conversion):
    data = small_conversion.output.replace(b'<feat att="syntacticFunction" val="subject"/>',
                                           b"", 1)
    assert _text_errors(data) == {"MISSING_FEAT"}


def test_unknown_element(small_conversion):
    data = small_conversion.output.replace(b"<Lemma>", b"<Lemma><Bogus/>", 1)
    assert _text_errors(data) == {"UNKNOWN_ELEMENT"}


def test_malformed():
    assert _text_errors(b"<LexicalResource><Lexicon>") == {"MALFORMED"}


def test_compat_attr_strict(small_conversion):
    data = small_conversion.output.replace(b'att="componentRank"', b'attr="componentRank"')
    _, lenient = validate_bytes(data)
    _, strict = validate_bytes(data, strict=True)
    assert lenient.passed and "COMPAT_ATTR" in lenient.codes("warning")
    assert strict.codes("error") == {"COMPAT_ATTR"}


def test_order_warning(small_conversion):
    data = small_conversion.output
    first = data.index(b"<LexicalEntry ")
    second = data.index(b"<LexicalEntry ", first + 1)
    end = data.index(b"</LexicalEntry>", second) + len(b"</LexicalEntry>")
    a, b = data[first:second], data[second:end]
    swapped = data[:first] + b.rstrip() + b"\n    " + a.rstrip() + data[end:]
    _, report = validate_bytes(swapped)
    assert report.passed and "ORDER" in report.codes("warning")


# -- statistics ----------------------------------------------------------------

def test_small_fixture_stats(doc):
    # hand enumeration: confirmer 2 frames, en coûter 2, se hâter 2 (two sets),
    # arriver 1 shared with advenir; sets {2, 2, 1, 1, 1}
    stats = compute_stats(doc)
    assert (stats.entries, stats.distinct_lemmas, stats.frames, stats.frame_sets) == \
        (5, 5, 7, 5)
    assert stats.set_size_histogram == {1: 3, 2: 2}
    assert stats.mwe_entries == 1
    assert stats.status_histogram == {"to be completed": 2, "completed": 3}


def test_stats_invariants(corpus_conversion):
    doc = corpus_conversion.document
    stats = compute_stats(doc)
    referenced = {f for s in doc.frame_sets for f in s.frame_ids}
    assert sum(k * v for k, v in stats.set_size_histogram.items()) >= len(referenced)
    assert stats.frames >= len(referenced)


def test_empty_document_stats():
    stats = compute_stats(LmfDocument((), (), (), ()))
    assert stats == StatsReport(status_histogram={})
    assert '"entries": 0' in stats.to_json()
    assert '"schema": 1' in stats.to_json()

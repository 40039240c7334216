import pytest
from hypothesis import given, strategies as st

from conftest import DATA
from lg2lmf.diagnostics import Report
from lg2lmf.model import Status, compute_status
from lg2lmf.tables import (Category, ClassSymbol, ClassTable, EntryRow, LexicalValue, Minus,
                           Plus, TableError, Unencoded, cell_decode, cell_encode, merge_features, parse_class_table,
                           parse_table_of_classes, serialize_class_table)


def test_cell_symbols():
    assert cell_decode("+") is Plus
    assert cell_decode("-") is Minus
    assert cell_decode("~") is Unencoded
    assert cell_decode(" + ") is Plus


def test_empty_lexical_marker_is_a_value():
    assert cell_decode("<E>") == LexicalValue("<E>")
    assert cell_decode("de") == LexicalValue("de")


def test_question_mark_reads_as_unencoded():
    assert cell_decode("?") is Unencoded


def test_empty_cell_rejected():
    with pytest.raises(TableError):
        cell_decode("  ")


lexical_text = st.text(st.characters(blacklist_categories=("Cs", "Cc", "Zs", "Zl", "Zp")),
                       min_size=1, max_size=12).filter(lambda t: t not in "+-~?")
cell_values = st.one_of(st.sampled_from([Plus, Minus, Unencoded]),
                        lexical_text.map(LexicalValue))


@given(cell_values)
def test_cell_round_trip(value):
    assert cell_decode(cell_encode(value)) == value


# -- the 31R sample ------------------------------------------------------------

@pytest.fixture(scope="module")
def table_31r():
    return parse_class_table((DATA / "31R.tsv").read_bytes(), "31R", delimiter="\t")


def test_31r_shape(table_31r):
    assert len(table_31r.rows) == 12
    assert len(table_31r.feature_columns) == 16
    first, second = table_31r.rows[:2]
    assert first.lemma == second.lemma == "barboter"
    assert first.example == "Le gaz barbote dans l'eau"
    assert table_31r.rows[-1].lemma == "bouillir"


def test_31r_cells(table_31r):
    row = table_31r.rows[1]
    assert row.cells["N0 = Nhum"] is Plus
    assert row.cells["N0 = N-hum"] is Minus
    assert row.cells["Ppv"] == LexicalValue("<E>")
    assert row.cells["Nactif V N0"] is Unencoded
    assert row.cells["[extrap]"] is Plus


def _all_o(table):
    header = ["<CLASS>"] + list(table.feature_columns)
    body = [table.class_id] + ["o"] * len(table.feature_columns)
    return parse_table_of_classes(";".join(header) + "\n" + ";".join(body) + "\n")


def test_31r_statuses(table_31r):
    # hand count over the 16 features: row 1 has 11 '?', rows 2 and 4 a single one
    records = merge_features(table_31r, _all_o(table_31r))
    counts = [(r.encoded_count, r.unencoded_count) for r in records]
    assert counts[0] == (5, 11)
    assert counts[1] == (15, 1)
    assert counts[3] == (15, 1)
    statuses = [compute_status(e, u) for e, u in counts]
    assert statuses[0] is Status.TO_BE_ENCODED
    assert statuses[1] is Status.TO_BE_COMPLETED
    assert statuses[3] is Status.TO_BE_COMPLETED


def test_serialize_round_trip(table_31r):
    text = serialize_class_table(table_31r, delimiter="\t")
    again = parse_class_table(text, "31R", delimiter="\t")
    assert again == table_31r


@given(st.lists(st.lists(cell_values, min_size=3, max_size=3), min_size=1, max_size=8))
def test_serialize_round_trip_property(rows):
    columns = ("<ENT>", "<OPT>", "A", "B", "C")
    table = ClassTable("X", Category.VERB, columns, tuple(
        EntryRow(i, f"v{i}", dict(zip("ABC", r)), "ex") for i, r in enumerate(rows, 1)))
    assert parse_class_table(serialize_class_table(table), "X") == table


# -- parse errors --------------------------------------------------------------

def test_ragged_row_names_row():
    with pytest.raises(TableError) as err:
        parse_class_table("<ENT>;A;B\nv;+;-\nw;+\n", "T", source="T.csv")
    assert err.value.row == 2
    assert "T.csv" in err.value.location and "2" in err.value.location


def test_missing_lemma_column():
    with pytest.raises(TableError, match="<ENT>"):
        parse_class_table("A;B\n+;-\n", "T")


def test_duplicate_header():
    with pytest.raises(TableError, match="duplicate"):
        parse_class_table("<ENT>;A;A\nv;+;-\n", "T")


def test_empty_cell_location():
    with pytest.raises(TableError) as err:
        parse_class_table("<ENT>;A;B\nv;+;\n", "T")
    assert err.value.column == "B" and err.value.row == 1


def test_translation_column():
    table = parse_class_table("<ENT>;<TRAD>;A\nconfirmer;to confirm;+\n", "T")
    assert table.rows[0].translation == "to confirm"
    assert table.feature_columns == ("A",)


def test_bom_and_trailing_blank_lines():
    table = parse_class_table("﻿<ENT>;A\nv;+\n\n\n".encode(), "T")
    assert len(table.rows) == 1


# -- table of classes ----------------------------------------------------------

CLASSES = "<CLASS>;A;B;C;D;E\nK;+;-;o;O;?\n"


def test_class_symbols():
    m = parse_table_of_classes(CLASSES)
    assert [m.symbol("K", f) for f in "ABCDE"] == [
        ClassSymbol.PLUS, ClassSymbol.MINUS, ClassSymbol.LOWER_O, ClassSymbol.UPPER_O,
        ClassSymbol.QUESTION]


def test_invalid_class_symbol():
    with pytest.raises(TableError, match="symbol"):
        parse_table_of_classes("<CLASS>;A\nK;x\n")


def test_duplicate_class():
    with pytest.raises(TableError, match="duplicate class"):
        parse_table_of_classes("<CLASS>;A\nK;+\nK;-\n")


def test_merge_resolution():
    matrix = parse_table_of_classes(CLASSES)
    table = parse_class_table("<ENT>;A;C;D;E\nv;-;~;+;+\nw;+;+;-;-\n", "K")
    report = Report()
    v, w = merge_features(table, matrix, report)
    assert v.resolved == {"A": True, "B": False, "C": Unencoded}
    assert (v.encoded_count, v.unencoded_count) == (2, 1)
    assert w.resolved == {"A": True, "B": False, "C": True}
    assert "CLASS_CELL_CONFLICT" in report.codes()


def test_merge_missing_o_column_is_unencoded():
    matrix = parse_table_of_classes(CLASSES)
    table = parse_class_table("<ENT>;A\nv;+\n", "K")
    (v,) = merge_features(table, matrix)
    assert v.resolved["C"] is Unencoded


def test_merge_unknown_class():
    matrix = parse_table_of_classes(CLASSES)
    table = parse_class_table("<ENT>;A\nv;+\n", "Z")
    with pytest.raises(TableError, match="Z"):
        merge_features(table, matrix)


def test_merge_undeclared_column_warns():
    matrix = parse_table_of_classes(CLASSES)
    table = parse_class_table("<ENT>;Q\nv;+\n", "K")
    report = Report()
    (v,) = merge_features(table, matrix, report)
    assert "Q" not in v.resolved
    assert "COLUMN_NOT_IN_CLASSES" in report.codes()


symbols = st.sampled_from(list("+-oO?"))
entry_cells = st.sampled_from(["+", "-", "~", "de"])


@given(st.lists(st.tuples(symbols, entry_cells), min_size=1, max_size=10))
def test_counts_partition_applicable_features(cols):
    names = [f"F{i}" for i in range(len(cols))]
    matrix = parse_table_of_classes(
        "<CLASS>;" + ";".join(names) + "\nK;" + ";".join(s for s, _ in cols) + "\n")
    table = parse_class_table(
        "<ENT>;" + ";".join(names) + "\nv;" + ";".join(c for _, c in cols) + "\n", "K")
    (rec,) = merge_features(table, matrix)
    applicable = sum(1 for s, _ in cols if s in "+-o")
    assert rec.encoded_count + rec.unencoded_count == applicable
    assert rec.unencoded_count == sum(1 for s, c in cols if s == "o" and c == "~")

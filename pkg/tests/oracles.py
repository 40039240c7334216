"""Independent oracles and generators shared by the tests.

Nothing here calls into the frame compiler: the corpus oracle re-derives
frame identifiers from the generated entry descriptions with its own
(much narrower) rules, so agreement with the pipeline is meaningful.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

from lg2lmf.mnemonic import MnemonicArg, MnemonicId

# identifiers printed in the source fragments, with line-break artifacts repaired
LITERAL_IDS = [
    "[Suj:cln|scomp|sinf|sn,Obj:sn|cla];@avoir,@ObjN-hum,@SujN-hum,@SujNhum;%actif,%passif",
    "[Suj:cln|sn,Obl:dans-sn];@pron,@être,@SujNhum;%actif",
    "[Suj:cln|sn,Obl:(de-sinf)];@pron,@être,@SujNhum,@CtrlSujObl;%actif",
    "[Suj:cln|scompl|sinf|sn,Obl:(à-sn|sn)];@avoir,@SujN-hum,@OblNhum;%actif,%actif_impersonnel",
    "[Suj:cl|sn,Obl:sinf];@avoir,@SujN-hum,@SujNhum,@CtrlSujObl;%actif",
    "[Suj:cln|sn,Obj:sn];@être,@ObjN-hum,@SujNhum;%actif,%passif",
    "[Suj:cln|sn,Obj:sn];@être,@ObjN-hum,@SujNhum;%passif",
    "[Suj:cln|scomp|sinf|sn,Obj:(à-sn|sn|cla)];@être,@SujN-hum,@ObjNhum;%actif",
]


# -- mnemonic ASTs -------------------------------------------------------------

_label_chars = st.characters(blacklist_categories=("Cs", "Cc", "Z"),
                             blacklist_characters="[]();,|:@%")
labels = st.text(_label_chars, min_size=1, max_size=8)
arguments = st.builds(MnemonicArg, labels, st.booleans(),
                      st.lists(labels, min_size=1, max_size=4).map(tuple))
mnemonics = st.builds(
    MnemonicId,
    st.lists(arguments, max_size=4).map(tuple),
    st.lists(labels, max_size=5).map(tuple),
    st.lists(labels, min_size=1, max_size=4).map(tuple))


# -- status ---------------------------------------------------------------------

def status_oracle(encoded: int, unencoded: int) -> str:
    """The status rule, written literally."""
    if unencoded == 0 and encoded > 0:
        return "completed"
    total = encoded + unencoded
    if total == 0 or Fraction(encoded, total) < Fraction(1, 3):
        return "to be encoded"
    return "to be completed"


# -- random corpora ----------------------------------------------------------------

CATALOG = """\
version = 1
category = verb

[feature] N0 =: Nhum
kind = restriction
slot = 0
value = human

[feature] N0 =: N-hum
kind = restriction
slot = 0
value = non-human

[feature] N1 =: Nhum
kind = restriction
slot = 1
value = human

[feature] N1 =: N-hum
kind = restriction
slot = 1
value = non-human

[feature] N0 =: Qu P
kind = constituent
slot = 0
value = scomp

[feature] N1 =: V-inf W
kind = constituent
slot = 1
value = sinf

[feature] Aux =: être
kind = lexeme-property
name = auxiliary
value = être

[feature] N1 est Vpp W
kind = redistribution
label = passif

[feature] [extrap]
kind = redistribution
label = actif_impersonnel

[feature] [passif impersonnel]
kind = redistribution
label = passif_impersonnel

[feature] N0 V
kind = construction

[feature] N0 V N1
kind = construction

[feature] N0 V à N1
kind = construction

[construction] N0 V
args = Suj=0:cln

[construction] N0 V N1
args = Suj=0:cln, Obj=1:cla

[construction] N0 V à N1
args = Suj=0:cln, Obl=1:à-sn
"""

FEATURES = ["N0 =: Nhum", "N0 =: N-hum", "N1 =: Nhum", "N1 =: N-hum", "N0 =: Qu P",
            "N1 =: V-inf W", "Aux =: être", "N1 est Vpp W", "[extrap]",
            "[passif impersonnel]", "N0 V", "N0 V N1", "N0 V à N1"]
CONSTRUCTIONS = {"N0 V": [("Suj", 0, "cln")],
                 "N0 V N1": [("Suj", 0, "cln"), ("Obj", 1, "cla")],
                 "N0 V à N1": [("Suj", 0, "cln"), ("Obl", 1, "à-sn")]}
TOKEN_ORDER = ["cln", "à-sn", "scomp", "sinf", "sn", "cla"]
REDISTRIBUTION_ORDER = ["actif", "passif", "actif_impersonnel", "passif_impersonnel"]


@dataclass
class Corpus:
    # class id -> list of (lemma, {feature: cell})
    tables: dict[str, list[tuple[str, dict[str, str]]]] = field(default_factory=dict)

    def write(self, root: Path) -> tuple[Path, Path, Path]:
        tables = root / "tables"
        tables.mkdir(parents=True, exist_ok=True)
        for class_id, rows in self.tables.items():
            lines = [";".join(["<ENT>"] + FEATURES)]
            lines += [";".join([lemma] + [cells[f] for f in FEATURES]) for lemma, cells in rows]
            (tables / f"{class_id}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        classes = root / "classes.csv"
        classes.write_text(";".join(["<CLASS>"] + FEATURES) + "\n" + "".join(
            ";".join([c] + ["o"] * len(FEATURES)) + "\n" for c in self.tables),
            encoding="utf-8")
        catalog = root / "verbs.catalog"
        catalog.write_text(CATALOG, encoding="utf-8")
        return tables, classes, catalog

    def entries(self):
        for rows in self.tables.values():
            yield from (cells for _, cells in rows)


def random_corpus(rng: random.Random, max_entries: int = 50) -> Corpus:
    corpus = Corpus()
    n = rng.randint(1, max_entries)
    classes = [f"C{i}" for i in range(1, rng.randint(1, 3) + 1)]
    for i in range(n):
        cells = {}
        for f in FEATURES:
            r = rng.random()
            cells[f] = "+" if r < 0.45 else "~" if r < 0.55 else "-"
        corpus.tables.setdefault(rng.choice(classes), []).append((f"v{i}", cells))
    return corpus


def pardonner_corpus() -> Corpus:
    cells = {f: "-" for f in FEATURES}
    for f in ("N0 =: Nhum", "N1 =: Nhum", "N0 V N1", "N1 est Vpp W", "[extrap]",
              "[passif impersonnel]"):
        cells[f] = "+"
    return Corpus({"P": [("pardonner", cells)]})


def brute_force(corpus: Corpus) -> tuple[int, int, dict[int, int]]:
    """Distinct frames, distinct sets and set-size histogram, by enumeration."""
    frames: set[str] = set()
    sets: dict[str, int] = {}
    for cells in corpus.entries():
        on = {f for f, v in cells.items() if v == "+"}
        redistributions = ["actif"] + [r for f, r in (("N1 est Vpp W", "passif"),
                                                      ("[extrap]", "actif_impersonnel"),
                                                      ("[passif impersonnel]",
                                                       "passif_impersonnel")) if f in on]
        by_stem: dict[str, list[str]] = {}
        for name in ("N0 V", "N0 V N1", "N0 V à N1"):
            if name not in on:
                continue
            args = CONSTRUCTIONS[name]
            parts, ats = [], ["être" if "Aux =: être" in on else "avoir"]
            for label, slot, token in args:
                tokens = {token}
                restricted = [f for f in FEATURES[:4] if f in on and f.startswith(f"N{slot}")]
                if restricted:
                    tokens.add("sn")
                if slot == 0 and "N0 =: Qu P" in on:
                    tokens.add("scomp")
                if slot == 1 and "N1 =: V-inf W" in on:
                    tokens.add("sinf")
                parts.append(label + ":" + "|".join(t for t in TOKEN_ORDER if t in tokens))
            for f in FEATURES[:4]:
                slot = int(f[1])
                label = next((lab for lab, s, _ in args if s == slot), None)
                if f in on and label is not None:
                    ats.append(label + f.split("=: ")[1])
            stem = "[" + ",".join(parts) + "];" + ",".join("@" + a for a in ats)
            labels = [lab for lab, _, _ in args]
            for r in redistributions:
                if r.startswith("passif") and "Obj" not in labels:
                    continue
                frames.add(stem + ";%" + r)
                by_stem.setdefault(stem, []).append(r)
        for stem, members in by_stem.items():
            members = sorted(set(members), key=REDISTRIBUTION_ORDER.index)
            set_id = stem + ";" + ",".join("%" + r for r in members)
            sets[set_id] = len(members)
    return len(frames), len(sets), dict(sorted(Counter(sets.values()).items()))

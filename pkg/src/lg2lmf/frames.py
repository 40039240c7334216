"""Compiling entries into fully specified subcategorization frames.

Distributional features in the tables belong to an entry's argument slots,
not to its constructions.  Every construction an entry licenses is expanded
here into a self-contained frame: the slot's realizations, restrictions and
introducers are copied into each frame where the slot occurs, arguments are
numbered from 0, grammatical functions are deduced per redistribution and
control is resolved to argument numbers.  Frames are identified by their
printed mnemonic, interned across the whole lexicon and grouped per entry
into frame sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .catalog import REDISTRIBUTIONS, RESTRICTIONS, ConstructionPattern, FeatureCatalog
from .diagnostics import Report
from .mnemonic import (MnemonicArg, MnemonicId, realization_constituent, realization_key)
from .model import LGLexEntry, MweRef

FUNCTIONS = ("subject", "object", "agent", "inverted-subject")
CLAUSAL = ("infinitive-clause", "completive-clause", "wh-completive-clause")


class CompileError(ValueError):
    pass


class InternError(CompileError):
    """Two different frames claimed the same mnemonic identifier."""


@dataclass(frozen=True)
class Argument:
    id: int
    function: str
    constituents: tuple[str, ...]
    introducers: tuple[str, ...] = ()
    locative: bool = False
    restriction: tuple[str, ...] = ()
    optional: bool = False
    mood: str | None = None
    control: tuple[int, ...] = ()
    role: str | None = None


@dataclass(frozen=True)
class LexemeProps:
    voice: str = "active"
    auxiliary: str = "avoir"
    negation: bool = False
    non_argumental_clitic: str | None = None


@dataclass(frozen=True)
class Frame:
    mnemonic: MnemonicId
    props: LexemeProps
    arguments: tuple[Argument, ...]

    @property
    def id(self) -> str:
        return str(self.mnemonic)

    @property
    def redistribution(self) -> str:
        return self.mnemonic.redistributions[0]


@dataclass(frozen=True)
class FrameSet:
    id: str
    frame_ids: tuple[str, ...]


def redistribution_key(label: str) -> tuple[int, str]:
    if label in REDISTRIBUTIONS:
        return (REDISTRIBUTIONS.index(label), label)
    return (len(REDISTRIBUTIONS), label)


# -- functions and control -----------------------------------------------------

def deduce_function(slot: int, redistribution: str, promoted: int | None = None) -> str:
    """Grammatical function of the argument at position ``slot``.

    Position 0 holds the subject of the active construction; ``promoted`` is
    the position of the direct object that passives promote (default 1).
    """
    promoted = 1 if promoted is None else promoted
    if redistribution == "actif":
        return "subject" if slot == 0 else "object"
    if redistribution == "actif_impersonnel":
        return "inverted-subject" if slot == 0 else "object"
    if redistribution == "passif":
        return "agent" if slot == 0 else "subject" if slot == promoted else "object"
    if redistribution == "passif_impersonnel":
        return "agent" if slot == 0 else "inverted-subject" if slot == promoted else "object"
    raise CompileError(f"unknown redistribution {redistribution!r}")


def assign_control(frame: Frame, controllers: dict[int, Sequence[int]]) -> Frame:
    """Attach controller argument ids to the clause-taking arguments of ``frame``."""
    ids = {a.id for a in frame.arguments}
    args = []
    for arg in frame.arguments:
        ctrl = controllers.get(arg.id)
        if ctrl:
            bad = [c for c in ctrl if c not in ids or c == arg.id]
            if bad:
                raise CompileError(f"control {bad} out of range for argument {arg.id} "
                                   f"of {frame.id}")
            if any(c in CLAUSAL for c in arg.constituents):
                arg = replace(arg, control=tuple(sorted(set(ctrl))))
        args.append(arg)
    return replace(frame, arguments=tuple(args))


# -- compilation ---------------------------------------------------------------

@dataclass
class _Slot:
    realizations: set[str] = field(default_factory=set)
    restrictions: dict[str, tuple] = field(default_factory=dict)  # value -> order key
    introducers: list[str] = field(default_factory=list)
    locative: bool = False
    role: str | None = None
    mood: str | None = None
    controllers: set[int] = field(default_factory=set)
    labels: list[tuple[tuple, str]] = field(default_factory=list)

    @property
    def distributional(self) -> bool:
        return bool(self.realizations or self.restrictions or self.introducers)


@dataclass
class _EntryInfo:
    slots: dict[int, _Slot]
    auxiliary: str = "avoir"
    negation: bool = False
    clitic: str | None = None
    redistributions: set[str] = field(default_factory=lambda: {"actif"})
    constructions: list[ConstructionPattern] = field(default_factory=list)


def _collect(entry: LGLexEntry, catalog: FeatureCatalog) -> _EntryInfo:
    info = _EntryInfo(slots={})
    for feature in entry.positive_features:
        action = catalog.lookup(feature.id)
        if action is None:
            continue
        order = catalog.order(feature.id)
        kind = action.kind
        if kind in ("constituent", "introducer", "restriction"):
            slot = info.slots.setdefault(action.slot, _Slot())
            if "label" in action.params:
                slot.labels.append((order, action.get("label")))
        if kind == "constituent":
            slot.realizations.add(action.get("value"))
            if action.get("mood"):
                slot.mood = action.get("mood")
            slot.controllers.update(action.ints("control"))
        elif kind == "restriction":
            slot.realizations.add("sn")
            value = action.get("value")
            slot.restrictions[value] = min(order, slot.restrictions.get(value, order))
        elif kind == "introducer":
            preps = action.get("prepositions")
            if not preps and isinstance(feature.value, str):
                preps = feature.value.replace("+", " ")
            for p in preps.split():
                if p not in slot.introducers:
                    slot.introducers.append(p)
            if action.get("locative") == "yes":
                slot.locative = True
                slot.role = action.get("role", "location")
        elif kind == "lexeme-property":
            name, value = action.get("name"), action.get("value")
            if name == "auxiliary":
                info.auxiliary = value
            elif name == "negation":
                info.negation = True
            elif name == "non-argumental-clitic":
                info.clitic = value
        elif kind == "redistribution":
            info.redistributions.add(action.get("label"))
        elif kind == "construction":
            pattern = catalog.constructions[action.get("pattern-id")]
            if pattern not in info.constructions:
                info.constructions.append(pattern)
    return info


def _applicable(redistribution: str, labels: list[str]) -> bool:
    """Whether a construction with argument ``labels`` admits ``redistribution``."""
    if redistribution in ("passif", "passif_impersonnel"):
        return "Obj" in labels
    if redistribution == "actif_impersonnel":
        return bool(labels) and labels[0] == "Suj"
    return True


def _restriction_label(arg_label: str, value: str) -> str:
    return arg_label + ("Nhum" if value == "human" else "N-hum")


def _compile_construction(entry: LGLexEntry, info: _EntryInfo, pattern: ConstructionPattern,
                          report: Report | None) -> list[Frame]:
    mn_args = []
    base_args = []
    ordered_labels: list[tuple[tuple, str]] = []
    for position, spec in enumerate(pattern.args):
        slot = info.slots.get(spec.slot, _Slot())
        tokens = set(spec.realizations) | slot.realizations
        if not slot.distributional:
            if report is not None and not tokens:
                report.warning("EMPTY_SLOT", f"slot N{spec.slot} of construction "
                               f"{pattern.pattern_id!r} has no distributional feature",
                               entry.entry_id)
            if not tokens:
                tokens = {"sn"}
        reals = tuple(sorted(tokens, key=realization_key))
        constituents = tuple(dict.fromkeys(realization_constituent(t) for t in reals))
        restriction = tuple(r for r in RESTRICTIONS if r in slot.restrictions)
        for value in restriction:
            ordered_labels.append((slot.restrictions[value],
                                   _restriction_label(spec.label, value)))
        ordered_labels.extend(slot.labels)
        mn_args.append(MnemonicArg(spec.label, spec.optional, reals))
        base_args.append(Argument(
            id=position, function="", constituents=constituents,
            introducers=tuple(slot.introducers), locative=slot.locative,
            restriction=restriction, optional=spec.optional,
            mood=slot.mood if "completive-clause" in constituents else None,
            role=slot.role if slot.locative else None))

    at = []
    if info.clitic == "reflexive":
        at.append("pron")
    at.append(info.auxiliary)
    if info.negation:
        at.append("neg")
    for _, label in sorted(ordered_labels):
        if label not in at:
            at.append(label)
    for label in pattern.labels:
        if label not in at:
            at.append(label)

    position_of = {spec.slot: i for i, spec in enumerate(pattern.args)}
    controllers: dict[int, set[int]] = {}
    for spec in pattern.args:
        ctrl = set(info.slots.get(spec.slot, _Slot()).controllers)
        ctrl.update(c for s, cs in pattern.control if s == spec.slot for c in cs)
        ids = {position_of[c] for c in ctrl if c in position_of} - {position_of[spec.slot]}
        if ids:
            controllers[position_of[spec.slot]] = ids

    labels = [spec.label for spec in pattern.args]
    promoted = labels.index("Obj") if "Obj" in labels else None
    frames = []
    for redistribution in sorted(info.redistributions, key=redistribution_key):
        if not _applicable(redistribution, labels):
            continue
        clitic = info.clitic
        if redistribution.endswith("_impersonnel"):
            clitic = "impersonal"
        props = LexemeProps(voice="passive" if redistribution.startswith("passif") else "active",
                            auxiliary=info.auxiliary, negation=info.negation,
                            non_argumental_clitic=clitic)
        args = tuple(replace(a, function=deduce_function(a.id, redistribution, promoted))
                     for a in base_args)
        mnemonic = MnemonicId(tuple(mn_args), tuple(at), (redistribution,))
        frames.append(assign_control(Frame(mnemonic, props, args), controllers))
    return frames


def compile_frames(entry: LGLexEntry, catalog: FeatureCatalog,
                   report: Report | None = None) -> list[Frame]:
    """All frames licensed by ``entry``, in construction then redistribution order."""
    info = _collect(entry, catalog)
    if not info.constructions:
        if report is not None:
            report.warning("NO_CONSTRUCTION", "entry licenses no construction; "
                           "not converted", entry.entry_id)
        return []
    frames: list[Frame] = []
    for pattern in info.constructions:
        for frame in _compile_construction(entry, info, pattern, report):
            if frame not in frames:
                frames.append(frame)
    return frames


def detect_frozen_clitic(entry: LGLexEntry, catalog: FeatureCatalog) -> MweRef | None:
    if entry.mwe_trigger is None:
        return None
    action = catalog.lookup(entry.mwe_trigger)
    pattern_id = action.get("pattern")
    pattern = catalog.mwe_patterns.get(pattern_id)
    if pattern is None:
        raise CompileError(f"{entry.entry_id}: MWE pattern {pattern_id!r} is not declared")
    others = action.get("component").split()
    ranks = pattern.ranks
    if len(others) != len(ranks) - 1:
        raise CompileError(f"{entry.entry_id}: pattern {pattern_id!r} needs "
                           f"{len(ranks) - 1} non-head component(s)")
    verb = f"{entry.category.code}_{entry.lemma}"
    it = iter(others)
    components = tuple(verb if r == pattern.head_rank else next(it) for r in ranks)
    return MweRef(pattern_id, components)


# -- interning and grouping ----------------------------------------------------

class FrameStore:
    """Frames keyed by printed mnemonic; iterates in lexicographic id order."""

    def __init__(self) -> None:
        self._frames: dict[str, Frame] = {}

    def add(self, frame: Frame) -> str:
        key = frame.id
        existing = self._frames.get(key)
        if existing is None:
            self._frames[key] = frame
        elif existing != frame:
            raise InternError(f"frame {key!r} compiled with two different contents")
        return key

    def __getitem__(self, key: str) -> Frame:
        return self._frames[key]

    def __contains__(self, key: object) -> bool:
        return key in self._frames

    def __len__(self) -> int:
        return len(self._frames)

    def __iter__(self):
        return (self._frames[k] for k in sorted(self._frames))


def intern_frames(frame_lists: Iterable[Iterable[Frame]]) -> FrameStore:
    store = FrameStore()
    for frames in frame_lists:
        for frame in frames:
            store.add(frame)
    return store


def group_into_sets(store: FrameStore, entry_frames: Sequence[Sequence[str]]
                    ) -> tuple[list[FrameSet], list[tuple[str, ...]]]:
    """Group each entry's frames by shared stem; intern the sets by id."""
    sets: dict[str, FrameSet] = {}
    refs = []
    for frame_ids in entry_frames:
        groups: dict[str, list[Frame]] = {}
        for fid in dict.fromkeys(frame_ids):
            frame = store[fid]
            groups.setdefault(frame.mnemonic.stem, []).append(frame)
        entry_refs = []
        for stem, members in groups.items():
            members.sort(key=lambda f: redistribution_key(f.redistribution))
            set_id = stem + ";" + ",".join("%" + f.redistribution for f in members)
            fs = FrameSet(set_id, tuple(f.id for f in members))
            if sets.setdefault(set_id, fs) != fs:
                raise InternError(f"frame set {set_id!r} built with different members")
            entry_refs.append(set_id)
        refs.append(tuple(entry_refs))
    return [sets[k] for k in sorted(sets)], refs


__all__ = [
    "Argument", "CompileError", "Frame", "FrameSet", "FrameStore", "InternError",
    "LexemeProps", "assign_control", "compile_frames", "deduce_function",
    "detect_frozen_clitic", "group_into_sets", "intern_frames", "redistribution_key",
]

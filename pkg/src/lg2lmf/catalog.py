"""Feature identifiers and the configuration that maps them to actions.

Feature identifiers in the tables are mnemonic strings such as
``N0 =: Nhum`` or ``N0 V de N2``.  :func:`parse_feature_id` gives them a
structure; the catalog file, not the identifier, decides what a feature
contributes to the compiled lexicon.

Catalog file format (UTF-8, line oriented)::

    version = 1
    category = verb

    [feature] N0 =: Nhum
    kind = restriction
    slot = 0
    value = human

    [construction] N0 V N1
    args = Suj=0:cln, Obj=1:cla

    [mwe-pattern] en-V_y-V
    head = 2
    dependent = 1 adjunct clitic-pronoun

Lines starting with ``#`` are comments.  Feature blocks declare one action
each; construction blocks describe the argument structure referenced by
``construction`` actions; mwe-pattern blocks describe the patterns named by
``mwe-trigger`` actions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .diagnostics import Report
from .mnemonic import MnemonicError, split_realization

# -- feature identifiers -----------------------------------------------------


@dataclass(frozen=True)
class ArgSlot:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("argument slot must be non-negative")


@dataclass(frozen=True)
class Distribution:
    slot: ArgSlot
    shape: str

    def render(self) -> str:
        return f"N{self.slot.index} =: {self.shape}"


@dataclass(frozen=True)
class Construction:
    pattern: str

    def render(self) -> str:
        return self.pattern


@dataclass(frozen=True)
class CliticSpec:
    value: str
    frozen: bool

    def render(self) -> str:
        return f"Ppv =: {self.value}" + (" figé" if self.frozen else "")


@dataclass(frozen=True)
class Opaque:
    raw: str

    def render(self) -> str:
        return self.raw


@dataclass(frozen=True)
class FeatureExpr:
    raw: str
    parsed: Union[Distribution, Construction, CliticSpec, Opaque]

    @property
    def key(self) -> str:
        """Normalized identifier used for catalog lookups."""
        return normalize_feature_id(self.raw)


_DISTRIBUTION = re.compile(r"^N(\d+) =: (.+)$")
_CLITIC = re.compile(r"^Ppv =: (\S+?)( figé)?$")
_VERB_TOKEN = re.compile(r"^V(?:$|-|pp|\d)")
_SUBJECT_TOKEN = re.compile(r"^(?:N\w*|Il|il|Qu\w*)$")


def normalize_feature_id(raw: str) -> str:
    """Collapse whitespace and spell the distribution operator as ``=:``."""
    tokens = raw.split()
    return " ".join("=:" if t == "=" else t for t in tokens)


def parse_feature_id(raw: str) -> FeatureExpr:
    norm = normalize_feature_id(raw)
    m = _CLITIC.match(norm)
    if m:
        return FeatureExpr(raw, CliticSpec(m.group(1), bool(m.group(2))))
    m = _DISTRIBUTION.match(norm)
    if m:
        return FeatureExpr(raw, Distribution(ArgSlot(int(m.group(1))), m.group(2)))
    tokens = norm.split(" ")
    if "=:" not in tokens and len(tokens) > 1 and _SUBJECT_TOKEN.match(tokens[0]) \
            and any(_VERB_TOKEN.match(t) for t in tokens[1:]):
        return FeatureExpr(raw, Construction(norm))
    return FeatureExpr(raw, Opaque(raw))


# -- actions -----------------------------------------------------------------

KINDS = ("constituent", "introducer", "restriction", "lexeme-property",
         "redistribution", "construction", "mwe-trigger", "ignore")

_REQUIRED = {
    "constituent": {"slot", "value"},
    "introducer": {"slot"},
    "restriction": {"slot", "value"},
    "lexeme-property": {"name", "value"},
    "redistribution": {"label"},
    "construction": set(),
    "mwe-trigger": {"pattern", "component"},
    "ignore": set(),
}
_OPTIONAL = {
    "constituent": {"mood", "control", "label"},
    "introducer": {"prepositions", "locative", "role", "label"},
    "restriction": set(),
    "lexeme-property": set(),
    "redistribution": set(),
    "construction": {"pattern-id"},
    "mwe-trigger": set(),
    "ignore": set(),
}

RESTRICTIONS = ("human", "non-human")
# redistributions whose grammatical-function mapping is known
REDISTRIBUTIONS = ("actif", "passif", "actif_impersonnel", "passif_impersonnel")
MOODS = ("indicative", "subjunctive")
ROLES = ("location", "source", "destination")
LEXEME_PROPERTIES = {
    "voice": ("active", "passive"),
    "auxiliary": ("avoir", "être"),
    "negation": ("yes",),
    "non-argumental-clitic": ("reflexive", "impersonal"),
}

_TOKEN = re.compile(r"^[^\s\[\]();,|:@%]+$")


class CatalogError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class FeatureAction:
    kind: str
    params: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown action kind {self.kind!r}")

    def get(self, key: str, default: str = "") -> str:
        return self.params.get(key, default)

    @property
    def slot(self) -> int:
        return int(self.params["slot"])

    def ints(self, key: str) -> tuple[int, ...]:
        return tuple(int(v) for v in self.get(key).split())


IGNORE = FeatureAction("ignore")


@dataclass(frozen=True)
class ArgSpec:
    """One argument position of a construction pattern."""

    label: str
    slot: int
    optional: bool = False
    realizations: tuple[str, ...] = ()


@dataclass(frozen=True)
class ConstructionPattern:
    pattern_id: str
    args: tuple[ArgSpec, ...]
    control: tuple[tuple[int, tuple[int, ...]], ...] = ()
    labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class MWEComponentRole:
    rank: int
    function: str
    constituent: str


@dataclass(frozen=True)
class MWEPatternDef:
    """A flat MWE pattern: a head component with dependents attached to it."""

    pattern_id: str
    head_rank: int
    dependents: tuple[MWEComponentRole, ...]

    @property
    def ranks(self) -> list[int]:
        return sorted([self.head_rank] + [d.rank for d in self.dependents])

    def check(self) -> None:
        if self.ranks != list(range(1, len(self.ranks) + 1)):
            raise ValueError(f"MWE pattern {self.pattern_id!r}: component ranks "
                             f"{self.ranks} are not 1..{len(self.ranks)}")


@dataclass(frozen=True)
class FeatureCatalog:
    features: dict[str, FeatureAction]
    constructions: dict[str, ConstructionPattern] = field(default_factory=dict)
    mwe_patterns: dict[str, MWEPatternDef] = field(default_factory=dict)
    category: str = "verb"
    version: str = ""

    def __post_init__(self):
        object.__setattr__(self, "_order", {k: i for i, k in enumerate(self.features)})

    def lookup(self, feature_id: str) -> FeatureAction | None:
        return self.features.get(normalize_feature_id(feature_id))

    def order(self, feature_id: str) -> tuple[int, str]:
        """Sort key: declaration order, undeclared features last by id."""
        key = normalize_feature_id(feature_id)
        return (self._order.get(key, len(self._order)), key)


# -- loading -----------------------------------------------------------------

def _check_token(token: str, what: str, line: int) -> str:
    if not _TOKEN.match(token):
        raise CatalogError(f"invalid {what} {token!r}", line)
    if what == "realization":
        try:
            split_realization(token)
        except MnemonicError as exc:
            raise CatalogError(str(exc), line) from None
    return token


def _parse_args(value: str, line: int) -> tuple[ArgSpec, ...]:
    specs = []
    for item in (v.strip() for v in value.split(",")):
        if not item:
            continue
        m = re.match(r"^([^=\s]+)=(\d+)(?::(.*))?$", item)
        if not m:
            raise CatalogError(f"malformed argument spec {item!r}", line)
        label, slot, reals = m.group(1), int(m.group(2)), (m.group(3) or "").strip()
        optional = reals.startswith("(")
        if optional:
            if not reals.endswith(")"):
                raise CatalogError(f"unbalanced parentheses in {item!r}", line)
            reals = reals[1:-1]
        tokens = tuple(_check_token(t, "realization", line) for t in reals.split("|") if t)
        specs.append(ArgSpec(_check_token(label, "function label", line), slot, optional,
                             tokens))
    slots = [s.slot for s in specs]
    if len(set(slots)) != len(slots):
        raise CatalogError("a slot appears twice in one construction", line)
    if any(s.label == "Suj" for s in specs[1:]):
        raise CatalogError("the Suj argument must come first", line)
    return tuple(specs)


def _parse_control(value: str, line: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    out = []
    for item in (v.strip() for v in value.split(",")):
        if not item:
            continue
        m = re.match(r"^(\d+)\s*:\s*(\d+(?:\s+\d+)*)$", item)
        if not m:
            raise CatalogError(f"malformed control spec {item!r}", line)
        out.append((int(m.group(1)), tuple(sorted({int(v) for v in m.group(2).split()}))))
    return tuple(out)


def _check_action(name: str, kind: str, params: dict[str, str], line: int) -> FeatureAction:
    if kind not in KINDS:
        raise CatalogError(f"unknown kind {kind!r} for feature {name!r}", line)
    keys = set(params)
    missing = _REQUIRED[kind] - keys
    if missing:
        raise CatalogError(f"feature {name!r}: missing {', '.join(sorted(missing))}", line)
    extra = keys - _REQUIRED[kind] - _OPTIONAL[kind]
    if extra:
        raise CatalogError(f"feature {name!r}: key(s) {', '.join(sorted(extra))} "
                           f"not allowed for kind {kind}", line)
    if "slot" in params and not params["slot"].isdigit():
        raise CatalogError(f"feature {name!r}: slot must be a non-negative integer", line)
    if kind == "restriction" and params["value"] not in RESTRICTIONS:
        raise CatalogError(f"feature {name!r}: restriction must be human or non-human", line)
    if kind == "constituent":
        _check_token(params["value"], "realization", line)
        if params.get("mood", MOODS[0]) not in MOODS:
            raise CatalogError(f"feature {name!r}: invalid mood {params['mood']!r}", line)
    if kind == "introducer":
        if params.get("locative", "no") not in ("yes", "no"):
            raise CatalogError(f"feature {name!r}: locative must be yes or no", line)
        if params.get("role", ROLES[0]) not in ROLES:
            raise CatalogError(f"feature {name!r}: invalid role {params['role']!r}", line)
    if "control" in params and not re.fullmatch(r"\d+(\s+\d+)*", params["control"]):
        raise CatalogError(f"feature {name!r}: control must list slot numbers", line)
    if "label" in params:
        params["label"] = params["label"].lstrip("@")
        _check_token(params["label"], "label", line)
    if kind == "lexeme-property":
        allowed = LEXEME_PROPERTIES.get(params["name"])
        if allowed is None:
            raise CatalogError(f"feature {name!r}: unknown lexeme property "
                               f"{params['name']!r}", line)
        if params["value"] not in allowed:
            raise CatalogError(f"feature {name!r}: invalid {params['name']} value "
                               f"{params['value']!r}", line)
    if kind == "redistribution":
        params["label"] = params["label"].lstrip("%")
        if params["label"] not in REDISTRIBUTIONS:
            raise CatalogError(f"feature {name!r}: unknown redistribution "
                               f"{params['label']!r}", line)
    if kind == "construction":
        params.setdefault("pattern-id", name)
    return FeatureAction(kind, params)


def load_catalog(data: bytes | str) -> FeatureCatalog:
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")

    header: dict[str, str] = {}
    blocks: list[tuple[str, str, int, list[tuple[str, str, int]]]] = []
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = re.match(r"^\[([a-z-]+)\]\s*(.+)$", line)
        if m:
            if m.group(1) not in ("feature", "construction", "mwe-pattern"):
                raise CatalogError(f"unknown block type {m.group(1)!r}", lineno)
            blocks.append((m.group(1), normalize_feature_id(m.group(2)), lineno, []))
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise CatalogError(f"expected 'key = value', got {line!r}", lineno)
        entry = (key.strip(), value.strip(), lineno)
        if blocks:
            blocks[-1][3].append(entry)
        elif entry[0] in ("version", "category"):
            header[entry[0]] = entry[1]
        else:
            raise CatalogError(f"unknown header key {entry[0]!r}", lineno)

    features: dict[str, FeatureAction] = {}
    constructions: dict[str, ConstructionPattern] = {}
    patterns: dict[str, MWEPatternDef] = {}
    for btype, name, lineno, entries in blocks:
        if btype == "feature":
            if name in features:
                raise CatalogError(f"duplicate feature {name!r}", lineno)
            params: dict[str, str] = {}
            for key, value, ln in entries:
                if key in params:
                    raise CatalogError(f"duplicate key {key!r}", ln)
                params[key] = value
            kind = params.pop("kind", None)
            if kind is None:
                raise CatalogError(f"feature {name!r} has no kind", lineno)
            features[name] = _check_action(name, kind, params, lineno)
        elif btype == "construction":
            if name in constructions:
                raise CatalogError(f"duplicate construction {name!r}", lineno)
            args: tuple[ArgSpec, ...] | None = None
            control: tuple = ()
            labels: tuple[str, ...] = ()
            for key, value, ln in entries:
                if key == "args":
                    args = _parse_args(value, ln)
                elif key == "control":
                    control = _parse_control(value, ln)
                elif key == "labels":
                    labels = tuple(_check_token(v.strip().lstrip("@"), "label", ln)
                                   for v in value.split(",") if v.strip())
                else:
                    raise CatalogError(f"unknown construction key {key!r}", ln)
            if args is None:
                raise CatalogError(f"construction {name!r} has no args", lineno)
            arg_slots = {a.slot for a in args}
            for slot, controllers in control:
                if slot not in arg_slots or not set(controllers) <= arg_slots \
                        or slot in controllers:
                    raise CatalogError(f"construction {name!r}: control refers to "
                                       f"slots outside the pattern", lineno)
            constructions[name] = ConstructionPattern(name, args, control, labels)
        else:
            if name in patterns:
                raise CatalogError(f"duplicate MWE pattern {name!r}", lineno)
            head = None
            deps = []
            for key, value, ln in entries:
                if key == "head":
                    head = int(value)
                elif key == "dependent":
                    parts = value.split()
                    if len(parts) != 3 or not parts[0].isdigit():
                        raise CatalogError(f"malformed dependent {value!r}", ln)
                    deps.append(MWEComponentRole(int(parts[0]), parts[1], parts[2]))
                else:
                    raise CatalogError(f"unknown mwe-pattern key {key!r}", ln)
            if head is None:
                raise CatalogError(f"MWE pattern {name!r} has no head", lineno)
            pattern = MWEPatternDef(name, head, tuple(sorted(deps, key=lambda d: d.rank)))
            try:
                pattern.check()
            except ValueError as exc:
                raise CatalogError(str(exc), lineno) from None
            patterns[name] = pattern

    for name, action in features.items():
        if action.kind == "construction" and action.get("pattern-id") not in constructions:
            raise CatalogError(f"feature {name!r} refers to undeclared construction "
                               f"{action.get('pattern-id')!r}")
    return FeatureCatalog(features, constructions, patterns,
                          category=header.get("category", "verb"),
                          version=header.get("version", ""))


def classify_feature(expr: FeatureExpr, catalog: FeatureCatalog,
                     report: Report | None = None) -> FeatureAction:
    action = catalog.lookup(expr.raw)
    if action is not None:
        return action
    if report is not None:
        report.warning("UNKNOWN_FEATURE",
                       f"feature {expr.key!r} is not in the catalog; ignored")
    return IGNORE

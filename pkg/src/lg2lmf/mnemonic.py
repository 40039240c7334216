"""Mnemonic frame identifiers: ``[Suj:cln|sn,Obl:(de-sinf)];@pron,@être;%actif``.

Three ``;``-separated sections: the bracketed argument list, the ``@``
feature labels and the ``%`` redistribution labels.  Each argument is
``Label:realizations`` with realizations joined by ``|``; parentheses around
the realizations mark the argument optional.  The printed form is
canonical (no spaces), so printing and parsing are mutual inverses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class MnemonicError(ValueError):
    pass


@dataclass(frozen=True)
class MnemonicArg:
    label: str
    optional: bool
    realizations: tuple[str, ...]

    def __str__(self) -> str:
        reals = "|".join(self.realizations)
        return f"{self.label}:({reals})" if self.optional else f"{self.label}:{reals}"


@dataclass(frozen=True)
class MnemonicId:
    args: tuple[MnemonicArg, ...]
    at_features: tuple[str, ...] = ()
    redistributions: tuple[str, ...] = ("actif",)

    @property
    def stem(self) -> str:
        """Argument and feature sections; shared by all members of a frame set."""
        args = ",".join(str(a) for a in self.args)
        return f"[{args}];" + ",".join("@" + f for f in self.at_features)

    def __str__(self) -> str:
        return print_mnemonic(self)

    def with_redistributions(self, labels) -> MnemonicId:
        return MnemonicId(self.args, self.at_features, tuple(labels))


_LABEL = re.compile(r"^[^\s\[\]();,|:@%]+$")


def print_mnemonic(m: MnemonicId) -> str:
    return m.stem + ";" + ",".join("%" + r for r in m.redistributions)


def _labels(section: str, prefix: str, text: str, allow_empty: bool) -> tuple[str, ...]:
    if not section:
        if allow_empty:
            return ()
        raise MnemonicError(f"empty {prefix}-section in {text!r}")
    out = []
    for item in section.split(","):
        if not item.startswith(prefix) or not _LABEL.match(item[1:]):
            raise MnemonicError(f"bad {prefix}-label {item!r} in {text!r}")
        out.append(item[1:])
    return tuple(out)


def _parse_arg(item: str, text: str) -> MnemonicArg:
    label, sep, reals = item.partition(":")
    if not sep or not _LABEL.match(label):
        raise MnemonicError(f"bad argument {item!r} in {text!r}")
    optional = reals.startswith("(")
    if optional or reals.endswith(")"):
        if not (reals.startswith("(") and reals.endswith(")")):
            raise MnemonicError(f"unbalanced parentheses in {item!r}")
        reals = reals[1:-1]
    if not reals:
        raise MnemonicError(f"empty realization list in {item!r}")
    tokens = reals.split("|")
    for tok in tokens:
        if not _LABEL.match(tok):
            raise MnemonicError(f"bad realization {tok!r} in {item!r}")
    return MnemonicArg(label, optional, tuple(tokens))


def parse_mnemonic(text: str) -> MnemonicId:
    if not text.startswith("["):
        raise MnemonicError(f"identifier must start with '[': {text!r}")
    close = text.find("]")
    if close < 0:
        raise MnemonicError(f"unbalanced brackets in {text!r}")
    body, rest = text[1:close], text[close + 1:]
    if "[" in body or "]" in rest:
        raise MnemonicError(f"unbalanced brackets in {text!r}")
    sections = rest.split(";")
    if len(sections) != 3 or sections[0] != "":
        raise MnemonicError(f"expected three ';'-separated sections in {text!r}")
    args = tuple(_parse_arg(item, text) for item in body.split(",")) if body else ()
    return MnemonicId(args,
                      _labels(sections[1], "@", text, allow_empty=True),
                      _labels(sections[2], "%", text, allow_empty=False))


# -- realization vocabulary ----------------------------------------------------

# token -> (rank inside an argument, syntactic constituent)
_REALIZATIONS = {
    "cln": (0, "clitic-nominative"),
    "cl": (0, "clitic-nominative"),
    "scomp": (2, "completive-clause"),
    "scompl": (2, "completive-clause"),
    "qcompl": (3, "wh-completive-clause"),
    "sinf": (4, "infinitive-clause"),
    "sn": (5, "NP"),
    "sa": (6, "adj"),
    "sadj": (6, "adj"),
    "cla": (7, "clitic-accusative"),
    "cld": (8, "clitic-pronoun"),
    "cll": (8, "clitic-pronoun"),
    "clg": (8, "clitic-pronoun"),
    "clr": (8, "clitic-pronoun"),
}
_PREPOSITIONAL_RANK = 1


def split_realization(token: str) -> tuple[str, str]:
    """``'à-sn'`` -> ``('à', 'sn')``; unprefixed tokens get an empty preposition."""
    if token in _REALIZATIONS:
        return "", token
    prep, sep, base = token.rpartition("-")
    if sep and prep and base in _REALIZATIONS:
        return prep, base
    raise MnemonicError(f"unknown realization {token!r}")


def realization_constituent(token: str) -> str:
    prep, base = split_realization(token)
    if prep and base == "sn":
        return "PP"
    return _REALIZATIONS[base][1]


def realization_key(token: str) -> tuple[int, str]:
    prep, base = split_realization(token)
    return (_PREPOSITIONAL_RANK if prep else _REALIZATIONS[base][0], token)

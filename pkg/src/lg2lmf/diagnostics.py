"""Findings collected while converting, reading or validating a lexicon."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True, order=True)
class Finding:
    severity: str
    code: str
    message: str
    location: str = ""

    def __str__(self) -> str:
        where = f" [{self.location}]" if self.location else ""
        return f"{self.severity}: {self.code}: {self.message}{where}"


@dataclass
class Report:
    """Ordered, de-duplicated collection of findings."""

    findings: list[Finding] = field(default_factory=list)

    def add(self, severity: str, code: str, message: str, location: str = "") -> None:
        finding = Finding(severity, code, message, location)
        if finding not in self.findings:
            self.findings.append(finding)

    def error(self, code: str, message: str, location: str = "") -> None:
        self.add(ERROR, code, message, location)

    def warning(self, code: str, message: str, location: str = "") -> None:
        self.add(WARNING, code, message, location)

    def extend(self, findings: Iterable[Finding]) -> None:
        for f in findings:
            if f not in self.findings:
                self.findings.append(f)

    def __iter__(self) -> Iterator[Finding]:
        return iter(self.findings)

    def __len__(self) -> int:
        return len(self.findings)

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == ERROR]

    @property
    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == WARNING]

    @property
    def passed(self) -> bool:
        return not self.errors

    def codes(self, severity: str | None = None) -> set[str]:
        return {f.code for f in self.findings if severity is None or f.severity == severity}

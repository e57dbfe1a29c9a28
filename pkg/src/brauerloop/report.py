"""Pass/fail records returned by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    """An ordered list of named checks.  Failures are recorded, never raised."""

    title: str
    results: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.results.append(CheckResult(name, bool(passed), detail))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.passed, r.detail))

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            tag = "PASS" if r.passed else "FAIL"
            out.append(f"{tag}  {r.name}" + (f"  -- {r.detail}" if r.detail else ""))
        return out

    def __str__(self) -> str:
        head = f"{self.title}: {'ok' if self.ok else 'FAILED'} ({len(self.results)} checks)"
        return "\n".join([head] + ["  " + line for line in self.lines()])

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "results": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in self.results],
        }

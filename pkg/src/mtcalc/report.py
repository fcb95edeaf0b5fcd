"""Machine-readable result records shared by all verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of a single verified identity instance."""

    id: str
    instance: tuple
    residual: float
    ok: bool

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "instance": list(self.instance),
            "residual": self.residual,
            "pass": self.ok,
        }


@dataclass
class Report:
    """Result of one verification suite.

    ``passed`` holds iff every record's residual is below the run tolerance.
    Records keep deterministic order for fixed inputs and seed.
    """

    suite: str
    tol: float
    records: list[CheckRecord] = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, check_id: str, instance: tuple, residual: float) -> None:
        residual = float(residual)
        self.records.append(
            CheckRecord(check_id, tuple(instance), residual, residual < self.tol)
        )

    def extend(self, other: "Report") -> None:
        self.records.extend(other.records)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.records), default=0.0)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.records)

    def as_dict(self) -> dict:
        # wall_time is deliberately left out: reports must be byte-identical
        # across repeated runs with the same flags and seed.
        return {
            "suite": self.suite,
            "tol": self.tol,
            "records": [r.as_dict() for r in self.records],
            "summary": {
                "checks": len(self.records),
                "max_residual": self.max_residual,
                "pass": self.passed,
            },
        }


def emit_report(report: Report, format: str = "json") -> str:
    """Serialize a report; ``json`` is stable-keyed, ``text`` is for humans."""
    if format == "json":
        return json.dumps(report.as_dict(), sort_keys=True, indent=2) + "\n"
    if format == "text":
        lines = [f"suite: {report.suite}  (tol={report.tol:g})"]
        for r in report.records:
            mark = "ok  " if r.ok else "FAIL"
            inst = ",".join(str(x) for x in r.instance)
            lines.append(f"  [{mark}] {r.id}({inst})  residual={r.residual:.3e}")
        lines.append(
            f"checks={len(report.records)}  max_residual={report.max_residual:.3e}"
            f"  pass={report.passed}  wall_time={report.wall_time:.3f}s"
        )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format: {format!r}")

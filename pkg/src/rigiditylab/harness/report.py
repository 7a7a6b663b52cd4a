"""Experiment reports: JSON round trip, persistence and replay."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

__all__ = ["Verdict", "ExperimentReport", "default_report_path", "write_report", "read_report"]


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    witness: Any = None

    def to_json(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed), "witness": self.witness}

    @classmethod
    def from_json(cls, d: dict) -> Verdict:
        return cls(d["name"], bool(d["pass"]), d.get("witness"))


@dataclass
class ExperimentReport:
    experiment: str
    parameters: dict[str, Any]
    verdicts: list[Verdict] = field(default_factory=list)
    seeds: list[int] = field(default_factory=list)
    version: str = ""
    timestamp: str | None = None

    def __post_init__(self):
        if not self.version:
            from .. import __version__

            self.version = __version__

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def to_json(self) -> dict:
        out = {
            "experiment": self.experiment,
            "version": self.version,
            "parameters": self.parameters,
            "seeds": list(self.seeds),
            "verdicts": [v.to_json() for v in self.verdicts],
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, d: dict) -> ExperimentReport:
        return cls(
            experiment=d["experiment"],
            parameters=dict(d["parameters"]),
            verdicts=[Verdict.from_json(v) for v in d["verdicts"]],
            seeds=[int(s) for s in d["seeds"]],
            version=d["version"],
            timestamp=d.get("timestamp"),
        )

    @classmethod
    def loads(cls, text: str) -> ExperimentReport:
        return cls.from_json(json.loads(text))

    def stamp(self) -> ExperimentReport:
        self.timestamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
        return self

    def same_outcome(self, other: ExperimentReport) -> bool:
        return (
            self.experiment == other.experiment
            and self.seeds == other.seeds
            and [v.to_json() for v in self.verdicts] == [v.to_json() for v in other.verdicts]
        )


def default_report_path(report: ExperimentReport) -> Path:
    root = Path(os.environ.get("RIGIDITYLAB_REPORT_DIR", "reports"))
    ts = report.timestamp or datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
    return root / f"{report.experiment}-{ts}.json"


def write_report(report: ExperimentReport, path: str | os.PathLike | None = None) -> Path:
    p = Path(path) if path is not None else default_report_path(report)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
    return p


def read_report(path: str | os.PathLike) -> ExperimentReport:
    return ExperimentReport.loads(Path(path).read_text())

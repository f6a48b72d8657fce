"""The JSON report written by the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .results import Estimate, FunctionalTrace, InequalityCheck

# keys that may differ between otherwise identical runs
VOLATILE_KEYS = ("volatile",)


@dataclass
class AnalysisReport:
    inputs: dict = field(default_factory=dict)
    traces: list = field(default_factory=list)
    norms: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    tool_version: str = ""
    seed: Optional[int] = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def trace(self, name: str) -> FunctionalTrace:
        from .errors import UnknownTrace

        for tr in self.traces:
            if tr.functional_name == name:
                return tr
        known = ", ".join(t.functional_name for t in self.traces) or "none"
        raise UnknownTrace(f"no trace named {name!r} (available: {known})")

    def to_dict(self) -> dict:
        return {
            "inputs": self.inputs,
            "traces": [t.to_dict() for t in self.traces],
            "norms": {k: v.to_dict() for k, v in self.norms.items()},
            "checks": {k: v.to_dict() for k, v in self.checks.items()},
            "tool_version": self.tool_version,
            "seed": self.seed,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        # repr-based float output makes the text a deterministic function of the values
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(
            inputs=d.get("inputs", {}),
            traces=[FunctionalTrace.from_dict(t) for t in d.get("traces", [])],
            norms={k: Estimate.from_dict(v) for k, v in d.get("norms", {}).items()},
            checks={k: InequalityCheck.from_dict(v) for k, v in d.get("checks", {}).items()},
            tool_version=d.get("tool_version", ""),
            seed=d.get("seed"),
            notes=list(d.get("notes", [])),
        )

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def strip_volatile(d: dict) -> dict:
    return {k: v for k, v in d.items() if k not in VOLATILE_KEYS}

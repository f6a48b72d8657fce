"""Small value types passed between the analysis modules and the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

REL_TOL = 1e-12


@dataclass(frozen=True)
class Estimate:
    """A supremum or norm together with how far it can be trusted.

    ``exact`` is False when the value was taken over a finite schedule or a
    truncated series; ``error_bound`` then bounds the gap when it is known.
    ``attained_at`` is the smallest index attaining the value, or ``None``
    when the value is a limit that no finite index reaches.
    """

    value: float
    attained_at: Optional[int] = None
    exact: bool = True
    error_bound: Optional[float] = None

    def __float__(self) -> float:
        return self.value

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Estimate":
        return cls(**d)


@dataclass(frozen=True)
class InequalityCheck:
    """``lhs <= rhs`` up to a relative slack."""

    lhs: float
    rhs: float
    passed: bool

    @classmethod
    def compare(cls, lhs, rhs, rel_tol=REL_TOL) -> "InequalityCheck":
        lhs, rhs = float(lhs), float(rhs)
        return cls(lhs, rhs, bool(lhs <= rhs * (1.0 + rel_tol)))

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}

    @classmethod
    def from_dict(cls, d: dict) -> "InequalityCheck":
        return cls(d["lhs"], d["rhs"], d["pass"])


@dataclass(frozen=True)
class FunctionalTrace:
    """Values of one functional along a strictly increasing schedule of n."""

    functional_name: str
    schedule: tuple
    values: tuple
    error_bounds: Optional[tuple] = None
    meta: dict = field(default_factory=dict, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "schedule", tuple(int(n) for n in self.schedule))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.error_bounds is not None:
            object.__setattr__(self, "error_bounds", tuple(float(e) for e in self.error_bounds))
        if len(self.schedule) != len(self.values):
            raise ValueError("schedule and values differ in length")
        if any(b <= a for a, b in zip(self.schedule, self.schedule[1:])):
            raise ValueError("schedule must be strictly increasing")
        vals = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise ValueError("trace values must be finite and non-negative")

    @property
    def monotonicity(self) -> str:
        v = self.values
        if len(v) < 2:
            return "n/a"
        if all(b < a for a, b in zip(v, v[1:])):
            return "strictly decreasing"
        if all(b <= a for a, b in zip(v, v[1:])):
            return "non-increasing"
        if all(b >= a for a, b in zip(v, v[1:])):
            return "non-decreasing"
        return "mixed"

    @property
    def last_value(self):
        return self.values[-1] if self.values else None

    def to_dict(self) -> dict:
        d = {
            "functional": self.functional_name,
            "schedule": list(self.schedule),
            "values": list(self.values),
            "monotonicity": self.monotonicity,
            "last_value": self.last_value,
        }
        if self.error_bounds is not None:
            d["error_bounds"] = list(self.error_bounds)
        if self.meta:
            d["meta"] = dict(self.meta)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionalTrace":
        eb = d.get("error_bounds")
        return cls(d["functional"], tuple(d["schedule"]), tuple(d["values"]),
                   tuple(eb) if eb is not None else None, dict(d.get("meta", {})))

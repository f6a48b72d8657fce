"""Weight sequences Lambda = {lambda_k} and their negative-index convention.

Every weighted functional in the package reads its weights through
:class:`LambdaWeights`.  Weights are positive and non-decreasing for
``k >= 0``; indices ``-r <= k < 0`` evaluate to exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import ExtensionForbidden, IndexOutOfConvention, RejectedSpec

FORBIDDEN = "forbidden"
LAST_VALUE_PLUS_LINEAR = "linear"


@dataclass(frozen=True)
class Power:
    """``lambda_k = (k + 1) ** alpha``."""

    alpha: float

    def label(self) -> str:
        return f"power:{self.alpha!r}"


@dataclass(frozen=True)
class Logarithmic:
    """``lambda_k = ln(k + e)``, so that ``lambda_0 = 1``."""

    def label(self) -> str:
        return "log"


@dataclass(frozen=True)
class Explicit:
    """User-supplied weights with an optional linear extension past the list."""

    values: tuple
    extension: str = FORBIDDEN

    def label(self) -> str:
        tag = "explicit" if self.extension == FORBIDDEN else "explicit-linear"
        return f"{tag}[{len(self.values)}]"


Family = Union[Power, Logarithmic, Explicit]


def _validate(family: Family) -> Family:
    if isinstance(family, Power):
        alpha = float(family.alpha)
        if not math.isfinite(alpha) or alpha <= 0:
            raise RejectedSpec(f"power weights need alpha > 0, got {family.alpha!r}")
        return Power(alpha)
    if isinstance(family, Logarithmic):
        return family
    if isinstance(family, Explicit):
        vals = tuple(float(v) for v in family.values)
        if not vals:
            raise RejectedSpec("explicit weights need a non-empty list")
        for k, v in enumerate(vals):
            if not math.isfinite(v) or v <= 0:
                raise RejectedSpec(f"explicit weight lambda_{k} = {v!r} is not positive")
            if k and v < vals[k - 1]:
                raise RejectedSpec(f"explicit weights decrease at k={k}: {vals[k - 1]!r} > {v!r}")
        if family.extension not in (FORBIDDEN, LAST_VALUE_PLUS_LINEAR):
            raise RejectedSpec(f"unknown extension rule {family.extension!r}")
        return Explicit(vals, family.extension)
    raise RejectedSpec(f"unknown weight family {family!r}")


@dataclass(frozen=True)
class LambdaWeights:
    """A validated, immutable weight sequence."""

    family: Family
    description: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "family", _validate(self.family))
        if not self.description:
            object.__setattr__(self, "description", self.family.label())

    @property
    def max_index(self):
        """Largest evaluable index, or ``None`` when the sequence is unbounded in k."""
        fam = self.family
        if isinstance(fam, Explicit) and fam.extension == FORBIDDEN:
            return len(fam.values) - 1
        return None

    @property
    def regular_growth(self) -> bool:
        """True when ``lambda_{n-o} / lambda_n -> 1`` for every fixed offset o."""
        return self.max_index is None

    @property
    def convex_from(self):
        """Index from which the steps ``lambda_i - lambda_{i-1}`` are non-decreasing.

        ``None`` when no such index is known (concave families).
        """
        fam = self.family
        if isinstance(fam, Power):
            return 1 if fam.alpha >= 1 else None
        if isinstance(fam, Explicit) and fam.extension == LAST_VALUE_PLUS_LINEAR:
            return len(fam.values) - 1
        return None

    def take(self, idx) -> np.ndarray:
        """Vectorised lookup; negative indices give 0 (no range check)."""
        idx = np.asarray(idx, dtype=np.int64)
        out = np.zeros(idx.shape, dtype=np.float64)
        pos = idx >= 0
        k = idx[pos]
        fam = self.family
        if isinstance(fam, Power):
            vals = np.power(k.astype(np.float64) + 1.0, fam.alpha)
        elif isinstance(fam, Logarithmic):
            vals = np.log(k.astype(np.float64) + math.e)
        else:
            table = np.asarray(fam.values, dtype=np.float64)
            last = len(table) - 1
            if k.size and k.max() > last:
                if fam.extension == FORBIDDEN:
                    raise ExtensionForbidden(
                        f"explicit weights end at k={last}, requested k={int(k.max())}")
                slope = table[last] - table[last - 1] if last >= 1 else 0.0
                if slope <= 0:
                    slope = 1.0
                beyond = k > last
                vals = np.empty(k.shape, dtype=np.float64)
                vals[~beyond] = table[k[~beyond]]
                vals[beyond] = table[last] + (k[beyond] - last) * slope
            else:
                vals = table[k]
        out[pos] = vals
        return out

    def values(self, n: int) -> np.ndarray:
        """``lambda_0, ..., lambda_n`` as a float64 array."""
        return self.take(np.arange(n + 1))

    def __call__(self, k: int) -> float:
        return float(self.take(np.array([k]))[0])


def build_lambda(family: Family, description: str = "") -> LambdaWeights:
    """Validate a weight-family descriptor; raises :class:`RejectedSpec`."""
    return LambdaWeights(family, description)


def lambda_at(w: LambdaWeights, k: int, r: int) -> float:
    """``lambda_k`` with ``lambda_{-1} = ... = lambda_{-r} = 0``."""
    if r < 1:
        raise RejectedSpec(f"r must be a positive integer, got {r!r}")
    if k < -r:
        raise IndexOutOfConvention(f"k={k} is below the convention range [-{r}, -1]")
    if k < 0:
        return 0.0
    return w(k)

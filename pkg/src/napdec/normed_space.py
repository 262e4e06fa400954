"""Maximum and weighted norms on ``K^n`` and ball/sphere classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch
from .valued_fields import FieldCtx, abs_value

Vec = tuple  # coordinates are field elements


@dataclass(frozen=True)
class NormSpec:
    """``weights is None`` means the maximum norm."""

    weights: Optional[tuple] = None

    def __post_init__(self):
        if self.weights is not None:
            ws = tuple(Fraction(w) for w in self.weights)
            if not ws or any(w <= 0 for w in ws):
                raise ValueError("weights must be positive rationals")
            object.__setattr__(self, "weights", ws)

    @classmethod
    def max(cls) -> "NormSpec":
        return cls(None)

    @classmethod
    def weighted(cls, weights: Sequence) -> "NormSpec":
        return cls(tuple(weights))

    @property
    def is_max(self) -> bool:
        return self.weights is None

    def to_json(self) -> dict:
        if self.is_max:
            return {"kind": "max"}
        return {"kind": "weighted", "weights": [str(w) for w in self.weights]}

    @classmethod
    def from_json(cls, data: dict) -> "NormSpec":
        kind = data.get("kind")
        if kind == "max":
            return cls.max()
        if kind == "weighted":
            return cls.weighted([Fraction(w) for w in data["weights"]])
        raise ValueError(f"unknown norm kind {kind!r}")


def _check_dim(spec: NormSpec, x: Sequence) -> None:
    if not x:
        raise DimensionMismatch("vectors have length >= 1")
    if spec.weights is not None and len(spec.weights) != len(x):
        raise DimensionMismatch(f"{len(spec.weights)} weights for a vector of length {len(x)}")


def norm(ctx: FieldCtx, spec: NormSpec, x: Sequence) -> Fraction:
    _check_dim(spec, x)
    if spec.is_max:
        return max(abs_value(ctx, c) for c in x)
    return max(w * abs_value(ctx, c) for w, c in zip(spec.weights, x))


def max_norm(ctx: FieldCtx, x: Sequence) -> Fraction:
    return max(abs_value(ctx, c) for c in x)


def equivalence_constants(spec: NormSpec) -> tuple[Fraction, Fraction]:
    """``(C1, C2)`` with ``C1*||x||_inf <= ||x|| <= C2*||x||_inf``."""
    if spec.is_max:
        return Fraction(1), Fraction(1)
    return min(spec.weights), max(spec.weights)


class Region(enum.Enum):
    OPEN_BALL = "OpenBall"
    SPHERE = "Sphere"
    OUTSIDE = "Outside"


def sub(x: Sequence, y: Sequence) -> Vec:
    if len(x) != len(y):
        raise DimensionMismatch(f"lengths {len(x)} and {len(y)}")
    return tuple(a - b for a, b in zip(x, y))


def region(ctx: FieldCtx, spec: NormSpec, x0: Sequence, r, x: Sequence) -> Region:
    """Where ``x`` sits relative to the ball of radius ``r`` about ``x0``."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    d = norm(ctx, spec, sub(x, x0))
    if d < r:
        return Region.OPEN_BALL
    if d == r:
        return Region.SPHERE
    return Region.OUTSIDE

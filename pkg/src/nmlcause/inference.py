"""Causal direction from the two total stochastic complexities."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .sc import (
    DEFAULT_PRECISION,
    DiscreteSample,
    InputShapeError,
    conditional_stochastic_complexity,
    stochastic_complexity,
)

# bits; absorbs rounding, far below any meaningful gap
TIE_EPSILON = 1e-9


class Direction(str, enum.Enum):
    X_TO_Y = "XtoY"
    Y_TO_X = "YtoX"
    UNDECIDED = "undecided"

    def __str__(self):
        return self.value

    def reversed(self) -> "Direction":
        if self is Direction.X_TO_Y:
            return Direction.Y_TO_X
        if self is Direction.Y_TO_X:
            return Direction.X_TO_Y
        return self

    @classmethod
    def parse(cls, text: str) -> "Direction":
        key = text.strip().lower().replace("->", "to").replace("_", "")
        for d in cls:
            if d.value.lower() == key:
                return d
        raise ValueError(f"unknown direction {text!r}")


@dataclass(frozen=True)
class CausalVerdict:
    s_x_to_y: float
    s_y_to_x: float
    delta: float
    direction: Direction

    @property
    def confidence(self) -> float:
        return abs(self.delta)


def directed_scores(
    x: DiscreteSample, y: DiscreteSample, precision_digits: int = DEFAULT_PRECISION
) -> tuple[float, float]:
    """Return ``(S(X) + S(Y|X), S(Y) + S(X|Y))`` in bits."""
    if x.n != y.n:
        raise InputShapeError(f"length mismatch: x has {x.n} values, y has {y.n}")
    s_xy = stochastic_complexity(x, precision_digits) + conditional_stochastic_complexity(y, x, precision_digits)
    s_yx = stochastic_complexity(y, precision_digits) + conditional_stochastic_complexity(x, y, precision_digits)
    return s_xy, s_yx


def decide(delta: float, tie_epsilon: float = TIE_EPSILON) -> Direction:
    if delta < -tie_epsilon:
        return Direction.X_TO_Y
    if delta > tie_epsilon:
        return Direction.Y_TO_X
    return Direction.UNDECIDED


def infer(
    x: DiscreteSample,
    y: DiscreteSample,
    precision_digits: int = DEFAULT_PRECISION,
    tie_epsilon: float = TIE_EPSILON,
) -> CausalVerdict:
    """Infer X -> Y when describing X then Y given X is shorter than the reverse."""
    s_xy, s_yx = directed_scores(x, y, precision_digits)
    delta = s_xy - s_yx
    return CausalVerdict(s_xy, s_yx, delta, decide(delta, tie_epsilon))
